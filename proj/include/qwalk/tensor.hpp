#ifndef QWALK_TENSOR_HPP
#define QWALK_TENSOR_HPP

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "qwalk/complex_matrix.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline void require_qubit_count(int m_qubits, const char* who) {
    if (m_qubits != 2 && m_qubits != 3)
        throw RangeError(std::string(who) + ": supported qubit counts are 2 and 3");
}

/// Product initial state of M qubit factors. Basis order of the flattened
/// vector enumerates the first factor slowest, with the +1 state first:
/// (+,+), (+,-), (-,+), (-,-) for M = 2 and likewise for M = 3.
class ProductQudit {
public:
    ProductQudit(int m_qubits, std::vector<std::array<Complex, 2>> factors)
        : m_(m_qubits), factors_(std::move(factors)) {
        require_qubit_count(m_, "ProductQudit");
        if (static_cast<int>(factors_.size()) != m_)
            throw std::domain_error("ProductQudit: expected " + std::to_string(m_) +
                                    " qubit factors");
        for (const auto& f : factors_) {
            const double n2 = std::norm(f[0]) + std::norm(f[1]);
            if (std::abs(n2 - 1.0) > kNormTol)
                throw std::domain_error("ProductQudit: factor norm deviates from 1");
        }
    }

    int qubits() const { return m_; }
    const std::vector<std::array<Complex, 2>>& factors() const { return factors_; }

    ComplexVector flatten() const {
        ComplexVector v = {factors_[0][0], factors_[0][1]};
        for (int n = 1; n < m_; ++n) v = kron(v, {factors_[n][0], factors_[n][1]});
        return v;
    }

private:
    int m_;
    std::vector<std::array<Complex, 2>> factors_;
};

/// Sum of the +-1 labels of basis state `idx` (bit 0 of the mask is the
/// first factor, value 0 meaning +1).
inline int label_sum(int m_qubits, int idx) {
    int sum = 0;
    for (int n = 0; n < m_qubits; ++n) {
        const bool minus = (idx >> (m_qubits - 1 - n)) & 1;
        sum += minus ? -1 : 1;
    }
    return sum;
}

/// 2^M-dimensional tensor-product coin: the M-fold Kronecker power of the
/// two-component rotation coin.
inline ComplexMatrix tensor_coin(int m_qubits, const EulerAngles& angles) {
    require_qubit_count(m_qubits, "tensor_coin");
    const ComplexMatrix r = rotation_matrix(HalfInt(1), angles).mat;
    ComplexMatrix out = r;
    for (int n = 1; n < m_qubits; ++n) out = kron(out, r);
    return out;
}

/// Diagonal shift in wave-number space, entries e^{i k  (m_1+...+m_M)}.
inline ComplexMatrix tensor_shift(int m_qubits, double k) {
    require_qubit_count(m_qubits, "tensor_shift");
    const int dim = 1 << m_qubits;
    ComplexMatrix out(dim, dim);
    for (int i = 0; i < dim; ++i)
        out(i, i) = std::exp(Complex(0.0, k * label_sum(m_qubits, i)));
    return out;
}

struct ReductionBlock {
    HalfInt j;
    int copy = 1;    // which of the d_j copies
    int offset = 0;  // first row of the block
};

/// Real orthogonal change of basis that block-diagonalizes the
/// tensor-product coin into irreducible rotation blocks.
struct ReductionMatrix {
    int m_qubits = 0;
    ComplexMatrix k;
    std::vector<ReductionBlock> blocks;
};

/// Hardwired reduction matrices from the highest-weight construction:
/// 2 x 2 = 3 + 1 and 2 x 2 x 2 = 4 + 2 + 2.
inline ReductionMatrix reduction_matrix(int m_qubits) {
    require_qubit_count(m_qubits, "reduction_matrix");
    const double h = std::sqrt(0.5);
    if (m_qubits == 2) {
        ReductionMatrix rm{2, ComplexMatrix(4, 4), {{HalfInt(2), 1, 0}, {HalfInt(0), 1, 3}}};
        const double rows[4][4] = {
            {1, 0, 0, 0},
            {0, h, h, 0},
            {0, 0, 0, 1},
            {0, h, -h, 0},
        };
        for (int i = 0; i < 4; ++i)
            for (int jcol = 0; jcol < 4; ++jcol) rm.k(i, jcol) = rows[i][jcol];
        return rm;
    }

    const double t = std::sqrt(1.0 / 3.0);
    const double u = std::sqrt(1.0 / 6.0);
    const double v = std::sqrt(2.0 / 3.0);
    ReductionMatrix rm{
        3, ComplexMatrix(8, 8), {{HalfInt(3), 1, 0}, {HalfInt(1), 1, 4}, {HalfInt(1), 2, 6}}};
    const double rows[8][8] = {
        {1, 0, 0, 0, 0, 0, 0, 0},
        {0, t, t, 0, t, 0, 0, 0},
        {0, 0, 0, t, 0, t, t, 0},
        {0, 0, 0, 0, 0, 0, 0, 1},
        {0, u, -v, 0, u, 0, 0, 0},
        {0, 0, 0, -u, 0, v, -u, 0},
        {0, -h, 0, 0, h, 0, 0, 0},
        {0, 0, 0, -h, 0, 0, h, 0},
    };
    for (int i = 0; i < 8; ++i)
        for (int jcol = 0; jcol < 8; ++jcol) rm.k(i, jcol) = rows[i][jcol];
    return rm;
}

inline constexpr double kBlockWeightFloor = 1e-14;

struct BlockComponent {
    HalfInt j;
    int copy = 1;
    double weight = 0.0;
    std::optional<Qudit> qudit;  // absent when the weight is negligible
};

struct BlockDecomposition {
    std::vector<BlockComponent> blocks;

    double total_weight() const {
        double s = 0.0;
        for (const auto& b : blocks) s += b.weight;
        return s;
    }
};

/// Rotate the product initial state into the irreducible basis and slice
/// it into per-block weights and renormalized qudits.
inline BlockDecomposition decompose_initial(const ProductQudit& qudit) {
    const ReductionMatrix rm = reduction_matrix(qudit.qubits());
    const ComplexVector rotated = rm.k * qudit.flatten();

    BlockDecomposition out;
    for (const ReductionBlock& block : rm.blocks) {
        const int dim = block.j.dimension();
        ComplexVector slice(rotated.begin() + block.offset,
                            rotated.begin() + block.offset + dim);
        const double weight = norm_squared(slice);
        BlockComponent comp{block.j, block.copy, weight, std::nullopt};
        if (weight >= kBlockWeightFloor) {
            const double inv = 1.0 / std::sqrt(weight);
            for (Complex& z : slice) z *= inv;
            comp.qudit = Qudit(block.j, std::move(slice));
        }
        out.blocks.push_back(std::move(comp));
    }
    return out;
}

/// Direct real-space evolution of the 2^M-component walk: component m
/// hops by minus its label sum each step.
inline SiteDistribution tensor_walk_distribution(int m_qubits, const EulerAngles& angles,
                                                 const ProductQudit& qudit, long t) {
    require_qubit_count(m_qubits, "tensor_walk_distribution");
    if (qudit.qubits() != m_qubits)
        throw std::domain_error("tensor_walk_distribution: qubit count mismatch");
    if (t < 0) throw std::domain_error("tensor_walk_distribution: negative time");

    const ComplexMatrix coin = tensor_coin(m_qubits, angles);
    const int dim = 1 << m_qubits;
    std::vector<int> hop(dim);
    for (int i = 0; i < dim; ++i) hop[i] = label_sum(m_qubits, i);

    detail::LatticeState state;
    state.t = 0;
    state.x_min = 0;
    state.ncomp = dim;
    state.amp = qudit.flatten();
    for (long i = 0; i < t; ++i) state = detail::lattice_step(state, coin, hop);

    SiteDistribution dist;
    dist.t = state.t;
    dist.x_min = state.x_min;
    dist.max_hop = m_qubits;
    const long nsites = static_cast<long>(state.amp.size()) / dim;
    dist.p.resize(nsites);
    for (long i = 0; i < nsites; ++i) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += std::norm(state.amp[i * dim + c]);
        dist.p[static_cast<size_t>(i)] = s;
    }
    return dist;
}

} // namespace qwalk

#endif
