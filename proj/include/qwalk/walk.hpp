#ifndef QWALK_WALK_HPP
#define QWALK_WALK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qwalk/complex_matrix.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/half_int.hpp"
#include "qwalk/rotation.hpp"

namespace qwalk {

inline constexpr double kNormTol = 1e-12;

/// Normalized internal state of the walker: 2j+1 complex amplitudes
/// ordered q_j, q_{j-1}, ..., q_{-j}.
class Qudit {
public:
    Qudit(HalfInt j, ComplexVector amplitudes, bool auto_normalize = false)
        : j_(j), amps_(std::move(amplitudes)) {
        require_spin(j_, "Qudit");
        if (static_cast<int>(amps_.size()) != j_.dimension())
            throw std::domain_error("Qudit: expected " + std::to_string(j_.dimension()) +
                                    " components, got " + std::to_string(amps_.size()));
        const double n2 = norm_squared(amps_);
        if (auto_normalize) {
            if (n2 == 0.0) throw std::domain_error("Qudit: zero vector cannot be normalized");
            const double inv = 1.0 / std::sqrt(n2);
            for (Complex& a : amps_) a *= inv;
        } else if (std::abs(n2 - 1.0) > kNormTol) {
            throw std::domain_error("Qudit: squared norm " + std::to_string(n2) +
                                    " deviates from 1 beyond tolerance");
        }
    }

    HalfInt j() const { return j_; }
    const ComplexVector& amplitudes() const { return amps_; }
    const Complex& component(HalfInt m) const { return amps_[index_of(j_, m)]; }

private:
    HalfInt j_;
    ComplexVector amps_;
};

namespace detail {

/// Dense multi-component lattice state on a contiguous window of sites.
/// The support of a walk fills its light cone quickly, so a flat array
/// indexed (site, component) beats a hash map for the long runs.
struct LatticeState {
    long t = 0;
    long x_min = 0;
    int ncomp = 0;
    ComplexVector amp;  // site-major blocks of ncomp amplitudes

    long x_max() const { return x_min + static_cast<long>(amp.size()) / ncomp - 1; }

    Complex at(long x, int comp) const {
        if (x < x_min || x > x_max()) return 0.0;
        return amp[static_cast<size_t>(x - x_min) * ncomp + comp];
    }
};

/// One step of coin-then-shift evolution: component c of the new state
/// at site x accumulates row c of the coin applied to the old amplitudes
/// at site x + hop[c].
inline LatticeState lattice_step(const LatticeState& state, const ComplexMatrix& coin,
                                 const std::vector<int>& hop) {
    const int n = state.ncomp;
    int max_hop = 0;
    for (int h : hop) max_hop = std::max(max_hop, std::abs(h));

    LatticeState out;
    out.t = state.t + 1;
    out.ncomp = n;
    out.x_min = state.x_min - max_hop;
    const long nsites = (state.x_max() + max_hop) - out.x_min + 1;
    out.amp.assign(static_cast<size_t>(nsites) * n, Complex(0.0));

    const long old_min = state.x_min, old_max = state.x_max();
    for (long x = out.x_min; x <= state.x_max() + max_hop; ++x) {
        Complex* dst = &out.amp[static_cast<size_t>(x - out.x_min) * n];
        for (int c = 0; c < n; ++c) {
            const long src = x + hop[c];
            if (src < old_min || src > old_max) continue;
            const Complex* block = &state.amp[static_cast<size_t>(src - old_min) * n];
            Complex acc = 0.0;
            for (int cp = 0; cp < n; ++cp) acc += coin(c, cp) * block[cp];
            dst[c] = acc;
        }
    }
    return out;
}

inline double lattice_total_probability(const LatticeState& state) {
    double s = 0.0;
    for (const Complex& z : state.amp) s += std::norm(z);
    return s;
}

} // namespace detail

/// Walker wave function at a fixed time: amplitudes for every site in the
/// light cone, zero outside. Snapshots are immutable; stepping returns a
/// fresh value.
class WaveFunction {
public:
    WaveFunction(HalfInt j, detail::LatticeState state) : j_(j), state_(std::move(state)) {}

    HalfInt j() const { return j_; }
    long t() const { return state_.t; }
    long x_min() const { return state_.x_min; }
    long x_max() const { return state_.x_max(); }

    /// Amplitude of component with magnetic index m at site x.
    Complex amplitude(long x, HalfInt m) const { return state_.at(x, index_of(j_, m)); }

    double total_probability() const { return detail::lattice_total_probability(state_); }

    const detail::LatticeState& raw() const { return state_; }

private:
    HalfInt j_;
    detail::LatticeState state_;
};

/// Walker at the origin at time zero.
inline WaveFunction initial_state(const Qudit& qudit) {
    detail::LatticeState s;
    s.t = 0;
    s.x_min = 0;
    s.ncomp = qudit.j().dimension();
    s.amp = qudit.amplitudes();
    return {qudit.j(), std::move(s)};
}

/// Hop distances per component: component m moves by -2m, i.e. it reads
/// its new amplitude from site x + 2m.
inline std::vector<int> component_hops(HalfInt j) {
    std::vector<int> hop(j.dimension());
    for (int i = 0; i < j.dimension(); ++i) hop[i] = magnetic_at(j, i).twice;
    return hop;
}

inline WaveFunction step(const WaveFunction& psi, const RotationMatrix& coin) {
    if (coin.j != psi.j())
        throw std::domain_error("step: coin spin " + coin.j.str() +
                                " does not match wave function spin " + psi.j().str());
    return {psi.j(), detail::lattice_step(psi.raw(), coin.mat, component_hops(psi.j()))};
}

inline WaveFunction evolve(const Qudit& qudit, const RotationMatrix& coin, long t) {
    if (t < 0) throw std::domain_error("evolve: negative time");
    WaveFunction psi = initial_state(qudit);
    for (long i = 0; i < t; ++i) psi = step(psi, coin);
    return psi;
}

/// Probability law of the walker position at one time, P(x) = |Psi(x)|^2.
struct SiteDistribution {
    long t = 0;
    long x_min = 0;
    int max_hop = 0;  // fastest component speed; support is |x| <= max_hop * t
    std::vector<double> p;

    long x_max() const { return x_min + static_cast<long>(p.size()) - 1; }

    double prob(long x) const {
        if (x < x_min || x > x_max()) return 0.0;
        return p[static_cast<size_t>(x - x_min)];
    }

    double total() const {
        double s = 0.0;
        for (double v : p) s += v;
        return s;
    }
};

inline SiteDistribution distribution(const WaveFunction& psi) {
    const auto& st = psi.raw();
    SiteDistribution dist;
    dist.t = st.t;
    dist.x_min = st.x_min;
    dist.max_hop = psi.j().twice;
    const long nsites = static_cast<long>(st.amp.size()) / st.ncomp;
    dist.p.resize(nsites);
    for (long i = 0; i < nsites; ++i) {
        double s = 0.0;
        for (int c = 0; c < st.ncomp; ++c) s += std::norm(st.amp[i * st.ncomp + c]);
        dist.p[static_cast<size_t>(i)] = s;
    }
    return dist;
}

/// r-th position moment, sum_x x^r P(x).
inline double moment(const SiteDistribution& dist, int r) {
    if (r < 0) throw std::domain_error("moment: negative order");
    double s = 0.0;
    for (long x = dist.x_min; x <= dist.x_max(); ++x) {
        const double p = dist.prob(x);
        if (p == 0.0) continue;
        s += std::pow(static_cast<double>(x), r) * p;
    }
    return s;
}

/// Binned distribution of the pseudovelocity y = x/t over [-max_hop, max_hop].
struct Histogram {
    double y_min = 0.0;
    double width = 0.0;
    std::vector<double> mass;

    double center(size_t i) const { return y_min + (static_cast<double>(i) + 0.5) * width; }
    double density(size_t i) const { return mass[i] / width; }
};

inline Histogram pseudovelocity_histogram(const SiteDistribution& dist, int bins) {
    if (dist.t < 1) throw std::domain_error("pseudovelocity_histogram: needs t >= 1");
    if (bins < 1) throw std::domain_error("pseudovelocity_histogram: needs bins >= 1");

    Histogram h;
    h.y_min = -static_cast<double>(dist.max_hop);
    h.width = 2.0 * dist.max_hop / bins;
    h.mass.assign(static_cast<size_t>(bins), 0.0);

    for (long x = dist.x_min; x <= dist.x_max(); ++x) {
        const double p = dist.prob(x);
        if (p == 0.0) continue;
        const double y = static_cast<double>(x) / static_cast<double>(dist.t);
        double pos = (y - h.y_min) / h.width;
        long idx = static_cast<long>(std::floor(pos));
        if (pos == std::floor(pos) && idx > 0) --idx;  // ties go to the lower bin
        idx = std::clamp(idx, 0L, static_cast<long>(bins) - 1);
        h.mass[static_cast<size_t>(idx)] += p;
    }
    return h;
}

} // namespace qwalk

#endif
