#ifndef QWALK_ROTATION_HPP
#define QWALK_ROTATION_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "qwalk/complex_matrix.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/half_int.hpp"

namespace qwalk {

/// Largest supported doubled spin. 2j+1 <= 41 components; beyond this the
/// factorial ratios start to cost noticeable precision, so we refuse
/// rather than degrade silently.
inline constexpr int kMaxTwiceSpin = 40;

inline void require_spin(HalfInt j, const char* who) {
    if (j.twice < 0)
        throw std::domain_error(std::string(who) + ": negative spin label");
    if (j.twice > kMaxTwiceSpin)
        throw RangeError(std::string(who) + ": spin " + j.str() +
                         " exceeds supported maximum " +
                         HalfInt(kMaxTwiceSpin).str());
}

namespace detail {

/// Minimal unsigned 256-bit integer: just enough to hold 40! exactly
/// (about 160 bits) before a single conversion to double.
struct UInt256 {
    std::array<std::uint64_t, 4> limb{};

    static constexpr UInt256 one() {
        UInt256 v;
        v.limb[0] = 1;
        return v;
    }

    constexpr void mul(std::uint64_t f) {
        unsigned __int128 carry = 0;
        for (auto& l : limb) {
            unsigned __int128 p = static_cast<unsigned __int128>(l) * f + carry;
            l = static_cast<std::uint64_t>(p);
            carry = p >> 64;
        }
    }

    constexpr double to_double() const {
        double r = 0.0;
        for (int i = 3; i >= 0; --i) r = r * 18446744073709551616.0 + static_cast<double>(limb[i]);
        return r;
    }
};

/// n! for n = 0..40, each computed exactly in integer arithmetic and
/// rounded to double exactly once.
inline const std::array<double, kMaxTwiceSpin + 1>& factorial_table() {
    static const std::array<double, kMaxTwiceSpin + 1> table = [] {
        std::array<double, kMaxTwiceSpin + 1> t{};
        UInt256 acc = UInt256::one();
        t[0] = 1.0;
        for (int n = 1; n <= kMaxTwiceSpin; ++n) {
            acc.mul(static_cast<std::uint64_t>(n));
            t[n] = acc.to_double();
        }
        return t;
    }();
    return table;
}

inline double factorial(int n) { return factorial_table()[n]; }

} // namespace detail

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Unitary irreducible rotation matrix of spin j. Rows and columns are
/// indexed by the magnetic number m running from j down to -j.
struct RotationMatrix {
    HalfInt j;
    ComplexMatrix mat;

    int dimension() const { return j.dimension(); }

    const Complex& at(HalfInt m, HalfInt mp) const {
        return mat(index_of(j, m), index_of(j, mp));
    }
};

/// Sign-and-factorial coefficient of one term of the Wigner formula.
/// Terms whose factorial arguments would be negative are excluded from
/// the sum, which this encodes by returning zero.
inline double gamma_coefficient(HalfInt j, HalfInt m, HalfInt mp, int ell) {
    require_spin(j, "gamma_coefficient");
    require_magnetic(j, m, "gamma_coefficient");
    require_magnetic(j, mp, "gamma_coefficient");

    const int n1 = (j.twice + m.twice) / 2;   // j+m
    const int n2 = (j.twice - m.twice) / 2;   // j-m
    const int n3 = (j.twice + mp.twice) / 2;  // j+m'
    const int n4 = (j.twice - mp.twice) / 2;  // j-m'
    const int d1 = n4 - ell;                  // j-m'-ell
    const int d2 = n1 - ell;                  // j+m-ell
    const int d3 = ell;
    const int d4 = ell + (mp.twice - m.twice) / 2;  // ell+m'-m
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0) return 0.0;

    using detail::factorial;
    const double num = std::sqrt(factorial(n1) * factorial(n2) * factorial(n3) * factorial(n4));
    const double den = factorial(d1) * factorial(d2) * factorial(d3) * factorial(d4);
    const double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    return sign * num / den;
}

namespace detail {

/// Wigner formula evaluated from given cos(beta/2), sin(beta/2). The pair
/// need not come from a real angle as long as c^2 + s^2 = 1; the limit
/// machinery exploits this.
inline ComplexMatrix small_d_from_half_cs(HalfInt j, double c, double s) {
    const int dim = j.dimension();
    const int j2 = j.twice;

    // powers c^0..c^(2j), s^0..s^(2j); every term uses total degree 2j
    std::vector<double> cp(j2 + 1), sp(j2 + 1);
    cp[0] = sp[0] = 1.0;
    for (int n = 1; n <= j2; ++n) {
        cp[n] = cp[n - 1] * c;
        sp[n] = sp[n - 1] * s;
    }

    ComplexMatrix d(dim, dim);
    for (int row = 0; row < dim; ++row) {
        const HalfInt m = magnetic_at(j, row);
        for (int col = 0; col < dim; ++col) {
            const HalfInt mp = magnetic_at(j, col);
            const int m_minus_mp = (m.twice - mp.twice) / 2;
            const int ell_lo = std::max(0, m_minus_mp);
            const int ell_hi = std::min((j2 - mp.twice) / 2, (j2 + m.twice) / 2);
            double sum = 0.0;
            for (int ell = ell_lo; ell <= ell_hi; ++ell) {
                const int pc = j2 + m_minus_mp - 2 * ell;
                const int ps = 2 * ell - m_minus_mp;
                sum += gamma_coefficient(j, m, mp, ell) * cp[pc] * sp[ps];
            }
            d(row, col) = sum;
        }
    }
    return d;
}

} // namespace detail

/// Real orthogonal rotation about the y axis (the "small d" matrix).
inline RotationMatrix wigner_small_d(HalfInt j, double beta) {
    require_spin(j, "wigner_small_d");
    return {j, detail::small_d_from_half_cs(j, std::cos(beta / 2.0), std::sin(beta / 2.0))};
}

/// Full rotation matrix: z-rotation phases around the small d matrix,
/// entries exp(-i alpha m) d_{mm'}(beta) exp(-i gamma m').
inline RotationMatrix rotation_matrix(HalfInt j, const EulerAngles& angles) {
    RotationMatrix r = wigner_small_d(j, angles.beta);
    const int dim = r.dimension();
    std::vector<Complex> row_phase(dim), col_phase(dim);
    for (int i = 0; i < dim; ++i) {
        const double m = magnetic_at(j, i).value();
        row_phase[i] = std::exp(Complex(0.0, -angles.alpha * m));
        col_phase[i] = std::exp(Complex(0.0, -angles.gamma * m));
    }
    for (int row = 0; row < dim; ++row)
        for (int col = 0; col < dim; ++col) r.mat(row, col) *= row_phase[row] * col_phase[col];
    return r;
}

/// Diagonal rotation diag(e^{i j p}, e^{i (j-1) p}, ..., e^{-i j p}),
/// i.e. the z-rotation by Euler angle -p.
struct DiagonalRotation {
    HalfInt j;
    double phase = 0.0;

    Complex entry(int i) const {
        return std::exp(Complex(0.0, magnetic_at(j, i).value() * phase));
    }

    ComplexMatrix to_matrix() const {
        const int dim = j.dimension();
        ComplexMatrix m(dim, dim);
        for (int i = 0; i < dim; ++i) m(i, i) = entry(i);
        return m;
    }
};

/// Axis-angle data of the one-step evolution operator at wave number k:
/// rotation angle p in [0, 2pi], axis polar angle theta (sign matching
/// sin(beta/2)), axis azimuth phi.
struct SpectralAngles {
    double p = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

inline constexpr double kSpectralDegeneracyTol = 1e-12;

/// Solve for the axis-angle parameters of R(alpha - 2k, beta, gamma).
/// Throws DegenerateAngleError where sin(p/2) vanishes (the axis is then
/// undefined); that can only happen for |sin(beta/2)| ~ 0.
inline SpectralAngles spectral_angles(const EulerAngles& angles, double k) {
    const double c = std::cos(angles.beta / 2.0);
    const double s = std::sin(angles.beta / 2.0);
    const double w = (angles.alpha + angles.gamma) / 2.0 - k;

    const double cos_half_p = c * std::cos(w);
    const double sin_half_p = std::sqrt(std::max(0.0, 1.0 - cos_half_p * cos_half_p));
    if (sin_half_p < kSpectralDegeneracyTol)
        throw DegenerateAngleError("spectral_angles: rotation axis undefined at k=" +
                                       std::to_string(k),
                                   k);

    SpectralAngles out;
    out.p = 2.0 * std::atan2(sin_half_p, cos_half_p);  // sin(p/2) >= 0 branch
    out.theta = std::atan2(s / sin_half_p, -c * std::sin(w) / sin_half_p);
    out.phi = (angles.alpha - angles.gamma - 2.0 * k - std::numbers::pi) / 2.0;
    return out;
}

inline constexpr double kRecomposeTol = 1e-10;

/// Similarity decomposition of the one-step evolution operator
/// V(k) = R(alpha - 2k, beta, gamma) into basis * diag * basis^dagger.
struct Recomposition {
    SpectralAngles angles;
    RotationMatrix basis;    // columns are the eigenvectors
    DiagonalRotation diag;   // eigenvalues e^{i m p(k)}
};

inline Recomposition recompose(HalfInt j, const EulerAngles& angles, double k) {
    require_spin(j, "recompose");
    const SpectralAngles sa = spectral_angles(angles, k);
    RotationMatrix basis = rotation_matrix(j, {sa.phi, sa.theta, 0.0});
    DiagonalRotation diag{j, sa.p};

    const ComplexMatrix v =
        rotation_matrix(j, {angles.alpha - 2.0 * k, angles.beta, angles.gamma}).mat;
    const ComplexMatrix rebuilt = basis.mat * diag.to_matrix() * basis.mat.adjoint();
    const double defect = v.max_abs_diff(rebuilt);
    if (defect > kRecomposeTol)
        throw ConsistencyError("recompose: axis-angle identity failed, defect " +
                               std::to_string(defect));

    return {sa, std::move(basis), diag};
}

} // namespace qwalk

#endif
