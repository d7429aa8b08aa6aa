#ifndef QWALK_LIMIT_HPP
#define QWALK_LIMIT_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "qwalk/quadrature.hpp"
#include "qwalk/rotation.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// |sin(beta/2)| at or below this is treated as a diagonal (ballistic)
/// coin: the orbit of the spectral decomposition collapses and the limit
/// machinery refuses to run. Simulation still works.
inline constexpr double kBallisticTol = 1e-9;

/// |cos(beta/2)| at or below this collapses every scaled density support
/// to {0}; the limit law is then a pure point mass at the origin.
inline constexpr double kScaleCollapseTol = 1e-12;

inline constexpr double kLimitQuadTol = 1e-10;

/// Inverse-bell density with support (-|a|, |a|) and inverse-square-root
/// edge singularities; the universal building block of quantum-walk limit
/// laws.
inline double konno_density(double x, double a) {
    if (std::abs(a) > 1.0)
        throw std::domain_error("konno_density: |a| must be <= 1");
    if (std::abs(x) >= std::abs(a)) return 0.0;
    return std::sqrt(1.0 - a * a) /
           (std::numbers::pi * (1.0 - x * x) * std::sqrt(a * a - x * x));
}

struct KonnoDensity {
    double a = 0.0;
    double operator()(double x) const { return konno_density(x, a); }
};

/// Integral of f(x) mu(x; a) over [x0, x1] (clipped to the support). The
/// substitution x = |a| sin(u) removes both edge singularities exactly,
/// leaving a smooth integrand.
template <class F>
inline double konno_weighted_integral_between(const F& f, double a, double x0, double x1,
                                              double abs_tol = kLimitQuadTol) {
    const double abs_a = std::abs(a);
    const double front = std::sqrt(1.0 - a * a) / std::numbers::pi;
    if (front == 0.0 || abs_a == 0.0 || x1 <= x0) return 0.0;
    const double u0 = std::asin(std::clamp(x0 / abs_a, -1.0, 1.0));
    const double u1 = std::asin(std::clamp(x1 / abs_a, -1.0, 1.0));
    if (u1 <= u0) return 0.0;
    auto g = [&](double u) {
        const double su = std::sin(u);
        return f(abs_a * su) / (1.0 - a * a * su * su);
    };
    return front * integrate(g, u0, u1, abs_tol / front);
}

/// Integral of f against the Konno density of scale a over the whole
/// support.
template <class F>
inline double konno_weighted_integral(const F& f, double a, double abs_tol = kLimitQuadTol) {
    const double abs_a = std::abs(a);
    return konno_weighted_integral_between(f, a, -abs_a, abs_a, abs_tol);
}

/// Overlap of the initial qudit with every eigenvector of the one-step
/// evolution operator at wave number k. Index i corresponds to the mode
/// with magnetic number m = j - i.
inline ComplexVector projection_coefficients(HalfInt j, const EulerAngles& angles, double k,
                                             const Qudit& qudit) {
    const SpectralAngles sa = spectral_angles(angles, k);
    const RotationMatrix basis = rotation_matrix(j, {sa.phi, sa.theta, 0.0});
    const int dim = j.dimension();
    const ComplexVector& q = qudit.amplitudes();
    ComplexVector c(dim);
    for (int col = 0; col < dim; ++col) {
        Complex acc = 0.0;
        for (int row = 0; row < dim; ++row) acc += std::conj(basis.mat(row, col)) * q[row];
        c[col] = acc;
    }
    return c;
}

inline Complex projection_coefficient(HalfInt j, HalfInt m, const EulerAngles& angles, double k,
                                      const Qudit& qudit) {
    require_magnetic(j, m, "projection_coefficient");
    return projection_coefficients(j, angles, k, qudit)[index_of(j, m)];
}

namespace detail {

inline void require_positive_mode(HalfInt j, HalfInt m, const char* who) {
    require_magnetic(j, m, who);
    if (m.twice <= 0)
        throw std::domain_error(std::string(who) + ": mode index must be positive");
}

inline double require_nondegenerate_sine(double beta, const char* who) {
    const double s = std::sin(beta / 2.0);
    if (std::abs(s) <= kBallisticTol)
        throw DegenerateCoinError(std::string(who) +
                                  ": diagonal coin (|sin(beta/2)| ~ 0), motion is ballistic and "
                                  "the continuous limit law degenerates; simulate instead");
    return s;
}

} // namespace detail

/// Long-time moment contribution of the +-m mode pair, as an integral over
/// the orbit angle chi of the axis-angle flow.
///
/// Conventions: k(chi) inverts the orbit map cos(w) = cos(chi)/E,
/// sin(w) = sin(beta/2) sin(chi)/E with w = (alpha+gamma)/2 - k and
/// E = sqrt(1 - cos^2(beta/2) sin^2(chi)). Along it the mode-m group
/// velocity is m dp/dk = -2m cos(beta/2) sgn(sin(beta/2)) sin(chi); the
/// sgn factor keeps this chi-integral equal to the underlying k-integral
/// for coins with sin(beta/2) < 0, and the Jacobian |dk/dchi| uses
/// |sin(beta/2)| for the same reason.
inline double limit_moment_integral(HalfInt j, HalfInt m, int r, const EulerAngles& angles,
                                    const Qudit& qudit) {
    detail::require_positive_mode(j, m, "limit_moment_integral");
    if (r < 1) throw std::domain_error("limit_moment_integral: order must be >= 1");
    const double s = detail::require_nondegenerate_sine(angles.beta, "limit_moment_integral");
    const double c = std::cos(angles.beta / 2.0);
    const double abs_s = std::abs(s);
    const double sgn_s = (s >= 0.0) ? 1.0 : -1.0;
    const double parity = (r % 2 == 0) ? 1.0 : -1.0;
    const int idx_pos = index_of(j, m);
    const int idx_neg = index_of(j, HalfInt(-m.twice));
    const double half_sum = (angles.alpha + angles.gamma) / 2.0;

    auto integrand = [&](double chi) {
        const double sc = std::sin(chi);
        const double k = half_sum - std::atan2(s * sc, std::cos(chi));
        const ComplexVector coeff = projection_coefficients(j, angles, k, qudit);
        const double jac = abs_s / (1.0 - c * c * sc * sc);
        const double vel = static_cast<double>(m.twice) * c * sgn_s * sc;
        return jac * (std::norm(coeff[idx_pos]) + parity * std::norm(coeff[idx_neg])) *
               std::pow(vel, r);
    };
    return integrate(integrand, -std::numbers::pi, std::numbers::pi, kLimitQuadTol) /
           (2.0 * std::numbers::pi);
}

/// Polynomial weight attached to one scaled Konno mode. Coefficients are
/// in increasing powers of x = y/2m.
struct WeightPolynomial {
    HalfInt j;
    HalfInt m;
    std::vector<double> coefficients;

    double eval(double x) const {
        double acc = 0.0;
        for (size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
        return acc;
    }
};

/// Closed-form weight polynomials for the two-, three- and four-component
/// models. Coefficients depend on the coin only through tau = tan(beta/2)
/// and exp(-i gamma); they are independent of alpha.
inline WeightPolynomial weight_polynomial_closed(HalfInt j, HalfInt m, double beta, double gamma,
                                                 const Qudit& qudit) {
    detail::require_positive_mode(j, m, "weight_polynomial_closed");
    if (qudit.j() != j)
        throw std::domain_error("weight_polynomial_closed: qudit spin mismatch");
    if (j.twice < 1 || j.twice > 3)
        throw RangeError(
            "weight_polynomial_closed: closed forms exist for spins 1/2, 1, 3/2 only; use "
            "weight_function_numeric");
    const double c = std::cos(beta / 2.0);
    if (std::abs(c) <= kScaleCollapseTol)
        throw DegenerateCoinError(
            "weight_polynomial_closed: tan(beta/2) singular (|cos(beta/2)| ~ 0), the limit law "
            "collapses to a point mass at the origin");
    const double tau = std::sin(beta / 2.0) / c;
    const Complex e1 = std::exp(Complex(0.0, -gamma));
    const Complex e2 = std::exp(Complex(0.0, -2.0 * gamma));
    const Complex e3 = std::exp(Complex(0.0, -3.0 * gamma));
    const ComplexVector& q = qudit.amplitudes();

    if (j.twice == 1) {
        // amplitudes (q_{1/2}, q_{-1/2})
        const double m1 = -(std::norm(q[0]) - std::norm(q[1])) +
                          2.0 * tau * std::real(q[0] * std::conj(q[1]) * e1);
        return {j, m, {1.0, m1}};
    }

    if (j.twice == 2) {
        // amplitudes (q_1, q_0, q_{-1})
        const double na = std::norm(q[0]), nb = std::norm(q[1]), nc = std::norm(q[2]);
        const double cross = std::real(q[0] * std::conj(q[2]) * e2);
        const double plus = std::real((q[0] * std::conj(q[1]) + q[1] * std::conj(q[2])) * e1);
        const double minus = std::real((q[0] * std::conj(q[1]) - q[1] * std::conj(q[2])) * e1);
        const double m0 = 0.5 * (na + 2.0 * nb + nc) - cross;
        const double m1 = -(na - nc) + std::numbers::sqrt2 * tau * plus;
        const double m2 = 0.5 * (na - 2.0 * nb + nc) - std::numbers::sqrt2 * tau * minus +
                          (1.0 + 2.0 * tau * tau) * cross;
        return {j, m, {m0, m1, m2}};
    }

    // amplitudes (q_{3/2}, q_{1/2}, q_{-1/2}, q_{-3/2})
    const double rt3 = std::numbers::sqrt3;
    const double na = std::norm(q[0]), nb = std::norm(q[1]);
    const double nc = std::norm(q[2]), nd = std::norm(q[3]);
    const double z1a = std::real((q[0] * std::conj(q[2]) + q[1] * std::conj(q[3])) * e2);
    const double z1b = std::real((q[0] * std::conj(q[2]) - q[1] * std::conj(q[3])) * e2);
    const double z2 = std::real(q[0] * std::conj(q[3]) * e3);
    const double z3 = std::real(q[1] * std::conj(q[2]) * e1);
    const double z4a = std::real((q[0] * std::conj(q[1]) + q[2] * std::conj(q[3])) * e1);
    const double z4b = std::real((q[0] * std::conj(q[1]) - q[2] * std::conj(q[3])) * e1);
    const double tau2 = tau * tau;

    if (m.twice == 3) {
        const double m0 = 0.25 * (na + 3.0 * nb + 3.0 * nc + nd) - 0.5 * rt3 * z1a;
        const double m1 = -0.75 * (na + nb - nc - nd) - 1.5 * tau * (z2 - z3) +
                          0.5 * rt3 * tau * z4a + 0.5 * rt3 * z1b;
        const double m2 =
            0.75 * (na - nb - nc + nd) - rt3 * tau * z4b + 0.5 * rt3 * (1.0 + 2.0 * tau2) * z1a;
        const double m3 = -0.25 * (na - 3.0 * nb + 3.0 * nc - nd) +
                          0.5 * tau * (3.0 + 4.0 * tau2) * z2 - 1.5 * tau * z3 +
                          0.5 * rt3 * tau * z4a - 0.5 * rt3 * (1.0 + 2.0 * tau2) * z1b;
        return {j, m, {m0, m1, m2, m3}};
    }

    const double m0 = 0.25 * (3.0 * na + nb + nc + 3.0 * nd) + 0.5 * rt3 * z1a;
    const double m1 = -0.25 * (3.0 * na - 5.0 * nb + 5.0 * nc - 3.0 * nd) + 4.5 * tau * z2 -
                      0.5 * tau * z3 + 0.5 * rt3 * tau * z4a - 1.5 * rt3 * z1b;
    const double m2 =
        -0.75 * (na - nb - nc + nd) + rt3 * tau * z4b - 0.5 * rt3 * (1.0 + 2.0 * tau2) * z1a;
    const double m3 = 0.75 * (na - 3.0 * nb + 3.0 * nc - nd) -
                      1.5 * tau * (3.0 + 4.0 * tau2) * z2 + 4.5 * tau * z3 -
                      1.5 * rt3 * tau * z4a + 1.5 * rt3 * (1.0 + 2.0 * tau2) * z1b;
    return {j, m, {m0, m1, m2, m3}};
}

namespace detail {

/// |C_{+m}|^2 and |C_{-m}|^2 re-expressed as functions of x = y/2m on the
/// principal branch of the orbit: cos^2(theta/2) = (1-x)/2,
/// sin^2(theta/2) = (1+x)/2 and sin(theta) e^{i phi} =
/// (x tan(beta/2) - i sqrt(1 - x^2 sec^2(beta/2))) e^{-i gamma}.
/// The axis is reconstructed with theta in [0, pi]; flipping to the other
/// theta branch only changes the eigenvector columns by a phase, which
/// the squared magnitudes do not see.
struct ModeMagnitudes {
    double pos;
    double neg;
};

inline ModeMagnitudes mode_magnitudes_at(HalfInt j, HalfInt m, const EulerAngles& angles,
                                         const Qudit& qudit, double x) {
    const double c = std::cos(angles.beta / 2.0);
    const double s = std::sin(angles.beta / 2.0);
    const double cos_half = std::sqrt(0.5 * (1.0 - x));
    const double sin_half = std::sqrt(0.5 * (1.0 + x));
    const double root = std::sqrt(std::max(0.0, 1.0 - (x / c) * (x / c)));
    const Complex mixed =
        0.5 * Complex(x * s / c, -root) * std::exp(Complex(0.0, -angles.gamma));
    const double phi = std::arg(mixed);

    const ComplexMatrix d = small_d_from_half_cs(j, cos_half, sin_half);
    const int dim = j.dimension();
    const int idx_pos = index_of(j, m);
    const int idx_neg = index_of(j, HalfInt(-m.twice));
    const ComplexVector& q = qudit.amplitudes();

    Complex cp = 0.0, cn = 0.0;
    for (int row = 0; row < dim; ++row) {
        const Complex phase = std::exp(Complex(0.0, phi * magnetic_at(j, row).value()));
        cp += phase * d(row, idx_pos) * q[row];
        cn += phase * d(row, idx_neg) * q[row];
    }
    return {std::norm(cp), std::norm(cn)};
}

} // namespace detail

/// Weight function M^{(j,m)}(y/2m) built numerically from the projection
/// magnitudes: even part (in y) of |C_m|^2 + |C_{-m}|^2 plus odd part of
/// |C_m|^2 - |C_{-m}|^2. The parity split is what makes the two-to-one
/// orbit substitution well defined: terms odd in cos(chi) cancel between
/// the branches and drop out here as well.
inline double weight_function_numeric(HalfInt j, HalfInt m, const EulerAngles& angles,
                                      const Qudit& qudit, double y) {
    detail::require_positive_mode(j, m, "weight_function_numeric");
    if (qudit.j() != j)
        throw std::domain_error("weight_function_numeric: qudit spin mismatch");
    detail::require_nondegenerate_sine(angles.beta, "weight_function_numeric");
    const double a = std::cos(angles.beta / 2.0);
    const double x = y / static_cast<double>(m.twice);
    if (std::abs(x) >= std::abs(a))
        throw std::domain_error("weight_function_numeric: y outside the open support");

    const auto at_pos = detail::mode_magnitudes_at(j, m, angles, qudit, x);
    const auto at_neg = detail::mode_magnitudes_at(j, m, angles, qudit, -x);
    const double even_sum = 0.5 * ((at_pos.pos + at_pos.neg) + (at_neg.pos + at_neg.neg));
    const double odd_diff = 0.5 * ((at_pos.pos - at_pos.neg) - (at_neg.pos - at_neg.neg));
    return even_sum + odd_diff;
}

namespace detail {

inline double mode_mass_numeric(HalfInt j, HalfInt m, const EulerAngles& angles,
                                const Qudit& qudit) {
    const double a = std::cos(angles.beta / 2.0);
    auto f = [&](double x) {
        return weight_function_numeric(j, m, angles, qudit, x * static_cast<double>(m.twice));
    };
    return konno_weighted_integral(f, a);
}

/// Positive mode labels m = 1/2 or 1 up to j.
inline std::vector<HalfInt> positive_modes(HalfInt j) {
    std::vector<HalfInt> modes;
    for (int m2 = (j.twice % 2 == 0) ? 2 : 1; m2 <= j.twice; m2 += 2)
        modes.push_back(HalfInt(m2));
    return modes;
}

} // namespace detail

/// Point-mass weight at the origin computed as one minus the total mass of
/// the scaled continuous modes, using the numerically built weights.
inline double delta_weight_numeric(HalfInt j, const EulerAngles& angles, const Qudit& qudit) {
    if (!j.is_integer())
        throw std::domain_error("delta_weight_numeric: no point mass for half-odd spins");
    detail::require_nondegenerate_sine(angles.beta, "delta_weight_numeric");
    double mass = 0.0;
    for (HalfInt m : detail::positive_modes(j)) {
        mass += detail::mode_mass_numeric(j, m, angles, qudit);
    }
    return 1.0 - mass;
}

/// Point-mass weight at the origin for integer spins. For the
/// three-component model this uses the closed form
/// 1 - (M0 + (1 - |sin(beta/2)|) M2); the |.| keeps it equal to the
/// quadrature route for negative beta, where the second moment of the
/// Konno density is 1 - |sin(beta/2)|. Larger integer spins have no
/// closed form and fall back to quadrature.
inline double delta_weight(HalfInt j, const EulerAngles& angles, const Qudit& qudit) {
    if (!j.is_integer())
        throw std::domain_error("delta_weight: no point mass for half-odd spins");
    const double s =
        detail::require_nondegenerate_sine(angles.beta, "delta_weight");
    if (j.twice == 2) {
        const WeightPolynomial w =
            weight_polynomial_closed(j, HalfInt(2), angles.beta, angles.gamma, qudit);
        return 1.0 - (w.coefficients[0] + (1.0 - std::abs(s)) * w.coefficients[2]);
    }
    return delta_weight_numeric(j, angles, qudit);
}

/// One scaled Konno mode of the limit law. Empty coefficients mean the
/// weight is evaluated numerically on demand.
struct LimitMode {
    HalfInt m;
    std::vector<double> coefficients;
};

/// Long-time law of the pseudovelocity X_t/t: a superposition of scaled
/// Konno densities with polynomial weights, plus (for integer spin) a
/// point mass at the origin.
class LimitDistribution {
public:
    LimitDistribution(HalfInt j, EulerAngles angles, Qudit qudit, double a,
                      std::vector<LimitMode> modes, double delta)
        : j_(j), angles_(angles), qudit_(std::move(qudit)), a_(a), modes_(std::move(modes)),
          delta_(delta) {}

    HalfInt j() const { return j_; }
    double scale() const { return a_; }
    double delta_weight() const { return delta_; }
    const std::vector<LimitMode>& modes() const { return modes_; }
    const EulerAngles& angles() const { return angles_; }
    const Qudit& qudit() const { return qudit_; }

    /// Weight M^{(j,m)} of one mode at x = y/2m.
    double mode_weight(const LimitMode& mode, double x) const {
        if (!mode.coefficients.empty()) {
            double acc = 0.0;
            for (size_t i = mode.coefficients.size(); i-- > 0;) acc = acc * x + mode.coefficients[i];
            return acc;
        }
        return weight_function_numeric(j_, mode.m, angles_, qudit_,
                                       x * static_cast<double>(mode.m.twice));
    }

    /// Continuous part of the density at pseudovelocity y. The point mass
    /// is not representable pointwise and is reported separately.
    double density(double y) const {
        double acc = 0.0;
        for (const LimitMode& mode : modes_) {
            const double two_m = static_cast<double>(mode.m.twice);
            const double x = y / two_m;
            if (std::abs(x) >= std::abs(a_)) continue;
            acc += konno_density(x, a_) * mode_weight(mode, x) / two_m;
        }
        return acc;
    }

    /// Quadrature of the continuous part; delta_weight() plus this should
    /// be 1. Integrates each mode over its exact support rather than via
    /// mass_between, which would round the edges off by a sliver.
    double continuous_mass() const {
        double mass = 0.0;
        for (const LimitMode& mode : modes_)
            mass += konno_weighted_integral([&](double x) { return mode_weight(mode, x); }, a_);
        return mass;
    }

    /// Continuous mass in the pseudovelocity window [y0, y1]. Safe across
    /// the edge singularities; the point mass at 0 is not included.
    double mass_between(double y0, double y1) const {
        double mass = 0.0;
        for (const LimitMode& mode : modes_) {
            const double two_m = static_cast<double>(mode.m.twice);
            mass += konno_weighted_integral_between(
                [&](double x) { return mode_weight(mode, x); }, a_, y0 / two_m, y1 / two_m);
        }
        return mass;
    }

    /// Largest |y| carrying continuous mass.
    double support_radius() const {
        return modes_.empty() ? 0.0 : std::abs(a_) * j_.twice;
    }

private:
    HalfInt j_;
    EulerAngles angles_;
    Qudit qudit_;
    double a_;
    std::vector<LimitMode> modes_;
    double delta_;
};

inline LimitDistribution limit_distribution(HalfInt j, const EulerAngles& angles,
                                            const Qudit& qudit) {
    require_spin(j, "limit_distribution");
    if (qudit.j() != j)
        throw std::domain_error("limit_distribution: qudit spin mismatch");
    detail::require_nondegenerate_sine(angles.beta, "limit_distribution");

    const double a = std::cos(angles.beta / 2.0);
    if (std::abs(a) <= kScaleCollapseTol) {
        // Every mode support collapses to {0}: pure point mass.
        return {j, angles, qudit, a, {}, 1.0};
    }

    std::vector<LimitMode> modes;
    for (HalfInt m : detail::positive_modes(j)) {
        LimitMode mode{m, {}};
        if (j.twice <= 3)
            mode.coefficients =
                weight_polynomial_closed(j, m, angles.beta, angles.gamma, qudit).coefficients;
        modes.push_back(std::move(mode));
    }
    const double delta = j.is_integer() ? delta_weight(j, angles, qudit) : 0.0;
    return {j, angles, qudit, a, std::move(modes), delta};
}

/// r-th moment of the limit law; the point mass contributes only at r = 0.
inline double limit_moment(const LimitDistribution& dist, int r) {
    if (r < 0) throw std::domain_error("limit_moment: negative order");
    double total = (r == 0) ? dist.delta_weight() : 0.0;
    for (const LimitMode& mode : dist.modes()) {
        const double two_m = static_cast<double>(mode.m.twice);
        auto f = [&](double x) { return std::pow(two_m * x, r) * dist.mode_weight(mode, x); };
        total += konno_weighted_integral(f, dist.scale());
    }
    return total;
}

} // namespace qwalk

#endif
