#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/limit.hpp"
#include "qwalk/presets.hpp"

using namespace qwalk;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937 rng(31415);

double random_angle() {
    std::uniform_real_distribution<double> dist(-2 * kPi, 2 * kPi);
    return dist(rng);
}

ComplexVector random_amplitudes(int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    double n2 = 0.0;
    for (auto& z : v) {
        z = Complex(gauss(rng), gauss(rng));
        n2 += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(n2);
    return v;
}

/// Random coin angles kept safely away from both degenerations.
EulerAngles random_tame_angles() {
    while (true) {
        EulerAngles a{random_angle(), random_angle(), random_angle()};
        if (std::abs(std::sin(a.beta / 2)) > 0.05 && std::abs(std::cos(a.beta / 2)) > 0.05)
            return a;
    }
}

} // namespace

TEST_CASE("konno density pointwise values") {
    CHECK(konno_density(0.9, 0.5) == 0.0);
    CHECK(konno_density(-0.5, 0.5) == 0.0);  // support is open
    const double a = 1.0 / std::numbers::sqrt2;
    CHECK(konno_density(0.0, a) == Approx(1.0 / kPi).epsilon(1e-14));
    // scale parameter may be negative; only |a| matters
    CHECK(konno_density(0.3, -a) == Approx(konno_density(0.3, a)));
    CHECK_THROWS_AS(konno_density(0.0, 1.5), std::domain_error);
    const KonnoDensity mu{0.8};
    CHECK(mu(0.1) == Approx(konno_density(0.1, 0.8)));
}

TEST_CASE("konno density integrates to one") {
    for (double a : {0.2, 0.5, 1.0 / std::numbers::sqrt2, -0.7, 0.95}) {
        const double mass = konno_weighted_integral([](double) { return 1.0; }, a);
        CHECK(mass == Approx(1.0).margin(1e-8));
        // Second moment has the closed value 1 - sqrt(1 - a^2).
        const double m2 = konno_weighted_integral([](double x) { return x * x; }, a);
        CHECK(m2 == Approx(1.0 - std::sqrt(1.0 - a * a)).margin(1e-10));
    }
}

TEST_CASE("projection coefficients form a resolution of unity") {
    for (int j2 : {1, 2, 3, 4}) {
        const HalfInt j(j2);
        const Qudit q(j, random_amplitudes(j.dimension()));
        const EulerAngles angles = random_tame_angles();
        for (int i = 0; i < 10; ++i) {
            const double k = random_angle();
            const auto c = projection_coefficients(j, angles, k, q);
            double total = 0.0;
            for (const Complex& z : c) total += std::norm(z);
            CHECK(total == Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("projection picks out an eigenvector qudit") {
    const HalfInt j(1);
    const EulerAngles angles = find_preset("fig2a")->angles;
    const double k = 0.3;
    const auto sa = spectral_angles(angles, k);
    const auto basis = rotation_matrix(j, {sa.phi, sa.theta, 0.0});
    const Qudit eigen(j, {basis.mat(0, 0), basis.mat(1, 0)});
    CHECK(std::abs(projection_coefficient(j, HalfInt(1), angles, k, eigen) - 1.0) < 1e-12);
    CHECK(std::abs(projection_coefficient(j, HalfInt(-1), angles, k, eigen)) < 1e-12);
}

TEST_CASE("two-component projection magnitudes match the direct expansion") {
    // Independent route: |C_{+-1/2}|^2 written out in the axis angles.
    const Preset& preset = *find_preset("fig2a");
    const Qudit q = preset.qudit();
    for (double k : {0.3, -1.1, 2.0}) {
        const auto sa = spectral_angles(preset.angles, k);
        const double ch = std::cos(sa.theta / 2), sh = std::sin(sa.theta / 2);
        const Complex qp = q.amplitudes()[0], qm = q.amplitudes()[1];
        const Complex cross = qp * std::conj(qm) * std::exp(Complex(0, sa.phi));
        const double plus = ch * ch * std::norm(qp) + sh * sh * std::norm(qm) +
                            2.0 * ch * sh * std::real(cross);
        const double minus = sh * sh * std::norm(qp) + ch * ch * std::norm(qm) -
                             2.0 * ch * sh * std::real(cross);
        const auto c = projection_coefficients(HalfInt(1), preset.angles, k, q);
        CHECK(std::norm(c[0]) == Approx(plus).margin(1e-12));
        CHECK(std::norm(c[1]) == Approx(minus).margin(1e-12));
        CHECK(std::norm(c[0]) + std::norm(c[1]) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("limit moment integral parity and symmetric cases") {
    const Preset& fig2a = *find_preset("fig2a");
    const Qudit q2a = fig2a.qudit();
    // Even order: non-negative. Odd order with symmetric weight: zero.
    CHECK(limit_moment_integral(HalfInt(1), HalfInt(1), 2, fig2a.angles, q2a) > 0.0);
    CHECK(std::abs(limit_moment_integral(HalfInt(1), HalfInt(1), 1, fig2a.angles, q2a)) < 1e-10);

    CHECK_THROWS_AS(limit_moment_integral(HalfInt(1), HalfInt(-1), 1, fig2a.angles, q2a),
                    std::domain_error);
    CHECK_THROWS_AS(limit_moment_integral(HalfInt(1), HalfInt(1), 0, fig2a.angles, q2a),
                    std::domain_error);
    CHECK_THROWS_AS(
        limit_moment_integral(HalfInt(1), HalfInt(1), 1, {0.1, 0.0, -0.1}, q2a),
        DegenerateCoinError);
}

TEST_CASE("asymmetric two-component first moment matches the scaled density") {
    // With unit linear weight coefficient of -1, the first moment equals
    // minus the second moment of the bare density: -(1 - 1/sqrt(2)).
    const Preset& fig2b = *find_preset("fig2b");
    const Qudit q = fig2b.qudit();
    const double expected = -(1.0 - 1.0 / std::numbers::sqrt2);
    const double chi_route = limit_moment_integral(HalfInt(1), HalfInt(1), 1, fig2b.angles, q);
    CHECK(chi_route == Approx(expected).margin(1e-10));

    const auto poly =
        weight_polynomial_closed(HalfInt(1), HalfInt(1), fig2b.angles.beta, fig2b.angles.gamma, q);
    const double density_route = konno_weighted_integral(
        [&](double x) { return x * poly.eval(x); }, std::cos(fig2b.angles.beta / 2));
    CHECK(density_route == Approx(expected).margin(1e-10));
}

TEST_CASE("closed weight polynomials at the named configurations") {
    const Preset& fig2a = *find_preset("fig2a");
    const auto sym = weight_polynomial_closed(HalfInt(1), HalfInt(1), fig2a.angles.beta,
                                              fig2a.angles.gamma, fig2a.qudit());
    REQUIRE(sym.coefficients.size() == 2);
    CHECK(sym.coefficients[0] == 1.0);
    CHECK(std::abs(sym.coefficients[1]) < 1e-12);

    const Preset& fig2b = *find_preset("fig2b");
    const auto asym = weight_polynomial_closed(HalfInt(1), HalfInt(1), fig2b.angles.beta,
                                               fig2b.angles.gamma, fig2b.qudit());
    CHECK(asym.coefficients[1] == Approx(-1.0).margin(1e-12));

    // Pure middle component of the three-component model: weights 1, 0, -1.
    const Qudit middle(HalfInt(2), {Complex(0.0), Complex(1.0), Complex(0.0)});
    const auto w3 = weight_polynomial_closed(HalfInt(2), HalfInt(2), 1.1, 0.7, middle);
    REQUIRE(w3.coefficients.size() == 3);
    CHECK(w3.coefficients[0] == Approx(1.0).margin(1e-14));
    CHECK(w3.coefficients[1] == Approx(0.0).margin(1e-14));
    CHECK(w3.coefficients[2] == Approx(-1.0).margin(1e-14));
}

TEST_CASE("closed weight polynomials reject unsupported inputs") {
    const Qudit q(HalfInt(4), random_amplitudes(5));
    CHECK_THROWS_AS(weight_polynomial_closed(HalfInt(4), HalfInt(2), 1.0, 0.0, q), RangeError);
    const Qudit q2(HalfInt(1), random_amplitudes(2));
    CHECK_THROWS_AS(weight_polynomial_closed(HalfInt(1), HalfInt(1), kPi, 0.0, q2),
                    DegenerateCoinError);
}

TEST_CASE("numeric weights agree with closed forms") {
    for (int j2 : {1, 2, 3}) {
        const HalfInt j(j2);
        for (int rep = 0; rep < 20; ++rep) {
            const EulerAngles angles = random_tame_angles();
            const Qudit q(j, random_amplitudes(j.dimension()));
            const double a = std::cos(angles.beta / 2);
            for (int m2 = (j2 % 2 == 0) ? 2 : 1; m2 <= j2; m2 += 2) {
                const auto poly =
                    weight_polynomial_closed(j, HalfInt(m2), angles.beta, angles.gamma, q);
                double worst = 0.0;
                for (int i = 1; i < 101; ++i) {
                    const double x = -std::abs(a) + 2 * std::abs(a) * i / 101.0;
                    const double numeric =
                        weight_function_numeric(j, HalfInt(m2), angles, q, x * m2);
                    worst = std::max(worst, std::abs(numeric - poly.eval(x)));
                }
                CHECK(worst < 1e-10);
            }
        }
    }
}

TEST_CASE("numeric weight rejects values outside the open support") {
    const Preset& fig3a = *find_preset("fig3a");
    const double a = std::cos(fig3a.angles.beta / 2);
    const Qudit q = fig3a.qudit();
    CHECK_THROWS_AS(weight_function_numeric(HalfInt(2), HalfInt(2), fig3a.angles, q, 2 * a),
                    std::domain_error);
    CHECK_NOTHROW(weight_function_numeric(HalfInt(2), HalfInt(2), fig3a.angles, q, 1.9 * a));
}

TEST_CASE("numeric weight of a symmetric configuration is even") {
    // The symmetric three-component configuration has no odd part, so the
    // numerically built weight itself is even in y.
    const Preset& fig3a = *find_preset("fig3a");
    const Qudit q = fig3a.qudit();
    const double a = std::cos(fig3a.angles.beta / 2);
    for (double frac : {0.15, 0.4, 0.75, 0.95}) {
        const double y = 2 * std::abs(a) * frac;
        const double plus = weight_function_numeric(HalfInt(2), HalfInt(2), fig3a.angles, q, y);
        const double minus = weight_function_numeric(HalfInt(2), HalfInt(2), fig3a.angles, q, -y);
        CHECK(plus == Approx(minus).margin(1e-12));
    }
}

TEST_CASE("five-component continuous mass stays below one") {
    const HalfInt j(4);
    const EulerAngles angles = random_tame_angles();
    const Qudit q(j, random_amplitudes(5));
    double mass = 0.0;
    for (int m2 : {2, 4}) {
        auto f = [&](double x) {
            return weight_function_numeric(j, HalfInt(m2), angles, q, x * m2);
        };
        mass += konno_weighted_integral(f, std::cos(angles.beta / 2));
    }
    CHECK(mass <= 1.0 + 1e-10);
    CHECK(delta_weight(j, angles, q) == Approx(1.0 - mass).margin(1e-9));
}

TEST_CASE("point mass of the three-component model") {
    // Pure middle component: weights (1, 0, -1) make the point mass
    // 1 - |sin(beta/2)| exactly.
    const Qudit middle(HalfInt(2), {Complex(0.0), Complex(1.0), Complex(0.0)});
    for (double beta : {0.9, 2.2, std::acos(-1.0 / 3.0)}) {
        const double s = std::sin(beta / 2);
        CHECK(delta_weight(HalfInt(2), {0.4, beta, -0.8}, middle) ==
              Approx(1.0 - std::abs(s)).margin(1e-10));
    }

    // Closed form versus quadrature over random configurations.
    for (int rep = 0; rep < 10; ++rep) {
        const EulerAngles angles = random_tame_angles();
        const Qudit q(HalfInt(2), random_amplitudes(3));
        CHECK(delta_weight(HalfInt(2), angles, q) ==
              Approx(delta_weight_numeric(HalfInt(2), angles, q)).margin(1e-8));
    }

    const Preset& fig3b = *find_preset("fig3b");
    CHECK(delta_weight(HalfInt(2), fig3b.angles, fig3b.qudit()) > 0.1);

    CHECK_THROWS_AS(delta_weight(HalfInt(1), {0, 1, 0}, Qudit(HalfInt(1), {1.0, 0.0})),
                    std::domain_error);
}

TEST_CASE("limit distribution of the symmetric two-component model is the bare density") {
    const Preset& fig2a = *find_preset("fig2a");
    const auto ld = limit_distribution(fig2a.j, fig2a.angles, fig2a.qudit());
    CHECK(ld.delta_weight() == 0.0);
    REQUIRE(ld.modes().size() == 1);
    for (double y : {0.0, 0.2, -0.5, 0.69}) {
        CHECK(ld.density(y) == Approx(konno_density(y, ld.scale())).margin(1e-12));
        CHECK(ld.density(y) == Approx(ld.density(-y)).margin(1e-12));
    }
    CHECK(ld.density(0.8) == 0.0);  // outside |a| = 1/sqrt(2)
}

TEST_CASE("limit distribution support and mode count") {
    const Preset& fig4a = *find_preset("fig4a");
    const auto ld = limit_distribution(fig4a.j, fig4a.angles, fig4a.qudit());
    CHECK(ld.modes().size() == 2);  // m = 3/2 and m = 1/2
    CHECK(ld.delta_weight() == 0.0);
    CHECK(ld.support_radius() == Approx(3.0 * std::abs(std::cos(fig4a.angles.beta / 2))));

    const Qudit q3(HalfInt(2), random_amplitudes(3));
    const EulerAngles angles = random_tame_angles();
    const auto ld3 = limit_distribution(HalfInt(2), angles, q3);
    const double radius = 2.0 * std::abs(std::cos(angles.beta / 2));
    CHECK(ld3.density(radius + 0.01) == 0.0);
    CHECK(ld3.density(-radius - 0.01) == 0.0);
}

TEST_CASE("limit distribution refuses degenerate coins by name") {
    const Qudit q(HalfInt(1), {Complex(1.0), Complex(0.0)});
    try {
        limit_distribution(HalfInt(1), {0.0, 0.0, 0.0}, q);
        FAIL("expected a degenerate-coin error");
    } catch (const DegenerateCoinError& e) {
        CHECK(std::string(e.what()).find("ballistic") != std::string::npos);
    }
}

TEST_CASE("scale collapse yields a pure point mass") {
    const Qudit q(HalfInt(2), random_amplitudes(3));
    const auto ld = limit_distribution(HalfInt(2), {0.2, kPi, 0.4}, q);
    CHECK(ld.delta_weight() == 1.0);
    CHECK(ld.modes().empty());
    CHECK(ld.continuous_mass() == 0.0);
    CHECK(limit_moment(ld, 0) == 1.0);
    CHECK(limit_moment(ld, 2) == 0.0);
}

TEST_CASE("odd moments of symmetric laws vanish") {
    const Preset& fig2a = *find_preset("fig2a");
    const auto ld = limit_distribution(fig2a.j, fig2a.angles, fig2a.qudit());
    CHECK(std::abs(limit_moment(ld, 1)) < 1e-10);
    CHECK(std::abs(limit_moment(ld, 3)) < 1e-10);
    CHECK(limit_moment(ld, 0) == Approx(1.0).margin(1e-10));
    CHECK_THROWS_AS(limit_moment(ld, -1), std::domain_error);
}

TEST_CASE("limit law is normalized") {
    for (const auto& preset : presets()) {
        const auto ld = limit_distribution(preset.j, preset.angles, preset.qudit());
        CHECK(ld.continuous_mass() + ld.delta_weight() == Approx(1.0).margin(1e-8));
        CHECK(limit_moment(ld, 0) == Approx(1.0).margin(1e-8));
    }
    for (int j2 : {1, 2, 3, 4}) {
        for (int rep = 0; rep < 5; ++rep) {
            const EulerAngles angles = random_tame_angles();
            const Qudit q(HalfInt(j2), random_amplitudes(j2 + 1));
            const auto ld = limit_distribution(HalfInt(j2), angles, q);
            CHECK(ld.continuous_mass() + ld.delta_weight() == Approx(1.0).margin(1e-8));
        }
    }
}

TEST_CASE("moments via the density match the orbit integrals") {
    for (int j2 : {1, 2, 3, 4}) {
        const HalfInt j(j2);
        const EulerAngles angles = random_tame_angles();
        const Qudit q(j, random_amplitudes(j.dimension()));
        const auto ld = limit_distribution(j, angles, q);
        for (int r = 1; r <= 4; ++r) {
            double orbit = 0.0;
            for (int m2 = (j2 % 2 == 0) ? 2 : 1; m2 <= j2; m2 += 2)
                orbit += limit_moment_integral(j, HalfInt(m2), r, angles, q);
            CHECK(limit_moment(ld, r) == Approx(orbit).margin(1e-8));
        }
    }
}

TEST_CASE("limit law does not depend on alpha") {
    const HalfInt j(2);
    const Qudit q(j, random_amplitudes(3));
    const EulerAngles base = random_tame_angles();
    EulerAngles shifted = base;
    shifted.alpha += 0.37;
    const auto ld1 = limit_distribution(j, base, q);
    const auto ld2 = limit_distribution(j, shifted, q);
    for (double y : {-0.9, -0.3, 0.0, 0.4, 1.1})
        CHECK(std::abs(ld1.density(y) - ld2.density(y)) < 1e-10);
    CHECK(std::abs(ld1.delta_weight() - ld2.delta_weight()) < 1e-10);
    for (int r = 1; r <= 3; ++r)
        CHECK(std::abs(limit_moment_integral(j, HalfInt(2), r, base, q) -
                       limit_moment_integral(j, HalfInt(2), r, shifted, q)) < 1e-10);
}

TEST_CASE("density symmetry holds exactly when the odd coefficients vanish") {
    auto is_even = [](const LimitDistribution& ld) {
        for (double y : {0.1, 0.35, 0.6, 0.85, 1.2, 1.6}) {
            if (std::abs(ld.density(y) - ld.density(-y)) > 1e-10) return false;
        }
        return true;
    };
    for (const char* name : {"fig2a", "fig3a", "fig4a"}) {
        const Preset& p = *find_preset(name);
        CHECK(is_even(limit_distribution(p.j, p.angles, p.qudit())));
    }
    for (const char* name : {"fig2b", "fig3b"}) {
        const Preset& p = *find_preset(name);
        CHECK(!is_even(limit_distribution(p.j, p.angles, p.qudit())));
    }
    // The four-component symmetry criterion is the vanishing of all four
    // odd closed-form coefficients.
    const Preset& fig4a = *find_preset("fig4a");
    for (int m2 : {1, 3}) {
        const auto poly = weight_polynomial_closed(fig4a.j, HalfInt(m2), fig4a.angles.beta,
                                                   fig4a.angles.gamma, fig4a.qudit());
        CHECK(std::abs(poly.coefficients[1]) < 1e-12);
        CHECK(std::abs(poly.coefficients[3]) < 1e-12);
    }
}

TEST_CASE("orbit geometry: plane constraint and orbit equation") {
    for (int rep = 0; rep < 40; ++rep) {
        const EulerAngles angles = random_tame_angles();
        const double k = random_angle();
        const double c = std::cos(angles.beta / 2), s = std::sin(angles.beta / 2);
        const double w = (angles.alpha + angles.gamma) / 2.0 - k;
        const double denom = std::sqrt(1.0 - c * c * std::cos(w) * std::cos(w));
        const auto sa = spectral_angles(angles, k);

        // Axis vector scaled by the rotation angle stays in the plane
        // orthogonal to the fixed unit vector below.
        const double px = sa.p * std::sin(sa.theta) * std::cos(sa.phi);
        const double py = sa.p * std::sin(sa.theta) * std::sin(sa.phi);
        const double pz = sa.p * std::cos(sa.theta);
        const double e3x = c * std::cos(angles.gamma);
        const double e3y = -c * std::sin(angles.gamma);
        const double e3z = s;
        CHECK(std::abs(px * e3x + py * e3y + pz * e3z) < 1e-10);

        // In-plane angle chi satisfies tan(p/2) cos(chi) = tan(beta/2);
        // checked in cross-multiplied form, which stays finite at p = pi.
        const double cos_chi = s * std::cos(w) / denom;
        CHECK(c * std::sin(sa.p / 2) * cos_chi - s * std::cos(sa.p / 2) ==
              Approx(0.0).margin(1e-12));
        if (std::abs(std::cos(sa.p / 2)) > 0.1)
            CHECK(std::tan(sa.p / 2) * cos_chi == Approx(s / c).margin(1e-10));
    }
}
