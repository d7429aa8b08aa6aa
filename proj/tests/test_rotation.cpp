#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/rotation.hpp"
#include "reference_matrices.hpp"

using namespace qwalk;
using Catch::Approx;
using reference::small_d_half;
using reference::small_d_one;
using reference::small_d_three_half;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937 rng(20240811);

double random_angle() {
    std::uniform_real_distribution<double> dist(-2 * kPi, 2 * kPi);
    return dist(rng);
}

} // namespace

TEST_CASE("gamma coefficient basic values") {
    const HalfInt half(1);
    CHECK(gamma_coefficient(half, half, half, 0) == 1.0);
    // Negative factorial argument excludes the term entirely.
    CHECK(gamma_coefficient(half, half, half, 1) == 0.0);
    CHECK(gamma_coefficient(HalfInt(2), HalfInt(0), HalfInt(2), 1) == 0.0);
    // Hand evaluation: the single surviving term of the (m=1, m'=0) entry
    // of the three-component matrix, cross-checked against -sqrt(2) c s.
    CHECK(gamma_coefficient(HalfInt(2), HalfInt(2), HalfInt(0), 1) ==
          Approx(-std::numbers::sqrt2).epsilon(1e-15));
}

TEST_CASE("gamma coefficient rejects inconsistent indices") {
    CHECK_THROWS_AS(gamma_coefficient(HalfInt(1), HalfInt(0), HalfInt(1), 0), std::domain_error);
    CHECK_THROWS_AS(gamma_coefficient(HalfInt(1), HalfInt(3), HalfInt(1), 0), std::domain_error);
    CHECK_THROWS_AS(gamma_coefficient(HalfInt(42), HalfInt(0), HalfInt(0), 0), RangeError);
}

TEST_CASE("small d matches closed forms on a beta grid") {
    for (int i = 0; i < 50; ++i) {
        const double beta = -2 * kPi + 4 * kPi * i / 49.0;
        CHECK(wigner_small_d(HalfInt(1), beta).mat.max_abs_diff(small_d_half(beta)) < 1e-13);
        CHECK(wigner_small_d(HalfInt(2), beta).mat.max_abs_diff(small_d_one(beta)) < 1e-13);
        CHECK(wigner_small_d(HalfInt(3), beta).mat.max_abs_diff(small_d_three_half(beta)) < 1e-13);
    }
}

TEST_CASE("small d at beta zero is the identity") {
    for (int j2 : {0, 1, 2, 3, 5, 8}) {
        const auto d = wigner_small_d(HalfInt(j2), 0.0);
        CHECK(d.mat.max_abs_diff(ComplexMatrix::identity(j2 + 1)) == 0.0);
    }
}

TEST_CASE("small d transposes under beta negation") {
    for (int j2 : {1, 2, 3, 4, 7}) {
        for (int i = 0; i < 10; ++i) {
            const double beta = random_angle();
            const auto plus = wigner_small_d(HalfInt(j2), beta);
            const auto minus = wigner_small_d(HalfInt(j2), -beta);
            CHECK(minus.mat.max_abs_diff(plus.mat.transpose()) < 1e-13);
        }
    }
}

TEST_CASE("rotation matrices are unitary") {
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<int> spin(0, 12);
        const HalfInt j(spin(rng));
        const auto r = rotation_matrix(j, {random_angle(), random_angle(), random_angle()});
        CHECK(r.mat.unitarity_defect() < 1e-12);
    }
}

TEST_CASE("z rotations compose additively") {
    for (int j2 : {1, 2, 3, 6}) {
        for (int i = 0; i < 10; ++i) {
            const double a = random_angle(), b = random_angle();
            const auto lhs = rotation_matrix(HalfInt(j2), {a, 0, 0}).mat *
                             rotation_matrix(HalfInt(j2), {b, 0, 0}).mat;
            const auto rhs = rotation_matrix(HalfInt(j2), {a + b, 0, 0}).mat;
            CHECK(lhs.max_abs_diff(rhs) < 1e-12);
        }
    }
}

TEST_CASE("named coins match their closed matrices") {
    const auto two = rotation_matrix(HalfInt(1), {0.0, -1.5 * kPi, kPi});
    CHECK(two.mat.max_abs_diff(reference::coin_two_component()) < 1e-14);
    const auto three = rotation_matrix(HalfInt(2), {0.0, std::acos(-1.0 / 3.0), kPi});
    CHECK(three.mat.max_abs_diff(reference::coin_three_component()) < 1e-14);
    const auto four = rotation_matrix(HalfInt(3), {0.0, 2.0 * kPi / 3.0, kPi});
    CHECK(four.mat.max_abs_diff(reference::coin_four_component()) < 1e-14);
}

TEST_CASE("diagonal rotation equals a z rotation by minus the phase") {
    for (int j2 : {1, 2, 3, 8}) {
        const double p = random_angle();
        const DiagonalRotation d{HalfInt(j2), p};
        const auto z = rotation_matrix(HalfInt(j2), {-p, 0, 0});
        CHECK(d.to_matrix().max_abs_diff(z.mat) < 1e-14);
    }
}

TEST_CASE("spectral angles at aligned wave number") {
    // alpha + gamma - 2k = 0 makes cos(p/2) = cos(beta/2) and the axis
    // purely equatorial, theta = +-pi/2 with the sign of sin(beta/2).
    for (double beta : {0.7, 2.4, -0.9, -2.8}) {
        const EulerAngles angles{0.3, beta, 0.5};
        const double k = (angles.alpha + angles.gamma) / 2.0;
        const auto sa = spectral_angles(angles, k);
        CHECK(std::cos(sa.p / 2) == Approx(std::cos(beta / 2)).margin(1e-12));
        CHECK(sa.p >= 0.0);
        CHECK(sa.p <= 2 * kPi);
        const double expected_theta = (std::sin(beta / 2) > 0) ? kPi / 2 : -kPi / 2;
        CHECK(sa.theta == Approx(expected_theta).margin(1e-12));
    }
}

TEST_CASE("spectral angles at beta = pi give an equatorial axis for every k") {
    const EulerAngles angles{0.4, kPi, -0.7};
    for (int i = 0; i < 20; ++i) {
        const auto sa = spectral_angles(angles, random_angle());
        CHECK(std::sin(sa.theta) == Approx(1.0).margin(1e-12));
        CHECK(sa.theta == Approx(kPi / 2).margin(1e-12));
    }
}

TEST_CASE("spectral angles at the Hadamard configuration and k = 0") {
    const auto sa = spectral_angles({0.0, -1.5 * kPi, kPi}, 0.0);
    // cos(p/2) = cos(-3pi/4) cos(pi/2) = 0, hence p = pi.
    CHECK(sa.p == Approx(kPi).margin(1e-12));
}

TEST_CASE("spectral angles degenerate for a diagonal coin at aligned k") {
    CHECK_THROWS_AS(spectral_angles({0.0, 0.0, 0.0}, 0.0), DegenerateAngleError);
    try {
        spectral_angles({0.0, 0.0, 0.0}, 0.0);
    } catch (const DegenerateAngleError& e) {
        CHECK(e.wave_number() == 0.0);
    }
    // Away from the aligned wave number the construction still works.
    CHECK_NOTHROW(spectral_angles({0.0, 0.0, 0.0}, 0.4));
}

TEST_CASE("axis-angle relations of the two-component reduction") {
    for (int i = 0; i < 50; ++i) {
        const EulerAngles angles{random_angle(), random_angle(), random_angle()};
        const double k = random_angle();
        const double c = std::cos(angles.beta / 2), s = std::sin(angles.beta / 2);
        const double w = (angles.alpha + angles.gamma) / 2.0 - k;
        SpectralAngles sa;
        try {
            sa = spectral_angles(angles, k);
        } catch (const DegenerateAngleError&) {
            continue;
        }
        const double shp = std::sin(sa.p / 2), chp = std::cos(sa.p / 2);
        const double diff_half = (angles.alpha - 2 * k - angles.gamma) / 2.0;
        CHECK(chp == Approx(c * std::cos(w)).margin(1e-12));
        CHECK(shp * std::cos(sa.theta) == Approx(-c * std::sin(w)).margin(1e-12));
        CHECK(shp * std::sin(sa.theta) * std::sin(sa.phi) ==
              Approx(-s * std::cos(diff_half)).margin(1e-12));
        CHECK(shp * std::sin(sa.theta) * std::cos(sa.phi) ==
              Approx(s * std::sin(diff_half)).margin(1e-12));
        // Consistency of the stated invariant: sin(beta/2) = sin(p/2) sin(theta).
        CHECK(shp * std::sin(sa.theta) == Approx(s).margin(1e-12));
    }
}

TEST_CASE("recompose reproduces the evolution operator") {
    std::uniform_int_distribution<int> spin(1, 8);
    for (int i = 0; i < 100; ++i) {
        const HalfInt j(spin(rng));
        const EulerAngles angles{random_angle(), random_angle(), random_angle()};
        const double k = random_angle();
        try {
            const auto rec = recompose(j, angles, k);
            const auto v = rotation_matrix(j, {angles.alpha - 2 * k, angles.beta, angles.gamma});
            const auto rebuilt =
                rec.basis.mat * rec.diag.to_matrix() * rec.basis.mat.adjoint();
            CHECK(v.mat.max_abs_diff(rebuilt) < 1e-10);
        } catch (const DegenerateAngleError&) {
            // acceptable at isolated wave numbers for near-diagonal coins
        }
    }
}

TEST_CASE("recompose matches the explicit two-component product") {
    for (int i = 0; i < 25; ++i) {
        const EulerAngles angles{random_angle(), random_angle(), random_angle()};
        const double k = random_angle();
        SpectralAngles sa;
        try {
            sa = spectral_angles(angles, k);
        } catch (const DegenerateAngleError&) {
            continue;
        }
        const auto rec = recompose(HalfInt(1), angles, k);
        const auto product = rec.basis.mat * rec.diag.to_matrix() * rec.basis.mat.adjoint();
        const double cp = std::cos(sa.p / 2), sp = std::sin(sa.p / 2);
        const double ct = std::cos(sa.theta), st = std::sin(sa.theta);
        ComplexMatrix expect(2, 2);
        expect(0, 0) = Complex(cp, sp * ct);
        expect(0, 1) = Complex(0, 1) * sp * st * std::exp(Complex(0, -sa.phi));
        expect(1, 0) = Complex(0, 1) * sp * st * std::exp(Complex(0, sa.phi));
        expect(1, 1) = Complex(cp, -sp * ct);
        CHECK(product.max_abs_diff(expect) < 1e-12);
    }
}

TEST_CASE("recompose at a four-component sample point") {
    CHECK_NOTHROW(recompose(HalfInt(3), {0.0, 2.0 * kPi / 3.0, kPi}, 0.7));
    CHECK_THROWS_AS(recompose(HalfInt(3), {0.0, 0.0, 0.0}, 0.0), DegenerateAngleError);
}
