#ifndef QWALK_PRESETS_HPP
#define QWALK_PRESETS_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qwalk/rotation.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Named coin-plus-qudit configurations for the standard two-, three- and
/// four-component comparison runs. The "a" variants give symmetric limit
/// laws, the "b" variants asymmetric ones.
struct Preset {
    std::string name;
    HalfInt j;
    EulerAngles angles;
    ComplexVector amplitudes;

    Qudit qudit() const { return Qudit(j, amplitudes); }
    RotationMatrix coin() const { return rotation_matrix(j, angles); }
};

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = [] {
        const double pi = std::numbers::pi;
        const double half = 0.5;
        const double r6 = 1.0 / std::sqrt(6.0);
        const double r20 = 1.0 / (2.0 * std::sqrt(5.0));

        std::vector<Preset> p;
        // Two-component model: i times the Hadamard coin.
        p.push_back({"fig2a",
                     HalfInt(1),
                     {0.0, -1.5 * pi, pi},
                     {Complex(half, half), Complex(half, -half)}});
        p.push_back({"fig2b",
                     HalfInt(1),
                     {0.0, -1.5 * pi, pi},
                     {Complex(half, half), Complex(half, half)}});
        // Three-component model: Grover-like coin with entries +-1/3, +-2/3.
        const double beta3 = std::acos(-1.0 / 3.0);
        p.push_back({"fig3a",
                     HalfInt(2),
                     {0.0, beta3, pi},
                     {Complex(r6, -r6), Complex(r6, r6), Complex(r6, -r6)}});
        p.push_back({"fig3b",
                     HalfInt(2),
                     {0.0, beta3, pi},
                     {Complex(r6, -r6), Complex(r6, -r6), Complex(r6, -r6)}});
        // Four-component model.
        p.push_back({"fig4a",
                     HalfInt(3),
                     {0.0, 2.0 * pi / 3.0, pi},
                     {Complex(r20, 3.0 * r20), 0.0, 0.0, Complex(-3.0 * r20, r20)}});
        p.push_back({"fig4b",
                     HalfInt(3),
                     {0.0, 2.0 * pi / 3.0, pi},
                     {Complex(r20, 3.0 * r20), 0.0, 0.0, Complex(-3.0 * r20, -r20)}});
        return p;
    }();
    return list;
}

inline const Preset* find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

} // namespace qwalk

#endif
