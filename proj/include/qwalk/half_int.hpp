#ifndef QWALK_HALF_INT_HPP
#define QWALK_HALF_INT_HPP

#include <compare>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

/// Exact half-integer, stored as its doubled value. Spin labels j are
/// non-negative (0, 1/2, 1, 3/2, ...); magnetic indices m are signed and
/// share the parity of the j they belong to.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt from_twice(int twice_value) { return HalfInt(twice_value); }
    static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }

    constexpr double value() const { return twice / 2.0; }
    constexpr bool is_integer() const { return twice % 2 == 0; }

    /// Dimension 2j+1 of the representation labeled by this spin.
    constexpr int dimension() const { return twice + 1; }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

/// True when m is a valid magnetic index for spin j: |m| <= j and
/// m == j (mod 1).
constexpr bool valid_magnetic(HalfInt j, HalfInt m) {
    if (m.twice > j.twice || m.twice < -j.twice) return false;
    return ((j.twice - m.twice) % 2) == 0;
}

inline void require_magnetic(HalfInt j, HalfInt m, const char* who) {
    if (j.twice < 0)
        throw std::domain_error(std::string(who) + ": negative spin label");
    if (!valid_magnetic(j, m))
        throw std::domain_error(std::string(who) + ": magnetic index " + m.str() +
                                " inconsistent with spin " + j.str());
}

/// Magnetic index of the i-th row/column, ordering m = j, j-1, ..., -j.
constexpr HalfInt magnetic_at(HalfInt j, int i) {
    return HalfInt(j.twice - 2 * i);
}

/// Row/column position of magnetic index m under the same ordering.
constexpr int index_of(HalfInt j, HalfInt m) {
    return (j.twice - m.twice) / 2;
}

} // namespace qwalk

#endif
