#ifndef QWALK_CONFIG_HPP
#define QWALK_CONFIG_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/half_int.hpp"
#include "qwalk/complex_matrix.hpp"

namespace qwalk {

/// Format a double with 17 significant digits (round-trip exact).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline bool parse_plain_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

} // namespace detail

/// Parse an angle in radians, with `pi` sugar so exact configurations can
/// be written without decimal rounding: "0.5", "pi", "-pi/4", "-3pi/2",
/// "2*pi/3", "0.25pi".
inline double parse_angle(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    if (text.empty()) throw ConfigError("parse_angle: empty angle");

    const size_t pi_pos = text.find("pi");
    if (pi_pos == std::string::npos) {
        double v;
        if (!detail::parse_plain_double(text, v))
            throw ConfigError("parse_angle: cannot parse '" + raw + "'");
        return v;
    }

    std::string head = text.substr(0, pi_pos);
    std::string tail = text.substr(pi_pos + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();

    double coeff = 1.0;
    if (head == "-") {
        coeff = -1.0;
    } else if (head == "+" || head.empty()) {
        coeff = 1.0;
    } else if (!detail::parse_plain_double(head, coeff)) {
        throw ConfigError("parse_angle: cannot parse coefficient in '" + raw + "'");
    }

    double denom = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/')
            throw ConfigError("parse_angle: unexpected trailing text in '" + raw + "'");
        if (!detail::parse_plain_double(tail.substr(1), denom) || denom == 0.0)
            throw ConfigError("parse_angle: bad denominator in '" + raw + "'");
    }
    return coeff * std::numbers::pi / denom;
}

/// Parse one complex literal of the form "a", "bi", "a+bi", "a-bi", "i",
/// "-i". On failure the error message names the offending column.
inline Complex parse_complex(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    if (text.empty()) throw ConfigError("parse_complex: empty literal");

    // Find a +/- sign separating real and imaginary parts: not the leading
    // sign and not an exponent sign.
    size_t split = std::string::npos;
    for (size_t i = 1; i < text.size(); ++i) {
        const char ch = text[i];
        if ((ch == '+' || ch == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') split = i;
    }

    auto parse_part = [&raw](std::string part, bool imag, size_t column) {
        if (imag) {
            if (part.empty() || part.back() != 'i')
                throw ConfigError("parse_complex: expected trailing 'i' at column " +
                                  std::to_string(column) + " in '" + raw + "'");
            part.pop_back();
            if (part.empty() || part == "+") part = "1";
            else if (part == "-") part = "-1";
        }
        double v;
        if (!detail::parse_plain_double(part, v))
            throw ConfigError("parse_complex: cannot parse '" + raw + "' near column " +
                              std::to_string(column));
        return v;
    };

    if (split == std::string::npos) {
        if (text.back() == 'i') return Complex(0.0, parse_part(text, true, 1));
        return Complex(parse_part(text, false, 1), 0.0);
    }
    if (text.back() != 'i')
        throw ConfigError("parse_complex: imaginary part must end in 'i' in '" + raw + "'");
    const double re = parse_part(text.substr(0, split), false, 1);
    const double im = parse_part(text.substr(split), true, split + 1);
    return Complex(re, im);
}

/// Parse a comma-separated list of complex literals, ordered q_j ... q_{-j}.
inline ComplexVector parse_qudit(const std::string& raw) {
    ComplexVector out;
    size_t start = 0;
    while (start <= raw.size()) {
        size_t comma = raw.find(',', start);
        if (comma == std::string::npos) comma = raw.size();
        out.push_back(parse_complex(raw.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

/// Parse a spin label: "1", "0.5", "3/2", "1.5".
inline HalfInt parse_spin(const std::string& raw) {
    const size_t slash = raw.find('/');
    if (slash != std::string::npos) {
        double num, den;
        if (!detail::parse_plain_double(raw.substr(0, slash), num) ||
            !detail::parse_plain_double(raw.substr(slash + 1), den) || den != 2.0)
            throw ConfigError("parse_spin: expected n/2 in '" + raw + "'");
        const int twice = static_cast<int>(std::lround(num));
        if (twice != num) throw ConfigError("parse_spin: non-integer numerator in '" + raw + "'");
        return HalfInt(twice);
    }
    double v;
    if (!detail::parse_plain_double(raw, v))
        throw ConfigError("parse_spin: cannot parse '" + raw + "'");
    const double twice = 2.0 * v;
    const int rounded = static_cast<int>(std::lround(twice));
    if (std::abs(twice - rounded) > 1e-9)
        throw ConfigError("parse_spin: '" + raw + "' is not a half-integer");
    return HalfInt(rounded);
}

} // namespace qwalk

#endif
