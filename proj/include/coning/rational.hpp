#pragma once

#include <cstdint>
#include <string>

namespace coning {

/// Exact rational with positive denominator, always stored reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    /// Accepts "3/4", "1", "0.25".
    static Rational parse(const std::string& text);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace coning
