#include <coning/rational.hpp>

#include <numeric>
#include <stdexcept>

namespace coning {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        den = 1;
        return;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            return Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            return Rational(std::stoll(text), 1);
        }
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 15) throw std::invalid_argument("too many decimal places");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
        const std::int64_t part = frac.empty() ? 0 : std::stoll(frac);
        const bool neg = !text.empty() && text[0] == '-';
        const std::int64_t mag = (whole < 0 ? -whole : whole) * den + part;
        return Rational(neg ? -mag : mag, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rational out of range: '" + text + "'");
    }
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace coning
