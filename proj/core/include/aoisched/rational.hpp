#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace aoisched {

/// Exact fraction with 64-bit numerator and positive 64-bit denominator,
/// always kept in lowest terms. Intermediate products go through 128-bit
/// arithmetic; a result that does not fit throws std::overflow_error.
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t value) noexcept : num_(value) {} // NOLINT(implicit)
    Rational(std::int64_t numerator, std::int64_t denominator);

    [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

    [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] std::int64_t floor() const noexcept;
    [[nodiscard]] std::int64_t ceil() const noexcept;
    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    [[nodiscard]] Rational reciprocal() const;

    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string str() const;
    /// Accepts "p", "p/q" and finite decimals such as "2.5".
    static Rational parse(const std::string& text);

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& r) { return Rational(-r.num_, r.den_, Normalized{}); }

    friend constexpr bool operator==(const Rational&, const Rational&) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept;

private:
    struct Normalized {};
    constexpr Rational(std::int64_t n, std::int64_t d, Normalized) noexcept : num_(n), den_(d) {}
    friend struct RationalAccess;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace aoisched
