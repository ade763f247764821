#include "aoisched/rational.hpp"

#include "aoisched/errors.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace aoisched {

__extension__ using Wide = __int128;

struct RationalAccess {
    static Rational make(std::int64_t n, std::int64_t d) noexcept {
        return Rational(n, d, Rational::Normalized{});
    }
};

namespace {

Wide wide_gcd(Wide a, Wide b) noexcept {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    constexpr Wide narrow = std::numeric_limits<std::uint64_t>::max();
    if (a <= narrow && b <= narrow)
        return static_cast<Wide>(std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational from_wide(Wide n, Wide d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Wide g = wide_gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational: 64-bit overflow");
    return RationalAccess::make(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

} // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    *this = from_wide(numerator, denominator);
}

std::int64_t Rational::floor() const noexcept {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const noexcept {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

Rational Rational::reciprocal() const {
    return from_wide(den_, num_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (den_ == rhs.den_) return *this = from_wide(Wide(num_) + rhs.num_, den_);
    std::int64_t g = std::gcd(den_, rhs.den_);
    Wide n = Wide(num_) * (rhs.den_ / g) + Wide(rhs.num_) * (den_ / g);
    Wide d = Wide(den_ / g) * rhs.den_;
    return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& rhs) {
    return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs) {
    return *this = from_wide(Wide(num_) * rhs.num_, Wide(den_) * rhs.den_);
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw std::domain_error("rational: division by zero");
    return *this = from_wide(Wide(num_) * rhs.den_, Wide(den_) * rhs.num_);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept {
    if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
    Wide a = Wide(lhs.num_) * rhs.den_;
    Wide b = Wide(rhs.num_) * lhs.den_;
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto fail = [&]() -> Rational { throw InvalidInput("not a rational number: '" + text + "'"); };
    if (text.empty()) return fail();
    std::size_t slash = text.find('/');
    std::size_t dot = text.find('.');
    try {
        if (slash != std::string::npos) {
            std::size_t used1 = 0;
            std::size_t used2 = 0;
            std::string lhs = text.substr(0, slash);
            std::string rhs = text.substr(slash + 1);
            std::int64_t n = std::stoll(lhs, &used1);
            std::int64_t d = std::stoll(rhs, &used2);
            if (used1 != lhs.size() || used2 != rhs.size() || d == 0) return fail();
            return Rational(n, d);
        }
        if (dot != std::string::npos) {
            std::string whole = text.substr(0, dot);
            std::string frac = text.substr(dot + 1);
            if (frac.empty() || frac.size() > 18) return fail();
            for (char c : frac)
                if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
            bool negative = !whole.empty() && whole[0] == '-';
            std::int64_t w = 0;
            if (!whole.empty() && whole != "-" && whole != "+") {
                std::size_t used = 0;
                w = std::stoll(whole, &used);
                if (used != whole.size()) return fail();
            }
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            Rational f(std::stoll(frac), scale);
            Rational r(w);
            return negative ? r - f : r + f;
        }
        std::size_t used = 0;
        std::int64_t n = std::stoll(text, &used);
        if (used != text.size()) return fail();
        return Rational(n);
    } catch (const std::logic_error&) {
        return fail();
    }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace aoisched
