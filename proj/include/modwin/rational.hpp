#pragma once

#include <cstdint>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace modwin {

// Exact rational with int64 parts; intermediates go through __int128 and
// anything that does not fit back into int64 throws.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    static Rational parse(const std::string& s);
    std::string str() const;
    double to_double() const { return double(num_) / double(den_); }

    std::int64_t floor() const;
    std::int64_t ceil() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from128(__int128 n, __int128 d);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

}  // namespace modwin
