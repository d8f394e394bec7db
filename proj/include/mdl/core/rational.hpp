#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace mdl {

/// Exact arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Every probability, loss and 2^-n mass in the library is one
/// of these; there is no floating-point path.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    ExactRational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
    /// Throws std::domain_error on a zero denominator.
    ExactRational(long num, long den);

    /// 2^-n.
    static ExactRational dyadic(std::size_t n);
    /// 2^n.
    static ExactRational pow2(std::size_t n);
    /// count / 2^shift.
    static ExactRational scaled(std::uint64_t count, std::size_t shift);
    /// Parses "p/q", "p" (throws std::invalid_argument).
    static ExactRational parse(std::string_view text);

    std::string numerator() const { return q_.get_num().get_str(); }
    std::string denominator() const { return q_.get_den().get_str(); }
    /// "num/den" in lowest terms; integers render with denominator 1.
    /// "n/d", or just "n" for integers.
    std::string str() const { return denominator() == "1" ? numerator() : numerator() + "/" + denominator(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }

    /// j such that *this == 2^-j with j >= 0, if any.
    std::optional<std::size_t> dyadic_exponent() const;

    /// Approximate value, for human-readable reports only.
    double to_double() const { return q_.get_d(); }

    ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
    /// Throws std::domain_error on division by zero.
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.q_)); }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return q_; }

private:
    explicit ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    mpq_class q_;
};

ExactRational abs(const ExactRational& x);
ExactRational min(const ExactRational& a, const ExactRational& b);

std::ostream& operator<<(std::ostream& os, const ExactRational& x);

}  // namespace mdl
