#include "mdl/core/rational.hpp"

#include <stdexcept>

namespace mdl {

ExactRational::ExactRational(long num, long den) {
    if (den == 0) throw std::domain_error("ExactRational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

ExactRational ExactRational::dyadic(std::size_t n) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
    return ExactRational(mpq_class(mpz_class(1), den));
}

ExactRational ExactRational::pow2(std::size_t n) {
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, n);
    return ExactRational(mpq_class(num, mpz_class(1)));
}

ExactRational ExactRational::scaled(std::uint64_t count, std::size_t shift) {
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, -1, sizeof(count), 0, 0, &count);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, shift);
    return ExactRational(mpq_class(num, den));
}

ExactRational ExactRational::parse(std::string_view text) {
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den = slash == std::string::npos ? mpz_class(1) : mpz_class(s.substr(slash + 1), 10);
        if (den == 0) throw std::invalid_argument("zero denominator");
        return ExactRational(mpq_class(num, den));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

std::optional<std::size_t> ExactRational::dyadic_exponent() const {
    if (q_.get_num() != 1) return std::nullopt;
    const mpz_class& den = q_.get_den();
    const auto bits = mpz_sizeinbase(den.get_mpz_t(), 2);
    if (mpz_scan1(den.get_mpz_t(), 0) != bits - 1) return std::nullopt;
    return bits - 1;
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
    if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
    q_ /= o.q_;
    return *this;
}

ExactRational abs(const ExactRational& x) { return x.sign() < 0 ? -x : x; }

ExactRational min(const ExactRational& a, const ExactRational& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExactRational& x) { return os << x.str(); }

}  // namespace mdl
