#pragma once

// Exact rational scalars on top of GMP. mpq_class already maintains the
// canonical form we need (lowest terms, positive denominator, 0 == 0/1).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pentapod {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n, long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational pow(const Rational& q, unsigned long e) {
    Rational num, den;
    mpz_pow_ui(num.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_den_mpz_t(), q.get_den_mpz_t(), e);
    // numerator/denominator already coprime, so the powers are too
    Rational r;
    mpz_set(r.get_num_mpz_t(), num.get_num_mpz_t());
    mpz_set(r.get_den_mpz_t(), den.get_den_mpz_t());
    return r;
}

// Exact square root if the rational is a perfect square.
inline std::optional<Rational> sqrt_exact(const Rational& q) {
    if (sign(q) < 0) return std::nullopt;
    Integer sn, sd;
    if (!mpz_perfect_square_p(q.get_num_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), q.get_den_mpz_t());
    Rational r;
    mpz_set(r.get_num_mpz_t(), sn.get_mpz_t());
    mpz_set(r.get_den_mpz_t(), sd.get_mpz_t());
    return r;
}

// Strict design-file grammar: -?[0-9]+(/[1-9][0-9]*)?
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    if (s[i] == '-') ++i;
    std::size_t num_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == num_begin) return std::nullopt;
    std::string num = s.substr(0, i);
    std::string den = "1";
    if (i < s.size()) {
        if (s[i] != '/') return std::nullopt;
        ++i;
        if (i >= s.size() || s[i] < '1' || s[i] > '9') return std::nullopt;
        std::size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i != s.size()) return std::nullopt;
        den = s.substr(den_begin);
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

}  // namespace pentapod
