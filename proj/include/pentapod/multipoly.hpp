#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Terms are kept in descending graded reverse-lexicographic order with
// respect to the owning ring's variable order, with no zero coefficients
// stored. Every operation returns canonical form, so equality is
// representation equality.

#include "pentapod/rational.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pentapod {

constexpr std::size_t kMaxVars = 24;

using Exponents = std::array<uint16_t, kMaxVars>;

struct ExpHash {
    std::size_t operator()(const Exponents& e) const noexcept {
        uint64_t h = 1469598103934665603ull;
        const uint64_t* p = reinterpret_cast<const uint64_t*>(e.data());
        for (std::size_t i = 0; i < sizeof(Exponents) / 8; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

class Ring {
  public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > kMaxVars) throw std::invalid_argument("too many variables");
        for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
        if (index_.size() != names_.size()) throw std::invalid_argument("duplicate variable");
    }
    static std::shared_ptr<const Ring> make(std::vector<std::string> names) {
        return std::make_shared<const Ring>(std::move(names));
    }
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> find(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t at(const std::string& n) const {
        auto i = find(n);
        if (!i) throw std::out_of_range("unknown variable " + n);
        return *i;
    }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const Ring>;

struct Term {
    Exponents e{};
    uint32_t deg = 0;  // cached total degree
    Rational c;
};

inline uint32_t total_degree(const Exponents& e, std::size_t n) {
    uint32_t d = 0;
    for (std::size_t i = 0; i < n; ++i) d += e[i];
    return d;
}

// grevlex: higher total degree wins; on ties the term whose exponent vector
// has the *smaller* entry at the last position where they differ wins.
inline bool grevlex_less(const Term& a, const Term& b, std::size_t n) {
    if (a.deg != b.deg) return a.deg < b.deg;
    for (std::size_t i = n; i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    }
    return false;
}

class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(RingPtr ring) { return MultiPoly(std::move(ring)); }
    static MultiPoly constant(RingPtr ring, Rational c) {
        MultiPoly p(std::move(ring));
        if (sign(c) != 0) {
            Term t;
            t.c = std::move(c);
            p.terms_.push_back(std::move(t));
        }
        return p;
    }
    static MultiPoly variable(RingPtr ring, const std::string& name, uint16_t power = 1) {
        std::size_t i = ring->at(name);
        MultiPoly p(std::move(ring));
        if (power == 0) return constant(p.ring_, 1);
        Term t;
        t.e[i] = power;
        t.deg = power;
        t.c = 1;
        p.terms_.push_back(std::move(t));
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].deg == 0); }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("not a constant polynomial");
        return terms_[0].c;
    }

    uint32_t degree() const { return terms_.empty() ? 0 : terms_.front().deg; }
    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& t : terms_) d = std::max<int>(d, t.e[var]);
        return d;  // -1 for the zero polynomial
    }
    bool depends_on(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.e[var] != 0) return true;
        return false;
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero");
        return terms_.front();
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].e != b.terms_[i].e || a.terms_[i].c != b.terms_[i].c) return false;
        }
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

    MultiPoly& operator+=(const MultiPoly& o) { *this = *this + o; return *this; }
    MultiPoly& operator-=(const MultiPoly& o) { *this = *this - o; return *this; }
    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

    friend MultiPoly operator*(const MultiPoly& a, const Rational& s) {
        MultiPoly r = a;
        if (sign(s) == 0) {
            r.terms_.clear();
            return r;
        }
        for (auto& t : r.terms_) t.c *= s;
        return r;
    }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a) { return a * s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
        MultiPoly out(ring);
        if (a.terms_.empty() || b.terms_.empty()) return out;
        std::size_t n = ring->size();
        // monomial fast path
        if (a.terms_.size() == 1 || b.terms_.size() == 1) {
            const MultiPoly& mono = a.terms_.size() == 1 ? a : b;
            const MultiPoly& poly = a.terms_.size() == 1 ? b : a;
            const Term& m = mono.terms_[0];
            out.terms_.reserve(poly.terms_.size());
            for (const auto& t : poly.terms_) {
                Term r;
                for (std::size_t i = 0; i < n; ++i) r.e[i] = t.e[i] + m.e[i];
                r.deg = t.deg + m.deg;
                r.c = t.c * m.c;
                out.terms_.push_back(std::move(r));
            }
            std::sort(out.terms_.begin(), out.terms_.end(),
                      [n](const Term& x, const Term& y) { return grevlex_less(y, x, n); });
            return out;
        }
        std::unordered_map<Exponents, Rational, ExpHash> acc;
        acc.reserve(a.terms_.size() * 2 + b.terms_.size() * 2);
        mpq_t tmp;
        mpq_init(tmp);
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                Exponents e{};
                for (std::size_t i = 0; i < n; ++i) e[i] = ta.e[i] + tb.e[i];
                mpq_mul(tmp, ta.c.get_mpq_t(), tb.c.get_mpq_t());
                auto [it, inserted] = acc.try_emplace(e);
                if (inserted) {
                    mpq_set(it->second.get_mpq_t(), tmp);
                } else {
                    mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), tmp);
                }
            }
        }
        mpq_clear(tmp);
        out.terms_.reserve(acc.size());
        for (auto& [e, c] : acc) {
            if (sign(c) == 0) continue;
            Term t;
            t.e = e;
            t.deg = total_degree(e, n);
            t.c = std::move(c);
            out.terms_.push_back(std::move(t));
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [n](const Term& x, const Term& y) { return grevlex_less(y, x, n); });
        return out;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(ring_, 1);
        MultiPoly base = *this;
        while (k) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    // Construct from an unsorted, possibly duplicated term list.
    static MultiPoly from_terms(RingPtr ring, std::vector<Term> ts) {
        std::size_t n = ring->size();
        std::sort(ts.begin(), ts.end(),
                  [n](const Term& x, const Term& y) { return grevlex_less(y, x, n); });
        MultiPoly out(std::move(ring));
        for (auto& t : ts) {
            if (!out.terms_.empty() && out.terms_.back().e == t.e) {
                out.terms_.back().c += t.c;
            } else {
                out.terms_.push_back(std::move(t));
            }
        }
        out.terms_.erase(std::remove_if(out.terms_.begin(), out.terms_.end(),
                                        [](const Term& t) { return sign(t.c) == 0; }),
                         out.terms_.end());
        return out;
    }

    // Coefficient of var^k, a polynomial in the remaining variables.
    MultiPoly coeff_of(std::size_t var, uint16_t k) const {
        MultiPoly out(ring_);
        for (const auto& t : terms_) {
            if (t.e[var] == k) {
                Term r = t;
                r.e[var] = 0;
                r.deg -= k;
                out.terms_.push_back(std::move(r));
            }
        }
        std::size_t n = ring_->size();
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [n](const Term& x, const Term& y) { return grevlex_less(y, x, n); });
        return out;
    }

    // View as a univariate polynomial in `var`: dense coefficient list, low to high.
    std::vector<MultiPoly> coefficients_in(std::size_t var) const {
        int d = degree_in(var);
        std::vector<MultiPoly> cs;
        if (d < 0) return cs;
        cs.assign(static_cast<std::size_t>(d) + 1, MultiPoly(ring_));
        for (const auto& t : terms_) {
            Term r = t;
            uint16_t k = r.e[var];
            r.e[var] = 0;
            r.deg -= k;
            cs[k].terms_.push_back(std::move(r));
        }
        std::size_t n = ring_->size();
        for (auto& c : cs)
            std::sort(c.terms_.begin(), c.terms_.end(),
                      [n](const Term& x, const Term& y) { return grevlex_less(y, x, n); });
        return cs;
    }

    // Substitute a plain polynomial for one variable.
    MultiPoly substituted(std::size_t var, const MultiPoly& value) const {
        auto cs = coefficients_in(var);
        MultiPoly out(ring_);
        MultiPoly p = constant(ring_, 1);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (k) p = p * value;
            if (!cs[k].is_zero()) out += cs[k] * p;
        }
        return out;
    }

    Rational evaluate(const std::vector<Rational>& values) const {
        if (values.size() != ring_->size()) throw std::invalid_argument("evaluate arity");
        Rational acc = 0;
        for (const auto& t : terms_) {
            Rational v = t.c;
            for (std::size_t i = 0; i < values.size(); ++i) {
                for (uint16_t k = 0; k < t.e[i]; ++k) v *= values[i];
            }
            acc += v;
        }
        return acc;
    }

    double evaluate(const std::vector<double>& values) const {
        double acc = 0;
        for (const auto& t : terms_) {
            double v = t.c.get_d();
            for (std::size_t i = 0; i < values.size(); ++i) {
                double x = values[i];
                for (uint16_t k = 0; k < t.e[i]; ++k) v *= x;
            }
            acc += v;
        }
        return acc;
    }

    // Integer content (gcd of numerators / lcm of denominators); 0 for zero poly.
    Rational rational_content() const {
        if (terms_.empty()) return Rational(0);
        Integer g = 0, l = 1;
        for (const auto& t : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
        }
        Rational c;
        mpz_set(c.get_num_mpz_t(), g.get_mpz_t());
        mpz_set(c.get_den_mpz_t(), l.get_mpz_t());
        c.canonicalize();
        return c;
    }

    // Divide by rational content and normalize the leading coefficient to be
    // positive. Returns the applied factor f with *this == f * primitive().
    MultiPoly primitive_part(Rational* applied = nullptr) const {
        if (terms_.empty()) {
            if (applied) *applied = 1;
            return *this;
        }
        Rational c = rational_content();
        if (sign(terms_.front().c) < 0) c = -c;
        if (applied) *applied = c;
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.c /= c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.c;
            if (first) {
                if (sign(c) < 0) {
                    os << "-";
                    c = -c;
                }
                first = false;
            } else {
                os << (sign(c) < 0 ? " - " : " + ");
                if (sign(c) < 0) c = -c;
            }
            os << to_string(c);
            for (std::size_t i = 0; i < ring_->size(); ++i) {
                if (t.e[i] == 0) continue;
                os << "*" << ring_->name(i);
                if (t.e[i] > 1) os << "^" << t.e[i];
            }
        }
        return os.str();
    }

    static MultiPoly parse(RingPtr ring, const std::string& text);

  private:
    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
        std::size_t n = ring->size();
        MultiPoly out(ring);
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            bool take_a;
            if (i == a.terms_.size()) {
                take_a = false;
            } else if (j == b.terms_.size()) {
                take_a = true;
            } else if (a.terms_[i].e == b.terms_[j].e) {
                Term t = a.terms_[i];
                if (subtract)
                    t.c -= b.terms_[j].c;
                else
                    t.c += b.terms_[j].c;
                ++i;
                ++j;
                if (sign(t.c) != 0) out.terms_.push_back(std::move(t));
                continue;
            } else {
                take_a = grevlex_less(b.terms_[j], a.terms_[i], n);
            }
            if (take_a) {
                out.terms_.push_back(a.terms_[i++]);
            } else {
                Term t = b.terms_[j++];
                if (subtract) t.c = -t.c;
                out.terms_.push_back(std::move(t));
            }
        }
        return out;
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

inline MultiPoly MultiPoly::parse(RingPtr ring, const std::string& text) {
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    std::vector<Term> ts;
    skip_ws();
    if (text.substr(i) == "0") return MultiPoly::zero(ring);
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
    }
    while (i < text.size()) {
        skip_ws();
        // coefficient
        std::size_t start = i;
        while (i < text.size() && (isdigit(text[i]) || text[i] == '/')) ++i;
        if (start == i) throw std::invalid_argument("bad polynomial literal: coefficient expected");
        auto c = parse_rational(text.substr(start, i - start));
        if (!c) throw std::invalid_argument("bad coefficient in polynomial literal");
        Term t;
        t.c = neg ? Rational(-*c) : *c;
        while (i < text.size() && text[i] == '*') {
            ++i;
            std::size_t vstart = i;
            while (i < text.size() && (isalnum(text[i]) || text[i] == '_')) ++i;
            std::size_t vi = ring->at(text.substr(vstart, i - vstart));
            uint16_t pw = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::size_t pstart = i;
                while (i < text.size() && isdigit(text[i])) ++i;
                pw = static_cast<uint16_t>(std::stoi(text.substr(pstart, i - pstart)));
            }
            t.e[vi] += pw;
        }
        t.deg = total_degree(t.e, ring->size());
        ts.push_back(std::move(t));
        skip_ws();
        if (i == text.size()) break;
        if (text[i] == '+') {
            neg = false;
        } else if (text[i] == '-') {
            neg = true;
        } else {
            throw std::invalid_argument("bad polynomial literal: operator expected");
        }
        ++i;
        skip_ws();
    }
    return MultiPoly::from_terms(std::move(ring), std::move(ts));
}

}  // namespace pentapod
