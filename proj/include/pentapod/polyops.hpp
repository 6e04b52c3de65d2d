#pragma once

// Operations on MultiPoly beyond ring arithmetic: rational-function
// substitution, exact division, exact square roots, resultants, and
// coefficient collection.

#include "pentapod/multipoly.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pentapod {

struct RationalFunction {
    MultiPoly num;
    MultiPoly den;
};

// Substitute bindings var -> num/den simultaneously; returns the result as a
// single (numerator, denominator) pair with the denominator cleared out.
// Denominators must not be identically zero.
inline RationalFunction substitute(const MultiPoly& p,
                                   const std::map<std::size_t, RationalFunction>& bindings) {
    RingPtr ring = p.ring();
    for (const auto& [v, rf] : bindings) {
        (void)v;
        if (rf.den.is_zero()) throw std::invalid_argument("substitute: zero denominator");
    }
    MultiPoly num = p;
    MultiPoly den = MultiPoly::constant(ring, 1);
    for (const auto& [var, rf] : bindings) {
        int d = num.degree_in(var);
        if (d <= 0) continue;
        auto cs = num.coefficients_in(var);
        // num = sum_k cs[k] * n^k * den_sub^(d-k), den *= den_sub^d
        MultiPoly acc = MultiPoly::zero(ring);
        std::vector<MultiPoly> npow(static_cast<std::size_t>(d) + 1, MultiPoly::constant(ring, 1));
        std::vector<MultiPoly> dpow = npow;
        for (int k = 1; k <= d; ++k) {
            npow[k] = npow[k - 1] * rf.num;
            dpow[k] = dpow[k - 1] * rf.den;
        }
        for (int k = 0; k <= d; ++k) {
            if (cs[k].is_zero()) continue;
            acc += cs[k] * npow[k] * dpow[d - k];
        }
        num = acc;
        den = den * dpow[d];
    }
    return {std::move(num), std::move(den)};
}

inline RationalFunction substitute(const MultiPoly& p,
                                   const std::map<std::string, RationalFunction>& by_name) {
    std::map<std::size_t, RationalFunction> b;
    for (const auto& [n, rf] : by_name) b.emplace(p.ring()->at(n), rf);
    return substitute(p, b);
}

// Exact polynomial division: returns q with p == d*q, or nullopt.
inline std::optional<MultiPoly> try_exact_divide(const MultiPoly& p, const MultiPoly& d) {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    RingPtr ring = p.ring() ? p.ring() : d.ring();
    std::size_t n = ring->size();
    if (p.is_zero()) return MultiPoly::zero(ring);
    const Term& dl = d.leading_term();
    MultiPoly rem = p;
    std::vector<Term> qts;
    while (!rem.is_zero()) {
        const Term& rl = rem.leading_term();
        Term qt;
        bool ok = rl.deg >= dl.deg;
        for (std::size_t i = 0; ok && i < n; ++i) {
            if (rl.e[i] < dl.e[i]) ok = false;
            qt.e[i] = rl.e[i] - dl.e[i];
        }
        if (!ok) return std::nullopt;
        qt.deg = rl.deg - dl.deg;
        qt.c = rl.c / dl.c;
        MultiPoly mono(ring);
        mono = MultiPoly::from_terms(ring, {qt});
        rem = rem - mono * d;
        qts.push_back(std::move(qt));
    }
    return MultiPoly::from_terms(ring, std::move(qts));
}

// Divide by `d` as many times as exactly possible, up to `cap` times.
// Returns the quotient and reports the applied multiplicity.
inline MultiPoly divide_out(MultiPoly p, const MultiPoly& d, int cap, int* applied = nullptr) {
    int k = 0;
    while (k < cap) {
        auto q = try_exact_divide(p, d);
        if (!q) break;
        p = std::move(*q);
        ++k;
    }
    if (applied) *applied = k;
    return p;
}

// Exact square root: K with p == K*K and positive leading coefficient.
inline std::optional<MultiPoly> try_square_root(const MultiPoly& p) {
    if (p.is_zero()) return std::nullopt;
    RingPtr ring = p.ring();
    std::size_t n = ring->size();
    const Term& lt = p.leading_term();
    if (lt.deg % 2 != 0 || sign(lt.c) < 0) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        if (lt.e[i] % 2 != 0) return std::nullopt;
    }
    auto lc = sqrt_exact(lt.c);
    if (!lc) return std::nullopt;
    Term rt;
    for (std::size_t i = 0; i < n; ++i) rt.e[i] = lt.e[i] / 2;
    rt.deg = lt.deg / 2;
    rt.c = *lc;
    const Term dl = [&] {
        Term t = rt;
        t.c = rt.c * 2;
        return t;
    }();
    MultiPoly root = MultiPoly::from_terms(ring, {rt});
    MultiPoly rem = p - root * root;
    // Peel terms from the top: next root term = lt(rem) / (2*lt(root)).
    std::size_t guard = 4 * p.term_count() + 16;
    while (!rem.is_zero()) {
        if (guard-- == 0) return std::nullopt;
        const Term& rl = rem.leading_term();
        Term qt;
        bool ok = rl.deg >= dl.deg;
        for (std::size_t i = 0; ok && i < n; ++i) {
            if (rl.e[i] < dl.e[i]) ok = false;
            qt.e[i] = rl.e[i] - dl.e[i];
        }
        if (!ok) return std::nullopt;
        qt.deg = rl.deg - dl.deg;
        qt.c = rl.c / dl.c;
        MultiPoly q1 = MultiPoly::from_terms(ring, {qt});
        rem = rem - root * q1 * Rational(2) - q1 * q1;
        root = root + q1;
    }
    if (root * root != p) return std::nullopt;
    return root;
}

// Collect p as a polynomial in `vars`: map from exponent tuple (over vars,
// in the given order) to coefficient polynomial in the remaining symbols.
inline std::map<std::vector<uint16_t>, MultiPoly> collect_coefficients(
    const MultiPoly& p, const std::vector<std::size_t>& vars) {
    std::map<std::vector<uint16_t>, std::vector<Term>> buckets;
    std::size_t n = p.ring()->size();
    for (const auto& t : p.terms()) {
        std::vector<uint16_t> key(vars.size());
        Term r = t;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            key[k] = t.e[vars[k]];
            r.e[vars[k]] = 0;
            r.deg -= key[k];
        }
        buckets[key].push_back(std::move(r));
    }
    (void)n;
    std::map<std::vector<uint16_t>, MultiPoly> out;
    for (auto& [k, ts] : buckets) out.emplace(k, MultiPoly::from_terms(p.ring(), std::move(ts)));
    return out;
}

// ---------------------------------------------------------------------------
// Resultants.
// ---------------------------------------------------------------------------

// Fraction-free Bareiss determinant of a square matrix of polynomials.
inline MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, RingPtr ring) {
    std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(ring, 1);
    MultiPoly prev = MultiPoly::constant(ring, 1);
    int sign_flips = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return MultiPoly::zero(ring);
            std::swap(m[k], m[r]);
            ++sign_flips;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = try_exact_divide(num, prev);
                if (!q) throw std::logic_error("bareiss: inexact division");
                m[i][j] = std::move(*q);
            }
            m[i][k] = MultiPoly::zero(ring);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    if (sign_flips % 2) det = -det;
    return det;
}

namespace detail {

// res(f, g) via pseudo-remainder reduction when f is quadratic in var.
// f = a x^2 + b x + c. Exact for any g. Result matches the Sylvester
// determinant with f's coefficient rows first.
inline MultiPoly resultant_quadratic(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    RingPtr ring = f.ring();
    auto fc = f.coefficients_in(var);
    const MultiPoly& a = fc[2];
    const MultiPoly& b = fc[1];
    const MultiPoly& c = fc[0];
    // pseudo-reduce g mod f: a^k * g = q f + (r1 x + r0)
    auto gc = g.coefficients_in(var);
    int m = static_cast<int>(gc.size()) - 1;
    int k = 0;
    while (m >= 2) {
        // multiply all by a, then subtract lc * x^(m-2) * f
        MultiPoly lc = gc[m];
        for (int i = 0; i <= m; ++i) gc[i] = gc[i] * a;
        gc[m] = MultiPoly::zero(ring);
        gc[m - 1] -= lc * b;
        gc[m - 2] -= lc * c;
        ++k;
        while (m >= 0 && gc[m].is_zero()) --m;
    }
    MultiPoly r1 = (m >= 1) ? gc[1] : MultiPoly::zero(ring);
    MultiPoly r0 = (m >= 0) ? gc[0] : MultiPoly::zero(ring);
    // res(f, a^k g) = a^(2k) res(f,g) and res(f, qf + r):
    //   deg r = 1: res = a^(deg g - 1) * (a r0^2 - b r0 r1 + c r1^2) / a
    //   deg r = 0: res = a^(deg g) * r0^2 / ... handled via same formula with r1=0.
    int deg_g = g.degree_in(var);
    // res(f, r) for r = r1 x + r0 (deg 1): a*r0^2 - b*r0*r1 + c*r1^2
    MultiPoly res_fr = a * r0 * r0 - b * r0 * r1 + c * r1 * r1;
    int drop;  // deg(a^k g) - deg r
    if (!r1.is_zero())
        drop = deg_g - 1;
    else {
        // r constant: res(f, r0) = r0^2; fold through the same expression:
        res_fr = r0 * r0;
        drop = deg_g;
    }
    // res(f, a^k g) = a^drop * res(f, r)  and  = a^(2k) * res(f, g)
    MultiPoly num = res_fr;
    int apow = drop - 2 * k;
    if (apow >= 0) {
        num = num * a.pow(static_cast<unsigned>(apow));
        return num;
    }
    MultiPoly den = a.pow(static_cast<unsigned>(-apow));
    auto q = try_exact_divide(num, den);
    if (!q) throw std::logic_error("quadratic resultant: inexact leading-coefficient division");
    return *q;
}

}  // namespace detail

// Sylvester resultant of p and q with respect to var; sign convention is the
// determinant of the Sylvester matrix with p's coefficient rows first.
// Throws if either argument has degree <= 0 in var (degree-drop guard: the
// *collected* leading coefficient must be a nonzero polynomial).
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
    RingPtr ring = p.ring() ? p.ring() : q.ring();
    int dp = p.degree_in(var);
    int dq = q.degree_in(var);
    if (dp <= 0 || dq <= 0)
        throw std::invalid_argument("resultant: positive degree required in eliminated variable");
    // fast path: one argument quadratic ((-1)^{dp*dq} is +1 when a degree is 2)
    if (dp == 2) return detail::resultant_quadratic(p, q, var);
    if (dq == 2) return detail::resultant_quadratic(q, p, var);
    auto pc = p.coefficients_in(var);
    auto qc = q.coefficients_in(var);
    std::size_t n = static_cast<std::size_t>(dp + dq);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly::zero(ring)));
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k <= dp; ++k) m[r][r + dp - k] = pc[k];
    for (int r = 0; r < dp; ++r)
        for (int k = 0; k <= dq; ++k) m[dq + r][r + dq - k] = qc[k];
    return bareiss_determinant(std::move(m), ring);
}

inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
    return resultant(p, q, p.ring()->at(var));
}

// Resultant of two polynomials supported on exactly three variables
// (var_x, var_y, var_elim), both homogeneous, eliminating var_elim, computed
// by specialization at rational nodes and Lagrange interpolation. Falls back
// to the Sylvester/Bareiss path when the preconditions fail.
inline MultiPoly resultant_trivariate_homogeneous(const MultiPoly& p, const MultiPoly& q,
                                                  std::size_t var_x, std::size_t var_y,
                                                  std::size_t var_elim) {
    RingPtr ring = p.ring();
    auto supported = [&](const MultiPoly& f) {
        for (const auto& t : f.terms()) {
            uint32_t other = 0;
            for (std::size_t v = 0; v < ring->size(); ++v)
                if (v != var_x && v != var_y && v != var_elim) other += t.e[v];
            if (other) return false;
        }
        return !f.is_zero() && f.terms().front().deg == f.terms().back().deg;
    };
    int da = p.degree_in(var_elim), db = q.degree_in(var_elim);
    if (!supported(p) || !supported(q) || da < 1 || db < 1)
        return resultant(p, q, var_elim);
    int a = static_cast<int>(p.degree()), b = static_cast<int>(q.degree());
    int target_deg = a * db + da * b - da * db;  // homogeneous degree of the resultant
    // evaluate at var_x = t, var_y = 1
    auto eval_coeffs = [&](const MultiPoly& f, const Rational& t) {
        std::vector<Rational> c(static_cast<std::size_t>(f.degree_in(var_elim)) + 1, Rational(0));
        for (const auto& tm : f.terms()) {
            Rational v = tm.c;
            for (uint16_t k = 0; k < tm.e[var_x]; ++k) v *= t;
            c[tm.e[var_elim]] += v;
        }
        return c;
    };
    std::vector<Rational> nodes, values;
    long cand = 0;
    while (static_cast<int>(nodes.size()) <= target_deg) {
        Rational t(cand);
        cand = cand > 0 ? -cand : -cand + 1;
        auto pc = eval_coeffs(p, t);
        auto qc = eval_coeffs(q, t);
        if (sign(pc[da]) == 0 || sign(qc[db]) == 0) continue;  // degree drop: skip node
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(da + db),
                                             std::vector<Rational>(da + db, Rational(0)));
        for (int r = 0; r < db; ++r)
            for (int k = 0; k <= da; ++k) m[r][r + da - k] = pc[k];
        for (int r = 0; r < da; ++r)
            for (int k = 0; k <= db; ++k) m[db + r][r + db - k] = qc[k];
        // numeric fraction-free determinant
        Rational det = 1;
        std::size_t nn = m.size();
        bool zero = false;
        for (std::size_t c = 0; c < nn && !zero; ++c) {
            std::size_t piv = c;
            while (piv < nn && sign(m[piv][c]) == 0) ++piv;
            if (piv == nn) {
                zero = true;
                break;
            }
            if (piv != c) {
                std::swap(m[c], m[piv]);
                det = -det;
            }
            det *= m[c][c];
            for (std::size_t i = c + 1; i < nn; ++i) {
                if (sign(m[i][c]) == 0) continue;
                Rational f = m[i][c] / m[c][c];
                for (std::size_t j = c; j < nn; ++j) m[i][j] -= f * m[c][j];
            }
        }
        nodes.push_back(t);
        values.push_back(zero ? Rational(0) : det);
    }
    // Lagrange interpolation (Newton form) of degree <= target_deg
    std::size_t n = nodes.size();
    std::vector<Rational> divided(values);
    for (std::size_t lvl = 1; lvl < n; ++lvl)
        for (std::size_t i = n - 1; i >= lvl; --i)
            divided[i] = (divided[i] - divided[i - 1]) / (nodes[i] - nodes[i - lvl]);
    // expand Newton form into monomial coefficients
    std::vector<Rational> coeff(n, Rational(0));
    std::vector<Rational> basis{Rational(1)};  // product (t - nodes[0])...(t - nodes[k-1])
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) coeff[j] += divided[k] * basis[j];
        if (k + 1 < n) {
            basis.push_back(Rational(0));
            for (std::size_t j = basis.size() - 1; j > 0; --j)
                basis[j] = basis[j - 1] - nodes[k] * basis[j];
            basis[0] = -nodes[k] * basis[0];
        }
    }
    std::vector<Term> ts;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (sign(coeff[k]) == 0) continue;
        Term t;
        t.e[var_x] = static_cast<uint16_t>(k);
        t.e[var_y] = static_cast<uint16_t>(target_deg - static_cast<int>(k));
        t.deg = static_cast<uint32_t>(target_deg);
        t.c = coeff[k];
        ts.push_back(std::move(t));
    }
    return MultiPoly::from_terms(ring, std::move(ts));
}

// Strip monomial content in the given variable (divide by var^min_exponent);
// returns the stripped polynomial and the removed exponent.
inline MultiPoly strip_variable(const MultiPoly& p, std::size_t var, int* removed = nullptr) {
    if (p.is_zero()) {
        if (removed) *removed = 0;
        return p;
    }
    uint16_t m = UINT16_MAX;
    for (const auto& t : p.terms()) m = std::min(m, t.e[var]);
    if (removed) *removed = m;
    if (m == 0) return p;
    std::vector<Term> ts(p.terms().begin(), p.terms().end());
    for (auto& t : ts) {
        t.e[var] -= m;
        t.deg -= m;
    }
    return MultiPoly::from_terms(p.ring(), std::move(ts));
}

}  // namespace pentapod
