#pragma once

// Symbolic building blocks for the bond computations: sphere conditions with
// polynomial anchor coordinates, fraction-free linear elimination of the f
// variables, numerator normalization, and reductions against quadrics.

#include "pentapod/multipoly.hpp"
#include "pentapod/polyops.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pentapod::elim {

using pentapod::MultiPoly;
using pentapod::Rational;
using pentapod::RingPtr;

struct Vars {
    std::size_t e0, e1, e2, e3, f0, f1, f2, f3;
};

inline Vars study_vars(const RingPtr& ring) {
    return {ring->at("e0"), ring->at("e1"), ring->at("e2"), ring->at("e3"),
            ring->at("f0"), ring->at("f1"), ring->at("f2"), ring->at("f3")};
}

inline MultiPoly var(const RingPtr& ring, const std::string& n) { return MultiPoly::variable(ring, n); }

inline MultiPoly norm_poly(const RingPtr& ring) {
    auto e0 = var(ring, "e0"), e1 = var(ring, "e1"), e2 = var(ring, "e2"), e3 = var(ring, "e3");
    return e0 * e0 + e1 * e1 + e2 * e2 + e3 * e3;
}

inline MultiPoly psi_poly(const RingPtr& ring) {
    return var(ring, "e0") * var(ring, "f0") + var(ring, "e1") * var(ring, "f1") +
           var(ring, "e2") * var(ring, "f2") + var(ring, "e3") * var(ring, "f3");
}

// Husty's sphere condition with polynomial anchor coordinates and radius.
inline MultiPoly lambda_poly(const RingPtr& ring, const std::array<MultiPoly, 3>& m,
                             const std::array<MultiPoly, 3>& M, const MultiPoly& r2) {
    auto e0 = var(ring, "e0"), e1 = var(ring, "e1"), e2 = var(ring, "e2"), e3 = var(ring, "e3");
    auto f0 = var(ring, "f0"), f1 = var(ring, "f1"), f2 = var(ring, "f2"), f3 = var(ring, "f3");
    const MultiPoly &a = m[0], &b = m[1], &c = m[2];
    const MultiPoly &A = M[0], &B = M[1], &C = M[2];
    MultiPoly N = norm_poly(ring);
    Rational two(2), four(4);
    MultiPoly out = (a * a + b * b + c * c + A * A + B * B + C * C - r2) * N;
    out -= two * (a * A + b * B + c * C) * e0 * e0;
    out -= two * (a * A - b * B - c * C) * e1 * e1;
    out += two * (a * A - b * B + c * C) * e2 * e2;
    out += two * (a * A + b * B - c * C) * e3 * e3;
    out += four * (c * B - b * C) * e0 * e1;
    out -= four * (c * A - a * C) * e0 * e2;
    out += four * (b * A - a * B) * e0 * e3;
    out -= four * (b * A + a * B) * e1 * e2;
    out -= four * (c * A + a * C) * e1 * e3;
    out -= four * (c * B + b * C) * e2 * e3;
    out += four * (a - A) * (e0 * f1 - e1 * f0);
    out += four * (b - B) * (e0 * f2 - e2 * f0);
    out += four * (c - C) * (e0 * f3 - e3 * f0);
    out += four * (a + A) * (e3 * f2 - e2 * f3);
    out += four * (b + B) * (e1 * f3 - e3 * f1);
    out += four * (c + C) * (e2 * f1 - e1 * f2);
    out += four * (f0 * f0 + f1 * f1 + f2 * f2 + f3 * f3);
    return out;
}

// Split an f-linear equation into coefficient row (over the chosen f
// variables) and the f-free remainder. Throws if other f variables occur.
inline std::pair<std::vector<MultiPoly>, MultiPoly> linear_row(const MultiPoly& eq,
                                                               const std::vector<std::size_t>& fvars) {
    RingPtr ring = eq.ring();
    std::vector<std::vector<pentapod::Term>> coeff(fvars.size());
    std::vector<pentapod::Term> rest;
    for (const auto& t : eq.terms()) {
        bool placed = false;
        for (std::size_t k = 0; k < fvars.size(); ++k) {
            if (t.e[fvars[k]] == 1) {
                pentapod::Term r = t;
                r.e[fvars[k]] = 0;
                r.deg -= 1;
                coeff[k].push_back(std::move(r));
                placed = true;
                break;
            } else if (t.e[fvars[k]] > 1) {
                throw std::invalid_argument("linear_row: equation not linear in chosen variable");
            }
        }
        if (!placed) rest.push_back(t);
    }
    std::vector<MultiPoly> row;
    for (auto& ts : coeff) row.push_back(MultiPoly::from_terms(ring, std::move(ts)));
    return {std::move(row), MultiPoly::from_terms(ring, std::move(rest))};
}

// Cramer solution of k f-linear equations for k f-variables.
struct LinearSolution {
    std::vector<std::size_t> fvars;
    std::vector<MultiPoly> numerators;  // f_k = numerators[k] / det
    MultiPoly det;
};

inline LinearSolution solve_linear(const std::vector<MultiPoly>& eqs,
                                   const std::vector<std::size_t>& fvars) {
    if (eqs.size() != fvars.size()) throw std::invalid_argument("solve_linear: shape mismatch");
    RingPtr ring = eqs.front().ring();
    std::size_t k = eqs.size();
    std::vector<std::vector<MultiPoly>> mat;
    std::vector<MultiPoly> rhs;
    for (const auto& eq : eqs) {
        auto [row, rest] = linear_row(eq, fvars);
        mat.push_back(std::move(row));
        rhs.push_back(-rest);
    }
    LinearSolution sol;
    sol.fvars = fvars;
    sol.det = pentapod::bareiss_determinant(mat, ring);
    if (sol.det.is_zero())
        throw std::domain_error("solve_linear: pivot determinant identically zero");
    for (std::size_t j = 0; j < k; ++j) {
        auto mj = mat;
        for (std::size_t i = 0; i < k; ++i) mj[i][j] = rhs[i];
        sol.numerators.push_back(pentapod::bareiss_determinant(std::move(mj), ring));
    }
    return sol;
}

// Substitute the solution into a target of f-degree <= 2 (in the solved
// variables), clearing det resp. det^2. Result is the raw numerator.
inline MultiPoly substitute_solution(const MultiPoly& target, const LinearSolution& sol) {
    RingPtr ring = target.ring();
    int fdeg = 0;
    for (const auto& t : target.terms()) {
        int d = 0;
        for (std::size_t v : sol.fvars) d += t.e[v];
        fdeg = std::max(fdeg, d);
    }
    if (fdeg > 2) throw std::invalid_argument("substitute_solution: f-degree too high");
    MultiPoly out = MultiPoly::zero(ring);
    for (const auto& t : target.terms()) {
        pentapod::Term base = t;
        int d = 0;
        std::vector<std::size_t> which;
        for (std::size_t k = 0; k < sol.fvars.size(); ++k) {
            std::size_t v = sol.fvars[k];
            for (uint16_t c = 0; c < t.e[v]; ++c) which.push_back(k);
            d += t.e[v];
            base.deg -= t.e[v];
            base.e[v] = 0;
        }
        MultiPoly piece = MultiPoly::from_terms(ring, {base});
        for (std::size_t k : which) piece = piece * sol.numerators[k];
        for (int c = 0; c < fdeg - d; ++c) piece = piece * sol.det;
        out += piece;
    }
    return out;
}

// Cancel the known factors of the pivot determinant out of a raw numerator
// (each up to its multiplicity in det^power), then strip rational content and
// normalize the sign of the leading coefficient to be positive.
struct CancelReport {
    std::vector<int> applied;  // multiplicity removed per factor
    Rational content = 1;      // removed rational content (signed)
};

inline MultiPoly normalize_numerator(MultiPoly raw,
                                     const std::vector<std::pair<MultiPoly, int>>& det_factors,
                                     CancelReport* report = nullptr) {
    CancelReport rep;
    for (const auto& [f, cap] : det_factors) {
        int k = 0;
        raw = pentapod::divide_out(std::move(raw), f, cap, &k);
        rep.applied.push_back(k);
    }
    MultiPoly out = raw.primitive_part(&rep.content);
    if (report) *report = rep;
    return out;
}

// Reduce G modulo a monic-in-var quadric var^2 + s (no var term), returning
// alpha, beta with G === alpha*var + beta, and the exact resultant
// res(G, var^2+s) = beta^2 + s*alpha^2.
struct ModQuadric {
    MultiPoly alpha, beta, resultant;
};

inline ModQuadric reduce_mod_norm(const MultiPoly& G, const MultiPoly& quad, std::size_t var) {
    RingPtr ring = G.ring();
    auto qc = quad.coefficients_in(var);
    if (qc.size() != 3 || !qc[2].is_constant() || qc[2].constant_value() != 1 || !qc[1].is_zero())
        throw std::invalid_argument("reduce_mod_norm: expected monic var^2 + s");
    MultiPoly s = qc[0];
    auto cs = G.coefficients_in(var);
    // Horner-style from the top: maintain (alpha, beta) of the reduction.
    MultiPoly alpha = MultiPoly::zero(ring);
    MultiPoly beta = MultiPoly::zero(ring);
    for (std::size_t k = cs.size(); k-- > 0;) {
        // multiply current (alpha*var + beta) by var:  alpha*var^2 + beta*var
        //   = beta*var - s*alpha, then add coefficient cs[k]
        MultiPoly na = beta;
        MultiPoly nb = -(s * alpha);
        alpha = std::move(na);
        beta = std::move(nb) + cs[k];
    }
    ModQuadric out;
    out.resultant = beta * beta + s * alpha * alpha;
    out.alpha = std::move(alpha);
    out.beta = std::move(beta);
    return out;
}

// Split even/odd powers of `var`, mapping var^2 -> bar x (a separate ring
// variable). p == even(bar) + var*odd(bar) with bar := var^2.
inline std::pair<MultiPoly, MultiPoly> parity_split(const MultiPoly& p, std::size_t var,
                                                    std::size_t barvar) {
    std::vector<pentapod::Term> ev, od;
    for (const auto& t : p.terms()) {
        pentapod::Term r = t;
        uint16_t k = r.e[var];
        r.e[var] = 0;
        r.deg -= k;
        if (k % 2 == 0) {
            r.e[barvar] += k / 2;
            r.deg += k / 2;
            ev.push_back(std::move(r));
        } else {
            r.e[barvar] += (k - 1) / 2;
            r.deg += (k - 1) / 2;
            od.push_back(std::move(r));
        }
    }
    return {MultiPoly::from_terms(p.ring(), std::move(ev)),
            MultiPoly::from_terms(p.ring(), std::move(od))};
}

// var^2 -> barvar for polynomials with only even powers of var.
inline MultiPoly bar_substitute(const MultiPoly& p, std::size_t var, std::size_t barvar) {
    auto [ev, od] = parity_split(p, var, barvar);
    if (!od.is_zero()) throw std::invalid_argument("bar_substitute: odd powers present");
    return ev;
}

// Pseudo-reduction of P modulo H = h2*x^2 + h1*x + h0 (x = var):
// h2^power * P === r1*x + r0 (mod H).
struct PseudoReduced {
    MultiPoly r1, r0;
    int power = 0;
};

inline PseudoReduced reduce_mod_quadratic(const MultiPoly& P, const MultiPoly& h2,
                                          const MultiPoly& h1, const MultiPoly& h0,
                                          std::size_t var) {
    RingPtr ring = P.ring();
    auto cs = P.coefficients_in(var);
    int m = static_cast<int>(cs.size()) - 1;
    int power = 0;
    while (m >= 2) {
        MultiPoly lc = cs[m];
        if (lc.is_zero()) {
            --m;
            continue;
        }
        for (int i = 0; i < m; ++i) cs[i] = cs[i] * h2;
        cs[m - 1] -= lc * h1;
        cs[m - 2] -= lc * h0;
        cs[m] = MultiPoly::zero(ring);
        ++power;
        --m;
    }
    PseudoReduced out;
    out.r1 = cs.size() > 1 ? cs[1] : MultiPoly::zero(ring);
    out.r0 = cs.size() > 0 ? cs[0] : MultiPoly::zero(ring);
    out.power = power;
    return out;
}

// res(H, P) for H = h2 x^2 + h1 x + h0 via pseudo-reduction; exact division
// by the accumulated h2 powers. Matches the Sylvester convention (H first).
inline MultiPoly resultant_vs_quadratic(const MultiPoly& P, const MultiPoly& h2,
                                        const MultiPoly& h1, const MultiPoly& h0,
                                        std::size_t var) {
    int degP = P.degree_in(var);
    if (degP < 1) throw std::invalid_argument("resultant_vs_quadratic: target constant in var");
    auto red = reduce_mod_quadratic(P, h2, h1, h0, var);
    MultiPoly res_hr;
    int drop;
    if (!red.r1.is_zero()) {
        res_hr = h2 * red.r0 * red.r0 - h1 * red.r0 * red.r1 + h0 * red.r1 * red.r1;
        drop = degP - 1;
    } else {
        res_hr = red.r0 * red.r0;
        drop = degP;
    }
    int apow = drop - 2 * red.power;
    if (apow >= 0) return res_hr * h2.pow(static_cast<unsigned>(apow));
    auto q = pentapod::try_exact_divide(res_hr, h2.pow(static_cast<unsigned>(-apow)));
    if (!q) throw std::logic_error("resultant_vs_quadratic: inexact h2 division");
    return *q;
}

}  // namespace pentapod::elim
