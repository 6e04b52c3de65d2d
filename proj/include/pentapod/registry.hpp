#pragma once

// Named reproductions of the bond eliminations of sections 3-5 and the
// appendix special cases. Each entry rebuilds the coordinatized design,
// runs the full symbolic chain, and asserts the printed target expressions
// bit-exactly. Bracketed term counts are reported as diagnostics only.

#include "pentapod/bonds.hpp"
#include "pentapod/elimination.hpp"
#include "pentapod/polyops.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace pentapod::registry {

using pentapod::MultiPoly;
using pentapod::Rational;
using pentapod::RingPtr;

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReproduceResult {
    std::string id;
    std::vector<Assertion> assertions;
    std::map<std::string, std::size_t> diagnostics;
    std::vector<std::string> notes;
    double wall_seconds = 0;

    bool pass() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }
    void require(const std::string& name, bool ok, const std::string& detail = "") {
        assertions.push_back({name, ok, detail});
    }
    void require_equal(const std::string& name, const MultiPoly& got, const MultiPoly& want) {
        bool ok = got == want;
        assertions.push_back({name, ok, ok ? "" : "got: " + got.str() + "\nwant: " + want.str()});
    }
    // equality up to a global sign (numerator normalizations are sign-ambiguous)
    void require_equal_pm(const std::string& name, const MultiPoly& got, const MultiPoly& want) {
        bool ok = got == want || got == -want;
        assertions.push_back({name, ok, ok ? "" : "got: " + got.str() + "\nwant: " + want.str()});
    }
    void diag(const std::string& k, std::size_t v) { diagnostics[k] = v; }
    void note(std::string s) { notes.push_back(std::move(s)); }
};

namespace detail {

using elim::lambda_poly;
using elim::norm_poly;
using elim::psi_poly;

struct Ctx {
    RingPtr ring;
    std::vector<MultiPoly> lambda;  // one per leg, chart restrictions applied
    MultiPoly psi;
    MultiPoly norm;  // N restricted to the chart

    MultiPoly var(const std::string& n) const { return MultiPoly::variable(ring, n); }
    MultiPoly c(long v) const { return MultiPoly::constant(ring, Rational(v)); }
    MultiPoly delta(std::size_t i, std::size_t j) const { return lambda[i] - lambda[j]; }
};

// anchors as coordinate polynomials in the ring
using P3 = std::array<MultiPoly, 3>;

inline Ctx make_ctx(RingPtr ring, const std::vector<P3>& m, const std::vector<P3>& M,
                    const std::map<std::string, long>& e_fixed) {
    Ctx ctx;
    ctx.ring = ring;
    MultiPoly psi = psi_poly(ring);
    MultiPoly norm = norm_poly(ring);
    for (std::size_t i = 0; i < m.size(); ++i) {
        MultiPoly r2 = MultiPoly::variable(ring, "R" + std::to_string(i + 1));
        ctx.lambda.push_back(lambda_poly(ring, m[i], M[i], r2));
    }
    for (const auto& [name, value] : e_fixed) {
        std::size_t v = ring->at(name);
        for (auto& l : ctx.lambda) l = l.substituted(v, MultiPoly::constant(ring, Rational(value)));
        psi = psi.substituted(v, MultiPoly::constant(ring, Rational(value)));
        norm = norm.substituted(v, MultiPoly::constant(ring, Rational(value)));
    }
    ctx.psi = std::move(psi);
    ctx.norm = std::move(norm);
    return ctx;
}

inline RingPtr ring_with(std::initializer_list<const char*> params) {
    std::vector<std::string> names{"e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3"};
    for (auto p : params) names.push_back(p);
    for (int i = 1; i <= 5; ++i) names.push_back("R" + std::to_string(i));
    return Ring::make(names);
}

// Solve, substitute, cancel the known pivot factors, strip content, fix sign.
struct Pipeline {
    Ctx* ctx;
    elim::LinearSolution sol;
    std::vector<std::pair<MultiPoly, int>> det_factors;

    void solve(const std::vector<MultiPoly>& eqs, const std::vector<std::string>& fv) {
        std::vector<std::size_t> fvars;
        for (const auto& s : fv) fvars.push_back(ctx->ring->at(s));
        sol = elim::solve_linear(eqs, fvars);
    }
    // assert det == const * product(factors^mult); returns leftover constant
    bool det_matches(const std::vector<std::pair<MultiPoly, int>>& factors) {
        det_factors = factors;
        MultiPoly rest = sol.det;
        for (const auto& [f, mult] : factors) {
            for (int k = 0; k < mult; ++k) {
                auto q = pentapod::try_exact_divide(rest, f);
                if (!q) return false;
                rest = *q;
            }
        }
        return rest.is_constant();
    }
    MultiPoly numerator(const MultiPoly& target, Rational scale = Rational(1)) const {
        MultiPoly raw = elim::substitute_solution(target, sol);
        MultiPoly out = elim::normalize_numerator(std::move(raw), det_factors);
        return scale == 1 ? out : out * scale;
    }
};

// complex pair (re, im) arithmetic over MultiPoly, for bond candidates in Q(i)
struct CPoly {
    MultiPoly re, im;
};

inline CPoly cmul(const CPoly& a, const CPoly& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CPoly cadd(const CPoly& a, const CPoly& b) { return {a.re + b.re, a.im + b.im}; }

// evaluate a polynomial at complex assignments (vars without assignment stay)
inline CPoly complex_eval(const MultiPoly& p, const std::map<std::size_t, CPoly>& sub) {
    RingPtr ring = p.ring();
    CPoly acc{MultiPoly::zero(ring), MultiPoly::zero(ring)};
    for (const auto& t : p.terms()) {
        CPoly val{MultiPoly::constant(ring, t.c), MultiPoly::zero(ring)};
        for (std::size_t v = 0; v < ring->size(); ++v) {
            if (t.e[v] == 0) continue;
            auto it = sub.find(v);
            if (it == sub.end()) {
                MultiPoly pw = MultiPoly::variable(ring, ring->name(v), t.e[v]);
                val.re = val.re * pw;
                val.im = val.im * pw;
            } else {
                for (uint16_t k = 0; k < t.e[v]; ++k) val = cmul(val, it->second);
            }
        }
        acc = cadd(acc, val);
    }
    return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sec3.1-case2: reflection-congruent pentapod, branch e3 = 0, e2 = 0.
// ---------------------------------------------------------------------------

inline ReproduceResult reproduce_sec31_case2() {
    using namespace detail;
    ReproduceResult res;
    res.id = "sec3.1-case2";
    auto ring = ring_with({"a3", "b3", "a4", "b4", "c4", "a5", "b5", "c5"});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    auto C0 = MultiPoly::zero(ring);
    auto C1 = MultiPoly::constant(ring, 1);
    std::vector<P3> m{{C0, C0, C0},
                      {C1, C0, C0},
                      {X("a3"), X("b3"), C0},
                      {X("a4"), X("b4"), -X("c4")},
                      {X("a5"), X("b5"), -X("c5")}};
    std::vector<P3> M{{C0, C0, C0},
                      {C1, C0, C0},
                      {X("a3"), X("b3"), C0},
                      {X("a4"), X("b4"), X("c4")},
                      {X("a5"), X("b5"), X("c5")}};
    Ctx ctx = make_ctx(ring, m, M, {{"e2", 0}, {"e3", 0}});
    Pipeline pl{&ctx};
    pl.solve({ctx.psi, ctx.delta(2, 0)}, {"f1", "f3"});
    res.require("pivot det = const*b3*e1^2",
                pl.det_matches({{X("b3"), 1}, {X("e1"), 2}}),
                "side conditions: b3 != 0, e1 != 0");
    MultiPoly G2 = pl.numerator(ctx.delta(1, 0));
    MultiPoly G4 = pl.numerator(ctx.delta(3, 0));
    MultiPoly G5 = pl.numerator(ctx.delta(4, 0));
    res.diag("G2_terms", G2.term_count());
    res.diag("G4_terms", G4.term_count());
    MultiPoly N0 = ctx.norm;  // e0^2 + e1^2
    MultiPoly g2t = (X("R1") - X("R2")) * N0;
    res.require("G2 = N (R1^2 - R2^2)", G2 == g2t || G2 == -g2t, G2.str());
    auto e1 = X("e1");
    std::size_t e0v = ring->at("e0");
    MultiPoly H4 = pentapod::resultant(G4, N0, e0v);
    MultiPoly h4t = MultiPoly::constant(ring, 16) * X("b3") * X("b3") * e1.pow(6) *
                    (X("b4") * X("b4") + X("c4") * X("c4")) *
                    ((X("b3") - X("b4")) * (X("b3") - X("b4")) + X("c4") * X("c4"));
    res.require_equal("H4 = 16 b3^2 e1^6 (b4^2+c4^2)[(b3-b4)^2+c4^2]", H4, h4t);
    MultiPoly H5 = pentapod::resultant(G5, N0, e0v);
    MultiPoly h5t = MultiPoly::constant(ring, 16) * X("b3") * X("b3") * e1.pow(6) *
                    (X("b5") * X("b5") + X("c5") * X("c5")) *
                    ((X("b3") - X("b5")) * (X("b3") - X("b5")) + X("c5") * X("c5"));
    res.require_equal("H5 analog for the fifth leg", H5, h5t);
    res.note("cannot vanish over R for b3*c4 != 0: both quartic factors are sums of squares");
    return res;
}

// ---------------------------------------------------------------------------
// sec4.1-case1: planar affine, platform parallel to base, rotation about z.
// ---------------------------------------------------------------------------

inline ReproduceResult reproduce_sec41_case1() {
    ReproduceResult res;
    res.id = "sec4.1-case1";
    auto ring = Ring::make({"e0", "e3", "a2", "a3", "b3", "A2", "A3", "B3"});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    auto C0 = MultiPoly::zero(ring);
    std::array<MultiPoly, 4> e{X("e0"), C0, C0, X("e3")};
    auto R = rotation_homogeneous(e);
    MultiPoly N = X("e0") * X("e0") + X("e3") * X("e3");
    std::array<MultiPoly, 3> m2{X("a2"), C0, C0}, m3{X("a3"), X("b3"), C0};
    std::array<MultiPoly, 3> M2{X("A2"), C0, C0}, M3{X("A3"), X("B3"), C0};
    auto rot = [&](const std::array<MultiPoly, 3>& v) {
        std::array<MultiPoly, 3> out;
        for (int i = 0; i < 3; ++i) out[i] = R[i][0] * v[0] + R[i][1] * v[1] + R[i][2] * v[2];
        return out;
    };
    auto v2 = rot(m2), v3 = rot(m3);
    for (int i = 0; i < 3; ++i) {
        v2[i] = v2[i] - N * M2[i];
        v3[i] = v3[i] - N * M3[i];
    }
    std::array<MultiPoly, 3> cr{v2[1] * v3[2] - v2[2] * v3[1], v2[2] * v3[0] - v2[0] * v3[2],
                                v2[0] * v3[1] - v2[1] * v3[0]};
    res.require("x component vanishes", cr[0].is_zero());
    res.require("y component vanishes", cr[1].is_zero());
    MultiPoly target = (X("e0") * X("e0") + X("e3") * X("e3")) *
                       ((X("B3") - X("b3")) * (X("A2") - X("a2")) * X("e0") * X("e0") +
                        (X("B3") + X("b3")) * (X("A2") + X("a2")) * X("e3") * X("e3") +
                        MultiPoly::constant(ring, 2) * (X("A3") * X("a2") - X("A2") * X("a3")) *
                            X("e0") * X("e3"));
    res.require_equal("z component = (e0^2+e3^2)[(B3-b3)(A2-a2)e0^2+(B3+b3)(A2+a2)e3^2+2(A3a2-A2a3)e0e3]",
                      cr[2], target);
    res.note("second factor vanishes identically iff platform and base are congruent");
    return res;
}

// ---------------------------------------------------------------------------
// sec4.1-schoenflies: two-parallel-lines design, e2 = e3 = 0, A_j = 0.
// ---------------------------------------------------------------------------

inline ReproduceResult reproduce_sec41_schoenflies() {
    using namespace detail;
    ReproduceResult res;
    res.id = "sec4.1-schoenflies";
    auto ring = ring_with({"k", "B2", "B3", "B4", "B5"});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    auto C0 = MultiPoly::zero(ring);
    std::vector<P3> m{{C0, C0, C0},
                      {C0, X("k") * X("B2"), C0},
                      {C0, X("k") * X("B3"), C0},
                      {C0, X("k") * X("B4"), C0},
                      {C0, X("k") * X("B5"), C0}};
    std::vector<P3> M{{C0, C0, C0},
                      {C0, X("B2"), C0},
                      {C0, X("B3"), C0},
                      {C0, X("B4"), C0},
                      {C0, X("B5"), C0}};
    Ctx ctx = make_ctx(ring, m, M, {{"e2", 0}, {"e3", 0}});
    Pipeline pl{&ctx};
    pl.solve({ctx.psi, ctx.delta(1, 0)}, {"f1", "f3"});
    res.require("pivot det = const*B2*e1^2*(k+1)",
                pl.det_matches({{X("B2"), 1}, {X("e1"), 2}, {X("k") + MultiPoly::constant(ring, 1), 1}}),
                "side conditions: B2 != 0, e1 != 0, k != -1");
    MultiPoly N0 = ctx.norm;
    std::size_t e1v = ring->at("e1");
    const char* bs[3] = {"B3", "B4", "B5"};
    for (int i = 0; i < 3; ++i) {
        MultiPoly G = pl.numerator(ctx.delta(i + 2, 0));
        res.diag(std::string("G") + std::to_string(i + 3) + "_terms", G.term_count());
        MultiPoly H = pentapod::resultant(G, N0, e1v);
        MultiPoly Bi = X(bs[i]);
        MultiPoly t = MultiPoly::constant(ring, 16) * X("B2") * X("B2") * Bi * Bi * X("k") *
                      X("k") * X("e0").pow(4) * (X("B2") - Bi) * (X("B2") - Bi);
        res.require_equal(std::string("res(G") + std::to_string(i + 3) +
                              ",N,e1) = 16 B2^2 Bi^2 k^2 e0^4 (B2-Bi)^2",
                          H, t);
        bool rfree = true;
        for (int rr = 1; rr <= 5; ++rr)
            if (H.depends_on(ring->at("R" + std::to_string(rr)))) rfree = false;
        res.require(std::string("H") + std::to_string(i + 3) + " contains no radius symbol", rfree);
    }
    res.note("consequence: the i-th leg must coincide with leg 1 or 2; with four collinear "
             "anchors excluded this is the two-lines design of Theorem 3 item 2");
    return res;
}

// ---------------------------------------------------------------------------
// sec4.2-case1: congruent planar, no three anchors collinear (A2 = 1).
// ---------------------------------------------------------------------------

inline ReproduceResult reproduce_sec42_case1() {
    using namespace detail;
    ReproduceResult res;
    res.id = "sec4.2-case1";
    auto ring = ring_with({"B3", "A4", "A5"});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    auto C0 = MultiPoly::zero(ring);
    auto C1 = MultiPoly::constant(ring, 1);
    std::vector<P3> pts{{C0, C0, C0},
                        {C1, C0, C0},
                        {C0, X("B3"), C0},
                        {X("A4"), X("A4"), C0},
                        {X("A5"), -X("A5"), C0}};
    Ctx ctx = make_ctx(ring, pts, pts, {{"e3", 0}});
    Pipeline pl{&ctx};
    pl.solve({ctx.psi, ctx.delta(1, 0)}, {"f2", "f3"});
    res.require("pivot det = const*e2^2", pl.det_matches({{X("e2"), 2}}),
                "side condition: e2 != 0 (denominator of f2 and f3)");
    MultiPoly G3 = pl.numerator(ctx.delta(2, 0));
    MultiPoly G4 = pl.numerator(ctx.delta(3, 0));
    MultiPoly G5 = pl.numerator(ctx.delta(4, 0));
    res.diag("G3_terms", G3.term_count());
    MultiPoly N0 = ctx.norm;
    std::size_t e0v = ring->at("e0");
    auto e1 = X("e1"), e2 = X("e2");
    MultiPoly H3 = pentapod::resultant(G3, N0, e0v);
    res.require_equal("H3 = 16 B3^2 e1^2 e2^2 (B3 e1 + e2)^2", H3,
                      MultiPoly::constant(ring, 16) * X("B3") * X("B3") * e1 * e1 * e2 * e2 *
                          (X("B3") * e1 + e2) * (X("B3") * e1 + e2));
    MultiPoly H4 = pentapod::resultant(G4, N0, e0v);
    MultiPoly H5 = pentapod::resultant(G5, N0, e0v);
    std::size_t e1v = ring->at("e1");
    for (auto [H, Aj, nm, sgn] :
         {std::tuple<MultiPoly*, const char*, const char*, int>{&H4, "A4", "H4", +1},
          std::tuple<MultiPoly*, const char*, const char*, int>{&H5, "A5", "H5", -1}}) {
        MultiPoly A = X(Aj);
        MultiPoly at_e1_0 = H->substituted(e1v, MultiPoly::zero(ring));
        res.require_equal(std::string(nm) + "|e1=0 = 16 e2^6 Aj^2 (Aj-1)^2", at_e1_0,
                          MultiPoly::constant(ring, 16) * e2.pow(6) * A * A * (A - C1) * (A - C1));
        // e1 -> -e2/B3, cleared by B3^deg
        auto rf = pentapod::substitute(
            *H, std::map<std::string, pentapod::RationalFunction>{{"e1", {-e2, X("B3")}}});
        int dd = H->degree_in(e1v);
        MultiPoly inner = sgn > 0 ? (A * X("B3") + A - X("B3")) : (A * X("B3") - A - X("B3"));
        MultiPoly base = MultiPoly::constant(ring, 16) * A * A * e2.pow(6) *
                         (X("B3") + (sgn > 0 ? C1 : -C1)) * (X("B3") + (sgn > 0 ? C1 : -C1)) *
                         inner * inner;
        MultiPoly want = base;
        for (int k = 0; k < dd - 4; ++k) want = want * X("B3");
        res.require_equal(std::string(nm) + "|e1=-e2/B3 matches the printed factorization",
                          rf.num, want);
    }
    res.note("H5's inner factor is A5*B3-A5-B3 (collinearity of M2,M3,M5); the paper prints "
             "the A4-shaped factor for both j=4,5");

    // sub-case (b): (1 : +-i : 0 : 0) is no projected bond
    for (int sgn : {+1, -1}) {
        std::map<std::size_t, CPoly> sub;
        auto c0 = MultiPoly::zero(ring);
        sub[ring->at("e0")] = {C1, c0};
        sub[ring->at("e1")] = {c0, sgn > 0 ? C1 : -C1};
        sub[ring->at("e2")] = {c0, c0};
        sub[ring->at("e3")] = {c0, c0};
        // f1 = +- i f0, f3 = -+ i B3/2
        MultiPoly f0 = X("f0");
        sub[ring->at("f1")] = {c0, sgn > 0 ? f0 : -f0};
        MultiPoly halfB3 = MultiPoly::constant(ring, Rational(1, 2)) * X("B3");
        sub[ring->at("f3")] = {c0, sgn > 0 ? -halfB3 : halfB3};
        auto psiv = complex_eval(ctx.psi, sub);
        res.require(std::string("psi vanishes at (1:") + (sgn > 0 ? "+" : "-") + "i:0:0)",
                    psiv.re.is_zero() && psiv.im.is_zero());
        auto d31 = complex_eval(ctx.delta(2, 0), sub);
        res.require("Delta31 vanishes under the solved f1, f3",
                    d31.re.is_zero() && d31.im.is_zero());
        auto d41 = complex_eval(ctx.delta(3, 0), sub);
        MultiPoly w41 = MultiPoly::constant(ring, -4) * X("A4") * (X("A4") - X("B3"));
        res.require_equal("Delta41 reduces to -4 A4 (A4 - B3)", d41.re, w41);
        res.require("Delta41 imaginary part vanishes", d41.im.is_zero());
        auto d51 = complex_eval(ctx.delta(4, 0), sub);
        MultiPoly w51 = MultiPoly::constant(ring, -4) * X("A5") * (X("A5") + X("B3"));
        res.require_equal("Delta51 reduces to -4 A5 (A5 + B3)", d51.re, w51);
        res.require("Delta51 imaginary part vanishes", d51.im.is_zero());
    }
    res.note("A4 = B3 and A5 = -B3 make M2,M4 resp. M2,M5 collinear with M3: excluded, so "
             "(1:+-i:0:0) is no projected bond");
    return res;
}

// ---------------------------------------------------------------------------
// sec4.2-case2a: three collinear anchors, [M4,M5] not parallel to them.
// ---------------------------------------------------------------------------

inline ReproduceResult reproduce_sec42_case2a() {
    using namespace detail;
    ReproduceResult res;
    res.id = "sec4.2-case2a";
    auto ring = ring_with({"A4"});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    auto C0 = MultiPoly::zero(ring);
    auto C1 = MultiPoly::constant(ring, 1);
    std::vector<P3> pts{{C0, C0, C0},
                        {C1, C0, C0},
                        {-C1, C0, C0},
                        {X("A4"), C1, C0},
                        {-X("A4"), -C1, C0}};
    Ctx ctx = make_ctx(ring, pts, pts, {{"e3", 0}});
    Pipeline pl{&ctx};
    pl.solve({ctx.psi, ctx.delta(1, 2)}, {"f2", "f3"});
    res.require("pivot det = const*e2^2", pl.det_matches({{X("e2"), 2}}));
    Rational half(1, 2);
    MultiPoly G2 = pl.numerator(ctx.delta(1, 0), half);
    MultiPoly G4 = pl.numerator(ctx.delta(3, 0) + ctx.delta(4, 0), half);
    MultiPoly G5 = pl.numerator(ctx.delta(3, 4), Rational(-1));
    res.diag("G2_terms", G2.term_count());
    res.diag("G4_terms", G4.term_count());
    auto e1 = X("e1"), e2 = X("e2");
    MultiPoly H5t = (X("R3") - X("R2")) * e1 +
                    (X("R5") - X("R4") - X("A4") * (X("R3") - X("R2"))) * e2;
    res.require_equal_pm("G5 = (e0^2+e1^2+e2^2) H5 with the printed H5", G5, ctx.norm * H5t);
    // impose R2 = R3 and R4 = R5
    auto impose = [&](MultiPoly p) {
        p = p.substituted(ring->at("R2"), X("R3"));
        return p.substituted(ring->at("R4"), X("R5"));
    };
    MultiPoly G2r = impose(G2), G4r = impose(G4);
    MultiPoly r24 = pentapod::resultant(G2r, G4r, ring->at("e0"));
    MultiPoly Lt = (X("R1") - X("R3")) * e1 * e1 +
                   (X("A4") * X("A4") * (X("R1") - X("R3")) - X("R1") + X("R5")) * e2 * e2 -
                   MultiPoly::constant(ring, 2) * X("A4") * (X("R1") - X("R3")) * e1 * e2;
    res.require_equal("res(G2,G4,e0) = 16 L^2 with the printed L", r24,
                      MultiPoly::constant(ring, 16) * Lt * Lt);
    MultiPoly G2rr = G2r.substituted(ring->at("R1"), X("R3"));
    res.require_equal_pm("R1^2 = R3^2 gives G2 = 4 e2^2", G2rr,
                         MultiPoly::constant(ring, 4) * e2 * e2);
    res.note("G4 is Lambda4+Lambda5 taken modulo 2*Lambda1 (= Delta41+Delta51), which removes "
             "the f0, f1 dependence the paper notes");
    return res;
}

// ---------------------------------------------------------------------------
// sec4.2-case2b: three collinear anchors, [M4,M5] parallel to them.
// ---------------------------------------------------------------------------

inline ReproduceResult reproduce_sec42_case2b() {
    using namespace detail;
    ReproduceResult res;
    res.id = "sec4.2-case2b";
    auto ring = ring_with({});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    auto C0 = MultiPoly::zero(ring);
    auto C1 = MultiPoly::constant(ring, 1);
    std::vector<P3> pts{{C0, C0, C0},
                        {C1, C0, C0},
                        {-C1, C0, C0},
                        {C0, C1, C0},
                        {C1, C1, C0}};
    Ctx ctx = make_ctx(ring, pts, pts, {{"e3", 0}});
    Pipeline pl{&ctx};
    pl.solve({ctx.psi, ctx.delta(1, 2)}, {"f2", "f3"});
    res.require("pivot det = const*e2^2", pl.det_matches({{X("e2"), 2}}));
    MultiPoly G2 = pl.numerator(ctx.delta(1, 0), Rational(1, 2));
    MultiPoly G4 = pl.numerator(ctx.delta(3, 4));
    auto e1 = X("e1"), e2 = X("e2");
    MultiPoly r24 = pentapod::resultant(G2, G4, ring->at("e0"));
    MultiPoly inner = (MultiPoly::constant(ring, 2) * X("R1") - X("R2") - X("R3")) * e1 -
                      (X("R1") - X("R2") + X("R5") - X("R4")) * e2;
    res.require_equal("res(G2,G4,e0) = 64 e2^2 [(2R1^2-R2^2-R3^2)e1-(R1^2-R2^2+R5^2-R4^2)e2]^2",
                      r24, MultiPoly::constant(ring, 64) * e2 * e2 * inner * inner);
    MultiPoly G2r = G2.substituted(
        ring->at("R1"), MultiPoly::constant(ring, Rational(1, 2)) * (X("R2") + X("R3")));
    res.require_equal_pm("R1^2 = (R2^2+R3^2)/2 gives G2 = 4 e2^2", G2r,
                         MultiPoly::constant(ring, 4) * e2 * e2);
    return res;
}

}  // namespace pentapod::registry
