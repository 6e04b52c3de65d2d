#include "pentapod/bonds.hpp"
#include "pentapod/elimination.hpp"
#include "poly_testing.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pentapod;
using ptest::Rng;

TEST_CASE("linear solve and substitution round-trip") {
    auto ring = Ring::make({"x", "y", "u", "v"});
    auto X = [&](const char* n) { return MultiPoly::variable(ring, n); };
    // u + x*v = 0, x*u - v + y = 0  solved for (u, v)
    std::vector<MultiPoly> eqs{X("u") + X("x") * X("v"), X("x") * X("u") - X("v") + X("y")};
    auto sol = elim::solve_linear(eqs, {ring->at("u"), ring->at("v")});
    // residual check: substituting the solution into the equations gives zero
    for (const auto& eq : eqs) {
        MultiPoly r = elim::substitute_solution(eq, sol);
        CHECK(r.is_zero());
    }
    CHECK_THROWS(elim::solve_linear({X("u") * X("u"), X("v")}, {ring->at("u"), ring->at("v")}));
}

TEST_CASE("reduce_mod_norm computes resultants against monic quadrics") {
    auto ring = Ring::make({"x", "s", "a", "b"});
    Rng rng(3);
    std::size_t xv = ring->at("x");
    auto quad = MultiPoly::variable(ring, "x", 2) + MultiPoly::variable(ring, "s");
    for (int it = 0; it < 50; ++it) {
        auto g = rng.poly_in(ring, xv, rng.intval(1, 4), 3);
        if (g.degree_in(xv) < 1) continue;
        auto red = elim::reduce_mod_norm(g, quad, xv);
        auto want = pentapod::resultant(g, quad, xv);
        // res(g, quad) = (-1)^{2 deg g} res(quad, g) = res(quad, g)
        CHECK(red.resultant == want);
    }
}

TEST_CASE("parity split and bar substitution are lossless") {
    auto ring = Ring::make({"x", "y", "xb"});
    Rng rng(5);
    std::size_t xv = ring->at("x"), bv = ring->at("xb");
    for (int it = 0; it < 100; ++it) {
        auto p = rng.poly(ring, 6, 3);
        // ensure p does not already use xb
        p = p.substituted(bv, MultiPoly::constant(ring, 1));
        auto [ev, od] = elim::parity_split(p, xv, bv);
        // reconstruct: ev(xb -> x^2) + x*od(xb -> x^2) == p
        auto x2 = MultiPoly::variable(ring, "x", 2);
        auto back = ev.substituted(bv, x2) + MultiPoly::variable(ring, "x") * od.substituted(bv, x2);
        CHECK(back == p);
        // evenized polynomials round-trip through bar_substitute
        auto even = ev.substituted(bv, x2);
        CHECK(elim::bar_substitute(even, xv, bv) == ev);
    }
}

TEST_CASE("resultant_vs_quadratic agrees with the Sylvester determinant") {
    auto ring = Ring::make({"x", "u", "v"});
    Rng rng(7);
    std::size_t xv = ring->at("x");
    for (int it = 0; it < 60; ++it) {
        auto h2 = rng.nonzero_poly(ring, 2, 1);
        h2 = h2.substituted(xv, MultiPoly::constant(ring, 1));
        if (h2.is_zero()) continue;
        auto h1 = rng.poly(ring, 2, 1).substituted(xv, MultiPoly::constant(ring, 1));
        auto h0 = rng.poly(ring, 2, 1).substituted(xv, MultiPoly::constant(ring, 1));
        auto H = h2 * MultiPoly::variable(ring, "x", 2) + h1 * MultiPoly::variable(ring, "x") + h0;
        auto P = rng.poly_in(ring, xv, rng.intval(1, 4), 2);
        if (P.degree_in(xv) < 1 || H.degree_in(xv) != 2) continue;
        auto fast = elim::resultant_vs_quadratic(P, h2, h1, h0, xv);
        auto want = pentapod::resultant(H, P, xv);
        CHECK(fast == want);
    }
}

TEST_CASE("generic pipeline: non-planar congruent design has empty bonds") {
    PodDesign d;
    d.legs.push_back({pt(0, 0, 0), pt(0, 0, 0), std::nullopt});
    d.legs.push_back({pt(1, 0, 0), pt(1, 0, 0), std::nullopt});
    d.legs.push_back({pt(0, 1, 0), pt(0, 1, 0), std::nullopt});
    d.legs.push_back({pt(0, 0, 1), pt(0, 0, 1), std::nullopt});
    d.legs.push_back({pt(1, 1, 1), pt(1, 1, 1), std::nullopt});
    for (auto& l : d.legs) l.radius2 = rat(4);
    bonds::EliminateOptions opt;
    opt.solve_for = {"f2", "f3"};
    opt.equations = {"psi", "d21"};
    auto tr = bonds::eliminate_f(d, opt);
    auto ring = bonds::design_ring(d.size());
    CHECK(bonds::bonds_on_norm_cone(tr, ring) == bonds::Verdict::BondsEmpty);
}

TEST_CASE("generic pipeline: spherical design has a bonding curve") {
    // Theorem 4 item 1 shape: M3 = M4 = M5
    PodDesign d;
    d.legs.push_back({pt(0, 0, 0), pt(0, 0, 2), std::nullopt});
    d.legs.push_back({pt(1, 0, 0), pt(3, 1, 0), std::nullopt});
    d.legs.push_back({pt(0, 1, 0), pt(1, 1, 1), std::nullopt});
    d.legs.push_back({pt(2, 3, 1), pt(1, 1, 1), std::nullopt});
    d.legs.push_back({pt(1, 1, 5), pt(1, 1, 1), std::nullopt});
    for (auto& l : d.legs) l.radius2 = rat(9);
    bonds::EliminateOptions opt;
    opt.solve_for = {"f2", "f3"};
    opt.equations = {"psi", "d21"};
    auto tr = bonds::eliminate_f(d, opt);
    auto ring = bonds::design_ring(d.size());
    auto verdict = bonds::bonds_on_norm_cone(tr, ring);
    CHECK(verdict == bonds::Verdict::BondingCurve);
}
