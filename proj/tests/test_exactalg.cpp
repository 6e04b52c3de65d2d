#include "pentapod/multipoly.hpp"
#include "pentapod/polyops.hpp"
#include "poly_testing.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pentapod;
using ptest::Rng;

namespace {
RingPtr xy_ring() { return Ring::make({"x", "y"}); }
RingPtr xab_ring() { return Ring::make({"x", "a", "b"}); }

MultiPoly P(const RingPtr& r, const std::string& s) { return MultiPoly::parse(r, s); }
}  // namespace

TEST_CASE("rational parsing follows the design-file grammar") {
    CHECK(*parse_rational("3") == Rational(3));
    CHECK(*parse_rational("-3/4") == Rational(-3, 4));
    CHECK(*parse_rational("007") == Rational(7));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("1/-2"));
    CHECK(!parse_rational("1.5"));
    CHECK(!parse_rational(""));
    CHECK(!parse_rational("/2"));
    CHECK(to_string(rat(-6, 4)) == "-3/2");
}

TEST_CASE("basic arithmetic and cancellation") {
    auto r = xy_ring();
    auto x = MultiPoly::variable(r, "x");
    auto y = MultiPoly::variable(r, "y");
    CHECK((x + y) + (x - y) == Rational(2) * x);
    CHECK((x + MultiPoly::constant(r, 1)) * (x - MultiPoly::constant(r, 1)) ==
          x * x - MultiPoly::constant(r, 1));
    CHECK((x - x).is_zero());
}

TEST_CASE("ring laws on random inputs") {
    auto r = Ring::make({"x", "y", "z"});
    Rng rng(42);
    for (int it = 0; it < 100; ++it) {
        auto p = rng.poly(r, 4), q = rng.poly(r, 4), s = rng.poly(r, 4);
        CHECK((p + q) + s == p + (q + s));
        CHECK((p * q) * s == p * (q * s));
        CHECK(p * (q + s) == p * q + p * s);
        CHECK((p - p).is_zero());
        CHECK(p * q == q * p);
    }
}

TEST_CASE("canonical text round-trips bit-exactly") {
    auto r = Ring::make({"e0", "e1", "f1"});
    auto p = P(r, "3/2*e0^2*f1 - 1*e1^2");
    CHECK(p.str() == "3/2*e0^2*f1 - 1*e1^2");
    CHECK(MultiPoly::parse(r, p.str()) == p);

    Rng rng(7);
    auto r3 = Ring::make({"x", "y", "z"});
    for (int it = 0; it < 100; ++it) {
        auto q = rng.poly(r3, 6, 3);
        CHECK(MultiPoly::parse(r3, q.str()) == q);
    }
    CHECK(MultiPoly::zero(r3).str() == "0");
    CHECK(MultiPoly::parse(r3, "0").is_zero());
}

TEST_CASE("substitute: rational-function bindings") {
    auto r = xab_ring();
    auto x = MultiPoly::variable(r, "x");
    auto a = MultiPoly::variable(r, "a");
    auto b = MultiPoly::variable(r, "b");
    SECTION("x^2+1 with x -> a/b") {
        auto p = x * x + MultiPoly::constant(r, 1);
        auto rf = substitute(p, std::map<std::string, RationalFunction>{{"x", {a, b}}});
        CHECK(rf.num == a * a + b * b);
        CHECK(rf.den == b * b);
    }
    SECTION("identity binding") {
        auto p = x * x * a + b;
        auto rf = substitute(p, std::map<std::string, RationalFunction>{
                                    {"x", {x, MultiPoly::constant(r, 1)}}});
        CHECK(rf.num == p);
        CHECK(rf.den == MultiPoly::constant(r, 1));
    }
    SECTION("zero denominator rejected") {
        CHECK_THROWS(substitute(x, std::map<std::string, RationalFunction>{
                                       {"x", {a, MultiPoly::zero(r)}}}));
    }
}

TEST_CASE("resultant: tiny cases") {
    auto r = xab_ring();
    auto x = MultiPoly::variable(r, "x");
    auto a = MultiPoly::variable(r, "a");
    auto b = MultiPoly::variable(r, "b");
    CHECK(resultant(x - a, x - b, "x") == a - b);
    CHECK(resultant(x * x - MultiPoly::constant(r, 1), x - MultiPoly::constant(r, 1), "x").is_zero());
    CHECK_THROWS(resultant(a, x, "x"));  // degree 0 in x
}

TEST_CASE("resultant laws on random polynomials") {
    auto ring = Ring::make({"x", "u", "v"});
    std::size_t xv = ring->at("x");
    Rng rng(11);
    int done = 0;
    for (int it = 0; done < 100 && it < 400; ++it) {
        auto p = rng.poly_in(ring, xv, rng.intval(1, 2), 2);
        auto q = rng.poly_in(ring, xv, rng.intval(1, 3), 2);
        auto s = rng.poly_in(ring, xv, 1, 1);
        int dp = p.degree_in(xv), dq = q.degree_in(xv);
        if (dp < 1 || dq < 1 || s.degree_in(xv) < 1) continue;
        ++done;
        // swap sign
        auto rpq = resultant(p, q, xv);
        auto rqp = resultant(q, p, xv);
        if ((dp * dq) % 2 == 1)
            CHECK(rpq == -rqp);
        else
            CHECK(rpq == rqp);
        // multiplicativity
        CHECK(resultant(p, q * s, xv) == rpq * resultant(p, s, xv));
        // specialization: evaluate u,v at random rationals keeping degrees
        Rational uv = rng.rational(), vv = rng.rational();
        auto spec = [&](const MultiPoly& f) {
            auto g = f.substituted(ring->at("u"), MultiPoly::constant(ring, uv));
            return g.substituted(ring->at("v"), MultiPoly::constant(ring, vv));
        };
        auto ps = spec(p), qs = spec(q);
        if (ps.degree_in(xv) == dp && qs.degree_in(xv) == dq) {
            CHECK(spec(rpq) == resultant(ps, qs, xv));
        }
    }
    CHECK(done == 100);
}

TEST_CASE("exact division") {
    auto r = xy_ring();
    auto x = MultiPoly::variable(r, "x");
    auto y = MultiPoly::variable(r, "y");
    auto one = MultiPoly::constant(r, 1);
    CHECK(*try_exact_divide(x * x - y * y, x - y) == x + y);
    CHECK(!try_exact_divide(x * x + one, x - one));
    Rng rng(13);
    for (int it = 0; it < 100; ++it) {
        auto d = rng.nonzero_poly(r, 3);
        auto q = rng.nonzero_poly(r, 3);
        auto got = try_exact_divide(d * q, d);
        REQUIRE(got.has_value());
        CHECK(*got == q);
    }
}

TEST_CASE("exact square roots") {
    auto r = xy_ring();
    auto x = MultiPoly::variable(r, "x");
    auto y = MultiPoly::variable(r, "y");
    CHECK(*try_square_root((x + y) * (x + y)) == x + y);
    CHECK(!try_square_root(x * x + y * y));
    Rng rng(17);
    auto ring = Ring::make({"x", "y", "z"});
    for (int it = 0; it < 100; ++it) {
        auto k = rng.nonzero_poly(ring, 4, 2);
        auto root = try_square_root(k * k);
        REQUIRE(root.has_value());
        CHECK((*root == k || *root == -k));
        CHECK(sign(root->leading_term().c) > 0);
        CHECK(*root * *root == k * k);
    }
}

TEST_CASE("collect_coefficients") {
    auto r = Ring::make({"x", "a", "b"});
    auto x = MultiPoly::variable(r, "x");
    auto a = MultiPoly::variable(r, "a");
    auto b = MultiPoly::variable(r, "b");
    auto p = a * x * x + b * x + a * b;
    auto cc = collect_coefficients(p, {r->at("x")});
    REQUIRE(cc.size() == 3);
    CHECK(cc.at({2}) == a);
    CHECK(cc.at({1}) == b);
    CHECK(cc.at({0}) == a * b);

    auto c = MultiPoly::constant(r, 5);
    auto cc0 = collect_coefficients(c, {r->at("x")});
    REQUIRE(cc0.size() == 1);
    CHECK(cc0.at({0}) == c);
}

TEST_CASE("divide_out and strip_variable") {
    auto r = xy_ring();
    auto x = MultiPoly::variable(r, "x");
    auto y = MultiPoly::variable(r, "y");
    auto p = x * x * (x + y);
    int k = 0;
    auto q = divide_out(p, x, 5, &k);
    CHECK(k == 2);
    CHECK(q == x + y);
    int removed = 0;
    auto s = strip_variable(x * x * y + x * y * y, r->at("x"), &removed);
    CHECK(removed == 1);
    CHECK(s == x * y + y * y);
}

TEST_CASE("primitive part strips content and fixes sign") {
    auto r = xy_ring();
    auto x = MultiPoly::variable(r, "x");
    auto y = MultiPoly::variable(r, "y");
    auto p = Rational(-4, 3) * (x + y);
    Rational c;
    auto pp = p.primitive_part(&c);
    CHECK(pp == x + y);
    CHECK(c == Rational(-4, 3));
    CHECK(c * pp.terms()[0].c == p.terms()[0].c);
}
