#include "pentapod/elimination.hpp"
#include "pentapod/study.hpp"
#include "poly_testing.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pentapod;
using ptest::Rng;

namespace {

RingPtr study_ring() { return Ring::make({"e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3"}); }

// random rational study point on the Study quadric (N != 0)
StudyPoint random_on_psi(Rng& rng) {
    StudyPoint p;
    do {
        for (int i = 0; i < 4; ++i) p.e[i] = rng.rational(-5, 5, 3);
    } while (sign(p.norm_quadric()) == 0 || sign(p.e[3]) == 0);
    for (int i = 0; i < 3; ++i) p.f[i] = rng.rational(-5, 5, 3);
    p.f[3] = -(p.e[0] * p.f[0] + p.e[1] * p.f[1] + p.e[2] * p.f[2]) / p.e[3];
    return p;
}

}  // namespace

TEST_CASE("rotation_translation at special poses") {
    StudyPoint id;
    id.e = {Rational(1), Rational(0), Rational(0), Rational(0)};
    auto [r, t] = rotation_translation(id);
    for (int i = 0; i < 3; ++i) {
        CHECK(t[i] == 0);
        for (int j = 0; j < 3; ++j) CHECK(r[i][j] == (i == j ? 1 : 0));
    }
    StudyPoint halfx;
    halfx.e = {Rational(0), Rational(1), Rational(0), Rational(0)};
    auto [r2, t2] = rotation_translation(halfx);
    CHECK(r2[0][0] == 1);
    CHECK(r2[1][1] == -1);
    CHECK(r2[2][2] == -1);
    CHECK(t2[0] == 0);

    StudyPoint cone;
    cone.e = {Rational(0), Rational(0), Rational(0), Rational(0)};
    CHECK_THROWS_AS(rotation_translation(cone), std::domain_error);
}

TEST_CASE("exact rotations are orthogonal with determinant one") {
    Rng rng(5);
    for (int it = 0; it < 25; ++it) {
        auto p = random_on_psi(rng);
        auto [r, t] = rotation_translation(p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Rational dotij = r[0][i] * r[0][j] + r[1][i] * r[1][j] + r[2][i] * r[2][j];
                CHECK(dotij == (i == j ? 1 : 0));
            }
        Rational det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                       r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                       r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        CHECK(det == 1);
    }
}

TEST_CASE("homogeneous rotation identities R Rt = N^2 I and det R = N^3") {
    // fully symbolic over e0..e3
    auto ring = Ring::make({"e0", "e1", "e2", "e3"});
    std::array<MultiPoly, 4> e{MultiPoly::variable(ring, "e0"), MultiPoly::variable(ring, "e1"),
                               MultiPoly::variable(ring, "e2"), MultiPoly::variable(ring, "e3")};
    auto r = rotation_homogeneous(e);
    MultiPoly n = e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3];
    MultiPoly n2 = n * n;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            MultiPoly dotij = r[i][0] * r[j][0] + r[i][1] * r[j][1] + r[i][2] * r[j][2];
            if (i == j)
                CHECK(dotij == n2);
            else
                CHECK(dotij.is_zero());
        }
    MultiPoly det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                    r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                    r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
    CHECK(det == n * n * n);
}

TEST_CASE("sphere condition semantics on the Study quadric") {
    // Lambda(q) == N(q) * (|R m + t - M|^2 - r2) exactly, for poses on Psi
    Rng rng(23);
    for (int it = 0; it < 30; ++it) {
        auto p = random_on_psi(rng);
        Point3 m = rng.point(), M = rng.point();
        Rational r2 = pentapod::abs(rng.rational()) + 1;
        auto q = sphere_condition(m, M, r2);
        Rational lam = q.value(p.coords());
        auto [rot, t] = rotation_translation(p);
        Vec3<Rational> mv{m[0], m[1], m[2]};
        auto w = mat_apply(rot, mv);
        Rational want = 0;
        for (int i = 0; i < 3; ++i) {
            Rational diff = w[i] + t[i] - M[i];
            want += diff * diff;
        }
        want -= r2;
        CHECK(lam == p.norm_quadric() * want);
        CHECK(leg_length2(m, M, p) - r2 == want);
    }
}

TEST_CASE("Lambda is homogeneous of degree two") {
    Rng rng(29);
    for (int it = 0; it < 20; ++it) {
        auto p = random_on_psi(rng);
        Rational lambda = rng.nonzero_rational();
        Point3 m = rng.point(), M = rng.point();
        auto q = sphere_condition(m, M, rat(2));
        StudyPoint ps;
        for (int i = 0; i < 4; ++i) {
            ps.e[i] = lambda * p.e[i];
            ps.f[i] = lambda * p.f[i];
        }
        CHECK(q.value(ps.coords()) == lambda * lambda * q.value(p.coords()));
    }
}

TEST_CASE("quadratic form expansion matches the symbolic sphere condition") {
    // golden cross-check of the two independent transcriptions of Eq-style
    // sphere conditions: matrix form vs polynomial builder
    Rng rng(31);
    auto ring = study_ring();
    for (int it = 0; it < 25; ++it) {
        Point3 m = rng.point(), M = rng.point();
        Rational r2 = rng.rational();
        auto qf = sphere_condition(m, M, r2).to_poly(ring);
        std::array<MultiPoly, 3> mp, Mp;
        for (int i = 0; i < 3; ++i) {
            mp[i] = MultiPoly::constant(ring, m[i]);
            Mp[i] = MultiPoly::constant(ring, M[i]);
        }
        auto lp = elim::lambda_poly(ring, mp, Mp, MultiPoly::constant(ring, r2));
        CHECK(qf == lp);
    }

    SECTION("zero anchors leave -r2*N + 4*sum f^2") {
        auto ring2 = study_ring();
        Point3 o = pt(0, 0, 0);
        auto q = sphere_condition_geometric(o, o);
        auto poly = q.to_poly(ring2);
        auto f0 = MultiPoly::variable(ring2, "f0"), f1 = MultiPoly::variable(ring2, "f1"),
             f2 = MultiPoly::variable(ring2, "f2"), f3 = MultiPoly::variable(ring2, "f3");
        CHECK(poly == Rational(4) * (f0 * f0 + f1 * f1 + f2 * f2 + f3 * f3));
    }

    SECTION("unit sphere at identity pose") {
        auto q = sphere_condition(pt(0, 0, 0), pt(1, 0, 0), rat(1));
        StudyPoint id;
        id.e = {Rational(1), Rational(0), Rational(0), Rational(0)};
        CHECK(q.value(id.coords()) == 0);
    }
}

TEST_CASE("delta forms are linear in f") {
    Rng rng(37);
    auto ring = study_ring();
    for (int it = 0; it < 10; ++it) {
        PodDesign d;
        for (int l = 0; l < 5; ++l) d.legs.push_back({rng.point(), rng.point(), rat(1)});
        auto delta = delta_form(d, 1, 0).to_poly(ring);
        int fdeg = 0;
        for (const auto& t : delta.terms()) {
            int sum = 0;
            for (auto v : {"f0", "f1", "f2", "f3"}) sum = std::max<int>(sum, t.e[ring->at(v)]);
            int tot = t.e[ring->at("f0")] + t.e[ring->at("f1")] + t.e[ring->at("f2")] +
                      t.e[ring->at("f3")];
            fdeg = std::max(fdeg, tot);
        }
        CHECK(fdeg <= 1);
    }
    PodDesign d;
    d.legs.push_back({pt(0, 0, 0), pt(0, 0, 0), rat(1)});
    d.legs.push_back({pt(1, 0, 0), pt(1, 0, 0), rat(1)});
    d.legs.push_back({pt(0, 1, 0), pt(0, 1, 0), rat(1)});
    CHECK_THROWS(delta_form(d, 0, 0));
    // congruent design with equal radii: Delta vanishes at the identity pose
    StudyPoint id;
    id.e = {Rational(1), Rational(0), Rational(0), Rational(0)};
    auto dq = delta_form(d, 1, 0);
    CHECK(dq.value(id.coords()) == 0);
}

TEST_CASE("constraint jacobian gradients") {
    StudyPoint id;
    id.e = {Rational(1), Rational(0), Rational(0), Rational(0)};
    auto psi_grad = study_quadric_form().gradient(id.coords());
    std::array<Rational, 8> want{Rational(0), Rational(0), Rational(0), Rational(0),
                                 Rational(1), Rational(0), Rational(0), Rational(0)};
    for (int i = 0; i < 8; ++i) CHECK(psi_grad[i] == want[i]);
    auto n_grad = norm_quadric_form().gradient(id.coords());
    CHECK(n_grad[0] == 2);
    for (int i = 1; i < 8; ++i) CHECK(n_grad[i] == 0);

    // float gradient matches central finite differences
    Rng rng(41);
    PodDesign d;
    for (int l = 0; l < 5; ++l) d.legs.push_back({rng.point(), rng.point(), rat(2)});
    StudyPointD p;
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 4; ++i) {
        p.e[i] = u(gen);
        p.f[i] = u(gen);
    }
    auto rows = constraint_jacobian(d, p);
    auto value_at = [&](const StudyPointD& q, std::size_t row) {
        if (row == 0) return q.study_quadric();
        auto leg = d.legs[row - 1];
        QuadraticForm8 qf = sphere_condition(leg.platform, leg.base, *leg.radius2);
        return qf.value(q.coords());
    };
    double h = 1e-6;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < 8; ++c) {
            StudyPointD hi = p, lo = p;
            (c < 4 ? hi.e[c] : hi.f[c - 4]) += h;
            (c < 4 ? lo.e[c] : lo.f[c - 4]) -= h;
            double fd = (value_at(hi, r) - value_at(lo, r)) / (2 * h);
            CHECK(std::abs(fd - rows[r][c]) <= 1e-5 * (1 + std::abs(rows[r][c])));
        }
    }
}
