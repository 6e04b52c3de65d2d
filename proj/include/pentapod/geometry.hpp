#pragma once

// Exact geometric predicates and map fitting on anchor configurations.
// Everything here is tolerance-free: inputs are rational, answers are exact.

#include "pentapod/design.hpp"
#include "pentapod/linalg_exact.hpp"
#include "pentapod/study.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pentapod::geo {

using pentapod::Point3;
using pentapod::Rational;

inline bool collinear(const Point3& a, const Point3& b, const Point3& c) {
    return cross(b - a, c - a) == Point3{Rational(0), Rational(0), Rational(0)};
}

inline bool coplanar(const std::vector<Point3>& pts) {
    if (pts.size() <= 3) return true;
    // find three affinely independent points, then test the rest
    for (std::size_t i = 1; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (collinear(pts[0], pts[i], pts[j])) continue;
            Point3 n = cross(pts[i] - pts[0], pts[j] - pts[0]);
            for (const auto& p : pts)
                if (sign(dot(n, p - pts[0])) != 0) return false;
            return true;
        }
    }
    return true;  // all collinear
}

inline bool all_collinear(const std::vector<Point3>& pts) {
    if (pts.size() <= 2) return true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i] != pts[0]) {
            for (const auto& p : pts)
                if (!collinear(pts[0], pts[i], p)) return false;
            return true;
        }
    }
    return true;  // all equal
}

// Partition of indices into blocks of pairwise equal points.
inline std::vector<std::vector<std::size_t>> coincidence_partition(const std::vector<Point3>& pts) {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> blk{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (!used[j] && pts[j] == pts[i]) {
                blk.push_back(j);
                used[j] = true;
            }
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

// Maximal subsets of >= 3 indices whose points are collinear (coincident
// points allowed on a line as long as the subset spans one line).
inline std::vector<std::vector<std::size_t>> maximal_collinear_subsets(
    const std::vector<Point3>& pts) {
    std::vector<std::vector<std::size_t>> out;
    std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pts[i] == pts[j]) continue;
            std::vector<std::size_t> on;
            for (std::size_t k = 0; k < n; ++k)
                if (collinear(pts[i], pts[j], pts[k])) on.push_back(k);
            if (on.size() < 3) continue;
            // record each line once: (i,j) must be its first pair of distinct points
            std::size_t first = on[0];
            std::size_t second = first;
            for (std::size_t k : on)
                if (pts[k] != pts[first]) {
                    second = k;
                    break;
                }
            if (first == i && second == j) out.push_back(on);
        }
    }
    return out;
}

struct ParallelSplit {
    std::array<std::size_t, 3> line_g;  // three anchor indices on g
    std::array<std::size_t, 2> line_h;  // two anchor indices spanning h parallel to g
};

// Splits {0..4} into 3+2 with the triple collinear on g and the pair spanning
// a distinct parallel line h (Theorem 1a(d) shape, one side).
inline std::vector<ParallelSplit> parallel_line_splits(const std::vector<Point3>& pts) {
    std::vector<ParallelSplit> out;
    if (pts.size() != 5) return out;
    std::array<std::size_t, 5> idx{0, 1, 2, 3, 4};
    std::sort(idx.begin(), idx.end());
    // choose the pair
    for (std::size_t a = 0; a < 5; ++a) {
        for (std::size_t b = a + 1; b < 5; ++b) {
            if (pts[a] == pts[b]) continue;
            std::array<std::size_t, 3> tri{};
            std::size_t t = 0;
            for (std::size_t k = 0; k < 5; ++k)
                if (k != a && k != b) tri[t++] = k;
            if (!collinear(pts[tri[0]], pts[tri[1]], pts[tri[2]])) continue;
            // direction of g
            Point3 dg{Rational(0), Rational(0), Rational(0)};
            if (pts[tri[1]] != pts[tri[0]])
                dg = pts[tri[1]] - pts[tri[0]];
            else if (pts[tri[2]] != pts[tri[0]])
                dg = pts[tri[2]] - pts[tri[0]];
            else
                continue;  // triple degenerate to a point
            Point3 dh = pts[b] - pts[a];
            if (cross(dg, dh) != Point3{Rational(0), Rational(0), Rational(0)}) continue;
            if (collinear(pts[tri[0]], pts[tri[1]], pts[a]) &&
                collinear(pts[tri[0]], pts[tri[1]], pts[b]))
                continue;  // same line, not two parallel lines
            out.push_back({tri, {a, b}});
        }
    }
    return out;
}

struct Profile {
    std::vector<std::vector<std::size_t>> platform_blocks, base_blocks;
    std::vector<std::vector<std::size_t>> platform_lines, base_lines;
    bool platform_coplanar = false, base_coplanar = false;
    bool platform_collinear = false, base_collinear = false;
    std::vector<ParallelSplit> platform_splits, base_splits;
};

inline Profile coincidence_collinearity_profile(const PodDesign& d) {
    std::vector<Point3> ms, Ms;
    for (const auto& l : d.legs) {
        ms.push_back(l.platform);
        Ms.push_back(l.base);
    }
    Profile p;
    p.platform_blocks = coincidence_partition(ms);
    p.base_blocks = coincidence_partition(Ms);
    p.platform_lines = maximal_collinear_subsets(ms);
    p.base_lines = maximal_collinear_subsets(Ms);
    p.platform_coplanar = coplanar(ms);
    p.base_coplanar = coplanar(Ms);
    p.platform_collinear = all_collinear(ms);
    p.base_collinear = all_collinear(Ms);
    p.platform_splits = parallel_line_splits(ms);
    p.base_splits = parallel_line_splits(Ms);
    return p;
}

// ---------------------------------------------------------------------------
// Map fitting.
// ---------------------------------------------------------------------------

enum class MapKind { Affinity, Similarity, Congruence, ReflectionCongruence, LineProjectivity };

struct PlanarMap {
    MapKind kind;
    // 3D affine representation x -> A x + t valid on the source span
    // (for LineProjectivity A, t are unused).
    std::array<std::array<Rational, 3>, 3> linear{};
    Point3 translation{Rational(0), Rational(0), Rational(0)};
    Rational scale2 = 1;       // squared scale factor for similarities
    bool orientation_flip = false;  // for congruences of non-coplanar sets
    // cross-ratio data for line projectivities: parameters mapped by
    // t -> (alpha t + beta) / (gamma t + delta)
    std::array<Rational, 4> moebius{Rational(1), Rational(0), Rational(0), Rational(1)};
};

inline Point3 apply_map(const PlanarMap& m, const Point3& x) {
    Point3 y{Rational(0), Rational(0), Rational(0)};
    for (int i = 0; i < 3; ++i)
        y[i] = m.linear[i][0] * x[0] + m.linear[i][1] * x[1] + m.linear[i][2] * x[2] +
               m.translation[i];
    return y;
}

namespace detail {

// Affine map sending source[0..3] (affinely independent) to target[0..3].
inline std::optional<PlanarMap> affine_from_tetra(const std::vector<Point3>& s,
                                                  const std::vector<Point3>& t,
                                                  const std::array<std::size_t, 4>& ix) {
    QMatrix a(9, std::vector<Rational>(9, Rational(0)));
    std::vector<Rational> rhs(9, Rational(0));
    // rows: for k=1..3, A*(s[ik]-s[i0]) = t[ik]-t[i0]
    for (int k = 1; k <= 3; ++k) {
        Point3 ds = s[ix[k]] - s[ix[0]];
        Point3 dt = t[ix[k]] - t[ix[0]];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[(k - 1) * 3 + r][r * 3 + c] = ds[c];
            rhs[(k - 1) * 3 + r] = dt[r];
        }
    }
    auto x = solve(a, rhs);
    if (!x) return std::nullopt;
    PlanarMap m;
    m.kind = MapKind::Affinity;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.linear[r][c] = (*x)[r * 3 + c];
    Point3 as = apply_map(m, s[ix[0]]);  // translation currently 0
    m.translation = t[ix[0]] - as;
    return m;
}

inline std::optional<std::array<std::size_t, 4>> affine_frame(const std::vector<Point3>& s) {
    std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    QMatrix m{{s[j][0] - s[i][0], s[j][1] - s[i][1], s[j][2] - s[i][2]},
                              {s[k][0] - s[i][0], s[k][1] - s[i][1], s[k][2] - s[i][2]},
                              {s[l][0] - s[i][0], s[l][1] - s[i][1], s[l][2] - s[i][2]}};
                    if (sign(determinant(m)) != 0) return std::array<std::size_t, 4>{i, j, k, l};
                }
    return std::nullopt;
}

// Rational parameters of collinear points along their carrier line.
inline std::optional<std::vector<Rational>> line_parameters(const std::vector<Point3>& pts) {
    std::size_t ref = 0, other = 0;
    bool found = false;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] != pts[0]) {
            other = i;
            found = true;
            break;
        }
    if (!found) return std::nullopt;
    Point3 d = pts[other] - pts[ref];
    Rational dd = dot(d, d);
    std::vector<Rational> ts;
    for (const auto& p : pts) {
        if (!collinear(pts[ref], pts[other], p)) return std::nullopt;
        ts.push_back(dot(p - pts[ref], d) / dd);
    }
    return ts;
}

}  // namespace detail

// Fit an exact map of the requested kind carrying source[i] -> target[i].
inline std::optional<PlanarMap> fit_map(const std::vector<Point3>& source,
                                        const std::vector<Point3>& target, MapKind kind) {
    if (source.size() != target.size() || source.size() < 2) return std::nullopt;
    std::size_t n = source.size();

    if (kind == MapKind::LineProjectivity) {
        auto ts = detail::line_parameters(source);
        auto us = detail::line_parameters(target);
        if (!ts || !us) return std::nullopt;
        // fit u = (alpha t + beta) / (gamma t + delta) from three pairs with
        // distinct parameters, verify the rest
        std::array<int, 3> pick{-1, -1, -1};
        int got = 0;
        for (std::size_t i = 0; i < n && got < 3; ++i) {
            bool dup = false;
            for (int k = 0; k < got; ++k)
                if ((*ts)[pick[k]] == (*ts)[i]) dup = true;
            if (!dup) pick[got++] = static_cast<int>(i);
        }
        if (got < 3) return std::nullopt;
        QMatrix a;
        std::vector<Rational> rhs;
        // alpha t + beta - gamma t u - delta u = 0; set delta = 1 (check gamma t + 1 != 0)
        for (int k = 0; k < 3; ++k) {
            Rational t = (*ts)[pick[k]], u = (*us)[pick[k]];
            a.push_back({t, Rational(1), -t * u});
            rhs.push_back(u);
        }
        auto x = solve(a, rhs);
        PlanarMap m;
        m.kind = kind;
        if (x) {
            m.moebius = {(*x)[0], (*x)[1], (*x)[2], Rational(1)};
        } else {
            // delta = 0: alpha t + beta = gamma t u; set gamma = 1
            QMatrix a2;
            std::vector<Rational> r2;
            for (int k = 0; k < 3; ++k) {
                Rational t = (*ts)[pick[k]], u = (*us)[pick[k]];
                a2.push_back({t, Rational(1)});
                r2.push_back(t * u);
            }
            auto x2 = solve(a2, r2);
            if (!x2) return std::nullopt;
            m.moebius = {(*x2)[0], (*x2)[1], Rational(1), Rational(0)};
        }
        // regularity: alpha*delta - beta*gamma != 0
        if (sign(m.moebius[0] * m.moebius[3] - m.moebius[1] * m.moebius[2]) == 0) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) {
            Rational t = (*ts)[i], u = (*us)[i];
            if (m.moebius[0] * t + m.moebius[1] != u * (m.moebius[2] * t + m.moebius[3]))
                return std::nullopt;
        }
        return m;
    }

    if (kind == MapKind::Similarity || kind == MapKind::Congruence ||
        kind == MapKind::ReflectionCongruence) {
        // squared-distance profile comparison
        Rational s2;
        bool have = false;
        for (std::size_t i = 0; i < n && !have; ++i)
            for (std::size_t j = i + 1; j < n && !have; ++j) {
                Rational ds = norm2(source[j] - source[i]);
                if (sign(ds) != 0) {
                    s2 = norm2(target[j] - target[i]) / ds;
                    have = true;
                }
            }
        if (!have) return std::nullopt;  // all points equal
        if (kind != MapKind::Similarity && s2 != 1) return std::nullopt;
        if (sign(s2) == 0) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (norm2(target[j] - target[i]) != s2 * norm2(source[j] - source[i]))
                    return std::nullopt;
        // orientation for non-coplanar sets
        bool flip = false;
        auto frame = detail::affine_frame(source);
        if (frame) {
            auto det3 = [](const Point3& a, const Point3& b, const Point3& c) -> Rational {
                return dot(a, cross(b, c));
            };
            Rational vs = det3(source[(*frame)[1]] - source[(*frame)[0]],
                               source[(*frame)[2]] - source[(*frame)[0]],
                               source[(*frame)[3]] - source[(*frame)[0]]);
            Rational vt = det3(target[(*frame)[1]] - target[(*frame)[0]],
                               target[(*frame)[2]] - target[(*frame)[0]],
                               target[(*frame)[3]] - target[(*frame)[0]]);
            // vt = +-(s^2)^(3/2) vs; compare signs only
            flip = sign(vs) != sign(vt);
            if (kind == MapKind::Congruence && flip) return std::nullopt;
            if (kind == MapKind::ReflectionCongruence && !flip) return std::nullopt;
        }
        // coplanar sets admit both orientations, so Congruence and
        // ReflectionCongruence both succeed there.
        PlanarMap m;
        m.kind = kind;
        m.scale2 = s2;
        m.orientation_flip = flip;
        // witness affine matrix when a frame exists (not needed for planar
        // classification decisions, which rely on the distance profile)
        if (frame) {
            auto am = detail::affine_from_tetra(source, target, *frame);
            if (am) {
                m.linear = am->linear;
                m.translation = am->translation;
            }
        }
        return m;
    }

    // Affinity: exact affine dependence transfer.
    // Find an affine frame of the source of maximal dimension and check that
    // every affine relation among source points holds among targets.
    {
        // try 3D frame first
        auto frame = detail::affine_frame(source);
        if (frame) {
            auto m = detail::affine_from_tetra(source, target, *frame);
            if (!m) return std::nullopt;
            for (std::size_t i = 0; i < n; ++i)
                if (apply_map(*m, source[i]) != target[i]) return std::nullopt;
            QMatrix lin{{m->linear[0][0], m->linear[0][1], m->linear[0][2]},
                        {m->linear[1][0], m->linear[1][1], m->linear[1][2]},
                        {m->linear[2][0], m->linear[2][1], m->linear[2][2]}};
            if (sign(determinant(lin)) == 0) return std::nullopt;
            m->kind = MapKind::Affinity;
            return m;
        }
        // planar case: express every point in a 2-point+origin affine basis
        std::size_t i0 = 0;
        std::optional<std::pair<std::size_t, std::size_t>> basis;
        for (std::size_t i = 1; i < n && !basis; ++i)
            for (std::size_t j = i + 1; j < n && !basis; ++j)
                if (!collinear(source[i0], source[i], source[j])) basis = {i, j};
        if (!basis) return std::nullopt;  // source collinear: affinity not determined
        auto [b1, b2] = *basis;
        Point3 u = source[b1] - source[i0], v = source[b2] - source[i0];
        Point3 U = target[b1] - target[i0], V = target[b2] - target[i0];
        if (collinear(target[i0], target[b1], target[b2])) return std::nullopt;  // singular
        // coordinates of source points in (u,v): solve [u v] * (x,y) = p - p0 (3 eqs, consistent)
        for (std::size_t i = 0; i < n; ++i) {
            Point3 d = source[i] - source[i0];
            // solve x*u + y*v = d exactly: use two independent rows
            QMatrix a;
            std::vector<Rational> rhs;
            for (int r = 0; r < 3; ++r) {
                a.push_back({u[r], v[r]});
                rhs.push_back(d[r]);
            }
            // pick two rows with nonzero det
            std::optional<std::pair<Rational, Rational>> xy;
            for (int r1 = 0; r1 < 3 && !xy; ++r1)
                for (int r2 = r1 + 1; r2 < 3 && !xy; ++r2) {
                    Rational det = a[r1][0] * a[r2][1] - a[r1][1] * a[r2][0];
                    if (sign(det) == 0) continue;
                    Rational x = (rhs[r1] * a[r2][1] - rhs[r2] * a[r1][1]) / det;
                    Rational y = (a[r1][0] * rhs[r2] - a[r2][0] * rhs[r1]) / det;
                    xy = {x, y};
                }
            if (!xy) return std::nullopt;
            auto [x, y] = *xy;
            // consistency on the third row is implied by coplanarity; verify anyway
            Point3 rec = source[i0] + x * u + y * v;
            if (rec != source[i]) return std::nullopt;  // source not coplanar with basis
            Point3 timg = target[i0] + x * U + y * V;
            if (timg != target[i]) return std::nullopt;
        }
        PlanarMap m;
        m.kind = MapKind::Affinity;
        // 3D witness: A maps u->U, v->V, u x v -> U x V (completes to 3D)
        Point3 w = cross(u, v), W = cross(U, V);
        QMatrix a(9, std::vector<Rational>(9, Rational(0)));
        std::vector<Rational> rhs(9, Rational(0));
        const Point3* ds[3] = {&u, &v, &w};
        const Point3* dt[3] = {&U, &V, &W};
        for (int k = 0; k < 3; ++k)
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) a[k * 3 + r][r * 3 + c] = (*ds[k])[c];
                rhs[k * 3 + r] = (*dt[k])[r];
            }
        auto x = solve(a, rhs);
        if (!x) return std::nullopt;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.linear[r][c] = (*x)[r * 3 + c];
        m.translation = target[i0] - apply_map(m, source[i0]);
        return m;
    }
}

// Directions d (in the source plane spanned by u,v) with |A d| = |d|.
enum class IsometricDirections { All, Two, One, NoneReal };

struct DirectionsResult {
    IsometricDirections kind;
    std::vector<Point3> directions;  // representatives, up to sign
};

inline DirectionsResult affine_isometric_directions(const PlanarMap& map, const Point3& u,
                                                    const Point3& v) {
    // q(x,y) = |A(xu+yv)|^2 - |xu+yv|^2, a rational binary quadratic
    Point3 Au = apply_map(map, u) - map.translation;
    Point3 Av = apply_map(map, v) - map.translation;
    Rational a = norm2(Au) - norm2(u);
    Rational b = dot(Au, Av) - dot(u, v);  // half the xy coefficient
    Rational c = norm2(Av) - norm2(v);
    if (sign(a) == 0 && sign(b) == 0 && sign(c) == 0) return {IsometricDirections::All, {}};
    // a x^2 + 2 b x y + c y^2 = 0
    DirectionsResult out{IsometricDirections::NoneReal, {}};
    Rational disc = b * b - a * c;
    int ds = sign(disc);
    if (ds < 0) return out;
    auto dir_of = [&](const Rational& x, const Rational& y) { return x * u + y * v; };
    if (sign(a) == 0) {
        // y (2 b x + c y) = 0
        out.directions.push_back(dir_of(1, 0));
        if (sign(b) != 0) {
            out.directions.push_back(dir_of(-c, 2 * b));
        }
    } else {
        auto sq = sqrt_exact(disc);
        if (ds == 0) {
            out.directions.push_back(dir_of(-b, a));
        } else if (sq) {
            out.directions.push_back(dir_of(-b + *sq, a));
            out.directions.push_back(dir_of(-b - *sq, a));
        } else {
            // two real irrational directions; report count only
            out.kind = IsometricDirections::Two;
            return out;
        }
    }
    // dedupe projectively
    if (out.directions.size() == 2) {
        const Point3 &d1 = out.directions[0], &d2 = out.directions[1];
        if (cross(d1, d2) == Point3{Rational(0), Rational(0), Rational(0)})
            out.directions.pop_back();
    }
    out.kind = out.directions.size() == 2 ? IsometricDirections::Two : IsometricDirections::One;
    return out;
}

// ---------------------------------------------------------------------------
// Conic through five planar points.
// ---------------------------------------------------------------------------

struct ConicResult {
    bool unique = false;     // rank 5 incidence matrix
    bool regular = false;    // det of conic matrix nonzero
    std::array<Rational, 6> coeffs{};  // a x^2 + b xy + c y^2 + d x + e y + f
};

inline ConicResult conic_through_five(const std::vector<std::array<Rational, 2>>& pts) {
    if (pts.size() != 5) throw std::invalid_argument("conic_through_five: need 5 points");
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (pts[i] == pts[j]) throw std::invalid_argument("conic_through_five: coincident points");
    QMatrix m;
    for (const auto& p : pts) {
        const Rational &x = p[0], &y = p[1];
        m.push_back({x * x, x * y, y * y, x, y, Rational(1)});
    }
    ConicResult r;
    auto k = kernel_vector(m);
    if (!k) return r;  // rank deficient: infinitely many conics
    r.unique = true;
    for (int i = 0; i < 6; ++i) r.coeffs[i] = (*k)[i];
    const Rational &a = r.coeffs[0], &b = r.coeffs[1], &c = r.coeffs[2], &d = r.coeffs[3],
                   &e = r.coeffs[4], &f = r.coeffs[5];
    QMatrix cm{{a, b / 2, d / 2}, {b / 2, c, e / 2}, {d / 2, e / 2, f}};
    r.regular = sign(determinant(cm)) != 0;
    return r;
}

// ---------------------------------------------------------------------------
// Architectural singularity (probabilistic rank test on leg Pluecker lines).
// ---------------------------------------------------------------------------

struct SingularityVerdict {
    bool regular = false;  // certified by a witness pose of full rank
    std::size_t samples_used = 0;
    StudyPoint witness;    // pose with full-rank Jacobian when regular
};

inline QMatrix pluecker_matrix(const PodDesign& d, const Mat3<Rational>& rot, const Point3& t) {
    QMatrix rows;
    for (const auto& leg : d.legs) {
        Vec3<Rational> m{leg.platform[0], leg.platform[1], leg.platform[2]};
        auto w = mat_apply(rot, m);
        Point3 wp{w[0] + t[0], w[1] + t[1], w[2] + t[2]};
        Point3 dir = wp - leg.base;
        Point3 mom = cross(leg.base, dir);
        rows.push_back({dir[0], dir[1], dir[2], mom[0], mom[1], mom[2]});
    }
    return rows;
}

inline SingularityVerdict architecturally_singular(const PodDesign& d, std::size_t samples = 20,
                                                   uint32_t seed = 12345) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<long> coef(-8, 8);
    SingularityVerdict v;
    std::size_t n = d.size();
    for (std::size_t s = 0; s < samples; ++s) {
        ++v.samples_used;
        StudyPoint q;
        do {
            for (int i = 0; i < 4; ++i) q.e[i] = rat(coef(gen), 1 + (coef(gen) & 3));
        } while (sign(q.norm_quadric()) == 0);
        Point3 t{rat(coef(gen), 3), rat(coef(gen), 3), rat(coef(gen), 3)};
        auto rot = rotation_homogeneous(q.e);
        Rational nq = q.norm_quadric();
        for (auto& row : rot)
            for (auto& x : row) x /= nq;
        auto rowsm = pluecker_matrix(d, rot, t);
        if (rank(rowsm) == n) {
            v.regular = true;
            v.witness = q;
            // encode the translation used into the witness dual part via
            // f = 1/2 t * e (qubrnion product), so the pose is reproducible
            Rational t1 = t[0], t2 = t[1], t3 = t[2];
            const auto& e = q.e;
            v.witness.f[0] = (-t1 * e[1] - t2 * e[2] - t3 * e[3]) / 2;
            v.witness.f[1] = (t1 * e[0] + t2 * e[3] - t3 * e[2]) / 2;
            v.witness.f[2] = (-t1 * e[3] + t2 * e[0] + t3 * e[1]) / 2;
            v.witness.f[3] = (t1 * e[2] - t2 * e[1] + t3 * e[0]) / 2;
            return v;
        }
    }
    return v;  // all sampled poses rank-deficient: singular (probabilistic)
}

// ---------------------------------------------------------------------------
// Cylinder of revolution through five points with a designated ruling.
// ---------------------------------------------------------------------------

enum class CylinderKind { RealCylinder, TwoRealSkewLines, None };

inline CylinderKind on_revolution_cylinder(const std::vector<Point3>& pts, std::size_t ri,
                                           std::size_t rj) {
    if (pts.size() != 5 || ri == rj || pts[ri] == pts[rj]) return CylinderKind::None;
    Point3 d = pts[rj] - pts[ri];
    Rational dd = dot(d, d);
    // the split alternative first: all five points on two real skew lines,
    // one of them the designated ruling
    {
        std::vector<std::size_t> off;
        for (std::size_t k = 0; k < 5; ++k)
            if (!collinear(pts[ri], pts[rj], pts[k])) off.push_back(k);
        if (off.size() >= 2) {
            std::size_t second = off[0];
            for (std::size_t k : off)
                if (pts[k] != pts[off[0]]) {
                    second = k;
                    break;
                }
            if (second != off[0]) {
                bool lines = true;
                for (std::size_t k : off)
                    if (!collinear(pts[off[0]], pts[second], pts[k])) lines = false;
                if (lines) {
                    Point3 d2 = pts[second] - pts[off[0]];
                    if (cross(d, d2) != Point3{Rational(0), Rational(0), Rational(0)} &&
                        sign(dot(pts[off[0]] - pts[ri], cross(d, d2))) != 0)
                        return CylinderKind::TwoRealSkewLines;
                }
            }
        }
    }
    // project all points along d onto the plane through origin normal to d,
    // in the (u,v) rational basis of that plane
    Point3 ub{-d[1], d[0], Rational(0)};
    if (ub == Point3{Rational(0), Rational(0), Rational(0)}) ub = {Rational(0), -d[2], d[1]};
    Point3 vb = cross(d, ub);
    Rational guu = dot(ub, ub), guv = dot(ub, vb), gvv = dot(vb, vb);
    auto project = [&](const Point3& p) {
        Point3 q = p - (dot(p, d) / dd) * d;
        // coordinates in (u,v): since u,v orthogonal here (v = d x u, u.v=0)
        return std::array<Rational, 2>{dot(q, ub) / guu, dot(q, vb) / gvv};
    };
    std::vector<std::array<Rational, 2>> proj;
    for (const auto& p : pts) proj.push_back(project(p));
    // circle in Gram metric: guu x^2 + 2 guv xy + gvv y^2 + L x + M y + K = 0
    auto qval = [&](const std::array<Rational, 2>& p) -> Rational {
        return guu * p[0] * p[0] + 2 * guv * p[0] * p[1] + gvv * p[1] * p[1];
    };
    // the two ruling points project to the same point; dedupe projections
    std::vector<std::array<Rational, 2>> distinct;
    for (const auto& p : proj) {
        bool dup = false;
        for (const auto& q : distinct) dup = dup || q == p;
        if (!dup) distinct.push_back(p);
    }
    bool cylinder = false;
    if (distinct.size() >= 3) {
        QMatrix a;
        std::vector<Rational> rhs;
        for (std::size_t k = 0; k < 3; ++k) {
            a.push_back({distinct[k][0], distinct[k][1], Rational(1)});
            rhs.push_back(-qval(distinct[k]));
        }
        auto x = solve(a, rhs);
        if (x) {
            cylinder = true;
            for (const auto& p : distinct) {
                if (sign(qval(p) + (*x)[0] * p[0] + (*x)[1] * p[1] + (*x)[2]) != 0) cylinder = false;
            }
        }
    }
    if (cylinder && distinct.size() >= 3) return CylinderKind::RealCylinder;
    return CylinderKind::None;
}

// ---------------------------------------------------------------------------
// Spherical 3-legged RPR self-motion cases (unit-sphere anchor points).
// ---------------------------------------------------------------------------

enum class SphericalRpr { CaseI, CaseII, None };

template <typename P, typename Eq>
SphericalRpr spherical_rpr_impl(const std::array<P, 3>& m, const std::array<P, 3>& M, Eq eq) {
    // case II: all base points coincide (or, after swap, all platform points)
    if (eq(M[0], M[1]) && eq(M[1], M[2])) return SphericalRpr::CaseII;
    if (eq(m[0], m[1]) && eq(m[1], m[2])) return SphericalRpr::CaseII;  // swapped variant
    // case I: two platform points coincide with the remaining base point
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& pr : perms) {
        const P &m1 = m[pr[0]], &m2 = m[pr[1]], &m3 = m[pr[2]];
        const P& M1 = M[pr[0]];
        if (eq(m2, m3) && eq(m2, M1)) return SphericalRpr::CaseI;
        const P &Mm2 = M[pr[1]], &Mm3 = M[pr[2]];
        const P& mm1 = m[pr[0]];
        if (eq(Mm2, Mm3) && eq(Mm2, mm1)) return SphericalRpr::CaseI;  // swapped
    }
    return SphericalRpr::None;
}

inline SphericalRpr spherical_rpr_self_motion(const std::array<Point3, 3>& m,
                                              const std::array<Point3, 3>& M) {
    return spherical_rpr_impl(m, M, [](const Point3& a, const Point3& b) { return a == b; });
}

inline SphericalRpr spherical_rpr_self_motion(const std::array<std::array<double, 3>, 3>& m,
                                              const std::array<std::array<double, 3>, 3>& M,
                                              double tol = 1e-9) {
    auto eq = [tol](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        double s = 0;
        for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return s <= tol * tol;
    };
    return spherical_rpr_impl(m, M, eq);
}

}  // namespace pentapod::geo
