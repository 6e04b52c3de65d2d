#pragma once

// Study-parameter kinematics: the quadrics Psi and N, sphere conditions as
// 8x8 quadratic forms, rotation/translation extraction, and constraint
// Jacobians. Everything exists in an exact rational flavor and a double
// flavor; bond computations use the exact one, motion sampling the other.

#include "pentapod/design.hpp"
#include "pentapod/multipoly.hpp"
#include "pentapod/rational.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pentapod {

template <typename S>
struct StudyPointT {
    std::array<S, 4> e{};
    std::array<S, 4> f{};

    S norm_quadric() const { return e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3]; }
    S study_quadric() const { return e[0] * f[0] + e[1] * f[1] + e[2] * f[2] + e[3] * f[3]; }
    std::array<S, 8> coords() const { return {e[0], e[1], e[2], e[3], f[0], f[1], f[2], f[3]}; }
};

using StudyPoint = StudyPointT<Rational>;
using StudyPointD = StudyPointT<double>;

inline StudyPointD to_double(const StudyPoint& p) {
    StudyPointD q;
    for (int i = 0; i < 4; ++i) {
        q.e[i] = p.e[i].get_d();
        q.f[i] = p.f[i].get_d();
    }
    return q;
}

// Rescale so N = 1 and e0 >= 0 (antipodal representative fixed).
inline StudyPointD normalized(const StudyPointD& p) {
    double n = std::sqrt(p.norm_quadric());
    if (n == 0) throw std::invalid_argument("study point on exceptional cone");
    double s = (p.e[0] < 0 || (p.e[0] == 0 && p.e[1] < 0)) ? -1.0 / n : 1.0 / n;
    StudyPointD q;
    for (int i = 0; i < 4; ++i) {
        q.e[i] = p.e[i] * s;
        q.f[i] = p.f[i] * s;
    }
    return q;
}

template <typename S>
using Mat3 = std::array<std::array<S, 3>, 3>;
template <typename S>
using Vec3 = std::array<S, 3>;

// Unnormalized rotation matrix (entries quadratic in e); R_h = N * R.
template <typename S>
Mat3<S> rotation_homogeneous(const std::array<S, 4>& e) {
    const S& e0 = e[0];
    const S& e1 = e[1];
    const S& e2 = e[2];
    const S& e3 = e[3];
    auto twice = [](const S& x) -> S { return x + x; };
    return {{{e0 * e0 + e1 * e1 - e2 * e2 - e3 * e3, twice(e1 * e2 - e0 * e3), twice(e1 * e3 + e0 * e2)},
             {twice(e1 * e2 + e0 * e3), e0 * e0 - e1 * e1 + e2 * e2 - e3 * e3, twice(e2 * e3 - e0 * e1)},
             {twice(e1 * e3 - e0 * e2), twice(e2 * e3 + e0 * e1), e0 * e0 - e1 * e1 - e2 * e2 + e3 * e3}}};
}

template <typename S>
Vec3<S> translation_homogeneous(const StudyPointT<S>& p) {
    const auto& e = p.e;
    const auto& f = p.f;
    auto twice = [](const S& x) -> S { return x + x; };
    return {twice(e[0] * f[1] - e[1] * f[0] + e[2] * f[3] - e[3] * f[2]),
            twice(e[0] * f[2] - e[2] * f[0] + e[3] * f[1] - e[1] * f[3]),
            twice(e[0] * f[3] - e[3] * f[0] + e[1] * f[2] - e[2] * f[1])};
}

// R and t of the displacement x -> R x + t. Requires N != 0.
template <typename S>
std::pair<Mat3<S>, Vec3<S>> rotation_translation(const StudyPointT<S>& p) {
    S n = p.norm_quadric();
    if (n == S(0)) throw std::domain_error("rotation_translation: point on exceptional cone N=0");
    Mat3<S> r = rotation_homogeneous(p.e);
    Vec3<S> t = translation_homogeneous(p);
    for (auto& row : r)
        for (auto& x : row) x = x / n;
    for (auto& x : t) x = x / n;
    return {r, t};
}

template <typename S>
Vec3<S> mat_apply(const Mat3<S>& r, const Vec3<S>& x) {
    return {r[0][0] * x[0] + r[0][1] * x[1] + r[0][2] * x[2],
            r[1][0] * x[0] + r[1][1] * x[1] + r[1][2] * x[2],
            r[2][0] * x[0] + r[2][1] * x[1] + r[2][2] * x[2]};
}

// ---------------------------------------------------------------------------
// Quadratic forms on Study space.
// ---------------------------------------------------------------------------

// Symmetric 8x8 rational matrix Q; value(x) = x^T Q x, gradient = 2 Q x.
struct QuadraticForm8 {
    std::array<std::array<Rational, 8>, 8> m{};

    void add_sym(int i, int j, const Rational& v) {
        if (i == j) {
            m[i][i] += v;
        } else {
            Rational h = v / 2;
            m[i][j] += h;
            m[j][i] += h;
        }
    }

    template <typename S>
    S value(const std::array<S, 8>& x) const {
        S acc = S(0);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                Rational c = m[i][j];
                if (sign(c) == 0) continue;
                if constexpr (std::is_same_v<S, Rational>)
                    acc += c * x[i] * x[j];
                else
                    acc += c.get_d() * x[i] * x[j];
            }
        return acc;
    }

    template <typename S>
    std::array<S, 8> gradient(const std::array<S, 8>& x) const {
        std::array<S, 8> g{};
        for (int i = 0; i < 8; ++i) {
            S acc = S(0);
            for (int j = 0; j < 8; ++j) {
                Rational c = m[i][j];
                if (sign(c) == 0) continue;
                if constexpr (std::is_same_v<S, Rational>)
                    acc += c * x[j];
                else
                    acc += c.get_d() * x[j];
            }
            g[i] = S(2) * acc;
        }
        return g;
    }

    QuadraticForm8& operator+=(const QuadraticForm8& o) {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m[i][j] += o.m[i][j];
        return *this;
    }
    friend QuadraticForm8 operator*(const Rational& s, const QuadraticForm8& q) {
        QuadraticForm8 r = q;
        for (auto& row : r.m)
            for (auto& x : row) x *= s;
        return r;
    }
    friend QuadraticForm8 operator-(const QuadraticForm8& a, const QuadraticForm8& b) {
        QuadraticForm8 r = a;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) r.m[i][j] -= b.m[i][j];
        return r;
    }

    // Expand into a MultiPoly over a ring containing e0..e3,f0..f3.
    MultiPoly to_poly(const RingPtr& ring) const {
        static const char* names[8] = {"e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3"};
        std::vector<Term> ts;
        for (int i = 0; i < 8; ++i) {
            for (int j = i; j < 8; ++j) {
                Rational c = i == j ? m[i][i] : m[i][j] * 2;
                if (sign(c) == 0) continue;
                Term t;
                t.e[ring->at(names[i])] += 1;
                t.e[ring->at(names[j])] += 1;
                t.deg = 2;
                t.c = c;
                ts.push_back(std::move(t));
            }
        }
        return MultiPoly::from_terms(ring, std::move(ts));
    }
};

inline QuadraticForm8 study_quadric_form() {  // Psi = sum e_i f_i
    QuadraticForm8 q;
    for (int i = 0; i < 4; ++i) q.add_sym(i, 4 + i, 1);
    return q;
}

inline QuadraticForm8 norm_quadric_form() {  // N = sum e_i^2
    QuadraticForm8 q;
    for (int i = 0; i < 4; ++i) q.add_sym(i, i, 1);
    return q;
}

// Husty's sphere condition for anchor pair (m, M). The squared radius enters
// as -R^2 * N; when the radius is symbolic keep `geometric` and N separate.
inline QuadraticForm8 sphere_condition_geometric(const Point3& m, const Point3& M) {
    const Rational &a = m[0], &b = m[1], &c = m[2];
    const Rational &A = M[0], &B = M[1], &C = M[2];
    QuadraticForm8 q;
    Rational k = dot(m, m) + dot(M, M);
    for (int i = 0; i < 4; ++i) q.add_sym(i, i, k);
    q.add_sym(0, 0, -2 * (a * A + b * B + c * C));
    q.add_sym(1, 1, -2 * (a * A - b * B - c * C));
    q.add_sym(2, 2, 2 * (a * A - b * B + c * C));
    q.add_sym(3, 3, 2 * (a * A + b * B - c * C));
    q.add_sym(0, 1, 4 * (c * B - b * C));
    q.add_sym(0, 2, -4 * (c * A - a * C));
    q.add_sym(0, 3, 4 * (b * A - a * B));
    q.add_sym(1, 2, -4 * (b * A + a * B));
    q.add_sym(1, 3, -4 * (c * A + a * C));
    q.add_sym(2, 3, -4 * (c * B + b * C));
    // f-linear block
    q.add_sym(0, 5, 4 * (a - A));   // e0 f1
    q.add_sym(1, 4, -4 * (a - A));  // e1 f0
    q.add_sym(0, 6, 4 * (b - B));
    q.add_sym(2, 4, -4 * (b - B));
    q.add_sym(0, 7, 4 * (c - C));
    q.add_sym(3, 4, -4 * (c - C));
    q.add_sym(3, 6, 4 * (a + A));
    q.add_sym(2, 7, -4 * (a + A));
    q.add_sym(1, 7, 4 * (b + B));
    q.add_sym(3, 5, -4 * (b + B));
    q.add_sym(2, 5, 4 * (c + C));
    q.add_sym(1, 6, -4 * (c + C));
    for (int i = 4; i < 8; ++i) q.add_sym(i, i, 4);
    return q;
}

// Sphere condition with a known squared radius folded in.
inline QuadraticForm8 sphere_condition(const Point3& m, const Point3& M, const Rational& r2) {
    QuadraticForm8 q = sphere_condition_geometric(m, M);
    QuadraticForm8 n = norm_quadric_form();
    return q - r2 * n;
}

// Lambda_i - Lambda_j; the f-quadratic parts cancel, so the result is linear
// in f0..f3. Radii enter as (r_j^2 - r_i^2) * N when both are known.
inline QuadraticForm8 delta_form(const PodDesign& d, std::size_t i, std::size_t j) {
    if (i == j || i >= d.size() || j >= d.size()) throw std::invalid_argument("delta: bad leg index");
    QuadraticForm8 q = sphere_condition_geometric(d.legs[i].platform, d.legs[i].base) -
                       sphere_condition_geometric(d.legs[j].platform, d.legs[j].base);
    if (d.legs[i].radius2 && d.legs[j].radius2) {
        QuadraticForm8 n = norm_quadric_form();
        q += (*d.legs[j].radius2 - *d.legs[i].radius2) * n;
    }
    return q;
}

// Exact Jacobian of (Psi, Lambda_1..Lambda_n) at a study point; (n+1) x 8.
template <typename S>
std::vector<std::array<S, 8>> constraint_jacobian(const PodDesign& d, const StudyPointT<S>& p) {
    std::vector<std::array<S, 8>> rows;
    auto x = p.coords();
    rows.push_back(study_quadric_form().gradient(x));
    for (const auto& leg : d.legs) {
        Rational r2 = leg.radius2 ? *leg.radius2 : Rational(0);
        QuadraticForm8 q = sphere_condition(leg.platform, leg.base, r2);
        rows.push_back(q.gradient(x));
    }
    return rows;
}

// Squared leg length at a pose (N need not be 1).
template <typename S>
S leg_length2(const Point3& m, const Point3& M, const StudyPointT<S>& p) {
    auto [r, t] = rotation_translation(p);
    Vec3<S> mm, MM;
    for (int i = 0; i < 3; ++i) {
        if constexpr (std::is_same_v<S, Rational>) {
            mm[i] = m[i];
            MM[i] = M[i];
        } else {
            mm[i] = m[i].get_d();
            MM[i] = M[i].get_d();
        }
    }
    auto w = mat_apply(r, mm);
    S acc = S(0);
    for (int i = 0; i < 3; ++i) {
        S diff = w[i] + t[i] - MM[i];
        acc += diff * diff;
    }
    return acc;
}

}  // namespace pentapod
