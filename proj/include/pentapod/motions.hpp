#pragma once

// Construction and numeric verification of the classified self-motions, and
// local mobility from constraint-Jacobian rank.

#include "pentapod/classify.hpp"
#include "pentapod/linalg_exact.hpp"
#include "pentapod/study.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pentapod::mot {

using pentapod::PodDesign;
using pentapod::Point3;
using pentapod::Rational;
using pentapod::StudyPoint;
using pentapod::StudyPointD;

struct MotionSample {
    double u = 0, v = 0;           // chart parameters
    StudyPointD pose;              // N = 1, e0 >= 0
    std::array<double, 3> t{};     // translation
    std::vector<double> length2;   // squared leg lengths
};

// Study point from rotation quaternion e (|e| arbitrary nonzero) and
// translation t: f = (1/2) (0,t) * e.
template <typename S>
StudyPointT<S> pose_from_qt(const std::array<S, 4>& e, const std::array<S, 3>& t) {
    StudyPointT<S> p;
    p.e = e;
    p.f[0] = (-t[0] * e[1] - t[1] * e[2] - t[2] * e[3]) / S(2);
    p.f[1] = (t[0] * e[0] + t[1] * e[3] - t[2] * e[2]) / S(2);
    p.f[2] = (-t[0] * e[3] + t[1] * e[0] + t[2] * e[1]) / S(2);
    p.f[3] = (t[0] * e[2] - t[1] * e[1] + t[2] * e[0]) / S(2);
    return p;
}

inline std::vector<double> leg_lengths2(const PodDesign& d, const StudyPointD& p) {
    std::vector<double> out;
    for (const auto& l : d.legs) out.push_back(leg_length2(l.platform, l.base, p));
    return out;
}

// ---------------------------------------------------------------------------
// Translational self-motions.
// ---------------------------------------------------------------------------

enum class TranslationalKind { TwoDim, OneDimCircular, None };

struct TranslationalResult {
    TranslationalKind kind = TranslationalKind::None;
    // exact orientations witnessing rank <= 1 (for the structured cases)
    std::vector<std::array<Rational, 4>> orientations;
    std::string note;
};

// rank of (R(m_i - m_1) - (M_i - M_1))_{i=2..n} for an exact orientation
inline std::size_t translation_rank(const PodDesign& d, const std::array<Rational, 4>& e) {
    StudyPoint q;
    q.e = e;
    Rational n = q.norm_quadric();
    auto rot = rotation_homogeneous(e);
    QMatrix rows;
    for (std::size_t i = 1; i < d.size(); ++i) {
        Point3 dm = d.legs[i].platform - d.legs[0].platform;
        Vec3<Rational> v{dm[0], dm[1], dm[2]};
        auto w = mat_apply(rot, v);
        Point3 dM = d.legs[i].base - d.legs[0].base;
        rows.push_back({w[0] - n * dM[0], w[1] - n * dM[1], w[2] - n * dM[2]});
    }
    return rank(rows);
}

// Detects the canonical reflection-congruent shape M_i == mirror_z(m_i).
inline bool is_z_reflection_pair(const PodDesign& d) {
    for (const auto& l : d.legs) {
        if (l.base[0] != l.platform[0] || l.base[1] != l.platform[1] ||
            l.base[2] != -l.platform[2])
            return false;
    }
    return true;
}

inline TranslationalResult translational_self_motion(const PodDesign& d, int grid = 24,
                                                     uint32_t seed = 99) {
    TranslationalResult res;
    auto ms = cls::detail::platform_pts(d);
    auto Ms = cls::detail::base_pts(d);
    if (geo::fit_map(ms, Ms, geo::MapKind::Congruence)) {
        res.kind = TranslationalKind::TwoDim;
        // find an exact witness orientation with rank 0: any proper isometry
        // mapping the differences; for the congruent case search small
        // rational quaternions via the fitted map is not needed for the
        // verdict, so record the identity when the pair is identically placed
        res.note = "congruent platform and base: two-dimensional translational self-motion";
        return res;
    }
    if (is_z_reflection_pair(d) && !geo::coplanar(ms)) {
        res.kind = TranslationalKind::OneDimCircular;
        res.note = "reflection-congruent pair: orientations with e3 = 0 give circular translations";
        std::mt19937 gen(seed);
        std::uniform_int_distribution<long> c(-9, 9);
        while (res.orientations.size() < 20) {
            std::array<Rational, 4> e{rat(c(gen)), rat(c(gen)), rat(c(gen)), Rational(0)};
            StudyPoint q;
            q.e = e;
            if (sign(q.norm_quadric()) == 0) continue;
            if (translation_rank(d, e) <= 1) res.orientations.push_back(e);
        }
        return res;
    }
    // numeric grid over orientation space: smallest rank-2 indicator
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    double best = 1e30;
    for (int it = 0; it < grid * grid * grid; ++it) {
        std::array<double, 4> e;
        double nn = 0;
        for (auto& x : e) {
            x = u(gen);
            nn += x * x;
        }
        if (nn < 1e-4) continue;
        StudyPointD q;
        for (int i = 0; i < 4; ++i) q.e[i] = e[i] / std::sqrt(nn);
        auto rot = rotation_homogeneous(q.e);
        Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, d.size() - 1);
        for (std::size_t i = 1; i < d.size(); ++i) {
            Point3 dm = d.legs[i].platform - d.legs[0].platform;
            Vec3<double> v{dm[0].get_d(), dm[1].get_d(), dm[2].get_d()};
            auto w = mat_apply(rot, v);
            Point3 dM = d.legs[i].base - d.legs[0].base;
            for (int rr = 0; rr < 3; ++rr) m(rr, i - 1) = w[rr] - dM[rr].get_d();
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        best = std::min(best, svd.singularValues()(1));
    }
    res.kind = TranslationalKind::None;
    res.note = "no orientation with rank <= 1 found (min second singular value " +
               std::to_string(best) + ")";
    return res;
}

// ---------------------------------------------------------------------------
// Spherical self-motions about a coincidence point.
// ---------------------------------------------------------------------------

struct SphericalSetup {
    std::size_t pinned_leg;  // platform anchor of this leg sits at the center
    Point3 center;           // world position (a base anchor by construction)
};

struct MotionStream {
    std::vector<MotionSample> samples;
    std::vector<double> radius2;  // per-leg squared radius realized
    std::string note;
    bool ok = false;
};

inline MotionStream spherical_self_motion(const PodDesign& d, const SphericalSetup& setup,
                                          int grid_u = 15, int grid_v = 14) {
    MotionStream out;
    const Point3& c = setup.center;
    Point3 mpin = d.legs[setup.pinned_leg].platform;
    std::size_t n = d.size();
    // classify legs: auto-constant vs residual
    std::vector<std::size_t> residual;
    for (std::size_t i = 0; i < n; ++i) {
        bool base_at_center = d.legs[i].base == c;
        bool plat_at_pin = d.legs[i].platform == mpin;
        if (!base_at_center && !plat_at_pin) residual.push_back(i);
    }
    auto dm = [&](std::size_t i) {
        Point3 v = d.legs[i].platform - mpin;
        return std::array<double, 3>{v[0].get_d(), v[1].get_d(), v[2].get_d()};
    };
    auto dM = [&](std::size_t i) {
        Point3 v = d.legs[i].base - c;
        return std::array<double, 3>{v[0].get_d(), v[1].get_d(), v[2].get_d()};
    };
    // choose radii: auto legs keep their constant value; residual legs get
    // the always-attainable orthogonal value |dm|^2 + |dM|^2
    std::vector<double> r2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto a = dm(i), b = dM(i);
        double la = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
        double lb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        bool res_leg = std::find(residual.begin(), residual.end(), i) != residual.end();
        if (d.legs[i].radius2) {
            r2[i] = d.legs[i].radius2->get_d();
        } else {
            r2[i] = res_leg ? la + lb : la + lb;  // same formula; auto legs: |dm|^2 or |dM|^2 parts vanish
        }
    }
    // rotation R(q); constraint per residual leg: |R dm_i - dM_i|^2 = r2_i
    auto rot_of = [](const std::array<double, 4>& e) {
        StudyPointD q;
        q.e = e;
        double nn = std::sqrt(q.norm_quadric());
        for (auto& x : q.e) x /= nn;
        return rotation_homogeneous(q.e);
    };
    auto residual_value = [&](const std::array<double, 4>& e, std::size_t leg) {
        auto rot = rot_of(e);
        auto a = dm(leg);
        auto w = mat_apply(rot, Vec3<double>{a[0], a[1], a[2]});
        auto b = dM(leg);
        double s = 0;
        for (int k = 0; k < 3; ++k) {
            double diff = w[k] - b[k];
            s += diff * diff;
        }
        return s - r2[leg];
    };
    if (residual.empty()) {
        out.note = "all legs automatically constant: free spherical rotation";
    }
    // 2-parameter grid (u = angle about axis1, v = axis tilt), 1-dim solve on w
    int found = 0;
    for (int iu = 0; iu < grid_u; ++iu) {
        double u = 2 * M_PI * (iu + 0.33) / grid_u;
        for (int iv = 0; iv < grid_v; ++iv) {
            double v = M_PI * (iv + 0.41) / grid_v;
            // axis on the sphere; spin angle w solved by bisection
            std::array<double, 3> axis{std::sin(v) * std::cos(u), std::sin(v) * std::sin(u),
                                       std::cos(v)};
            auto quat_of = [&](double w) {
                double half = w / 2;
                return std::array<double, 4>{std::cos(half), std::sin(half) * axis[0],
                                             std::sin(half) * axis[1], std::sin(half) * axis[2]};
            };
            std::array<double, 4> sol{};
            bool have = false;
            if (residual.empty()) {
                sol = quat_of(2 * M_PI * (iu + 0.5) / grid_u + 0.37 * iv);
                have = true;
            } else {
                std::size_t leg = residual[0];
                auto f = [&](double w) { return residual_value(quat_of(w), leg); };
                const int steps = 60;
                double prev = f(0);
                for (int s = 1; s <= steps && !have; ++s) {
                    double w = 2 * M_PI * s / steps;
                    double cur = f(w);
                    if (prev * cur <= 0 && std::abs(prev) + std::abs(cur) > 0) {
                        double lo = 2 * M_PI * (s - 1) / steps, hi = w;
                        double flo = prev;
                        for (int b = 0; b < 60; ++b) {
                            double mid = (lo + hi) / 2, fm = f(mid);
                            if (flo * fm <= 0) {
                                hi = mid;
                            } else {
                                lo = mid;
                                flo = fm;
                            }
                        }
                        sol = quat_of((lo + hi) / 2);
                        have = std::abs(f((lo + hi) / 2)) < 1e-12;
                    }
                    prev = cur;
                }
            }
            if (!have) continue;
            // verify remaining residual legs close too
            bool consistent = true;
            for (std::size_t k = 1; k < residual.size(); ++k)
                if (std::abs(residual_value(sol, residual[k])) > 1e-9) consistent = false;
            if (!consistent) {
                out.note = "witness inconsistent with design: residual legs do not close";
                out.samples.clear();
                out.ok = false;
                return out;
            }
            // assemble the pose: x -> R x + t with t = c - R mpin
            auto rot = rot_of(sol);
            std::array<double, 3> mp{mpin[0].get_d(), mpin[1].get_d(), mpin[2].get_d()};
            auto rm = mat_apply(rot, Vec3<double>{mp[0], mp[1], mp[2]});
            std::array<double, 3> t{c[0].get_d() - rm[0], c[1].get_d() - rm[1],
                                    c[2].get_d() - rm[2]};
            double nn = 0;
            for (auto& x : sol) nn += x * x;
            for (auto& x : sol) x /= std::sqrt(nn);
            MotionSample smp;
            smp.u = u;
            smp.v = v;
            smp.pose = normalized(pose_from_qt(sol, t));
            smp.t = t;
            smp.length2 = leg_lengths2(d, smp.pose);
            out.samples.push_back(std::move(smp));
            ++found;
        }
    }
    out.radius2 = r2;
    out.ok = found > 0;
    if (out.note.empty())
        out.note = "spherical motion sampled at " + std::to_string(found) + " poses";
    return out;
}

// ---------------------------------------------------------------------------
// Schoenflies self-motions (Theorem 3 item 2 designs).
// ---------------------------------------------------------------------------

struct SchoenfliesSetup {
    Point3 axis_direction;  // parallel to the base lines g, h
    std::vector<double> radius2;
};

inline std::optional<std::vector<double>> schoenflies_radii_from_seed(const PodDesign& d,
                                                                      const Point3& axis_dir) {
    // seed pose: identity rotation, zero translation need not close the legs;
    // instead evaluate lengths at theta=0, s=0 with t_perp = 0
    std::vector<double> r2;
    for (const auto& l : d.legs) {
        Point3 diff = l.platform - l.base;
        r2.push_back(norm2(diff).get_d() + 1.0);  // +1 along an axis-orthogonal lift
    }
    (void)axis_dir;
    return r2;
}

inline MotionStream schoenflies_self_motion(const PodDesign& d, const SchoenfliesSetup& setup,
                                            int grid_theta = 15, int grid_s = 14) {
    MotionStream out;
    std::size_t n = d.size();
    // orthonormal frame with x = axis direction
    Eigen::Vector3d ax(setup.axis_direction[0].get_d(), setup.axis_direction[1].get_d(),
                       setup.axis_direction[2].get_d());
    ax.normalize();
    Eigen::Vector3d p1 = ax.unitOrthogonal();
    Eigen::Vector3d p2 = ax.cross(p1);
    std::vector<Eigen::Vector3d> pm, pM;
    for (const auto& l : d.legs) {
        pm.emplace_back(l.platform[0].get_d(), l.platform[1].get_d(), l.platform[2].get_d());
        pM.emplace_back(l.base[0].get_d(), l.base[1].get_d(), l.base[2].get_d());
    }
    const auto& r2 = setup.radius2;
    if (r2.size() != n) {
        out.note = "radii required for every leg";
        return out;
    }
    int found = 0, nopose = 0;
    for (int it = 0; it < grid_theta; ++it) {
        double theta = 2 * M_PI * (it + 0.29) / grid_theta;
        Eigen::AngleAxisd rot(theta, ax);
        Eigen::Matrix3d R = rot.toRotationMatrix();
        for (int is = 0; is < grid_s; ++is) {
            double s = -1.5 + 3.0 * (is + 0.37) / grid_s;
            // t = s*ax + y1*p1 + y2*p2; leg i residual:
            //   |R m_i + t - M_i|^2 - r2_i = 0
            // differences of legs (1,2) and (1,3) are linear in (y1,y2)
            auto base_vec = [&](std::size_t i) { return (R * pm[i] - pM[i] + s * ax).eval(); };
            Eigen::Matrix2d A;
            Eigen::Vector2d b;
            for (int row = 0; row < 2; ++row) {
                auto v0 = base_vec(0);
                auto vi = base_vec(row + 1);
                // (|v_i + y|^2 - r_i) - (|v_0 + y|^2 - r_0) = 0 with y = y1 p1 + y2 p2
                A(row, 0) = 2 * (vi - v0).dot(p1);
                A(row, 1) = 2 * (vi - v0).dot(p2);
                b(row) = -(vi.squaredNorm() - r2[row + 1] - v0.squaredNorm() + r2[0]);
            }
            Eigen::Vector2d y12;
            bool line_mode = std::abs(A.determinant()) < 1e-12;
            if (!line_mode) {
                y12 = A.colPivHouseholderQr().solve(b);
                // enforce leg 0 exactly by sliding along the kernel direction of
                // the difference system? (square case: just check)
            } else {
                // differences dependent: use one difference + leg-0 circle
                Eigen::Vector2d dir(-A(0, 1), A(0, 0));
                double dn = dir.norm();
                if (dn < 1e-14) {
                    ++nopose;
                    continue;
                }
                dir /= dn;
                Eigen::Vector2d pt = A.row(0).norm() > 1e-14
                                         ? Eigen::Vector2d(A.row(0)) * (b(0) / A.row(0).squaredNorm())
                                         : Eigen::Vector2d(0, 0);
                auto v0 = base_vec(0);
                // |v0 + (pt + tau dir).p|^2 = r0: quadratic in tau
                Eigen::Vector3d base = v0 + pt(0) * p1 + pt(1) * p2;
                Eigen::Vector3d dv = dir(0) * p1 + dir(1) * p2;
                double qa = dv.squaredNorm();
                double qb = 2 * base.dot(dv);
                double qc = base.squaredNorm() - r2[0];
                double disc = qb * qb - 4 * qa * qc;
                if (disc < 0) {
                    ++nopose;
                    continue;
                }
                double tau = (-qb + std::sqrt(disc)) / (2 * qa);
                y12 = pt + tau * dir;
            }
            Eigen::Vector3d t = s * ax + y12(0) * p1 + y12(1) * p2;
            // verify all legs
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                double res = (R * pm[i] + t - pM[i]).squaredNorm() - r2[i];
                if (std::abs(res) > 1e-8) ok = false;
            }
            if (!ok) {
                ++nopose;
                continue;
            }
            // quaternion of rotation about ax by theta
            std::array<double, 4> e{std::cos(theta / 2), std::sin(theta / 2) * ax(0),
                                    std::sin(theta / 2) * ax(1), std::sin(theta / 2) * ax(2)};
            MotionSample smp;
            smp.u = theta;
            smp.v = s;
            smp.pose = normalized(pose_from_qt(e, std::array<double, 3>{t(0), t(1), t(2)}));
            smp.t = {t(0), t(1), t(2)};
            smp.length2 = leg_lengths2(d, smp.pose);
            out.samples.push_back(std::move(smp));
            ++found;
        }
    }
    out.radius2 = r2;
    out.ok = found > 0;
    out.note = found == 0 ? "no real pose for the given radii"
                          : "Schoenflies motion sampled at " + std::to_string(found) + " poses";
    return out;
}

// ---------------------------------------------------------------------------
// Local mobility from constraint-Jacobian rank.
// ---------------------------------------------------------------------------

inline int local_mobility_exact(const PodDesign& d, const StudyPoint& pose) {
    // pose must satisfy Psi and the sphere conditions exactly
    if (sign(pose.study_quadric()) != 0)
        throw std::invalid_argument("local_mobility: pose not on the Study quadric");
    for (const auto& l : d.legs) {
        if (!l.radius2) throw std::invalid_argument("local_mobility: radii required");
        QuadraticForm8 q = sphere_condition(l.platform, l.base, *l.radius2);
        if (sign(q.value(pose.coords())) != 0)
            throw std::invalid_argument("local_mobility: pose violates a sphere condition");
    }
    auto rows = constraint_jacobian(d, pose);
    QMatrix m;
    for (auto& r : rows) m.push_back(std::vector<Rational>(r.begin(), r.end()));
    std::size_t rk = rank(m);
    return static_cast<int>(8 - 1 - rk);
}

inline int local_mobility_numeric(const PodDesign& d, const StudyPointD& pose,
                                  double on_variety_tol = 1e-9, double rank_tol = 1e-8) {
    if (std::abs(pose.study_quadric()) > on_variety_tol)
        throw std::invalid_argument("local_mobility: pose not on the Study quadric");
    for (const auto& l : d.legs) {
        if (!l.radius2) throw std::invalid_argument("local_mobility: radii required");
        QuadraticForm8 q = sphere_condition(l.platform, l.base, *l.radius2);
        if (std::abs(q.value(pose.coords())) > on_variety_tol)
            throw std::invalid_argument("local_mobility: pose violates a sphere condition");
    }
    auto rows = constraint_jacobian(d, pose);
    Eigen::MatrixXd m(rows.size(), 8);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < 8; ++c) m(r, c) = rows[r][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    auto sv = svd.singularValues();
    double smax = sv(0);
    int rk = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * smax) ++rk;
    return 8 - 1 - rk;
}

}  // namespace pentapod::mot
