#pragma once

// Executable classification: which of the mobility-2 cases a design matches,
// with the permutation/swap realizing the match and geometric witnesses.

#include "pentapod/geometry.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pentapod::cls {

using namespace pentapod::geo;

enum class CaseLabel {
    Thm2Congruent,        // congruent platform/base: trivial 2-dim translation
    Thm3Item1,            // planar congruent (overlap with Thm2)
    Thm3Item2,            // Schoenflies design on two parallel lines
    Thm4Item1,            // p=2: M3=M4=M5
    Thm4Item2a,           // p=3 with m2=m3
    Thm4Item2b,           // p=3 with M2,M3,M4=M5 collinear
    Thm4Item3,            // p=4: m1..m4 collinear, M2..M5 collinear
    Cor1bI,               // m1=m2=m3 and M4=M5: mobility > 2
    Cor1bII,              // m1=m2=m3=m4: mobility > 2
    Cor1bIII,             // both sides collinear, regular projectivity: mobility > 2
    SideAlpha,            // M1,M2,M3=M4=M5 collinear
    SideBeta,             // M1,M2,M3,M4=M5 collinear, m1,m2,m3 collinear
    SideGamma,            // all base points collinear, m1..m4 collinear
    Hex1Congruent,
    Hex2,
    Hex3,
    Hex4,
    Hex5,
    Hex6,
};

inline const char* label_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::Thm2Congruent: return "theorem-2";
        case CaseLabel::Thm3Item1: return "theorem-3-item-1";
        case CaseLabel::Thm3Item2: return "theorem-3-item-2";
        case CaseLabel::Thm4Item1: return "theorem-4-item-1";
        case CaseLabel::Thm4Item2a: return "theorem-4-item-2a";
        case CaseLabel::Thm4Item2b: return "theorem-4-item-2b";
        case CaseLabel::Thm4Item3: return "theorem-4-item-3";
        case CaseLabel::Cor1bI: return "corollary-1b-i";
        case CaseLabel::Cor1bII: return "corollary-1b-ii";
        case CaseLabel::Cor1bIII: return "corollary-1b-iii";
        case CaseLabel::SideAlpha: return "side-case-alpha";
        case CaseLabel::SideBeta: return "side-case-beta";
        case CaseLabel::SideGamma: return "side-case-gamma";
        case CaseLabel::Hex1Congruent: return "theorem-6-case-1";
        case CaseLabel::Hex2: return "theorem-6-case-2";
        case CaseLabel::Hex3: return "theorem-6-case-3";
        case CaseLabel::Hex4: return "theorem-6-case-4";
        case CaseLabel::Hex5: return "theorem-6-case-5";
        case CaseLabel::Hex6: return "theorem-6-case-6";
    }
    return "?";
}

struct MatchedCase {
    CaseLabel label;
    std::vector<std::size_t> perm;  // original leg index of paper-leg k
    bool swapped = false;           // platform/base exchanged before matching
    std::string witness;
    int beta = 1;                   // predicted beta class of the self-motion
    bool higher_mobility = false;   // Cor 1b cases: n > 2 dimensional
};

struct ClassificationReport {
    std::vector<MatchedCase> cases;
    Profile profile;
    bool singular_probabilistic = false;
    bool regular_certified = false;
    StudyPoint witness_pose;
    std::size_t singularity_samples = 0;
    std::string notes;

    bool has(CaseLabel l) const {
        for (const auto& c : cases)
            if (c.label == l) return true;
        return false;
    }
    bool mobility_two_confirmed() const {
        for (const auto& c : cases)
            if (!c.higher_mobility) return true;
        return false;
    }
};

namespace detail {

inline std::vector<Point3> platform_pts(const PodDesign& d) {
    std::vector<Point3> v;
    for (const auto& l : d.legs) v.push_back(l.platform);
    return v;
}
inline std::vector<Point3> base_pts(const PodDesign& d) {
    std::vector<Point3> v;
    for (const auto& l : d.legs) v.push_back(l.base);
    return v;
}

inline bool collinear_set(const std::vector<Point3>& pts, const std::vector<std::size_t>& ix) {
    std::vector<Point3> sel;
    for (auto i : ix) sel.push_back(pts[i]);
    return all_collinear(sel);
}

template <typename Fn>
void for_each_relabeling(std::size_t n, bool allow_swap, Fn fn) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (fn(perm, false)) return;
        if (allow_swap && fn(perm, true)) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

struct Arranged {
    std::vector<Point3> m, M;
};

inline Arranged arrange(const PodDesign& d, const std::vector<std::size_t>& perm, bool swapped) {
    Arranged a;
    for (std::size_t i : perm) {
        a.m.push_back(swapped ? d.legs[i].base : d.legs[i].platform);
        a.M.push_back(swapped ? d.legs[i].platform : d.legs[i].base);
    }
    return a;
}

inline std::string describe_point(const Point3& p) {
    return "(" + to_string(p[0]) + "," + to_string(p[1]) + "," + to_string(p[2]) + ")";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Theorem 1a necessary-condition profile (pentapods).
// ---------------------------------------------------------------------------

struct Thm1aProfile {
    bool a_similar = false;
    bool b_planar_affine = false;
    std::vector<int> c_p_values;  // p in {2,3,4} for which condition (c) holds
    bool d_parallel_lines = false;
    std::string witness;
};

inline Thm1aProfile necessary_conditions_thm1a(const PodDesign& d) {
    if (d.size() != 5) throw std::invalid_argument("necessary_conditions_thm1a: pentapod required");
    Thm1aProfile out;
    auto ms = detail::platform_pts(d), Ms = detail::base_pts(d);
    if (fit_map(ms, Ms, MapKind::Similarity)) out.a_similar = true;
    if (coplanar(ms) && coplanar(Ms) && !all_collinear(ms) && !all_collinear(Ms) &&
        fit_map(ms, Ms, MapKind::Affinity))
        out.b_planar_affine = true;
    std::ostringstream wit;
    for (int p = 2; p <= 4; ++p) {
        bool found = false;
        detail::for_each_relabeling(5, true, [&](const std::vector<std::size_t>& perm, bool sw) {
            auto a = detail::arrange(d, perm, sw);
            std::vector<std::size_t> head(p);
            std::iota(head.begin(), head.end(), 0);
            if (!detail::collinear_set(a.m, head)) return false;
            for (std::size_t k = p; k + 1 < 5; ++k)
                if (a.M[k] != a.M[4]) return false;
            found = true;
            wit << "c(p=" << p << (sw ? ",swapped" : "") << ") ";
            return true;
        });
        if (found) out.c_p_values.push_back(p);
    }
    detail::for_each_relabeling(5, true, [&](const std::vector<std::size_t>& perm, bool sw) {
        auto a = detail::arrange(d, perm, sw);
        auto base_splits = parallel_line_splits(a.M);
        auto plat_splits = parallel_line_splits(a.m);
        for (const auto& bs : base_splits) {
            if (!(bs.line_g == std::array<std::size_t, 3>{0, 1, 2} &&
                  bs.line_h == std::array<std::size_t, 2>{3, 4}))
                continue;
            for (const auto& ps : plat_splits) {
                if (ps.line_g == std::array<std::size_t, 3>{0, 1, 2} &&
                    ps.line_h == std::array<std::size_t, 2>{3, 4}) {
                    out.d_parallel_lines = true;
                    wit << "d" << (sw ? "(swapped) " : " ");
                    return true;
                }
            }
        }
        return false;
    });
    out.witness = wit.str();
    return out;
}

// ---------------------------------------------------------------------------
// Pentapod classification (Theorems 2, 3, 4; Corollary 1b; side cases).
// ---------------------------------------------------------------------------

inline ClassificationReport classify_pentapod(const PodDesign& d, std::size_t singularity_samples = 20) {
    if (d.size() != 5) throw std::invalid_argument("classify_pentapod: five legs required");
    d.validate();
    ClassificationReport rep;
    rep.profile = coincidence_collinearity_profile(d);
    auto sing = architecturally_singular(d, singularity_samples);
    rep.singular_probabilistic = !sing.regular;
    rep.regular_certified = sing.regular;
    rep.witness_pose = sing.witness;
    rep.singularity_samples = sing.samples_used;

    auto ms = detail::platform_pts(d), Ms = detail::base_pts(d);
    bool m_line = all_collinear(ms), M_line = all_collinear(Ms);

    auto add_case = [&](CaseLabel label, const std::vector<std::size_t>& perm, bool sw,
                        std::string witness, int beta, bool higher = false) {
        if (rep.has(label)) return;
        rep.cases.push_back({label, perm, sw, std::move(witness), beta, higher});
    };

    // Corollary 1b: designs with self-motion dimension > 2.
    detail::for_each_relabeling(5, true, [&](const std::vector<std::size_t>& perm, bool sw) {
        auto a = detail::arrange(d, perm, sw);
        if (a.m[0] == a.m[1] && a.m[1] == a.m[2] && a.M[3] == a.M[4])
            add_case(CaseLabel::Cor1bI, perm, sw, "m1=m2=m3 and M4=M5", 1, true);
        if (a.m[0] == a.m[1] && a.m[1] == a.m[2] && a.m[2] == a.m[3])
            add_case(CaseLabel::Cor1bII, perm, sw, "m1=m2=m3=m4", 1, true);
        return false;
    });
    if (m_line && M_line) {
        auto pr = fit_map(ms, Ms, MapKind::LineProjectivity);
        if (pr)
            rep.cases.push_back({CaseLabel::Cor1bIII, {0, 1, 2, 3, 4}, false,
                                 "collinear platform and base related by a regular projectivity", 1,
                                 true});
        rep.notes = "platform and base both collinear: outside the main classification branch";
        return rep;
    }

    if (M_line || m_line) {
        // side cases (alpha)(beta)(gamma); stated for a collinear base, the
        // swap covers collinear platforms
        detail::for_each_relabeling(5, true, [&](const std::vector<std::size_t>& perm, bool sw) {
            auto a = detail::arrange(d, perm, sw);
            if (!all_collinear(a.M)) return false;
            if (a.M[2] == a.M[3] && a.M[3] == a.M[4] && a.M[0] != a.M[2] && a.M[1] != a.M[2] &&
                a.M[0] != a.M[1]) {
                add_case(CaseLabel::SideAlpha, perm, sw,
                         "spherical center M3=M4=M5 at " + detail::describe_point(a.M[2]) +
                             "; motion when the center lies on line(m1,m2)",
                         1);
            }
            if (a.M[3] == a.M[4] && a.M[2] != a.M[3] && a.M[0] != a.M[1] &&
                detail::collinear_set(a.m, {0, 1, 2}) && a.M[0] != a.M[3] && a.M[1] != a.M[3]) {
                add_case(CaseLabel::SideBeta, perm, sw,
                         "spherical center M4=M5 at " + detail::describe_point(a.M[3]) +
                             "; motion when the center lies on the carrier line of m1,m2,m3",
                         1);
            }
            bool base_distinct = true;
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j)
                    if (a.M[i] == a.M[j]) base_distinct = false;
            if (base_distinct && detail::collinear_set(a.m, {0, 1, 2, 3})) {
                add_case(CaseLabel::SideGamma, perm, sw,
                         "spherical center M5 at " + detail::describe_point(a.M[4]) +
                             "; motion when M5 lies on the carrier line of m1..m4",
                         1);
            }
            return false;
        });
        rep.notes = "collinear anchor side-case branch";
        return rep;
    }

    // Main branch: neither side collinear.
    // Theorem 2 / Theorem 3 item 1: congruent pair.
    if (auto cong = fit_map(ms, Ms, MapKind::Congruence)) {
        add_case(CaseLabel::Thm2Congruent, {0, 1, 2, 3, 4}, false,
                 "platform congruent to base: 2-dimensional translational self-motion", -1);
        if (coplanar(ms) && coplanar(Ms))
            add_case(CaseLabel::Thm3Item1, {0, 1, 2, 3, 4}, false,
                     "planar congruent pair: affinity is a congruence", -1);
    }

    // Theorem 3 item 2 (needs planar affine, not architecturally singular).
    bool planar_affine = coplanar(ms) && coplanar(Ms) && fit_map(ms, Ms, MapKind::Affinity).has_value();
    bool four_collinear = false;
    for (const auto& line : rep.profile.platform_lines)
        if (line.size() >= 4) four_collinear = true;
    for (const auto& line : rep.profile.base_lines)
        if (line.size() >= 4) four_collinear = true;
    if (planar_affine && !four_collinear) {
        detail::for_each_relabeling(5, true, [&](const std::vector<std::size_t>& perm, bool sw) {
            auto a = detail::arrange(d, perm, sw);
            auto afm = fit_map(a.M, a.m, MapKind::Affinity);  // base -> platform
            if (!afm) return false;
            if (!collinear(a.M[0], a.M[1], a.M[2])) return false;
            if (a.M[3] == a.M[4]) return false;
            Point3 dg;
            if (a.M[1] != a.M[0])
                dg = a.M[1] - a.M[0];
            else if (a.M[2] != a.M[0])
                dg = a.M[2] - a.M[0];
            else
                return false;
            Point3 dh = a.M[4] - a.M[3];
            if (cross(dg, dh) != Point3{Rational(0), Rational(0), Rational(0)}) return false;
            if (collinear(a.M[0], a.M[1] != a.M[0] ? a.M[1] : a.M[2], a.M[3])) return false;
            // restriction of the affinity to g (and h) must be a congruence
            Point3 img = apply_map(*afm, a.M[0] + dg) - apply_map(*afm, a.M[0]);
            if (norm2(img) != norm2(dg)) return false;
            add_case(CaseLabel::Thm3Item2, perm, sw,
                     "Schoenflies axis parallel to the base lines, direction " +
                         detail::describe_point(dg),
                     0);
            return true;
        });
    }

    // Theorem 4 (skip when congruent/affine already matched or Cor1b holds).
    detail::for_each_relabeling(5, true, [&](const std::vector<std::size_t>& perm, bool sw) {
        auto a = detail::arrange(d, perm, sw);
        // item 1, p=2: M3=M4=M5 (m3,m4,m5 not collinear, else singular)
        if (a.M[2] == a.M[3] && a.M[3] == a.M[4] && !rep.has(CaseLabel::Cor1bI) &&
            !rep.has(CaseLabel::Cor1bII)) {
            if (!collinear(a.m[2], a.m[3], a.m[4]) && sing.regular)
                add_case(CaseLabel::Thm4Item1, perm, sw,
                         "spherical center M3=M4=M5 at " + detail::describe_point(a.M[2]) +
                             "; motion when it coincides with m1 or m2",
                         1);
        }
        // p=3 shapes: M4=M5 and m1,m2,m3 collinear
        if (a.M[3] == a.M[4] && detail::collinear_set(a.m, {0, 1, 2})) {
            if (a.m[1] == a.m[2] && a.m[0] != a.m[1] && sing.regular)
                add_case(CaseLabel::Thm4Item2a, perm, sw,
                         "spherical center M4=M5 at " + detail::describe_point(a.M[3]) +
                             "; motion when it coincides with m2=m3",
                         1);
            if (detail::collinear_set(a.M, {1, 2, 3}) && sing.regular &&
                a.m[0] != a.m[1] && a.m[1] != a.m[2] && a.m[0] != a.m[2])
                add_case(CaseLabel::Thm4Item2b, perm, sw,
                         "spherical center M4=M5 at " + detail::describe_point(a.M[3]) +
                             "; motion when it coincides with m1",
                         1);
        }
        // item 3, p=4: m1..m4 collinear and M2..M5 collinear
        if (detail::collinear_set(a.m, {0, 1, 2, 3}) && detail::collinear_set(a.M, {1, 2, 3, 4}) &&
            sing.regular) {
            bool plat_distinct4 = true;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (a.m[i] == a.m[j]) plat_distinct4 = false;
            if (plat_distinct4)
                add_case(CaseLabel::Thm4Item3, perm, sw,
                         "spherical center M5 at " + detail::describe_point(a.M[4]) +
                             "; motion when m1 coincides with M5",
                         1);
        }
        return false;
    });

    return rep;
}

// ---------------------------------------------------------------------------
// Side-case matcher exposed separately (spec operation).
// ---------------------------------------------------------------------------

enum class SideCase { Alpha, Beta, Gamma, None };

inline SideCase collinear_base_side_cases(const PodDesign& d) {
    auto rep = classify_pentapod(d, 4);
    if (rep.has(CaseLabel::SideAlpha)) return SideCase::Alpha;
    if (rep.has(CaseLabel::SideBeta)) return SideCase::Beta;
    if (rep.has(CaseLabel::SideGamma)) return SideCase::Gamma;
    return SideCase::None;
}

// ---------------------------------------------------------------------------
// Hexapod classification (Theorem 6).
// ---------------------------------------------------------------------------

inline ClassificationReport classify_hexapod(const PodDesign& d, std::size_t singularity_samples = 20) {
    if (d.size() != 6) throw std::invalid_argument("classify_hexapod: six legs required");
    d.validate();
    ClassificationReport rep;
    rep.profile = coincidence_collinearity_profile(d);
    auto sing = architecturally_singular(d, singularity_samples);
    rep.singular_probabilistic = !sing.regular;
    rep.regular_certified = sing.regular;
    rep.witness_pose = sing.witness;
    rep.singularity_samples = sing.samples_used;

    auto ms = detail::platform_pts(d), Ms = detail::base_pts(d);
    auto add_case = [&](CaseLabel label, const std::vector<std::size_t>& perm, bool sw,
                        std::string witness) {
        if (rep.has(label)) return;
        rep.cases.push_back({label, perm, sw, std::move(witness), 1, false});
    };

    if (fit_map(ms, Ms, MapKind::Congruence)) {
        rep.cases.push_back({CaseLabel::Hex1Congruent, {0, 1, 2, 3, 4, 5}, false,
                             "congruent hexapod: trivial 2-dimensional translation", -1, false});
    }

    detail::for_each_relabeling(6, true, [&](const std::vector<std::size_t>& perm, bool sw) {
        auto a = detail::arrange(d, perm, sw);
        auto eq = [&](std::size_t i, std::size_t j) { return a.m[i] == a.m[j]; };
        auto Eq = [&](std::size_t i, std::size_t j) { return a.M[i] == a.M[j]; };
        // case 2: m1..m5 collinear, M2..M6 collinear
        if (detail::collinear_set(a.m, {0, 1, 2, 3, 4}) &&
            detail::collinear_set(a.M, {1, 2, 3, 4, 5}))
            add_case(CaseLabel::Hex2, perm, sw,
                     "spherical when m1 coincides with M6 at " + detail::describe_point(a.M[5]));
        // case 3: m1=m2 and {m1,m3,m4,m5} collinear, M3..M6 collinear
        if (eq(0, 1) && detail::collinear_set(a.m, {0, 2, 3, 4}) &&
            detail::collinear_set(a.M, {2, 3, 4, 5}))
            add_case(CaseLabel::Hex3, perm, sw,
                     "spherical when m1=m2 coincides with M6 at " + detail::describe_point(a.M[5]));
        // case 4: m1=m2=m3 and {m1,m4,m5} collinear, M4,M5,M6 collinear
        if (eq(0, 1) && eq(1, 2) && detail::collinear_set(a.m, {0, 3, 4}) &&
            detail::collinear_set(a.M, {3, 4, 5}))
            add_case(CaseLabel::Hex4, perm, sw,
                     "spherical when m1=m2=m3 coincides with M6 at " +
                         detail::describe_point(a.M[5]));
        // case 5: m1=m2 and {m1,m3,m4} collinear, {M3,M4,M5=M6} collinear
        if (eq(0, 1) && Eq(4, 5) && detail::collinear_set(a.m, {0, 2, 3}) &&
            detail::collinear_set(a.M, {2, 3, 4}))
            add_case(CaseLabel::Hex5, perm, sw,
                     "spherical when m1=m2 coincides with M5=M6 at " +
                         detail::describe_point(a.M[4]));
        // case 6: m1=m2=m3 and M5=M6
        if (eq(0, 1) && eq(1, 2) && Eq(4, 5))
            add_case(CaseLabel::Hex6, perm, sw,
                     "spherical when m1=m2=m3 coincides with M5=M6 at " +
                         detail::describe_point(a.M[4]));
        return false;
    });
    return rep;
}

}  // namespace pentapod::cls
