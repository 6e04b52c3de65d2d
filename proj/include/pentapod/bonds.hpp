#pragma once

// Projected-bond machinery: f-elimination traces, intersection with the
// norm cone N = 0, and the beta classification of 2-dimensional self-motions.

#include "pentapod/design.hpp"
#include "pentapod/elimination.hpp"
#include "pentapod/classify.hpp"
#include "pentapod/geometry.hpp"
#include "pentapod/study.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pentapod::bonds {

using pentapod::MultiPoly;
using pentapod::Rational;
using pentapod::RingPtr;

enum class Verdict { BondsEmpty, FiniteBonds, BondingCurve, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::BondsEmpty: return "bonds-empty";
        case Verdict::FiniteBonds: return "finite-bonds";
        case Verdict::BondingCurve: return "bonding-curve";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct EliminationTrace {
    std::string coordinatization;
    std::vector<std::string> solved_f;
    elim::LinearSolution solution;
    std::vector<std::string> side_conditions;  // pivot factors assumed nonzero
    std::vector<MultiPoly> numerators;         // the G_i
    std::vector<MultiPoly> resultants;         // the H_i (when computed)
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> bond_candidates;
    std::map<std::string, std::size_t> diagnostics;  // term counts etc.

    void diag(const std::string& k, std::size_t v) { diagnostics[k] = v; }
};

// Build the ring for a concrete design: study coordinates plus one squared
// radius symbol per leg.
inline RingPtr design_ring(std::size_t nlegs) {
    std::vector<std::string> names{"e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3"};
    for (std::size_t i = 1; i <= nlegs; ++i) names.push_back("R" + std::to_string(i));
    return Ring::make(names);
}

inline MultiPoly lambda_for_leg(const RingPtr& ring, const Leg& leg, std::size_t index1) {
    std::array<MultiPoly, 3> m, M;
    for (int k = 0; k < 3; ++k) {
        m[k] = MultiPoly::constant(ring, leg.platform[k]);
        M[k] = MultiPoly::constant(ring, leg.base[k]);
    }
    MultiPoly r2 = leg.radius2 ? MultiPoly::constant(ring, *leg.radius2)
                               : MultiPoly::variable(ring, "R" + std::to_string(index1));
    return elim::lambda_poly(ring, m, M, r2);
}

// Generic f-elimination for a concrete design: solve the chosen equations
// (among Psi and the Delta_{i,1}) for the chosen f-variables, substitute into
// the remaining Delta's, and normalize the numerators.
struct EliminateOptions {
    std::vector<std::string> solve_for;           // e.g. {"f2","f3"}
    std::vector<std::string> equations;           // e.g. {"psi","d21"}; d<i><j> = Lambda_i - Lambda_j
    std::map<std::string, Rational> e_fixed;      // e-chart restrictions, e.g. e3 = 0
};

inline EliminationTrace eliminate_f(const PodDesign& d, const EliminateOptions& opt) {
    RingPtr ring = design_ring(d.size());
    std::vector<MultiPoly> lambda;
    for (std::size_t i = 0; i < d.size(); ++i)
        lambda.push_back(lambda_for_leg(ring, d.legs[i], i + 1));
    MultiPoly psi = elim::psi_poly(ring);
    auto restrict_chart = [&](MultiPoly p) {
        for (const auto& [name, value] : opt.e_fixed)
            p = p.substituted(ring->at(name), MultiPoly::constant(ring, value));
        return p;
    };
    auto equation = [&](const std::string& spec) {
        if (spec == "psi") return restrict_chart(psi);
        if (spec.size() == 3 && spec[0] == 'd') {
            std::size_t i = spec[1] - '1', j = spec[2] - '1';
            return restrict_chart(lambda[i] - lambda[j]);
        }
        throw std::invalid_argument("unknown equation " + spec);
    };
    std::vector<MultiPoly> eqs;
    for (const auto& s : opt.equations) eqs.push_back(equation(s));
    std::vector<std::size_t> fvars;
    for (const auto& s : opt.solve_for) fvars.push_back(ring->at(s));

    EliminationTrace tr;
    tr.solved_f = opt.solve_for;
    tr.solution = elim::solve_linear(eqs, fvars);
    tr.side_conditions.push_back("pivot determinant nonzero: " + tr.solution.det.str());

    // substitute into every Delta_{i,1} not already used
    for (std::size_t i = 1; i < d.size(); ++i) {
        std::string nm = "d" + std::to_string(i + 1) + "1";
        bool used = false;
        for (const auto& s : opt.equations) used = used || s == nm;
        if (used) continue;
        MultiPoly raw = elim::substitute_solution(restrict_chart(lambda[i] - lambda[0]), tr.solution);
        raw = pentapod::divide_out(std::move(raw), tr.solution.det, 4);
        MultiPoly g = raw.primitive_part();
        tr.diag("G" + std::to_string(i + 1) + "_terms", g.term_count());
        tr.numerators.push_back(std::move(g));
    }
    return tr;
}

// Classify the intersection of {G_i = 0} with the norm cone N = 0.
inline Verdict bonds_on_norm_cone(EliminationTrace& tr, const RingPtr& ring) {
    MultiPoly N = elim::norm_poly(ring);
    auto vars = elim::study_vars(ring);
    std::vector<MultiPoly> gs;
    for (const auto& g : tr.numerators)
        if (!g.is_zero()) gs.push_back(g);
    if (gs.empty()) {
        tr.verdict = Verdict::BondingCurve;  // every pose of the cone qualifies
        return tr.verdict;
    }
    // all proportional? then a single surface meets the quadric in a curve
    bool proportional = true;
    for (std::size_t i = 1; i < gs.size(); ++i) {
        if (gs[i] * gs[0].leading_term().c - gs[0] * gs[i].leading_term().c != MultiPoly::zero(ring))
            proportional = false;
    }
    if (proportional && gs.size() >= 1) {
        tr.verdict = Verdict::BondingCurve;
        return tr.verdict;
    }
    // eliminate e0 against N where possible
    std::vector<MultiPoly> hs;
    for (const auto& g : gs) {
        if (g.degree_in(vars.e0) >= 1) {
            auto red = elim::reduce_mod_norm(g, N, vars.e0);
            if (red.resultant.is_zero()) {
                tr.verdict = Verdict::BondingCurve;  // g contains a component of the cone
                return tr.verdict;
            }
            hs.push_back(red.resultant);
            tr.resultants.push_back(red.resultant);
        } else {
            hs.push_back(g);
        }
    }
    // eliminate e3 pairwise, landing in binary forms over (e1, e2)
    std::vector<MultiPoly> binary;
    for (auto& h : hs) {
        MultiPoly s = pentapod::strip_variable(h, vars.e3);
        s = pentapod::strip_variable(s, vars.e2);
        s = pentapod::strip_variable(s, vars.e1);
        if (s.degree_in(vars.e3) == 0) binary.push_back(s);
    }
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            if (hs[i].degree_in(vars.e3) >= 1 && hs[j].degree_in(vars.e3) >= 1) {
                MultiPoly r = pentapod::resultant_trivariate_homogeneous(hs[i], hs[j], vars.e1,
                                                                         vars.e2, vars.e3);
                if (!r.is_zero()) binary.push_back(r);
            }
        }
    if (binary.empty()) {
        tr.verdict = Verdict::Inconclusive;
        return tr.verdict;
    }
    // common projective roots of the binary forms: univariate gcd over Q
    // (strip monomial factors first, tracking whether (1:0)/(0:1) are common)
    bool e1_common = true, e2_common = true;
    std::vector<MultiPoly> stripped;
    for (auto b : binary) {
        int k1 = 0, k2 = 0;
        b = pentapod::strip_variable(b, vars.e1, &k1);
        b = pentapod::strip_variable(b, vars.e2, &k2);
        e1_common = e1_common && k2 > 0;  // root e2=0 i.e. (1:0)
        e2_common = e2_common && k1 > 0;
        stripped.push_back(b);
    }
    // univariate gcd in t = e1/e2 via Euclid over Q
    auto to_univ = [&](const MultiPoly& b) {
        int d = b.degree_in(vars.e1);
        std::vector<Rational> c(static_cast<std::size_t>(d) + 1, Rational(0));
        for (const auto& t : b.terms()) c[t.e[vars.e1]] = t.c;
        return c;
    };
    auto degu = [](const std::vector<Rational>& p) {
        int d = -1;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (sign(p[i]) != 0) d = static_cast<int>(i);
        return d;
    };
    auto gcdu = [&](std::vector<Rational> a, std::vector<Rational> b) {
        while (degu(b) >= 0) {
            // a mod b
            int da = degu(a), db = degu(b);
            while (da >= db && da >= 0) {
                Rational f = a[da] / b[db];
                for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
                a[da] = 0;
                da = degu(a);
            }
            std::swap(a, b);
        }
        return a;
    };
    std::vector<Rational> g = to_univ(stripped[0]);
    for (std::size_t i = 1; i < stripped.size(); ++i) g = gcdu(g, to_univ(stripped[i]));
    int gd = degu(g);
    std::ostringstream cands;
    int root_count = (e1_common ? 1 : 0) + (e2_common ? 1 : 0) + std::max(gd, 0);
    if (root_count == 0) {
        tr.verdict = Verdict::BondsEmpty;
    } else {
        tr.verdict = Verdict::FiniteBonds;
        if (e1_common) tr.bond_candidates.push_back("(e1:e2) = (1:0)");
        if (e2_common) tr.bond_candidates.push_back("(e1:e2) = (0:1)");
        if (gd >= 1) {
            std::ostringstream os;
            os << "gcd of binary forms has degree " << gd << " in e1/e2";
            // identify the classic (1:+-i) factor e1^2+e2^2
            if (gd == 2 && sign(g[1]) == 0 && g[0] == g[2])
                os << " [e1^2+e2^2: candidates (e1:e2) = (1:+-i)]";
            tr.bond_candidates.push_back(os.str());
        }
    }
    return tr.verdict;
}

// --------------------------------------------------------------------------
// Beta classification.
// --------------------------------------------------------------------------

struct BetaClass {
    int value = 2;  // -1, 0, 1; 2 encodes "none/unknown"
    std::string reason;
};

inline BetaClass beta_classify(const PodDesign& d,
                               const std::vector<StudyPointD>& motion_samples = {},
                               double tol = 1e-6) {
    BetaClass out;
    auto ms = cls::detail::platform_pts(d), Ms = cls::detail::base_pts(d);
    if (geo::fit_map(ms, Ms, geo::MapKind::Congruence)) {
        out.value = -1;
        out.reason = "congruent platform and base: pure 2-dimensional translation";
        return out;
    }
    if (motion_samples.size() < 8) {
        out.reason = "insufficient samples";
        throw std::invalid_argument("beta_classify: insufficient samples");
    }
    // dimension of the Euler-parameter image by local PCA
    std::vector<Eigen::Vector4d> pts;
    for (const auto& s : motion_samples) {
        Eigen::Vector4d v(s.e[0], s.e[1], s.e[2], s.e[3]);
        double n = v.norm();
        if (n == 0) continue;
        v /= n;
        if (v(0) < 0 || (v(0) == 0 && v(1) < 0)) v = -v;
        pts.push_back(v);
    }
    // pick the sample closest to the median as anchor; use nearest third
    Eigen::Vector4d anchor = pts[pts.size() / 2];
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i = 0; i < pts.size(); ++i) dist.push_back({(pts[i] - anchor).norm(), i});
    std::sort(dist.begin(), dist.end());
    std::size_t k = std::max<std::size_t>(6, pts.size() / 3);
    k = std::min(k, pts.size());
    Eigen::MatrixXd m(k, 4);
    for (std::size_t i = 0; i < k; ++i) m.row(i) = (pts[dist[i].second] - anchor).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    auto sv = svd.singularValues();
    double scale = dist[k - 1].first;  // neighborhood radius
    int dim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > std::max(tol, 1e-3 * scale)) ++dim;
    out.value = dim - 1;
    if (out.value > 1) out.value = 1;
    std::ostringstream os;
    os << "Euler-image local dimension " << dim << " -> beta = " << out.value;
    out.reason = os.str();
    return out;
}

}  // namespace pentapod::bonds
