#pragma once

// Shared helpers for the test suites: deterministic random rationals,
// polynomials, and designs.

#include "pentapod/design.hpp"
#include "pentapod/multipoly.hpp"

#include <random>
#include <vector>

namespace ptest {

using namespace pentapod;

struct Rng {
    std::mt19937 gen;
    explicit Rng(uint32_t seed) : gen(seed) {}

    long intval(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(gen);
    }
    Rational rational(long lo = -9, long hi = 9, long maxden = 5) {
        Rational q(intval(lo, hi), intval(1, maxden));
        q.canonicalize();
        return q;
    }
    Rational nonzero_rational(long lo = -9, long hi = 9, long maxden = 5) {
        Rational q = rational(lo, hi, maxden);
        while (sign(q) == 0) q = rational(lo, hi, maxden);
        return q;
    }
    // random sparse polynomial
    MultiPoly poly(const RingPtr& ring, int nterms, int maxdeg_per_var = 2) {
        std::vector<Term> ts;
        for (int t = 0; t < nterms; ++t) {
            Term tm;
            for (std::size_t v = 0; v < ring->size(); ++v)
                tm.e[v] = static_cast<uint16_t>(intval(0, maxdeg_per_var));
            tm.deg = total_degree(tm.e, ring->size());
            tm.c = rational();
            ts.push_back(tm);
        }
        return MultiPoly::from_terms(ring, std::move(ts));
    }
    MultiPoly nonzero_poly(const RingPtr& ring, int nterms, int maxdeg = 2) {
        MultiPoly p = poly(ring, nterms, maxdeg);
        while (p.is_zero()) p = poly(ring, nterms, maxdeg);
        return p;
    }
    // polynomial with guaranteed positive degree in the given variable
    MultiPoly poly_in(const RingPtr& ring, std::size_t var, int deg, int extra_terms) {
        MultiPoly p = poly(ring, extra_terms, 2);
        MultiPoly lead = MultiPoly::variable(ring, ring->name(var), static_cast<uint16_t>(deg));
        return p + nonzero_rational() * lead;
    }
    Point3 point(long lo = -6, long hi = 6) {
        return {rational(lo, hi, 3), rational(lo, hi, 3), rational(lo, hi, 3)};
    }
};

}  // namespace ptest
