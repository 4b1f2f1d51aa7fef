/*
   Copyright 2026 The tmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Random generators shared by the unit tests.

#ifndef TMOD_TEST_UTIL_HPP
#define TMOD_TEST_UTIL_HPP

#include <algorithm>
#include <ostream>
#include <random>

#include "tmod/perfect_field.hpp"
#include "tmod/sigma_poly.hpp"
#include "tmod/skew_laurent.hpp"
#include "tmod/skew_tau.hpp"

namespace tmod::testing {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Fq random_fq(std::mt19937_64& rng, const GaloisField* f, bool nonzero = false) {
    return static_cast<Fq>(uniform(rng, nonzero ? 1 : 0, f->q() - 1));
}

/// Random polynomial in th^(1/q^level) with at most `terms` terms of degree <= 4.
inline PerfectFieldElement random_poly(std::mt19937_64& rng, const GaloisField* f, int level, int terms) {
    SparsePoly num;
    for (int k = 0; k <= 4 && static_cast<int>(num.size()) < terms; ++k)
        if (uniform(rng, 0, 1)) num.push_back({k, random_fq(rng, f, true)});
    return PerfectFieldElement::fraction(f, level, num, {{0, 1}});
}

/// Random element of K at a random level in [0, max_level], possibly a fraction.
inline PerfectFieldElement random_element(std::mt19937_64& rng, const GaloisField* f, int max_level = 2,
                                          bool nonzero = false) {
    for (;;) {
        const int level = static_cast<int>(uniform(rng, 0, max_level));
        PerfectFieldElement x = random_poly(rng, f, level, 3);
        if (uniform(rng, 0, 2) == 0) {
            PerfectFieldElement den = random_poly(rng, f, level, 2);
            if (!den.is_zero()) x = x / den;
        }
        if (!nonzero || !x.is_zero()) return x;
    }
}

/// Small coefficients: F_q constants or c*th^k with k in {0,1}.
inline PerfectFieldElement small_element(std::mt19937_64& rng, const GaloisField* f, bool nonzero = false) {
    for (;;) {
        PerfectFieldElement c = PerfectFieldElement::constant(f, random_fq(rng, f));
        if (uniform(rng, 0, 1)) c = c * PerfectFieldElement::theta(f, 1);
        if (!nonzero || !c.is_zero()) return c;
    }
}

/// Polynomial coefficients by default; fractions grow quickly under the
/// twists of a long product.
inline SkewLaurent random_laurent(std::mt19937_64& rng, const GaloisField* f, std::int64_t lo, std::int64_t hi,
                                  bool fractions = false) {
    std::vector<SigmaTerm> terms;
    for (std::int64_t e = lo; e <= hi; ++e)
        if (uniform(rng, 0, 1))
            terms.push_back({e, fractions ? random_element(rng, f, 1) : random_poly(rng, f, 0, 2)});
    return SkewLaurent::from_terms(terms);
}

inline SkewTauPoly random_tau(std::mt19937_64& rng, const GaloisField* f, int max_degree) {
    SkewTauPoly p;
    for (int k = 0; k <= max_degree; ++k)
        if (uniform(rng, 0, 1)) p += SkewTauPoly::monomial(random_element(rng, f, 1), k);
    return p;
}

/// Exact series with support in [lo, hi] and small coefficients.
inline SkewLaurent small_laurent(std::mt19937_64& rng, const GaloisField* f, std::int64_t lo, std::int64_t hi,
                                 double density = 0.5) {
    std::vector<SigmaTerm> terms;
    std::bernoulli_distribution keep(density);
    for (std::int64_t e = lo; e <= hi; ++e)
        if (keep(rng)) terms.push_back({e, small_element(rng, f, true)});
    return SkewLaurent::from_terms(terms);
}

inline SkewLaurent nonzero_small_laurent(std::mt19937_64& rng, const GaloisField* f, std::int64_t lo,
                                         std::int64_t hi) {
    for (;;) {
        SkewLaurent x = small_laurent(rng, f, lo, hi);
        if (x.is_known_nonzero()) return x;
    }
}

/// Exact polynomial of t-degree exactly `degree` with small coefficients.
inline SigmaTPoly random_sigma_t(std::mt19937_64& rng, const GaloisField* f, int degree, std::int64_t lo,
                                 std::int64_t hi) {
    std::vector<SkewLaurent> c;
    for (int i = 0; i < degree; ++i) c.push_back(small_laurent(rng, f, lo, hi, 0.4));
    c.push_back(nonzero_small_laurent(rng, f, lo, hi));
    return SigmaTPoly(std::move(c));
}

/// Monic t^n + ... + a_0 whose Newton polygon is one edge of the given
/// slope from (0, -n*slope) to (n, 0); requires n*slope integral.
inline SigmaTPoly random_single_edge(std::mt19937_64& rng, const GaloisField* f, int n, const Rational& slope) {
    std::vector<SkewLaurent> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = SkewLaurent::constant(PerfectFieldElement::one(f));
    const Rational w0 = -slope * n;
    // a_0 sits on the edge; the others strictly above or on it.
    c[0] = SkewLaurent::monomial(small_element(rng, f, true), w0.numerator());
    for (int i = 1; i < n; ++i) {
        const Rational line = w0 + slope * i;
        std::int64_t lowest = line.numerator() / line.denominator();
        if (Rational(lowest) < line) ++lowest;
        if (uniform(rng, 0, 1)) c[static_cast<std::size_t>(i)] = small_laurent(rng, f, lowest, lowest + 2);
    }
    return SigmaTPoly(std::move(c));
}

struct SlopeInstance {
    SigmaTPoly h;
    std::vector<Edge> edges;
};

/// Product of 2 or 3 single-edge monic factors with distinct slopes a/n,
/// n in {1, 2}, |a| <= 2.
inline SlopeInstance random_slope_instance(std::mt19937_64& rng, const GaloisField* f) {
    SlopeInstance x{SigmaTPoly::constant(SkewLaurent::constant(PerfectFieldElement::one(f))), {}};
    const int k = static_cast<int>(uniform(rng, 2, 3));
    std::vector<Rational> used;
    while (static_cast<int>(x.edges.size()) < k) {
        const int n = static_cast<int>(uniform(rng, 1, 2));
        const Rational slope(uniform(rng, -2, 2), n);
        if (std::find(used.begin(), used.end(), slope) != used.end()) continue;
        used.push_back(slope);
        x.h = x.h * random_single_edge(rng, f, n, slope);
        x.edges.push_back({n, slope});
    }
    return x;
}

}  // namespace tmod::testing

namespace tmod {
inline std::ostream& operator<<(std::ostream& os, const PerfectFieldElement& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SkewLaurent& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SkewTauPoly& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SigmaTPoly& x) { return os << x.to_string(); }
}  // namespace tmod

#endif
