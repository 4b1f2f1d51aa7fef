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


#include <doctest.h>

#include "test_util.hpp"
#include "tmod/errors.hpp"
#include "tmod/sigma_poly.hpp"

using namespace tmod;
using namespace tmod::testing;

namespace {

const GaloisField* field(std::uint32_t q) { return GaloisField::for_order(q); }
PerfectFieldElement th(const GaloisField* f) { return PerfectFieldElement::theta(f, 1); }
PerfectFieldElement one(const GaloisField* f) { return PerfectFieldElement::one(f); }
SkewLaurent s(const GaloisField* f, std::int64_t k = 1) { return SkewLaurent::monomial(one(f), k); }
SkewLaurent c(const PerfectFieldElement& x) { return SkewLaurent::constant(x); }

struct ThreeSlopes {
    SigmaTPoly h, g, f;
};

// h = g*f with g = s^3 + th*s*t + t^4 and f = s + t.
ThreeSlopes three_slopes(const GaloisField* fl) {
    const SkewLaurent ts = SkewLaurent::monomial(th(fl), 1);
    ThreeSlopes x;
    x.g = SigmaTPoly({s(fl, 3), ts, {}, {}, c(one(fl))});
    x.f = SigmaTPoly({s(fl), c(one(fl))});
    x.h = SigmaTPoly({s(fl, 4), SkewLaurent::monomial(th(fl), 2) + s(fl, 3), ts, {}, s(fl), c(one(fl))});
    return x;
}

bool vanishes(const SigmaTPoly& x) { return x.is_indistinguishable_zero(); }

// Every known coefficient of x satisfies v(x_i) + i*c >= bound.
bool bounded_below(const SigmaTPoly& x, const Rational& c, const Rational& bound) {
    for (int i = 0; i <= x.degree(); ++i) {
        const Valuation v = x.coefficients()[static_cast<std::size_t>(i)].valuation();
        if (v.known() && Rational(v.value) + c * i < bound) return false;
    }
    return true;
}

std::vector<Edge> all_edges(const std::vector<SigmaTPoly>& fs) {
    std::vector<Edge> out;
    for (const auto& f : fs)
        for (const Edge& e : newton_polygon(f).edges()) out.push_back(e);
    return merge_edges(out);
}

}  // namespace

TEST_CASE("hull of the worked example") {
    // v(a0)=3, v(a1)=2, v(a2)=v(a3)=1, monic of degree 5
    const auto np = NewtonPolygon::lower_hull({{0, 3}, {1, 2}, {2, 1}, {3, 1}, {5, 0}});
    CHECK(np.vertices() == std::vector<Point>{{0, 3}, {2, 1}, {5, 0}});
    CHECK(np.edges() == std::vector<Edge>{{2, Rational(-1)}, {3, Rational(-1, 3)}});
    CHECK(np.width() == 5);
    CHECK(np.height_at(1) == Rational(2));
    CHECK(np.height_at(3) == Rational(2, 3));
    CHECK(np.points().size() == 5);
}

TEST_CASE("hull properties on random point sets") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        std::vector<Point> pts;
        const int n = static_cast<int>(uniform(rng, 1, 8));
        for (int i = 0; i < n; ++i) pts.push_back({uniform(rng, 0, 9), uniform(rng, -6, 6)});
        const auto np = NewtonPolygon::lower_hull(pts);
        const auto edges = np.edges();
        std::int64_t total = 0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            total += edges[k].length;
            if (k > 0) CHECK(edges[k - 1].slope < edges[k].slope);
        }
        CHECK(total == np.width());
        for (const Point& p : pts) CHECK(Rational(p.y) >= np.height_at(p.x));
    }
}

TEST_CASE("Newton polygons of sample polynomials") {
    const GaloisField* f = field(3);
    // s + t: one edge from (0,1) to (1,0)
    const SigmaTPoly a({s(f), c(one(f))});
    CHECK(newton_polygon(a).vertices() == std::vector<Point>{{0, 1}, {1, 0}});
    CHECK(newton_polygon(a).edges() == std::vector<Edge>{{1, Rational(-1)}});
    CHECK(v_c(a, Rational(1)) == Rational(1));
    CHECK(v_c(a, Rational(0)) == Rational(0));

    // (t - th)^d - s^-1: one edge from (0,-1) to (d,0)
    for (int d = 1; d <= 4; ++d) {
        SigmaTPoly p = SigmaTPoly::constant(c(one(f)));
        for (int k = 0; k < d; ++k) p = p * SigmaTPoly::linear(c(th(f)), f);
        p = p - SigmaTPoly::constant(s(f, -1));
        const auto np = newton_polygon(p);
        CHECK(np.vertices() == std::vector<Point>{{0, -1}, {d, 0}});
        CHECK(np.edges() == std::vector<Edge>{{d, Rational(1, d)}});
    }

    const ThreeSlopes x = three_slopes(f);
    CHECK(x.g * x.f == x.h);
    CHECK(newton_polygon(x.h).vertices() == std::vector<Point>{{0, 4}, {1, 2}, {2, 1}, {5, 0}});
    CHECK(newton_polygon(x.h).slopes() == std::vector<Rational>{Rational(-2), Rational(-1), Rational(-1, 3)});
    const auto j = newton_polygon(x.f).to_json();
    CHECK(j.dump() == R"({"vertices":[[0,1],[1,0]],"edges":[{"length":1,"slope":"-1"}]})");
}

TEST_CASE("indistinguishable coefficients") {
    const GaloisField* f = field(2);
    // O(s^5) at t^1 lies above the segment from (0,0) to (2,0): tolerated.
    const SigmaTPoly a({c(one(f)), SkewLaurent::zero_to(5), c(one(f))});
    CHECK(newton_polygon(a).vertices() == std::vector<Point>{{0, 0}, {2, 0}});
    // O(s^0) at t^1 could be a vertex.
    const SigmaTPoly b({c(one(f)), SkewLaurent::zero_to(0), c(one(f))});
    CHECK_THROWS_AS(newton_polygon(b), AmbiguousValuation);
    CHECK_THROWS_AS(v_c(b, Rational(0)), AmbiguousValuation);
    CHECK(v_c_lower_bound(b, Rational(0)) == Rational(0));
    // O(s^3) as the constant term could end the polygon early.
    const SigmaTPoly e({SkewLaurent::zero_to(3), c(one(f))});
    CHECK_THROWS_AS(newton_polygon(e), AmbiguousValuation);
}

TEST_CASE("v_c is a valuation") {
    std::mt19937_64 rng(42);
    for (std::uint32_t q : {2u, 3u}) {
        const GaloisField* f = field(q);
        for (int it = 0; it < 50; ++it) {
            const auto a = random_sigma_t(rng, f, static_cast<int>(uniform(rng, 0, 3)), -3, 3);
            const auto b = random_sigma_t(rng, f, static_cast<int>(uniform(rng, 0, 3)), -3, 3);
            const Rational cc(uniform(rng, -4, 4), uniform(rng, 1, 3));
            CHECK(v_c(a * b, cc) == v_c(a, cc) + v_c(b, cc));
            CHECK(v_c(a + b + SigmaTPoly::constant(s(f, 9)), cc) >=
                  std::min({v_c(a, cc), v_c(b, cc), v_c(SigmaTPoly::constant(s(f, 9)), cc)}));
        }
    }
}

TEST_CASE("product law for Newton polygons") {
    std::mt19937_64 rng(43);
    for (std::uint32_t q : {2u, 3u}) {
        const GaloisField* f = field(q);
        for (int it = 0; it < 60; ++it) {
            const auto a = random_sigma_t(rng, f, static_cast<int>(uniform(rng, 0, 4)), -3, 3);
            const auto b = random_sigma_t(rng, f, static_cast<int>(uniform(rng, 0, 4)), -3, 3);
            const auto na = newton_polygon(a);
            const auto nb = newton_polygon(b);
            const auto nab = newton_polygon(b * a);
            std::vector<Edge> both = na.edges();
            for (const Edge& e : nb.edges()) both.push_back(e);
            CHECK(nab.edges() == merge_edges(both));
            const Point start{na.vertices().front().x + nb.vertices().front().x,
                              na.vertices().front().y + nb.vertices().front().y};
            CHECK(nab.vertices().front() == start);
        }
    }
}

TEST_CASE("division of a known product") {
    const GaloisField* f = field(3);
    const ThreeSlopes x = three_slopes(f);
    const auto r1 = right_divide(x.h, x.f, 20);
    CHECK(r1.quotient == x.g);
    CHECK(r1.remainder.is_zero());
    const auto r2 = left_divide(x.h, x.g, 20);
    CHECK(r2.quotient == x.f);
    CHECK(r2.remainder.is_zero());
    const auto r3 = right_divide(x.f, x.f, 20);
    CHECK(r3.quotient == SigmaTPoly::constant(c(one(f))));
    CHECK(r3.remainder.is_zero());
    const auto r4 = left_divide(x.g, x.g, 20);
    CHECK(r4.quotient == SigmaTPoly::constant(c(one(f))));
    CHECK_THROWS_AS(right_divide(x.h, SigmaTPoly{}, 20), DivisionByZero);
}

TEST_CASE("division contracts on random inputs") {
    std::mt19937_64 rng(44);
    const GaloisField* f = field(3);
    for (int it = 0; it < 60; ++it) {
        const int dh = static_cast<int>(uniform(rng, 0, 4));
        const auto h = random_sigma_t(rng, f, dh, -3, 3);
        const auto g = random_sigma_t(rng, f, static_cast<int>(uniform(rng, 0, dh)), -3, 3);
        const std::int64_t n = 12;
        const auto rd = right_divide(h, g, n);
        const auto ld = left_divide(h, g, n);
        CHECK(rd.remainder.degree() < g.degree());
        CHECK(ld.remainder.degree() < g.degree());
        CHECK(vanishes(rd.quotient * g + rd.remainder - h));
        CHECK(vanishes(g * ld.quotient + ld.remainder - h));
        CHECK(right_divide(h, g, n) == rd);
        // Valuation bounds, for c where the leading coefficient attains v_c(g).
        const auto slopes = newton_polygon(g).slopes();
        Rational cc = slopes.empty() ? Rational(0) : -slopes.back();
        cc += Rational(uniform(rng, 0, 3), 2);
        if (g.degree() == 0 || Rational(g.leading().valuation().value) + cc * g.degree() == v_c(g, cc)) {
            const Rational vh = v_c(h, cc);
            const Rational vg = v_c(g, cc);
            CHECK(bounded_below(rd.remainder, cc, vh));
            CHECK(bounded_below(rd.quotient, cc, vh - vg));
            CHECK(bounded_below(ld.remainder, cc, vh));
            CHECK(bounded_below(ld.quotient, cc, vh - vg));
        }
    }
}

TEST_CASE("first edge of a three-slope product") {
    const GaloisField* f = field(3);
    const ThreeSlopes x = three_slopes(f);
    const auto right = factor_first_edge(x.h, Side::Right, 6);
    CHECK(right.f.degree() == 1);
    CHECK(newton_polygon(right.f).edges() == std::vector<Edge>{{1, Rational(-2)}});
    CHECK(v_c_lower_bound(x.h - right.f * right.g, Rational(2)) >= v_c(x.h, Rational(2)) + 6);
    const auto left = factor_first_edge(x.h, Side::Left, 6);
    CHECK(newton_polygon(left.f).edges() == std::vector<Edge>{{1, Rational(-2)}});
    CHECK(v_c_lower_bound(x.h - left.g * left.f, Rational(2)) >= v_c(x.h, Rational(2)) + 6);

    CHECK_THROWS_AS(factor_first_edge(x.f, Side::Right, 5), SingleEdge);

    const auto parts = slope_decomposition(x.h, 6);
    REQUIRE(parts.size() == 3);
    CHECK(newton_polygon(parts[0]).edges() == std::vector<Edge>{{1, Rational(-2)}});
    CHECK(newton_polygon(parts[1]).edges() == std::vector<Edge>{{1, Rational(-1)}});
    CHECK(newton_polygon(parts[2]).edges() == std::vector<Edge>{{3, Rational(-1, 3)}});
    CHECK(slope_decomposition(x.f, 5) == std::vector<SigmaTPoly>{x.f});
}

TEST_CASE("slope decomposition recovers constructed factors") {
    std::mt19937_64 rng(45);
    for (int it = 0; it < 12; ++it) {
        const GaloisField* f = field(static_cast<std::uint32_t>(uniform(rng, 2, 3)));
        const SlopeInstance x = random_slope_instance(rng, f);
        const auto got = slope_decomposition(x.h, 5);
        CHECK(all_edges(got) == merge_edges(x.edges));
        SigmaTPoly prod = SigmaTPoly::constant(c(one(f)));
        for (const auto& p : got) prod = prod * p;
        const Rational c1 = -newton_polygon(x.h).slopes().front();
        CHECK(v_c_lower_bound(x.h - prod, c1) >= v_c(x.h, c1) + 5);
    }
}

TEST_CASE("rendering") {
    const GaloisField* f = field(3);
    const ThreeSlopes x = three_slopes(f);
    CHECK(x.f.to_string() == "s + t");
    CHECK(SigmaTPoly({SkewLaurent::monomial(th(f), 2) + s(f, 3), c(one(f))}).to_string() == "th*s^2 + s^3 + t");
    CHECK(to_string(Rational(-2, 4)) == "-1/2");
    CHECK(to_string(Rational(3)) == "3");
}
