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


#ifndef TMOD_SIGMA_POLY_HPP
#define TMOD_SIGMA_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "tmod/skew_laurent.hpp"

namespace tmod {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" for integers.
std::string to_string(const Rational& r);

struct Point {
    std::int64_t x;
    std::int64_t y;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Edge {
    std::int64_t length;
    Rational slope;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Lower convex hull of finitely many integer points with distinct x.
 * Collinear interior points are not vertices, so consecutive edges have
 * strictly increasing slopes.
 */
class NewtonPolygon {
   public:
    NewtonPolygon() = default;
    /// Points in any order; for repeated x the lowest y is used.
    static NewtonPolygon lower_hull(std::vector<Point> points);

    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    std::vector<Edge> edges() const;
    std::vector<Rational> slopes() const;
    /// Sum of edge lengths.
    std::int64_t width() const noexcept;
    /// Height of the hull above x, for x between the first and last vertex.
    Rational height_at(std::int64_t x) const;

    nlohmann::ordered_json to_json() const;

    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) { return a.vertices_ == b.vertices_; }

   private:
    std::vector<Point> points_;
    std::vector<Point> vertices_;
};

/**
 * SVG 1.1 drawing of one or more polygons on a shared integer grid:
 * x is the t-degree, y the s-valuation, growing upwards.
 */
std::string to_svg(const std::vector<NewtonPolygon>& polygons);

/// Edges sorted by slope, with equal slopes merged into one longer edge.
std::vector<Edge> merge_edges(std::vector<Edge> edges);

/**
 * Polynomial in a central variable t with coefficients in K((s)).
 * Coefficients are indexed by t-degree; trailing exact zeros are dropped.
 */
class SigmaTPoly {
   public:
    SigmaTPoly() = default;
    explicit SigmaTPoly(std::vector<SkewLaurent> coeffs);
    static SigmaTPoly constant(const SkewLaurent& c) { return SigmaTPoly({c}); }
    /// c * t^k.
    static SigmaTPoly monomial(const SkewLaurent& c, int k);
    /// t - a.
    static SigmaTPoly linear(const SkewLaurent& a, const GaloisField* f);

    const std::vector<SkewLaurent>& coefficients() const noexcept { return coeffs_; }
    /// The t^i coefficient (exact zero beyond the degree).
    SkewLaurent coefficient(int i) const;
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const SkewLaurent& leading() const { return coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && leading().is_one(); }
    /// Every coefficient exact.
    bool is_exact() const noexcept;
    /// Minimal coefficient precision (kExact if exact).
    std::int64_t precision() const noexcept;
    /// Every coefficient is exact zero or indistinguishable from zero.
    bool is_indistinguishable_zero() const noexcept;

    SigmaTPoly operator-() const;
    friend SigmaTPoly operator+(const SigmaTPoly& a, const SigmaTPoly& b);
    friend SigmaTPoly operator-(const SigmaTPoly& a, const SigmaTPoly& b);
    friend SigmaTPoly operator*(const SigmaTPoly& a, const SigmaTPoly& b);
    SigmaTPoly& operator+=(const SigmaTPoly& b) { return *this = *this + b; }
    SigmaTPoly& operator-=(const SigmaTPoly& b) { return *this = *this - b; }
    /// c * f and f * c for a scalar c.
    SigmaTPoly left_scaled(const SkewLaurent& c) const;
    SigmaTPoly right_scaled(const SkewLaurent& c) const;
    /// f * t^k.
    SigmaTPoly shifted(int k) const;
    /// Coefficient-wise truncation.
    SigmaTPoly truncated(std::int64_t n) const;
    /// Coefficients at t-degree <= k.
    SigmaTPoly head(int k) const;

    friend bool operator==(const SigmaTPoly& a, const SigmaTPoly& b) = default;

    /// "c0 + (c1)*t + ..." in increasing t-degree.
    std::string to_string() const;

   private:
    void trim();
    std::vector<SkewLaurent> coeffs_;
};

/**
 * Newton polygon of the points (i, v(a_i)), skipping zero coefficients.
 * A coefficient indistinguishable from zero at precision N is accepted when
 * (i, N) lies strictly above the hull of the known points, since its true
 * point can then not be a vertex; otherwise AmbiguousValuation(i).
 */
NewtonPolygon newton_polygon(const SigmaTPoly& f);

/// min_i v(f_i) + i*c; AmbiguousValuation if an indistinguishable
/// coefficient could attain the minimum. Undefined (throws) for zero f.
Rational v_c(const SigmaTPoly& f, const Rational& c);

/// A lower bound for v_c(f), reading an indistinguishable coefficient at
/// precision N as v >= N; nullopt (+infinity) for exact zero.
std::optional<Rational> v_c_lower_bound(const SigmaTPoly& f, const Rational& c);

struct DivisionResult {
    SigmaTPoly quotient;
    SigmaTPoly remainder;
    friend bool operator==(const DivisionResult&, const DivisionResult&) = default;
};

/**
 * h = q*f + r with deg r < deg f. The inverse of the leading coefficient of f
 * is computed to absolute precision `precision` unless it is a monomial.
 */
DivisionResult right_divide(const SigmaTPoly& h, const SigmaTPoly& f, std::int64_t precision);
/// h = f*q + r with deg r < deg f.
DivisionResult left_divide(const SigmaTPoly& h, const SigmaTPoly& f, std::int64_t precision);

enum class Side {
    Right,  ///< h = f * g
    Left,   ///< h = g * f
};

struct Factorization {
    SigmaTPoly f;  ///< carries the first edge of N_h
    SigmaTPoly g;
    int iterations = 0;
};

/**
 * Splits off the first edge of N_h by the lifting iteration
 * f <- f + r, g <- g + q. With c the negated first slope, stops once
 * v_c(h - fg) >= v_c(h) + precision (or the residual is indistinguishable
 * from zero); coefficients of f and g are only kept to the precision this
 * needs. Throws SingleEdge, or PrecisionExhausted after max_iterations.
 */
Factorization factor_first_edge(const SigmaTPoly& h, Side side, std::int64_t precision, int max_iterations = 200);

/**
 * h = f_1 * f_2 * ... * f_k with single-edge factors in increasing slope
 * order, by repeated right splits. Each split is made to the given precision
 * at its own c; the product then satisfies
 * v_c(h - f_1...f_k) >= v_c(h) + precision for c = -(smallest slope).
 */
std::vector<SigmaTPoly> slope_decomposition(const SigmaTPoly& h, std::int64_t precision);

}  // namespace tmod

#endif
