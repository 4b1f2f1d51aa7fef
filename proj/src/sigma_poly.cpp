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


#include "tmod/sigma_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tmod/errors.hpp"

namespace tmod {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

// Twice the signed area of the triangle (a, b, c); positive for a left turn.
__int128 cross(const Point& a, const Point& b, const Point& c) {
    return static_cast<__int128>(b.x - a.x) * (c.y - a.y) - static_cast<__int128>(b.y - a.y) * (c.x - a.x);
}

}  // namespace

NewtonPolygon NewtonPolygon::lower_hull(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.x == b.x; }),
                 points.end());
    NewtonPolygon np;
    np.points_ = points;
    for (const Point& p : points) {
        while (np.vertices_.size() >= 2 && cross(np.vertices_[np.vertices_.size() - 2], np.vertices_.back(), p) <= 0)
            np.vertices_.pop_back();
        np.vertices_.push_back(p);
    }
    return np;
}

std::vector<Edge> NewtonPolygon::edges() const {
    std::vector<Edge> out;
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
        const Point& a = vertices_[k - 1];
        const Point& b = vertices_[k];
        out.push_back({b.x - a.x, Rational(b.y - a.y, b.x - a.x)});
    }
    return out;
}

std::vector<Rational> NewtonPolygon::slopes() const {
    std::vector<Rational> out;
    for (const Edge& e : edges()) out.push_back(e.slope);
    return out;
}

std::int64_t NewtonPolygon::width() const noexcept {
    return vertices_.empty() ? 0 : vertices_.back().x - vertices_.front().x;
}

Rational NewtonPolygon::height_at(std::int64_t x) const {
    if (vertices_.empty() || x < vertices_.front().x || x > vertices_.back().x)
        throw Error("abscissa outside the Newton polygon");
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
        const Point& a = vertices_[k - 1];
        const Point& b = vertices_[k];
        if (x <= b.x) return Rational(a.y) + Rational(b.y - a.y, b.x - a.x) * (x - a.x);
    }
    return Rational(vertices_.back().y);
}

nlohmann::ordered_json NewtonPolygon::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const Point& p : vertices_) j["vertices"].push_back({p.x, p.y});
    j["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : edges()) j["edges"].push_back({{"length", e.length}, {"slope", to_string(e.slope)}});
    return j;
}

std::string to_svg(const std::vector<NewtonPolygon>& polygons) {
    constexpr int kUnit = 40;
    constexpr int kMargin = 30;
    static const char* const kColors[] = {"#1f4e9c", "#b8322a", "#2b7a3d", "#7a4b9c", "#a66a00"};
    std::int64_t x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    for (const auto& np : polygons)
        for (const auto& p : np.points()) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    const std::int64_t width = (x1 - x0) * kUnit + 2 * kMargin;
    const std::int64_t height = (y1 - y0) * kUnit + 2 * kMargin;
    auto px = [&](std::int64_t x) { return (x - x0) * kUnit + kMargin; };
    auto py = [&](std::int64_t y) { return (y1 - y) * kUnit + kMargin; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::int64_t x = x0; x <= x1; ++x)
        out << "<line x1=\"" << px(x) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x) << "\" y2=\"" << py(y1)
            << "\" stroke=\"#e4e4e4\"/>\n";
    for (std::int64_t y = y0; y <= y1; ++y)
        out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(y)
            << "\" stroke=\"#e4e4e4\"/>\n";
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(0)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(0) << "\" y2=\"" << py(y1)
        << "\" stroke=\"black\"/>\n";
    for (std::size_t k = 0; k < polygons.size(); ++k) {
        const NewtonPolygon& np = polygons[k];
        const char* color = kColors[k % std::size(kColors)];
        out << "<g stroke=\"" << color << "\" fill=\"" << color << "\">\n";
        out << "<polyline fill=\"none\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < np.vertices().size(); ++i)
            out << (i ? " " : "") << px(np.vertices()[i].x) << "," << py(np.vertices()[i].y);
        out << "\"/>\n";
        for (const auto& p : np.points()) out << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"3\"/>\n";
        for (const auto& v : np.vertices())
            out << "<text x=\"" << px(v.x) + 5 << "\" y=\"" << py(v.y) - 5 << "\" font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\">("
                << v.x << "," << v.y << ")</text>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<Edge> merge_edges(std::vector<Edge> edges) {
    std::map<Rational, std::int64_t> by_slope;
    for (const Edge& e : edges) by_slope[e.slope] += e.length;
    std::vector<Edge> out;
    for (const auto& [slope, length] : by_slope) out.push_back({length, slope});
    return out;
}

SigmaTPoly::SigmaTPoly(std::vector<SkewLaurent> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

SigmaTPoly SigmaTPoly::monomial(const SkewLaurent& c, int k) {
    if (k < 0) throw Error("negative t-degree");
    std::vector<SkewLaurent> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return SigmaTPoly(std::move(v));
}

SigmaTPoly SigmaTPoly::linear(const SkewLaurent& a, const GaloisField* f) {
    return SigmaTPoly({-a, SkewLaurent::constant(PerfectFieldElement::one(f))});
}

void SigmaTPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

SkewLaurent SigmaTPoly::coefficient(int i) const {
    if (i < 0 || i > degree()) return {};
    return coeffs_[static_cast<std::size_t>(i)];
}

bool SigmaTPoly::is_exact() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const SkewLaurent& c) { return c.is_exact(); });
}

std::int64_t SigmaTPoly::precision() const noexcept {
    std::int64_t p = kExact;
    for (const auto& c : coeffs_) p = std::min(p, c.precision());
    return p;
}

bool SigmaTPoly::is_indistinguishable_zero() const noexcept {
    return std::none_of(coeffs_.begin(), coeffs_.end(), [](const SkewLaurent& c) { return c.is_known_nonzero(); });
}

SigmaTPoly SigmaTPoly::operator-() const {
    SigmaTPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

SigmaTPoly operator+(const SigmaTPoly& a, const SigmaTPoly& b) {
    std::vector<SkewLaurent> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i >= a.coeffs_.size()) v[i] = b.coeffs_[i];
        else if (i >= b.coeffs_.size()) v[i] = a.coeffs_[i];
        else v[i] = a.coeffs_[i] + b.coeffs_[i];
    }
    return SigmaTPoly(std::move(v));
}

SigmaTPoly operator-(const SigmaTPoly& a, const SigmaTPoly& b) { return a + (-b); }

SigmaTPoly operator*(const SigmaTPoly& a, const SigmaTPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<SkewLaurent> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    std::vector<bool> touched(v.size(), false);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_exact_zero()) continue;
            SkewLaurent p = a.coeffs_[i] * b.coeffs_[j];
            v[i + j] = touched[i + j] ? v[i + j] + p : std::move(p);
            touched[i + j] = true;
        }
    }
    return SigmaTPoly(std::move(v));
}

SigmaTPoly SigmaTPoly::left_scaled(const SkewLaurent& c) const {
    SigmaTPoly r = *this;
    for (auto& x : r.coeffs_) x = c * x;
    r.trim();
    return r;
}

SigmaTPoly SigmaTPoly::right_scaled(const SkewLaurent& c) const {
    SigmaTPoly r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    r.trim();
    return r;
}

SigmaTPoly SigmaTPoly::shifted(int k) const {
    if (is_zero()) return {};
    std::vector<SkewLaurent> v(static_cast<std::size_t>(k));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return SigmaTPoly(std::move(v));
}

SigmaTPoly SigmaTPoly::truncated(std::int64_t n) const {
    SigmaTPoly r = *this;
    for (auto& x : r.coeffs_) x = x.truncated(n);
    r.trim();
    return r;
}

SigmaTPoly SigmaTPoly::head(int k) const {
    std::vector<SkewLaurent> v;
    for (int i = 0; i <= k && i <= degree(); ++i) v.push_back(coeffs_[static_cast<std::size_t>(i)]);
    return SigmaTPoly(std::move(v));
}

std::string SigmaTPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const SkewLaurent& c = coeffs_[i];
        if (c.is_exact_zero()) continue;
        if (!first) out << " + ";
        first = false;
        if (i == 0) {
            out << c.to_string();
            continue;
        }
        if (!c.is_one()) {
            std::string cs = c.to_string();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            out << cs << "*";
        }
        out << "t";
        if (i != 1) out << "^" << i;
    }
    return out.str();
}

NewtonPolygon newton_polygon(const SigmaTPoly& f) {
    std::vector<Point> known;
    std::vector<Point> unknown;
    for (int i = 0; i <= f.degree(); ++i) {
        const Valuation v = f.coefficients()[static_cast<std::size_t>(i)].valuation();
        if (v.kind == Valuation::Kind::Known) known.push_back({i, v.value});
        if (v.kind == Valuation::Kind::Indistinguishable) unknown.push_back({i, v.value});
    }
    if (known.empty()) {
        if (!unknown.empty()) throw AmbiguousValuation(static_cast<std::size_t>(unknown.front().x));
        throw Error("Newton polygon of the zero polynomial");
    }
    NewtonPolygon np = NewtonPolygon::lower_hull(known);
    for (const Point& p : unknown) {
        const auto& vs = np.vertices();
        if (p.x < vs.front().x || p.x > vs.back().x || Rational(p.y) <= np.height_at(p.x))
            throw AmbiguousValuation(static_cast<std::size_t>(p.x));
    }
    return np;
}

namespace {

// nullopt: no known coefficient.
std::optional<Rational> known_min(const SigmaTPoly& f, const Rational& c) {
    std::optional<Rational> best;
    for (int i = 0; i <= f.degree(); ++i) {
        const Valuation v = f.coefficients()[static_cast<std::size_t>(i)].valuation();
        if (v.kind != Valuation::Kind::Known) continue;
        const Rational x = Rational(v.value) + c * i;
        if (!best || x < *best) best = x;
    }
    return best;
}

}  // namespace

Rational v_c(const SigmaTPoly& f, const Rational& c) {
    if (f.is_zero()) throw Error("v_c of the zero polynomial");
    const std::optional<Rational> best = known_min(f, c);
    for (int i = 0; i <= f.degree(); ++i) {
        const Valuation v = f.coefficients()[static_cast<std::size_t>(i)].valuation();
        if (v.kind != Valuation::Kind::Indistinguishable) continue;
        if (!best || Rational(v.value) + c * i <= *best) throw AmbiguousValuation(static_cast<std::size_t>(i));
    }
    return *best;
}

std::optional<Rational> v_c_lower_bound(const SigmaTPoly& f, const Rational& c) {
    std::optional<Rational> best = known_min(f, c);
    for (int i = 0; i <= f.degree(); ++i) {
        const Valuation v = f.coefficients()[static_cast<std::size_t>(i)].valuation();
        if (v.kind != Valuation::Kind::Indistinguishable) continue;
        const Rational x = Rational(v.value) + c * i;
        if (!best || x < *best) best = x;
    }
    return best;
}

namespace {

DivisionResult divide(const SigmaTPoly& h, const SigmaTPoly& f, std::int64_t precision, bool right) {
    if (f.is_zero()) throw DivisionByZero();
    const int d = f.degree();
    if (h.degree() < d) return {SigmaTPoly{}, h};
    const SkewLaurent& lead = f.leading();
    if (!lead.is_known_nonzero()) throw AmbiguousValuation(static_cast<std::size_t>(d));
    const SkewLaurent u = lead.inverse(precision);

    std::vector<SkewLaurent> r = h.coefficients();
    std::vector<SkewLaurent> q(static_cast<std::size_t>(h.degree() - d + 1));
    const auto& fc = f.coefficients();
    for (int e = h.degree(); e >= d; --e) {
        const SkewLaurent re = r[static_cast<std::size_t>(e)];
        if (re.is_exact_zero()) continue;
        const int k = e - d;
        // right: q_k f_d = r_e; left: f_d q_k = r_e
        const SkewLaurent qk = right ? re * u : u * re;
        for (int j = 0; j < d; ++j) {
            const SkewLaurent& fj = fc[static_cast<std::size_t>(j)];
            if (fj.is_exact_zero()) continue;
            auto& slot = r[static_cast<std::size_t>(k + j)];
            slot = slot - (right ? qk * fj : fj * qk);
        }
        // Cancelled exactly by the exact quotient coefficient.
        r[static_cast<std::size_t>(e)] = SkewLaurent{};
        q[static_cast<std::size_t>(k)] = qk;
    }
    r.resize(static_cast<std::size_t>(d));
    return {SigmaTPoly(std::move(q)), SigmaTPoly(std::move(r))};
}

}  // namespace

DivisionResult right_divide(const SigmaTPoly& h, const SigmaTPoly& f, std::int64_t precision) {
    return divide(h, f, precision, true);
}

DivisionResult left_divide(const SigmaTPoly& h, const SigmaTPoly& f, std::int64_t precision) {
    return divide(h, f, precision, false);
}

namespace {

std::int64_t ceil_of(const Rational& r) {
    std::int64_t n = r.numerator() / r.denominator();
    if (Rational(n) < r) ++n;
    return n;
}

// Drops every term with v + i*c >= bound; those cannot affect v_c below it.
SigmaTPoly truncate_vc(const SigmaTPoly& f, const Rational& c, const Rational& bound) {
    std::vector<SkewLaurent> v;
    for (int i = 0; i <= f.degree(); ++i)
        v.push_back(f.coefficients()[static_cast<std::size_t>(i)].truncated(ceil_of(bound - c * i)));
    return SigmaTPoly(std::move(v));
}

}  // namespace

Factorization factor_first_edge(const SigmaTPoly& h, Side side, std::int64_t precision, int max_iterations) {
    const NewtonPolygon np = newton_polygon(h);
    const std::vector<Edge> edges = np.edges();
    if (edges.size() < 2) throw SingleEdge();
    const Rational c = -edges.front().slope;
    const int d = static_cast<int>(np.vertices()[1].x);
    const Rational vh = v_c(h, c);
    const auto* field = h.leading().terms().empty() ? nullptr : h.leading().terms().front().coef.field();

    Factorization out{h.head(d), SigmaTPoly::constant(SkewLaurent::constant(PerfectFieldElement::one(field))), 0};
    // v_c(f) = v_c(h) and v_c(g) = 0 throughout; an error of v_c >= v_c(f) + precision
    // in f (resp. v_c(g) + precision in g) only moves fg by v_c(h) + precision.
    const Rational vf = v_c(out.f, c);
    const Rational vg = vh - vf;
    const SkewLaurent& lead = out.f.leading();
    const std::int64_t inverse_precision = -lead.valuation().value + precision + 2;
    for (int it = 0; it <= max_iterations; ++it) {
        const SigmaTPoly e =
            truncate_vc(h - (side == Side::Right ? out.f * out.g : out.g * out.f), c, vh + precision);
        const std::optional<Rational> lb = v_c_lower_bound(e, c);
        if (!lb || e.is_indistinguishable_zero() || *lb - vh >= precision) {
            out.iterations = it;
            return out;
        }
        const DivisionResult qr = side == Side::Right ? left_divide(e, out.f, inverse_precision)
                                                      : right_divide(e, out.f, inverse_precision);
        out.f = truncate_vc(out.f + qr.remainder, c, vf + precision);
        out.g = truncate_vc(out.g + qr.quotient, c, vg + precision);
    }
    throw PrecisionExhausted("slope factorization did not reach the requested precision", precision * 2);
}

std::vector<SigmaTPoly> slope_decomposition(const SigmaTPoly& h, std::int64_t precision) {
    std::vector<SigmaTPoly> factors;
    SigmaTPoly rest = h;
    const Rational last_c = -newton_polygon(h).slopes().back();
    for (;;) {
        const NewtonPolygon np = newton_polygon(rest);
        if (np.edges().size() < 2) break;
        // g is truncated for the current c; later splits read it at smaller c,
        // where each t-power loses (c - last_c) of precision.
        const Rational c = -np.slopes().front();
        const std::int64_t extra = ceil_of((c - last_c) * (np.width() - np.vertices()[1].x));
        Factorization fg = factor_first_edge(rest, Side::Right, precision + extra);
        factors.push_back(std::move(fg.f));
        rest = std::move(fg.g);
    }
    factors.push_back(std::move(rest));
    return factors;
}

}  // namespace tmod
