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

#include "tmod/normal_forms.hpp"

#include <algorithm>
#include <random>
#include <tuple>
#include <utility>

#include "tmod/errors.hpp"

namespace tmod {

SigmaMatrix::SigmaMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
}

SigmaMatrix SigmaMatrix::from_tau(const TauMatrix& m, std::int64_t shift) {
    SigmaMatrix r(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r(i, j) = SkewLaurent::from_tau(m(i, j)).shifted_left(shift);
    return r;
}

SigmaMatrix SigmaMatrix::stack(const std::vector<SigmaMatrix>& blocks, bool vertical) {
    if (blocks.empty()) return {};
    int rows = 0;
    int cols = 0;
    for (const auto& b : blocks) {
        if (vertical ? b.cols() != blocks.front().cols() : b.rows() != blocks.front().rows())
            throw Error("block dimensions do not match");
        rows = vertical ? rows + b.rows() : b.rows();
        cols = vertical ? b.cols() : cols + b.cols();
    }
    SigmaMatrix r(rows, cols);
    int offset = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                if (vertical)
                    r(offset + i, j) = b(i, j);
                else
                    r(i, offset + j) = b(i, j);
            }
        offset += vertical ? b.rows() : b.cols();
    }
    return r;
}

SigmaMatrix operator*(const SigmaMatrix& a, const SigmaMatrix& b) {
    if (a.cols() != b.rows()) throw Error("dimension mismatch in matrix product");
    SigmaMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_exact_zero()) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_exact_zero()) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

DiagonalProfile diagonal_profile_mod(const SigmaMatrix& b, int s) {
    if (s < 1) throw Error("modulus exponent must be positive");
    const int rows = b.rows();
    const int cols = b.cols();
    std::vector<QuotientRingElement> a;
    a.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a.push_back(QuotientRingElement::from_series(b(i, j), s));
    auto at = [&](int i, int j) -> QuotientRingElement& {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + j];
    };

    std::vector<bool> row_done(static_cast<std::size_t>(rows));
    std::vector<bool> col_done(static_cast<std::size_t>(cols));
    DiagonalProfile out;
    const int k_max = std::min(rows, cols);
    for (int k = 0; k < k_max; ++k) {
        int pi = -1;
        int pj = -1;
        int best = s;
        for (int i = 0; i < rows; ++i) {
            if (row_done[i]) continue;
            for (int j = 0; j < cols; ++j) {
                if (col_done[j]) continue;
                const int v = at(i, j).valuation();
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        // p = s^v * c with c a unit; row i' gets row i' - x * row pi where
        // x * p = a(i', pj), i.e. x * s^v = a(i', pj) * c^-1.
        const QuotientRingElement c_inv = at(pi, pj).unshifted_left(best).inverse();
        for (int i = 0; i < rows; ++i) {
            if (i == pi || row_done[i] || at(i, pj).is_zero()) continue;
            const QuotientRingElement x = (at(i, pj) * c_inv).unshifted_right(best);
            for (int j = 0; j < cols; ++j)
                if (!col_done[j]) at(i, j) = at(i, j) - x * at(pi, j);
        }
        // Column operations would only touch row pi, which leaves with the pivot.
        row_done[pi] = true;
        col_done[pj] = true;
        out.nu.push_back(best);
    }
    out.at_least_s = k_max - static_cast<int>(out.nu.size());
    return out;
}

int rank_mod(const SigmaMatrix& b, int s) { return static_cast<int>(diagonal_profile_mod(b, s).nu.size()); }

SigmaTMatrix::SigmaTMatrix(int d) : d_(d), entries_(static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    if (d < 1) throw Error("matrix dimension must be at least 1");
}

SigmaTMatrix SigmaTMatrix::characteristic(const TauMatrix& d, const GaloisField* f) {
    SigmaTMatrix c(d.dim());
    for (int i = 0; i < d.dim(); ++i)
        for (int j = 0; j < d.dim(); ++j) {
            const SkewLaurent e = SkewLaurent::from_tau(d(i, j));
            c(i, j) = i == j ? SigmaTPoly::linear(e, f) : SigmaTPoly::constant(-e);
        }
    return c;
}

namespace {

// Thrown inside one elimination run when a zero test is undecided.
struct Undecided {};

class Eliminator {
   public:
    Eliminator(const SigmaTMatrix& c, std::int64_t precision, bool assume, std::optional<std::uint64_t> seed)
        : d_(c.dim()), precision_(precision), assume_(assume) {
        m_.reserve(static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) m_.push_back(c(i, j));
        if (seed) rng_.emplace(*seed);
    }

    DiagonalForm run() {
        DiagonalForm out;
        for (int k = 0; k < d_; ++k) {
            for (;;) {
                select_pivot(k);
                if (clear(k)) break;
            }
            out.entries.push_back(monic(at(k, k)));
        }
        for (const auto& e : out.entries) newton_polygon(e);
        out.precision_assumed = assumed_;
        out.precision_used = precision_;
        return out;
    }

   private:
    SigmaTPoly& at(int i, int j) { return m_[static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) + j]; }

    // Drops leading coefficients that are indistinguishable from zero, when
    // allowed; an entry whose degree is undecided cannot be pivoted on.
    void settle(SigmaTPoly& p) {
        while (!p.is_zero() && p.leading().is_indistinguishable_zero()) {
            if (!assume_) throw Undecided{};
            assumed_ = true;
            auto c = p.coefficients();
            c.pop_back();
            while (!c.empty() && c.back().is_indistinguishable_zero()) c.pop_back();
            p = SigmaTPoly(std::move(c));
        }
    }

    void select_pivot(int k) {
        using Key = std::tuple<int, Rational, int>;
        std::vector<std::pair<Key, std::pair<int, int>>> candidates;
        for (int i = k; i < d_; ++i)
            for (int j = k; j < d_; ++j) {
                SigmaTPoly& e = at(i, j);
                settle(e);
                if (e.is_zero()) continue;
                const Rational v0 = v_c_lower_bound(e, Rational(0)).value_or(Rational(0));
                candidates.push_back({{e.degree(), v0, i * d_ + j}, {i, j}});
            }
        if (candidates.empty()) throw Error("matrix is singular over K((s))[t]");
        std::sort(candidates.begin(), candidates.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t pick = 0;
        if (rng_) {
            const int deg = std::get<0>(candidates.front().first);
            std::size_t n = 0;
            while (n < candidates.size() && std::get<0>(candidates[n].first) == deg) ++n;
            pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(*rng_);
        }
        const auto [pi, pj] = candidates[pick].second;
        if (pi != k)
            for (int j = 0; j < d_; ++j) std::swap(at(pi, j), at(k, j));
        if (pj != k)
            for (int i = 0; i < d_; ++i) std::swap(at(i, pj), at(i, k));
    }

    // One round of row and column reduction against the pivot at (k, k);
    // true once its row and column are clear.
    bool clear(int k) {
        const SigmaTPoly p = at(k, k);
        bool clean = true;
        for (int i = k + 1; i < d_; ++i) {
            if (at(i, k).is_zero()) continue;
            const DivisionResult qr = right_divide(at(i, k), p, precision_);
            for (int j = k + 1; j < d_; ++j)
                if (!at(k, j).is_zero()) at(i, j) = at(i, j) - qr.quotient * at(k, j);
            at(i, k) = qr.remainder;
            settle(at(i, k));
            if (!at(i, k).is_zero()) clean = false;
        }
        for (int j = k + 1; j < d_; ++j) {
            if (at(k, j).is_zero()) continue;
            const DivisionResult qr = left_divide(at(k, j), p, precision_);
            for (int i = k + 1; i < d_; ++i)
                if (!at(i, k).is_zero()) at(i, j) = at(i, j) - at(i, k) * qr.quotient;
            at(k, j) = qr.remainder;
            settle(at(k, j));
            if (!at(k, j).is_zero()) clean = false;
        }
        return clean;
    }

    SigmaTPoly monic(const SigmaTPoly& p) const {
        const SkewLaurent& lead = p.leading();
        if (lead.is_one()) return p;
        const SkewLaurent u = lead.inverse(precision_);
        std::vector<SkewLaurent> c;
        for (int i = 0; i < p.degree(); ++i) c.push_back(u * p.coefficients()[static_cast<std::size_t>(i)]);
        c.push_back(SkewLaurent::constant(PerfectFieldElement::one(lead.terms().front().coef.field())));
        return SigmaTPoly(std::move(c));
    }

    int d_;
    std::int64_t precision_;
    bool assume_;
    bool assumed_ = false;
    std::optional<std::mt19937_64> rng_;
    std::vector<SigmaTPoly> m_;
};

}  // namespace

DiagonalForm diagonalize_sigma_t(const SigmaTMatrix& c, const DiagonalizeOptions& options) {
    if (options.precision < 1) throw Error("precision must be positive");
    std::int64_t precision = options.precision;
    for (;;) {
        const bool last = precision >= options.precision_cap;
        try {
            return Eliminator(c, precision, last, options.pivot_seed).run();
        } catch (const Undecided&) {
        } catch (const AmbiguousValuation&) {
            if (last) throw PrecisionExhausted("Newton polygon not determined", precision * 2);
        } catch (const AmbiguousZero&) {
            if (last) throw PrecisionExhausted("pivot not determined", precision * 2);
        }
        precision = std::min(options.precision_cap, precision * 2);
    }
}

std::vector<Edge> aggregated_edges(const std::vector<SigmaTPoly>& diagonal) {
    std::vector<Edge> edges;
    for (const auto& e : diagonal) {
        if (e.degree() < 1) continue;
        for (const auto& edge : newton_polygon(e).edges()) edges.push_back(edge);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.slope != b.slope ? a.slope < b.slope : a.length < b.length;
    });
    return edges;
}

}  // namespace tmod
