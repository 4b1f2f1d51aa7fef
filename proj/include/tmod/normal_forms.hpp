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

#ifndef TMOD_NORMAL_FORMS_HPP
#define TMOD_NORMAL_FORMS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tmod/sigma_poly.hpp"
#include "tmod/skew_laurent.hpp"
#include "tmod/skew_tau.hpp"

namespace tmod {

/// Dense rows x cols matrix of skew Laurent series, row-major.
class SigmaMatrix {
   public:
    SigmaMatrix() = default;
    SigmaMatrix(int rows, int cols);

    /// Entrywise tau^i -> s^-i, then left multiplication by s^shift.
    static SigmaMatrix from_tau(const TauMatrix& m, std::int64_t shift = 0);
    /// Blocks stacked top to bottom (vertical) or left to right.
    static SigmaMatrix stack(const std::vector<SigmaMatrix>& blocks, bool vertical);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const SkewLaurent& operator()(int i, int j) const { return entries_[index(i, j)]; }
    SkewLaurent& operator()(int i, int j) { return entries_[index(i, j)]; }

    friend SigmaMatrix operator*(const SigmaMatrix& a, const SigmaMatrix& b);
    friend bool operator==(const SigmaMatrix&, const SigmaMatrix&) = default;

   private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + j; }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SkewLaurent> entries_;
};

/**
 * Exponents of a s-power diagonal form modulo s^s: `nu` lists the exponents
 * below s in non-decreasing order, `at_least_s` counts the remaining
 * diagonal positions (exponent >= s, including zero).
 */
struct DiagonalProfile {
    std::vector<int> nu;
    int at_least_s = 0;
    friend bool operator==(const DiagonalProfile&, const DiagonalProfile&) = default;
};

/// Elimination over K{s}/(s^s); every entry must be exact with v >= 0.
DiagonalProfile diagonal_profile_mod(const SigmaMatrix& b, int s);

/// #{ nu_i < s }.
int rank_mod(const SigmaMatrix& b, int s);

/// Square matrix over K((s))[t].
class SigmaTMatrix {
   public:
    SigmaTMatrix() = default;
    explicit SigmaTMatrix(int d);
    /// t*1 - D with D embedded entrywise.
    static SigmaTMatrix characteristic(const TauMatrix& d, const GaloisField* f);

    int dim() const noexcept { return d_; }
    const SigmaTPoly& operator()(int i, int j) const { return entries_[index(i, j)]; }
    SigmaTPoly& operator()(int i, int j) { return entries_[index(i, j)]; }

   private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) + j; }
    int d_ = 0;
    std::vector<SigmaTPoly> entries_;
};

struct DiagonalizeOptions {
    /// Absolute s-precision for inverses of non-monomial pivots.
    std::int64_t precision = 8;
    /// Restarts double the precision up to this value.
    std::int64_t precision_cap = 256;
    /// Ties among pivots of minimal t-degree are broken at random when set.
    std::optional<std::uint64_t> pivot_seed;
};

struct DiagonalForm {
    /// Monic diagonal entries in elimination order.
    std::vector<SigmaTPoly> entries;
    /// Some entry had to be read as zero although it was only
    /// indistinguishable from zero at the final precision.
    bool precision_assumed = false;
    std::int64_t precision_used = 0;
};

/**
 * Two-sided Euclidean elimination of C over K((s))[t]. Pivots have minimal
 * t-degree, then minimal v_0, then come first in row-major order. The
 * Newton polygon of every entry is computable on return.
 */
DiagonalForm diagonalize_sigma_t(const SigmaTMatrix& c, const DiagonalizeOptions& options = {});

/// Edges of every entry, sorted by slope, then length.
std::vector<Edge> aggregated_edges(const std::vector<SigmaTPoly>& diagonal);

}  // namespace tmod

#endif
