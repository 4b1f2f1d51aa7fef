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

#ifndef TMOD_SKEW_TAU_HPP
#define TMOD_SKEW_TAU_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tmod/perfect_field.hpp"

namespace tmod {

/// Degree reported for the zero polynomial.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

/**
 * Element of the twisted polynomial ring K{tau}, tau * a = a^q * tau.
 * Sparse: only nonzero coefficients are stored.
 */
class SkewTauPoly {
   public:
    SkewTauPoly() = default;
    static SkewTauPoly monomial(const PerfectFieldElement& c, int degree);
    static SkewTauPoly constant(const PerfectFieldElement& c) { return monomial(c, 0); }

    const std::map<int, PerfectFieldElement>& coefficients() const noexcept { return coeffs_; }
    PerfectFieldElement coefficient(int k) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// kDegreeOfZero for the zero polynomial.
    int degree() const noexcept { return coeffs_.empty() ? kDegreeOfZero : coeffs_.rbegin()->first; }

    SkewTauPoly operator-() const;
    friend SkewTauPoly operator+(const SkewTauPoly& a, const SkewTauPoly& b);
    friend SkewTauPoly operator-(const SkewTauPoly& a, const SkewTauPoly& b);
    /// sum_k (sum_i a_i * b_{k-i}^(q^i)) tau^k
    friend SkewTauPoly operator*(const SkewTauPoly& a, const SkewTauPoly& b);
    SkewTauPoly& operator+=(const SkewTauPoly& b) { return *this = *this + b; }

    friend bool operator==(const SkewTauPoly& a, const SkewTauPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// "c*tau^k + ..." in decreasing degree; parses back under the entry grammar.
    std::string to_string() const;

   private:
    void add_term(int k, const PerfectFieldElement& c);
    std::map<int, PerfectFieldElement> coeffs_;
};

/// Square d x d matrix over K{tau}, row-major.
class TauMatrix {
   public:
    TauMatrix() = default;
    explicit TauMatrix(int d);
    static TauMatrix identity(int d, const GaloisField* f);

    int dim() const noexcept { return d_; }
    const SkewTauPoly& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * d_ + j)]; }
    SkewTauPoly& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * d_ + j)]; }

    /// Maximal tau-degree of the entries; kDegreeOfZero for the zero matrix.
    int degree() const noexcept;
    /// Matrix of tau^k coefficients (over the commutative field K).
    std::vector<std::vector<PerfectFieldElement>> coefficient_matrix(int k) const;

    friend TauMatrix operator*(const TauMatrix& a, const TauMatrix& b);
    friend bool operator==(const TauMatrix& a, const TauMatrix& b) { return a.d_ == b.d_ && a.entries_ == b.entries_; }

   private:
    int d_ = 0;
    std::vector<SkewTauPoly> entries_;
};

/// M^n for n >= 1 by repeated squaring.
TauMatrix mat_pow(const TauMatrix& m, int n);

/**
 * Caches D, D^2, ..., D^n as they are requested. Owned by a single analysis;
 * not shared between threads.
 */
class MatrixPowers {
   public:
    explicit MatrixPowers(TauMatrix d) { powers_.push_back(std::move(d)); }

    /// D^n, n >= 1.
    const TauMatrix& power(int n);
    /// max(0, max_{1<=k<=n} deg_tau D^k).
    int s_n(int n);

   private:
    std::vector<TauMatrix> powers_;
};

/// Convenience wrapper: s_n of D without keeping the cache.
int s_n(const TauMatrix& d, int n);

}  // namespace tmod

#endif
