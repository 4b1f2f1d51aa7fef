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

#ifndef TMOD_SKEW_LAURENT_HPP
#define TMOD_SKEW_LAURENT_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tmod/perfect_field.hpp"
#include "tmod/skew_tau.hpp"

namespace tmod {

/// Precision value of an exact element.
inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

/// Three-valued answer to "what is v(x)?".
struct Valuation {
    enum class Kind {
        Known,              ///< v(x) == value
        ZeroExact,          ///< x == 0
        Indistinguishable,  ///< every known coefficient is zero; v(x) >= value or x == 0
    };
    Kind kind;
    std::int64_t value;

    bool known() const noexcept { return kind == Kind::Known; }
};

struct SigmaTerm {
    std::int64_t exp;
    PerfectFieldElement coef;
    friend bool operator==(const SigmaTerm&, const SigmaTerm&) = default;
};

/**
 * Skew Laurent series sum a_i s^i in K((s)), s * a = a^(1/q) * s.
 *
 * Either exact (finite support, all coefficients authoritative) or truncated:
 * coefficients are known for exponents below precision() and unknown above.
 * Only nonzero known coefficients are stored, in increasing exponent order.
 */
class SkewLaurent {
   public:
    SkewLaurent() = default;

    static SkewLaurent monomial(const PerfectFieldElement& c, std::int64_t exp);
    static SkewLaurent constant(const PerfectFieldElement& c) { return monomial(c, 0); }
    /// O(s^precision).
    static SkewLaurent zero_to(std::int64_t precision);
    /// Terms may be in any order and contain zeros or repeats; those at or
    /// above `precision` are dropped.
    static SkewLaurent from_terms(std::vector<SigmaTerm> terms, std::int64_t precision = kExact);
    /// Embedding of K{tau}: tau^i -> s^-i.
    static SkewLaurent from_tau(const SkewTauPoly& p);

    const std::vector<SigmaTerm>& terms() const noexcept { return terms_; }
    std::int64_t precision() const noexcept { return precision_; }
    bool is_exact() const noexcept { return precision_ == kExact; }
    PerfectFieldElement coefficient(std::int64_t exp) const;

    Valuation valuation() const noexcept;
    /// v(x) when known, the precision when indistinguishable from zero,
    /// kExact for exact zero.
    std::int64_t valuation_bound() const noexcept;
    bool is_exact_zero() const noexcept { return terms_.empty() && is_exact(); }
    bool is_indistinguishable_zero() const noexcept { return terms_.empty() && !is_exact(); }
    bool is_known_nonzero() const noexcept { return !terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1 && is_exact(); }
    bool is_one() const noexcept;

    /// Drops every coefficient at or above n (no-op if n >= precision()).
    SkewLaurent truncated(std::int64_t n) const;
    /// Forgets the precision bound and treats the known part as exact.
    SkewLaurent known_part() const;

    SkewLaurent operator-() const;
    friend SkewLaurent operator+(const SkewLaurent& a, const SkewLaurent& b);
    friend SkewLaurent operator-(const SkewLaurent& a, const SkewLaurent& b);
    /// Twisted convolution; a truncated product is known below
    /// min(N_a + v(b), N_b + v(a)).
    friend SkewLaurent operator*(const SkewLaurent& a, const SkewLaurent& b);
    SkewLaurent& operator+=(const SkewLaurent& b) { return *this = *this + b; }
    SkewLaurent& operator-=(const SkewLaurent& b) { return *this = *this - b; }

    /// Coefficient-wise twist a_i -> a_i^(q^k).
    SkewLaurent twist(std::int64_t k) const;
    /// s^k * x.
    SkewLaurent shifted_left(std::int64_t k) const;
    /// x * s^k.
    SkewLaurent shifted_right(std::int64_t k) const;

    /**
     * Two-sided inverse known below `target_precision` (or exact when x is a
     * monomial), by the Newton step y <- y + y(1 - xy).
     * Throws DivisionByZero for exact zero and AmbiguousZero when x is
     * indistinguishable from zero.
     */
    SkewLaurent inverse(std::int64_t target_precision) const;

    /// Structural equality (same known terms, same precision).
    friend bool operator==(const SkewLaurent& a, const SkewLaurent& b) = default;

    /// "c*s^k + ... + O(s^N)" in increasing exponent order.
    std::string to_string() const;

   private:
    std::vector<SigmaTerm> terms_;
    std::int64_t precision_ = kExact;
};

/// a == b on every exponent below n where both are known.
bool agree_below(const SkewLaurent& a, const SkewLaurent& b, std::int64_t n);

/**
 * Element of the finite quotient K{s}/(s^n), stored densely.
 */
class QuotientRingElement {
   public:
    QuotientRingElement() = default;
    explicit QuotientRingElement(int modulus);
    /// Reduces a power series (all exponents >= 0) modulo s^modulus.
    static QuotientRingElement from_series(const SkewLaurent& x, int modulus);

    int modulus() const noexcept { return static_cast<int>(coeffs_.size()); }
    const PerfectFieldElement& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    PerfectFieldElement& operator[](int i) { return coeffs_[static_cast<std::size_t>(i)]; }

    /// Index of the first nonzero coefficient, or modulus() for zero.
    int valuation() const noexcept;
    bool is_zero() const noexcept { return valuation() == modulus(); }
    bool is_unit() const noexcept { return modulus() > 0 && !coeffs_[0].is_zero(); }

    friend QuotientRingElement operator+(const QuotientRingElement& a, const QuotientRingElement& b);
    friend QuotientRingElement operator-(const QuotientRingElement& a, const QuotientRingElement& b);
    friend QuotientRingElement operator*(const QuotientRingElement& a, const QuotientRingElement& b);
    /// Two-sided inverse by lifting one coefficient at a time; NotAUnit
    /// unless the constant coefficient is nonzero.
    QuotientRingElement inverse() const;
    /// s^k * x mod s^n.
    QuotientRingElement shifted_left(int k) const;
    /// The unique c mod s^n with s^k * c == x, for v(x) >= k (high
    /// coefficients of c beyond n - k are left zero).
    QuotientRingElement unshifted_left(int k) const;
    /// The unique c with c * s^k == x, for v(x) >= k.
    QuotientRingElement unshifted_right(int k) const;

    friend bool operator==(const QuotientRingElement& a, const QuotientRingElement& b) = default;

   private:
    std::vector<PerfectFieldElement> coeffs_;
};

}  // namespace tmod

#endif
