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

#ifndef TMOD_PERFECT_FIELD_HPP
#define TMOD_PERFECT_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmod/finite_field.hpp"

namespace tmod {

enum class FieldMode {
    FiniteField,         ///< K = F_q
    RationalPerfection,  ///< K = union over m of F_q(th^(1/q^m))
};

/// The coefficient field K. Cheap to copy; the F_q tables are shared.
class FieldConfig {
   public:
    static FieldConfig make(std::uint32_t q, FieldMode mode);

    const GaloisField& fq() const noexcept { return *fq_; }
    const GaloisField* fq_ptr() const noexcept { return fq_; }
    std::uint32_t p() const noexcept { return fq_->p(); }
    std::uint32_t e() const noexcept { return fq_->e(); }
    std::uint32_t q() const noexcept { return fq_->q(); }
    FieldMode mode() const noexcept { return mode_; }

    friend bool operator==(const FieldConfig& a, const FieldConfig& b) {
        return a.fq_ == b.fq_ && a.mode_ == b.mode_;
    }

   private:
    FieldConfig(const GaloisField* fq, FieldMode mode) : fq_(fq), mode_(mode) {}
    const GaloisField* fq_;
    FieldMode mode_;
};

/// Exponents of u = th^(1/q^level). Twisting multiplies them by powers of q,
/// so 64 bits run out quickly.
using Exponent = __int128;

std::string to_string(Exponent e);

struct Term {
    Exponent exp;
    Fq coef;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_q in u: ascending exponents, no zero coefficients.
using SparsePoly = std::vector<Term>;

/**
 * An element of the perfection of F_q(th), stored as numerator/denominator
 * in u = th^(1/q^level).
 *
 * Every value is kept canonical: gcd(numerator, denominator) = 1, the
 * denominator is monic, and the level is minimal. Two elements are equal
 * iff their representations are identical. Elements of F_q have level 0
 * and constant numerator.
 *
 * A default-constructed element is zero and carries no field; binary
 * operations take the field from whichever operand has one.
 */
class PerfectFieldElement {
   public:
    PerfectFieldElement() = default;

    static PerfectFieldElement zero(const GaloisField* f);
    static PerfectFieldElement one(const GaloisField* f) { return constant(f, 1); }
    static PerfectFieldElement constant(const GaloisField* f, Fq c);
    static PerfectFieldElement from_int(const GaloisField* f, std::int64_t n);
    /// th^k for k in Z.
    static PerfectFieldElement theta(const GaloisField* f, Exponent k = 1);
    /// Builds and canonicalizes numerator/denominator at the given level.
    static PerfectFieldElement fraction(const GaloisField* f, int level, SparsePoly num, SparsePoly den);

    const GaloisField* field() const noexcept { return f_; }
    int level() const noexcept { return level_; }
    const SparsePoly& numerator() const noexcept { return num_; }
    const SparsePoly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.empty(); }
    bool is_one() const noexcept;
    /// The value as an element of F_q, when it lies there.
    std::optional<Fq> as_constant() const noexcept;

    PerfectFieldElement operator-() const;
    friend PerfectFieldElement operator+(const PerfectFieldElement& a, const PerfectFieldElement& b);
    friend PerfectFieldElement operator-(const PerfectFieldElement& a, const PerfectFieldElement& b);
    friend PerfectFieldElement operator*(const PerfectFieldElement& a, const PerfectFieldElement& b);
    friend PerfectFieldElement operator/(const PerfectFieldElement& a, const PerfectFieldElement& b);
    PerfectFieldElement& operator+=(const PerfectFieldElement& b) { return *this = *this + b; }
    PerfectFieldElement& operator-=(const PerfectFieldElement& b) { return *this = *this - b; }
    PerfectFieldElement& operator*=(const PerfectFieldElement& b) { return *this = *this * b; }

    /// Throws DivisionByZero for zero.
    PerfectFieldElement inverse() const;
    PerfectFieldElement pow(std::int64_t k) const;

    /// x^(q^k); for k < 0 the unique (q^-k)-th root.
    PerfectFieldElement twist(std::int64_t k) const;

    /// Renders with `th` for theta and `root(E, m)` for E^(1/q^m); the
    /// output parses back to the same element.
    std::string to_string() const;

    friend bool operator==(const PerfectFieldElement& a, const PerfectFieldElement& b) {
        return a.level_ == b.level_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

   private:
    const GaloisField* f_ = nullptr;
    int level_ = 0;
    SparsePoly num_;
    SparsePoly den_{Term{0, 1}};
};

}  // namespace tmod

#endif
