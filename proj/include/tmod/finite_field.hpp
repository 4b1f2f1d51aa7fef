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

#ifndef TMOD_FINITE_FIELD_HPP
#define TMOD_FINITE_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tmod {

/// Element of F_q encoded as the integer sum d_i p^i, where d_i is the
/// coefficient of g^i and g is the fixed primitive generator.
using Fq = std::uint32_t;

/**
 * The finite field F_q, q = p^e <= 2^16, built from the lexicographically
 * first monic primitive polynomial of degree e over F_p.
 *
 * Instances are interned: `get(p, e)` always returns the same object, which
 * lives for the rest of the process and is never modified after
 * construction. Elements of higher layers keep a plain pointer to it.
 */
class GaloisField {
   public:
    static const GaloisField* get(std::uint32_t p, std::uint32_t e);
    /// Splits q into (p, e); throws tmod::Error when q is not a prime power.
    static const GaloisField* for_order(std::uint32_t q);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Coefficients over F_p of the defining polynomial, low to high, monic.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    Fq add(Fq a, Fq b) const noexcept {
        if (e_ == 1) {
            Fq s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * q_ + b];
        return add_digits(a, b);
    }
    Fq neg(Fq a) const noexcept {
        if (e_ == 1) return a == 0 ? 0 : p_ - a;
        if (p_ == 2) return a;
        return neg_table_[a];
    }
    Fq sub(Fq a, Fq b) const noexcept { return add(a, neg(b)); }
    Fq mul(Fq a, Fq b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint32_t k = log_[a] + log_[b];
        if (k >= q_ - 1) k -= q_ - 1;
        return exp_[k];
    }
    /// Throws tmod::DivisionByZero for a == 0.
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::int64_t k) const;
    /// Image of an integer under Z -> F_p -> F_q.
    Fq from_int(std::int64_t n) const noexcept;
    /// The generator g (equals a primitive root of F_p when e == 1).
    Fq generator() const noexcept { return e_ == 1 ? exp_[1 % (q_ - 1 == 0 ? 1 : q_ - 1)] : p_; }

    /// Human-readable form: an integer for prime-field elements, otherwise a
    /// polynomial in `g`, e.g. "(g^2 + 2*g + 1)" when parenthesize is set.
    std::string render(Fq a, bool parenthesize) const;

   private:
    GaloisField(std::uint32_t p, std::uint32_t e);
    Fq add_digits(Fq a, Fq b) const noexcept;

    std::uint32_t p_;
    std::uint32_t e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Fq> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Fq> neg_table_;
    std::vector<Fq> add_table_;
};

/// Dense polynomials over F_q, coefficient i at index i, no trailing zeros.
namespace dense {

using Poly = std::vector<Fq>;

void trim(Poly& a);
Poly mul(const GaloisField& f, const Poly& a, const Poly& b);
/// Returns the quotient; `a` is replaced by the remainder.
Poly divmod(const GaloisField& f, Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const GaloisField& f, Poly a, Poly b);

}  // namespace dense

}  // namespace tmod

#endif
