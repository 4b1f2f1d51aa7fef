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

#include "tmod/skew_laurent.hpp"

#include <algorithm>
#include <sstream>

#include "tmod/errors.hpp"

namespace tmod {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a == kExact || b == kExact) return kExact;
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) return a > 0 ? kExact : std::numeric_limits<std::int64_t>::min();
    return r == kExact ? kExact - 1 : r;
}

}  // namespace

SkewLaurent SkewLaurent::monomial(const PerfectFieldElement& c, std::int64_t exp) {
    SkewLaurent r;
    if (!c.is_zero()) r.terms_.push_back({exp, c});
    return r;
}

SkewLaurent SkewLaurent::zero_to(std::int64_t precision) {
    SkewLaurent r;
    r.precision_ = precision;
    return r;
}

SkewLaurent SkewLaurent::from_terms(std::vector<SigmaTerm> terms, std::int64_t precision) {
    std::stable_sort(terms.begin(), terms.end(), [](const SigmaTerm& a, const SigmaTerm& b) { return a.exp < b.exp; });
    SkewLaurent r;
    r.precision_ = precision;
    for (auto& t : terms) {
        if (t.exp >= precision) break;
        if (!r.terms_.empty() && r.terms_.back().exp == t.exp) {
            r.terms_.back().coef += t.coef;
            if (r.terms_.back().coef.is_zero()) r.terms_.pop_back();
        } else if (!t.coef.is_zero()) {
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

SkewLaurent SkewLaurent::from_tau(const SkewTauPoly& p) {
    SkewLaurent r;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r.terms_.push_back({-static_cast<std::int64_t>(it->first), it->second});
    return r;
}

PerfectFieldElement SkewLaurent::coefficient(std::int64_t exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const SigmaTerm& t, std::int64_t e) { return t.exp < e; });
    if (it != terms_.end() && it->exp == exp) return it->coef;
    return {};
}

Valuation SkewLaurent::valuation() const noexcept {
    if (!terms_.empty()) return {Valuation::Kind::Known, terms_.front().exp};
    if (is_exact()) return {Valuation::Kind::ZeroExact, kExact};
    return {Valuation::Kind::Indistinguishable, precision_};
}

std::int64_t SkewLaurent::valuation_bound() const noexcept {
    return terms_.empty() ? precision_ : terms_.front().exp;
}

bool SkewLaurent::is_one() const noexcept {
    return is_exact() && terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coef.is_one();
}

SkewLaurent SkewLaurent::truncated(std::int64_t n) const {
    if (n >= precision_) return *this;
    SkewLaurent r;
    r.precision_ = n;
    for (const auto& t : terms_) {
        if (t.exp >= n) break;
        r.terms_.push_back(t);
    }
    return r;
}

SkewLaurent SkewLaurent::known_part() const {
    SkewLaurent r = *this;
    r.precision_ = kExact;
    return r;
}

SkewLaurent SkewLaurent::operator-() const {
    SkewLaurent r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

SkewLaurent operator+(const SkewLaurent& a, const SkewLaurent& b) {
    SkewLaurent r;
    r.precision_ = std::min(a.precision_, b.precision_);
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    r.terms_.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        const SigmaTerm* next;
        if (j == y.size() || (i < x.size() && x[i].exp < y[j].exp)) {
            next = &x[i++];
        } else if (i == x.size() || y[j].exp < x[i].exp) {
            next = &y[j++];
        } else {
            if (x[i].exp >= r.precision_) break;
            PerfectFieldElement c = x[i].coef + y[j].coef;
            if (!c.is_zero()) r.terms_.push_back({x[i].exp, std::move(c)});
            ++i;
            ++j;
            continue;
        }
        if (next->exp >= r.precision_) break;
        r.terms_.push_back(*next);
    }
    return r;
}

SkewLaurent operator-(const SkewLaurent& a, const SkewLaurent& b) { return a + (-b); }

SkewLaurent operator*(const SkewLaurent& a, const SkewLaurent& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return SkewLaurent{};
    const std::int64_t prec =
        std::min(sat_add(a.precision_, b.valuation_bound()), sat_add(b.precision_, a.valuation_bound()));
    if (a.terms_.empty() || b.terms_.empty()) return SkewLaurent::zero_to(prec);

    const std::int64_t lo = a.terms_.front().exp + b.terms_.front().exp;
    std::int64_t hi = a.terms_.back().exp + b.terms_.back().exp + 1;
    if (prec != kExact) hi = std::min(hi, prec);
    SkewLaurent r;
    r.precision_ = prec;
    if (hi <= lo) return r;

    std::vector<PerfectFieldElement> acc(static_cast<std::size_t>(hi - lo));
    std::vector<bool> touched(acc.size(), false);
    for (const auto& x : a.terms_) {
        if (x.exp + b.terms_.front().exp >= hi) break;
        for (const auto& y : b.terms_) {
            const std::int64_t e = x.exp + y.exp;
            if (e >= hi) break;
            // a_i s^i * b_j s^j = a_i b_j^(q^-i) s^(i+j)
            PerfectFieldElement c = x.coef * y.coef.twist(-x.exp);
            auto& slot = acc[static_cast<std::size_t>(e - lo)];
            slot = touched[static_cast<std::size_t>(e - lo)] ? slot + c : std::move(c);
            touched[static_cast<std::size_t>(e - lo)] = true;
        }
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (!acc[k].is_zero()) r.terms_.push_back({lo + static_cast<std::int64_t>(k), std::move(acc[k])});
    return r;
}

SkewLaurent SkewLaurent::twist(std::int64_t k) const {
    if (k == 0) return *this;
    SkewLaurent r = *this;
    for (auto& t : r.terms_) t.coef = t.coef.twist(k);
    return r;
}

SkewLaurent SkewLaurent::shifted_left(std::int64_t k) const {
    SkewLaurent r = twist(-k);
    for (auto& t : r.terms_) t.exp += k;
    r.precision_ = sat_add(r.precision_, k);
    return r;
}

SkewLaurent SkewLaurent::shifted_right(std::int64_t k) const {
    SkewLaurent r = *this;
    for (auto& t : r.terms_) t.exp += k;
    r.precision_ = sat_add(r.precision_, k);
    return r;
}

SkewLaurent SkewLaurent::inverse(std::int64_t target_precision) const {
    if (is_exact_zero()) throw DivisionByZero();
    if (terms_.empty()) throw AmbiguousZero(precision_);
    const std::int64_t v = terms_.front().exp;
    // (a s^v)^-1 = (a^-1)^(q^v) s^-v
    const SkewLaurent lead_inv = monomial(terms_.front().coef.inverse().twist(v), -v);
    if (is_monomial()) return lead_inv;

    // y is accurate to relative precision `rel`: x*y = 1 + O(s^rel).
    std::int64_t rel_cap = target_precision + v;
    if (!is_exact()) rel_cap = std::min(rel_cap, precision_ - v);
    rel_cap = std::max<std::int64_t>(rel_cap, 1);
    SkewLaurent y = lead_inv;
    std::int64_t rel = 1;
    const SkewLaurent one = constant(PerfectFieldElement::one(terms_.front().coef.field()));
    while (rel < rel_cap) {
        const std::int64_t next = std::min(2 * rel, rel_cap);
        const SkewLaurent residual = one - truncated(v + next) * y;
        y = (y + y * residual).known_part().truncated(next - v);
        y = y.known_part();
        rel = next;
    }
    SkewLaurent r = y.truncated(rel - v);
    r.precision_ = rel - v;
    return r;
}

std::string SkewLaurent::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << " + ";
        first = false;
        std::string cs = t.coef.to_string();
        if (t.exp == 0) {
            out << cs;
            continue;
        }
        if (!t.coef.is_one()) {
            if (cs.find(' ') != std::string::npos && cs.rfind("root(", 0) != 0) cs = "(" + cs + ")";
            out << cs << "*";
        }
        out << "s";
        if (t.exp != 1) out << "^" << t.exp;
    }
    if (!is_exact()) {
        if (!first) out << " + ";
        out << "O(s^" << precision_ << ")";
        first = false;
    }
    if (first) return "0";
    return out.str();
}

bool agree_below(const SkewLaurent& a, const SkewLaurent& b, std::int64_t n) {
    const std::int64_t limit = std::min({n, a.precision(), b.precision()});
    const SkewLaurent d = (a.known_part() - b.known_part()).truncated(limit);
    return d.terms().empty();
}

QuotientRingElement::QuotientRingElement(int modulus) : coeffs_(static_cast<std::size_t>(modulus)) {
    if (modulus < 0) throw Error("negative modulus");
}

QuotientRingElement QuotientRingElement::from_series(const SkewLaurent& x, int modulus) {
    QuotientRingElement r(modulus);
    if (x.precision() < modulus) throw PrecisionExhausted("series not known modulo s^" + std::to_string(modulus), modulus);
    for (const auto& t : x.terms()) {
        if (t.exp < 0) throw Error("series has negative valuation; not in the valuation ring");
        if (t.exp >= modulus) break;
        r.coeffs_[static_cast<std::size_t>(t.exp)] = t.coef;
    }
    return r;
}

int QuotientRingElement::valuation() const noexcept {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return static_cast<int>(i);
    return modulus();
}

QuotientRingElement operator+(const QuotientRingElement& a, const QuotientRingElement& b) {
    if (a.modulus() != b.modulus()) throw Error("modulus mismatch");
    QuotientRingElement r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
}

QuotientRingElement operator-(const QuotientRingElement& a, const QuotientRingElement& b) {
    if (a.modulus() != b.modulus()) throw Error("modulus mismatch");
    QuotientRingElement r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
}

QuotientRingElement operator*(const QuotientRingElement& a, const QuotientRingElement& b) {
    if (a.modulus() != b.modulus()) throw Error("modulus mismatch");
    const int n = a.modulus();
    QuotientRingElement r(n);
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j < n; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j].twist(-i);
        }
    }
    return r;
}

QuotientRingElement QuotientRingElement::inverse() const {
    if (!is_unit()) throw NotAUnit();
    const int n = modulus();
    QuotientRingElement w(n);
    const PerfectFieldElement u0_inv = coeffs_[0].inverse();
    // sum_{i<=k} u_i w_{k-i}^(q^-i) = [k == 0]
    for (int k = 0; k < n; ++k) {
        PerfectFieldElement acc = k == 0 ? PerfectFieldElement::one(coeffs_[0].field()) : PerfectFieldElement{};
        for (int i = 1; i <= k; ++i) {
            if (coeffs_[static_cast<std::size_t>(i)].is_zero() || w[k - i].is_zero()) continue;
            acc -= coeffs_[static_cast<std::size_t>(i)] * w[k - i].twist(-i);
        }
        w[k] = u0_inv * acc;
    }
    return w;
}

QuotientRingElement QuotientRingElement::shifted_left(int k) const {
    const int n = modulus();
    QuotientRingElement r(n);
    for (int j = 0; j + k < n; ++j) r[j + k] = coeffs_[static_cast<std::size_t>(j)].twist(-k);
    return r;
}

QuotientRingElement QuotientRingElement::unshifted_left(int k) const {
    const int n = modulus();
    QuotientRingElement r(n);
    for (int j = 0; j + k < n; ++j) r[j] = coeffs_[static_cast<std::size_t>(j + k)].twist(k);
    return r;
}

QuotientRingElement QuotientRingElement::unshifted_right(int k) const {
    const int n = modulus();
    QuotientRingElement r(n);
    for (int j = 0; j + k < n; ++j) r[j] = coeffs_[static_cast<std::size_t>(j + k)];
    return r;
}

}  // namespace tmod
