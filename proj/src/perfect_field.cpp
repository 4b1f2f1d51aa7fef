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

#include "tmod/perfect_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "tmod/errors.hpp"

namespace tmod {

FieldConfig FieldConfig::make(std::uint32_t q, FieldMode mode) { return FieldConfig(GaloisField::for_order(q), mode); }

std::string to_string(Exponent e) {
    if (e == 0) return "0";
    const bool negative = e < 0;
    unsigned __int128 m = negative ? static_cast<unsigned __int128>(-(e + 1)) + 1 : static_cast<unsigned __int128>(e);
    std::string s;
    while (m > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    if (negative) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

// Largest dense degree we are willing to hand to the Euclidean algorithm.
constexpr Exponent kDenseLimit = Exponent{1} << 22;

Exponent checked_mul(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("exponent overflow in the perfection of F_q(th)");
    return r;
}

Exponent power_of(std::uint32_t q, std::int64_t k) {
    Exponent r = 1;
    for (std::int64_t i = 0; i < k; ++i) r = checked_mul(r, q);
    return r;
}

bool fits_u64(Exponent a) { return a >= 0 && a <= static_cast<Exponent>(UINT64_MAX); }

Exponent exp_gcd(Exponent a, Exponent b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (fits_u64(a) && fits_u64(b))
        return static_cast<Exponent>(std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
    while (b != 0) {
        Exponent t = a % b;
        a = b;
        b = t;
    }
    return a;
}

SparsePoly sp_add(const GaloisField& f, const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].exp < a[i].exp) {
            r.push_back(b[j++]);
        } else {
            const Fq c = f.add(a[i].coef, b[j].coef);
            if (c != 0) r.push_back({a[i].exp, c});
            ++i;
            ++j;
        }
    }
    return r;
}

SparsePoly sp_neg(const GaloisField& f, SparsePoly a) {
    for (auto& t : a) t.coef = f.neg(t.coef);
    return a;
}

SparsePoly sp_scale(const GaloisField& f, SparsePoly a, Fq c) {
    if (c == 0) return {};
    if (c == 1) return a;
    for (auto& t : a) t.coef = f.mul(t.coef, c);
    return a;
}

SparsePoly sp_shift(SparsePoly a, Exponent k) {
    for (auto& t : a) t.exp += k;
    return a;
}

SparsePoly sp_stretch(SparsePoly a, Exponent factor) {
    if (factor == 1) return a;
    for (auto& t : a) t.exp = checked_mul(t.exp, factor);
    return a;
}

SparsePoly sp_mul(const GaloisField& f, const SparsePoly& a, const SparsePoly& b) {
    if (a.empty() || b.empty()) return {};
    if (a.size() == 1) return sp_shift(sp_scale(f, b, a[0].coef), a[0].exp);
    if (b.size() == 1) return sp_shift(sp_scale(f, a, b[0].coef), b[0].exp);
    if (std::min(a.size(), b.size()) <= 8) {
        // Few rows: merging shifted copies beats sorting all products.
        const SparsePoly& small = a.size() <= b.size() ? a : b;
        const SparsePoly& big = a.size() <= b.size() ? b : a;
        SparsePoly r;
        for (const auto& x : small) r = sp_add(f, r, sp_shift(sp_scale(f, big, x.coef), x.exp));
        return r;
    }
    std::vector<Term> prods;
    prods.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) prods.push_back({x.exp + y.exp, f.mul(x.coef, y.coef)});
    std::sort(prods.begin(), prods.end(), [](const Term& l, const Term& r) { return l.exp < r.exp; });
    SparsePoly r;
    for (const auto& t : prods) {
        if (!r.empty() && r.back().exp == t.exp) {
            r.back().coef = f.add(r.back().coef, t.coef);
            if (r.back().coef == 0) r.pop_back();
        } else {
            r.push_back(t);
        }
    }
    return r;
}

dense::Poly to_dense(const SparsePoly& a, Exponent scale) {
    const Exponent degree = a.back().exp / scale;
    if (degree > kDenseLimit) throw Error("coefficient growth exceeds the dense gcd limit");
    dense::Poly d(static_cast<std::size_t>(degree) + 1, 0);
    for (const auto& t : a) d[static_cast<std::size_t>(t.exp / scale)] = t.coef;
    return d;
}

SparsePoly from_dense(const dense::Poly& d, Exponent scale) {
    SparsePoly r;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) r.push_back({static_cast<Exponent>(i) * scale, d[i]});
    return r;
}

bool is_unit_poly(const SparsePoly& a) { return a.size() == 1 && a[0].exp == 0 && a[0].coef == 1; }

bool divisible(Exponent a, std::uint32_t q) {
    if (a < 0) a = -a;
    return fits_u64(a) ? static_cast<std::uint64_t>(a) % q == 0 : a % q == 0;
}

// Drops the level while every exponent is divisible by q.
void reduce_level(std::uint32_t q, int& level, SparsePoly& num, SparsePoly& den) {
    auto all_divisible = [&] {
        for (const auto& t : num)
            if (!divisible(t.exp, q)) return false;
        for (const auto& t : den)
            if (!divisible(t.exp, q)) return false;
        return true;
    };
    while (level > 0 && all_divisible()) {
        --level;
        for (auto& t : num) t.exp /= q;
        for (auto& t : den) t.exp /= q;
    }
}

}  // namespace

PerfectFieldElement PerfectFieldElement::zero(const GaloisField* f) {
    PerfectFieldElement r;
    r.f_ = f;
    return r;
}

PerfectFieldElement PerfectFieldElement::constant(const GaloisField* f, Fq c) {
    PerfectFieldElement r;
    r.f_ = f;
    if (c != 0) r.num_.push_back({0, c});
    return r;
}

PerfectFieldElement PerfectFieldElement::from_int(const GaloisField* f, std::int64_t n) {
    return constant(f, f->from_int(n));
}

PerfectFieldElement PerfectFieldElement::theta(const GaloisField* f, Exponent k) {
    PerfectFieldElement r;
    r.f_ = f;
    if (k >= 0) {
        r.num_.push_back({k, 1});
    } else {
        r.num_.push_back({0, 1});
        r.den_ = {{-k, 1}};
    }
    return r;
}

PerfectFieldElement PerfectFieldElement::fraction(const GaloisField* f, int level, SparsePoly num, SparsePoly den) {
    if (den.empty()) throw DivisionByZero();
    PerfectFieldElement r;
    r.f_ = f;
    if (num.empty()) return r;

    // Pull out the monomial parts so that both polynomials have a nonzero
    // constant term; u^shift is reattached afterwards.
    const Exponent a = num.front().exp;
    const Exponent b = den.front().exp;
    if (a != 0) num = sp_shift(std::move(num), -a);
    if (b != 0) den = sp_shift(std::move(den), -b);
    const Exponent shift = a - b;

    if (num.size() > 1 && den.size() > 1) {
        // gcd(A(u^g), B(u^g)) = gcd(A, B)(u^g), so the Euclidean algorithm
        // can run on the compressed exponents.
        Exponent g = 0;
        for (const auto& t : num) g = exp_gcd(g, t.exp);
        for (const auto& t : den) g = exp_gcd(g, t.exp);
        dense::Poly dn = to_dense(num, g);
        dense::Poly dd = to_dense(den, g);
        dense::Poly common = dense::gcd(*f, dn, dd);
        if (common.size() > 1) {
            dense::Poly qn = dense::divmod(*f, dn, common);
            dense::Poly qd = dense::divmod(*f, dd, common);
            num = from_dense(qn, g);
            den = from_dense(qd, g);
        }
    }
    if (shift > 0) num = sp_shift(std::move(num), shift);
    if (shift < 0) den = sp_shift(std::move(den), -shift);

    const Fq lead = den.back().coef;
    if (lead != 1) {
        const Fq li = f->inv(lead);
        num = sp_scale(*f, std::move(num), li);
        den = sp_scale(*f, std::move(den), li);
    }

    reduce_level(f->q(), level, num, den);
    r.level_ = level;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

bool PerfectFieldElement::is_one() const noexcept {
    return level_ == 0 && is_unit_poly(num_) && is_unit_poly(den_);
}

std::optional<Fq> PerfectFieldElement::as_constant() const noexcept {
    if (num_.empty()) return Fq{0};
    if (level_ == 0 && num_.size() == 1 && num_[0].exp == 0 && is_unit_poly(den_)) return num_[0].coef;
    return std::nullopt;
}

PerfectFieldElement PerfectFieldElement::operator-() const {
    if (is_zero()) return *this;
    PerfectFieldElement r = *this;
    r.num_ = sp_neg(*f_, std::move(r.num_));
    return r;
}

PerfectFieldElement operator+(const PerfectFieldElement& a, const PerfectFieldElement& b) {
    if (a.is_zero()) return b.f_ || !a.f_ ? b : PerfectFieldElement::zero(a.f_);
    if (b.is_zero()) return a;
    const GaloisField& f = *a.f_;
    const auto ca = a.as_constant();
    const auto cb = b.as_constant();
    if (ca && cb) return PerfectFieldElement::constant(a.f_, f.add(*ca, *cb));

    const int level = std::max(a.level_, b.level_);
    const Exponent sa = power_of(f.q(), level - a.level_);
    const Exponent sb = power_of(f.q(), level - b.level_);
    SparsePoly na = sp_stretch(a.num_, sa), da = sp_stretch(a.den_, sa);
    SparsePoly nb = sp_stretch(b.num_, sb), db = sp_stretch(b.den_, sb);
    if (da == db) {
        SparsePoly n = sp_add(f, na, nb);
        if (n.empty()) return PerfectFieldElement::zero(a.f_);
        return PerfectFieldElement::fraction(a.f_, level, std::move(n), std::move(da));
    }
    SparsePoly n = sp_add(f, sp_mul(f, na, db), sp_mul(f, nb, da));
    if (n.empty()) return PerfectFieldElement::zero(a.f_);
    return PerfectFieldElement::fraction(a.f_, level, std::move(n), sp_mul(f, da, db));
}

PerfectFieldElement operator-(const PerfectFieldElement& a, const PerfectFieldElement& b) { return a + (-b); }

PerfectFieldElement operator*(const PerfectFieldElement& a, const PerfectFieldElement& b) {
    if (a.is_zero()) return a.f_ ? a : PerfectFieldElement::zero(b.f_);
    if (b.is_zero()) return b.f_ ? b : PerfectFieldElement::zero(a.f_);
    const GaloisField& f = *a.f_;
    const auto ca = a.as_constant();
    const auto cb = b.as_constant();
    if (ca && cb) return PerfectFieldElement::constant(a.f_, f.mul(*ca, *cb));
    if (ca) {
        PerfectFieldElement r = b;
        r.num_ = sp_scale(f, std::move(r.num_), *ca);
        return r;
    }
    if (cb) {
        PerfectFieldElement r = a;
        r.num_ = sp_scale(f, std::move(r.num_), *cb);
        return r;
    }
    const int level = std::max(a.level_, b.level_);
    const Exponent sa = power_of(f.q(), level - a.level_);
    const Exponent sb = power_of(f.q(), level - b.level_);
    SparsePoly n = sp_mul(f, sp_stretch(a.num_, sa), sp_stretch(b.num_, sb));
    SparsePoly d = sp_mul(f, sp_stretch(a.den_, sa), sp_stretch(b.den_, sb));
    return PerfectFieldElement::fraction(a.f_, level, std::move(n), std::move(d));
}

PerfectFieldElement operator/(const PerfectFieldElement& a, const PerfectFieldElement& b) { return a * b.inverse(); }

PerfectFieldElement PerfectFieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (auto c = as_constant()) return constant(f_, f_->inv(*c));
    return fraction(f_, level_, den_, num_);
}

PerfectFieldElement PerfectFieldElement::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    PerfectFieldElement result = one(f_);
    PerfectFieldElement base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

PerfectFieldElement PerfectFieldElement::twist(std::int64_t k) const {
    if (k == 0 || is_zero() || as_constant()) return *this;
    PerfectFieldElement r = *this;
    const std::int64_t level = static_cast<std::int64_t>(level_) - k;
    if (level >= 0) {
        // Same polynomials, reinterpreted in th^(1/q^level).
        int lv = static_cast<int>(level);
        if (level_ == 0) reduce_level(f_->q(), lv, r.num_, r.den_);
        r.level_ = lv;
        return r;
    }
    const Exponent factor = power_of(f_->q(), -level);
    r.level_ = 0;
    r.num_ = sp_stretch(std::move(r.num_), factor);
    r.den_ = sp_stretch(std::move(r.den_), factor);
    return r;
}

namespace {

std::string render_poly(const GaloisField& f, const SparsePoly& a) {
    std::ostringstream out;
    bool first = true;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        if (!first) out << " + ";
        first = false;
        if (it->exp == 0) {
            out << f.render(it->coef, true);
            continue;
        }
        if (it->coef != 1) out << f.render(it->coef, true) << "*";
        out << "th";
        if (it->exp != 1) out << "^" << to_string(it->exp);
    }
    return out.str();
}

}  // namespace

std::string PerfectFieldElement::to_string() const {
    if (is_zero()) return "0";
    const GaloisField& f = *f_;
    std::string n = render_poly(f, num_);
    std::string body;
    if (is_unit_poly(den_)) {
        body = n;
    } else {
        std::string d = render_poly(f, den_);
        if (num_.size() > 1 || (num_[0].exp != 0 && num_[0].coef != 1)) n = "(" + n + ")";
        if (den_.size() > 1 || den_[0].coef != 1) d = "(" + d + ")";
        body = n + "/" + d;
    }
    if (level_ == 0) return body;
    return "root(" + body + ", " + std::to_string(level_) + ")";
}

}  // namespace tmod
