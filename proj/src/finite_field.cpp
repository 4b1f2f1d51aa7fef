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

#include "tmod/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "tmod/errors.hpp"

namespace tmod {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint32_t> digits(std::uint32_t a, std::uint32_t p, std::uint32_t e) {
    std::vector<std::uint32_t> d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = a % p;
        a /= p;
    }
    return d;
}

std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint32_t a = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
    return a;
}

// x * a(x) mod m(x) over F_p, for a of degree < e.
std::vector<std::uint32_t> times_x(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& m,
                                   std::uint32_t p) {
    const std::size_t e = a.size();
    std::vector<std::uint32_t> r(e, 0);
    const std::uint32_t top = a[e - 1];
    for (std::size_t i = e - 1; i > 0; --i) r[i] = a[i - 1];
    r[0] = 0;
    if (top != 0) {
        for (std::size_t i = 0; i < e; ++i) r[i] = (r[i] + (p - top) * m[i]) % p;
    }
    return r;
}

}  // namespace

const GaloisField* GaloisField::get(std::uint32_t p, std::uint32_t e) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<const GaloisField>> interned;
    if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw Error("extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxOrder) throw Error("field order exceeds 2^16");
    }
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = interned[{p, e}];
    if (!slot) slot.reset(new GaloisField(p, e));
    return slot.get();
}

const GaloisField* GaloisField::for_order(std::uint32_t q) {
    if (q < 2) throw Error("field order must be at least 2");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t e = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw Error(std::to_string(q) + " is not a prime power");
    return get(p, e);
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t e) : p_(p), e_(e), q_(1) {
    for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);

    // Search monic degree-e polynomials in lexicographic order of their
    // lower coefficients; accept the first for which x has order q - 1.
    const std::uint32_t count = q_;  // p^e choices for the e lower coefficients
    for (std::uint32_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> m = digits(code, p, e);
        if (m[0] == 0) continue;
        std::vector<std::uint32_t> cur(e, 0);
        cur[0] = 1;
        bool primitive = true;
        std::vector<bool> seen(q_, false);
        for (std::uint32_t k = 0; k < q_ - 1; ++k) {
            const std::uint32_t c = undigits(cur, p);
            if (seen[c]) {
                primitive = false;
                break;
            }
            seen[c] = true;
            exp_[k] = c;
            log_[c] = k;
            cur = times_x(cur, m, p);
        }
        if (primitive && undigits(cur, p) == 1) {
            modulus_ = m;
            modulus_.push_back(1);
            break;
        }
    }
    if (modulus_.empty()) throw Error("no primitive polynomial found");  // unreachable for valid (p, e)

    if (e_ > 1 && p_ != 2) {
        neg_table_.resize(q_);
        for (Fq a = 0; a < q_; ++a) {
            auto d = digits(a, p_, e_);
            for (auto& x : d) x = (p_ - x) % p_;
            neg_table_[a] = undigits(d, p_);
        }
        if (q_ <= 256) {
            add_table_.resize(static_cast<std::size_t>(q_) * q_);
            for (Fq a = 0; a < q_; ++a)
                for (Fq b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(a, b);
        }
    }
}

Fq GaloisField::add_digits(Fq a, Fq b) const noexcept {
    Fq r = 0;
    Fq scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        r += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

Fq GaloisField::inv(Fq a) const {
    if (a == 0) throw DivisionByZero();
    const std::uint32_t k = log_[a];
    return exp_[k == 0 ? 0 : q_ - 1 - k];
}

Fq GaloisField::pow(Fq a, std::int64_t k) const {
    if (a == 0) {
        if (k < 0) throw DivisionByZero();
        return k == 0 ? 1 : 0;
    }
    const std::int64_t order = q_ - 1;
    std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (k % order)) % order;
    if (r < 0) r += order;
    return exp_[static_cast<std::size_t>(r)];
}

Fq GaloisField::from_int(std::int64_t n) const noexcept {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Fq>(r);
}

std::string GaloisField::render(Fq a, bool parenthesize) const {
    if (a < p_) return std::to_string(a);
    auto d = digits(a, p_, e_);
    std::ostringstream out;
    bool first = true;
    int terms = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!first) out << " + ";
        first = false;
        ++terms;
        if (i == 0) {
            out << d[i];
        } else {
            if (d[i] != 1) out << d[i] << "*";
            out << "g";
            if (i > 1) out << "^" << i;
        }
    }
    if (parenthesize && terms > 1) return "(" + out.str() + ")";
    return out.str();
}

namespace dense {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const GaloisField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly divmod(const GaloisField& f, Poly& a, const Poly& b) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    trim(a);
    if (a.size() < b.size()) return {};
    Poly q(a.size() - b.size() + 1, 0);
    const Fq lead_inv = f.inv(b.back());
    for (std::size_t i = a.size() - 1;; --i) {
        const Fq c = f.mul(a[i], lead_inv);
        if (c != 0) {
            const std::size_t shift = i + 1 - b.size();
            q[shift] = c;
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
        }
        if (i + 1 == b.size()) break;
    }
    trim(a);
    trim(q);
    return q;
}

Poly gcd(const GaloisField& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        divmod(f, a, b);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const Fq li = f.inv(a.back());
        for (auto& c : a) c = f.mul(c, li);
    }
    return a;
}

}  // namespace dense

}  // namespace tmod
