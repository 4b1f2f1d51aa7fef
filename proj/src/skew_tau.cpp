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

#include "tmod/skew_tau.hpp"

#include <algorithm>
#include <sstream>

#include "tmod/errors.hpp"

namespace tmod {

SkewTauPoly SkewTauPoly::monomial(const PerfectFieldElement& c, int degree) {
    if (degree < 0) throw Error("negative tau-degree");
    SkewTauPoly r;
    if (!c.is_zero()) r.coeffs_.emplace(degree, c);
    return r;
}

PerfectFieldElement SkewTauPoly::coefficient(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? PerfectFieldElement{} : it->second;
}

void SkewTauPoly::add_term(int k, const PerfectFieldElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

SkewTauPoly SkewTauPoly::operator-() const {
    SkewTauPoly r = *this;
    for (auto& [k, c] : r.coeffs_) c = -c;
    return r;
}

SkewTauPoly operator+(const SkewTauPoly& a, const SkewTauPoly& b) {
    SkewTauPoly r = a;
    for (const auto& [k, c] : b.coeffs_) r.add_term(k, c);
    return r;
}

SkewTauPoly operator-(const SkewTauPoly& a, const SkewTauPoly& b) { return a + (-b); }

SkewTauPoly operator*(const SkewTauPoly& a, const SkewTauPoly& b) {
    SkewTauPoly r;
    for (const auto& [i, ai] : a.coeffs_)
        for (const auto& [j, bj] : b.coeffs_) r.add_term(i + j, ai * bj.twist(i));
    return r;
}

std::string SkewTauPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) out << " + ";
        first = false;
        const auto& [k, c] = *it;
        std::string cs = c.to_string();
        if (k == 0) {
            out << cs;
            continue;
        }
        if (!c.is_one()) {
            // Sums need parentheses before "*tau".
            if (cs.find(' ') != std::string::npos && cs.rfind("root(", 0) != 0) cs = "(" + cs + ")";
            out << cs << "*";
        }
        out << "tau";
        if (k != 1) out << "^" << k;
    }
    return out.str();
}

TauMatrix::TauMatrix(int d) : d_(d), entries_(static_cast<std::size_t>(d * d)) {
    if (d < 1) throw Error("matrix dimension must be at least 1");
}

TauMatrix TauMatrix::identity(int d, const GaloisField* f) {
    TauMatrix m(d);
    for (int i = 0; i < d; ++i) m(i, i) = SkewTauPoly::constant(PerfectFieldElement::one(f));
    return m;
}

int TauMatrix::degree() const noexcept {
    int deg = kDegreeOfZero;
    for (const auto& e : entries_) deg = std::max(deg, e.degree());
    return deg;
}

std::vector<std::vector<PerfectFieldElement>> TauMatrix::coefficient_matrix(int k) const {
    std::vector<std::vector<PerfectFieldElement>> m(static_cast<std::size_t>(d_),
                                                    std::vector<PerfectFieldElement>(static_cast<std::size_t>(d_)));
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) m[i][j] = (*this)(i, j).coefficient(k);
    return m;
}

TauMatrix operator*(const TauMatrix& a, const TauMatrix& b) {
    if (a.d_ != b.d_) throw Error("dimension mismatch in matrix product");
    TauMatrix r(a.d_);
    for (int i = 0; i < a.d_; ++i)
        for (int k = 0; k < a.d_; ++k) {
            const SkewTauPoly& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < a.d_; ++j) {
                if (b(k, j).is_zero()) continue;
                r(i, j) += aik * b(k, j);
            }
        }
    return r;
}

TauMatrix mat_pow(const TauMatrix& m, int n) {
    if (n < 1) throw Error("matrix power exponent must be positive");
    TauMatrix result = m;
    TauMatrix base = m;
    int k = n - 1;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

const TauMatrix& MatrixPowers::power(int n) {
    if (n < 1) throw Error("matrix power exponent must be positive");
    while (static_cast<int>(powers_.size()) < n) powers_.push_back(powers_.back() * powers_.front());
    return powers_[static_cast<std::size_t>(n - 1)];
}

int MatrixPowers::s_n(int n) {
    int s = 0;
    for (int k = 1; k <= n; ++k) s = std::max(s, power(k).degree());
    return s;
}

int s_n(const TauMatrix& d, int n) {
    MatrixPowers powers(d);
    return powers.s_n(n);
}

}  // namespace tmod
