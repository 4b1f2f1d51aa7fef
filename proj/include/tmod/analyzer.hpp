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

#ifndef TMOD_ANALYZER_HPP
#define TMOD_ANALYZER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmod/normal_forms.hpp"
#include "tmod/perfect_field.hpp"
#include "tmod/sigma_poly.hpp"
#include "tmod/skew_tau.hpp"

namespace tmod {

/// A t-module given by the matrix D of phi_t; `characteristic` is l(t).
struct TModule {
    FieldConfig config;
    TauMatrix phi_t;
    PerfectFieldElement characteristic;

    int dim() const noexcept { return phi_t.dim(); }
};

/// Throws NotATModule unless D_0 - l(t) is nilpotent.
void validate(const TModule& m);

enum class CertificateKind {
    SufficientProp61,       ///< condition 1 at n = 1
    PowerCondition1,        ///< s^(s_n) D^n, n >= 2
    BlockVertical2,         ///< the blocks s^(s_n) D^k stacked vertically
    BlockHorizontal2prime,  ///< ... and horizontally
};

std::string to_string(CertificateKind kind);

/// The matrix named by (kind, n) has rank `rank` = d modulo s^(s_n).
struct RankCertificate {
    CertificateKind kind;
    int n;
    int s_n;
    int rank;
    friend bool operator==(const RankCertificate&, const RankCertificate&) = default;
};

/// Shares the powers of D between condition checks on one module.
class ConditionChecker {
   public:
    explicit ConditionChecker(const TModule& m) : d_(m.dim()), powers_(m.phi_t) {}

    std::optional<RankCertificate> condition_1(int n);
    std::optional<RankCertificate> condition_2(int n);
    std::optional<RankCertificate> condition_2prime(int n);
    /// Conditions 1, 2, 2' in that order for n = 1..n_max.
    std::optional<RankCertificate> search(int n_max);

   private:
    SigmaMatrix block(int k, int s);
    int d_;
    MatrixPowers powers_;
};

std::optional<RankCertificate> check_condition_1(const TModule& m, int n);
std::optional<RankCertificate> check_condition_2(const TModule& m, int n);
std::optional<RankCertificate> check_condition_2prime(const TModule& m, int n);

/// 2 * d * (deg_tau(phi_t) + 1).
int default_max_n(const TModule& m);

struct AnalysisOptions {
    std::int64_t precision = 8;
    std::int64_t precision_cap = 256;
    /// Certificate budget; default_max_n when unset.
    std::optional<int> max_n;
    /// Also search for certificates on non-abelian verdicts and require that
    /// none exists within the budget.
    bool check = false;
};

/// How the verdict is backed.
enum class Confirmation {
    Certificate,               ///< abelian, with a rank certificate
    Uncertified,               ///< abelian, no certificate within the budget
    StableAtDoublePrecision,   ///< not abelian; the edges agree at twice the precision
};

std::string to_string(Confirmation c);

struct CheckResult {
    int max_n = 0;
    bool agrees = true;
    std::optional<RankCertificate> found;
};

struct AnalysisReport {
    int q = 0;
    int d = 0;
    bool abelian = false;
    bool t_finite = false;
    std::optional<bool> pure;
    std::optional<Rational> weight;
    std::optional<Rational> dual_weight;
    std::vector<Edge> edge_multiset;
    std::vector<NewtonPolygon> newton_polygons;
    std::vector<SigmaTPoly> diagonal;
    std::optional<RankCertificate> certificate;
    int max_n = 0;
    Confirmation confirmation = Confirmation::Uncertified;
    bool precision_assumed = false;
    std::int64_t precision_used = 0;
    std::optional<CheckResult> check;
};

AnalysisReport decide(const TModule& m, const AnalysisOptions& options = {});

/**
 * A random t-module over F_q(th)^perf with l(t) = th: D_0 is th*1 plus a
 * random strictly upper triangular constant part, and every entry has at
 * most two terms, of tau-degree at most max_degree. Coefficients are
 * nonzero constants, occasionally times th.
 */
TModule random_tmodule(std::mt19937_64& rng, std::uint32_t q, int d, int max_degree);

nlohmann::ordered_json to_json(const AnalysisReport& r);
std::string to_text(const AnalysisReport& r);

}  // namespace tmod

#endif
