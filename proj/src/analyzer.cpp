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

#include "tmod/analyzer.hpp"

#include <algorithm>
#include <sstream>

#include "tmod/errors.hpp"

namespace tmod {

namespace {

using KMatrix = std::vector<std::vector<PerfectFieldElement>>;

KMatrix multiply(const KMatrix& a, const KMatrix& b) {
    const std::size_t d = a.size();
    KMatrix r(d, std::vector<PerfectFieldElement>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

bool is_zero(const KMatrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

}  // namespace

void validate(const TModule& m) {
    const int d = m.dim();
    if (d < 1) throw NotATModule("dimension must be at least 1");
    KMatrix n = m.phi_t.coefficient_matrix(0);
    for (int i = 0; i < d; ++i) n[i][i] -= m.characteristic;
    KMatrix power = n;
    for (int k = 1; k < d; ++k) power = multiply(power, n);
    if (!is_zero(power)) {
        std::ostringstream out;
        out << "D_0 - " << m.characteristic.to_string() << " is not nilpotent: (D_0 - l)^" << d << " = [";
        for (int i = 0; i < d; ++i) {
            out << (i ? "; " : "");
            for (int j = 0; j < d; ++j) out << (j ? ", " : "") << power[i][j].to_string();
        }
        out << "]";
        throw NotATModule(out.str());
    }
}

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::SufficientProp61:
            return "SufficientProp61";
        case CertificateKind::PowerCondition1:
            return "PowerCondition1";
        case CertificateKind::BlockVertical2:
            return "BlockVertical2";
        case CertificateKind::BlockHorizontal2prime:
            return "BlockHorizontal2prime";
    }
    return "";
}

std::string to_string(Confirmation c) {
    switch (c) {
        case Confirmation::Certificate:
            return "certificate";
        case Confirmation::Uncertified:
            return "uncertified";
        case Confirmation::StableAtDoublePrecision:
            return "stable_at_double_precision";
    }
    return "";
}

SigmaMatrix ConditionChecker::block(int k, int s) { return SigmaMatrix::from_tau(powers_.power(k), s); }

std::optional<RankCertificate> ConditionChecker::condition_1(int n) {
    const int s = powers_.s_n(n);
    // Nothing has full rank modulo s^0.
    if (s < 1) return std::nullopt;
    const int rank = rank_mod(block(n, s), s);
    if (rank < d_) return std::nullopt;
    return RankCertificate{n == 1 ? CertificateKind::SufficientProp61 : CertificateKind::PowerCondition1, n, s, rank};
}

std::optional<RankCertificate> ConditionChecker::condition_2(int n) {
    const int s = powers_.s_n(n);
    if (s < 1) return std::nullopt;
    std::vector<SigmaMatrix> blocks;
    for (int k = 1; k <= n; ++k) blocks.push_back(block(k, s));
    const int rank = rank_mod(SigmaMatrix::stack(blocks, true), s);
    if (rank < d_) return std::nullopt;
    return RankCertificate{CertificateKind::BlockVertical2, n, s, rank};
}

std::optional<RankCertificate> ConditionChecker::condition_2prime(int n) {
    const int s = powers_.s_n(n);
    if (s < 1) return std::nullopt;
    std::vector<SigmaMatrix> blocks;
    for (int k = 1; k <= n; ++k) blocks.push_back(block(k, s));
    const int rank = rank_mod(SigmaMatrix::stack(blocks, false), s);
    if (rank < d_) return std::nullopt;
    return RankCertificate{CertificateKind::BlockHorizontal2prime, n, s, rank};
}

std::optional<RankCertificate> ConditionChecker::search(int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        if (auto c = condition_1(n)) return c;
        if (auto c = condition_2(n)) return c;
        if (auto c = condition_2prime(n)) return c;
    }
    return std::nullopt;
}

std::optional<RankCertificate> check_condition_1(const TModule& m, int n) { return ConditionChecker(m).condition_1(n); }

std::optional<RankCertificate> check_condition_2(const TModule& m, int n) { return ConditionChecker(m).condition_2(n); }

std::optional<RankCertificate> check_condition_2prime(const TModule& m, int n) {
    return ConditionChecker(m).condition_2prime(n);
}

int default_max_n(const TModule& m) { return 2 * m.dim() * (std::max(m.phi_t.degree(), 0) + 1); }

AnalysisReport decide(const TModule& m, const AnalysisOptions& options) {
    validate(m);
    AnalysisReport r;
    r.q = static_cast<int>(m.config.q());
    r.d = m.dim();
    r.max_n = options.max_n.value_or(default_max_n(m));

    const SigmaTMatrix c = SigmaTMatrix::characteristic(m.phi_t, m.config.fq_ptr());
    DiagonalizeOptions dopt;
    dopt.precision = options.precision;
    dopt.precision_cap = std::max(options.precision_cap, options.precision);
    DiagonalForm form = diagonalize_sigma_t(c, dopt);
    r.edge_multiset = aggregated_edges(form.entries);
    r.abelian = std::all_of(r.edge_multiset.begin(), r.edge_multiset.end(),
                            [](const Edge& e) { return e.slope > Rational(0); });

    if (!r.abelian) {
        // A negative verdict has no finite certificate; it must at least
        // survive a rerun at twice the precision.
        DiagonalizeOptions again = dopt;
        again.precision = form.precision_used * 2;
        again.precision_cap = std::max(dopt.precision_cap, again.precision);
        const DiagonalForm second = diagonalize_sigma_t(c, again);
        if (aggregated_edges(second.entries) != r.edge_multiset)
            throw PrecisionExhausted("edges changed when the precision was doubled", again.precision * 2);
        form.precision_assumed = form.precision_assumed || second.precision_assumed;
        r.confirmation = Confirmation::StableAtDoublePrecision;
    }
    r.t_finite = r.abelian;
    r.precision_assumed = form.precision_assumed;
    r.precision_used = form.precision_used;
    for (const auto& e : form.entries) r.newton_polygons.push_back(newton_polygon(e));
    r.diagonal = std::move(form.entries);

    if (r.abelian) {
        std::vector<Rational> slopes;
        for (const auto& e : r.edge_multiset)
            if (slopes.empty() || slopes.back() != e.slope) slopes.push_back(e.slope);
        r.pure = slopes.size() == 1;
        if (*r.pure) {
            r.weight = Rational(1) / slopes.front();
            r.dual_weight = -*r.weight;
        }
    }

    if (r.abelian || options.check) {
        ConditionChecker checker(m);
        std::optional<RankCertificate> cert = checker.search(r.max_n);
        if (r.abelian) {
            r.certificate = cert;
            r.confirmation = cert ? Confirmation::Certificate : Confirmation::Uncertified;
        }
        if (options.check) r.check = CheckResult{r.max_n, cert.has_value() == r.abelian, cert};
    }
    return r;
}

TModule random_tmodule(std::mt19937_64& rng, std::uint32_t q, int d, int max_degree) {
    const FieldConfig k = FieldConfig::make(q, FieldMode::RationalPerfection);
    const GaloisField* f = k.fq_ptr();
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coefficient = [&] {
        PerfectFieldElement c = PerfectFieldElement::constant(f, static_cast<Fq>(pick(1, static_cast<int>(q) - 1)));
        if (pick(0, 3) == 0) c = c * PerfectFieldElement::theta(f, 1);
        return c;
    };
    TauMatrix phi(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            SkewTauPoly e;
            int terms = 0;
            if (i == j) {
                e = SkewTauPoly::constant(PerfectFieldElement::theta(f, 1));
                terms = 1;
            } else if (i < j && pick(0, 1)) {
                // A constant part keeps D_0 - th nilpotent over any K.
                e = SkewTauPoly::constant(PerfectFieldElement::constant(f, static_cast<Fq>(pick(1, static_cast<int>(q) - 1))));
                terms = 1;
            }
            const int extra = pick(0, 2 - terms);
            std::vector<int> used;
            for (int t = 0; t < extra && max_degree > 0; ++t) {
                const int deg = pick(1, max_degree);
                if (std::find(used.begin(), used.end(), deg) != used.end()) continue;
                used.push_back(deg);
                e = e + SkewTauPoly::monomial(coefficient(), deg);
            }
            phi(i, j) = e;
        }
    return TModule{k, phi, PerfectFieldElement::theta(f, 1)};
}

namespace {

nlohmann::ordered_json rational_or_null(const std::optional<Rational>& x) {
    return x ? nlohmann::ordered_json(to_string(*x)) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json certificate_json(const std::optional<RankCertificate>& c) {
    if (!c) return nullptr;
    nlohmann::ordered_json j;
    j["kind"] = to_string(c->kind);
    j["n"] = c->n;
    j["s_n"] = c->s_n;
    j["rank"] = c->rank;
    return j;
}

std::string edges_text(const std::vector<Edge>& edges) {
    std::string s;
    for (const auto& e : edges) s += (s.empty() ? "" : ", ") + std::string("(") + std::to_string(e.length) + ", " + to_string(e.slope) + ")";
    return s.empty() ? "none" : s;
}

}  // namespace

nlohmann::ordered_json to_json(const AnalysisReport& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["d"] = r.d;
    j["abelian"] = r.abelian;
    j["t_finite"] = r.t_finite;
    j["pure"] = r.pure ? nlohmann::ordered_json(*r.pure) : nlohmann::ordered_json(nullptr);
    j["weight"] = rational_or_null(r.weight);
    j["dual_weight"] = rational_or_null(r.dual_weight);
    j["edge_multiset"] = nlohmann::ordered_json::array();
    for (const auto& e : r.edge_multiset) j["edge_multiset"].push_back({{"length", e.length}, {"slope", to_string(e.slope)}});
    j["np_vertices"] = nlohmann::ordered_json::array();
    for (const auto& np : r.newton_polygons) {
        nlohmann::ordered_json v = nlohmann::ordered_json::array();
        for (const auto& p : np.vertices()) v.push_back({p.x, p.y});
        j["np_vertices"].push_back(v);
    }
    j["diagonal"] = nlohmann::ordered_json::array();
    for (const auto& e : r.diagonal) j["diagonal"].push_back(e.to_string());
    j["certificate"] = certificate_json(r.certificate);
    j["max_n"] = r.max_n;
    j["confirmation"] = to_string(r.confirmation);
    j["precision_assumed"] = r.precision_assumed;
    j["precision_used"] = r.precision_used;
    if (r.check) {
        j["check"] = {{"max_n", r.check->max_n},
                      {"agrees", r.check->agrees},
                      {"certificate", certificate_json(r.check->found)}};
    }
    return j;
}

std::string to_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "t-module of dimension " << r.d << " over F_" << r.q << "\n";
    out << "  abelian:     " << (r.abelian ? "yes" : "no") << "\n";
    out << "  t-finite:    " << (r.t_finite ? "yes" : "no") << "\n";
    out << "  pure:        " << (r.pure ? (*r.pure ? "yes" : "no") : "n/a") << "\n";
    if (r.weight) {
        out << "  weight:      " << to_string(*r.weight) << "\n";
        out << "  dual weight: " << to_string(*r.dual_weight) << "\n";
    }
    out << "  edges:       " << edges_text(r.edge_multiset) << "\n";
    for (std::size_t i = 0; i < r.diagonal.size(); ++i) {
        out << "  lambda_" << i + 1 << ":    " << r.diagonal[i].to_string() << "\n";
        out << "    vertices:";
        for (const auto& p : r.newton_polygons[i].vertices()) out << " (" << p.x << ", " << p.y << ")";
        out << "\n";
    }
    if (r.certificate)
        out << "  certificate: " << to_string(r.certificate->kind) << " n=" << r.certificate->n
            << " s_n=" << r.certificate->s_n << " rank=" << r.certificate->rank << "\n";
    out << "  backed by:   " << to_string(r.confirmation);
    if (r.confirmation == Confirmation::Uncertified) out << " (no certificate for n <= " << r.max_n << ")";
    out << "\n";
    out << "  precision:   " << r.precision_used << (r.precision_assumed ? " (zero tests assumed)" : "") << "\n";
    if (r.check)
        out << "  check:       " << (r.check->agrees ? "agrees" : "DISAGREES") << " (n <= " << r.check->max_n << ")\n";
    return out.str();
}

}  // namespace tmod
