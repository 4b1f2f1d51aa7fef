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

#include <doctest.h>

#include "test_util.hpp"
#include "tmod/analyzer.hpp"
#include "tmod/errors.hpp"

using namespace tmod;
using namespace tmod::testing;

namespace {

const GaloisField* field(std::uint32_t q) { return GaloisField::for_order(q); }
PerfectFieldElement th(const GaloisField* f) { return PerfectFieldElement::theta(f, 1); }
PerfectFieldElement one(const GaloisField* f) { return PerfectFieldElement::one(f); }
SkewTauPoly tau(const GaloisField* f, int k) { return SkewTauPoly::monomial(one(f), k); }
SkewTauPoly c(const PerfectFieldElement& x) { return SkewTauPoly::constant(x); }

TModule module(std::uint32_t q, TauMatrix m) {
    const FieldConfig k = FieldConfig::make(q, FieldMode::RationalPerfection);
    return TModule{k, std::move(m), th(k.fq_ptr())};
}

TModule drinfeld(std::uint32_t q) {
    const GaloisField* f = field(q);
    TauMatrix m(1);
    m(0, 0) = c(th(f)) + tau(f, 1) + tau(f, 2);
    return module(q, m);
}

TModule carlitz(std::uint32_t q, int d) {
    const GaloisField* f = field(q);
    TauMatrix m(d);
    for (int i = 0; i < d; ++i) m(i, i) = c(th(f));
    for (int i = 0; i + 1 < d; ++i) m(i, i + 1) = c(one(f));
    m(d - 1, 0) += tau(f, 1);
    return module(q, m);
}

TModule example(std::uint32_t q) {
    const GaloisField* f = field(q);
    TauMatrix m(2);
    m(0, 0) = c(th(f)) + tau(f, 2);
    m(0, 1) = tau(f, 3);
    m(1, 0) = c(one(f)) + tau(f, 1);
    m(1, 1) = c(th(f)) + tau(f, 2);
    return module(q, m);
}

TModule extension() {
    const GaloisField* f = field(3);
    TauMatrix m(2);
    m(0, 0) = c(th(f)) + tau(f, 2);
    m(1, 0) = tau(f, 1);
    m(1, 1) = c(th(f));
    return module(3, m);
}

// abelian = t_finite, pure iff a single slope, weight * slope = 1.
void check_coherent(const AnalysisReport& r) {
    CHECK(r.abelian == r.t_finite);
    bool all_positive = true;
    std::vector<Rational> slopes;
    for (const Edge& e : r.edge_multiset) {
        all_positive = all_positive && e.slope > 0;
        if (std::find(slopes.begin(), slopes.end(), e.slope) == slopes.end()) slopes.push_back(e.slope);
    }
    CHECK(r.abelian == all_positive);
    if (!r.abelian) {
        CHECK_FALSE(r.pure.has_value());
        CHECK(r.confirmation == Confirmation::StableAtDoublePrecision);
        return;
    }
    REQUIRE(r.pure.has_value());
    CHECK(*r.pure == (slopes.size() == 1));
    if (*r.pure) {
        REQUIRE(r.weight.has_value());
        CHECK(*r.weight * slopes[0] == Rational(1));
        CHECK(*r.dual_weight == -*r.weight);
    } else {
        CHECK_FALSE(r.weight.has_value());
    }
    CHECK((r.confirmation == Confirmation::Certificate) == r.certificate.has_value());
}

}  // namespace

TEST_CASE("validate accepts t-modules and rejects the rest") {
    CHECK_NOTHROW(validate(example(3)));
    CHECK_NOTHROW(validate(carlitz(2, 4)));
    TModule bad = drinfeld(3);
    bad.characteristic = one(field(3));
    CHECK_THROWS_AS(validate(bad), NotATModule);

    // D_0 = [[th, 1], [1, th]] has D_0 - th invertible.
    const GaloisField* f = field(3);
    TauMatrix m(2);
    m(0, 0) = c(th(f));
    m(0, 1) = c(one(f));
    m(1, 0) = c(one(f));
    m(1, 1) = c(th(f));
    CHECK_THROWS_AS(validate(module(3, m)), NotATModule);
    // A nilpotent part is fine.
    m(1, 0) = SkewTauPoly();
    CHECK_NOTHROW(validate(module(3, m)));
}

TEST_CASE("conditions on the two-dimensional example") {
    const TModule m = example(3);
    CHECK_FALSE(check_condition_1(m, 1).has_value());
    const auto c1 = check_condition_1(m, 2);
    REQUIRE(c1.has_value());
    CHECK(c1->kind == CertificateKind::PowerCondition1);
    CHECK(c1->s_n == 5);
    CHECK(c1->rank == 2);
    CHECK(check_condition_2(m, 2).has_value());
    CHECK(check_condition_2prime(m, 2).has_value());

    ConditionChecker checker(m);
    const auto found = checker.search(6);
    REQUIRE(found.has_value());
    CHECK(found->n == 2);
}

TEST_CASE("condition 1 implies conditions 2 and 2'") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const TModule m = random_tmodule(rng, trial % 2 ? 2 : 3, static_cast<int>(uniform(rng, 1, 2)), 2);
        ConditionChecker checker(m);
        for (int n = 1; n <= 3; ++n) {
            if (!checker.condition_1(n)) continue;
            CHECK(checker.condition_2(n).has_value());
            CHECK(checker.condition_2prime(n).has_value());
        }
    }
}

TEST_CASE("no certificate for the extension") {
    const TModule m = extension();
    ConditionChecker checker(m);
    for (int n = 1; n <= 6; ++n) {
        CHECK_FALSE(checker.condition_1(n).has_value());
        CHECK_FALSE(checker.condition_2(n).has_value());
        CHECK_FALSE(checker.condition_2prime(n).has_value());
    }
}

TEST_CASE("default certificate budget") {
    CHECK(default_max_n(drinfeld(3)) == 6);
    CHECK(default_max_n(example(3)) == 16);
    CHECK(default_max_n(carlitz(3, 3)) == 12);
}

TEST_CASE("decide on the examples") {
    SUBCASE("Drinfeld module") {
        const AnalysisReport r = decide(drinfeld(3));
        CHECK(r.abelian);
        CHECK(*r.pure);
        CHECK(*r.weight == Rational(1, 2));
        CHECK(r.newton_polygons[0].vertices() == std::vector<Point>{{0, -2}, {1, 0}});
        REQUIRE(r.certificate.has_value());
        CHECK(r.certificate->kind == CertificateKind::SufficientProp61);
        check_coherent(r);
    }
    SUBCASE("Carlitz tensor powers") {
        for (int d = 1; d <= 3; ++d) {
            const AnalysisReport r = decide(carlitz(3, d));
            CHECK(r.abelian);
            CHECK(*r.pure);
            CHECK(*r.weight == Rational(d));
            CHECK(*r.dual_weight == Rational(-d));
            REQUIRE(r.edge_multiset.size() == 1);
            CHECK(r.edge_multiset[0] == Edge{d, Rational(1, d)});
            check_coherent(r);
        }
    }
    SUBCASE("two slopes") {
        const AnalysisReport r = decide(example(3));
        CHECK(r.abelian);
        CHECK_FALSE(*r.pure);
        CHECK(r.edge_multiset == std::vector<Edge>{{1, Rational(1)}, {1, Rational(2)}});
        check_coherent(r);
    }
    SUBCASE("one slope in characteristic 2") {
        const AnalysisReport r = decide(example(2));
        CHECK(*r.pure);
        CHECK(*r.weight == Rational(2, 3));
        check_coherent(r);
    }
    SUBCASE("extension") {
        AnalysisOptions o;
        o.max_n = 6;
        o.check = true;
        const AnalysisReport r = decide(extension(), o);
        CHECK_FALSE(r.abelian);
        CHECK_FALSE(r.certificate.has_value());
        REQUIRE(r.check.has_value());
        CHECK(r.check->agrees);
        CHECK(r.check->max_n == 6);
        check_coherent(r);
    }
}

TEST_CASE("every certificate found by decide holds") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const TModule m = random_tmodule(rng, trial % 2 ? 2 : 3, static_cast<int>(uniform(rng, 1, 2)), 2);
        const AnalysisReport r = decide(m);
        check_coherent(r);
        if (!r.certificate) continue;
        const RankCertificate& cert = *r.certificate;
        std::optional<RankCertificate> again;
        switch (cert.kind) {
            case CertificateKind::SufficientProp61:
            case CertificateKind::PowerCondition1: again = check_condition_1(m, cert.n); break;
            case CertificateKind::BlockVertical2: again = check_condition_2(m, cert.n); break;
            case CertificateKind::BlockHorizontal2prime: again = check_condition_2prime(m, cert.n); break;
        }
        CHECK(again == cert);
    }
}

TEST_CASE("decide is deterministic") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const TModule m = random_tmodule(rng, 3, 2, 2);
        CHECK(to_json(decide(m)).dump() == to_json(decide(m)).dump());
    }
}

TEST_CASE("report serialization") {
    const AnalysisReport r = decide(example(3));
    const nlohmann::ordered_json j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"q", "d", "abelian", "t_finite", "pure", "weight", "dual_weight",
                                           "edge_multiset", "np_vertices", "diagonal", "certificate", "max_n",
                                           "confirmation", "precision_assumed", "precision_used"});
    CHECK(j["weight"].is_null());
    CHECK(j["edge_multiset"][1]["slope"] == "2");
    CHECK(j["certificate"]["kind"] == "PowerCondition1");
    CHECK(j["confirmation"] == "certificate");
    const std::string text = to_text(r);
    CHECK(text.find("abelian:     yes") != std::string::npos);
    CHECK(text.find("pure:        no") != std::string::npos);
}
