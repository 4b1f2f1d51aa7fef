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
#include "tmod/errors.hpp"
#include "tmod/perfect_field.hpp"

using namespace tmod;
using tmod::testing::random_element;

namespace {

const GaloisField* field(std::uint32_t q) { return GaloisField::for_order(q); }

PerfectFieldElement th(const GaloisField* f) { return PerfectFieldElement::theta(f, 1); }

}  // namespace

TEST_CASE("finite fields of prime power order") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u, 49u}) {
        const GaloisField* f = field(q);
        CHECK(f->q() == q);
        // Every nonzero element is a unit and a^(q-1) = 1.
        for (Fq a = 1; a < q; ++a) {
            CHECK(f->mul(a, f->inv(a)) == 1);
            CHECK(f->pow(a, q - 1) == 1);
        }
        // The generator has order q - 1.
        const Fq g = f->generator();
        for (std::uint32_t k = 1; k + 1 < q; ++k) CHECK(f->pow(g, k) != 1);
        // Distributivity on all triples of a small field.
        if (q <= 9)
            for (Fq a = 0; a < q; ++a)
                for (Fq b = 0; b < q; ++b)
                    for (Fq c = 0; c < q; ++c) CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
    }
    CHECK(field(4) == GaloisField::get(2, 2));
    CHECK_THROWS_AS(GaloisField::for_order(6), Error);
    CHECK_THROWS_AS(GaloisField::for_order(1), Error);
}

TEST_CASE("characteristic arithmetic") {
    const GaloisField* f3 = field(3);
    CHECK(th(f3) + th(f3) == PerfectFieldElement::from_int(f3, 2) * th(f3));
    CHECK(!(th(f3) + th(f3)).is_zero());
    const GaloisField* f2 = field(2);
    CHECK((th(f2) + th(f2)).is_zero());
    CHECK(PerfectFieldElement::from_int(f3, 4) == PerfectFieldElement::one(f3));
    CHECK(PerfectFieldElement::from_int(f3, -1) == PerfectFieldElement::from_int(f3, 2));
}

TEST_CASE("roots multiply at the root level") {
    const GaloisField* f = field(3);
    const PerfectFieldElement r = th(f).twist(-1);
    const PerfectFieldElement sq = r * r;
    CHECK(sq.level() == 1);
    CHECK(sq.numerator() == SparsePoly{{2, 1}});
    CHECK(sq.denominator() == SparsePoly{{0, 1}});
    // (th^(2/3))^3 = th^2
    CHECK(sq.pow(3) == th(f).pow(2));
    CHECK(sq.twist(1) == th(f) * th(f));
}

TEST_CASE("fractions reduce to lowest terms") {
    const GaloisField* f = field(3);
    const auto one = PerfectFieldElement::one(f);
    const auto x = (th(f) * th(f) - one) / (th(f) - one);
    CHECK(x == th(f) + one);
    CHECK(x.level() == 0);
    CHECK(x.denominator() == SparsePoly{{0, 1}});
    // (th - 1)/(th^3 - 1) = 1/(th - 1)^2 in characteristic 3.
    const auto y = (th(f) - one) / (th(f).pow(3) - one);
    CHECK(y == ((th(f) - one) * (th(f) - one)).inverse());
    CHECK_THROWS_AS(one / PerfectFieldElement::zero(f), DivisionByZero);
    CHECK_THROWS_AS(PerfectFieldElement::zero(f).inverse(), DivisionByZero);
}

TEST_CASE("level is minimal") {
    const GaloisField* f = field(2);
    // root(th^2, 1) = th
    const auto x = PerfectFieldElement::fraction(f, 1, {{2, 1}}, {{0, 1}});
    CHECK(x == th(f));
    CHECK(x.level() == 0);
    const auto y = PerfectFieldElement::fraction(f, 3, {{8, 1}, {16, 1}}, {{0, 1}});
    CHECK(y == th(f) + th(f).pow(2));
    CHECK(y.level() == 0);
    const auto z = PerfectFieldElement::fraction(f, 3, {{4, 1}}, {{0, 1}});
    CHECK(z.level() == 1);
}

TEST_CASE("twist") {
    for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
        const GaloisField* f = field(q);
        CHECK(th(f).twist(1) == th(f).pow(q));
        const auto r = th(f).twist(-1);
        CHECK(r.level() == 1);
        CHECK(r.pow(q) == th(f));
        for (Fq c = 0; c < q; ++c) {
            const auto cc = PerfectFieldElement::constant(f, c);
            for (int k = -3; k <= 3; ++k) CHECK(cc.twist(k) == cc);
        }
        // th^(-1) is handled as a fraction.
        CHECK(th(f).inverse().twist(-2).twist(2) == th(f).inverse());
    }
}

TEST_CASE("field axioms at mixed levels") {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const GaloisField* f = field(q);
        for (int it = 0; it < 60; ++it) {
            const auto a = random_element(rng, f);
            const auto b = random_element(rng, f);
            const auto c = random_element(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK((b / a) * a == b);
            }
            // Canonical forms: difference zero iff identical representation.
            CHECK(((a - b).is_zero()) == (a.level() == b.level() && a.numerator() == b.numerator() &&
                                          a.denominator() == b.denominator()));
        }
    }
}

TEST_CASE("twist is a field automorphism and round-trips") {
    std::mt19937_64 rng(12);
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const GaloisField* f = field(q);
        for (int it = 0; it < 40; ++it) {
            const auto a = random_element(rng, f);
            const auto b = random_element(rng, f);
            for (int k = -3; k <= 3; ++k) {
                CHECK((a * b).twist(k) == a.twist(k) * b.twist(k));
                CHECK((a + b).twist(k) == a.twist(k) + b.twist(k));
                CHECK(a.twist(k).twist(-k) == a);
            }
            // For k < 0, twist is the q^|k|-th root.
            CHECK(a.twist(-2).pow(static_cast<std::int64_t>(q) * q) == a);
            CHECK(a.twist(-1).level() <= a.level() + 1);
        }
    }
}

TEST_CASE("finite field mode values are constants") {
    const GaloisField* f = field(9);
    const auto g = PerfectFieldElement::constant(f, f->generator());
    CHECK(g.as_constant() == f->generator());
    CHECK(g.twist(1) == g.twist(-5));
    CHECK(!th(f).as_constant().has_value());
}

TEST_CASE("rendering") {
    const GaloisField* f = field(3);
    CHECK(th(f).to_string() == "th");
    CHECK(PerfectFieldElement::zero(f).to_string() == "0");
    CHECK(PerfectFieldElement::from_int(f, 2).to_string() == "2");
    CHECK(th(f).twist(-1).to_string().find("root(") != std::string::npos);
    const auto x = (th(f) + PerfectFieldElement::one(f)).inverse();
    CHECK(x.to_string().find('/') != std::string::npos);
}
