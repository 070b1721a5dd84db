#include <doctest.h>

#include "frogcert/enumerate.hpp"
#include "frogcert/operators.hpp"

using namespace frogcert;

TEST_CASE("the L box with silent boxes gives (x+3)/4 exactly") {
    const FiniteDistribution law =
        enumerate_box_model(BoxModel::L, FiniteDistribution::delta(0));
    REQUIRE(law.probs.size() == 2);
    CHECK(law.probs[0] == BigRat(3, 4));
    CHECK(law.probs[1] == BigRat(1, 4));
    for (int j = 0; j <= 10; ++j) {
        const BigRat x(j, 10);
        CHECK(pgf_of_exact(law, x) == (x + 3) / 4);
    }
}

TEST_CASE("the H box with silent boxes also gives (x+3)/4") {
    const FiniteDistribution law =
        enumerate_box_model(BoxModel::H, FiniteDistribution::delta(0));
    CHECK(pgf_of_exact(law, BigRat(1, 2)) == BigRat(7, 8));
    CHECK(law.probs[0] == BigRat(3, 4));
}

TEST_CASE("the A box with silent boxes hits zero with probability 13/24") {
    const FiniteDistribution law =
        enumerate_box_model(BoxModel::A, FiniteDistribution::delta(0));
    CHECK(law.probs[0] == BigRat(13, 24));
    CHECK(pgf_of_exact(law, BigRat(0)) == BigRat(13, 24));
}

TEST_CASE("enumeration conserves probability exactly for all models") {
    const FiniteDistribution dists[] = {
        FiniteDistribution::delta(0), FiniteDistribution::delta(1),
        FiniteDistribution::uniform01(), FiniteDistribution::delta(2),
        FiniteDistribution::delta(3)};
    for (const auto& u : dists) {
        for (BoxModel m : {BoxModel::A, BoxModel::L, BoxModel::H}) {
            const FiniteDistribution law = enumerate_box_model(m, u);
            BigRat sum = 0;
            for (const BigRat& p : law.probs) {
                CHECK(p >= 0);
                sum += p;
            }
            CHECK(sum == 1);
            CHECK(pgf_of_exact(law, BigRat(1)) == 1);
        }
    }
}

TEST_CASE("support larger than 3 is rejected with a size estimate") {
    CHECK_THROWS_WITH_AS(
        enumerate_box_model(BoxModel::A, FiniteDistribution::delta(4)),
        doctest::Contains("3^"), std::invalid_argument);
}

TEST_CASE("oracle equivalence: enumerated PGFs sit inside the operator enclosures") {
    struct Case {
        const char* name;
        FiniteDistribution dist;
    };
    const Case cases[] = {{"delta0", FiniteDistribution::delta(0)},
                          {"delta1", FiniteDistribution::delta(1)},
                          {"uniform01", FiniteDistribution::uniform01()}};
    for (const auto& c : cases) {
        const FinitePgf eta(c.dist, c.name);
        for (BoxModel m : {BoxModel::A, BoxModel::L, BoxModel::H}) {
            const FiniteDistribution law = enumerate_box_model(m, c.dist);
            for (int j = 0; j <= 10; ++j) {
                const BigRat x(j, 10);
                const BigRat exact = pgf_of_exact(law, x);
                const Interval xi = iv_from_bigrat(x);
                Interval op;
                switch (m) {
                case BoxModel::A: op = op_A(eta, xi); break;
                case BoxModel::L: op = op_L(eta, xi); break;
                case BoxModel::H: op = op_H(eta, xi); break;
                }
                CAPTURE(c.name);
                CAPTURE(box_model_name(m));
                CAPTURE(j);
                CHECK(bigrat_in_interval(exact, op));
                CHECK(iv_width(op) < 1e-12);
            }
        }
    }
}

TEST_CASE("oracle equivalence holds for a support-3 release law too") {
    FiniteDistribution u;
    u.probs = {BigRat(1, 2), BigRat(1, 4), BigRat(1, 8), BigRat(1, 8)};
    const FinitePgf eta(u, "mixed3");
    const FiniteDistribution law = enumerate_box_model(BoxModel::A, u);
    for (int j = 0; j <= 4; ++j) {
        const BigRat x(j, 4);
        CHECK(bigrat_in_interval(pgf_of_exact(law, x), op_A(eta, iv_from_bigrat(x))));
    }
}

TEST_CASE("pgf_of basics") {
    CHECK(iv_contains(pgf_of(FiniteDistribution::delta(0), iv_point(0.37)), 1.0));
    const Interval id = pgf_of(FiniteDistribution::delta(1), iv_point(0.37));
    CHECK(iv_contains(id, 0.37));
    CHECK(iv_width(id) < 1e-15);
    CHECK(pgf_of_exact(FiniteDistribution::uniform01(), BigRat(1, 2)) ==
          BigRat(3, 4));
}

TEST_CASE("finite distributions validate") {
    FiniteDistribution bad;
    bad.probs = {BigRat(1, 2), BigRat(1, 3)};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.probs = {BigRat(3, 2), BigRat(-1, 2)};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(FiniteDistribution::uniform01().validate());
}

TEST_CASE("bigrat interval conversion is tight and correct") {
    const Interval third = iv_from_bigrat(BigRat(1, 3));
    CHECK(third.lo < third.hi);
    CHECK(bigrat_in_interval(BigRat(1, 3), third));
    const Interval half = iv_from_bigrat(BigRat(1, 2));
    CHECK(half.lo == 0.5);
    CHECK(half.hi == 0.5);
}
