#include <doctest.h>

#include "frogcert/bounds.hpp"
#include "frogcert/operators.hpp"
#include "frogcert/pgf.hpp"

using namespace frogcert;

TEST_CASE("bound parameters stay in their stated ranges") {
    for (double a : {3.0, 15.0, 20.0, 50.0}) {
        const BoundParams p = bound_params(a);
        CHECK(p.c.lo > 0.75);
        CHECK(p.c.hi < 1.5);
        CHECK(p.d.lo > 5.0 / 12.0);
        CHECK(p.d.hi < 1.0);
        CHECK(p.ca.lo > 0.0);
        CHECK(p.ca.hi < 1.0);
    }
    CHECK_THROWS_AS(bound_params(2.9), std::invalid_argument);
    CHECK_THROWS_AS(l_upper(1.0, iv_point(0.5)), std::invalid_argument);
}

TEST_CASE("l_a at x = 1 matches 1 + (1/2 + c) e^{-2a/3}") {
    const Interval v = l_upper(15.0, iv_point(1.0));
    CHECK(iv_contains(v, 1.0000905704327846)); // 30-digit reference rounded
    CHECK(v.lo > 1.0);
}

TEST_CASE("psi at x = 1 exceeds 1") {
    const Interval v = psi(15.0, iv_point(1.0));
    CHECK(iv_contains(v, 1.0005300755603662));
    CHECK(v.lo > 1.0);
}

TEST_CASE("l and h dominate the operator evaluations on the grid") {
    const auto grid = descending_grid(257);
    for (double a : {3.0, 15.0, 50.0}) {
        const ExponentialPgf g(a);
        for (double x : grid) {
            const Interval xi = iv_point(x);
            CHECK(l_upper(a, xi).hi >= op_L(g, xi).lo);
            CHECK(h_upper(a, xi).hi >= op_H(g, xi).lo);
            // certified direction as well
            CHECK(l_upper(a, xi).lo >= op_L(g, xi).hi - 1e-13);
            CHECK(h_upper(a, xi).lo >= op_H(g, xi).hi - 1e-13);
        }
    }
}

TEST_CASE("Q is e^{-a(x-1)} psi up to a few ulp") {
    for (double a : {3.0, 15.0, 20.0}) {
        for (double x : descending_grid(17)) {
            const Interval xi = iv_point(x);
            const Interval q = q_func(a, xi);
            const Interval prod =
                iv_mul(iv_exp(iv_mul(iv_point(-a), iv_sub(xi, iv_point(1.0)))),
                       psi(a, xi));
            CHECK(q.lo >= prod.lo - 4 * 1e-16 * std::abs(prod.lo));
            CHECK(q.hi <= prod.hi + 4 * 1e-16 * std::abs(prod.hi));
        }
    }
    CHECK(iv_intersects(q_func(15.0, iv_point(1.0)), psi(15.0, iv_point(1.0))));
}

TEST_CASE("Q stays under the region (iii) and (iv) ceilings at a = 15") {
    for (double x : descending_grid(257)) {
        if (x >= 0.125 && x < 0.5)
            CHECK(q_func(15.0, iv_point(x)).hi < 0.926137);
        if (x < 0.125)
            CHECK(q_func(15.0, iv_point(x)).hi < 0.920246);
    }
}

TEST_CASE("region constants at a = 15 match the printed values") {
    const auto reports = region_constants(15.0);
    REQUIRE(reports.size() == 4);
    // 30-digit references: .513030269841..., .368771299553...,
    // .926136992480..., .920245194966...
    const double precise[4] = {0.5130302698412192, 0.3687712995538962,
                               0.9261369924806096, 0.9202451949663199};
    for (int i = 0; i < 4; ++i) {
        CHECK(iv_contains(reports[i].value, precise[i]));
        CHECK(std::abs(iv_mid(reports[i].value) - reports[i].paper_value) <= 1e-3);
        CHECK(reports[i].verdict);
        CHECK(iv_width(reports[i].value) < 1e-12);
    }
}

TEST_CASE("region verdicts hold for sampled rates 15..30") {
    for (int a = 15; a <= 30; ++a)
        for (const auto& r : region_constants(static_cast<double>(a)))
            CHECK(r.verdict);
}

TEST_CASE("psi dominates A certified on the full grid") {
    const auto grid = descending_grid(257);
    for (double a : {3.0, 15.0, 20.0, 50.0})
        CHECK(psi_dominates_A(a, grid));
}

TEST_CASE("rate growth step check") {
    const auto grid = descending_grid(257);
    CHECK(eps_step_check(15.0, grid));
    CHECK(eps_step_check(50.0, grid));
    // regression: at rate 0.1 no grid point certifies a violation either
    CHECK(eps_step_check(0.1, grid));
    CHECK_THROWS_AS(eps_step_check(0.0, grid), std::invalid_argument);
}

TEST_CASE("psbound inequality is certified at the sampled rates") {
    for (double a : {15.0, 20.0, 50.0})
        CHECK(psbound_check(a));
}
