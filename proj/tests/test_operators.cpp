#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "frogcert/enumerate.hpp"
#include "frogcert/operators.hpp"
#include "frogcert/pgf.hpp"
#include "frogcert/rng.hpp"

using namespace frogcert;

namespace {

// Independent oracle for the operators applied to g = 1, by direct symbolic
// substitution: L1(x) = H1(x) = (x+3)/4, and
// A1(x) = (x+1)/3 * P * (1-Q) + (x+2)/3 * Q^2 with P=(x+6)/8, Q=(x+7)/8.
BigRat l1_exact(const BigRat& x) { return (x + 3) / 4; }

BigRat a1_exact(const BigRat& x) {
    const BigRat P = (x + 6) / 8;
    const BigRat Q = (x + 7) / 8;
    return (x + 1) / 3 * P * (1 - Q) + (x + 2) / 3 * Q * Q;
}

} // namespace

TEST_CASE("L and H of the constant PGF equal (x+3)/4 on the grid") {
    const OnePgf one;
    for (double x : descending_grid(257)) {
        const BigRat xr(x); // grid points are dyadic, conversion is exact
        const Interval L = op_L(one, iv_point(x));
        const Interval H = op_H(one, iv_point(x));
        CHECK(bigrat_in_interval(l1_exact(xr), L));
        CHECK(bigrat_in_interval(l1_exact(xr), H));
        CHECK(iv_width(L) < 1e-14);
        CHECK(iv_width(H) < 1e-14);
    }
}

TEST_CASE("A of the constant PGF matches the substitution oracle") {
    const OnePgf one;
    for (double x : descending_grid(257)) {
        const Interval A = op_A(one, iv_point(x));
        CHECK(bigrat_in_interval(a1_exact(BigRat(x)), A));
        CHECK(iv_width(A) < 1e-14);
    }
    CHECK(bigrat_in_interval(BigRat(13, 24), op_A(one, iv_point(0.0))));
}

TEST_CASE("operators are normalized at x = 1") {
    const OnePgf one;
    CHECK(iv_contains(op_L(one, iv_point(1.0)), 1.0));
    CHECK(iv_contains(op_H(one, iv_point(1.0)), 1.0));
    CHECK(iv_contains(op_A(one, iv_point(1.0)), 1.0));
    for (double a : {0.25, 1.0, 15.0, 50.0}) {
        const ExponentialPgf g(a);
        CHECK(iv_contains(op_L(g, iv_point(1.0)), 1.0));
        CHECK(iv_contains(op_H(g, iv_point(1.0)), 1.0));
        CHECK(iv_contains(op_A(g, iv_point(1.0)), 1.0));
    }
}

TEST_CASE("exponential PGF evaluation") {
    CHECK(iv_contains(exp_pgf_eval(iv_point(0.0), iv_point(0.37)), 1.0));
    CHECK(iv_contains(exp_pgf_eval(iv_point(15.0), iv_point(1.0)), 1.0));
    const Interval v = exp_pgf_eval(iv_point(15.0), iv_point(0.0));
    CHECK(v.lo <= 3.059023205018258e-7);
    CHECK(3.059023205018258e-7 <= v.hi * (1 + 1e-15));
    CHECK(iv_contains(v, 3.0590232050182579e-7));
    CHECK_THROWS_AS(ExponentialPgf(-1.0), std::invalid_argument);
}

TEST_CASE("exponential PGF derivative") {
    CHECK(iv_contains(exp_pgf_deriv(iv_point(0.0), iv_point(0.5)), 0.0));
    CHECK(iv_contains(exp_pgf_deriv(iv_point(1.0), iv_point(1.0)), 1.0));
    const Interval d = exp_pgf_deriv(iv_point(15.25), iv_point(255.0 / 256.0));
    CHECK(iv_contains(d, 14.368081596011403));
    CHECK(iv_width(d) < 1e-12);
}

TEST_CASE("frozen cross-check values against the exponential closed forms") {
    const ExponentialPgf g(15.0);
    // termwise evaluations of the exponential expansions, 30-digit reference
    CHECK(iv_contains(op_L(g, iv_point(0.0)), 3.0793921701061550e-7));
    CHECK(iv_contains(op_H(g, iv_point(0.5)), 4.8464503739341565e-4));
    CHECK(iv_contains(op_A(g, iv_point(0.5)), 4.1065110219276494e-4));
    CHECK(iv_width(op_A(g, iv_point(0.5))) < 1e-16);
}

TEST_CASE("iteration of A on exponentials") {
    const std::vector<double> grid = descending_grid(9);

    const auto level0 = iterate_A_on_exponential(2.0, 0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Interval direct = exp_pgf_eval(iv_point(2.0), iv_point(grid[i]));
        CHECK(level0[i].lo == direct.lo);
        CHECK(level0[i].hi == direct.hi);
    }

    const auto level1 = iterate_A_on_exponential(0.0, 1, {0.0});
    CHECK(bigrat_in_interval(BigRat(13, 24), level1[0]));

    const auto level2 = iterate_A_on_exponential(0.0, 2, {1.0});
    CHECK(iv_contains(level2[0], 1.0));

    CHECK_THROWS_WITH_AS(iterate_A_on_exponential(1.0, 4, grid),
                         doctest::Contains("6^n"), std::invalid_argument);
}

TEST_CASE("iterating A from the seed decreases pointwise") {
    const std::vector<double> grid = descending_grid(17);
    const auto a1 = iterate_A_on_exponential(0.0, 1, grid);
    const auto a2 = iterate_A_on_exponential(0.0, 2, grid);
    const auto a3 = iterate_A_on_exponential(0.0, 3, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a1[i].lo <= 1.0 + 1e-12);
        CHECK(a2[i].lo <= a1[i].hi + 1e-12);
        CHECK(a3[i].lo <= a2[i].hi + 1e-12);
    }
}

TEST_CASE("A output behaves like a PGF on the grid") {
    const std::vector<double> grid = descending_grid(257);
    StreamRng rng(stream_key(11, 0, 5));
    for (int rep = 0; rep < 6; ++rep) {
        const double a =
            static_cast<double>(rng.bounded(2000)) / 100.0; // 0 .. 19.99
        const ExponentialPgf g(a);
        std::vector<Interval> vals;
        vals.reserve(grid.size());
        for (double x : grid)
            vals.push_back(op_A(g, iv_point(x)));
        // range and normalization
        CHECK(iv_contains(vals.front(), 1.0));
        for (const Interval& v : vals) {
            CHECK(v.lo <= 1.0 + 1e-12);
            CHECK(v.hi >= -1e-12);
        }
        // grid is descending: value must not increase as x decreases
        for (std::size_t i = 1; i < vals.size(); ++i)
            CHECK(vals[i].lo <= vals[i - 1].hi + 1e-12);
        // convexity of midpoints up to accumulated slack
        for (std::size_t i = 2; i < vals.size(); ++i) {
            const double second = iv_mid(vals[i]) - 2 * iv_mid(vals[i - 1]) +
                                  iv_mid(vals[i - 2]);
            CHECK(second >= -(iv_width(vals[i]) + 2 * iv_width(vals[i - 1]) +
                              iv_width(vals[i - 2]) + 1e-13));
        }
    }
}

TEST_CASE("A is monotone in the exponential rate") {
    const std::vector<double> grid = descending_grid(65);
    StreamRng rng(stream_key(11, 1, 5));
    for (int rep = 0; rep < 10; ++rep) {
        double a1 = static_cast<double>(rng.bounded(3000)) / 100.0;
        double a2 = static_cast<double>(rng.bounded(3000)) / 100.0;
        if (a1 > a2) std::swap(a1, a2);
        const ExponentialPgf g1(a1), g2(a2);
        // e^{a1(x-1)} >= e^{a2(x-1)} pointwise, so A g1 >= A g2
        for (double x : grid)
            CHECK(op_A(g1, iv_point(x)).hi >= op_A(g2, iv_point(x)).lo - 1e-13);
    }
}

TEST_CASE("handles report their descriptors") {
    CHECK(ExponentialPgf(15.0).descriptor().find("15") != std::string::npos);
    CHECK(OnePgf().descriptor() == "1");
}
