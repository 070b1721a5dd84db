#pragma once

// The generating-function operators L, H, A evaluated compositionally from
// their defining five/six-term forms over interval arithmetic. One code
// path serves arbitrary handles; closed forms for exponential PGFs live in
// bounds.hpp and are used only as independent cross-checks.

#include <cstddef>
#include <vector>

#include "frogcert/interval.hpp"
#include "frogcert/pgf.hpp"

namespace frogcert {

// L g(x): queries g at (x+2)/3, (x+1)/3, x/3.
Interval op_L(const PgfHandle& g, Interval x);

// H g(x) = (1/3) L g(x) + (x+3)/6 g((x+2)/3)^3
//          + (x+2)/6 (g((x+1)/3)^2 - g((x+2)/3) g((x+1)/3)^2).
Interval op_H(const PgfHandle& g, Interval x);

// A g(x): six-term form over L and H at x/2 and (x+1)/2; queries g at the
// six induced points (x+k)/6, k = 0..5.
Interval op_A(const PgfHandle& g, Interval x);

// Certified enclosures of A^n[e^{a(x-1)}] at each grid point, evaluated by
// repeated handle composition (6^n leaf queries per point). n <= 3.
std::vector<Interval> iterate_A_on_exponential(double rate, int n,
                                               const std::vector<double>& grid);

// Descending grid c_i = (n-1-i)/(n-1), i = 0..n-1, so c_0 = 1 and
// c_{n-1} = 0. All points are exact doubles when n-1 is a power of two.
std::vector<double> descending_grid(std::size_t n);

} // namespace frogcert
