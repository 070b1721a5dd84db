#pragma once

// Analytic upper-bound family for A applied to exponential PGFs, plus the
// four region arguments that close the rate-growth step: for a >= 15,
// A[e^{a(x-1)}] <= e^{(a+1/20)(x-1)} on [0,1].

#include <string>
#include <vector>

#include "frogcert/interval.hpp"

namespace frogcert {

// Validity threshold for the l_a/h_a/Psi family.
inline constexpr double BOUNDS_MIN_RATE = 3.0;

struct BoundParams {
    double a;    // rate, >= 3
    Interval c;  // 3/2 - (3/4) e^{-a/3}
    Interval d;  // 1 - (7/12) e^{-a/3}
    Interval ca; // a^{-9/4}, the region-(i) boundary offset
};

BoundParams bound_params(double a);

// l_a(x) = (x+3)/4 e^{a(x-1)} + (x+1)/4 e^{(a/3)(x-3)} + c e^{(2a/3)(x-2)}
Interval l_upper(double a, Interval x);

// h_a(x) = (x+3)/4 e^{a(x-1)} + (x+1)/12 e^{(a/3)(x-3)} + d e^{(2a/3)(x-2)}
Interval h_upper(double a, Interval x);

// Psi(x,a) = (x+2)/3 ((x+7)/8)^2 e^{a(x-1)} + (x+1)/3 (x+6)/8 e^{(a/2)(x-2)}
//            + (x+1/3)/3 (x+2)/8 e^{(a/6)(x-6)} + 41/9 e^{(2a/3)(x-2)}
Interval psi(double a, Interval x);

// Q(x,a) = e^{-a(x-1)} Psi(x,a)
Interval q_func(double a, Interval x);

enum class Region { i, ii, iii, iv };

struct RegionReport {
    Region id;
    Interval value;      // the region's scalar expression at this rate
    double paper_value;  // the printed constant for a = 15
    Interval threshold;  // certified enclosure of the comparison bound
    bool upper;          // true: need value < threshold; false: value > threshold
    bool verdict;        // certified side condition
};

std::string region_name(Region r);

// Evaluates the four decisive scalar expressions of the region arguments at
// rate a and checks each against its threshold (7/12 - 1/20, 1/20,
// e^{-7/160}, e^{-1/20}). paper_value fields carry the a = 15 constants.
std::vector<RegionReport> region_constants(double a);

// Certified check that Psi(x,a) dominates A[e^{a(x-1)}] at every grid point:
// psi.lo >= opA.hi pointwise.
bool psi_dominates_A(double a, const std::vector<double>& grid);

// Grid check of A[e^{a(x-1)}] <= e^{(a+1/20)(x-1)}: fails only where the
// A-enclosure lies certifiably above the exponential's enclosure. A grid
// check, not a proof between points.
bool eps_step_check(double a, const std::vector<double>& grid);

// Inequality (psbound): Psi(1-c(a), a) <= 1 - (a + 1/20) c(a), certified.
bool psbound_check(double a);

} // namespace frogcert
