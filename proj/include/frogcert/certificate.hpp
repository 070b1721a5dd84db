#pragma once

// The rate-growth certificate: starting from u = 0, repeatedly find the
// largest step delta from a fixed menu such that the tangent-line condition
// certifies A[e^{u(x-1)}] <= e^{(u+delta)(x-1)} on the grid, and advance u.
// With the stock menu {1/16, 1/32, 3/256}, grid c_i = (256-i)/256 and a cap
// of 340 passes, the final rate is exactly 973/64 = 15.203125.

#include <cstddef>
#include <string>
#include <vector>

#include "frogcert/rational.hpp"

namespace frogcert {

struct CertificateStep {
    int n = 0;         // 1-based pass index
    Rat64 u_before;
    Rat64 delta;       // largest menu value that passed at this step
    Rat64 u_after;     // u_before + delta
};

struct Certificate {
    std::size_t grid_size = 0;
    std::vector<Rat64> step_menu; // strictly decreasing
    std::vector<CertificateStep> steps;
    std::size_t passes = 0;
    Rat64 final_rate;
};

struct CertificateDefaults {
    static constexpr std::size_t grid_size = 257;
    static constexpr std::size_t max_passes = 340;
    static std::vector<Rat64> menu() {
        return {Rat64(1, 16), Rat64(1, 32), Rat64(3, 256)};
    }
};

// Exact rational grid c_i = (n-1-i)/(n-1), descending from 1 to 0.
std::vector<Rat64> certificate_grid(std::size_t n);

// True iff for every consecutive grid pair (c_j, c_{j+1}) the interval for
// f1(c_j) - (c_j - c_{j+1}) f1'(c_j) lies strictly right of the interval for
// A[e^{u(x-1)}](c_{j+1}), where f1 = e^{(u+delta)(x-1)}. Indeterminate
// comparisons count as failure. `threads` caps worker parallelism; the
// verdict is identical for any thread count.
bool tangent_condition(Rat64 u, Rat64 delta, const std::vector<Rat64>& grid,
                       int threads = 1);

struct CertifyOptions {
    std::vector<Rat64> menu = CertificateDefaults::menu();
    std::size_t max_passes = CertificateDefaults::max_passes;
    std::size_t grid_size = CertificateDefaults::grid_size;
    int threads = 1;
    bool progress = false; // per-pass u on stderr
};

Certificate run_certificate(const CertifyOptions& opts = {});

struct VerifyResult {
    bool ok = false;
    int first_bad_step = -1; // 1-based pass index, or -1
    std::string message;
};

// Re-runs the tangent condition for every recorded step, checks the exact
// delta chaining, and confirms final_rate >= 15.
VerifyResult verify_certificate(const Certificate& cert, int threads = 1);

// JSON serialization; rationals rendered as exact "p/q" strings, bit-exact
// round trip.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

} // namespace frogcert
