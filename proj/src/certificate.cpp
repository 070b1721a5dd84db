#include "frogcert/certificate.hpp"

#include <atomic>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "frogcert/interval.hpp"
#include "frogcert/operators.hpp"
#include "frogcert/pgf.hpp"

namespace frogcert {

namespace {

using json = nlohmann::json;

// Dyadic rates and grid points convert to double exactly; anything else in
// a certificate would make "bit-exact reproduction" meaningless.
double exact_double(Rat64 r, const char* what) {
    if (!r.is_dyadic())
        throw std::invalid_argument(std::string("certificate: ") + what +
                                    " is not dyadic: " + r.str());
    return r.to_double();
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        body(0, n);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Enclosures of A[e^{u(x-1)}] at grid[1..], the B side of every pair check
// for the current rate. Values depend only on u, so one evaluation serves
// all menu trials of a pass.
std::vector<Interval> a_values_on_grid(Rat64 u, const std::vector<Rat64>& grid,
                                       int threads) {
    const ExponentialPgf g(exact_double(u, "rate"));
    std::vector<Interval> out(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = op_A(g, iv_point(exact_double(grid[i], "grid point")));
    });
    return out;
}

bool tangent_ok(Rat64 u, Rat64 delta, const std::vector<Rat64>& grid,
                const std::vector<Interval>& a_vals, int threads) {
    const Rat64 r = u + delta;
    const Interval rate = iv_point(exact_double(r, "rate"));
    std::atomic<bool> ok{true};
    parallel_for(grid.size() - 1, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi && ok.load(std::memory_order_relaxed); ++j) {
            const Interval cj = iv_point(exact_double(grid[j], "grid point"));
            const Interval cj1 = iv_point(exact_double(grid[j + 1], "grid point"));
            const Interval gap = iv_sub(cj, cj1);
            const Interval tangent =
                iv_sub(exp_pgf_eval(rate, cj),
                       iv_mul(gap, exp_pgf_deriv(rate, cj)));
            if (!iv_strictly_right_of(tangent, a_vals[j + 1]))
                ok.store(false, std::memory_order_relaxed);
        }
    });
    return ok.load();
}

} // namespace

std::vector<Rat64> certificate_grid(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("certificate_grid: need at least 2 points");
    std::vector<Rat64> g;
    g.reserve(n);
    const auto den = static_cast<std::int64_t>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g.emplace_back(den - static_cast<std::int64_t>(i), den);
    return g;
}

bool tangent_condition(Rat64 u, Rat64 delta, const std::vector<Rat64>& grid,
                       int threads) {
    if (grid.size() < 2)
        return false;
    const auto a_vals = a_values_on_grid(u, grid, threads);
    return tangent_ok(u, delta, grid, a_vals, threads);
}

Certificate run_certificate(const CertifyOptions& opts) {
    for (std::size_t i = 1; i < opts.menu.size(); ++i)
        if (!(opts.menu[i] < opts.menu[i - 1]))
            throw std::invalid_argument(
                "run_certificate: step menu must be strictly decreasing");

    Certificate cert;
    cert.grid_size = opts.grid_size;
    cert.step_menu = opts.menu;
    cert.final_rate = Rat64(0);
    if (opts.menu.empty())
        return cert;

    const auto grid = certificate_grid(opts.grid_size);
    Rat64 u(0);
    for (std::size_t pass = 1; pass <= opts.max_passes; ++pass) {
        const auto a_vals = a_values_on_grid(u, grid, opts.threads);
        bool advanced = false;
        for (const Rat64& delta : opts.menu) {
            if (tangent_ok(u, delta, grid, a_vals, opts.threads)) {
                CertificateStep s;
                s.n = static_cast<int>(pass);
                s.u_before = u;
                s.delta = delta;
                s.u_after = u + delta;
                cert.steps.push_back(s);
                u = s.u_after;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            break;
        if (opts.progress)
            std::cerr << "pass " << pass << "  u = " << u.str() << " = "
                      << u.to_double() << "\n";
    }
    cert.passes = cert.steps.size();
    cert.final_rate = u;
    return cert;
}

VerifyResult verify_certificate(const Certificate& cert, int threads) {
    const auto grid = certificate_grid(cert.grid_size);
    Rat64 u(0);
    for (const auto& s : cert.steps) {
        if (s.u_before != u)
            return {false, s.n, "u_before does not chain from previous step"};
        if (s.u_after != s.u_before + s.delta)
            return {false, s.n, "u_after != u_before + delta"};
        if (!tangent_condition(s.u_before, s.delta, grid, threads))
            return {false, s.n, "tangent condition fails on re-check"};
        u = s.u_after;
    }
    if (cert.passes != cert.steps.size())
        return {false, -1, "passes field disagrees with step count"};
    if (u != cert.final_rate)
        return {false, -1, "final_rate is not the sum of deltas"};
    if (u < Rat64(15))
        return {false, -1, "final rate " + u.str() +
                               " below the 15 handoff threshold"};
    return {true, -1, "ok"};
}

std::string certificate_to_json(const Certificate& cert) {
    json steps = json::array();
    for (const auto& s : cert.steps)
        steps.push_back(json{{"n", s.n},
                             {"u_before", s.u_before.str()},
                             {"delta", s.delta.str()},
                             {"u_after", s.u_after.str()}});
    json menu = json::array();
    for (const auto& d : cert.step_menu)
        menu.push_back(d.str());
    const json j{{"grid_size", cert.grid_size},
                 {"step_menu", menu},
                 {"steps", steps},
                 {"passes", cert.passes},
                 {"final_rate", cert.final_rate.str()}};
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    const json j = json::parse(text);
    Certificate cert;
    cert.grid_size = j.at("grid_size").get<std::size_t>();
    for (const auto& d : j.at("step_menu"))
        cert.step_menu.push_back(Rat64::parse(d.get<std::string>()));
    for (const auto& s : j.at("steps")) {
        CertificateStep st;
        st.n = s.at("n").get<int>();
        st.u_before = Rat64::parse(s.at("u_before").get<std::string>());
        st.delta = Rat64::parse(s.at("delta").get<std::string>());
        st.u_after = Rat64::parse(s.at("u_after").get<std::string>());
        cert.steps.push_back(st);
    }
    cert.passes = j.at("passes").get<std::size_t>();
    cert.final_rate = Rat64::parse(j.at("final_rate").get<std::string>());
    return cert;
}

} // namespace frogcert
