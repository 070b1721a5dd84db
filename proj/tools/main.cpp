// Command-line front end: certification, bound verification, simulation and
// oracle comparison, each emitting a canonical JSON report whose verdict is
// mirrored in the exit status.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "frogcert/bounds.hpp"
#include "frogcert/certificate.hpp"
#include "frogcert/enumerate.hpp"
#include "frogcert/interval.hpp"
#include "frogcert/operators.hpp"
#include "frogcert/report.hpp"
#include "frogcert/simulate.hpp"

namespace {

using nlohmann::json;
using namespace frogcert;

json iv_json(Interval v) { return json{{"lo", v.lo}, {"hi", v.hi}}; }

std::vector<Rat64> parse_menu(const std::string& text) {
    std::vector<Rat64> menu;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            menu.push_back(Rat64::parse(item));
    return menu;
}

int finish(RunReport& report, const std::string& out,
           std::chrono::steady_clock::time_point t0) {
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    emit_report(report, out);
    std::cerr << report.command << ": " << (report.pass ? "pass" : "fail")
              << " (" << report.wall_time_seconds << "s)\n";
    return report.pass ? 0 : 1;
}

int cmd_certify(std::size_t grid_size, const std::string& menu_text,
                std::size_t max_passes, int threads, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    CertifyOptions opts;
    opts.menu = parse_menu(menu_text);
    opts.max_passes = max_passes;
    opts.grid_size = grid_size;
    opts.threads = threads;
    opts.progress = true;
    const Certificate cert = run_certificate(opts);

    RunReport rep;
    rep.command = "certify";
    json menu = json::array();
    for (const auto& d : opts.menu) menu.push_back(d.str());
    rep.config = {{"grid_size", grid_size},
                  {"step_menu", menu},
                  {"max_passes", max_passes},
                  {"threads", threads}};
    rep.results = {{"certificate", json::parse(certificate_to_json(cert))},
                   {"passes", cert.passes},
                   {"final_rate", cert.final_rate.str()},
                   {"final_rate_value", cert.final_rate.to_double()}};
    rep.pass = cert.final_rate >= Rat64(15);
    return finish(rep, out, t0);
}

int cmd_verify(const std::string& path, int threads, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ifstream f(path);
    if (!f) {
        std::cerr << "verify: cannot open " << path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    json doc = json::parse(buf.str());
    if (doc.contains("results") && doc["results"].contains("certificate"))
        doc = doc["results"]["certificate"];
    const Certificate cert = certificate_from_json(doc.dump());
    const VerifyResult vr = verify_certificate(cert, threads);

    RunReport rep;
    rep.command = "verify";
    rep.config = {{"input", path}, {"threads", threads}};
    rep.results = {{"ok", vr.ok},
                   {"first_bad_step", vr.first_bad_step},
                   {"message", vr.message},
                   {"passes", cert.passes},
                   {"final_rate", cert.final_rate.str()}};
    rep.pass = vr.ok;
    return finish(rep, out, t0);
}

int cmd_bounds(std::vector<double> rates, std::size_t grid_size,
               const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    if (rates.empty()) rates = {15.0};
    const auto grid = descending_grid(grid_size);

    RunReport rep;
    rep.command = "bounds";
    rep.config = {{"a", rates}, {"grid_size", grid_size}};
    json per_rate = json::array();
    bool all_ok = true;
    for (double a : rates) {
        json entry{{"a", a}};
        bool ok = true;
        for (const auto& r : region_constants(a)) {
            entry["region_" + region_name(r.id)] =
                json{{"value", iv_json(r.value)},
                     {"paper_value", r.paper_value},
                     {"threshold", iv_json(r.threshold)},
                     {"side", r.upper ? "below" : "above"},
                     {"verdict", r.verdict}};
            ok = ok && r.verdict;
        }
        const bool psi_ok = psi_dominates_A(a, grid);
        const bool eps_ok = eps_step_check(a, grid);
        const bool psb_ok = psbound_check(a);
        entry["psi_dominates_A"] = psi_ok;
        entry["eps_step_check"] = eps_ok;
        entry["psbound"] = psb_ok;
        ok = ok && psi_ok && eps_ok && psb_ok;
        entry["ok"] = ok;
        per_rate.push_back(entry);
        all_ok = all_ok && ok;
    }
    rep.results = {{"rates", per_rate}};
    rep.pass = all_ok;
    return finish(rep, out, t0);
}

json tally_json(const FreqTally& t, double expected) {
    return json{{"numer", t.numer},
                {"denom", t.denom},
                {"freq", t.freq()},
                {"stderr", t.stderr()},
                {"expected", expected}};
}

bool tally_within(const FreqTally& t, double expected, double sigmas) {
    return std::abs(t.freq() - expected) <= sigmas * t.stderr();
}

int cmd_simulate(const std::string& mode, const ModelConfig& cfg,
                 int start_depth, const std::string& csv,
                 const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.command = "simulate";
    rep.config = {{"mode", mode},
                  {"variant", variant_name(cfg.variant)},
                  {"episodes", cfg.episodes},
                  {"depth_cap", cfg.depth_cap},
                  {"step_cap", cfg.step_cap},
                  {"seed", cfg.master_seed},
                  {"threads", cfg.threads}};

    if (mode == "episodes") {
        const BatchStats st = run_episode_batch(cfg);
        rep.results = {{"episodes", st.episodes},
                       {"mean_root_hits", st.mean_root_hits()},
                       {"stderr_root_hits", st.stderr_root_hits()},
                       {"total_root_hits", st.total_root_hits},
                       {"total_activated", st.total_activated},
                       {"truncated_episodes", st.truncated_episodes}};
        if (!csv.empty())
            write_episode_csv(csv, cfg.variant, st.records);
        rep.pass = true;
    } else if (mode == "hitprob") {
        const HitProbEstimate est = estimate_hit_prob(start_depth, cfg);
        const double expected = start_depth == 1 ? 4.0 / 9.0 : 3.0 / 8.0;
        const bool ok =
            std::abs(est.estimate - expected) <= 4.0 * est.stderr;
        rep.results = {{"start_depth", est.start_depth},
                       {"episodes", est.episodes},
                       {"hits", est.hits},
                       {"estimate", est.estimate},
                       {"stderr", est.stderr},
                       {"expected", expected},
                       {"within_4_sigma", ok},
                       {"undecided", est.truncated}};
        rep.pass = ok;
    } else if (mode == "phi") {
        const PhiTransitionStats st = estimate_phi_transitions(cfg);
        const bool ok = tally_within(st.first_step_odd, 1.0 / 3.0, 4.0) &&
                        tally_within(st.first_step_even, 1.0 / 4.0, 4.0) &&
                        tally_within(st.chain_odd, 1.0 / 2.0, 4.0) &&
                        tally_within(st.chain_even, 1.0 / 3.0, 4.0);
        rep.results = {{"episodes", st.episodes},
                       {"first_step_odd", tally_json(st.first_step_odd, 1.0 / 3.0)},
                       {"first_step_even", tally_json(st.first_step_even, 1.0 / 4.0)},
                       {"chain_odd", tally_json(st.chain_odd, 1.0 / 2.0)},
                       {"chain_even", tally_json(st.chain_even, 1.0 / 3.0)},
                       {"truncated", st.truncated},
                       {"within_4_sigma", ok}};
        rep.pass = ok;
    } else if (mode == "coupled") {
        const CoupledBatchStats st = run_coupled_batch(cfg);
        const bool ok = st.subset_violations == 0 &&
                        st.dominance_violations == 0 &&
                        st.truncation_rate() < 0.05;
        rep.results = {{"episodes", st.episodes},
                       {"subset_violations", st.subset_violations},
                       {"dominance_violations", st.dominance_violations},
                       {"truncated", st.truncated},
                       {"truncation_rate", st.truncation_rate()},
                       {"sum_Z", st.sum_Z},
                       {"sum_Vprime", st.sum_Vp},
                       {"sum_V", st.sum_V}};
        rep.pass = ok;
    } else {
        std::cerr << "simulate: unknown mode '" << mode << "'\n";
        return 2;
    }
    return finish(rep, out, t0);
}

struct OracleCase {
    std::string dist_name;
    FiniteDistribution dist;
};

int cmd_oracle(const std::string& model_arg, const std::string& dist_arg,
               int points, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<BoxModel> models;
    if (model_arg == "all")
        models = {BoxModel::A, BoxModel::L, BoxModel::H};
    else if (model_arg == "A")
        models = {BoxModel::A};
    else if (model_arg == "L")
        models = {BoxModel::L};
    else if (model_arg == "H")
        models = {BoxModel::H};
    else {
        std::cerr << "oracle: unknown model '" << model_arg << "'\n";
        return 2;
    }
    std::vector<OracleCase> cases;
    if (dist_arg == "all" || dist_arg == "delta0")
        cases.push_back({"delta0", FiniteDistribution::delta(0)});
    if (dist_arg == "all" || dist_arg == "delta1")
        cases.push_back({"delta1", FiniteDistribution::delta(1)});
    if (dist_arg == "all" || dist_arg == "uniform01")
        cases.push_back({"uniform01", FiniteDistribution::uniform01()});
    if (cases.empty()) {
        std::cerr << "oracle: unknown dist '" << dist_arg << "'\n";
        return 2;
    }

    RunReport rep;
    rep.command = "oracle";
    rep.config = {{"model", model_arg}, {"dist", dist_arg}, {"points", points}};
    json rows = json::array();
    bool all_ok = true;
    for (const BoxModel m : models) {
        for (const auto& oc : cases) {
            const FiniteDistribution law = enumerate_box_model(m, oc.dist);
            const FinitePgf eta(oc.dist, oc.dist_name);
            double max_width = 0.0;
            bool inside = true;
            for (int i = 0; i < points; ++i) {
                const BigRat x(i, points - 1);
                const BigRat exact = pgf_of_exact(law, x);
                const Interval xi = iv_from_bigrat(x);
                Interval op;
                switch (m) {
                case BoxModel::A: op = op_A(eta, xi); break;
                case BoxModel::L: op = op_L(eta, xi); break;
                case BoxModel::H: op = op_H(eta, xi); break;
                }
                max_width = std::max(max_width, iv_width(op));
                inside = inside && bigrat_in_interval(exact, op);
            }
            const bool ok = inside && max_width < 1e-12;
            all_ok = all_ok && ok;
            rows.push_back(json{{"model", box_model_name(m)},
                                {"dist", oc.dist_name},
                                {"support_bound", law.support_bound()},
                                {"exact_inside_interval", inside},
                                {"max_interval_width", max_width},
                                {"ok", ok}});
        }
    }
    rep.results = {{"cases", rows}};
    rep.pass = all_ok;
    return finish(rep, out, t0);
}

int cmd_eval(double a, std::size_t grid_size, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.command = "eval";
    rep.config = {{"a", a}, {"grid_size", grid_size}};
    const ExponentialPgf g(a);
    const Interval rate_up = iv_add(iv_point(a), iv_ratio(1, 20));
    json rows = json::array();
    for (double x : descending_grid(grid_size)) {
        const Interval xi = iv_point(x);
        json row{{"x", x},
                 {"L", iv_json(op_L(g, xi))},
                 {"H", iv_json(op_H(g, xi))},
                 {"A", iv_json(op_A(g, xi))},
                 {"exp_dominator", iv_json(exp_pgf_eval(rate_up, xi))}};
        if (a >= BOUNDS_MIN_RATE)
            row["psi"] = iv_json(psi(a, xi));
        rows.push_back(row);
    }
    rep.results = {{"grid", rows}};
    rep.pass = true;
    return finish(rep, out, t0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified numerics and simulators for the frog model on the "
                 "3,2-alternating tree"};
    app.require_subcommand(1);

    std::string out = "-";
    int threads = 1;
    app.add_option("--out", out, "report destination ('-' for stdout)");
    app.add_option("--threads", threads, "worker thread cap")
        ->check(CLI::PositiveNumber);

    // certify
    auto* certify = app.add_subcommand(
        "certify", "run the rate-growth certificate with paper defaults");
    std::size_t grid_size = CertificateDefaults::grid_size;
    std::string menu = "1/16,1/32,3/256";
    std::size_t max_passes = CertificateDefaults::max_passes;
    certify->add_option("--grid-size", grid_size, "grid point count");
    certify->add_option("--step-menu", menu, "comma-separated rational deltas");
    certify->add_option("--max-passes", max_passes, "pass cap");

    // verify
    auto* verify = app.add_subcommand("verify", "re-check a certificate file");
    std::string verify_path;
    verify->add_option("file", verify_path, "certificate or certify-report JSON")
        ->required();

    // bounds
    auto* bounds = app.add_subcommand(
        "bounds", "region constants and envelope checks at given rates");
    std::vector<double> rates;
    std::size_t bgrid = CertificateDefaults::grid_size;
    bounds->add_option("--a", rates, "rate(s); default 15");
    bounds->add_option("--grid-size", bgrid, "grid for the envelope checks");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "episode batches and estimators");
    std::string mode = "episodes";
    std::string variant = "nonbacktracking";
    ModelConfig cfg;
    int start_depth = 1;
    std::string csv;
    simulate->add_option("--mode", mode, "episodes|hitprob|phi|coupled");
    simulate->add_option("--variant", variant,
                         "original|nonbacktracking|selfsimilar");
    simulate->add_option("--episodes", cfg.episodes, "episode count");
    simulate->add_option("--depth-cap", cfg.depth_cap, "kill depth");
    simulate->add_option("--step-cap", cfg.step_cap, "tick/step cap");
    simulate->add_option("--seed", cfg.master_seed, "master seed");
    simulate->add_option("--start-depth", start_depth, "hitprob start depth (1 or 2)");
    simulate->add_option("--csv", csv, "per-episode CSV path (episodes mode)");

    // oracle
    auto* oracle = app.add_subcommand(
        "oracle", "exact box-model enumeration vs operator evaluation");
    std::string model = "all";
    std::string dist = "all";
    int points = 11;
    oracle->add_option("--model", model, "A|L|H|all");
    oracle->add_option("--dist", dist, "delta0|delta1|uniform01|all");
    oracle->add_option("--points", points, "equispaced comparison points");

    // eval
    auto* eval = app.add_subcommand("eval", "operator values on a grid");
    double eval_a = 15.0;
    std::size_t egrid = 257;
    eval->add_option("--a", eval_a, "exponential rate");
    eval->add_option("--grid-size", egrid, "grid point count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed())
            return cmd_certify(grid_size, menu, max_passes, threads, out);
        if (verify->parsed())
            return cmd_verify(verify_path, threads, out);
        if (bounds->parsed())
            return cmd_bounds(rates, bgrid, out);
        if (simulate->parsed()) {
            const auto v = variant_from_name(variant);
            if (!v) {
                std::cerr << "simulate: unknown variant '" << variant << "'\n";
                return 2;
            }
            cfg.variant = *v;
            cfg.threads = threads;
            return cmd_simulate(mode, cfg, start_depth, csv, out);
        }
        if (oracle->parsed())
            return cmd_oracle(model, dist, points, out);
        if (eval->parsed())
            return cmd_eval(eval_a, egrid, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
