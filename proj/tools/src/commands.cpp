// Copyright 2026 The dhdcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dhdcert/estimator.hpp"
#include "dhdcert/io.hpp"
#include "dhdcert/negativity.hpp"
#include "dhdcert/sampler.hpp"
#include "dhdcert/stellar.hpp"
#include "dhdcert/version.hpp"
#include "manifest.hpp"
#include "specs.hpp"

namespace dhdcert::cli {
namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kIo, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SampleBatch load_samples(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kIo, "cannot open samples file " + path);
    }
    return read_samples_csv(in);
}

// Writes through a string so a failed run never leaves a partial file.
void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !(f.flush())) {
        throw Error(ErrorCode::kIo, "cannot write " + path);
    }
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ojson complex_json(cplx z) {
    return ojson::array({z.real(), z.imag()});
}

struct Common {
    std::vector<std::string> argv;
    int threads = 0;
};

// --- state -------------------------------------------------------------------

struct StateArgs {
    std::string spec;
    std::string output;
};

void cmd_state(const Common &c, const StateArgs &a, std::ostream &out) {
    auto t0 = Clock::now();
    std::string text = a.spec;
    std::vector<std::string> inputs;
    if (!text.empty() && text.front() == '@') {
        inputs.push_back(text.substr(1));
        text = read_text(text.substr(1));
    }
    nlohmann::json spec = nlohmann::json::parse(text, nullptr, false);
    if (spec.is_discarded()) {
        throw Error(ErrorCode::kUsage, "state spec is not valid JSON");
    }
    TruncatedState state = build_state(spec);
    std::ostringstream ss;
    write_state_json(state, ss);
    write_text(a.output, ss.str());

    ojson summary;
    summary["output"] = a.output;
    summary["dim"] = state.dim();
    summary["trace_deficit"] = state.trace_deficit();
    summary["purity"] = state.purity();
    summary["mean_photon_number"] = state.mean_photon_number();
    out << summary.dump(2) << '\n';

    RunManifest m{c.argv, ojson{{"command", "state"}, {"spec", ojson::parse(spec.dump())}},
                  std::nullopt, inputs, {a.output}, seconds_since(t0)};
    write_manifests(m);
}

// --- sample ------------------------------------------------------------------

struct SampleArgs {
    std::string state;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::string zeta;
    int out_dim = 0;
    std::string output;
};

void cmd_sample(const Common &c, const SampleArgs &a, std::ostream &out) {
    auto t0 = Clock::now();
    TruncatedState state = load_state(a.state);
    SamplerOptions opts;
    opts.threads = c.threads;
    SampleBatch batch = a.zeta.empty()
                            ? sample_q(state, a.n, a.seed, opts)
                            : sample_unbalanced(state, parse_complex(a.zeta), a.n, a.seed, opts,
                                                a.out_dim);
    std::ostringstream ss;
    write_samples_csv(batch, ss);
    write_text(a.output, ss.str());

    ojson summary;
    summary["output"] = a.output;
    summary["N"] = batch.size();
    summary["seed"] = batch.seed;
    summary["acceptance_rate"] = batch.acceptance_rate;
    summary["proposal_sigma"] = batch.proposal_sigma;
    summary["state_fingerprint"] = batch.state_fingerprint;
    summary["warnings"] = batch.warnings;
    out << summary.dump(2) << '\n';

    ojson cfg{{"command", "sample"}, {"N", a.n}, {"seed", a.seed}};
    if (!a.zeta.empty()) {
        cfg["zeta"] = complex_json(parse_complex(a.zeta));
        cfg["out_dim"] = a.out_dim;
    }
    RunManifest m{c.argv, cfg, a.seed, {a.state}, {a.output}, seconds_since(t0)};
    write_manifests(m);
}

// --- estimate ----------------------------------------------------------------

struct EstimateArgs {
    std::string samples;
    std::string target;
    double epsilon = 0.1;
    double delta = 0.05;
    std::string method = "hoeffding";
    std::optional<int> p;
    std::optional<double> eta;
    std::string translate;
    std::string pilot;
    bool allow_underpowered = false;
    bool certify_rank = false;
    int restarts = 32;
    std::string output;
};

EstimatorConfig choose_config(const TargetOperator &op, const EstimateArgs &a,
                              std::optional<std::int64_t> budget, ojson &notes) {
    BoundMethod method = parse_bound_method(a.method);
    EstimatorConfig cfg{op, 1, 0.5, a.epsilon, a.delta, method};
    if (a.p.has_value() != a.eta.has_value()) {
        throw Error(ErrorCode::kUsage, "--p and --eta must be given together");
    }
    if (a.p) {
        cfg.p = *a.p;
        cfg.eta = *a.eta;
        notes["parameters"] = "user";
    } else if (!a.pilot.empty()) {
        cfg = optimize_params_clt(load_samples(a.pilot), op, a.epsilon, a.delta, budget).config;
        cfg.method = method;
        notes["parameters"] = "clt_pilot";
    } else {
        cfg = optimize_params(op, a.epsilon, a.delta, budget).config;
        cfg.method = method;
        notes["parameters"] = "hoeffding_optimal";
    }
    cfg.validate();
    return cfg;
}

void cmd_estimate(const Common &c, const EstimateArgs &a, std::ostream &out) {
    auto t0 = Clock::now();
    TargetSpec target = parse_target(a.target);
    if (!target.op) {
        throw Error(ErrorCode::kUnsupported,
                    "estimation needs a target with bounded Fock support (identity frame)");
    }
    SampleBatch batch = load_samples(a.samples);
    cplx alpha{0.0, 0.0};
    if (!a.translate.empty()) {
        alpha = parse_complex(a.translate);
        batch = translate_samples(batch, alpha);
    }
    ojson notes;
    EstimatorConfig cfg = choose_config(*target.op, a, static_cast<std::int64_t>(batch.size()),
                                        notes);
    ConfidenceEstimate e = estimate(batch, cfg, c.threads);
    if (static_cast<double>(e.n_samples) < e.required_samples && !a.allow_underpowered) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "N=%lld is below the %.0f samples required for epsilon=%g at delta=%g; "
                      "pass --allow-underpowered to report the weaker confidence",
                      static_cast<long long>(e.n_samples), std::ceil(e.required_samples),
                      a.epsilon, a.delta);
        throw CliError("insufficient_samples", kExitInsufficientSamples, buf);
    }

    ojson report = ojson::parse(estimate_report_json(e));
    report["target"] = a.target;
    report["delta"] = a.delta;
    report["parameters"] = notes["parameters"];
    if (!a.translate.empty()) {
        report["translation"] = complex_json(alpha);
    }
    if (target.witness_n) {
        WitnessResult w = witness_from_estimate(e, alpha, *target.witness_n);
        report["omega_lower_bound"] = w.lower_bound();
        report["one_sided_confidence"] = w.confidence;
        report["negativity_certified"] = w.negativity_certified;
        report["wigner_upper_bound"] = w.wigner_upper_bound;
    }
    std::optional<std::uint64_t> seed_used;
    if (a.certify_rank) {
        if (!target.core) {
            throw Error(ErrorCode::kUsage, "--certify-rank needs a fock: or core: target");
        }
        StellarOptions so;
        so.restarts = a.restarts;
        so.threads = c.threads;
        seed_used = so.seed;
        RankVerdict v = rank_witness_verdict(e, *target.core, so);
        report["rank_verdict"] = ojson::parse(verdict_json(v));
    }
    const std::string text = report.dump(2) + "\n";
    if (a.output.empty()) {
        out << text;
        return;
    }
    write_text(a.output, text);
    out << text;
    std::vector<std::string> inputs{a.samples};
    if (!a.pilot.empty()) {
        inputs.push_back(a.pilot);
    }
    ojson cfg_json{{"command", "estimate"}, {"target", a.target}, {"epsilon", a.epsilon},
                   {"delta", a.delta}, {"method", a.method}, {"p", cfg.p}, {"eta", cfg.eta}};
    RunManifest m{c.argv, cfg_json, seed_used, inputs, {a.output}, seconds_since(t0)};
    write_manifests(m);
}

// --- optimize-params -----------------------------------------------------------

struct OptimizeArgs {
    std::optional<int> n;
    std::string target;
    double epsilon = 0.1;
    double delta = 0.05;
    std::optional<std::int64_t> budget;
    std::string pilot;
};

void cmd_optimize(const OptimizeArgs &a, std::ostream &out) {
    if (a.n.has_value() == !a.target.empty()) {
        throw Error(ErrorCode::kUsage, "give exactly one of --n and --target");
    }
    TargetOperator op = a.n ? TargetOperator::fock_projector(*a.n)
                            : [&] {
                                  TargetSpec t = parse_target(a.target);
                                  if (!t.op) {
                                      throw Error(ErrorCode::kUnsupported,
                                                  "target has unbounded Fock support");
                                  }
                                  return *t.op;
                              }();
    OptimizedParams r = a.pilot.empty()
                            ? (a.n ? optimize_params(*a.n, a.epsilon, a.delta, a.budget)
                                   : optimize_params(op, a.epsilon, a.delta, a.budget))
                            : optimize_params_clt(load_samples(a.pilot), op, a.epsilon, a.delta,
                                                  a.budget);
    ojson j;
    j["target"] = a.n ? "fock:" + std::to_string(*a.n) : a.target;
    j["epsilon"] = a.epsilon;
    j["delta"] = a.delta;
    j["method"] = a.pilot.empty() ? "hoeffding" : "clt";
    // Exact integers up to 2^53; beyond that the count is only meaningful as
    // a magnitude and would overflow a 64-bit integer anyway.
    const double n_req = std::ceil(r.required_samples);
    if (n_req <= 9007199254740992.0) {
        j["N"] = static_cast<std::int64_t>(n_req);
    } else {
        j["N"] = n_req;
    }
    j["p"] = r.config.p;
    j["eta"] = r.config.eta;
    j["p_n"] = r.p_n;
    j["lambda"] = r.lambda;
    j["bias_bound"] = r.bias_bound;
    j["kernel_range"] = r.kernel_range;
    if (r.failure_probability) {
        j["failure_probability"] = *r.failure_probability;
    }
    if (!a.pilot.empty()) {
        j["kernel_variance"] = r.kernel_variance;
    }
    out << j.dump(2) << '\n';
}

// --- profile -------------------------------------------------------------------

struct ProfileArgs {
    std::string target;
    int k_max = 1;
    int phi_sweep = 0;
    double chi = 0.0;
    int restarts = 32;
    std::uint64_t seed = StellarOptions{}.seed;
    std::string output;
};

void cmd_profile(const Common &c, const ProfileArgs &a, std::ostream &out) {
    auto t0 = Clock::now();
    StellarOptions so;
    so.restarts = a.restarts;
    so.seed = a.seed;
    so.threads = c.threads;
    std::ostringstream ss;
    ojson cfg{{"command", "profile"}, {"restarts", a.restarts}};
    if (a.phi_sweep > 0) {
        if (a.phi_sweep < 2) {
            throw Error(ErrorCode::kUsage, "--phi-sweep needs at least 2 points");
        }
        ss << "phi,chi,max_fidelity\n";
        char buf[128];
        for (int i = 0; i < a.phi_sweep; ++i) {
            double phi = (std::numbers::pi / 2.0) * i / (a.phi_sweep - 1);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", phi, a.chi,
                          rank1_core_profile(phi, a.chi, so));
            ss << buf;
        }
        cfg["phi_sweep"] = a.phi_sweep;
        cfg["chi"] = a.chi;
    } else {
        if (a.target.empty()) {
            throw Error(ErrorCode::kUsage, "profile needs --target or --phi-sweep");
        }
        TargetSpec t = parse_target(a.target);
        if (!t.core) {
            throw Error(ErrorCode::kUsage, "profile targets must be fock: or core:");
        }
        write_profile_csv(fidelity_profile(*t.core, a.k_max, so), ss);
        cfg["target"] = a.target;
        cfg["k_max"] = a.k_max;
    }
    if (a.output.empty()) {
        out << ss.str();
        return;
    }
    write_text(a.output, ss.str());
    RunManifest m{c.argv, cfg, a.seed, {}, {a.output}, seconds_since(t0)};
    write_manifests(m);
}

// --- witness-scan ----------------------------------------------------------------

struct ScanArgs {
    std::string state;
    std::string samples;
    int n = 1;
    double epsilon = 0.1;
    double delta = 0.05;
    std::int64_t n_samples = 100000;
    std::uint64_t seed = 1;
    int points = 32;
    double extent = 2.5;
    std::optional<int> p;
    std::optional<double> eta;
    std::string method = "hoeffding";
    bool full = false;
    std::string output;
};

void cmd_witness_scan(const Common &c, ScanArgs a, std::ostream &out) {
    auto t0 = Clock::now();
    if (a.state.empty() == a.samples.empty()) {
        throw Error(ErrorCode::kUsage, "give exactly one of --state and --samples");
    }
    if (a.full) {
        a.n_samples = 550000;
    }
    SampleBatch batch;
    std::optional<std::uint64_t> seed;
    if (!a.state.empty()) {
        SamplerOptions so;
        so.threads = c.threads;
        batch = sample_q(load_state(a.state), a.n_samples, a.seed, so);
        seed = a.seed;
    } else {
        batch = load_samples(a.samples);
    }
    TargetOperator op = witness_operator(a.n);
    EstimatorConfig cfg{op, 1, 0.5, a.epsilon, a.delta, BoundMethod::kHoeffding};
    if (a.p.has_value() != a.eta.has_value()) {
        throw Error(ErrorCode::kUsage, "--p and --eta must be given together");
    }
    if (a.p) {
        cfg.p = *a.p;
        cfg.eta = *a.eta;
    } else {
        cfg = optimize_params(op, a.epsilon, a.delta, static_cast<std::int64_t>(batch.size()))
                  .config;
    }
    cfg.method = parse_bound_method(a.method);
    auto results = witness_scan(batch, square_grid(a.points, a.extent), a.n, cfg, c.threads);
    std::ostringstream ss;
    write_scan_csv(results, ss);

    int certified = 0;
    for (const auto &r : results) {
        certified += r.negativity_certified ? 1 : 0;
    }
    ojson summary;
    summary["points"] = results.size();
    summary["certified_points"] = certified;
    summary["N"] = batch.size();
    summary["p"] = cfg.p;
    summary["eta"] = cfg.eta;
    summary["method"] = a.method;
    summary["per_point_confidence"] = results.empty() ? 0.0 : results.front().confidence;
    summary["confidence_note"] = "marginal per grid point; not simultaneous over the grid";

    if (a.output.empty()) {
        out << ss.str();
        return;
    }
    write_text(a.output, ss.str());
    out << summary.dump(2) << '\n';
    ojson cfg_json{{"command", "witness-scan"}, {"n", a.n},       {"epsilon", a.epsilon},
                   {"delta", a.delta},          {"N", batch.size()}, {"points", a.points},
                   {"extent", a.extent},        {"p", cfg.p},     {"eta", cfg.eta},
                   {"method", a.method}};
    std::vector<std::string> inputs{a.state.empty() ? a.samples : a.state};
    RunManifest m{c.argv, cfg_json, seed, inputs, {a.output}, seconds_since(t0)};
    write_manifests(m);
}

// --- replay ----------------------------------------------------------------------

void cmd_replay(const std::string &manifest_path, std::ostream &out, std::ostream &err) {
    nlohmann::json m = nlohmann::json::parse(read_text(manifest_path), nullptr, false);
    if (m.is_discarded() || !m.contains("command_line") || !m.contains("outputs")) {
        throw Error(ErrorCode::kIo, "not a dhdcert manifest: " + manifest_path);
    }
    auto argv = m.at("command_line").get<std::vector<std::string>>();
    std::ostringstream sink;
    int status = run(argv, sink, err);
    if (status != 0) {
        throw CliError("replay_failed", status, "replayed command exited with " +
                                                    std::to_string(status));
    }
    ojson report = ojson::array();
    bool all_match = true;
    for (const auto &o : m.at("outputs")) {
        std::string path = o.at("path").get<std::string>();
        std::string expected = o.at("sha256").get<std::string>();
        std::string actual = sha256_file(path);
        all_match = all_match && actual == expected;
        report.push_back({{"path", path}, {"identical", actual == expected}});
    }
    out << report.dump(2) << '\n';
    if (!all_match) {
        throw CliError("replay_mismatch", kExitReplayMismatch,
                       "replayed outputs differ from the manifest digests");
    }
}

void report_error(std::ostream &err, const std::string &code, const std::string &message) {
    ojson j;
    j["error"] = {{"code", code}, {"message", message}};
    err << j.dump() << '\n';
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::kUsage:
            return 2;
        case ErrorCode::kConfig:
            return 3;
        case ErrorCode::kDomain:
            return 4;
        case ErrorCode::kCutoff:
            return 5;
        case ErrorCode::kUndefinedSubtraction:
            return 6;
        case ErrorCode::kEnvelopeViolation:
            return 7;
        case ErrorCode::kInfeasiblePrecision:
            return 8;
        case ErrorCode::kUnsupported:
            return 9;
        case ErrorCode::kOptimizerFailure:
            return 10;
        case ErrorCode::kIo:
            return 11;
    }
    return kExitInternal;
}

int run(const std::vector<std::string> &argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Double homodyne detection simulation and non-Gaussianity certification",
                 "dhdcert"};
    app.set_version_flag("--version", DHDCERT_VERSION_STRING);
    app.require_subcommand(1);
    Common common;
    common.argv = argv;
    app.add_option("--threads", common.threads,
                   "Worker threads (default: $DHDCERT_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    StateArgs state_args;
    auto *state = app.add_subcommand("state", "Build a density matrix from a JSON spec");
    state->add_option("--spec", state_args.spec, "Constructor object or pipeline array; @file reads a file")
        ->required();
    state->add_option("-o,--output", state_args.output, "State JSON output")->required();

    SampleArgs sample_args;
    auto *sample = app.add_subcommand("sample", "Simulate double homodyne detection");
    sample->add_option("--state", sample_args.state, "State JSON file")->required();
    sample->add_option("-N,--n", sample_args.n, "Number of samples")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sample->add_option("--seed", sample_args.seed, "Random seed")->required();
    sample->add_option("--zeta", sample_args.zeta,
                       "Unbalancing squeeze 're,im' (omit for balanced detection)");
    sample->add_option("--out-dim", sample_args.out_dim,
                       "Cutoff after unbalancing (default: automatic)");
    sample->add_option("-o,--output", sample_args.output, "Samples CSV output")->required();

    EstimateArgs est_args;
    auto *est = app.add_subcommand("estimate", "Estimate Tr(A rho) with a confidence interval");
    est->add_option("--samples", est_args.samples, "Samples CSV")->required();
    est->add_option("--target", est_args.target,
                    "fock:N | witness:n=N | element:K,L | core:[...]")
        ->required();
    est->add_option("--epsilon", est_args.epsilon, "Half-width of the interval")->capture_default_str();
    est->add_option("--delta", est_args.delta, "Failure probability")->capture_default_str();
    est->add_option("--method", est_args.method, "hoeffding | clt")->capture_default_str();
    est->add_option("--p", est_args.p, "Kernel order (with --eta)");
    est->add_option("--eta", est_args.eta, "Kernel efficiency parameter (with --p)");
    est->add_option("--translate", est_args.translate, "Translate samples by 're,im' first");
    est->add_option("--pilot", est_args.pilot,
                    "Independent pilot samples for CLT parameter selection");
    est->add_flag("--allow-underpowered", est_args.allow_underpowered,
                  "Report even when N is below the required sample count");
    est->add_flag("--certify-rank", est_args.certify_rank,
                  "Compare the lower bound with the rank-bounded fidelity thresholds");
    est->add_option("--restarts", est_args.restarts, "Optimizer restarts for --certify-rank")->capture_default_str();
    est->add_option("-o,--output", est_args.output, "Report JSON output (default: stdout)");

    OptimizeArgs opt_args;
    auto *opt = app.add_subcommand("optimize-params", "Choose (p, eta) minimising the sample count");
    opt->add_option("--n", opt_args.n, "Fock target index");
    opt->add_option("--target", opt_args.target, "Diagonal target spec (instead of --n)");
    opt->add_option("--epsilon", opt_args.epsilon, "Precision")->capture_default_str();
    opt->add_option("--delta", opt_args.delta, "Failure probability")->capture_default_str();
    opt->add_option("--budget", opt_args.budget, "Sample budget for failure_probability");
    opt->add_option("--pilot", opt_args.pilot, "Pilot samples: optimise the CLT variant");

    ProfileArgs prof_args;
    auto *prof = app.add_subcommand("profile", "Rank-bounded maximal fidelities of a target");
    prof->add_option("--target", prof_args.target, "fock:N or core:[...]");
    prof->add_option("--k-max", prof_args.k_max, "Largest k (ranks below k)")->capture_default_str();
    prof->add_option("--phi-sweep", prof_args.phi_sweep,
                     "Instead: sweep cos(phi)|0> + e^{i chi} sin(phi)|1> over [0, pi/2]");
    prof->add_option("--chi", prof_args.chi, "Relative phase for --phi-sweep")->capture_default_str();
    prof->add_option("--restarts", prof_args.restarts, "Optimizer restarts")->capture_default_str();
    prof->add_option("--seed", prof_args.seed, "Restart seed")->capture_default_str();
    prof->add_option("-o,--output", prof_args.output, "CSV output (default: stdout)");

    ScanArgs scan_args;
    auto *scan = app.add_subcommand("witness-scan", "Wigner-negativity witness over a grid");
    scan->add_option("--state", scan_args.state, "State JSON to sample from");
    scan->add_option("--samples", scan_args.samples, "Existing samples CSV");
    scan->add_option("--n", scan_args.n, "Witness order")->capture_default_str();
    scan->add_option("--epsilon", scan_args.epsilon, "Precision")->capture_default_str();
    scan->add_option("--delta", scan_args.delta, "Failure probability")->capture_default_str();
    scan->add_option("-N,--samples-count", scan_args.n_samples, "Samples drawn with --state")->capture_default_str();
    scan->add_option("--seed", scan_args.seed, "Seed used with --state")->capture_default_str();
    scan->add_option("--points", scan_args.points, "Grid points per axis")->capture_default_str();
    scan->add_option("--extent", scan_args.extent, "Grid covers [-extent, extent]^2")->capture_default_str();
    scan->add_option("--p", scan_args.p, "Kernel order (with --eta)");
    scan->add_option("--eta", scan_args.eta, "Kernel efficiency parameter (with --p)");
    scan->add_option("--method", scan_args.method, "hoeffding | clt")->capture_default_str();
    scan->add_flag("--full", scan_args.full, "Use the full N = 5.5e5 sample budget");
    scan->add_option("-o,--output", scan_args.output, "Scan CSV output (default: stdout)");

    std::string manifest_path;
    auto *replay = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
    replay->add_option("manifest", manifest_path, "Manifest JSON")->required();

    std::vector<const char *> cargv;
    cargv.reserve(argv.size());
    for (const auto &s : argv) {
        cargv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            // --help and --version.
            return app.exit(e, out, err);
        }
        report_error(err, "usage", e.what());
        return exit_code_for(ErrorCode::kUsage);
    }

    try {
        if (*state) {
            cmd_state(common, state_args, out);
        } else if (*sample) {
            cmd_sample(common, sample_args, out);
        } else if (*est) {
            cmd_estimate(common, est_args, out);
        } else if (*opt) {
            cmd_optimize(opt_args, out);
        } else if (*prof) {
            cmd_profile(common, prof_args, out);
        } else if (*scan) {
            cmd_witness_scan(common, scan_args, out);
        } else if (*replay) {
            cmd_replay(manifest_path, out, err);
        }
    } catch (const Error &e) {
        report_error(err, std::string(error_code_name(e.code())), e.what());
        return exit_code_for(e.code());
    } catch (const CliError &e) {
        report_error(err, e.code(), e.what());
        return e.exit_code();
    } catch (const std::exception &e) {
        report_error(err, "internal", e.what());
        return kExitInternal;
    }
    return 0;
}

}  // namespace dhdcert::cli
