// Copyright 2026 The rgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RGAN_CLI_HPP
#define RGAN_CLI_HPP

// Run configuration (one JSON file plus flag overrides) and the command
// pipelines behind the `rgan` binary. Artifacts never depend on the worker
// count or on wall-clock time.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rgan/bounds.hpp"
#include "rgan/density.hpp"
#include "rgan/error.hpp"
#include "rgan/families.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/io.hpp"
#include "rgan/learning.hpp"
#include "rgan/parallel.hpp"
#include "rgan/rosenblatt.hpp"

namespace rgan {

enum class Command { sample, density, fit, sampling_error, rate, bounds };

inline std::string_view to_string(Command c)
{
    switch (c) {
    case Command::sample: return "sample";
    case Command::density: return "density";
    case Command::fit: return "fit";
    case Command::sampling_error: return "sampling-error";
    case Command::rate: return "rate";
    case Command::bounds: return "bounds";
    }
    return "unknown";
}

inline Command parse_command(std::string_view s)
{
    for (Command c : {Command::sample, Command::density, Command::fit, Command::sampling_error, Command::rate,
                      Command::bounds}) {
        if (s == to_string(c)) {
            return c;
        }
    }
    fail(ErrorKind::ConfigInvalid, "unknown command '" + std::string(s) + "'");
}

inline bool is_stochastic(Command c)
{
    return c == Command::sample || c == Command::fit || c == Command::sampling_error || c == Command::rate;
}

/// Target density: a named family or a density JSON file.
struct TargetSpec {
    std::string name = "tilted";
    std::string file;
    std::size_t dim = 1;
    std::size_t resolution = 129;
    QuadRule rule = QuadRule::trapezoid;
    DensityParams params;
    std::vector<std::size_t> order; ///< coordinate order of the Rosenblatt construction
};

struct RunConfig {
    Command command = Command::bounds;
    TargetSpec target;
    HypothesisConfig hypothesis;
    std::size_t n = 1000;
    std::vector<std::size_t> n_grid{64, 256, 1024, 4096, 16384};
    std::size_t trials = 20;
    std::optional<std::uint64_t> seed;
    double delta = 0.1;
    std::optional<double> beta;
    std::optional<double> delta1;
    double c1_star = 1.0;
    std::filesystem::path out = ".";
    bool exact_integral = false;
    Strategy strategy = Strategy::net_exhaustive;
    std::optional<double> net_epsilon;
    std::size_t net_cap = 1000000;
    bool net_include_center = true;
    GradientOptions gradient;
    std::size_t threads = 1;
};

/// Command-line values that take precedence over the file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<std::string> out;
    bool exact_integral = false;
    std::optional<std::string> strategy;
    std::optional<double> delta;
    std::optional<double> beta;
};

inline TargetSpec target_from_json(const Json& j)
{
    const std::string w = "target";
    check_keys(j, {"name", "file", "dim", "resolution", "quad_rule", "params", "order"}, w);
    TargetSpec t;
    t.file = get_or<std::string>(j, "file", "", w);
    t.name = get_or<std::string>(j, "name", t.file.empty() ? t.name : std::string(), w);
    if (!t.file.empty() && j.contains("name")) {
        fail(ErrorKind::ConfigInvalid, "target takes either name or file, not both");
    }
    t.dim = get_or<std::size_t>(j, "dim", t.dim, w);
    t.resolution = get_or<std::size_t>(j, "resolution", t.resolution, w);
    t.rule = parse_quad_rule(get_or<std::string>(j, "quad_rule", "trapezoid", w));
    if (j.contains("params")) {
        const Json& p = j.at("params");
        if (!p.is_object()) {
            fail(ErrorKind::ConfigInvalid, "target.params must be an object");
        }
        for (const auto& item : p.items()) {
            if (!item.value().is_number()) {
                fail(ErrorKind::ConfigInvalid, "target.params." + item.key() + " must be a number");
            }
            t.params[item.key()] = item.value().get<double>();
        }
    }
    t.order = get_or<std::vector<std::size_t>>(j, "order", {}, w);
    return t;
}

/// Validates the configuration file against the schema; unknown keys are
/// rejected before any computation.
inline RunConfig parse_run_config(const Json& j, Command command)
{
    const std::string w = "config";
    check_keys(j,
               {"command", "target", "hypothesis", "n", "n_grid", "trials", "seed", "delta", "beta", "delta1",
                "c1_star", "out", "exact_integral", "strategy", "net_epsilon", "net_cap", "net_include_center",
                "max_iterations", "step", "threads"},
               w);
    RunConfig c;
    c.command = command;
    if (j.contains("command") && parse_command(get_as<std::string>(j, "command", w)) != command) {
        fail(ErrorKind::ConfigInvalid, "config.command does not match the subcommand");
    }
    if (j.contains("target")) {
        c.target = target_from_json(j.at("target"));
    }
    if (j.contains("hypothesis")) {
        c.hypothesis = hypothesis_from_json(j.at("hypothesis"));
        if (!j.at("hypothesis").contains("dim")) {
            c.hypothesis.dim = c.target.dim;
        }
    } else {
        c.hypothesis.dim = c.target.dim;
    }
    c.n = get_or<std::size_t>(j, "n", c.n, w);
    c.n_grid = get_or<std::vector<std::size_t>>(j, "n_grid", c.n_grid, w);
    c.trials = get_or<std::size_t>(j, "trials", c.trials, w);
    if (j.contains("seed")) {
        c.seed = get_as<std::uint64_t>(j, "seed", w);
    }
    c.delta = get_or<double>(j, "delta", c.delta, w);
    if (j.contains("beta")) {
        c.beta = get_as<double>(j, "beta", w);
    }
    if (j.contains("delta1")) {
        c.delta1 = get_as<double>(j, "delta1", w);
    }
    c.c1_star = get_or<double>(j, "c1_star", c.c1_star, w);
    c.out = get_or<std::string>(j, "out", c.out.string(), w);
    c.exact_integral = get_or<bool>(j, "exact_integral", c.exact_integral, w);
    c.strategy = parse_strategy(get_or<std::string>(j, "strategy", "net", w));
    if (j.contains("net_epsilon")) {
        c.net_epsilon = get_as<double>(j, "net_epsilon", w);
    }
    c.net_cap = get_or<std::size_t>(j, "net_cap", c.net_cap, w);
    c.net_include_center = get_or<bool>(j, "net_include_center", c.net_include_center, w);
    c.gradient.max_iterations = get_or<std::size_t>(j, "max_iterations", c.gradient.max_iterations, w);
    c.gradient.step = get_or<double>(j, "step", c.gradient.step, w);
    c.threads = get_or<std::size_t>(j, "threads", c.threads, w);
    return c;
}

inline void apply_overrides(RunConfig& c, const Overrides& o)
{
    if (o.seed) {
        c.seed = o.seed;
    }
    if (o.threads) {
        c.threads = *o.threads;
    }
    if (o.out) {
        c.out = *o.out;
    }
    if (o.exact_integral) {
        c.exact_integral = true;
    }
    if (o.strategy) {
        c.strategy = parse_strategy(*o.strategy);
    }
    if (o.delta) {
        c.delta = *o.delta;
    }
    if (o.beta) {
        c.beta = o.beta;
    }
}

inline void validate(const RunConfig& c)
{
    if (is_stochastic(c.command) && !c.seed) {
        fail(ErrorKind::ConfigInvalid, "command '" + std::string(to_string(c.command)) + "' requires a seed");
    }
    if (c.n == 0 || c.trials == 0 || c.threads == 0) {
        fail(ErrorKind::ConfigInvalid, "n, trials and threads must be positive");
    }
    if (c.command == Command::rate && c.n_grid.empty()) {
        fail(ErrorKind::ConfigInvalid, "rate needs a nonempty n_grid");
    }
    if (!(c.delta > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "delta must be positive");
    }
    if (c.beta && !(*c.beta > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "beta must be positive");
    }
    if (c.hypothesis.dim != c.target.dim && c.command != Command::bounds) {
        fail(ErrorKind::ConfigInvalid, "hypothesis.dim differs from target.dim");
    }
}

inline GridDensity load_target(const TargetSpec& t)
{
    if (!t.file.empty()) {
        return density_from_json(parse_json(read_text(t.file), t.file));
    }
    return make_named_density(t.name, t.dim, t.resolution, t.params, t.rule);
}

/// Net of the family at the configured epsilon; the default gives five
/// lattice points per parameter with the identity among them.
inline EpsNet make_net(const GeneratorFamily& family, const RunConfig& c)
{
    const double eps = c.net_epsilon.value_or(family.half_width() * family.sup_lipschitz() / 5.0 * (1.0 + 1e-9));
    if (!(eps > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "net epsilon must be positive (degenerate family box)");
    }
    return build_eps_net(family, eps, NetOptions{c.net_cap, c.net_include_center});
}

inline HypothesisConfig scheduled(HypothesisConfig h, const RunConfig& c, double n)
{
    if (c.beta) {
        h.K = k_schedule(n, *c.beta);
    }
    return h;
}

inline BoundReport bound_report_for(const RunConfig& c, const HypothesisConfig& h, double n)
{
    BoundInputs in;
    in.d = h.dim;
    in.alpha = h.alpha;
    in.k = h.k;
    in.K = h.K;
    in.n = n;
    in.delta = c.delta;
    in.c1_star = c.c1_star;
    in.exact_integral = c.exact_integral;
    in.delta1 = c.delta1 ? *c.delta1 : certified_diameter(GeneratorFamily(h));
    return make_bound_report(in);
}

inline Json config_echo(const RunConfig& c)
{
    Json j;
    j["command"] = std::string(to_string(c.command));
    Json t;
    if (c.target.file.empty()) {
        t["name"] = c.target.name;
        t["dim"] = c.target.dim;
        t["resolution"] = c.target.resolution;
        t["quad_rule"] = std::string(to_string(c.target.rule));
        Json p = Json::object();
        for (const auto& [k, v] : c.target.params) {
            p[k] = v;
        }
        t["params"] = p;
    } else {
        t["file"] = c.target.file;
    }
    t["order"] = c.target.order;
    j["target"] = t;
    j["hypothesis"] = to_json(c.hypothesis);
    if (c.seed) {
        j["seed"] = *c.seed;
    }
    j["delta"] = c.delta;
    j["beta"] = c.beta ? Json(*c.beta) : Json(nullptr);
    j["exact_integral"] = c.exact_integral;
    j["c1_star"] = c.c1_star;
    return j;
}

/// Runs one command, writes its artifacts under `c.out`, and prints one
/// summary line per stage to `log`.
inline void run(const RunConfig& c, std::ostream& log)
{
    validate(c);
    set_thread_count(c.threads);
    const auto stage = [&](const std::string& name, const std::string& msg) {
        log << "[" << name << "] " << msg << '\n';
    };
    const std::uint64_t seed = c.seed.value_or(0);

    if (c.command == Command::bounds) {
        const double n = static_cast<double>(c.n);
        const HypothesisConfig h = scheduled(c.hypothesis, c, n);
        const BoundReport rep = bound_report_for(c, h, n);
        write_atomic(c.out / "bounds.json", to_json(rep).dump(2) + "\n");
        log << format_bound_table(rep);
        stage("bounds", "wrote bounds.json (regularity_ok=" + std::string(rep.regularity_ok ? "true" : "false") + ")");
        return;
    }

    const GridDensity target = load_target(c.target);
    stage("target", "dim=" + std::to_string(target.dim()) + " m=" + std::to_string(target.resolution()) +
                        " kappa=" + format_number(target.kappa()));

    if (c.command == Command::density) {
        Json j = to_json(target);
        write_atomic(c.out / "density.json", j.dump(2) + "\n");
        stage("density", "wrote density.json");
        return;
    }

    const TriangularMap target_generator = build_generator(target, c.target.order);

    if (c.command == Command::sample) {
        const auto pts = sample(target_generator, c.n, seed);
        write_atomic(c.out / "samples.csv", samples_csv(pts, target.dim()));
        stage("sample", "wrote samples.csv with " + std::to_string(c.n) + " rows");
        return;
    }

    if (c.command == Command::rate) {
        RateReport rep;
        rep.delta = c.delta;
        rep.regularity_ok = c.hypothesis.regularity_ok();
        Json reports = Json::array();
        std::optional<NetExperiment> shared;
        std::optional<GeneratorFamily> shared_family;
        std::optional<EpsNet> shared_net;
        const RateOptions opts{c.delta, c.exact_integral, c.c1_star};
        for (std::size_t n : c.n_grid) {
            const HypothesisConfig h = scheduled(c.hypothesis, c, static_cast<double>(n));
            if (c.beta || !shared) {
                shared.reset();
                shared_family.emplace(h);
                shared_net.emplace(make_net(*shared_family, c));
                shared.emplace(*shared_family, *shared_net, target);
                stage("net", "K=" + format_number(h.K) + " members=" + std::to_string(shared_net->size()) +
                                 " discriminators=" + std::to_string(shared->discriminator_count()) +
                                 " epsilon=" + format_number(shared_net->epsilon));
            }
            rep.K = h.K;
            rep.delta1 = certified_diameter(*shared_family);
            rep.rows.push_back(rate_row(*shared, n, c.trials, seed, opts));
            const auto& row = rep.rows.back();
            Json r;
            r["n"] = n;
            r["net_epsilon"] = shared_net->epsilon;
            r["net_size"] = shared_net->size();
            r["report"] = to_json(bound_report_for(c, h, static_cast<double>(n)));
            reports.push_back(r);
            stage("rate", "n=" + std::to_string(n) + " mean=" + format_number(row.summary.mean) +
                              " bound=" + format_number(row.bound_C_over_sqrt_n));
        }
        finish_rate_report(rep);
        Json bj;
        bj["config"] = config_echo(c);
        bj["slope"] = rep.slope ? Json(*rep.slope) : Json(nullptr);
        bj["warnings"] = rep.warnings;
        bj["reports"] = reports;
        write_atomic(c.out / "rate.csv", rate_csv(rep));
        write_atomic(c.out / "rate.svg", rate_svg(rep));
        write_atomic(c.out / "bounds.json", bj.dump(2) + "\n");
        for (const auto& w : rep.warnings) {
            stage("warning", w);
        }
        stage("rate", "wrote rate.csv, rate.svg, bounds.json; slope=" +
                          (rep.slope ? format_number(*rep.slope) : std::string("undefined")));
        return;
    }

    const GeneratorFamily family(c.hypothesis);
    const EpsNet net = make_net(family, c);
    const NetExperiment ex(family, net, target);
    stage("net", "members=" + std::to_string(net.size()) + " discriminators=" +
                     std::to_string(ex.discriminator_count()) + " epsilon=" + format_number(net.epsilon));

    if (c.command == Command::sampling_error) {
        const auto s = estimate_sampling_error(ex, c.n, c.trials, seed);
        Json j;
        j["config"] = config_echo(c);
        j["net_epsilon"] = net.epsilon;
        j["net_size"] = net.size();
        j["summary"] = to_json(s);
        write_atomic(c.out / "sampling_error.json", j.dump(2) + "\n");
        stage("sampling-error", "n=" + std::to_string(c.n) + " mean=" + format_number(s.mean) +
                                    " wrote sampling_error.json");
        return;
    }

    // fit
    const TrainingSample s = draw_training_sample(target_generator, c.n, seed);
    const MinimaxResult r = minimax_fit(ex, s, c.strategy, c.gradient);
    Json j;
    j["config"] = config_echo(c);
    j["strategy"] = c.strategy == Strategy::net_exhaustive ? "net" : "grad";
    j["net_epsilon"] = net.epsilon;
    j["net_size"] = net.size();
    j["result"] = to_json(r);
    j["generator"] = map_descriptor(family.make(r.best_generator.coefficients), &family.config());
    write_atomic(c.out / "fit.json", j.dump(2) + "\n");
    stage("fit", "value=" + format_number(r.achieved_value) + " js=" + format_number(r.js_to_target) +
                     (r.converged ? "" : " (not converged)") + " wrote fit.json");
}

/// Machine-readable error record for standard error.
inline std::string error_json(const std::string& kind, const std::string& message)
{
    Json j;
    j["error"] = kind;
    j["message"] = message;
    return j.dump();
}

} // namespace rgan

#endif // RGAN_CLI_HPP
