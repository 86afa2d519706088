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

// rgan: sample, density, fit, sampling-error, rate and bounds commands.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "rgan/cli.hpp"

namespace {

struct Args {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<std::string> out;
    bool exact_integral = false;
    std::optional<std::string> strategy;
    std::optional<double> delta;
    std::optional<double> beta;
};

void add_common(CLI::App* cmd, Args& a)
{
    cmd->add_option("--config", a.config, "JSON run configuration");
    cmd->add_option("--seed", a.seed, "RNG seed (required by stochastic commands)");
    cmd->add_option("--threads", a.threads, "worker count")->check(CLI::PositiveNumber);
    cmd->add_option("--out", a.out, "output directory");
    cmd->add_flag("--exact-integral", a.exact_integral, "include the antiderivative factors in the chaining bound");
    cmd->add_option("--strategy", a.strategy, "minimax strategy")->check(CLI::IsMember({"net", "grad"}));
    cmd->add_option("--delta", a.delta, "tail exponent delta");
    cmd->add_option("--beta", a.beta, "K = (log n)^beta schedule");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rosenblatt generators, GAN losses, sampling-error experiments and bound constants"};
    app.require_subcommand(1);
    Args args;
    for (const char* name : {"sample", "density", "fit", "sampling-error", "rate", "bounds"}) {
        add_common(app.add_subcommand(name, std::string("run the ") + name + " command"), args);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << rgan::error_json("ConfigInvalid", e.what()) << '\n';
        return 2;
    }
    try {
        const auto command = rgan::parse_command(app.get_subcommands().front()->get_name());
        rgan::Json file = rgan::Json::object();
        if (!args.config.empty()) {
            file = rgan::parse_json(rgan::read_text(args.config), args.config);
        }
        rgan::RunConfig config = rgan::parse_run_config(file, command);
        rgan::Overrides o;
        o.seed = args.seed;
        o.threads = args.threads;
        o.out = args.out;
        o.exact_integral = args.exact_integral;
        o.strategy = args.strategy;
        o.delta = args.delta;
        o.beta = args.beta;
        rgan::apply_overrides(config, o);
        rgan::run(config, std::cout);
    } catch (const rgan::Error& e) {
        std::cerr << rgan::error_json(std::string(rgan::to_string(e.kind())), e.message()) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << rgan::error_json("Internal", e.what()) << '\n';
        return 1;
    }
    return 0;
}
