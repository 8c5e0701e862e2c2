// Copyright 2026 The Symment Authors
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

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symment/commands.h"
#include "symment/errors.h"

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    return out;
}

// Accepts plain integers and scientific notation such as 1e5.
int64_t parse_count(const std::string &text) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw symment::InputError("not a number: '" + text + "'");
    }
    if (used != text.size() || v != std::floor(v) || std::abs(v) > 9e18) {
        throw symment::InputError("not an integer count: '" + text + "'");
    }
    return static_cast<int64_t>(v);
}

std::vector<int> parse_ints(const std::string &text) {
    std::vector<int> out;
    for (const auto &item : split(text, ',')) {
        out.push_back(static_cast<int>(parse_count(item)));
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Symmetrized entanglement measures and estimator simulations"};
    symment::RunConfig config;
    std::string subset;
    std::string fit_range;
    std::string budget;
    std::string budgets;
    int s = 0;
    int kmax = 0;
    int extrapolate = 0;
    std::string group;
    std::string method;

    app.add_option("command", config.command, "exact | sweep | estimate | scaling | distribution | budget")
        ->required()
        ->check(CLI::IsMember({"exact", "sweep", "estimate", "scaling", "distribution", "budget"}));
    app.add_option("--state", config.state, "ghz | ghz-theta | w | dicke | haar | product | file")
        ->check(CLI::IsMember({"ghz", "ghz-theta", "w", "dicke", "haar", "product", "file"}));
    app.add_option("--file", config.file, "state JSON for --state file");
    app.add_option("--n", config.n, "number of sites");
    app.add_option("--d", config.d, "local dimension");
    app.add_option("--theta", config.theta, "GHZ angle for ghz-theta");
    app.add_option("--e", config.e, "Dicke excitations");
    auto *subset_opt = app.add_option("--subset", subset, "comma-separated site indices");
    auto *s_opt = app.add_option("--s", s, "subset size for averaged scope");
    auto *group_opt = app.add_option("--group", group, "symmetric | cyclic | dihedral");
    auto *method_opt = app.add_option("--method", method, "swap | gbose | cyclic | simmoments");
    app.add_option("--k", config.k, "number of copies");
    auto *kmax_opt = app.add_option("--kmax", kmax, "largest k for sweeps and extrapolation");
    auto *fit_opt = app.add_option("--fit-range", fit_range, "a:b range of k for the exponent fit");
    auto *budget_opt = app.add_option("--budget", budget, "total copy budget");
    auto *budgets_opt = app.add_option("--budgets", budgets, "comma-separated copy budgets");
    app.add_option("--trials", config.trials, "Monte Carlo trials");
    app.add_option("--seed", config.seed, "base seed");
    auto *extrap_opt = app.add_option("--extrapolate", extrapolate, "Newton-Girard rank R");
    app.add_option("--alloc", config.alloc, "table | equal")->check(CLI::IsMember({"table", "equal"}));
    app.add_option("--eps", config.eps, "target additive error for budget");
    app.add_option("--delta", config.delta, "failure probability for budget");
    app.add_option("--out", config.out, "output path (stdout when absent)");
    app.add_option("--format", config.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--svg", config.svg, "optional chart path");
    budget_opt->excludes(budgets_opt);
    subset_opt->excludes(s_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*subset_opt) {
            config.subset = parse_ints(subset);
        }
        if (*s_opt) {
            config.s = s;
        }
        if (*group_opt) {
            config.group = group;
        }
        if (*method_opt) {
            config.method = method;
        }
        if (*kmax_opt) {
            config.kmax = kmax;
        }
        if (*extrap_opt) {
            config.extrapolate = extrapolate;
        }
        if (*fit_opt) {
            auto parts = split(fit_range, ':');
            if (parts.size() != 2) {
                throw symment::InputError("--fit-range expects a:b");
            }
            config.fit_range = std::make_pair(
                static_cast<int>(parse_count(parts[0])), static_cast<int>(parse_count(parts[1])));
        }
        if (*budget_opt) {
            config.budgets = {parse_count(budget)};
        }
        if (*budgets_opt) {
            for (const auto &item : split(budgets, ',')) {
                config.budgets.push_back(parse_count(item));
            }
        }
    } catch (const symment::InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return symment::execute(config, std::cout, std::cerr);
}
