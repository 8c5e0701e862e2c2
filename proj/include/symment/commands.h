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

#ifndef SYMMENT_COMMANDS_H
#define SYMMENT_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "symment/estimators.h"
#include "symment/svg.h"

namespace symment {

/// Everything a command reads. Unset optionals fall back to per-command defaults.
struct RunConfig {
    std::string command;
    std::string state = "ghz";
    std::string file;
    int n = 2;
    int d = 2;
    double theta = 0.7853981633974483;
    int e = 1;
    std::optional<std::vector<int>> subset;
    std::optional<int> s;
    std::optional<std::string> group;
    std::optional<std::string> method;
    int k = 2;
    std::optional<int> kmax;
    std::optional<std::pair<int, int>> fit_range;
    std::vector<int64_t> budgets;
    int trials = 1;
    uint64_t seed = 0;
    std::optional<int> extrapolate;
    std::string alloc = "table";
    double eps = 0.01;
    double delta = 0.05;
    std::string out;
    std::string format = "csv";
    std::string svg;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json &j);
};

/// A header plus rows of already formatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    /// Array of objects keyed by header; numeric-looking cells become numbers,
    /// empty cells null.
    nlohmann::json to_json() const;
    static Table from_csv(const std::string &text);
};

struct CommandResult {
    Table table;
    /// Extra tables written beside the main output as <out>.<name>.csv.
    std::vector<std::pair<std::string, Table>> side_tables;
    /// Written as <out>.summary.json when not null.
    nlohmann::json summary;
    std::vector<Series> plot;
    ChartOptions chart;
};

/// Shortest text that parses back to the same double.
std::string format_double(double v);

CommandResult cmd_exact(const RunConfig &config);
CommandResult cmd_sweep(const RunConfig &config);
CommandResult cmd_estimate(const RunConfig &config);
CommandResult cmd_scaling(const RunConfig &config);
CommandResult cmd_distribution(const RunConfig &config);
CommandResult cmd_budget(const RunConfig &config);

CommandResult run_command(const RunConfig &config);

/// Runs the command and writes its outputs. With `out` empty the main table
/// goes to `stdout` along with any side tables and the summary. With `out`
/// set, provenance goes to <out>.provenance.json. Returns the exit code:
/// 0 success, 2 invalid input, 3 numerical failure.
int execute(const RunConfig &config, std::ostream &stdout_stream, std::ostream &stderr_stream);

}  // namespace symment

#endif
