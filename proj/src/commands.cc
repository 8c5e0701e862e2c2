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

#include "symment/commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "symment/campaign.h"
#include "symment/combinatorics.h"
#include "symment/cyclic_test.h"
#include "symment/errors.h"
#include "symment/measures.h"

namespace symment {

namespace {

constexpr int kSweepCap = 200;
// Below this, C_k is evaluated in log space to avoid underflow.
constexpr double kUnderflowGuard = 1e-280;

std::string format_int(int64_t v) {
    return std::to_string(v);
}

std::string join_ints(const std::vector<int> &values, char sep) {
    std::string out;
    for (size_t i = 0; i < values.size(); i++) {
        if (i) {
            out += sep;
        }
        out += std::to_string(values[i]);
    }
    return out;
}

std::vector<GroupKind> selected_groups(const RunConfig &config) {
    if (config.group) {
        return {parse_group(*config.group)};
    }
    return {std::begin(kAllGroups), std::end(kAllGroups)};
}

std::vector<Method> selected_methods(const RunConfig &config) {
    if (config.method) {
        return {parse_method(*config.method)};
    }
    return {std::begin(kAllMethods), std::end(kAllMethods)};
}

AllocMode alloc_mode(const RunConfig &config) {
    if (config.alloc == "table") {
        return AllocMode::Table;
    }
    if (config.alloc == "equal") {
        return AllocMode::Equal;
    }
    throw InputError("unknown allocation mode '" + config.alloc + "'");
}

void require_k(int k) {
    if (k < 2) {
        throw InputError("k must be at least 2 (got " + std::to_string(k) + ")");
    }
}

// The analytic description of the state, when there is one.
std::optional<FamilyParams> family_of(const RunConfig &config) {
    FamilyParams p;
    p.n = config.n;
    if (config.state == "product") {
        p.family = StateFamily::Product;
        return p;
    }
    if (config.d != 2) {
        return std::nullopt;
    }
    if (config.state == "ghz") {
        p.family = StateFamily::GhzTheta;
    } else if (config.state == "ghz-theta") {
        p.family = StateFamily::GhzTheta;
        p.theta = config.theta;
    } else if (config.state == "w") {
        p.family = StateFamily::W;
    } else if (config.state == "dicke") {
        p.family = StateFamily::Dicke;
        p.excitations = config.e;
    } else {
        return std::nullopt;
    }
    return p;
}

void check_qubit_family(const RunConfig &config) {
    if (config.d != 2 && config.state != "product" && config.state != "haar" && config.state != "file") {
        throw InputError("state '" + config.state + "' is defined for qubits only (--d 2)");
    }
}

PureState build_state(const RunConfig &config, uint64_t haar_seed) {
    if (config.state == "file") {
        if (config.file.empty()) {
            throw InputError("--state file needs --file PATH");
        }
        return PureState::load(config.file);
    }
    if (config.n < 1) {
        throw InputError("n must be positive");
    }
    if (config.d < 2) {
        throw InputError("d must be at least 2");
    }
    check_qubit_family(config);
    if (config.state == "haar") {
        return make_haar_random(config.n, config.d, haar_seed);
    }
    if (config.state == "product") {
        return make_product(config.n, config.d);
    }
    auto family = family_of(config);
    if (!family) {
        throw InputError("unknown state '" + config.state + "'");
    }
    return make_family_state(*family);
}

PureState build_state(const RunConfig &config) {
    return build_state(config, config.seed);
}

void validate_subset(const std::vector<int> &subset, int n) {
    if (subset.empty()) {
        throw InputError("subset must not be empty");
    }
    if (static_cast<int>(subset.size()) >= n) {
        throw InputError("subset must be a proper subset of the sites");
    }
    std::set<int> seen;
    for (int x : subset) {
        if (x < 0 || x >= n) {
            throw InputError("subset index " + std::to_string(x) + " out of range");
        }
        if (!seen.insert(x).second) {
            throw InputError("subset index " + std::to_string(x) + " repeated");
        }
    }
}

void validate_size(int s, int n) {
    if (s < 1 || s > n - 1) {
        throw InputError("subset size must satisfy 1 <= s <= n-1");
    }
}

std::vector<std::vector<int>> target_subsets(const RunConfig &config, int n) {
    if (config.subset && config.s) {
        throw InputError("pass either --subset or --s, not both");
    }
    if (config.subset) {
        validate_subset(*config.subset, n);
        return {*config.subset};
    }
    if (config.s) {
        validate_size(*config.s, n);
        return subsets_of_size(n, *config.s);
    }
    throw InputError("this command needs --subset or --s");
}

// Spectra over which C_k is averaged (or maximised, for GME).
struct SpectraScope {
    std::string label;
    std::vector<Spectrum> spectra;
    bool take_max = false;
    int d = 2;
    int s = 1;

    double acceptance(GroupKind group, int k) const {
        double best = 0;
        double total = 0;
        for (const auto &spectrum : spectra) {
            double c = accept(spectrum, group, k);
            if (c < kUnderflowGuard) {
                c = std::exp(log_accept(spectrum, group, k));
            }
            best = std::max(best, c);
            total += c;
        }
        return take_max ? best : total / static_cast<double>(spectra.size());
    }
};

Spectrum cut_spectrum(const PureState &state, const std::vector<int> &subset) {
    int n = state.num_sites();
    if (2 * static_cast<int>(subset.size()) <= n) {
        return reduced_spectrum(state, subset);
    }
    std::vector<bool> in(n, false);
    for (int x : subset) {
        in[x] = true;
    }
    std::vector<int> rest;
    for (int x = 0; x < n; x++) {
        if (!in[x]) {
            rest.push_back(x);
        }
    }
    return reduced_spectrum(state, rest);
}

SpectraScope scope_of(const RunConfig &config) {
    SpectraScope scope;
    auto family = family_of(config);
    bool analytic = family.has_value() && config.state != "file" && config.state != "haar";
    int n = config.n;
    std::optional<PureState> state;
    if (!analytic) {
        state = build_state(config);
        n = state->num_sites();
        scope.d = state->local_dim();
    } else {
        if (n < 2) {
            throw InputError("n must be at least 2");
        }
        check_qubit_family(config);
        scope.d = config.d;
    }
    if (config.subset && config.s) {
        throw InputError("pass either --subset or --s, not both");
    }
    if (config.subset) {
        validate_subset(*config.subset, n);
        int size = static_cast<int>(config.subset->size());
        scope.label = "S=" + join_ints(*config.subset, ';');
        scope.s = std::min(size, n - size);
        // Permutation-symmetric families depend on the subset only through its size.
        scope.spectra.push_back(analytic ? analytic_spectrum(*family, size) : cut_spectrum(*state, *config.subset));
        return scope;
    }
    if (config.s) {
        validate_size(*config.s, n);
        scope.label = "s=" + std::to_string(*config.s);
        scope.s = std::min(*config.s, n - *config.s);
        if (analytic) {
            scope.spectra.push_back(analytic_spectrum(*family, *config.s));
        } else {
            for (const auto &subset : subsets_of_size(n, *config.s)) {
                scope.spectra.push_back(cut_spectrum(*state, subset));
            }
        }
        return scope;
    }
    if (n > kGmeSiteCap) {
        throw InputError("GME scope is limited to " + std::to_string(kGmeSiteCap) + " sites");
    }
    scope.label = "gme";
    scope.take_max = true;
    scope.s = 1;
    if (analytic) {
        for (int size = 1; size <= n / 2; size++) {
            scope.spectra.push_back(analytic_spectrum(*family, size));
        }
        return scope;
    }
    for (int size = 1; size <= n - 1; size++) {
        for (const auto &rest : subsets_of_size(n - 1, size - 1)) {
            std::vector<int> subset{0};
            for (int x : rest) {
                subset.push_back(x + 1);
            }
            scope.spectra.push_back(cut_spectrum(*state, subset));
        }
    }
    return scope;
}

std::vector<int64_t> checked_budgets(const RunConfig &config) {
    if (config.budgets.empty()) {
        throw InputError("this command needs --budget or --budgets");
    }
    for (auto b : config.budgets) {
        if (b <= 0) {
            throw InputError("budgets must be positive");
        }
    }
    return config.budgets;
}

nlohmann::json fit_json(const std::optional<ExponentFit> &fit, double stderr_slope) {
    nlohmann::json j;
    if (!fit) {
        j["slope"] = nullptr;
        j["intercept"] = nullptr;
        j["residual"] = nullptr;
        j["n_points"] = nullptr;
        j["stderr"] = nullptr;
        j["band"] = nullptr;
        return j;
    }
    j["slope"] = fit->slope;
    j["intercept"] = fit->intercept;
    j["residual"] = fit->residual;
    j["n_points"] = fit->points;
    j["stderr"] = stderr_slope;
    j["band"] = {fit->slope - 1.96 * stderr_slope, fit->slope + 1.96 * stderr_slope};
    return j;
}

std::vector<std::string> fit_row(Method method, const std::optional<ExponentFit> &fit) {
    if (!fit) {
        return {std::string(method_name(method)), "", "", "", ""};
    }
    return {
        std::string(method_name(method)),
        format_double(fit->slope),
        format_double(fit->intercept),
        format_double(fit->residual),
        format_int(fit->points)};
}

bool looks_numeric(const std::string &cell, double &value) {
    if (cell.empty()) {
        return false;
    }
    const char *end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    return ec == std::errc() && ptr == end;
}

std::string z_label(const std::vector<int> &z, int k) {
    if (k <= 10) {
        std::string out;
        for (int v : z) {
            out += static_cast<char>('0' + v);
        }
        return out;
    }
    return join_ints(z, '.');
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InputError("cannot write " + path);
    }
    file << text;
}

std::string render(const Table &table, const std::string &format) {
    if (format == "json") {
        return table.to_json().dump(2) + "\n";
    }
    return table.to_csv();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["state"] = state;
    j["file"] = file;
    j["n"] = n;
    j["d"] = d;
    j["theta"] = theta;
    j["e"] = e;
    j["subset"] = subset ? nlohmann::json(*subset) : nlohmann::json(nullptr);
    j["s"] = s ? nlohmann::json(*s) : nlohmann::json(nullptr);
    j["group"] = group ? nlohmann::json(*group) : nlohmann::json(nullptr);
    j["method"] = method ? nlohmann::json(*method) : nlohmann::json(nullptr);
    j["k"] = k;
    j["kmax"] = kmax ? nlohmann::json(*kmax) : nlohmann::json(nullptr);
    j["fit_range"] = fit_range ? nlohmann::json({fit_range->first, fit_range->second}) : nlohmann::json(nullptr);
    j["budgets"] = budgets;
    j["trials"] = trials;
    j["seed"] = seed;
    j["extrapolate"] = extrapolate ? nlohmann::json(*extrapolate) : nlohmann::json(nullptr);
    j["alloc"] = alloc;
    j["eps"] = eps;
    j["delta"] = delta;
    j["out"] = out;
    j["format"] = format;
    j["svg"] = svg;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json &j) {
    RunConfig c;
    try {
        c.command = j.at("command").get<std::string>();
        c.state = j.at("state").get<std::string>();
        c.file = j.at("file").get<std::string>();
        c.n = j.at("n").get<int>();
        c.d = j.at("d").get<int>();
        c.theta = j.at("theta").get<double>();
        c.e = j.at("e").get<int>();
        if (!j.at("subset").is_null()) {
            c.subset = j.at("subset").get<std::vector<int>>();
        }
        if (!j.at("s").is_null()) {
            c.s = j.at("s").get<int>();
        }
        if (!j.at("group").is_null()) {
            c.group = j.at("group").get<std::string>();
        }
        if (!j.at("method").is_null()) {
            c.method = j.at("method").get<std::string>();
        }
        c.k = j.at("k").get<int>();
        if (!j.at("kmax").is_null()) {
            c.kmax = j.at("kmax").get<int>();
        }
        if (!j.at("fit_range").is_null()) {
            auto r = j.at("fit_range").get<std::vector<int>>();
            if (r.size() != 2) {
                throw InputError("fit_range needs two entries");
            }
            c.fit_range = std::make_pair(r[0], r[1]);
        }
        c.budgets = j.at("budgets").get<std::vector<int64_t>>();
        c.trials = j.at("trials").get<int>();
        c.seed = j.at("seed").get<uint64_t>();
        if (!j.at("extrapolate").is_null()) {
            c.extrapolate = j.at("extrapolate").get<int>();
        }
        c.alloc = j.at("alloc").get<std::string>();
        c.eps = j.at("eps").get<double>();
        c.delta = j.at("delta").get<double>();
        c.out = j.at("out").get<std::string>();
        c.format = j.at("format").get<std::string>();
        c.svg = j.at("svg").get<std::string>();
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed run config: ") + e.what());
    }
    return c;
}

std::string Table::to_csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            if (i) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto &row : rows) {
        line(row);
    }
    return out;
}

nlohmann::json Table::to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto &row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (size_t i = 0; i < header.size() && i < row.size(); i++) {
            double v = 0;
            if (row[i].empty()) {
                obj[header[i]] = nullptr;
            } else if (looks_numeric(row[i], v) && header[i] != "z" && header[i] != "scope") {
                obj[header[i]] = v;
            } else {
                obj[header[i]] = row[i];
            }
        }
        arr.push_back(obj);
    }
    return arr;
}

Table Table::from_csv(const std::string &text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size()) {
                throw InputError("CSV row width does not match the header");
            }
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) {
        throw InputError("CSV text has no header");
    }
    return table;
}

CommandResult cmd_exact(const RunConfig &config) {
    require_k(config.k);
    CommandResult result;
    result.table.header = {"k", "group", "scope", "C", "E", "bound"};
    auto groups = selected_groups(config);
    auto family = family_of(config);
    bool analytic = family.has_value() && config.state != "file" && config.state != "haar";
    std::optional<PureState> state;
    if (!analytic || (!config.s && !config.subset)) {
        state = build_state(config);
    } else {
        check_qubit_family(config);
    }
    for (auto group : groups) {
        MeasureReport report;
        if (config.subset && config.s) {
            throw InputError("pass either --subset or --s, not both");
        }
        if (config.subset) {
            if (state) {
                report = entanglement_bipartite(*state, group, config.k, *config.subset);
            } else {
                validate_subset(*config.subset, config.n);
                int size = static_cast<int>(config.subset->size());
                report = entanglement_bipartite(
                    analytic_spectrum(*family, size), group, config.k, config.d, std::min(size, config.n - size));
                report.subset = *config.subset;
            }
        } else if (config.s) {
            report = state ? entanglement_averaged(*state, group, config.k, *config.s)
                           : entanglement_averaged(*family, group, config.k, *config.s);
        } else {
            report = entanglement_gme(*state, group, config.k);
        }
        result.table.rows.push_back(
            {format_int(config.k),
             std::string(group_name(group)),
             report.scope_label(),
             format_double(report.acceptance),
             format_double(report.entanglement),
             format_double(report.bound_max_entanglement)});
    }
    return result;
}

CommandResult cmd_sweep(const RunConfig &config) {
    int kmax = config.kmax.value_or(50);
    if (kmax < 2 || kmax > kSweepCap) {
        throw InputError("kmax must satisfy 2 <= kmax <= " + std::to_string(kSweepCap));
    }
    auto groups = selected_groups(config);
    SpectraScope scope = scope_of(config);
    CommandResult result;
    result.table.header = {"k", "group", "scope", "C", "E"};
    std::vector<std::vector<std::pair<int, double>>> curves(groups.size());
    for (int k = 2; k <= kmax; k++) {
        for (size_t g = 0; g < groups.size(); g++) {
            double c = scope.acceptance(groups[g], k);
            curves[g].emplace_back(k, c);
            result.table.rows.push_back(
                {format_int(k), std::string(group_name(groups[g])), scope.label, format_double(c),
                 format_double(1 - c)});
        }
    }
    nlohmann::json summary;
    summary["scope"] = scope.label;
    auto fits = nlohmann::json::array();
    for (size_t g = 0; g < groups.size(); g++) {
        nlohmann::json entry;
        entry["group"] = group_name(groups[g]);
        const auto &curve = curves[g];
        double last = curve.back().second;
        double prev = curve[curve.size() - 2].second;
        entry["ratio_last"] = curve.size() >= 2 && prev > 0 ? nlohmann::json(last / prev) : nlohmann::json(nullptr);
        if (config.fit_range) {
            auto [lo, hi] = *config.fit_range;
            if (lo < 2 || hi > kmax || hi - lo < 1) {
                throw InputError("fit range must lie within 2..kmax and span at least two orders");
            }
            auto fit = fit_exponent(curve, lo, hi);
            entry["slope"] = fit.slope;
            entry["intercept"] = fit.intercept;
            entry["residual"] = fit.residual;
            entry["n_points"] = fit.points;
        }
        fits.push_back(entry);
        result.plot.push_back({std::string(group_name(groups[g])), {}});
        for (auto [k, c] : curve) {
            result.plot.back().points.emplace_back(k, c);
        }
    }
    summary["groups"] = fits;
    result.summary = summary;
    result.chart = {"C_k versus k (" + scope.label + ")", "k", "C_k", false, true};
    return result;
}

CommandResult cmd_estimate(const RunConfig &config) {
    require_k(config.k);
    if (config.trials < 1) {
        throw InputError("trials must be at least 1");
    }
    auto budgets = checked_budgets(config);
    auto methods = selected_methods(config);
    GroupKind group = parse_group(config.group.value_or("symmetric"));
    AllocMode alloc = alloc_mode(config);
    int kmax = config.kmax.value_or(config.k);
    if (kmax < config.k) {
        throw InputError("kmax must be at least k");
    }
    if (kmax > config.k && !config.extrapolate) {
        throw InputError("targets beyond k need --extrapolate R");
    }
    if (config.extrapolate && (*config.extrapolate < 1 || *config.extrapolate > config.k)) {
        throw InputError("extrapolation rank must satisfy 1 <= R <= k");
    }
    if (config.method && config.extrapolate && kmax > config.k && methods.front() == Method::GBose) {
        throw InputError("the symmetry test measures C_k directly and cannot extrapolate");
    }

    PureState state = build_state(config);
    EstimationContext ctx(state, target_subsets(config, state.num_sites()));
    CommandResult result;
    result.table.header = {"trial", "method", "group", "k", "n_tot", "c_hat", "c_exact", "abs_err", "log_err"};

    // Sum of abs errors per (method, target k, budget) for the summary.
    std::map<std::tuple<int, int, int64_t>, double> err_sum;
    for (int t = 0; t < config.trials; t++) {
        for (auto method : methods) {
            for (size_t bi = 0; bi < budgets.size(); bi++) {
                uint64_t seed = trial_seed(config.seed, t, static_cast<int>(method), static_cast<int>(bi));
                for (int target = config.k; target <= kmax; target++) {
                    if (target > config.k && method == Method::GBose) {
                        continue;
                    }
                    EstimationTask task;
                    task.method = method;
                    task.group = group;
                    task.k = target;
                    task.measure_k = config.k;
                    task.n_tot = budgets[bi];
                    task.alloc = alloc;
                    if (target > config.k) {
                        task.extrapolate_from = config.extrapolate;
                    }
                    auto report = ctx.run(task, seed);
                    err_sum[{static_cast<int>(method), target, budgets[bi]}] += report.abs_err;
                    result.table.rows.push_back(
                        {format_int(t),
                         std::string(method_name(method)),
                         std::string(group_name(group)),
                         format_int(target),
                         format_int(budgets[bi]),
                         format_double(report.c_hat),
                         format_double(report.c_exact),
                         format_double(report.abs_err),
                         report.log_err ? format_double(*report.log_err) : ""});
                }
            }
        }
    }
    auto rows = nlohmann::json::array();
    std::map<int, Series> by_method;
    for (const auto &[key, total] : err_sum) {
        auto [m, target, budget] = key;
        double mean = total / config.trials;
        rows.push_back(
            {{"method", method_name(static_cast<Method>(m))},
             {"k", target},
             {"n_tot", budget},
             {"mean_abs_err", mean}});
        if (target == config.k) {
            auto &series = by_method[m];
            series.name = std::string(method_name(static_cast<Method>(m)));
            series.points.emplace_back(static_cast<double>(budget), mean);
        }
    }
    result.summary = {{"trials", config.trials}, {"mean_errors", rows}};
    for (auto &[m, series] : by_method) {
        std::sort(series.points.begin(), series.points.end());
        result.plot.push_back(series);
    }
    result.chart = {"mean absolute error at k=" + std::to_string(config.k), "copies", "mean |error|", true, true};
    return result;
}

CommandResult cmd_scaling(const RunConfig &config) {
    require_k(config.k);
    if (config.trials < 1) {
        throw InputError("trials must be at least 1");
    }
    ScalingConfig sc;
    sc.methods = selected_methods(config);
    sc.budgets = checked_budgets(config);
    sc.group = parse_group(config.group.value_or("symmetric"));
    sc.k = config.k;
    sc.alloc = alloc_mode(config);
    sc.trials = config.trials;
    sc.seed = config.seed;

    // Haar trials each draw a fresh state from derive_seed(seed, t); other
    // states are fixed and only the sampling varies.
    PureState first = build_state(config, derive_seed(config.seed, 0));
    auto subsets = target_subsets(config, first.num_sites());
    std::function<PureState(int)> make_state = [&](int t) {
        if (config.state == "haar") {
            return build_state(config, derive_seed(config.seed, static_cast<uint64_t>(t)));
        }
        return first;
    };
    auto scaling = run_scaling(sc, make_state, subsets);

    CommandResult result;
    result.table.header = {"method", "n_tot", "trials", "mean_abs_err", "mean_log_err", "log_excluded"};
    Table abs_summary;
    abs_summary.header = {"method", "slope", "intercept", "residual", "n_points"};
    Table log_summary = abs_summary;
    auto methods_json = nlohmann::json::array();
    for (const auto &ms : scaling) {
        Series abs_series{std::string(method_name(ms.method)) + " abs", {}};
        Series log_series{std::string(method_name(ms.method)) + " log", {}};
        for (const auto &row : ms.stats.rows) {
            result.table.rows.push_back(
                {std::string(method_name(ms.method)),
                 format_int(row.n_tot),
                 format_int(row.trials),
                 format_double(row.mean_abs_err),
                 format_double(row.mean_log_err),
                 format_int(row.log_excluded)});
            abs_series.points.emplace_back(static_cast<double>(row.n_tot), row.mean_abs_err);
            log_series.points.emplace_back(static_cast<double>(row.n_tot), row.mean_log_err);
        }
        abs_summary.rows.push_back(fit_row(ms.method, ms.stats.abs_fit));
        log_summary.rows.push_back(fit_row(ms.method, ms.stats.log_fit));
        methods_json.push_back(
            {{"method", method_name(ms.method)},
             {"abs", fit_json(ms.stats.abs_fit, ms.stats.abs_slope_stderr)},
             {"log", fit_json(ms.stats.log_fit, ms.stats.log_slope_stderr)}});
        result.plot.push_back(abs_series);
        result.plot.push_back(log_series);
    }
    result.side_tables.emplace_back("summary", abs_summary);
    result.side_tables.emplace_back("log_summary", log_summary);
    result.summary = {
        {"group", group_name(sc.group)},
        {"k", sc.k},
        {"trials", sc.trials},
        {"band_level", 0.95},
        {"methods", methods_json}};
    result.chart = {"error scaling", "total copies", "mean error", true, true};
    return result;
}

CommandResult cmd_distribution(const RunConfig &config) {
    require_k(config.k);
    PureState state = build_state(config);
    auto dist = joint_distribution(state, config.k);
    CommandResult result;
    result.table.header = {"z", "p"};
    for (uint64_t i = 0; i < dist.probs.size(); i++) {
        result.table.rows.push_back({z_label(dist.outcome(i), config.k), format_double(dist.probs[i])});
    }
    Table marginals;
    marginals.header = {"subset", "marginal", "exact", "residual"};
    int n = state.num_sites();
    double worst = 0;
    for (int size = 1; size <= n - 1; size++) {
        for (const auto &subset : subsets_of_size(n, size)) {
            double m = dist.marginal(subset);
            double exact = accept(cut_spectrum(state, subset), GroupKind::Cyclic, config.k);
            worst = std::max(worst, std::abs(m - exact));
            marginals.rows.push_back(
                {join_ints(subset, ';'), format_double(m), format_double(exact), format_double(m - exact)});
        }
    }
    result.side_tables.emplace_back("marginals", marginals);
    double total = 0;
    for (double p : dist.probs) {
        total += p;
    }
    result.summary = {{"k", config.k}, {"n", n}, {"total", total}, {"max_marginal_residual", worst}};
    return result;
}

CommandResult cmd_budget(const RunConfig &config) {
    require_k(config.k);
    if (!(config.eps > 0) || config.eps >= 1) {
        throw InputError("eps must lie in (0, 1)");
    }
    if (config.budgets.size() > 1) {
        throw InputError("budget planning takes a single --budget");
    }
    AllocMode alloc = alloc_mode(config);
    CommandResult result;
    result.table.header = {
        "method", "group", "k", "order", "eps_order", "min_executions", "min_copies", "plan_n_tot", "plan_executions"};
    auto summary = nlohmann::json::array();
    for (auto method : selected_methods(config)) {
        for (auto group : selected_groups(config)) {
            auto report = hoeffding_budget(group, method, config.k, config.eps, config.delta);
            int64_t plan_budget = config.budgets.empty() ? report.copies : config.budgets.front();
            auto plan = allocate(group, method, config.k, plan_budget, alloc);
            std::set<int> orders;
            for (const auto &[order, count] : report.order_executions) {
                orders.insert(order);
            }
            for (const auto &[order, count] : plan.counts) {
                orders.insert(order);
            }
            for (int order : orders) {
                auto eps_it = report.order_eps.find(order);
                auto min_it = report.order_executions.find(order);
                result.table.rows.push_back(
                    {std::string(method_name(method)),
                     std::string(group_name(group)),
                     format_int(config.k),
                     format_int(order),
                     eps_it == report.order_eps.end() ? "" : format_double(eps_it->second),
                     min_it == report.order_executions.end() ? "0" : format_int(min_it->second),
                     format_int(report.copies),
                     format_int(plan_budget),
                     format_int(plan.executions(order))});
            }
            summary.push_back(
                {{"method", method_name(method)},
                 {"group", group_name(group)},
                 {"copies", report.copies},
                 {"copies_bound", report.copies_bound},
                 {"plan_copies", plan.total_copies()}});
        }
    }
    result.summary = {{"eps", config.eps}, {"delta", config.delta}, {"k", config.k}, {"budgets", summary}};
    return result;
}

CommandResult run_command(const RunConfig &config) {
    if (config.format != "csv" && config.format != "json") {
        throw InputError("format must be csv or json");
    }
    if (config.command == "exact") {
        return cmd_exact(config);
    }
    if (config.command == "sweep") {
        return cmd_sweep(config);
    }
    if (config.command == "estimate") {
        return cmd_estimate(config);
    }
    if (config.command == "scaling") {
        return cmd_scaling(config);
    }
    if (config.command == "distribution") {
        return cmd_distribution(config);
    }
    if (config.command == "budget") {
        return cmd_budget(config);
    }
    throw InputError("unknown command '" + config.command + "'");
}

int execute(const RunConfig &config, std::ostream &stdout_stream, std::ostream &stderr_stream) {
    try {
        CommandResult result = run_command(config);
        std::string ext = config.format == "json" ? ".json" : ".csv";
        if (config.out.empty()) {
            stdout_stream << render(result.table, config.format);
            for (const auto &[name, table] : result.side_tables) {
                stdout_stream << "\n# " << name << "\n" << render(table, config.format);
            }
            if (!result.summary.is_null()) {
                stdout_stream << "\n# summary\n" << result.summary.dump(2) << "\n";
            }
        } else {
            write_file(config.out, render(result.table, config.format));
            for (const auto &[name, table] : result.side_tables) {
                write_file(config.out + "." + name + ext, render(table, config.format));
            }
            if (!result.summary.is_null()) {
                write_file(config.out + ".summary.json", result.summary.dump(2) + "\n");
            }
            write_file(config.out + ".provenance.json", config.to_json().dump(2) + "\n");
        }
        if (!config.svg.empty()) {
            if (result.plot.empty()) {
                stderr_stream << "note: " << config.command << " has no chart; --svg ignored\n";
            } else {
                emit_svg(result.plot, result.chart, config.svg);
            }
        }
        return 0;
    } catch (const InputError &e) {
        stderr_stream << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError &e) {
        stderr_stream << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace symment
