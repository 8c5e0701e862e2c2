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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "symment/commands.h"
#include "symment/errors.h"

namespace symment {
namespace {

RunConfig base(const std::string &command) {
    RunConfig c;
    c.command = command;
    return c;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Commands, ExactExample) {
    auto c = base("exact");
    c.n = 4;
    c.k = 4;
    c.s = 2;
    c.group = "symmetric";
    auto r = cmd_exact(c);
    ASSERT_EQ(r.table.rows.size(), 1u);
    EXPECT_EQ(r.table.rows[0][3], "0.3125");
    EXPECT_EQ(r.table.rows[0][4], "0.6875");
}

TEST(Commands, ExactRejectsOneCopy) {
    auto c = base("exact");
    c.n = 3;
    c.k = 1;
    c.s = 1;
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(execute(c, out, err), 2);
}

TEST(Commands, SweepMatchesClosedForm) {
    auto c = base("sweep");
    c.n = 3;
    c.s = 1;
    c.group = "symmetric";
    c.kmax = 50;
    auto r = cmd_sweep(c);
    ASSERT_EQ(r.table.header, (std::vector<std::string>{"k", "group", "scope", "C", "E"}));
    for (const auto &row : r.table.rows) {
        int k = std::stoi(row[0]);
        double expected = (k + 1) / std::pow(2.0, k);
        EXPECT_LE(std::abs(std::stod(row[3]) - expected), 1e-12 * expected);
    }
}

TEST(Commands, SweepChainHoldsRowWise) {
    auto c = base("sweep");
    c.state = "haar";
    c.n = 4;
    c.seed = 3;
    c.subset = std::vector<int>{0, 2};
    c.kmax = 12;
    auto r = cmd_sweep(c);
    for (size_t i = 0; i + 2 < r.table.rows.size(); i += 3) {
        double s = std::stod(r.table.rows[i][3]);
        double cy = std::stod(r.table.rows[i + 1][3]);
        double d = std::stod(r.table.rows[i + 2][3]);
        EXPECT_LE(s, d + 1e-12);
        EXPECT_LE(d, cy + 1e-12);
    }
}

TEST(Commands, SweepFitsExponent) {
    auto c = base("sweep");
    c.state = "ghz-theta";
    c.theta = 0.39269908169872414;
    c.n = 2;
    c.subset = std::vector<int>{0};
    c.group = "symmetric";
    c.kmax = 20;
    c.fit_range = std::make_pair(10, 20);
    auto r = cmd_sweep(c);
    EXPECT_NEAR(r.summary["groups"][0]["slope"].get<double>(), -0.1583, 5e-3);
}

TEST(Commands, EstimateIsReproducible) {
    auto c = base("estimate");
    c.n = 4;
    c.k = 4;
    c.s = 2;
    c.budgets = {100000};
    c.trials = 5;
    c.seed = 42;
    auto a = cmd_estimate(c).table.to_csv();
    auto b = cmd_estimate(c).table.to_csv();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')), "trial,method,group,k,n_tot,c_hat,c_exact,abs_err,log_err");
    c.trials = 0;
    EXPECT_THROW(cmd_estimate(c), InputError);
}

TEST(Commands, EstimateGBoseAccuracy) {
    auto c = base("estimate");
    c.n = 4;
    c.k = 4;
    c.s = 2;
    c.method = "gbose";
    c.budgets = {100000};
    c.trials = 100;
    auto r = cmd_estimate(c);
    double total = 0;
    for (const auto &row : r.table.rows) {
        total += std::stod(row[7]);
    }
    EXPECT_LT(total / static_cast<double>(r.table.rows.size()), 5e-3);
}

TEST(Commands, EstimateExtrapolatesRows) {
    auto c = base("estimate");
    c.n = 4;
    c.k = 4;
    c.subset = std::vector<int>{0, 1};
    c.method = "swap";
    c.budgets = {100000};
    c.kmax = 8;
    c.extrapolate = 4;
    auto r = cmd_estimate(c);
    ASSERT_EQ(r.table.rows.size(), 5u);
    EXPECT_EQ(r.table.rows.back()[3], "8");
    c.method = "gbose";
    EXPECT_THROW(cmd_estimate(c), InputError);
}

TEST(Commands, ScalingSingleBudgetHasNullSlope) {
    auto c = base("scaling");
    c.state = "haar";
    c.n = 3;
    c.k = 3;
    c.s = 1;
    c.method = "gbose";
    c.budgets = {1000};
    c.trials = 3;
    auto r = cmd_scaling(c);
    EXPECT_TRUE(r.summary["methods"][0]["abs"]["slope"].is_null());
    ASSERT_EQ(r.side_tables.size(), 2u);
    EXPECT_EQ(r.side_tables[0].second.header, (std::vector<std::string>{"method", "slope", "intercept", "residual", "n_points"}));
    EXPECT_EQ(r.side_tables[0].second.rows[0][1], "");
}

TEST(Commands, DistributionBell) {
    auto c = base("distribution");
    c.n = 2;
    c.k = 2;
    auto r = cmd_distribution(c);
    std::vector<std::vector<std::string>> expected = {{"00", "0.75"}, {"01", "0"}, {"10", "0"}, {"11", "0.25"}};
    ASSERT_EQ(r.table.rows.size(), 4u);
    for (size_t i = 0; i < 4; i++) {
        EXPECT_EQ(r.table.rows[i][0], expected[i][0]);
        EXPECT_NEAR(std::stod(r.table.rows[i][1]), std::stod(expected[i][1]), 1e-12);
    }
    c.state = "product";
    c.n = 3;
    auto p = cmd_distribution(c);
    int nonzero = 0;
    for (const auto &row : p.table.rows) {
        if (std::stod(row[1]) > 1e-12) {
            nonzero++;
            EXPECT_EQ(row[0], "000");
            EXPECT_NEAR(std::stod(row[1]), 1.0, 1e-12);
        }
    }
    EXPECT_EQ(nonzero, 1);
    c.n = 12;
    c.k = 4;
    EXPECT_THROW(cmd_distribution(c), InputError);
}

TEST(Commands, BudgetExamples) {
    auto c = base("budget");
    c.k = 4;
    c.method = "gbose";
    c.group = "symmetric";
    auto r = cmd_budget(c);
    EXPECT_EQ(r.table.rows[0][6], "73780");
    c.eps = 0;
    EXPECT_THROW(cmd_budget(c), InputError);
}

TEST(Commands, ProvenanceRoundTrip) {
    auto c = base("exact");
    c.n = 3;
    c.k = 3;
    c.subset = std::vector<int>{0, 2};
    c.out = ::testing::TempDir() + "exact_out.csv";
    std::ostringstream out;
    std::ostringstream err;
    ASSERT_EQ(execute(c, out, err), 0) << err.str();
    auto prov = nlohmann::json::parse(read_file(c.out + ".provenance.json"));
    auto back = RunConfig::from_json(prov);
    EXPECT_EQ(back.to_json(), c.to_json());
    auto table = Table::from_csv(read_file(c.out));
    EXPECT_EQ(table.to_csv(), read_file(c.out));
    std::remove(c.out.c_str());
    std::remove((c.out + ".provenance.json").c_str());
}

TEST(Commands, JsonFormatAndSvg) {
    auto c = base("sweep");
    c.n = 3;
    c.s = 1;
    c.kmax = 6;
    c.format = "json";
    c.svg = ::testing::TempDir() + "sweep.svg";
    std::ostringstream out;
    std::ostringstream err;
    ASSERT_EQ(execute(c, out, err), 0) << err.str();
    auto text = out.str();
    auto rows = nlohmann::json::parse(text.substr(0, text.find("\n# summary")));
    EXPECT_EQ(rows.size(), 15u);
    auto svg = read_file(c.svg);
    EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos);
    std::remove(c.svg.c_str());
}

}  // namespace
}  // namespace symment
