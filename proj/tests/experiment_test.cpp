// Copyright 2026 The qperm Authors
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

#include "qperm/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

using namespace qperm;

namespace {

std::string write_temp(const std::string &name, const std::string &body) {
    const auto path = std::filesystem::temp_directory_path() / ("qperm_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

size_t count_lines(const std::string &s) { return static_cast<size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(experiment, bv_known_multipliers) {
    ExperimentConfig c;
    c.command = "bv";
    c.p = 5;
    c.m = 2;
    c.multipliers = std::vector<uint64_t>{2, 4};
    const auto rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_EQ(rec.result["y"], json::parse("[1, 2]"));
    EXPECT_EQ(rec.result["oracle_uses"], 1);
    EXPECT_EQ(rec.result["classical_oracle_uses"], 2);
    EXPECT_NEAR(rec.result["peak_probability"].get<double>(), 1.0, 1e-9);

    c.multipliers = std::vector<uint64_t>{2};
    EXPECT_THROW(run(c), InvalidArgument);
    c.multipliers.reset();
    c.p = 9;
    EXPECT_THROW(run(c), InvalidArgument);
}

TEST(experiment, fixed_point_small) {
    ExperimentConfig c;
    c.command = "fixed-point";
    c.n = 4;
    c.perm = "random:7";
    c.t = 1;
    const auto rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_EQ(rec.result["iterations"], 1);
    EXPECT_NEAR(rec.result["success_probability"].get<double>(), 1.0, 1e-12);
}

TEST(experiment, fixed_point_from_file) {
    ExperimentConfig c;
    c.command = "fixed-point";
    c.perm = write_temp("perm.txt", "1 2 0 3 5 4\n");
    auto rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_EQ(rec.result["element"], 3);

    c.perm = write_temp("bad_perm.txt", "1 2 2 0\n");
    EXPECT_THROW(run(c), ParseError);
    c.perm = write_temp("word_perm.txt", "one two\n");
    EXPECT_THROW(run(c), ParseError);
    c.perm = "/nonexistent/perm.txt";
    EXPECT_THROW(run(c), ParseError);
}

TEST(experiment, runs_are_deterministic) {
    for (const char *cmd : {"bv", "fixed-point", "program-search", "conjugacy"}) {
        ExperimentConfig c;
        c.command = cmd;
        c.seed = 42;
        c.n = 12;
        c.group = "builtin:D4";
        c.g1 = 1;
        c.g2 = 3;
        const auto a = run(c).to_json().dump();
        const auto b = run(c).to_json().dump();
        EXPECT_EQ(a, b) << cmd;
        EXPECT_EQ(a.find("duration_ms"), std::string::npos);
        EXPECT_NE(run(c, nullptr, true).to_json().dump().find("duration_ms"), std::string::npos);
    }
}

TEST(experiment, record_round_trip) {
    ExperimentConfig c;
    c.command = "program-search";
    c.seed = 3;
    c.bank_size = 8;
    c.n = 6;
    const auto rec = run(c, nullptr, true);
    const auto back = RunRecord::from_json(json::parse(rec.to_json().dump()));
    EXPECT_EQ(back, rec);
    EXPECT_EQ(back.schema_version, kSchemaVersion);
    EXPECT_TRUE(back.duration_ms.has_value());
    EXPECT_EQ(back.result["M"], 8);
}

TEST(experiment, program_search_bank_file) {
    ExperimentConfig c;
    c.command = "program-search";
    c.bank = write_temp("bank.txt", "1 0 2 3\n0 1 3 2\n3 2 1 0\n2 3 0 1\n");
    c.target = "0:3";
    auto rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_EQ(rec.result["measured_j"], 2);

    c.target = "0:3,1:2";
    rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_EQ(rec.result["arity"], 2);

    c.target = "0-3";
    EXPECT_THROW(run(c), InvalidArgument);
    c.target.reset();
    EXPECT_THROW(run(c), InvalidArgument);
}

TEST(experiment, conjugacy) {
    ExperimentConfig c;
    c.command = "conjugacy";
    c.group = "builtin:S3";
    c.g1 = 1;
    c.g2 = 2;
    auto rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_FALSE(rec.result["conjugator"].is_null());

    c.g2 = 3;  // a 3-cycle is not conjugate to a transposition
    rec = run(c);
    EXPECT_TRUE(rec.verified);
    EXPECT_TRUE(rec.result["conjugator"].is_null());

    c.g1 = 6;
    EXPECT_THROW(run(c), InvalidArgument);
}

TEST(experiment, resolve_group) {
    EXPECT_EQ(detail::resolve_group("builtin:S4").order(), 24u);
    EXPECT_EQ(detail::resolve_group("builtin:D4").order(), 8u);
    EXPECT_EQ(detail::resolve_group("builtin:Z7").order(), 7u);
    EXPECT_THROW(detail::resolve_group("builtin:Q8"), InvalidArgument);
    EXPECT_THROW(detail::resolve_group("builtin:S9"), InvalidArgument);
    EXPECT_THROW(detail::resolve_group("/nonexistent/table.txt"), ParseError);
    const auto table = write_temp("z2.txt", "2\n0 1\n1 0\n");
    EXPECT_EQ(detail::resolve_group(table).order(), 2u);
}

TEST(experiment, unknown_command) {
    ExperimentConfig c;
    c.command = "teleport";
    EXPECT_THROW(run(c), InvalidArgument);
}

TEST(experiment, record_csv_shape) {
    ExperimentConfig c;
    c.command = "bv";
    c.seed = 1;
    const auto csv = record_csv(run(c));
    EXPECT_EQ(count_lines(csv), 2u);
    EXPECT_EQ(csv.rfind("schema_version,version,command,verified,", 0), 0u);
}

TEST(experiment, trace_csv_shape) {
    GroverTrace tr{2, {0.25, 0.5, 0.75}, 1};
    EXPECT_EQ(trace_csv(tr), "iteration,success_probability\n0,0.25\n1,0.5\n2,0.75\n");
}

TEST(experiment, sweep_over_bank_size) {
    ExperimentConfig c;
    c.command = "program-search";
    c.n = 8;
    const auto csv = sweep(c, "m", {4, 8, 16, 32});
    EXPECT_EQ(count_lines(csv), 5u);
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            cells.push_back(cell);
        }
        ASSERT_EQ(cells.size(), 8u);
        EXPECT_GE(std::stod(cells[4]), 0.94);
        EXPECT_NEAR(std::stod(cells[5]), std::stod(cells[6]), 1e-10);
    }
}

TEST(experiment, sweep_over_iterations) {
    ExperimentConfig c;
    c.command = "program-search";
    c.bank_size = 16;
    c.n = 6;
    std::vector<uint64_t> ks;
    for (uint64_t k = 0; k <= 6; k++) {
        ks.push_back(k);
    }
    const auto csv = sweep(c, "k", ks);
    EXPECT_EQ(count_lines(csv), 8u);
    EXPECT_EQ(sweep(c, "k", {}), "param,value,command,iterations,success_probability,predicted_success,"
                                 "subspace_prediction,verified\n");
    EXPECT_THROW(sweep(c, "q", {1}), InvalidArgument);
}

TEST(experiment, sweep_is_thread_independent) {
    ExperimentConfig c;
    c.command = "fixed-point";
    c.seed = 9;
    const std::vector<uint64_t> ns{4, 8, 16, 32, 64};
    EXPECT_EQ(sweep(c, "n", ns, 1), sweep(c, "n", ns, 4));
}

TEST(experiment, sweep_propagates_errors) {
    ExperimentConfig c;
    c.command = "bv";
    EXPECT_THROW(sweep(c, "p", {5, 9}), InvalidArgument);
}

TEST(experiment, thread_count_from_env) {
    setenv("QPERM_THREADS", "3", 1);
    EXPECT_EQ(thread_count_from_env(), 3u);
    setenv("QPERM_THREADS", "zero", 1);
    EXPECT_EQ(thread_count_from_env(), 1u);
    unsetenv("QPERM_THREADS");
    EXPECT_EQ(thread_count_from_env(), 1u);
}
