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

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qperm/experiment.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kInvalidConfig = 2,
    kParseError = 3,
};

/// "4,8,16", "0..6" or "" (empty).
std::vector<uint64_t> parse_values(const std::string &text) {
    if (text.empty()) {
        return {};
    }
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        return qperm::detail::parse_u64_list(text);
    }
    auto lo = qperm::detail::parse_u64_list(text.substr(0, dots));
    auto hi = qperm::detail::parse_u64_list(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1) {
        throw qperm::InvalidArgument("range must look like a..b");
    }
    std::vector<uint64_t> out;
    for (uint64_t v = lo[0]; v <= hi[0]; v++) {
        out.push_back(v);
    }
    return out;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw qperm::InvalidArgument("cannot write " + path);
    }
    out << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulated quantum algorithms for permutations and group automorphisms"};
    app.require_subcommand(1);
    app.fallthrough();

    qperm::ExperimentConfig cfg;
    std::string output;
    bool timing = false;
    app.add_option("--seed", cfg.seed, "PRNG seed (mt19937_64)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", output, "Output path (default: stdout)");
    app.add_flag("--timing", timing, "Include wall-clock duration_ms in the record");

    std::string multipliers;
    uint64_t j0 = 0;
    std::string dump_state;
    double dump_threshold = 1e-12;
    auto *bv = app.add_subcommand("bv", "Identify a hidden homomorphism Z_{p-1}^m -> Aut(Z_p) with one query");
    bv->add_option("--p", cfg.p, "Prime modulus")->required();
    bv->add_option("--m", cfg.m, "Number of program wires")->required();
    bv->add_option("--multipliers", multipliers, "Hidden multipliers j1,..,jm (random if omitted)");
    auto *j0_opt = bv->add_option("--j0", j0, "Generator used for the eigenvector (default: smallest)");
    bv->add_option("--dump-state", dump_state, "Write the pre-measurement state as CSV");
    bv->add_option("--dump-threshold", dump_threshold, "Minimum |amplitude| written by --dump-state");

    size_t n = 0, t = 0, m = 0, iterations = 0;
    std::string trace_path;
    auto *fp = app.add_subcommand("fixed-point", "Grover search for the fixed points of sigma^power");
    auto *fp_n = fp->add_option("--n", n, "Set size N");
    fp->add_option("--perm", cfg.perm, "Permutation file or random:<seed>")->required();
    fp->add_option("--power", cfg.power, "Search sigma^power");
    auto *fp_t = fp->add_option("--t", t, "Number of fixed points");
    fp->add_option("--trace", trace_path, "Write per-iteration success probabilities as CSV");

    std::string bank, target;
    auto *ps = app.add_subcommand("program-search", "Grover search over a bank of permutation programs");
    auto *ps_m = ps->add_option("--m", m, "Bank size M");
    auto *ps_n = ps->add_option("--n", n, "Permutation degree N");
    ps->add_option("--bank", bank, "Bank file: one permutation row per line");
    ps->add_option("--target", target, "x0:y0[,x1:y1]");
    auto *ps_iter = ps->add_option("--iterations", iterations, "Override the iteration count");

    auto *cj = app.add_subcommand("conjugacy", "Conjugacy search over inner automorphisms");
    cj->add_option("--group", cfg.group, "Cayley table file or builtin:S3|S4|D4|Z6|...")->required();
    cj->add_option("--g1", cfg.g1, "Element index g1")->required();
    cj->add_option("--g2", cfg.g2, "Element index g2")->required();

    std::string sweep_command = "program-search", sweep_param = "m", sweep_values;
    uint64_t sweep_p = 5;
    size_t sweep_wires = 2;
    auto *sw = app.add_subcommand("sweep", "Tabulate one command over a parameter range (CSV)");
    sw->add_option("--command", sweep_command, "bv | fixed-point | program-search")
        ->check(CLI::IsMember({"bv", "fixed-point", "program-search"}));
    sw->add_option("--param", sweep_param, "m | n | p | k")->check(CLI::IsMember({"m", "n", "p", "k"}));
    sw->add_option("--values", sweep_values, "Comma list or a..b range (empty for none)")->expected(0, 1);
    auto *sw_m = sw->add_option("--m", m, "Bank size (program-search) or wire count (bv)");
    auto *sw_n = sw->add_option("--n", n, "Set size N");
    sw->add_option("--p", sweep_p, "Prime for bv");
    sw->add_option("--bv-m", sweep_wires, "Wire count for bv");
    sw->add_option("--perm", cfg.perm, "Permutation source for fixed-point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalidConfig;
    }

    try {
        std::string text;
        if (*sw) {
            cfg.command = sweep_command;
            cfg.p = sweep_p;
            cfg.m = sweep_wires;
            if (sw_n->count()) {
                cfg.n = n;
            }
            if (sw_m->count()) {
                if (sweep_command == "bv") {
                    cfg.m = m;
                } else {
                    cfg.bank_size = m;
                }
            }
            if (sweep_command == "fixed-point" && !cfg.n) {
                cfg.n = 16;
            }
            text = qperm::sweep(cfg, sweep_param, parse_values(sweep_values), qperm::thread_count_from_env());
            emit(text, output);
            return kOk;
        }

        qperm::GroverTrace trace;
        if (*bv) {
            cfg.command = "bv";
            if (!multipliers.empty()) {
                cfg.multipliers = qperm::detail::parse_u64_list(multipliers);
            }
            if (j0_opt->count()) {
                cfg.j0 = j0;
            }
        } else if (*fp) {
            cfg.command = "fixed-point";
            if (fp_n->count()) {
                cfg.n = n;
            }
            if (fp_t->count()) {
                cfg.t = t;
            }
        } else if (*ps) {
            cfg.command = "program-search";
            if (ps_m->count()) {
                cfg.bank_size = m;
            }
            if (ps_n->count()) {
                cfg.n = n;
            }
            if (!bank.empty()) {
                cfg.bank = bank;
            }
            if (!target.empty()) {
                cfg.target = target;
            }
            if (ps_iter->count()) {
                cfg.iterations = iterations;
            }
        } else {
            cfg.command = "conjugacy";
        }

        const auto rec = qperm::run(cfg, &trace, timing);
        text = cfg.format == "csv" ? qperm::record_csv(rec) : rec.to_json().dump(2) + "\n";
        emit(text, output);
        if (*fp && !trace_path.empty()) {
            emit(qperm::trace_csv(trace), trace_path);
        }
        if (*bv && !dump_state.empty()) {
            const qperm::BVInstance inst(qperm::HiddenHomomorphism(cfg.p, rec.result["hidden"].get<std::vector<uint64_t>>()),
                                         rec.result["j0"].get<uint64_t>());
            emit(qperm::bv_output_state(inst).dump_csv(dump_threshold), dump_state);
        }
        return rec.verified ? kOk : kVerificationFailed;
    } catch (const qperm::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const qperm::InvalidArgument &e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const qperm::VerificationError &e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    }
}
