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

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "qperm/bv.hpp"
#include "qperm/errors.hpp"
#include "qperm/finite_group.hpp"
#include "qperm/fixed_point.hpp"
#include "qperm/grover.hpp"
#include "qperm/program_search.hpp"

#ifndef QPERM_VERSION_STRING
#define QPERM_VERSION_STRING "0.1.0"
#endif

namespace qperm {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Everything needed to reproduce one run. Random instances are derived from
/// `seed` alone, so equal configs give byte-identical records.
struct ExperimentConfig {
    std::string command;  // bv | fixed-point | program-search | conjugacy
    uint64_t seed = 0;
    std::string format = "json";

    // bv
    uint64_t p = 5;
    size_t m = 2;
    std::optional<std::vector<uint64_t>> multipliers;
    std::optional<uint64_t> j0;

    // fixed-point (n) and program-search (n = N, bank_size = M)
    std::optional<size_t> n;
    std::string perm = "random:0";
    uint64_t power = 1;
    std::optional<size_t> t;
    std::optional<size_t> bank_size;
    std::optional<std::string> bank;
    std::optional<std::string> target;
    std::optional<size_t> iterations;

    // conjugacy
    std::string group = "builtin:S3";
    size_t g1 = 0;
    size_t g2 = 0;
};

inline json to_json(const ExperimentConfig &c) {
    json j;
    j["command"] = c.command;
    j["seed"] = c.seed;
    if (c.command == "bv") {
        j["p"] = c.p;
        j["m"] = c.m;
        j["multipliers"] = c.multipliers ? json(*c.multipliers) : json(nullptr);
        j["j0"] = c.j0 ? json(*c.j0) : json(nullptr);
    } else if (c.command == "fixed-point") {
        j["n"] = c.n ? json(*c.n) : json(nullptr);
        j["perm"] = c.perm;
        j["power"] = c.power;
        j["t"] = c.t ? json(*c.t) : json(nullptr);
    } else if (c.command == "program-search") {
        j["m"] = c.bank_size ? json(*c.bank_size) : json(nullptr);
        j["n"] = c.n ? json(*c.n) : json(nullptr);
        j["bank"] = c.bank ? json(*c.bank) : json(nullptr);
        j["target"] = c.target ? json(*c.target) : json(nullptr);
        if (c.iterations) {
            j["iterations"] = *c.iterations;
        }
    } else if (c.command == "conjugacy") {
        j["group"] = c.group;
        j["g1"] = c.g1;
        j["g2"] = c.g2;
    }
    return j;
}

/// One run's output. Serialized flat: the reserved keys below, then the
/// command-specific result fields in insertion order.
struct RunRecord {
    int schema_version = kSchemaVersion;
    std::string version = QPERM_VERSION_STRING;
    std::string command;
    json config;
    json result = json::object();
    bool verified = false;
    /// Wall-clock time; only present when timing was requested, since it
    /// breaks byte-for-byte reproducibility.
    std::optional<double> duration_ms;

    json to_json() const {
        json j;
        j["schema_version"] = schema_version;
        j["version"] = version;
        j["command"] = command;
        j["config"] = config;
        j["verified"] = verified;
        if (duration_ms) {
            j["duration_ms"] = *duration_ms;
        }
        for (const auto &[k, v] : result.items()) {
            j[k] = v;
        }
        return j;
    }

    static RunRecord from_json(const json &j) {
        RunRecord r;
        r.schema_version = j.at("schema_version").get<int>();
        r.version = j.at("version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.config = j.at("config");
        r.verified = j.at("verified").get<bool>();
        if (j.contains("duration_ms")) {
            r.duration_ms = j.at("duration_ms").get<double>();
        }
        for (const auto &[k, v] : j.items()) {
            if (k != "schema_version" && k != "version" && k != "command" && k != "config" && k != "verified" &&
                k != "duration_ms") {
                r.result[k] = v;
            }
        }
        return r;
    }

    bool operator==(const RunRecord &o) const { return to_json() == o.to_json(); }
};

namespace detail {

inline std::string csv_cell(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string s;
        for (size_t i = 0; i < v.size(); i++) {
            s += (i ? " " : "") + csv_cell(v[i]);
        }
        return s;
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

inline std::vector<uint64_t> parse_u64_list(const std::string &text) {
    std::vector<uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        try {
            out.push_back(std::stoull(tok, &used));
        } catch (const std::exception &) {
            throw InvalidArgument("not a non-negative integer: '" + tok + "'");
        }
        if (used != tok.size() || tok.empty() || tok[0] == '-') {
            throw InvalidArgument("not a non-negative integer: '" + tok + "'");
        }
    }
    return out;
}

/// "x0:y0[,x1:y1...]"
inline SearchTarget parse_target(const std::string &text) {
    std::vector<size_t> src, dst;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        auto colon = pair.find(':');
        if (colon == std::string::npos) {
            throw InvalidArgument("target pair must look like x:y, got '" + pair + "'");
        }
        auto a = parse_u64_list(pair.substr(0, colon));
        auto b = parse_u64_list(pair.substr(colon + 1));
        if (a.size() != 1 || b.size() != 1) {
            throw InvalidArgument("target pair must look like x:y, got '" + pair + "'");
        }
        src.push_back(a[0]);
        dst.push_back(b[0]);
    }
    return {src, dst};
}

inline FiniteGroup resolve_group(const std::string &spec) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) != 0) {
        return load_cayley_table(spec);
    }
    const std::string name = spec.substr(prefix.size());
    if (name.size() < 2) {
        throw InvalidArgument("unknown builtin group '" + name + "'");
    }
    size_t n;
    try {
        size_t used;
        n = std::stoul(name.substr(1), &used);
        if (used != name.size() - 1) {
            throw InvalidArgument("");
        }
    } catch (const std::exception &) {
        throw InvalidArgument("unknown builtin group '" + name + "'");
    }
    switch (name[0]) {
        case 'S':
            return FiniteGroup::symmetric(n);
        case 'D':
            return FiniteGroup::dihedral(n);
        case 'Z':
            return FiniteGroup::cyclic(n);
        default:
            throw InvalidArgument("unknown builtin group '" + name + "'");
    }
}

inline Permutation load_permutation_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::string line, extra;
    if (!std::getline(in, line)) {
        throw ParseError(path + ": empty permutation file");
    }
    while (std::getline(in, extra)) {
        if (extra.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError(path + ": permutation file must hold a single row");
        }
    }
    return parse_permutation(line);
}

inline json run_bv_command(const ExperimentConfig &c, bool &verified) {
    if (c.m == 0) {
        throw InvalidArgument("m must be >= 1");
    }
    require_prime(c.p);
    if (c.p < 3) {
        throw InvalidArgument("p must be an odd prime");
    }
    if (c.p > 1000 || std::pow(static_cast<double>(c.p - 1), static_cast<double>(c.m)) * static_cast<double>(c.p) > 5e7) {
        throw InvalidArgument("instance too large for a dense simulation");
    }
    Rng rng(c.seed);
    auto hidden = c.multipliers ? HiddenHomomorphism(c.p, *c.multipliers) : HiddenHomomorphism::random(c.p, c.m, rng);
    if (hidden.wires() != c.m) {
        throw InvalidArgument("expected " + std::to_string(c.m) + " multipliers");
    }
    BVInstance inst(hidden, c.j0);
    const auto q = run_bv(inst);
    const auto classical = classical_bv(hidden, inst.j0);
    verified = q.y == classical.y;

    json r;
    r["p"] = inst.p;
    r["m"] = inst.m();
    r["hidden"] = hidden.multipliers();
    r["j0"] = inst.j0;
    r["y"] = q.y.entries;
    r["kernel_size"] = q.kernel.size();
    r["image"] = q.image;
    r["oracle_uses"] = q.oracle_uses;
    r["classical_oracle_uses"] = classical.oracle_uses;
    r["peak_probability"] = q.peak_probability;
    return r;
}

inline json run_fixed_point_command(const ExperimentConfig &c, bool &verified, GroverTrace *trace_out) {
    const std::string random_prefix = "random:";
    std::optional<Permutation> sigma;
    bool random = c.perm.rfind(random_prefix, 0) == 0;
    if (random) {
        if (!c.n) {
            throw InvalidArgument("--n is required for a random permutation");
        }
        auto seed = parse_u64_list(c.perm.substr(random_prefix.size()));
        if (seed.size() != 1) {
            throw InvalidArgument("random permutation must look like random:<seed>");
        }
        Rng rng(seed[0]);
        sigma = random_with_fixed_points(*c.n, c.t.value_or(1), rng);
    } else {
        sigma = load_permutation_file(c.perm);
        if (c.n && *c.n != sigma->size()) {
            throw InvalidArgument("--n does not match the permutation file");
        }
    }
    if (sigma->size() < 2 || sigma->size() > 1024) {
        throw InvalidArgument("N must lie in 2..1024");
    }
    // A random sigma is generated with t fixed points; the search itself counts
    // the fixed points of sigma^power from the white-box table.
    FixedPointInstance inst(*sigma, c.power, random ? std::nullopt : c.t, false);
    FixedPointOptions opts;
    opts.seed = c.seed;
    const auto r = grover_fixed_point(inst, opts);
    verified = inst.target()(r.element) == r.element;
    if (trace_out) {
        *trace_out = r.trace;
    }
    json out;
    out["N"] = inst.N();
    out["power"] = inst.power;
    out["t"] = inst.t;
    out["iterations"] = r.trace.iterations;
    out["success_probability"] = r.trace.final_success();
    out["predicted_success"] = GroverGeometry::make(inst.N(), inst.t, 0).predicted_success(r.trace.iterations);
    out["element"] = r.element;
    out["attempts"] = r.trace.attempts;
    out["oracle_calls_quantum"] = r.oracle_calls_quantum;
    out["oracle_calls_classical"] = r.oracle_calls_classical;
    return out;
}

inline json run_program_search_command(const ExperimentConfig &c, bool &verified) {
    Rng rng(c.seed);
    std::optional<ProgramBank> bank;
    std::optional<SearchTarget> target;
    if (c.target) {
        target = parse_target(*c.target);
    }
    ProgramSearchOptions opts;
    opts.iterations = c.iterations;
    if (c.bank) {
        bank = load_bank(*c.bank);
        if ((c.bank_size && *c.bank_size != bank->M()) || (c.n && *c.n != bank->N())) {
            throw InvalidArgument("--m/--n do not match the bank file");
        }
        if (!target) {
            throw InvalidArgument("--target is required with --bank");
        }
        // Unknown solution count: assume one, double on each failed verification.
        opts.expected_t = 1;
        opts.double_t_on_retry = true;
    } else {
        const size_t M = c.bank_size.value_or(8), N = c.n.value_or(16);
        if (M < 2 || N < 2) {
            throw InvalidArgument("need M >= 2 and N >= 2");
        }
        if (!target) {
            target = SearchTarget::single(rng.below(N), rng.below(N));
        }
        const size_t solution = rng.below(M);
        bank = random_bank(M, N, *target, solution, rng);
        opts.expected_t = 1;
        opts.double_t_on_retry = false;
    }
    target->check(bank->N());
    const double dim = std::pow(static_cast<double>(bank->M() * bank->N()), static_cast<double>(target->arity()));
    if (dim > 5e7) {
        throw InvalidArgument("instance too large for a dense simulation");
    }
    opts.seed = c.seed ^ 0x9e3779b97f4a7c15ULL;
    const auto r = program_search(*bank, *target, opts);
    verified = r.verified;

    json out;
    out["M"] = bank->M();
    out["N"] = bank->N();
    out["arity"] = target->arity();
    out["target_sources"] = target->sources;
    out["target_sinks"] = target->sinks;
    out["n_star"] = r.geometry.n_star;
    out["success_probability"] = r.success_probability;
    out["predicted_success"] = r.geometry.predicted_success(r.geometry.n_star);
    out["measured_j"] = r.j ? json(*r.j) : json(nullptr);
    out["attempts"] = r.trace.attempts;
    out["copies_agree"] = r.copies_agree;
    out["classical_solutions"] = classical_scan(*bank, *target);
    out["oracle_calls_quantum"] = r.oracle_calls_quantum;
    out["oracle_calls_classical"] = r.oracle_calls_classical;
    return out;
}

inline json run_conjugacy_command(const ExperimentConfig &c, bool &verified) {
    const auto g = resolve_group(c.group);
    if (c.g1 >= g.order() || c.g2 >= g.order()) {
        throw InvalidArgument("element index out of range for a group of order " + std::to_string(g.order()));
    }
    if (g.order() < 2) {
        throw InvalidArgument("group must have order >= 2");
    }
    ConjugacyOptions opts;
    opts.seed = c.seed;
    const auto r = conjugacy_search(g, c.g1, c.g2, opts);
    const auto classical = conjugacy_oracle(g, c.g1, c.g2);
    verified = r.conjugator.has_value() == classical.has_value();

    json out;
    out["group"] = c.group;
    out["order"] = g.order();
    out["g1"] = c.g1;
    out["g2"] = c.g2;
    out["conjugator"] = r.conjugator ? json(*r.conjugator) : json(nullptr);
    out["conjugate"] = classical.has_value();
    out["M"] = g.order();
    out["N"] = g.order();
    out["t"] = r.search.geometry.t;
    out["n_star"] = r.search.geometry.n_star;
    out["success_probability"] = r.search.success_probability;
    out["attempts"] = r.search.trace.attempts;
    out["oracle_calls_quantum"] = r.search.oracle_calls_quantum;
    out["oracle_calls_classical"] = r.search.oracle_calls_classical;
    return out;
}

}  // namespace detail

/// Dispatches one experiment. Throws InvalidArgument for bad configs and
/// ParseError for unreadable inputs; a failed verification is reported in
/// RunRecord::verified.
inline RunRecord run(const ExperimentConfig &config, GroverTrace *trace_out = nullptr, bool timing = false) {
    const auto started = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.command = config.command;
    rec.config = to_json(config);
    bool verified = false;
    if (config.command == "bv") {
        rec.result = detail::run_bv_command(config, verified);
    } else if (config.command == "fixed-point") {
        rec.result = detail::run_fixed_point_command(config, verified, trace_out);
    } else if (config.command == "program-search") {
        rec.result = detail::run_program_search_command(config, verified);
    } else if (config.command == "conjugacy") {
        rec.result = detail::run_conjugacy_command(config, verified);
    } else {
        throw InvalidArgument("unknown command '" + config.command + "'");
    }
    rec.verified = verified;
    if (timing) {
        rec.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    }
    return rec;
}

/// Header row plus one row of result fields.
inline std::string record_csv(const RunRecord &rec) {
    const auto j = rec.to_json();
    std::string header, row;
    bool first = true;
    for (const auto &[k, v] : j.items()) {
        if (k == "config") {
            continue;
        }
        header += (first ? "" : ",") + k;
        row += (first ? "" : ",") + detail::csv_cell(v);
        first = false;
    }
    return header + "\n" + row + "\n";
}

inline std::string trace_csv(const GroverTrace &trace) {
    std::ostringstream ss;
    ss << "iteration,success_probability\n" << std::setprecision(17);
    for (size_t k = 0; k < trace.success.size(); k++) {
        ss << k << "," << trace.success[k] << "\n";
    }
    return ss.str();
}

/// Worker count for sweeps, from QPERM_THREADS (default 1).
inline size_t thread_count_from_env() {
    const char *v = std::getenv("QPERM_THREADS");
    if (!v || !*v) {
        return 1;
    }
    char *end = nullptr;
    const long n = std::strtol(v, &end, 10);
    return (end && *end == '\0' && n > 0) ? static_cast<size_t>(n) : 1;
}

/// Runs `config` once per value of `param` and tabulates the results. `param`
/// is one of: m (bank size), n (set size), p (prime), k (program-search
/// iteration count). Rows follow `values` order regardless of thread count.
inline std::string sweep(const ExperimentConfig &config, const std::string &param, const std::vector<uint64_t> &values,
                         size_t threads = 1) {
    static const char *header =
        "param,value,command,iterations,success_probability,predicted_success,subspace_prediction,verified\n";
    if (param != "m" && param != "n" && param != "p" && param != "k") {
        throw InvalidArgument("sweep parameter must be one of m, n, p, k");
    }
    std::vector<std::string> rows(values.size());
    std::vector<std::exception_ptr> errors(values.size());
    auto work = [&](size_t i) {
        try {
            auto c = config;
            const uint64_t v = values[i];
            if (param == "m") {
                if (c.command == "bv") {
                    c.m = v;
                } else {
                    c.bank_size = v;
                }
            } else if (param == "n") {
                c.n = v;
            } else if (param == "p") {
                c.p = v;
            } else {
                c.iterations = v;
            }
            const auto rec = run(c);
            const auto &r = rec.result;
            std::ostringstream ss;
            ss << std::setprecision(17) << param << "," << v << "," << c.command << ",";
            if (c.command == "bv") {
                ss << 1 << "," << r["peak_probability"].get<double>() << ",1,1";
            } else if (c.command == "fixed-point") {
                const size_t N = r["N"].get<size_t>(), t = r["t"].get<size_t>(), k = r["iterations"].get<size_t>();
                ss << k << "," << r["success_probability"].get<double>() << ","
                   << r["predicted_success"].get<double>() << "," << subspace_predictor(N, k, t);
            } else if (c.command == "program-search") {
                const size_t M = r["M"].get<size_t>(), k = r["n_star"].get<size_t>();
                ss << k << "," << r["success_probability"].get<double>() << ","
                   << r["predicted_success"].get<double>() << "," << subspace_predictor(M, k);
            } else {
                ss << r["n_star"].get<size_t>() << "," << r["success_probability"].get<double>() << ",,";
            }
            ss << "," << (rec.verified ? "true" : "false") << "\n";
            rows[i] = ss.str();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    threads = std::max<size_t>(1, std::min(threads, values.size()));
    if (threads == 1) {
        for (size_t i = 0; i < values.size(); i++) {
            work(i);
        }
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < threads; w++) {
            pool.emplace_back([&, w] {
                for (size_t i = w; i < values.size(); i += threads) {
                    work(i);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::string out = header;
    for (auto &r : rows) {
        out += r;
    }
    return out;
}

}  // namespace qperm
