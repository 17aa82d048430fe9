// Copyright 2026 The ltqmdd Authors
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

#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltqmdd/ltqmdd.hpp"

namespace ltqmdd::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kResource = 3,
    kCheckFailed = 4,
};

/// Largest matrix accepted through --matrix / --random.
inline constexpr int kMaxMatrixQubits = 10;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a square matrix stored as JSON: either an array of rows of
/// [re, im] pairs, or a flat row-major array of [re, im] pairs.
inline DenseMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("matrix file '" + path + "': " + e.what());
    }
    auto entry = [&](const nlohmann::json& p) -> Complex {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw FormatError("matrix file '" + path + "': entries must be [re, im] pairs");
        }
        return {p[0].get<double>(), p[1].get<double>()};
    };
    if (!j.is_array() || j.empty()) throw FormatError("matrix file '" + path + "': expected a non-empty array");
    std::vector<Complex> flat;
    const bool nested = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
    if (nested) {
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != j.size()) throw FormatError("matrix file '" + path + "': not square");
            for (const auto& p : row) flat.push_back(entry(p));
        }
    } else {
        for (const auto& p : j) flat.push_back(entry(p));
    }
    const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (dim * dim != flat.size() || dim < 2 || (dim & (dim - 1)) != 0) {
        throw FormatError("matrix file '" + path + "': dimension must be a power of two >= 2");
    }
    if (log2_dim(dim) > kMaxMatrixQubits) throw ResourceError("matrix exceeds " + std::to_string(kMaxMatrixQubits) + " qubits");
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < flat.size(); ++i) m(i / dim, i % dim) = flat[i];
    return m;
}

/// Random matrix over a small palette, so that sub-blocks repeat and the
/// choice of transformation matters.
inline DenseMatrix random_structured_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<Complex> palette{Complex{}, {val(rng), val(rng)}, {val(rng), val(rng)}, {val(rng), val(rng)}};
    std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
    DenseMatrix m(std::size_t{1} << n);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) m(i, j) = palette[pick(rng)];
    return m;
}

struct Source {
    std::string name;
    int qubits = 0;
    std::size_t gates = 0;
    std::optional<Circuit> circuit;
    std::optional<DenseMatrix> matrix;
};

struct CommonOptions {
    std::string qasm_file;
    std::string matrix_file;
    int random_qubits = 0;
    std::uint64_t seed = 1;
    double tolerance = kDefaultTolerance;
    std::string stats_file;
    std::string dot_file;
    std::string transform;
    int max_passes = 10;
};

inline Source load_source(const CommonOptions& o, std::ostream& err) {
    const int given = int(!o.qasm_file.empty()) + int(!o.matrix_file.empty()) + int(o.random_qubits > 0);
    if (given != 1) throw InputError("give exactly one of <file.qasm>, --matrix FILE or --random N");
    Source s;
    if (!o.qasm_file.empty()) {
        std::ifstream in(o.qasm_file);
        if (!in) throw InputError("cannot open '" + o.qasm_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        std::vector<std::string> warnings;
        s.circuit = parse_qasm(buf.str(), &warnings);
        for (const auto& w : warnings) err << o.qasm_file << ":" << w << "\n";
        s.name = std::filesystem::path(o.qasm_file).stem().string();
        s.qubits = s.circuit->qubits;
        s.gates = s.circuit->gates.size();
    } else if (!o.matrix_file.empty()) {
        s.matrix = load_matrix_json(o.matrix_file);
        s.name = std::filesystem::path(o.matrix_file).stem().string();
        s.qubits = log2_dim(s.matrix->dim());
    } else {
        if (o.random_qubits > kMaxMatrixQubits) {
            throw ResourceError("--random exceeds " + std::to_string(kMaxMatrixQubits) + " qubits");
        }
        s.matrix = random_structured_matrix(o.random_qubits, o.seed);
        s.name = "random" + std::to_string(o.random_qubits) + "_seed" + std::to_string(o.seed);
        s.qubits = o.random_qubits;
    }
    return s;
}

inline Edge build_standard(Package& pkg, const Source& s) {
    return s.circuit ? compile(pkg, *s.circuit) : pkg.from_dense(*s.matrix);
}

inline Ltqmdd build_start(Package& pkg, const Source& s, const CommonOptions& o) {
    const Edge root = build_standard(pkg, s);
    if (o.transform.empty()) return Ltqmdd{root, LinearTransform::identity(pkg.qubits())};
    LinearTransform lt;
    try {
        lt = LinearTransform::parse(o.transform);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("--transform: ") + e.what());
    }
    if (lt.variables() != pkg.qubits()) throw InputError("--transform must have one combination per qubit");
    if (!lt.is_full_rank()) throw InputError("--transform " + o.transform + " is not full rank");
    return realize_transform(pkg, root, lt);
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

inline nlohmann::ordered_json stats_json(const Source& s, const SiftReport& r) {
    nlohmann::ordered_json j;
    j["circuit"] = s.name;
    j["qubits"] = s.qubits;
    j["gates"] = s.gates;
    j["initial_size"] = r.initial_size;
    j["final_size"] = r.final_size;
    j["ratio"] = r.initial_size == 0 ? 1.0 : static_cast<double>(r.final_size) / static_cast<double>(r.initial_size);
    j["passes"] = r.passes;
    j["moves"] = r.moves;
    j["time_ms"] = r.time_ms;
    j["transform"] = r.transform;
    return j;
}

inline int cmd_build(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const Source s = load_source(o, err);
    Package pkg(s.qubits, o.tolerance);
    const auto t0 = std::chrono::steady_clock::now();
    const Ltqmdd dd = build_start(pkg, s, o);
    SiftReport r;
    r.initial_size = r.final_size = pkg.size(dd.root);
    r.transform = dd.transform.to_string();
    r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out << "circuit: " << s.name << "\nqubits: " << s.qubits << "\ngates: " << s.gates << "\nsize: " << r.final_size
        << "\ntransform: " << r.transform << "\n";
    if (!o.stats_file.empty()) write_file(o.stats_file, stats_json(s, r).dump(2) + "\n");
    if (!o.dot_file.empty()) write_file(o.dot_file, pkg.to_dot(dd.root));
    return kOk;
}

inline int cmd_sift(const CommonOptions& o, bool linear, std::ostream& out, std::ostream& err) {
    if (o.max_passes < 1) throw InputError("--max-passes must be at least 1");
    const Source s = load_source(o, err);
    Package pkg(s.qubits, o.tolerance);
    const Ltqmdd start = build_start(pkg, s, o);
    SiftOptions options;
    options.max_passes = o.max_passes;
    const SiftResult result = linear ? linear_sift(pkg, start, options) : sift(pkg, start, options);
    const auto& r = result.report;
    const auto stats = stats_json(s, r);
    out << (linear ? "linear sifting" : "sifting") << " of " << s.name << " (" << s.qubits << " qubits, " << s.gates
        << " gates)\n"
        << "initial size: " << r.initial_size << "\nfinal size: " << r.final_size
        << "\nratio: " << stats["ratio"].get<double>() << "\npasses: " << r.passes
        << (r.converged ? " (converged)" : " (pass limit)") << "\nmoves: " << r.moves << "\ntime: " << r.time_ms
        << " ms\ntransform: " << r.transform << "\n";
    if (!o.stats_file.empty()) write_file(o.stats_file, stats.dump(2) + "\n");
    if (!o.dot_file.empty()) write_file(o.dot_file, pkg.to_dot(result.dd.root));
    return kOk;
}

inline int cmd_check(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const Source s = load_source(o, err);
    if (s.qubits > oracle::kMaxDenseQubits) {
        throw ResourceError("check needs a dense reference; " + std::to_string(s.qubits) + " qubits exceeds the limit of " +
                            std::to_string(oracle::kMaxDenseQubits));
    }
    Package pkg(s.qubits, o.tolerance);
    const double tol = 8.0 * s.qubits * o.tolerance;
    bool all = true;
    auto report = [&](bool ok, const std::string& what) {
        out << (ok ? "PASS " : "FAIL ") << what << "\n";
        all = all && ok;
    };
    const DenseMatrix reference = s.circuit ? oracle::dense_compile(*s.circuit) : *s.matrix;
    const Edge root = build_standard(pkg, s);
    report(oracle::check_ltqmdd(pkg, root, LinearTransform::identity(s.qubits), reference, tol),
           "standard-order DD matches the dense reference");
    if (s.circuit) {
        const DenseMatrix u = oracle::dd_to_dense(pkg, root);
        report(approx_equal(u * adjoint(u), DenseMatrix::identity(u.dim()), tol), "compiled operator is unitary");
    }
    const Ltqmdd start{root, LinearTransform::identity(s.qubits)};
    const SiftResult sifted = sift(pkg, start);
    report(oracle::check_ltqmdd(pkg, sifted.dd.root, sifted.dd.transform, reference, tol),
           "sifted DD denotes the same operator (size " + std::to_string(sifted.report.final_size) + ")");
    const SiftResult lin = linear_sift(pkg, start);
    report(oracle::check_ltqmdd(pkg, lin.dd.root, lin.dd.transform, reference, tol),
           "linearly sifted DD denotes the same operator (size " + std::to_string(lin.report.final_size) + ", " +
               lin.report.transform + ")");
    report(pkg.check_invariants(), "every stored node is normalized and reduced");
    return all ? kOk : kCheckFailed;
}

inline int cmd_exhaustive(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const Source s = load_source(o, err);
    if (s.qubits > 3) {
        throw ResourceError("exhaustive search supports at most 3 qubits (got " + std::to_string(s.qubits) + ")");
    }
    Package pkg(s.qubits, o.tolerance);
    const DenseMatrix u = s.circuit ? oracle::dd_to_dense(pkg, compile(pkg, *s.circuit)) : *s.matrix;
    const auto sizes = oracle::exhaustive_sizes(pkg, u);
    const oracle::TransformSize* best = nullptr;
    for (const auto& ts : sizes) {
        out << ts.transform.to_string() << " " << ts.size << "\n";
        if (best == nullptr || ts.size < best->size) best = &ts;
    }
    out << "minimum: " << best->size << " at " << best->transform.to_string() << " over " << sizes.size()
        << " transformations\n";
    return kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Decision diagrams with linear transformations: build, sift and verify."};
    app.require_subcommand(1);
    CommonOptions o;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("file", o.qasm_file, "OpenQASM 2.0 input");
        sub->add_option("--matrix", o.matrix_file, "JSON matrix input ([re, im] entries, row-major)");
        sub->add_option("--random", o.random_qubits, "random structured N-qubit matrix input")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed for --random");
        sub->add_option("--tolerance", o.tolerance, "complex-number tolerance")->check(CLI::PositiveNumber);
    };

    auto* build = app.add_subcommand("build", "compile in the standard order and report the size");
    add_input(build);
    build->add_option("--stats", o.stats_file, "write JSON statistics");
    build->add_option("--dot", o.dot_file, "write the DD as Graphviz");
    build->add_option("--transform", o.transform, "start from a given transformation, e.g. \"[x0^x1, x1]\"");

    std::vector<std::pair<CLI::App*, bool>> sifters;
    for (auto [name, linear] : {std::pair{"sift", false}, std::pair{"linsift", true}}) {
        auto* sub = app.add_subcommand(name, linear ? "minimize with linear sifting" : "minimize with sifting");
        add_input(sub);
        sub->add_option("--stats", o.stats_file, "write JSON statistics");
        sub->add_option("--dot", o.dot_file, "write the final DD as Graphviz");
        sub->add_option("--transform", o.transform, "start from a given transformation");
        sub->add_option("--max-passes", o.max_passes, "pass limit")->capture_default_str();
        sifters.emplace_back(sub, linear);
    }
    auto* check = app.add_subcommand("check", "validate against the dense reference (at most 8 qubits)");
    add_input(check);
    auto* exhaustive = app.add_subcommand("exhaustive", "DD size under every transformation (at most 3 qubits)");
    add_input(exhaustive);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (build->parsed()) return cmd_build(o, out, err);
        for (auto [sub, linear] : sifters) {
            if (sub->parsed()) return cmd_sift(o, linear, out, err);
        }
        if (check->parsed()) return cmd_check(o, out, err);
        if (exhaustive->parsed()) return cmd_exhaustive(o, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const FormatError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::length_error& e) {
        err << "resource limit: " << e.what() << "\n";
        return kResource;
    }
    return kUsage;
}

}  // namespace ltqmdd::cli
