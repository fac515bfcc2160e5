// Copyright 2026 The qmask Authors
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

#include "cli.h"

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qmask/erasure.h"
#include "qmask/errors.h"
#include "qmask/io.h"
#include "qmask/masker.h"
#include "qmask/mols.h"
#include "qmask/nogo.h"
#include "qmask/verifier.h"

namespace qmask::cli {

namespace {

using io::Json;

std::string sha256_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        return "";
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return hex.str();
}

/// Provenance block embedded in every report.
class RunManifest {
   public:
    explicit RunManifest(const std::vector<std::string> &args)
        : args_(args), start_(std::chrono::steady_clock::now()) {
    }

    void add_input(const std::string &path) {
        inputs_.push_back({{"path", path}, {"sha256", sha256_file(path)}});
    }
    void add_seed(std::uint64_t seed) {
        seeds_.push_back(seed);
    }
    void add_output(const std::string &path) {
        outputs_.push_back(path);
    }

    Json to_json() const {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return {{"command_line", args_},
                {"tool_version", kToolVersion},
                {"seeds", seeds_},
                {"inputs", inputs_},
                {"outputs", outputs_},
                {"wall_time_seconds", wall}};
    }

   private:
    std::vector<std::string> args_;
    std::chrono::steady_clock::time_point start_;
    Json inputs_ = Json::array();
    std::vector<std::uint64_t> seeds_;
    std::vector<std::string> outputs_;
};

/// Writes `result` (and its manifest) to stdout and, if requested, to a report file.
void emit_report(std::ostream &out, RunManifest &manifest, const Json &result, const std::string &report_path) {
    if (!report_path.empty()) {
        manifest.add_output(report_path);
    }
    const Json payload = {{"manifest", manifest.to_json()}, {"result", result}};
    if (!report_path.empty()) {
        io::write_file(report_path, payload);
    }
    out << payload.dump(2) << "\n";
}

void emit_artifact(std::ostream &out, const Json &artifact, const std::string &path) {
    if (path.empty()) {
        out << artifact.dump(2) << "\n";
    } else {
        io::write_file(path, artifact);
    }
}

Masker load_masker(const std::string &path, RunManifest &manifest) {
    manifest.add_input(path);
    return io::decode_masker(io::read_file(path));
}

struct Options {
    // mols
    int order = 0;
    std::string pair_file;
    // mask
    int d = 0;
    bool tilde = false;
    std::string masker_file;
    std::string set_file;
    // qecc
    std::string code_file;
    std::string channel = "reset";
    int j = 0;
    size_t samples = 100;
    // nogo
    int k = 0;
    std::vector<int> dims;
    int restarts = 20;
    int iters = 2000;
    // shared
    std::string out_file;
    std::string report_file;
    double tol = kDefaultTol;
    std::uint64_t seed = 12345;
};

int run_mols_gen(const Options &o, std::ostream &out) {
    const MolsPair pair = mols_pair(o.order);
    emit_artifact(out, io::encode(pair), o.out_file);
    return kOk;
}

int run_mols_verify(const Options &o, RunManifest &manifest, std::ostream &out) {
    manifest.add_input(o.pair_file);
    const MolsPair pair = io::decode_pair(io::read_file(o.pair_file));
    const MolsCheck check = verify_mols(pair);
    Json result = {{"order", pair.order()}, {"verdict", check.ok}};
    if (!check.ok) {
        result["witness"] = check.witness;
    }
    emit_report(out, manifest, result, o.report_file);
    return check.ok ? kOk : kVerdictFalse;
}

int run_mask_build(const Options &o, RunManifest &manifest, std::ostream &out) {
    std::optional<Masker> s;
    if (o.tilde) {
        if (!o.pair_file.empty()) {
            throw CLI::ValidationError("--tilde uses the built-in squares and cannot be combined with --pair");
        }
        s = tilde_masker(o.d);
    } else if (!o.pair_file.empty()) {
        manifest.add_input(o.pair_file);
        s = latin_masker(o.d, io::decode_pair(io::read_file(o.pair_file)));
    } else {
        s = latin_masker(o.d);
    }
    emit_artifact(out, io::encode(*s), o.out_file);
    return kOk;
}

int run_mask_verify(const Options &o, RunManifest &manifest, std::ostream &out) {
    const Masker s = load_masker(o.masker_file, manifest);
    MaskingReport report;
    if (o.set_file.empty()) {
        report = universal_masking_check(s, o.tol);
    } else {
        manifest.add_input(o.set_file);
        report = marginal_report(s, io::decode_state_set(io::read_file(o.set_file)), o.tol);
    }
    emit_report(out, manifest, io::encode(report), o.report_file);
    return report.verdict ? kOk : kVerdictFalse;
}

CodeSubspace load_code(const Options &o, RunManifest &manifest) {
    if (!o.masker_file.empty()) {
        return CodeSubspace::range_of(load_masker(o.masker_file, manifest));
    }
    manifest.add_input(o.code_file);
    return io::decode_code(io::read_file(o.code_file));
}

int run_qecc_check(const Options &o, RunManifest &manifest, std::ostream &out) {
    const CodeSubspace code = load_code(o, manifest);
    Json tables = Json::array();
    bool verdict = true;
    for (int j = 0; j < code.dims().parties(); ++j) {
        const KLReport r = kl_check(code, j, o.tol);
        verdict = verdict && r.verdict;
        tables.push_back(io::encode(r));
    }
    emit_report(out, manifest, {{"verdict", verdict}, {"tol", o.tol}, {"per_subsystem", tables}}, o.report_file);
    return verdict ? kOk : kVerdictFalse;
}

int run_qecc_recover(const Options &o, RunManifest &manifest, std::ostream &out) {
    const CodeSubspace code = load_code(o, manifest);
    manifest.add_seed(o.seed);
    const KrausChannel ch = o.channel == "reset" ? reset_channel(code.dims(), o.j) : depolarize_channel(code.dims(), o.j);
    Json result = {{"channel", o.channel}, {"j", o.j}, {"tol", o.tol}};
    try {
        const RecoveryMap rec = kl_recovery(code, ch, o.tol);
        const FidelityStats stats = roundtrip_fidelity(code, ch, rec, o.samples, o.seed);
        result["fidelity"] = io::encode(stats);
        result["verdict"] = stats.worst >= 1.0 - o.tol;
    } catch (const KLViolated &e) {
        result["verdict"] = false;
        result["error"] = e.what();
    }
    emit_report(out, manifest, result, o.report_file);
    return result["verdict"].get<bool>() ? kOk : kVerdictFalse;
}

int run_nogo_search(const Options &o, RunManifest &manifest, std::ostream &out) {
    manifest.add_seed(o.seed);
    const MaskProblem problem{o.k, Dims(o.dims)};
    const SearchResult r = optimize_defect(problem, o.restarts, o.iters, o.seed);
    emit_report(out, manifest, io::encode(r), o.report_file);
    return kOk;
}

int run_nogo_probe(const Options &o, RunManifest &manifest, std::ostream &out) {
    manifest.add_seed(o.seed);
    const ProbeResult r = probe_open_question(o.restarts, o.iters, o.seed);
    Json result = io::encode(r.search);
    result["cross_check_passed"] = r.cross_check_passed ? Json(*r.cross_check_passed) : Json(nullptr);
    emit_report(out, manifest, result, o.report_file);
    return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qmask: multipartite maskers, one-erasure codes and masking-defect search", "qmask"};
    app.require_subcommand(1);
    Options o;

    auto *mols = app.add_subcommand("mols", "orthogonal Latin squares")->require_subcommand(1);
    auto *mols_gen = mols->add_subcommand("gen", "construct an orthogonal pair");
    mols_gen->add_option("--order", o.order, "square order")->required();
    mols_gen->add_option("--out", o.out_file, "output pair file (default: stdout)");
    auto *mols_verify = mols->add_subcommand("verify", "exhaustively verify a pair file");
    mols_verify->add_option("--pair", o.pair_file)->required()->check(CLI::ExistingFile);
    mols_verify->add_option("--report", o.report_file);

    auto *mask = app.add_subcommand("mask", "maskers")->require_subcommand(1);
    auto *mask_build = mask->add_subcommand("build", "build a Latin-square masker");
    mask_build->add_option("--d", o.d, "input dimension")->required();
    mask_build->add_option("--pair", o.pair_file, "use these squares instead of the built-in pair")
        ->check(CLI::ExistingFile);
    mask_build->add_flag("--tilde", o.tilde, "embed C^d into (C^{d+1})^3");
    mask_build->add_option("--out", o.out_file, "output masker file (default: stdout)");
    auto *mask_verify = mask->add_subcommand("verify", "check the masking property");
    mask_verify->add_option("--masker", o.masker_file)->required()->check(CLI::ExistingFile);
    mask_verify->add_option("--set", o.set_file, "state set; default is the universal check")
        ->check(CLI::ExistingFile);
    mask_verify->add_option("--tol", o.tol);
    mask_verify->add_option("--report", o.report_file);

    auto *qecc = app.add_subcommand("qecc", "one-erasure codes")->require_subcommand(1);
    auto *qecc_check = qecc->add_subcommand("check", "Knill-Laflamme check on every subsystem");
    auto *check_masker = qecc_check->add_option("--masker", o.masker_file)->check(CLI::ExistingFile);
    auto *check_code = qecc_check->add_option("--code", o.code_file)->check(CLI::ExistingFile);
    check_masker->excludes(check_code);
    qecc_check->add_option("--tol", o.tol);
    qecc_check->add_option("--report", o.report_file);
    auto *qecc_recover = qecc->add_subcommand("recover", "simulate erasure then recovery");
    auto *rec_masker = qecc_recover->add_option("--masker", o.masker_file)->check(CLI::ExistingFile);
    auto *rec_code = qecc_recover->add_option("--code", o.code_file)->check(CLI::ExistingFile);
    rec_masker->excludes(rec_code);
    qecc_recover->add_option("--channel", o.channel)->check(CLI::IsMember({"reset", "depolarize"}));
    qecc_recover->add_option("--j", o.j, "erased subsystem (0-based)")->required();
    qecc_recover->add_option("--samples", o.samples);
    qecc_recover->add_option("--seed", o.seed);
    qecc_recover->add_option("--tol", o.tol);
    qecc_recover->add_option("--report", o.report_file);

    auto *nogo = app.add_subcommand("nogo", "numerical masking-defect search")->require_subcommand(1);
    auto *nogo_search = nogo->add_subcommand("search", "minimize the masking defect");
    nogo_search->add_option("--k", o.k, "input dimension")->required();
    nogo_search->add_option("--dims", o.dims, "comma-separated subsystem dimensions")->required()->delimiter(',');
    nogo_search->add_option("--restarts", o.restarts);
    nogo_search->add_option("--iters", o.iters);
    nogo_search->add_option("--seed", o.seed);
    nogo_search->add_option("--report", o.report_file);
    auto *nogo_probe = nogo->add_subcommand("probe-d6", "search K=6 into (C^6)^3");
    nogo_probe->add_option("--restarts", o.restarts);
    nogo_probe->add_option("--iters", o.iters);
    nogo_probe->add_option("--seed", o.seed);
    nogo_probe->add_option("--report", o.report_file);

    std::vector<const char *> argv{"qmask"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsageError;
    }

    std::vector<std::string> command_line{"qmask"};
    command_line.insert(command_line.end(), args.begin(), args.end());
    RunManifest manifest(command_line);
    try {
        if (mols_gen->parsed()) {
            return run_mols_gen(o, out);
        }
        if (mols_verify->parsed()) {
            return run_mols_verify(o, manifest, out);
        }
        if (mask_build->parsed()) {
            return run_mask_build(o, manifest, out);
        }
        if (mask_verify->parsed()) {
            return run_mask_verify(o, manifest, out);
        }
        if (qecc_check->parsed() || qecc_recover->parsed()) {
            if (o.masker_file.empty() && o.code_file.empty()) {
                err << "error: one of --masker or --code is required\n";
                return kUsageError;
            }
            return qecc_check->parsed() ? run_qecc_check(o, manifest, out) : run_qecc_recover(o, manifest, out);
        }
        if (nogo_search->parsed()) {
            return run_nogo_search(o, manifest, out);
        }
        if (nogo_probe->parsed()) {
            return run_nogo_probe(o, manifest, out);
        }
    } catch (const NoMolsExists &e) {
        err << "NoMolsExists: " << e.what() << "\n";
        return kUsageError;
    } catch (const UnsupportedOrder &e) {
        err << "UnsupportedOrder: " << e.what() << "\n";
        return kUsageError;
    } catch (const SchemaError &e) {
        err << "schema error at " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    err << app.help();
    return kUsageError;
}

}  // namespace qmask::cli
