// Copyright 2026 The mpsfuse Authors
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

// Command-line front end.
//
//   mpsfuse analyze  TENSOR
//   mpsfuse convert  TENSOR [--to simps|mps] [-o OUT]
//   mpsfuse fuse     (CATALOG-NAME | TENSOR) N_BLOCKS BLOCK_LEN [enumerate|sample]
//   mpsfuse spectrum TENSOR --sizes 4,6,8 [--cut C] [-o OUT.csv]
//   mpsfuse cocycle  COCYCLE (validate|coboundary|prepare) [--N L] [--blocks B]
//   mpsfuse catalog  list | export NAME [--as mps|simps|cocycle] [-o OUT]
//
// Reports are JSON on stdout (or --report FILE). Exit codes: 0 when the
// command ran (verdicts are data), 1 on input errors, 2 on numerical failure.

#include "mpsfuse/mpsfuse.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

using mpsfuse::Json;

struct GlobalOptions {
    std::uint64_t max_amplitudes = std::uint64_t{1} << 24;
    int max_bond = 16;
    int threads = 1;
    std::uint64_t seed = 1;
    int shots = 1000;
    std::string report_path;
    bool no_timings = false;
};

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

Json base_report(const std::string &command, const std::vector<std::string> &argv) {
    Json r;
    r["format_version"] = mpsfuse::kFormatVersion;
    r["kind"] = "run_report";
    r["command"] = command;
    r["argv"] = argv;
    return r;
}

void emit_report(Json report, const GlobalOptions &g, const Json &timings) {
    if (!g.no_timings) {
        report["timings"] = timings;
    }
    const std::string text = mpsfuse::dump_canonical(report);
    if (g.report_path.empty()) {
        std::cout << text;
    } else {
        mpsfuse::write_text_file(g.report_path, text);
    }
}

struct LoadedTensor {
    mpsfuse::TensorFile file;
    std::string digest;
};

LoadedTensor load_tensor(const std::string &path) {
    std::string text = mpsfuse::read_text_file(path);
    LoadedTensor t;
    t.digest = mpsfuse::fnv1a_hex(text);
    t.file = mpsfuse::tensor_from_json(mpsfuse::parse_json_text(text, "tensor file '" + path + "'"));
    return t;
}

Json input_json(const std::string &source, const std::string &digest) {
    Json j;
    j["source"] = source;
    j["digest"] = digest;
    return j;
}

std::vector<int> parse_int_list(const std::string &s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty()) {
            throw mpsfuse::InputError("empty entry in integer list '" + s + "'");
        }
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            out.push_back(v);
        } catch (const std::logic_error &) {
            throw mpsfuse::InputError("not an integer: '" + tok + "'");
        }
        if (next == std::string::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

// ----- analyze --------------------------------------------------------------------

int cmd_analyze(const std::string &path, const GlobalOptions &g, const std::vector<std::string> &argv) {
    Timer timer;
    LoadedTensor lt = load_tensor(path);
    Json r = base_report("analyze", argv);
    r["inputs"] = Json::array({input_json(path, lt.digest)});
    mpsfuse::MpsTensor t;
    if (lt.file.simps) {
        r["tensor_kind"] = "simps";
        t = mpsfuse::simps_to_mps(*lt.file.simps);
        if (lt.file.simps->uniform()) {
            Json hd = Json::array();
            for (const auto &e : mpsfuse::hidden_degeneracy_check(*lt.file.simps)) {
                Json x;
                x["v"] = e.v;
                x["spectrum"] = mpsfuse::real_vector_to_json(e.spectrum);
                x["flat"] = e.flat;
                hd.push_back(std::move(x));
            }
            r["hidden_degeneracy"] = std::move(hd);
        }
    } else {
        r["tensor_kind"] = "mps";
        t = *lt.file.mps;
    }
    r["d"] = t.d;
    r["D"] = t.D;
    if (lt.file.simps) {
        // The block-structured MPS generated by a SIMPS need not be block
        // injective; that is reported, not treated as an input error.
        try {
            r["fusibility"] = mpsfuse::fusibility_to_json(mpsfuse::check_fusibility(t));
        } catch (const mpsfuse::NotBlockInjective &e) {
            r["fusibility_error"] = e.what();
        }
    } else {
        r["fusibility"] = mpsfuse::fusibility_to_json(mpsfuse::check_fusibility(t));
    }
    Json tm;
    tm["total_seconds"] = timer.seconds();
    emit_report(r, g, tm);
    return 0;
}

// ----- convert --------------------------------------------------------------------

int cmd_convert(const std::string &path, const std::string &to, const std::string &out_path, const GlobalOptions &g,
                const std::vector<std::string> &argv) {
    Timer timer;
    LoadedTensor lt = load_tensor(path);
    Json r = base_report("convert", argv);
    r["inputs"] = Json::array({input_json(path, lt.digest)});
    mpsfuse::MpsTensor mps;
    mpsfuse::SimpsTensor simps;
    Json converted;
    Json warnings = Json::array();
    if (to == "simps") {
        if (!lt.file.mps) {
            throw mpsfuse::InputError("convert --to simps expects an MPS tensor file");
        }
        mps = *lt.file.mps;
        mpsfuse::SimpsConversion conv = mpsfuse::mps_to_simps(mps);
        simps = conv.s;
        for (const auto &w : conv.warnings) {
            warnings.push_back(w);
        }
        converted = mpsfuse::tensor_to_json(simps);
        r["chi"] = simps.chi;
    } else {
        if (!lt.file.simps) {
            throw mpsfuse::InputError("convert --to mps expects a SIMPS tensor file");
        }
        simps = *lt.file.simps;
        mps = mpsfuse::simps_to_mps(simps);
        converted = mpsfuse::tensor_to_json(mps);
        r["D"] = mps.D;
    }
    Json fid = Json::object();
    for (int N : {4, 5}) {
        fid[std::to_string(N)] =
            mpsfuse::overlap_fidelity(mpsfuse::contract_pbc(mps, N).psi, mpsfuse::contract_simps_pbc(simps, N).psi);
    }
    r["round_trip_pbc_fidelity"] = std::move(fid);
    r["warnings"] = std::move(warnings);
    for (const auto &w : r["warnings"]) {
        std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
    const std::string text = mpsfuse::dump_canonical(converted);
    r["output_digest"] = mpsfuse::fnv1a_hex(text);
    if (out_path.empty()) {
        r["tensor"] = converted;
    } else {
        mpsfuse::write_text_file(out_path, text);
        r["output"] = out_path;
    }
    Json tm;
    tm["total_seconds"] = timer.seconds();
    emit_report(r, g, tm);
    return 0;
}

// ----- fuse -----------------------------------------------------------------------

struct FuseSetup {
    mpsfuse::FusionProtocol protocol;
    std::optional<double> theta;
    Json info;
};

FuseSetup setup_fuse(const std::string &source, int n_blocks, int block_len, const std::string &as,
                     const std::string &closure, bool unitary_step1, Json &inputs) {
    FuseSetup f;
    std::optional<mpsfuse::CatalogEntry> entry;
    std::optional<mpsfuse::MpsTensor> mps;
    std::optional<mpsfuse::SimpsTensor> simps;
    const std::vector<std::string> names = mpsfuse::catalog_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        entry = mpsfuse::catalog_get(source);
        mps = entry->mps;
        if (!entry->symmetry_relations.empty()) {
            simps = entry->simps;
        }
        inputs.push_back(input_json("catalog:" + source, mpsfuse::fnv1a_hex(source)));
    } else if (std::filesystem::exists(source)) {
        LoadedTensor lt = load_tensor(source);
        mps = lt.file.mps;
        if (lt.file.simps) {
            throw mpsfuse::InputError("fuse: SIMPS fusion needs symmetry relations; use a catalog entry name");
        }
        inputs.push_back(input_json(source, lt.digest));
    } else {
        throw mpsfuse::InputError("fuse: '" + source + "' is neither a catalog entry nor a readable file");
    }
    std::string mode = as;
    if (mode.empty()) {
        mode = simps ? "simps" : "mps";
    }
    if (closure != "open" && closure != "pbc") {
        throw mpsfuse::InputError("fuse: --closure must be open or pbc");
    }
    if (mode == "mps") {
        if (!mps) {
            throw mpsfuse::InputError("fuse: no MPS form available");
        }
        if (unitary_step1) {
            throw mpsfuse::InputError("fuse: --unitary-step1 applies to SIMPS fusion only");
        }
        f.protocol = mpsfuse::build_mps_fusion_protocol(
            *mps, n_blocks, block_len, closure == "pbc" ? mpsfuse::Closure::PeriodicPostselect : mpsfuse::Closure::Open);
    } else if (mode == "simps") {
        if (!simps) {
            throw mpsfuse::InputError("fuse: no SIMPS form with symmetry relations available");
        }
        if (closure != "open") {
            throw mpsfuse::InputError("fuse: SIMPS fusion supports open closure only");
        }
        if (entry && entry->cocycle) {
            f.protocol = mpsfuse::build_anomalous_fusion_protocol(*entry->cocycle, n_blocks, block_len);
        } else {
            f.protocol = mpsfuse::build_simps_fusion_protocol(*simps, entry->symmetry_relations, n_blocks, block_len);
        }
        if (unitary_step1) {
            f.protocol = mpsfuse::unitary_step1_variant(f.protocol);
        }
    } else {
        throw mpsfuse::InputError("fuse: --as must be mps or simps");
    }
    if (mps && entry && entry->simps) {
        f.theta = mpsfuse::resource_theta(*mps, *entry->simps);
    }
    Json info;
    info["name"] = f.protocol.name;
    info["representation"] = mode;
    info["qudits"] = f.protocol.dims.size();
    info["n_junctions"] = f.protocol.n_junctions;
    info["measurements"] = f.protocol.measurement_count();
    info["measured_qudits"] = f.protocol.measured_qudit_count();
    Json loc = Json::array();
    for (const auto &t : f.protocol.tables) {
        Json x;
        x["table"] = t.name;
        x["round"] = t.round;
        x["locality"] = mpsfuse::locality_name(t.locality);
        loc.push_back(std::move(x));
    }
    info["correction_tables"] = std::move(loc);
    f.info = std::move(info);
    return f;
}

int cmd_fuse(const std::string &source, int n_blocks, int block_len, const std::string &mode, const std::string &as,
             const std::string &closure, bool unitary_step1, const std::string &csv_path,
             const std::string &protocol_path, const GlobalOptions &g, const std::vector<std::string> &argv) {
    Timer timer;
    Json r = base_report("fuse", argv);
    Json inputs = Json::array();
    FuseSetup f = setup_fuse(source, n_blocks, block_len, as, closure, unitary_step1, inputs);
    r["inputs"] = inputs;
    r["protocol"] = f.info;
    r["mode"] = mode;
    if (f.theta) {
        r["theta"] = *f.theta;
    }
    if (!protocol_path.empty()) {
        mpsfuse::write_text_file(protocol_path, mpsfuse::dump_canonical(mpsfuse::protocol_to_json(f.protocol)));
    }
    const double build_seconds = timer.seconds();
    Timer run_timer;
    if (mode == "enumerate") {
        std::vector<mpsfuse::BranchTrace> br = mpsfuse::enumerate_protocol(f.protocol, g.threads);
        Json rows = Json::array();
        for (const auto &b : br) {
            rows.push_back(mpsfuse::branch_to_json(b));
        }
        r["branches"] = std::move(rows);
        r["summary"] = mpsfuse::summary_to_json(mpsfuse::summarize(br));
        if (!csv_path.empty()) {
            mpsfuse::write_text_file(csv_path, mpsfuse::branches_to_csv(br));
        }
    } else if (mode == "sample") {
        mpsfuse::SampleResult s = mpsfuse::sample_protocol(f.protocol, g.seed, g.shots, g.threads);
        Json hist = Json::array();
        mpsfuse::CsvWriter w({"outcomes", "count", "probability", "fidelity"});
        double min_f = 1;
        for (const auto &[key, count] : s.histogram) {
            Json x;
            x["outcomes"] = key;
            x["count"] = count;
            x["probability"] = s.probabilities.at(key);
            x["fidelity"] = s.fidelities.at(key);
            if (count > 0) {
                min_f = std::min(min_f, s.fidelities.at(key));
            }
            hist.push_back(std::move(x));
            std::string oc;
            for (std::size_t m = 0; m < key.size(); ++m) {
                oc += (m ? " " : "") + std::to_string(key[m]);
            }
            w.row({oc, std::to_string(count), mpsfuse::format_double(s.probabilities.at(key)),
                   mpsfuse::format_double(s.fidelities.at(key))});
        }
        r["seed"] = s.seed;
        r["shots"] = s.shots;
        r["histogram"] = std::move(hist);
        r["max_sigma"] = s.max_sigma;
        r["min_sampled_fidelity"] = min_f;
        if (!csv_path.empty()) {
            mpsfuse::write_text_file(csv_path, w.str());
        }
    } else {
        throw mpsfuse::InputError("fuse: mode must be enumerate or sample");
    }
    Json tm;
    tm["build_seconds"] = build_seconds;
    tm["run_seconds"] = run_timer.seconds();
    emit_report(r, g, tm);
    return 0;
}

// ----- spectrum -------------------------------------------------------------------

int cmd_spectrum(const std::string &path, const std::string &sizes, int cut, const std::string &out_path,
                 const GlobalOptions &g) {
    (void)g;
    LoadedTensor lt = load_tensor(path);
    mpsfuse::MpsTensor t = lt.file.mps ? *lt.file.mps : mpsfuse::simps_to_mps(*lt.file.simps);
    std::vector<int> Ns = parse_int_list(sizes);
    mpsfuse::CMatrix pt;
    mpsfuse::spectral_fixed_projector(t, &pt);
    mpsfuse::RVector pred = mpsfuse::predicted_spectrum(pt);
    mpsfuse::CsvWriter w({"N", "index", "exact", "predicted", "abs_error"});
    for (int N : Ns) {
        if (N < 1) {
            throw mpsfuse::InputError("spectrum: sizes must be positive");
        }
        int c = cut >= 0 ? cut : N / 2;
        if (c > N) {
            throw mpsfuse::InputError("spectrum: cut exceeds N");
        }
        mpsfuse::RVector ex = mpsfuse::entanglement_spectrum_exact(t, N, c);
        const std::size_t n = std::max(ex.size(), pred.size());
        for (std::size_t k = 0; k < n; ++k) {
            double x = k < ex.size() ? ex[k] : 0.0;
            double y = k < pred.size() ? pred[k] : 0.0;
            w.row({std::to_string(N), std::to_string(k), mpsfuse::format_double(x), mpsfuse::format_double(y),
                   mpsfuse::format_double(std::abs(x - y))});
        }
    }
    if (out_path.empty()) {
        std::cout << w.str();
    } else {
        mpsfuse::write_text_file(out_path, w.str());
    }
    return 0;
}

// ----- cocycle --------------------------------------------------------------------

int cmd_cocycle(const std::string &path, const std::string &action, int N, int blocks, const GlobalOptions &g,
                const std::vector<std::string> &argv) {
    Timer timer;
    std::string text = mpsfuse::read_text_file(path);
    mpsfuse::Cocycle c = mpsfuse::cocycle_from_json(mpsfuse::parse_json_text(text, "cocycle file '" + path + "'"));
    Json r = base_report("cocycle", argv);
    r["inputs"] = Json::array({input_json(path, mpsfuse::fnv1a_hex(text))});
    r["action"] = action;
    r["factors"] = c.group.factors;
    mpsfuse::CocycleReport v = mpsfuse::validate_cocycle(c);
    Json val;
    val["unit_modulus"] = v.unit_modulus;
    val["is_cocycle"] = v.is_cocycle;
    val["is_linear_first_arg"] = v.is_linear_first_arg;
    val["declared_linear"] = v.declared_linear;
    if (!v.violation.empty()) {
        val["violation"] = v.violation;
    }
    r["validation"] = val;
    if (action == "validate") {
        if (v.is_cocycle && c.group.order() <= 16) {
            r["nontrivial_class"] = !mpsfuse::is_coboundary(c).has_value();
        }
    } else if (action == "coboundary") {
        if (!v.is_cocycle) {
            throw mpsfuse::InputError("cocycle coboundary: table is not a cocycle");
        }
        std::optional<std::vector<mpsfuse::cplx>> beta = mpsfuse::is_coboundary(c);
        if (beta) {
            r["result"] = "coboundary";
            Json b = Json::array();
            for (int gi = 0; gi < c.group.order(); ++gi) {
                for (int hi = 0; hi < c.group.order(); ++hi) {
                    Json e;
                    e["g"] = c.group.element(gi);
                    e["h"] = c.group.element(hi);
                    e["beta"] = mpsfuse::complex_to_json((*beta)[static_cast<std::size_t>(gi * c.group.order() + hi)]);
                    b.push_back(std::move(e));
                }
            }
            r["beta"] = std::move(b);
        } else {
            r["result"] = "nontrivial class";
        }
    } else if (action == "prepare") {
        if (!v.is_cocycle) {
            throw mpsfuse::InputError("cocycle prepare: table is not a cocycle");
        }
        mpsfuse::FusionProtocol p = mpsfuse::build_anomalous_fusion_protocol(c, blocks, N);
        std::vector<mpsfuse::BranchTrace> br = mpsfuse::enumerate_protocol(p, g.threads);
        r["blocks"] = blocks;
        r["block_len"] = N;
        Json rows = Json::array();
        for (const auto &b : br) {
            rows.push_back(mpsfuse::branch_to_json(b));
        }
        r["branches"] = std::move(rows);
        mpsfuse::RunSummary s = mpsfuse::summarize(br);
        r["summary"] = mpsfuse::summary_to_json(s);
        r["deterministic"] = s.accepted_branches == s.branches && s.min_fidelity >= 1 - 1e-9;
    } else {
        throw mpsfuse::InputError("cocycle: action must be validate, coboundary or prepare");
    }
    Json tm;
    tm["total_seconds"] = timer.seconds();
    emit_report(r, g, tm);
    return 0;
}

// ----- catalog --------------------------------------------------------------------

int cmd_catalog_list() {
    for (const auto &n : mpsfuse::catalog_names()) {
        mpsfuse::CatalogEntry e = mpsfuse::catalog_get(n);
        std::string forms;
        forms += e.mps ? "mps" : "";
        forms += e.simps ? (forms.empty() ? "simps" : ",simps") : "";
        forms += e.cocycle ? ",cocycle" : "";
        std::cout << n << "\t" << forms << "\t" << e.description << "\n";
    }
    return 0;
}

int cmd_catalog_export(const std::string &name, const std::string &as, const std::string &out_path) {
    mpsfuse::CatalogEntry e = mpsfuse::catalog_get(name);
    Json j;
    std::string form = as.empty() ? (e.mps ? "mps" : "simps") : as;
    if (form == "mps") {
        if (!e.mps) {
            throw mpsfuse::InputError("catalog entry '" + name + "' has no MPS form");
        }
        j = mpsfuse::tensor_to_json(*e.mps);
    } else if (form == "simps") {
        if (!e.simps) {
            throw mpsfuse::InputError("catalog entry '" + name + "' has no SIMPS form");
        }
        j = mpsfuse::tensor_to_json(*e.simps);
    } else if (form == "cocycle") {
        if (!e.cocycle) {
            throw mpsfuse::InputError("catalog entry '" + name + "' has no cocycle");
        }
        j = mpsfuse::cocycle_to_json(*e.cocycle);
    } else {
        throw mpsfuse::InputError("catalog export: --as must be mps, simps or cocycle");
    }
    const std::string text = mpsfuse::dump_canonical(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        mpsfuse::write_text_file(out_path, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mpsfuse: fusion protocols for matrix product states"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_option("--max-amplitudes", g.max_amplitudes, "Statevector amplitude cap")->capture_default_str();
    app.add_option("--max-bond", g.max_bond, "Bond dimension cap")->capture_default_str();
    app.add_option("--threads", g.threads, "Branch-enumeration threads")->capture_default_str();
    app.add_option("--seed", g.seed, "Sampling seed")->capture_default_str();
    app.add_option("--shots", g.shots, "Sampling shots")->capture_default_str();
    app.add_option("--report", g.report_path, "Write the JSON report to this file");
    app.add_flag("--no-timings", g.no_timings, "Omit wall-clock timings from reports");

    std::vector<std::string> args(argv, argv + argc);

    std::string tensor_path;
    auto *analyze = app.add_subcommand("analyze", "Fusibility analysis of a tensor file");
    analyze->add_option("tensor", tensor_path, "Tensor file")->required();

    std::string conv_to = "simps";
    std::string out_path;
    auto *convert = app.add_subcommand("convert", "Convert between MPS and SIMPS forms");
    convert->add_option("tensor", tensor_path, "Tensor file")->required();
    convert->add_option("--to", conv_to, "Target form")->check(CLI::IsMember({"simps", "mps"}))->capture_default_str();
    convert->add_option("-o,--output", out_path, "Output tensor file");

    std::string fuse_source;
    int n_blocks = 2;
    int block_len = 2;
    std::string fuse_mode = "enumerate";
    std::string fuse_as;
    std::string closure = "open";
    bool unitary_step1 = false;
    std::string csv_path;
    std::string protocol_path;
    auto *fuse = app.add_subcommand("fuse", "Build and run a fusion protocol");
    fuse->add_option("source", fuse_source, "Catalog entry name or MPS tensor file")->required();
    fuse->add_option("n_blocks", n_blocks, "Number of seed blocks")->required();
    fuse->add_option("block_len", block_len, "Sites per block")->required();
    fuse->add_option("mode", fuse_mode, "enumerate or sample")->capture_default_str();
    fuse->add_option("--as", fuse_as, "Representation: mps or simps");
    fuse->add_option("--closure", closure, "open or pbc (MPS fusion)")->capture_default_str();
    fuse->add_flag("--unitary-step1", unitary_step1, "Replace step-1 measurements by controlled gates");
    fuse->add_option("--csv", csv_path, "Write the branch table as CSV");
    fuse->add_option("--protocol-out", protocol_path, "Write the protocol file");

    std::string sizes = "4,6,8";
    int cut = -1;
    auto *spectrum = app.add_subcommand("spectrum", "Exact OBC entanglement spectra vs prediction (CSV)");
    spectrum->add_option("tensor", tensor_path, "Tensor file")->required();
    spectrum->add_option("--sizes", sizes, "Comma-separated chain lengths")->capture_default_str();
    spectrum->add_option("--cut", cut, "Cut position (default N/2)");
    spectrum->add_option("-o,--output", out_path, "Output CSV file");

    std::string cocycle_path;
    std::string action;
    int coc_N = 2;
    int coc_blocks = 2;
    auto *cocycle = app.add_subcommand("cocycle", "Validate, solve or prepare from a cocycle file");
    cocycle->add_option("cocycle", cocycle_path, "Cocycle file")->required();
    cocycle->add_option("action", action, "validate, coboundary or prepare")
        ->required()
        ->check(CLI::IsMember({"validate", "coboundary", "prepare"}));
    cocycle->add_option("--N", coc_N, "Sites per block for prepare")->capture_default_str();
    cocycle->add_option("--blocks", coc_blocks, "Number of blocks for prepare")->capture_default_str();

    std::string cat_name;
    std::string cat_as;
    auto *catalog = app.add_subcommand("catalog", "Built-in tensors");
    catalog->require_subcommand(1);
    auto *cat_list = catalog->add_subcommand("list", "List catalog entries");
    auto *cat_export = catalog->add_subcommand("export", "Export an entry");
    cat_export->add_option("name", cat_name, "Entry name")->required();
    cat_export->add_option("--as", cat_as, "mps, simps or cocycle");
    cat_export->add_option("-o,--output", out_path, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (g.max_bond < 1 || g.threads < 1 || g.max_amplitudes < 1) {
            throw mpsfuse::InputError("--max-bond, --threads and --max-amplitudes must be positive");
        }
        mpsfuse::limits().max_amplitudes = g.max_amplitudes;
        mpsfuse::limits().max_bond = g.max_bond;
        mpsfuse::limits().threads = g.threads;
        if (*analyze) {
            return cmd_analyze(tensor_path, g, args);
        }
        if (*convert) {
            return cmd_convert(tensor_path, conv_to, out_path, g, args);
        }
        if (*fuse) {
            return cmd_fuse(fuse_source, n_blocks, block_len, fuse_mode, fuse_as, closure, unitary_step1, csv_path,
                            protocol_path, g, args);
        }
        if (*spectrum) {
            return cmd_spectrum(tensor_path, sizes, cut, out_path, g);
        }
        if (*cocycle) {
            return cmd_cocycle(cocycle_path, action, coc_N, coc_blocks, g, args);
        }
        if (*cat_list) {
            return cmd_catalog_list();
        }
        if (*cat_export) {
            return cmd_catalog_export(cat_name, cat_as, out_path);
        }
    } catch (const mpsfuse::InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mpsfuse::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
