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

#ifndef MPSFUSE_IO_HPP
#define MPSFUSE_IO_HPP

// Plain-text (JSON) files for tensors, cocycles and protocols, with complex
// numbers stored as decimal (re, im) pairs, plus helpers for reports and CSV
// tables. Canonical files are those produced by the serializers: parsing and
// re-serializing them reproduces the same bytes.

#include "mpsfuse/anomaly.hpp"
#include "mpsfuse/fusion.hpp"
#include "mpsfuse/group.hpp"
#include "mpsfuse/mps.hpp"
#include "mpsfuse/simps.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mpsfuse {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// ----- Scalars and matrices ---------------------------------------------------

namespace detail {

[[noreturn]] inline void parse_fail(const std::string &what, const std::string &msg) {
    throw InputError(what + ": " + msg);
}

inline const Json &field(const Json &j, const char *key, const std::string &what) {
    if (!j.is_object() || !j.contains(key)) {
        parse_fail(what, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline int int_field(const Json &j, const char *key, const std::string &what) {
    const Json &v = field(j, key, what);
    if (!v.is_number_integer()) {
        parse_fail(what, std::string("field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

inline std::vector<int> int_list(const Json &v, const std::string &what) {
    if (!v.is_array()) {
        parse_fail(what, "expected a list of integers");
    }
    std::vector<int> out;
    for (const auto &x : v) {
        if (!x.is_number_integer()) {
            parse_fail(what, "expected a list of integers");
        }
        out.push_back(x.get<int>());
    }
    return out;
}

}  // namespace detail

inline Json complex_to_json(cplx z) {
    // Signed zeros are normalized so that canonical files are stable.
    double re = z.real() == 0.0 ? 0.0 : z.real();
    double im = z.imag() == 0.0 ? 0.0 : z.imag();
    return Json::array({re, im});
}

inline cplx complex_from_json(const Json &j, const std::string &what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        detail::parse_fail(what, "complex entries must be [re, im] pairs");
    }
    cplx z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        detail::parse_fail(what, "non-finite complex entry");
    }
    return z;
}

/// Row-major list of rows, each a list of [re, im] pairs.
inline Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const Json &j, const std::string &what) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        detail::parse_fail(what, "matrix must be a non-empty list of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    if (cols == 0) {
        detail::parse_fail(what, "matrix rows must be non-empty");
    }
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            detail::parse_fail(what, "ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], what);
        }
    }
    return m;
}

inline Json vector_to_json(const CVector &v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_to_json(v(k)));
    }
    return out;
}

inline CVector vector_from_json(const Json &j, const std::string &what) {
    if (!j.is_array()) {
        detail::parse_fail(what, "vector must be a list of [re, im] pairs");
    }
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], what);
    }
    return v;
}

inline Json real_vector_to_json(const RVector &v) {
    Json out = Json::array();
    for (double x : v) {
        out.push_back(x == 0.0 ? 0.0 : x);
    }
    return out;
}

// ----- Tensor files -----------------------------------------------------------

/// Contents of a tensor file: exactly one of the two members is set.
struct TensorFile {
    std::optional<MpsTensor> mps;
    std::optional<SimpsTensor> simps;
};

inline Json tensor_to_json(const MpsTensor &t) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "mps";
    j["d"] = t.d;
    j["D"] = t.D;
    if (t.blocks) {
        j["blocks"] = *t.blocks;
    }
    Json mats = Json::array();
    for (const auto &m : t.A) {
        mats.push_back(matrix_to_json(m));
    }
    j["matrices"] = std::move(mats);
    return j;
}

inline Json tensor_to_json(const SimpsTensor &s) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "simps";
    j["d"] = s.d;
    j["chi"] = s.chi;
    Json mats = Json::array();
    for (const auto &m : s.B) {
        mats.push_back(matrix_to_json(m));
    }
    j["matrices"] = std::move(mats);
    return j;
}

inline TensorFile tensor_from_json(const Json &j) {
    const std::string what = "tensor file";
    if (!j.is_object()) {
        detail::parse_fail(what, "top level must be an object");
    }
    if (detail::int_field(j, "format_version", what) != kFormatVersion) {
        detail::parse_fail(what, "unsupported format_version");
    }
    const Json &kind = detail::field(j, "kind", what);
    if (!kind.is_string()) {
        detail::parse_fail(what, "kind must be a string");
    }
    const int d = detail::int_field(j, "d", what);
    if (d < 1) {
        detail::parse_fail(what, "d must be positive");
    }
    const Json &mats = detail::field(j, "matrices", what);
    if (!mats.is_array()) {
        detail::parse_fail(what, "matrices must be a list");
    }
    std::vector<CMatrix> ms;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        ms.push_back(matrix_from_json(mats[k], what + " matrix " + std::to_string(k)));
    }
    TensorFile out;
    if (kind == "mps") {
        const int D = detail::int_field(j, "D", what);
        if (static_cast<int>(ms.size()) != d) {
            detail::parse_fail(what, "expected d matrices");
        }
        for (const auto &m : ms) {
            if (m.rows() != D || m.cols() != D) {
                detail::parse_fail(what, "matrix shape does not match D");
            }
        }
        std::optional<std::vector<int>> blocks;
        if (j.contains("blocks")) {
            blocks = detail::int_list(j.at("blocks"), what + " blocks");
        }
        out.mps = make_mps(std::move(ms), blocks);
    } else if (kind == "simps") {
        std::vector<int> chi = detail::int_list(detail::field(j, "chi", what), what + " chi");
        if (static_cast<int>(chi.size()) != d) {
            detail::parse_fail(what, "chi must list one bond dimension per physical value");
        }
        if (static_cast<int>(ms.size()) != d * d) {
            detail::parse_fail(what, "expected d^2 matrices");
        }
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                const CMatrix &m = ms[static_cast<std::size_t>(a * d + b)];
                if (m.rows() != chi[static_cast<std::size_t>(a)] || m.cols() != chi[static_cast<std::size_t>(b)]) {
                    detail::parse_fail(what, "matrix shape does not match the chi profile");
                }
            }
        }
        SimpsTensor s;
        s.d = d;
        s.chi = chi;
        s.B = std::move(ms);
        s.validate();
        out.simps = std::move(s);
    } else {
        detail::parse_fail(what, "kind must be 'mps' or 'simps'");
    }
    return out;
}

// ----- Cocycle files ----------------------------------------------------------

inline Json group_element_json(const GroupSpec &G, int idx) {
    return G.element(idx);
}

inline int group_element_from_json(const GroupSpec &G, const Json &j, const std::string &what) {
    std::vector<int> t = detail::int_list(j, what);
    if (t.size() != G.factors.size()) {
        detail::parse_fail(what, "group element has the wrong number of components");
    }
    for (std::size_t m = 0; m < t.size(); ++m) {
        if (t[m] < 0 || t[m] >= G.factors[m]) {
            detail::parse_fail(what, "group element component out of range");
        }
    }
    return G.index(t);
}

/// Lists every entry different from 1 as (g, h, k) -> num/den of 2π, with
/// den dividing exp(G)²·|G|.
inline Json cocycle_to_json(const Cocycle &c) {
    c.check_shape();
    const GroupSpec &G = c.group;
    const int n = G.order();
    const long long K = static_cast<long long>(G.exponent()) * G.exponent() * n;
    Json entries = Json::array();
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            for (int k = 0; k < n; ++k) {
                cplx w = c(g, h, k);
                double turns = std::arg(w) / (2 * kPi);
                long long num = std::llround(turns * static_cast<double>(K));
                if (std::abs(w - std::polar(1.0, 2 * kPi * static_cast<double>(num) / static_cast<double>(K))) >
                    1e-9) {
                    throw InputError("cocycle_to_json: entry is not a root of unity of order dividing " +
                                     std::to_string(K));
                }
                num = ((num % K) + K) % K;
                if (num == 0) {
                    continue;
                }
                long long gcd = std::gcd(num, K);
                Json e;
                e["g"] = group_element_json(G, g);
                e["h"] = group_element_json(G, h);
                e["k"] = group_element_json(G, k);
                e["num"] = num / gcd;
                e["den"] = K / gcd;
                entries.push_back(std::move(e));
            }
        }
    }
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "cocycle";
    j["factors"] = G.factors;
    j["linear"] = c.declared_linear;
    j["entries"] = std::move(entries);
    return j;
}

inline Cocycle cocycle_from_json(const Json &j) {
    const std::string what = "cocycle file";
    if (!j.is_object()) {
        detail::parse_fail(what, "top level must be an object");
    }
    if (detail::int_field(j, "format_version", what) != kFormatVersion) {
        detail::parse_fail(what, "unsupported format_version");
    }
    if (detail::field(j, "kind", what) != "cocycle") {
        detail::parse_fail(what, "kind must be 'cocycle'");
    }
    GroupSpec G;
    G.factors = detail::int_list(detail::field(j, "factors", what), what + " factors");
    G.validate();
    bool linear = false;
    if (j.contains("linear")) {
        if (!j.at("linear").is_boolean()) {
            detail::parse_fail(what, "linear must be a boolean");
        }
        linear = j.at("linear").get<bool>();
    }
    const Json &entries = detail::field(j, "entries", what);
    if (!entries.is_array()) {
        detail::parse_fail(what, "entries must be a list");
    }
    std::vector<PhaseEntry> pe;
    for (const auto &e : entries) {
        PhaseEntry p;
        p.g = group_element_from_json(G, detail::field(e, "g", what), what + " entry g");
        p.h = group_element_from_json(G, detail::field(e, "h", what), what + " entry h");
        p.k = group_element_from_json(G, detail::field(e, "k", what), what + " entry k");
        const Json &num = detail::field(e, "num", what);
        const Json &den = detail::field(e, "den", what);
        if (!num.is_number_integer() || !den.is_number_integer() || den.get<long long>() <= 0) {
            detail::parse_fail(what, "num/den must be integers with den > 0");
        }
        p.num = num.get<long long>();
        p.den = den.get<long long>();
        pe.push_back(p);
    }
    return cocycle_from_phases(G, pe, linear);
}

// ----- Protocol files ---------------------------------------------------------

inline std::optional<StepKind> step_kind_from_name(const std::string &s) {
    for (StepKind k : {StepKind::PrepareBlock, StepKind::ApplyGate, StepKind::Measure, StepKind::Correct}) {
        if (s == step_kind_name(k)) {
            return k;
        }
    }
    return std::nullopt;
}

inline Json protocol_to_json(const FusionProtocol &p) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "protocol";
    j["name"] = p.name;
    j["dims"] = p.dims;
    Json roles = Json::array();
    for (QuditRole r : p.roles) {
        roles.push_back(qudit_role_name(r));
    }
    j["roles"] = std::move(roles);
    j["bypassed"] = p.bypassed;
    j["n_junctions"] = p.n_junctions;
    Json steps = Json::array();
    for (const auto &s : p.steps) {
        Json e;
        e["kind"] = step_kind_name(s.kind);
        e["label"] = s.label;
        e["round"] = s.round;
        e["targets"] = s.targets;
        switch (s.kind) {
            case StepKind::PrepareBlock:
                e["state"] = vector_to_json(s.state);
                break;
            case StepKind::ApplyGate:
                e["matrix"] = matrix_to_json(s.matrix);
                break;
            case StepKind::Measure: {
                e["measurement"] = s.measurement;
                e["basis"] = matrix_to_json(s.matrix);
                Json bp = Json::array();
                for (const auto &b : s.byproducts) {
                    bp.push_back(matrix_to_json(b));
                }
                e["byproducts"] = std::move(bp);
                break;
            }
            case StepKind::Correct:
                e["table"] = s.table;
                break;
        }
        steps.push_back(std::move(e));
    }
    j["steps"] = std::move(steps);
    Json tables = Json::array();
    for (const auto &t : p.tables) {
        Json e;
        e["name"] = t.name;
        e["round"] = t.round;
        e["locality"] = locality_name(t.locality);
        e["depends_on"] = t.depends_on;
        Json entries = Json::array();
        for (const auto &[key, entry] : t.entries) {
            Json x;
            x["outcomes"] = key;
            x["accept"] = entry.accept;
            Json ops = Json::array();
            for (const auto &op : entry.ops) {
                Json o;
                o["targets"] = op.targets;
                o["matrix"] = matrix_to_json(op.matrix);
                ops.push_back(std::move(o));
            }
            x["ops"] = std::move(ops);
            entries.push_back(std::move(x));
        }
        e["entries"] = std::move(entries);
        tables.push_back(std::move(e));
    }
    j["tables"] = std::move(tables);
    j["target"] = vector_to_json(p.target);
    return j;
}

inline FusionProtocol protocol_from_json(const Json &j) {
    const std::string what = "protocol file";
    if (!j.is_object()) {
        detail::parse_fail(what, "top level must be an object");
    }
    if (detail::int_field(j, "format_version", what) != kFormatVersion) {
        detail::parse_fail(what, "unsupported format_version");
    }
    if (detail::field(j, "kind", what) != "protocol") {
        detail::parse_fail(what, "kind must be 'protocol'");
    }
    FusionProtocol p;
    const Json &name = detail::field(j, "name", what);
    p.name = name.is_string() ? name.get<std::string>() : "";
    p.dims = detail::int_list(detail::field(j, "dims", what), what + " dims");
    for (const auto &r : detail::field(j, "roles", what)) {
        bool found = false;
        for (QuditRole x : {QuditRole::Bulk, QuditRole::Boundary, QuditRole::Ancilla}) {
            if (r.is_string() && r.get<std::string>() == qudit_role_name(x)) {
                p.roles.push_back(x);
                found = true;
            }
        }
        if (!found) {
            detail::parse_fail(what, "unknown qudit role");
        }
    }
    p.bypassed = detail::int_list(detail::field(j, "bypassed", what), what + " bypassed");
    p.n_junctions = detail::int_field(j, "n_junctions", what);
    for (const auto &e : detail::field(j, "steps", what)) {
        ProtocolStep s;
        const Json &k = detail::field(e, "kind", what);
        std::optional<StepKind> kind = k.is_string() ? step_kind_from_name(k.get<std::string>()) : std::nullopt;
        if (!kind) {
            detail::parse_fail(what, "unknown step kind");
        }
        s.kind = *kind;
        if (e.contains("label") && e.at("label").is_string()) {
            s.label = e.at("label").get<std::string>();
        }
        s.round = detail::int_field(e, "round", what);
        s.targets = detail::int_list(detail::field(e, "targets", what), what + " targets");
        switch (s.kind) {
            case StepKind::PrepareBlock:
                s.state = vector_from_json(detail::field(e, "state", what), what + " state");
                break;
            case StepKind::ApplyGate:
                s.matrix = matrix_from_json(detail::field(e, "matrix", what), what + " gate");
                break;
            case StepKind::Measure:
                s.measurement = detail::int_field(e, "measurement", what);
                s.matrix = matrix_from_json(detail::field(e, "basis", what), what + " basis");
                for (const auto &b : detail::field(e, "byproducts", what)) {
                    s.byproducts.push_back(matrix_from_json(b, what + " byproduct"));
                }
                break;
            case StepKind::Correct:
                s.table = detail::int_field(e, "table", what);
                break;
        }
        p.steps.push_back(std::move(s));
    }
    for (const auto &e : detail::field(j, "tables", what)) {
        CorrectionTable t;
        const Json &nm = detail::field(e, "name", what);
        t.name = nm.is_string() ? nm.get<std::string>() : "";
        t.round = detail::int_field(e, "round", what);
        const Json &loc = detail::field(e, "locality", what);
        if (loc == locality_name(Locality::LocalFeedforward)) {
            t.locality = Locality::LocalFeedforward;
        } else if (loc == locality_name(Locality::GlobalFeedforward)) {
            t.locality = Locality::GlobalFeedforward;
        } else {
            detail::parse_fail(what, "unknown locality");
        }
        t.depends_on = detail::int_list(detail::field(e, "depends_on", what), what + " depends_on");
        for (const auto &x : detail::field(e, "entries", what)) {
            CorrectionEntry ce;
            const Json &acc = detail::field(x, "accept", what);
            if (!acc.is_boolean()) {
                detail::parse_fail(what, "accept must be a boolean");
            }
            ce.accept = acc.get<bool>();
            for (const auto &o : detail::field(x, "ops", what)) {
                GateOp op;
                op.targets = detail::int_list(detail::field(o, "targets", what), what + " op targets");
                op.matrix = matrix_from_json(detail::field(o, "matrix", what), what + " op");
                ce.ops.push_back(std::move(op));
            }
            t.entries[detail::int_list(detail::field(x, "outcomes", what), what + " outcomes")] = std::move(ce);
        }
        p.tables.push_back(std::move(t));
    }
    p.target = vector_from_json(detail::field(j, "target", what), what + " target");
    p.validate();
    return p;
}

// ----- Text helpers -----------------------------------------------------------

/// Canonical text form: two-space indentation, sorted keys, trailing newline.
inline std::string dump_canonical(const Json &j) {
    return j.dump(2) + "\n";
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw InputError("error while writing '" + path + "'");
    }
}

inline Json parse_json_text(const std::string &text, const std::string &what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw InputError(what + ": parse error: " + e.what());
    }
}

/// 64-bit FNV-1a digest, hex encoded (identifies inputs in reports).
inline std::string fnv1a_hex(const std::string &data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Fixed-format decimal used in CSV tables and text reports.
inline std::string format_double(double x) {
    if (x == 0.0) {
        x = 0.0;  // drops the sign of negative zero
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Minimal RFC 4180 CSV writer.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
        row(header);
    }

    void row(const std::vector<std::string> &fields) {
        if (fields.size() != columns_) {
            throw InputError("CsvWriter: row has the wrong number of fields");
        }
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) {
                out_ << ',';
            }
            out_ << escape(fields[k]);
        }
        out_ << '\n';
    }

    std::string str() const {
        return out_.str();
    }

    static std::string escape(const std::string &s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) {
            return s;
        }
        std::string o = "\"";
        for (char c : s) {
            if (c == '"') {
                o += '"';
            }
            o += c;
        }
        return o + "\"";
    }

  private:
    std::size_t columns_;
    std::ostringstream out_;
};

// ----- Report fragments ---------------------------------------------------------

inline Json fusibility_to_json(const FusibilityReport &r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    j["pi_tilde_spectrum"] = real_vector_to_json(r.spectrum);
    j["block_sizes"] = r.block_sizes;
    j["flat_spectrum"] = r.flat_spectrum;
    j["equal_blocks"] = r.equal_blocks;
    j["spectral_gap"] = r.spectral_gap;
    Json pb = Json::array();
    for (const auto &pp : r.pushable_basis) {
        Json e;
        e["index"] = pp.index;
        e["V"] = matrix_to_json(pp.V);
        e["u"] = matrix_to_json(pp.u);
        pb.push_back(std::move(e));
    }
    j["pushable_basis"] = std::move(pb);
    if (r.obstruction_witness) {
        Json w;
        w["index"] = r.obstruction_index;
        w["V"] = matrix_to_json(*r.obstruction_witness);
        w["residual"] = r.obstruction_residual;
        j["obstruction"] = std::move(w);
    }
    return j;
}

inline Json branch_to_json(const BranchTrace &t) {
    Json j;
    j["outcomes"] = t.outcomes;
    j["probability"] = t.probability;
    j["fidelity"] = t.fidelity;
    j["accepted"] = t.accepted;
    j["measured_qudits"] = t.measured_qudits;
    j["bypassed_purity"] = t.bypassed_purity;
    return j;
}

inline Json summary_to_json(const RunSummary &s) {
    Json j;
    j["branches"] = s.branches;
    j["accepted_branches"] = s.accepted_branches;
    j["total_probability"] = s.total_probability;
    j["accepted_probability"] = s.accepted_probability;
    j["min_fidelity"] = s.min_fidelity;
    j["min_bypassed_purity"] = s.min_bypassed_purity;
    return j;
}

inline std::string branches_to_csv(const std::vector<BranchTrace> &br) {
    CsvWriter w({"branch", "outcomes", "probability", "fidelity", "accepted", "bypassed_purity"});
    for (std::size_t k = 0; k < br.size(); ++k) {
        std::string oc;
        for (std::size_t m = 0; m < br[k].outcomes.size(); ++m) {
            oc += (m ? " " : "") + std::to_string(br[k].outcomes[m]);
        }
        w.row({std::to_string(k), oc, format_double(br[k].probability), format_double(br[k].fidelity),
               br[k].accepted ? "1" : "0", format_double(br[k].bypassed_purity)});
    }
    return w.str();
}

}  // namespace mpsfuse

#endif  // MPSFUSE_IO_HPP
