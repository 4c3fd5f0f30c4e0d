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

#ifndef MPSFUSE_FUSION_HPP
#define MPSFUSE_FUSION_HPP

// Declarative measurement-and-feedforward protocols, their exhaustive
// branch-by-branch execution, and builders for MPS fusion (Bell measurement
// on virtual legs plus push-through corrections) and two-step SIMPS fusion
// (physical-index merge, then virtual-leg fusion).

#include "mpsfuse/group.hpp"
#include "mpsfuse/mps.hpp"
#include "mpsfuse/qudit.hpp"
#include "mpsfuse/simps.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mpsfuse {

enum class StepKind { PrepareBlock, ApplyGate, Measure, Correct };

inline const char *step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::PrepareBlock:
            return "prepare";
        case StepKind::ApplyGate:
            return "gate";
        case StepKind::Measure:
            return "measure";
        case StepKind::Correct:
            return "correct";
    }
    return "?";
}

enum class Locality { LocalFeedforward, GlobalFeedforward };

inline const char *locality_name(Locality l) {
    return l == Locality::LocalFeedforward ? "local-feedforward" : "global-feedforward";
}

struct GateOp {
    std::vector<int> targets;
    CMatrix matrix;
};

struct CorrectionEntry {
    std::vector<GateOp> ops;
    /// False marks a postselected-away outcome.
    bool accept = true;
};

/// Maps the outcomes of the measurements in `depends_on` (in that order) to
/// a correction circuit.
struct CorrectionTable {
    std::string name;
    int round = 1;
    Locality locality = Locality::LocalFeedforward;
    std::vector<int> depends_on;
    std::map<std::vector<int>, CorrectionEntry> entries;
};

struct ProtocolStep {
    StepKind kind = StepKind::ApplyGate;
    std::vector<int> targets;
    /// Gate unitary, or measurement basis (one basis vector per column).
    CMatrix matrix;
    /// Injected block state (PrepareBlock).
    CVector state;
    /// Correction table index (Correct).
    int table = -1;
    /// Measurement id (Measure).
    int measurement = -1;
    int round = 0;
    std::string label;
    /// Optional byproduct operator per outcome (Measure).
    std::vector<CMatrix> byproducts;
};

struct FusionProtocol {
    std::string name;
    std::vector<int> dims;
    std::vector<QuditRole> roles;
    std::vector<ProtocolStep> steps;
    std::vector<CorrectionTable> tables;
    /// Target state over the whole register (measured qudits in |0⟩).
    CVector target;
    /// Qudits traced out before comparing with the target (unitary variants).
    std::vector<int> bypassed;
    int n_junctions = 0;

    int measurement_count() const {
        int n = 0;
        for (const auto &s : steps) {
            if (s.kind == StepKind::Measure) {
                n = std::max(n, s.measurement + 1);
            }
        }
        return n;
    }

    /// Structural validation including totality of every correction table.
    void validate() const {
        if (roles.size() != dims.size()) {
            throw InputError("protocol: one role per qudit is required");
        }
        std::size_t total = dims_product(dims);
        check_amplitude_cap(static_cast<double>(total), "protocol register");
        if (static_cast<std::size_t>(target.size()) != total || std::abs(target.norm() - 1) > 1e-9) {
            throw InputError("protocol: target state must be a normalized register state");
        }
        auto tdim = [&](const std::vector<int> &t) {
            int d = 1;
            for (int q : t) {
                if (q < 0 || q >= static_cast<int>(dims.size())) {
                    throw InputError("protocol: qudit index out of range");
                }
                d *= dims[static_cast<std::size_t>(q)];
            }
            return d;
        };
        std::map<int, int> radix;
        for (std::size_t k = 0; k < steps.size(); ++k) {
            const ProtocolStep &s = steps[k];
            switch (s.kind) {
                case StepKind::PrepareBlock:
                    if (s.state.size() != tdim(s.targets)) {
                        throw InputError("protocol step " + std::to_string(k) + ": block state dimension mismatch");
                    }
                    break;
                case StepKind::ApplyGate:
                    if (s.matrix.rows() != tdim(s.targets) || !is_unitary(s.matrix)) {
                        throw InputError("protocol step " + std::to_string(k) + ": gate must be a unitary on its targets");
                    }
                    break;
                case StepKind::Measure:
                    if (s.matrix.rows() != tdim(s.targets) || !is_orthonormal_basis(s.matrix)) {
                        throw InputError("protocol step " + std::to_string(k) + ": measurement basis not orthonormal");
                    }
                    if (s.measurement < 0 || radix.count(s.measurement)) {
                        throw InputError("protocol step " + std::to_string(k) + ": measurement ids must be unique");
                    }
                    radix[s.measurement] = static_cast<int>(s.matrix.cols());
                    break;
                case StepKind::Correct: {
                    if (s.table < 0 || s.table >= static_cast<int>(tables.size())) {
                        throw InputError("protocol step " + std::to_string(k) + ": unknown correction table");
                    }
                    const CorrectionTable &t = tables[static_cast<std::size_t>(s.table)];
                    std::vector<int> r;
                    for (int m : t.depends_on) {
                        if (!radix.count(m)) {
                            throw InputError("correction table '" + t.name + "' depends on a later measurement");
                        }
                        r.push_back(radix[m]);
                    }
                    // Totality: every outcome tuple has an entry.
                    std::vector<int> key(r.size(), 0);
                    while (true) {
                        auto it = t.entries.find(key);
                        if (it == t.entries.end()) {
                            throw InputError("correction table '" + t.name + "' is missing an outcome entry");
                        }
                        for (const GateOp &op : it->second.ops) {
                            if (op.matrix.rows() != tdim(op.targets) || !is_unitary(op.matrix)) {
                                throw InputError("correction table '" + t.name + "': correction is not a unitary on its targets");
                            }
                        }
                        std::size_t p = 0;
                        while (p < key.size() && ++key[p] == r[p]) {
                            key[p] = 0;
                            ++p;
                        }
                        if (p == key.size()) {
                            break;
                        }
                    }
                    break;
                }
            }
        }
    }

    /// Number of qudits measured per junction, counted from the steps.
    int measured_qudit_count() const {
        int n = 0;
        for (const auto &s : steps) {
            if (s.kind == StepKind::Measure) {
                n += static_cast<int>(s.targets.size());
            }
        }
        return n;
    }
};

struct BranchTrace {
    /// Outcome per measurement id (−1 when the measurement did not run).
    std::vector<int> outcomes;
    double probability = 1;
    double fidelity = 0;
    /// Phase of ⟨target|out⟩ (diagnostic only).
    double phase = 0;
    bool accepted = true;
    std::vector<CMatrix> byproducts;
    int measured_qudits = 0;
    /// Purity of the bypassed qudits (1 when there are none).
    double bypassed_purity = 1;
    CVector final_state;
};

struct RunSummary {
    std::size_t branches = 0;
    std::size_t accepted_branches = 0;
    double total_probability = 0;
    double accepted_probability = 0;
    double min_fidelity = 1;
    double min_bypassed_purity = 1;
};

namespace detail {

inline double target_fidelity(const FusionProtocol &p, const CVector &psi, double *purity_out, double *phase) {
    if (p.bypassed.empty()) {
        cplx ip = p.target.dot(psi);
        *purity_out = 1;
        *phase = std::arg(ip);
        return std::abs(ip) / (p.target.norm() * psi.norm());
    }
    // Reorder to (rest, bypassed), then F = ‖M† t_rest‖ with M = ψ as a
    // (rest × bypassed) matrix and t_rest the target with bypassed = 0.
    std::vector<int> perm;
    std::vector<bool> byp(p.dims.size(), false);
    for (int q : p.bypassed) {
        byp[static_cast<std::size_t>(q)] = true;
    }
    for (std::size_t q = 0; q < p.dims.size(); ++q) {
        if (!byp[q]) {
            perm.push_back(static_cast<int>(q));
        }
    }
    std::size_t bdim = 1;
    for (int q : p.bypassed) {
        perm.push_back(q);
        bdim *= static_cast<std::size_t>(p.dims[static_cast<std::size_t>(q)]);
    }
    CVector ps = permute_factors(psi, p.dims, perm);
    CVector ts = permute_factors(p.target, p.dims, perm);
    const auto rest = static_cast<Eigen::Index>(static_cast<std::size_t>(ps.size()) / bdim);
    const auto bd = static_cast<Eigen::Index>(bdim);
    CMatrix M(rest, bd);
    CVector t(rest);
    for (Eigen::Index r = 0; r < rest; ++r) {
        for (Eigen::Index c = 0; c < bd; ++c) {
            M(r, c) = ps(r * bd + c);
        }
        t(r) = ts(r * bd);
    }
    CMatrix rho_b = M.transpose() * M.conjugate();
    *purity_out = purity(rho_b);
    CVector proj = M.adjoint() * t;
    *phase = 0;
    return proj.norm() / t.norm();
}

inline void run_steps(const FusionProtocol &p, std::size_t from, QuditRegister reg, BranchTrace trace,
                      std::vector<BranchTrace> &out, bool keep_states) {
    for (std::size_t k = from; k < p.steps.size(); ++k) {
        const ProtocolStep &s = p.steps[k];
        switch (s.kind) {
            case StepKind::PrepareBlock:
                reg.inject(s.targets, s.state);
                break;
            case StepKind::ApplyGate:
                reg.apply_gate(s.targets, s.matrix);
                break;
            case StepKind::Correct: {
                const CorrectionTable &t = p.tables[static_cast<std::size_t>(s.table)];
                std::vector<int> key;
                for (int m : t.depends_on) {
                    key.push_back(trace.outcomes[static_cast<std::size_t>(m)]);
                }
                auto it = t.entries.find(key);
                if (it == t.entries.end()) {
                    throw InputError("missing correction entry in table '" + t.name + "'");
                }
                if (!it->second.accept) {
                    trace.accepted = false;
                    trace.fidelity = 0;
                    if (keep_states) {
                        trace.final_state = reg.amplitudes();
                    }
                    out.push_back(std::move(trace));
                    return;
                }
                for (const GateOp &op : it->second.ops) {
                    reg.apply_gate(op.targets, op.matrix);
                }
                break;
            }
            case StepKind::Measure: {
                std::vector<MeasurementBranch> br = reg.measure(s.targets, s.matrix);
                for (auto &b : br) {
                    QuditRegister r2 = reg;
                    r2.collapse_to(b);
                    BranchTrace t2 = trace;
                    t2.outcomes[static_cast<std::size_t>(s.measurement)] = b.outcome;
                    t2.probability *= b.probability;
                    t2.measured_qudits += static_cast<int>(s.targets.size());
                    if (!s.byproducts.empty()) {
                        t2.byproducts.push_back(s.byproducts[static_cast<std::size_t>(b.outcome)]);
                    }
                    run_steps(p, k + 1, std::move(r2), std::move(t2), out, keep_states);
                }
                return;
            }
        }
    }
    trace.fidelity = target_fidelity(p, reg.amplitudes(), &trace.bypassed_purity, &trace.phase);
    if (keep_states) {
        trace.final_state = reg.amplitudes();
    }
    out.push_back(std::move(trace));
}

}  // namespace detail

/// Executes every measurement branch (depth-first, outcomes in increasing
/// order). With threads > 1 the branches of the first measurement run
/// concurrently on private register copies; results are merged in outcome
/// order, so the output does not depend on the thread count. Final states
/// are stored only with keep_states.
inline std::vector<BranchTrace> enumerate_protocol(const FusionProtocol &p, int threads = 0,
                                                   bool keep_states = false) {
    p.validate();
    if (threads <= 0) {
        threads = std::max(1, limits().threads.load());
    }
    QuditRegister reg(p.dims, p.roles);
    BranchTrace root;
    root.outcomes.assign(static_cast<std::size_t>(p.measurement_count()), -1);
    std::size_t k = 0;
    for (; k < p.steps.size() && p.steps[k].kind != StepKind::Measure; ++k) {
        const ProtocolStep &s = p.steps[k];
        if (s.kind == StepKind::PrepareBlock) {
            reg.inject(s.targets, s.state);
        } else if (s.kind == StepKind::ApplyGate) {
            reg.apply_gate(s.targets, s.matrix);
        } else {
            break;  // corrections before any measurement run in run_steps
        }
    }
    std::vector<BranchTrace> out;
    if (threads == 1 || k >= p.steps.size() || p.steps[k].kind != StepKind::Measure) {
        detail::run_steps(p, k, std::move(reg), std::move(root), out, keep_states);
    } else {
        const ProtocolStep &s = p.steps[k];
        std::vector<MeasurementBranch> br = reg.measure(s.targets, s.matrix);
        std::vector<std::vector<BranchTrace>> parts(br.size());
        for (std::size_t start = 0; start < br.size(); start += static_cast<std::size_t>(threads)) {
            std::vector<std::future<void>> fut;
            for (std::size_t b = start; b < std::min(br.size(), start + static_cast<std::size_t>(threads)); ++b) {
                fut.push_back(std::async(std::launch::async, [&, b]() {
                    QuditRegister r2 = reg;
                    r2.collapse_to(br[b]);
                    BranchTrace t2 = root;
                    t2.outcomes[static_cast<std::size_t>(s.measurement)] = br[b].outcome;
                    t2.probability *= br[b].probability;
                    t2.measured_qudits += static_cast<int>(s.targets.size());
                    if (!s.byproducts.empty()) {
                        t2.byproducts.push_back(s.byproducts[static_cast<std::size_t>(br[b].outcome)]);
                    }
                    detail::run_steps(p, k + 1, std::move(r2), std::move(t2), parts[b], keep_states);
                }));
            }
            for (auto &f : fut) {
                f.get();
            }
        }
        for (auto &part : parts) {
            for (auto &t : part) {
                out.push_back(std::move(t));
            }
        }
    }
    double total = 0;
    for (const auto &t : out) {
        total += t.probability;
    }
    if (std::abs(total - 1) > 1e-8) {
        throw NumericalError("branch probabilities sum to " + std::to_string(total) + ", not 1");
    }
    return out;
}

inline RunSummary summarize(const std::vector<BranchTrace> &branches) {
    RunSummary s;
    s.branches = branches.size();
    for (const auto &b : branches) {
        s.total_probability += b.probability;
        if (b.accepted) {
            ++s.accepted_branches;
            s.accepted_probability += b.probability;
            s.min_fidelity = std::min(s.min_fidelity, b.fidelity);
            s.min_bypassed_purity = std::min(s.min_bypassed_purity, b.bypassed_purity);
        }
    }
    if (s.accepted_branches == 0) {
        s.min_fidelity = 0;
    }
    return s;
}

struct SampleResult {
    std::uint64_t seed = 0;
    int shots = 0;
    /// Outcome vector → number of shots.
    std::map<std::vector<int>, int> histogram;
    /// Outcome vector → exact branch probability.
    std::map<std::vector<int>, double> probabilities;
    /// Outcome vector → fidelity of the branch.
    std::map<std::vector<int>, double> fidelities;
    /// Largest |count − shots·p| / σ over branches.
    double max_sigma = 0;
};

/// Sampled execution: every measurement outcome is drawn from its Born
/// conditional probability given the earlier outcomes (std::mt19937_64
/// seeded with `seed`). Branch states are computed once and shared.
inline SampleResult sample_protocol(const FusionProtocol &p, std::uint64_t seed, int shots, int threads = 0) {
    if (shots < 1) {
        throw InputError("sample: shot count must be positive");
    }
    std::vector<BranchTrace> br = enumerate_protocol(p, threads);
    SampleResult r;
    r.seed = seed;
    r.shots = shots;
    // Measurement order as executed.
    std::vector<int> order;
    for (const auto &s : p.steps) {
        if (s.kind == StepKind::Measure) {
            order.push_back(s.measurement);
        }
    }
    for (const auto &b : br) {
        r.probabilities[b.outcomes] += b.probability;
        r.fidelities[b.outcomes] = b.fidelity;
        r.histogram[b.outcomes] += 0;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::size_t> live(br.size());
    for (int shot = 0; shot < shots; ++shot) {
        live.resize(br.size());
        for (std::size_t k = 0; k < br.size(); ++k) {
            live[k] = k;
        }
        for (int m : order) {
            // Conditional distribution of this outcome among live branches.
            std::map<int, double> w;
            double tot = 0;
            for (std::size_t k : live) {
                int o = br[k].outcomes[static_cast<std::size_t>(m)];
                if (o < 0) {
                    continue;
                }
                w[o] += br[k].probability;
                tot += br[k].probability;
            }
            if (w.empty()) {
                continue;
            }
            double x = uni(rng) * tot;
            int pick = w.rbegin()->first;
            for (const auto &[o, pw] : w) {
                if (x < pw) {
                    pick = o;
                    break;
                }
                x -= pw;
            }
            std::vector<std::size_t> next;
            for (std::size_t k : live) {
                if (br[k].outcomes[static_cast<std::size_t>(m)] == pick) {
                    next.push_back(k);
                }
            }
            live.swap(next);
        }
        r.histogram[br[live.front()].outcomes] += 1;
    }
    for (const auto &[key, pr] : r.probabilities) {
        double mean = shots * pr;
        double sd = std::sqrt(std::max(shots * pr * (1 - pr), 1e-300));
        double dev = std::abs(r.histogram[key] - mean);
        r.max_sigma = std::max(r.max_sigma, dev > 0 ? dev / sd : 0.0);
    }
    return r;
}

// ----- MPS fusion ------------------------------------------------------------------

enum class Closure { Open, PeriodicPostselect };

/// Bell basis and the byproduct list of an MPS fusion protocol.
inline CMatrix fusion_unitary_from_byproducts(const std::vector<CMatrix> &byproducts) {
    return bell_basis_from_byproducts(byproducts).adjoint();
}

/// Σ_s V_s ⊗ V̄_s, which equals D·SWAP-reshaped identity (D Σ |ab⟩⟨ba|
/// in row-major vec) for a complete orthonormal byproduct set.
inline double byproduct_completeness_defect(const std::vector<CMatrix> &byproducts) {
    const Eigen::Index D = byproducts.at(0).rows();
    CMatrix sum = CMatrix::Zero(D * D, D * D);
    for (const auto &V : byproducts) {
        sum += kron(V, V.conjugate());
    }
    // Σ_s (V_s)_{ab} conj(V_s)_{cd} = D δ_ac δ_bd.
    CMatrix want = CMatrix::Zero(D * D, D * D);
    for (Eigen::Index a = 0; a < D; ++a) {
        for (Eigen::Index b = 0; b < D; ++b) {
            want(a * D + a, b * D + b) = static_cast<double>(D);
        }
    }
    return (sum - want).norm();
}

/// Protocol preparing the length n_blocks·block_len OBC MPS (or, with
/// PeriodicPostselect, the PBC MPS) from OBC seed blocks. Each junction
/// Bell-measures the two facing boundary qudits; the byproduct is pushed to
/// the nearer outer boundary with Σ_j u_ij A^j = V A^i V† and cancelled there.
inline FusionProtocol build_mps_fusion_protocol(const MpsTensor &t, int n_blocks, int block_len,
                                               Closure closure = Closure::Open,
                                               const std::optional<std::vector<CMatrix>> &basis_in = std::nullopt) {
    t.validate();
    if (n_blocks < 1 || block_len < 1) {
        throw InputError("mps fusion: need at least one block of at least one site");
    }
    std::vector<CMatrix> basis = basis_in ? *basis_in : clock_shift_basis(t.D);
    FusibilityReport rep = check_fusibility(t, basis);
    if (rep.verdict != Verdict::FusibleNecessaryConditionsMet) {
        throw InputError("mps fusion: tensor does not meet the fusibility conditions");
    }
    std::vector<CMatrix> us(basis.size());
    for (const auto &pp : rep.pushable_basis) {
        us[static_cast<std::size_t>(pp.index)] = pp.u;
    }
    const int L = block_len;
    const int n = n_blocks;
    FusionProtocol p;
    p.name = closure == Closure::Open ? "mps-fusion" : "mps-fusion-pbc";
    auto a_of = [&](int k) { return k * (L + 2); };
    auto site_of = [&](int k, int s) { return k * (L + 2) + 1 + s; };
    auto b_of = [&](int k) { return k * (L + 2) + L + 1; };
    for (int k = 0; k < n; ++k) {
        p.dims.push_back(t.D);
        p.roles.push_back(QuditRole::Boundary);
        for (int s = 0; s < L; ++s) {
            p.dims.push_back(t.d);
            p.roles.push_back(QuditRole::Bulk);
        }
        p.dims.push_back(t.D);
        p.roles.push_back(QuditRole::Boundary);
    }
    State block = contract_obc(t, L);
    for (int k = 0; k < n; ++k) {
        ProtocolStep s;
        s.kind = StepKind::PrepareBlock;
        for (int q = a_of(k); q <= b_of(k); ++q) {
            s.targets.push_back(q);
        }
        s.state = block.psi;
        s.label = "block " + std::to_string(k);
        p.steps.push_back(std::move(s));
    }
    CMatrix bell = bell_basis_from_byproducts(basis);
    p.n_junctions = n - 1;
    for (int j = 0; j + 1 < n; ++j) {
        ProtocolStep s;
        s.kind = StepKind::Measure;
        s.targets = {b_of(j), a_of(j + 1)};
        s.matrix = bell;
        s.measurement = j;
        s.round = 1;
        s.byproducts = basis;
        s.label = "fuse junction " + std::to_string(j);
        p.steps.push_back(std::move(s));
    }
    // Left-pushing junctions (ascending), then right-pushing ones (descending).
    std::vector<int> order;
    for (int j = 0; j + 1 < n; ++j) {
        if (j + 1 <= n - 1 - j) {
            order.push_back(j);
        }
    }
    for (int j = n - 2; j >= 0; --j) {
        if (j + 1 > n - 1 - j) {
            order.push_back(j);
        }
    }
    for (int j : order) {
        bool left = j + 1 <= n - 1 - j;
        CorrectionTable tab;
        tab.name = "push junction " + std::to_string(j) + (left ? " left" : " right");
        tab.round = 1;
        tab.locality = Locality::GlobalFeedforward;
        tab.depends_on = {j};
        for (std::size_t v = 0; v < basis.size(); ++v) {
            CorrectionEntry e;
            const CMatrix &V = basis[v];
            const CMatrix &u = us[v];
            if (left) {
                // A^i V = V Σ_j u_ij V†A^jV, so each site to the left is
                // corrected by u.
                for (int k = 0; k <= j; ++k) {
                    for (int s = 0; s < L; ++s) {
                        e.ops.push_back({{site_of(k, s)}, u});
                    }
                }
                e.ops.push_back({{a_of(0)}, V.adjoint()});
            } else {
                // V A^i = Σ_j u_ij A^j V, so each site to the right is
                // corrected by u†.
                for (int k = j + 1; k < n; ++k) {
                    for (int s = 0; s < L; ++s) {
                        e.ops.push_back({{site_of(k, s)}, u.adjoint()});
                    }
                }
                e.ops.push_back({{b_of(n - 1)}, V.conjugate()});
            }
            tab.entries[{static_cast<int>(v)}] = std::move(e);
        }
        p.tables.push_back(std::move(tab));
        ProtocolStep s;
        s.kind = StepKind::Correct;
        s.table = static_cast<int>(p.tables.size()) - 1;
        s.round = 1;
        s.label = p.tables.back().name;
        p.steps.push_back(std::move(s));
    }
    std::vector<int> sites;
    for (int k = 0; k < n; ++k) {
        for (int s = 0; s < L; ++s) {
            sites.push_back(site_of(k, s));
        }
    }
    if (closure == Closure::Open) {
        std::vector<int> pos;
        pos.push_back(a_of(0));
        pos.insert(pos.end(), sites.begin(), sites.end());
        pos.push_back(b_of(n - 1));
        p.target = embed_state(contract_obc(t, n * L).psi, p.dims, pos);
    } else {
        ProtocolStep s;
        s.kind = StepKind::Measure;
        s.targets = {b_of(n - 1), a_of(0)};
        s.matrix = bell;
        s.measurement = n - 1;
        s.round = 2;
        s.byproducts = basis;
        s.label = "close ring";
        p.steps.push_back(std::move(s));
        CorrectionTable tab;
        tab.name = "postselect trivial closure";
        tab.round = 2;
        tab.locality = Locality::LocalFeedforward;
        tab.depends_on = {n - 1};
        for (std::size_t v = 0; v < basis.size(); ++v) {
            CorrectionEntry e;
            e.accept = equal_up_to_phase(basis[v], CMatrix::Identity(t.D, t.D));
            tab.entries[{static_cast<int>(v)}] = std::move(e);
        }
        p.tables.push_back(std::move(tab));
        ProtocolStep c;
        c.kind = StepKind::Correct;
        c.table = static_cast<int>(p.tables.size()) - 1;
        c.round = 2;
        c.label = "postselect";
        p.steps.push_back(std::move(c));
        p.target = embed_state(contract_pbc(t, n * L).psi, p.dims, sites);
        p.n_junctions = n;
    }
    p.validate();
    return p;
}

// ----- Relation classification ---------------------------------------------------

enum class RelationForm { Push, LocalShift, PropagatingShift, Other };

inline const char *relation_form_name(RelationForm f) {
    switch (f) {
        case RelationForm::Push:
            return "push";
        case RelationForm::LocalShift:
            return "local-shift";
        case RelationForm::PropagatingShift:
            return "propagating-shift";
        case RelationForm::Other:
            return "other";
    }
    return "?";
}

/// Relation in compact form. Push: θ(i,j) Vin B^{ij} Voutᵀ ∝ B^{ij} with θ
/// diagonal. Shift: O = C·(L(g)† on the right physical leg); Local means C
/// acts diagonally on both physical legs and trivially on the incoming
/// virtual leg (stored on (PL, PR, VO)); Propagating means C is a
/// permutation on the left physical leg only.
struct ClassifiedRelation {
    RelationForm form = RelationForm::Other;
    std::string name;
    CMatrix full;
    CVector theta;
    CMatrix vin;
    CMatrix vout;
    int shift = 0;
    CMatrix correction;
};

namespace detail {

inline CMatrix relation_operator(const SimpsTensor &s, const SymmetryRelation &rel) {
    const int d = s.d;
    const int c = s.chi[0];
    std::vector<int> dims = {d, d, c, c};
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    CMatrix O = CMatrix::Identity(n, n);
    for (const auto &op : rel.physical_ops) {
        std::vector<int> targets;
        for (Leg l : op.legs) {
            targets.push_back(static_cast<int>(l));
        }
        O = embed_operator(dims, targets, op.matrix) * O;
    }
    O = embed_operator(dims, {2}, rel.virtual_in) * O;
    O = embed_operator(dims, {3}, rel.virtual_out) * O;
    return O;
}

inline bool is_diag(const CMatrix &m, double tol = 1e-12) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (r != c && std::abs(m(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

inline CMatrix shift_on_pr(int d, int c, const GroupSpec &G, int g) {
    return embed_operator({d, d, c, c}, {1}, build_L(G, g).adjoint());
}

/// Tries to read a full 4-leg relation operator as a shift relation.
inline bool classify_shift(const CMatrix &O, int d, int c, const GroupSpec &G, ClassifiedRelation &out) {
    const Eigen::Index n = O.rows();
    for (int g = 1; g < G.order(); ++g) {
        CMatrix C = O * shift_on_pr(d, c, G, g).adjoint();
        // Trivial on VI (leg 2): C = C' ⊗ I_VI in leg order (PL, PR, VI, VO).
        CMatrix Cp = CMatrix::Zero(static_cast<Eigen::Index>(d) * d * c, static_cast<Eigen::Index>(d) * d * c);
        auto idx = [&](int i, int j, int a, int b) { return ((static_cast<Eigen::Index>(i) * d + j) * c + a) * c + b; };
        auto pidx = [&](int i, int j, int b) { return (static_cast<Eigen::Index>(i) * d + j) * c + b; };
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                for (int b = 0; b < c; ++b) {
                    for (int i2 = 0; i2 < d; ++i2) {
                        for (int j2 = 0; j2 < d; ++j2) {
                            for (int b2 = 0; b2 < c; ++b2) {
                                Cp(pidx(i, j, b), pidx(i2, j2, b2)) = C(idx(i, j, 0, b), idx(i2, j2, 0, b2));
                            }
                        }
                    }
                }
            }
        }
        CMatrix full = CMatrix::Zero(n, n);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                for (int b = 0; b < c; ++b) {
                    for (int i2 = 0; i2 < d; ++i2) {
                        for (int j2 = 0; j2 < d; ++j2) {
                            for (int b2 = 0; b2 < c; ++b2) {
                                for (int a = 0; a < c; ++a) {
                                    full(idx(i, j, a, b), idx(i2, j2, a, b2)) = Cp(pidx(i, j, b), pidx(i2, j2, b2));
                                }
                            }
                        }
                    }
                }
            }
        }
        if ((full - C).norm() > 1e-9 || !is_unitary(Cp)) {
            continue;
        }
        // Local: diagonal on both physical legs.
        bool phys_diag = true;
        for (int i = 0; i < d && phys_diag; ++i) {
            for (int j = 0; j < d && phys_diag; ++j) {
                for (int b = 0; b < c && phys_diag; ++b) {
                    for (int i2 = 0; i2 < d && phys_diag; ++i2) {
                        for (int j2 = 0; j2 < d && phys_diag; ++j2) {
                            for (int b2 = 0; b2 < c; ++b2) {
                                if ((i != i2 || j != j2) && std::abs(Cp(pidx(i, j, b), pidx(i2, j2, b2))) > 1e-12) {
                                    phys_diag = false;
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
        if (phys_diag) {
            out.form = RelationForm::LocalShift;
            out.shift = g;
            out.correction = Cp;
            return true;
        }
        // Propagating: C' = P ⊗ I_PR ⊗ I_VO.
        CMatrix P(d, d);
        for (int i = 0; i < d; ++i) {
            for (int i2 = 0; i2 < d; ++i2) {
                P(i, i2) = Cp(pidx(i, 0, 0), pidx(i2, 0, 0));
            }
        }
        if (is_unitary(P) && (embed_operator({d, d, c}, {0}, P) - Cp).norm() <= 1e-9) {
            out.form = RelationForm::PropagatingShift;
            out.shift = g;
            out.correction = P;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Classifies a relation after checking that it holds on `s`.
inline ClassifiedRelation classify_relation(const SimpsTensor &s, const SymmetryRelation &rel, const GroupSpec &G,
                                            bool check = true) {
    if (check && !verify_symmetry(s, rel)) {
        throw InputError("relation '" + rel.name + "' does not hold on the tensor");
    }
    const int d = s.d;
    const int c = s.chi[0];
    ClassifiedRelation out;
    out.name = rel.name;
    out.full = detail::relation_operator(s, rel);
    bool push = true;
    CVector theta = CVector::Ones(static_cast<Eigen::Index>(d) * d);
    for (const auto &op : rel.physical_ops) {
        std::vector<int> targets;
        for (Leg l : op.legs) {
            if (l != Leg::PhysLeft && l != Leg::PhysRight) {
                push = false;
            }
            targets.push_back(static_cast<int>(l));
        }
        if (!push || !detail::is_diag(op.matrix)) {
            push = false;
            break;
        }
        CMatrix e = embed_operator({d, d}, targets, op.matrix);
        theta = theta.cwiseProduct(e.diagonal());
    }
    if (push) {
        out.form = RelationForm::Push;
        out.theta = theta;
        out.vin = rel.virtual_in;
        out.vout = rel.virtual_out;
        return out;
    }
    if (!detail::classify_shift(out.full, d, c, G, out)) {
        out.form = RelationForm::Other;
    }
    return out;
}

/// Closure of push relations under products, deduplicated by (Vin, Vout)
/// up to phase.
inline std::vector<ClassifiedRelation> push_closure(const std::vector<ClassifiedRelation> &gens, std::size_t cap = 1024) {
    std::vector<ClassifiedRelation> all;
    if (gens.empty()) {
        return all;
    }
    ClassifiedRelation id;
    id.form = RelationForm::Push;
    id.name = "identity";
    id.theta = CVector::Ones(gens[0].theta.size());
    id.vin = CMatrix::Identity(gens[0].vin.rows(), gens[0].vin.cols());
    id.vout = id.vin;
    all.push_back(id);
    auto known = [&](const ClassifiedRelation &r) {
        for (const auto &x : all) {
            if (equal_up_to_phase(x.vin, r.vin) && equal_up_to_phase(x.vout, r.vout)) {
                return true;
            }
        }
        return false;
    };
    for (std::size_t head = 0; head < all.size() && all.size() < cap; ++head) {
        for (const auto &g : gens) {
            ClassifiedRelation r;
            r.form = RelationForm::Push;
            r.name = all[head].name == "identity" ? g.name : all[head].name + "*" + g.name;
            r.theta = all[head].theta.cwiseProduct(g.theta);
            r.vin = all[head].vin * g.vin;
            r.vout = all[head].vout * g.vout;
            if (!known(r)) {
                all.push_back(std::move(r));
            }
        }
    }
    return all;
}

struct SimpsFusionOptions {
    /// Group structure of the physical index (default Z_d).
    std::optional<GroupSpec> phys_group;
    /// Step-2 byproducts W_s (default clock-shift basis of dimension χ); the
    /// Bell basis is conj(vec(W_s))/√χ.
    std::optional<std::vector<CMatrix>> byproducts;
    /// Skips verify_symmetry on the relations (negative controls only).
    bool skip_relation_check = false;
};

/// Correction tables derived from a relation list, exposed for reports.
struct SimpsCorrectionPlan {
    std::vector<ClassifiedRelation> classified;
    /// Shift relation used for each nontrivial group element (by index).
    std::map<int, ClassifiedRelation> shifts;
    std::vector<ClassifiedRelation> pushes;
    Locality step1_locality = Locality::LocalFeedforward;
};

inline SimpsCorrectionPlan plan_simps_corrections(const SimpsTensor &s, const std::vector<SymmetryRelation> &rels,
                                                  const GroupSpec &G, bool check = true) {
    SimpsCorrectionPlan plan;
    std::vector<ClassifiedRelation> push_gens;
    std::vector<ClassifiedRelation> shift_gens;
    for (const auto &r : rels) {
        ClassifiedRelation c = classify_relation(s, r, G, check);
        plan.classified.push_back(c);
        if (c.form == RelationForm::Push) {
            push_gens.push_back(c);
        } else if (c.form == RelationForm::LocalShift || c.form == RelationForm::PropagatingShift) {
            shift_gens.push_back(c);
        }
    }
    plan.pushes = push_closure(push_gens);
    // Shift closure: multiply full operators and reclassify; prefer local.
    const int d = s.d;
    const int c = s.chi[0];
    std::vector<ClassifiedRelation> frontier = shift_gens;
    auto consider = [&](const ClassifiedRelation &r) {
        auto it = plan.shifts.find(r.shift);
        if (it == plan.shifts.end() ||
            (it->second.form == RelationForm::PropagatingShift && r.form == RelationForm::LocalShift)) {
            plan.shifts[r.shift] = r;
            return true;
        }
        return false;
    };
    for (const auto &r : shift_gens) {
        consider(r);
    }
    for (int iter = 0; iter < G.order() && static_cast<int>(plan.shifts.size()) < G.order() - 1; ++iter) {
        std::vector<ClassifiedRelation> next;
        for (const auto &a : frontier) {
            for (const auto &b : shift_gens) {
                ClassifiedRelation r;
                r.name = a.name + "*" + b.name;
                r.full = a.full * b.full;
                if (detail::classify_shift(r.full, d, c, G, r) && consider(r)) {
                    next.push_back(r);
                }
            }
        }
        if (next.empty()) {
            break;
        }
        frontier = next;
    }
    for (const auto &[g, r] : plan.shifts) {
        (void)g;
        if (r.form == RelationForm::PropagatingShift) {
            plan.step1_locality = Locality::GlobalFeedforward;
        }
    }
    return plan;
}

/// Two-step SIMPS fusion of n_blocks OBC seed blocks of block_len sites.
/// Step 1 (round 1): controlled shift Σ|g⟩⟨g|⊗L(g)† from the first site of
/// the right block onto the last site of the left block, which is measured
/// in the group basis; outcome g is undone with a shift relation. Step 2
/// (round 2, only for χ > 1): Bell measurement of the facing virtual legs;
/// the byproduct is pushed to the nearer outer boundary with push relations.
inline FusionProtocol build_simps_fusion_protocol(const SimpsTensor &s, const std::vector<SymmetryRelation> &rels,
                                                 int n_blocks, int block_len, const SimpsFusionOptions &opt = {}) {
    s.validate();
    if (!s.uniform()) {
        throw InputError("simps fusion: uniform bond dimension required");
    }
    if (n_blocks < 1 || block_len < 2) {
        throw InputError("simps fusion: need at least one block of at least two sites");
    }
    GroupSpec G = opt.phys_group ? *opt.phys_group : cyclic_group(s.d);
    G.validate();
    if (G.order() != s.d) {
        throw InputError("simps fusion: physical group order must equal d");
    }
    const int chi = s.chi[0];
    const int d = s.d;
    const int n = n_blocks;
    const int L = block_len;
    SimpsCorrectionPlan plan = plan_simps_corrections(s, rels, G, !opt.skip_relation_check);
    std::vector<CMatrix> W = opt.byproducts ? *opt.byproducts : clock_shift_basis(chi);

    FusionProtocol p;
    p.name = "simps-fusion";
    auto a_of = [&](int k) { return k * (L + 2); };
    auto site_of = [&](int k, int t) { return k * (L + 2) + 1 + t; };
    auto b_of = [&](int k) { return k * (L + 2) + L + 1; };
    for (int k = 0; k < n; ++k) {
        p.dims.push_back(chi);
        p.roles.push_back(QuditRole::Boundary);
        for (int t = 0; t < L; ++t) {
            p.dims.push_back(d);
            p.roles.push_back(QuditRole::Bulk);
        }
        p.dims.push_back(chi);
        p.roles.push_back(QuditRole::Boundary);
    }
    State block = contract_simps_obc(s, L);
    for (int k = 0; k < n; ++k) {
        ProtocolStep st;
        st.kind = StepKind::PrepareBlock;
        for (int q = a_of(k); q <= b_of(k); ++q) {
            st.targets.push_back(q);
        }
        st.state = block.psi;
        st.label = "block " + std::to_string(k);
        p.steps.push_back(std::move(st));
    }
    // Kept physical sites along the fused chain.
    std::vector<int> chain;
    for (int k = 0; k < n; ++k) {
        for (int t = 0; t < L; ++t) {
            if (t == L - 1 && k < n - 1) {
                continue;
            }
            chain.push_back(site_of(k, t));
        }
    }
    p.n_junctions = n - 1;
    int mid = 0;
    // Step 1: controlled shift + group-basis measurement.
    CMatrix cshift = CMatrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
    for (int g = 0; g < d; ++g) {
        for (int h = 0; h < d; ++h) {
            cshift(g * d + G.mul(G.inv(g), h), g * d + h) = 1.0;
        }
    }
    for (int j = 0; j + 1 < n; ++j) {
        ProtocolStep gate;
        gate.kind = StepKind::ApplyGate;
        gate.targets = {site_of(j + 1, 0), site_of(j, L - 1)};
        gate.matrix = cshift;
        gate.round = 1;
        gate.label = "controlled shift " + std::to_string(j);
        p.steps.push_back(std::move(gate));
        ProtocolStep m;
        m.kind = StepKind::Measure;
        m.targets = {site_of(j, L - 1)};
        m.matrix = CMatrix::Identity(d, d);
        m.measurement = mid++;
        m.round = 1;
        m.label = "merge " + std::to_string(j);
        p.steps.push_back(std::move(m));
    }
    for (int j = 0; j + 1 < n; ++j) {
        CorrectionTable tab;
        tab.name = "step1 junction " + std::to_string(j);
        tab.round = 1;
        tab.depends_on = {j};
        tab.locality = Locality::LocalFeedforward;
        for (int g = 0; g < G.order(); ++g) {
            CorrectionEntry e;
            if (g != 0) {
                auto it = plan.shifts.find(g);
                if (it == plan.shifts.end()) {
                    throw InputError("simps fusion: relations do not cover step-1 outcome " + G.element_name(g));
                }
                const ClassifiedRelation &r = it->second;
                if (r.form == RelationForm::LocalShift) {
                    e.ops.push_back({{site_of(j, L - 2), site_of(j + 1, 0), b_of(j)}, r.correction});
                } else {
                    tab.locality = Locality::GlobalFeedforward;
                    for (int q : chain) {
                        if (q == site_of(j + 1, 0)) {
                            break;
                        }
                        e.ops.push_back({{q}, r.correction});
                    }
                }
            }
            tab.entries[{g}] = std::move(e);
        }
        p.tables.push_back(std::move(tab));
        ProtocolStep c;
        c.kind = StepKind::Correct;
        c.table = static_cast<int>(p.tables.size()) - 1;
        c.round = 1;
        c.label = p.tables.back().name;
        p.steps.push_back(std::move(c));
    }
    // Step 2: virtual-leg fusion.
    if (chi > 1 && n > 1) {
        CMatrix bell = bell_basis_from_byproducts(W);
        std::vector<int> meas_ids;
        for (int j = 0; j + 1 < n; ++j) {
            ProtocolStep m;
            m.kind = StepKind::Measure;
            m.targets = {b_of(j), a_of(j + 1)};
            m.matrix = bell;
            m.measurement = mid++;
            meas_ids.push_back(m.measurement);
            m.round = 2;
            m.byproducts = W;
            m.label = "fuse virtual " + std::to_string(j);
            p.steps.push_back(std::move(m));
        }
        const int K = static_cast<int>(chain.size());
        auto find_push = [&](const CMatrix &w, bool rightward) -> const ClassifiedRelation * {
            for (const auto &r : plan.pushes) {
                if (rightward ? equal_up_to_phase(r.vin, w) : equal_up_to_phase(r.vout.transpose(), w)) {
                    return &r;
                }
            }
            return nullptr;
        };
        std::vector<int> order;
        for (int j = 0; j + 1 < n; ++j) {
            if (j + 1 <= n - 1 - j) {
                order.push_back(j);
            }
        }
        for (int j = n - 2; j >= 0; --j) {
            if (j + 1 > n - 1 - j) {
                order.push_back(j);
            }
        }
        for (int j : order) {
            bool left = j + 1 <= n - 1 - j;
            CorrectionTable tab;
            tab.name = "step2 junction " + std::to_string(j) + (left ? " left" : " right");
            tab.round = 2;
            tab.locality = Locality::GlobalFeedforward;
            tab.depends_on = {meas_ids[static_cast<std::size_t>(j)]};
            // Tensor p joins chain[p] and chain[p+1]; junction j sits after
            // tensor (j+1)(L−1)−1.
            const int first_right = (j + 1) * (L - 1);
            for (std::size_t sidx = 0; sidx < W.size(); ++sidx) {
                CorrectionEntry e;
                CMatrix w = W[sidx];
                if (!left) {
                    for (int t = first_right; t <= K - 2; ++t) {
                        const ClassifiedRelation *r = find_push(w, true);
                        if (!r) {
                            throw InputError("simps fusion: no push relation moves byproduct " + std::to_string(sidx) +
                                             " to the right");
                        }
                        e.ops.push_back({{chain[static_cast<std::size_t>(t)], chain[static_cast<std::size_t>(t) + 1]},
                                         CMatrix(r->theta.asDiagonal())});
                        w = r->vout.conjugate();
                    }
                    e.ops.push_back({{b_of(n - 1)}, w.conjugate()});
                } else {
                    for (int t = first_right - 1; t >= 0; --t) {
                        const ClassifiedRelation *r = find_push(w, false);
                        if (!r) {
                            throw InputError("simps fusion: no push relation moves byproduct " + std::to_string(sidx) +
                                             " to the left");
                        }
                        e.ops.push_back({{chain[static_cast<std::size_t>(t)], chain[static_cast<std::size_t>(t) + 1]},
                                         CMatrix(r->theta.asDiagonal())});
                        w = r->vin.adjoint();
                    }
                    e.ops.push_back({{a_of(0)}, w.adjoint()});
                }
                tab.entries[{static_cast<int>(sidx)}] = std::move(e);
            }
            p.tables.push_back(std::move(tab));
            ProtocolStep c;
            c.kind = StepKind::Correct;
            c.table = static_cast<int>(p.tables.size()) - 1;
            c.round = 2;
            c.label = p.tables.back().name;
            p.steps.push_back(std::move(c));
        }
    }
    std::vector<int> pos;
    pos.push_back(a_of(0));
    pos.insert(pos.end(), chain.begin(), chain.end());
    pos.push_back(b_of(n - 1));
    p.target = embed_state(contract_simps_obc(s, static_cast<int>(chain.size())).psi, p.dims, pos);
    p.validate();
    return p;
}

/// Replaces every round-1 single-qudit measurement + local correction by
/// the corresponding controlled correction (e.g. CCZ for CZ corrections);
/// the formerly measured qudits are traced out when comparing to the
/// target and their purity is reported.
inline FusionProtocol unitary_step1_variant(const FusionProtocol &p) {
    FusionProtocol q = p;
    q.steps.clear();
    q.name = p.name + "-unitary-step1";
    std::map<int, const ProtocolStep *> meas;
    for (const auto &s : p.steps) {
        if (s.kind == StepKind::Measure) {
            meas[s.measurement] = &s;
        }
    }
    std::set<int> replaced;
    for (const auto &t : p.tables) {
        if (t.round != 1) {
            continue;
        }
        if (t.locality != Locality::LocalFeedforward) {
            throw InputError("unitary step-1 variant: step 1 requires global feedforward");
        }
        for (const auto &[k, e] : t.entries) {
            (void)k;
            if (!e.accept) {
                throw InputError("unitary step-1 variant: postselected tables cannot be made unitary");
            }
        }
        if (t.depends_on.size() != 1 || meas.at(t.depends_on[0])->targets.size() != 1) {
            throw InputError("unitary step-1 variant: step-1 tables must depend on one single-qudit measurement");
        }
    }
    for (const auto &s : p.steps) {
        if (s.kind == StepKind::Measure && s.round == 1) {
            bool used = false;
            for (const auto &t : p.tables) {
                used = used || (t.round == 1 && t.depends_on[0] == s.measurement);
            }
            if (!used || !detail::is_diag(s.matrix) || (s.matrix - CMatrix::Identity(s.matrix.rows(), s.matrix.cols())).norm() > 1e-12) {
                throw InputError("unitary step-1 variant: step-1 measurements must be computational-basis and corrected");
            }
            replaced.insert(s.measurement);
            continue;
        }
        if (s.kind == StepKind::Correct && p.tables[static_cast<std::size_t>(s.table)].round == 1) {
            const CorrectionTable &t = p.tables[static_cast<std::size_t>(s.table)];
            int ctrl = meas.at(t.depends_on[0])->targets[0];
            std::vector<int> targets;
            for (const auto &[k, e] : t.entries) {
                (void)k;
                for (const auto &op : e.ops) {
                    for (int x : op.targets) {
                        if (std::find(targets.begin(), targets.end(), x) == targets.end()) {
                            targets.push_back(x);
                        }
                    }
                }
            }
            std::vector<int> tdims;
            for (int x : targets) {
                tdims.push_back(p.dims[static_cast<std::size_t>(x)]);
            }
            const int dc = p.dims[static_cast<std::size_t>(ctrl)];
            const auto tdim = static_cast<Eigen::Index>(dims_product(tdims));
            CMatrix U = CMatrix::Zero(dc * tdim, dc * tdim);
            for (int m = 0; m < dc; ++m) {
                CMatrix block = CMatrix::Identity(tdim, tdim);
                for (const auto &op : t.entries.at({m}).ops) {
                    std::vector<int> local;
                    for (int x : op.targets) {
                        local.push_back(static_cast<int>(std::find(targets.begin(), targets.end(), x) - targets.begin()));
                    }
                    block = embed_operator(tdims, local, op.matrix) * block;
                }
                U.block(m * tdim, m * tdim, tdim, tdim) = block;
            }
            ProtocolStep g;
            g.kind = StepKind::ApplyGate;
            g.targets = {ctrl};
            g.targets.insert(g.targets.end(), targets.begin(), targets.end());
            g.matrix = U;
            g.round = 1;
            g.label = "controlled " + t.name;
            q.steps.push_back(std::move(g));
            q.bypassed.push_back(ctrl);
            continue;
        }
        q.steps.push_back(s);
    }
    // Drop the now unused round-1 tables' steps; tables stay for reference.
    q.validate();
    return q;
}

/// Θ = log₂ D² − log₂(d χ²): per-site ancilla saving of SIMPS over MPS fusion.
inline double resource_theta(const MpsTensor &t, const SimpsTensor &s) {
    const double chi = s.chi_max();
    return std::log2(static_cast<double>(t.D) * t.D) - std::log2(static_cast<double>(s.d) * chi * chi);
}

}  // namespace mpsfuse

#endif  // MPSFUSE_FUSION_HPP
