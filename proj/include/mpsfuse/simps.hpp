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

#ifndef MPSFUSE_SIMPS_HPP
#define MPSFUSE_SIMPS_HPP

// Split-index MPS: each physical index is shared by the two neighbouring
// tensors B^{ij} (χ^i × χ^j). Conversion from MPS, gauge comparison, exact
// contraction, tensor-symmetry verification, the hidden-degeneracy check and
// the bounded-MPS framing with boundary maps.

#include "mpsfuse/mps.hpp"

#include <random>
#include <string>
#include <vector>

namespace mpsfuse {

struct SimpsTensor {
    int d = 0;
    /// Bond dimension attached to each physical value.
    std::vector<int> chi;
    /// Row-major table: B[i*d + j] is χ^i × χ^j.
    std::vector<CMatrix> B;

    const CMatrix &at(int i, int j) const {
        return B[static_cast<std::size_t>(i * d + j)];
    }
    CMatrix &at(int i, int j) {
        return B[static_cast<std::size_t>(i * d + j)];
    }
    int chi_max() const {
        return chi.empty() ? 0 : *std::max_element(chi.begin(), chi.end());
    }
    bool uniform() const {
        return std::adjacent_find(chi.begin(), chi.end(), std::not_equal_to<>()) == chi.end();
    }

    void validate() const {
        if (d <= 0) {
            throw InputError("SimpsTensor: d must be positive");
        }
        if (static_cast<int>(chi.size()) != d) {
            throw InputError("SimpsTensor: chi profile must have d entries");
        }
        if (static_cast<int>(B.size()) != d * d) {
            throw InputError("SimpsTensor: expected d^2 = " + std::to_string(d * d) + " matrices, got " +
                             std::to_string(B.size()));
        }
        for (int c : chi) {
            if (c <= 0) {
                throw InputError("SimpsTensor: bond dimensions must be positive");
            }
            if (c > limits().max_bond.load()) {
                throw CapExceeded("SimpsTensor: bond dimension exceeds --max-bond");
            }
        }
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const CMatrix &m = at(i, j);
                if (m.rows() != chi[static_cast<std::size_t>(i)] || m.cols() != chi[static_cast<std::size_t>(j)]) {
                    throw InputError("SimpsTensor: B^{" + std::to_string(i) + std::to_string(j) +
                                     "} has the wrong shape");
                }
                if (!all_finite(m)) {
                    throw InputError("SimpsTensor: non-finite entries");
                }
            }
        }
    }
};

/// Builds a validated tensor from a row-major (i, j) list of matrices.
inline SimpsTensor make_simps(int d, std::vector<CMatrix> mats) {
    SimpsTensor s;
    s.d = d;
    s.B = std::move(mats);
    if (static_cast<int>(s.B.size()) != d * d) {
        throw InputError("make_simps: expected d^2 matrices");
    }
    for (int i = 0; i < d; ++i) {
        s.chi.push_back(static_cast<int>(s.at(i, 0).rows()));
    }
    s.validate();
    return s;
}

// ----- Contraction ----------------------------------------------------------

namespace detail {

/// Rows (a, i1..iN), columns: virtual index after the last tensor, padded to
/// χ_max. Row (a, i1, ...) is zero when a ≥ χ^{i1}.
inline CMatrix simps_obc_matrix(const SimpsTensor &s, int N) {
    const int cm = s.chi_max();
    CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(cm) * s.d, cm);
    for (int a = 0; a < cm; ++a) {
        for (int i = 0; i < s.d; ++i) {
            if (a < s.chi[static_cast<std::size_t>(i)]) {
                M(a * s.d + i, a) = 1.0;
            }
        }
    }
    for (int site = 1; site < N; ++site) {
        CMatrix next = CMatrix::Zero(M.rows() * s.d, cm);
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            int prev = static_cast<int>(r % s.d);
            int cp = s.chi[static_cast<std::size_t>(prev)];
            for (int j = 0; j < s.d; ++j) {
                int cj = s.chi[static_cast<std::size_t>(j)];
                next.row(r * s.d + j).head(cj) = M.row(r).head(cp) * s.at(prev, j);
            }
        }
        M = std::move(next);
    }
    return M;
}

}  // namespace detail

/// OBC state over (a, i1..iN, b), amplitude ⟨a|B^{i1 i2}⋯B^{i_{N-1} i_N}|b⟩.
/// Boundary legs have dimension χ_max (zero-padded for non-uniform χ).
inline State contract_simps_obc(const SimpsTensor &s, int N) {
    s.validate();
    if (N < 1) {
        throw InputError("contract_simps_obc: N must be at least 1");
    }
    const int cm = s.chi_max();
    check_amplitude_cap(dpow(cm, 2) * dpow(s.d, N), "contract_simps_obc");
    CMatrix M = detail::simps_obc_matrix(s, N);
    CVector v(M.size());
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        for (Eigen::Index b = 0; b < cm; ++b) {
            v(r * cm + b) = M(r, b);
        }
    }
    std::vector<int> dims{cm};
    for (int k = 0; k < N; ++k) {
        dims.push_back(s.d);
    }
    dims.push_back(cm);
    return normalized_state(std::move(v), std::move(dims));
}

/// PBC state, amplitude Tr(B^{i1 i2}⋯B^{i_N i_1}).
inline State contract_simps_pbc(const SimpsTensor &s, int N) {
    s.validate();
    if (N < 1) {
        throw InputError("contract_simps_pbc: N must be at least 1");
    }
    const int cm = s.chi_max();
    check_amplitude_cap(dpow(cm, 2) * dpow(s.d, N), "contract_simps_pbc");
    CMatrix M = detail::simps_obc_matrix(s, N);
    Eigen::Index phys = M.rows() / cm;
    Eigen::Index stride = phys / s.d;  // position of i1 inside the physical index
    CVector v = CVector::Zero(phys);
    for (Eigen::Index x = 0; x < phys; ++x) {
        int i1 = static_cast<int>(x / stride);
        int iN = static_cast<int>(x % s.d);
        int c1 = s.chi[static_cast<std::size_t>(i1)];
        int cN = s.chi[static_cast<std::size_t>(iN)];
        for (int a = 0; a < c1; ++a) {
            // Row (a, x); close with B^{iN i1} and take the (a, a) element.
            CMatrix left = M.row(a * phys + x).head(cN);
            v(x) += (left * s.at(iN, i1).col(a))(0, 0);
        }
    }
    return normalized_state(std::move(v), std::vector<int>(static_cast<std::size_t>(N), s.d));
}

// ----- Four-leg tensor state and symmetry relations --------------------------

enum class Leg { PhysLeft = 0, PhysRight = 1, VirtIn = 2, VirtOut = 3 };

inline const char *leg_name(Leg l) {
    switch (l) {
        case Leg::PhysLeft:
            return "phys_left";
        case Leg::PhysRight:
            return "phys_right";
        case Leg::VirtIn:
            return "virt_in";
        case Leg::VirtOut:
            return "virt_out";
    }
    return "?";
}

/// |B⟩ = Σ B^{ij}_{ab} |i, j, a, b⟩ with leg order (PhysLeft, PhysRight,
/// VirtIn, VirtOut). Requires uniform χ.
inline CVector four_leg_state(const SimpsTensor &s) {
    s.validate();
    if (!s.uniform()) {
        throw InputError("four-leg tensor state requires uniform bond dimension");
    }
    const int c = s.chi[0];
    CVector v(static_cast<Eigen::Index>(s.d) * s.d * c * c);
    for (int i = 0; i < s.d; ++i) {
        for (int j = 0; j < s.d; ++j) {
            for (int a = 0; a < c; ++a) {
                for (int b = 0; b < c; ++b) {
                    v(((static_cast<Eigen::Index>(i) * s.d + j) * c + a) * c + b) = s.at(i, j)(a, b);
                }
            }
        }
    }
    return v;
}

inline std::vector<int> four_leg_dims(const SimpsTensor &s) {
    return {s.d, s.d, s.chi[0], s.chi[0]};
}

struct LegOp {
    std::vector<Leg> legs;
    CMatrix matrix;
};

enum class RelationKind { Onsite, TwoSite, ThreeSite };

inline const char *relation_kind_name(RelationKind k) {
    switch (k) {
        case RelationKind::Onsite:
            return "onsite";
        case RelationKind::TwoSite:
            return "two-site";
        case RelationKind::ThreeSite:
            return "three-site";
    }
    return "?";
}

/// Invariance of the four-leg tensor state up to phase: the operators in
/// `physical_ops` are applied in order (they may also touch the virtual-out
/// leg, e.g. a controlled phase between a physical and a virtual leg), then
/// `virtual_in` on the incoming and `virtual_out` on the outgoing virtual leg.
struct SymmetryRelation {
    std::string name;
    std::vector<LegOp> physical_ops;
    CMatrix virtual_in;
    CMatrix virtual_out;

    RelationKind kind() const {
        std::size_t m = 0;
        for (const auto &op : physical_ops) {
            m = std::max(m, op.legs.size());
        }
        if (m <= 1) {
            return RelationKind::Onsite;
        }
        return m == 2 ? RelationKind::TwoSite : RelationKind::ThreeSite;
    }

    void validate(int d, int chi) const {
        auto leg_dim = [&](Leg l) { return (l == Leg::PhysLeft || l == Leg::PhysRight) ? d : chi; };
        for (const auto &op : physical_ops) {
            int dim = 1;
            for (Leg l : op.legs) {
                dim *= leg_dim(l);
            }
            if (op.matrix.rows() != dim || op.matrix.cols() != dim) {
                throw InputError("relation '" + name + "': operator dimension does not match its legs");
            }
            if (!is_unitary(op.matrix)) {
                throw InputError("relation '" + name + "': operator is not unitary");
            }
        }
        if (virtual_in.rows() != chi || virtual_out.rows() != chi || !is_unitary(virtual_in) ||
            !is_unitary(virtual_out)) {
            throw InputError("relation '" + name + "': virtual operators must be chi x chi unitaries");
        }
    }
};

/// Applies the relation's operators to |B⟩.
inline CVector apply_relation(const SimpsTensor &s, const SymmetryRelation &rel, const CVector &state) {
    rel.validate(s.d, s.chi[0]);
    std::vector<int> dims = four_leg_dims(s);
    CVector v = state;
    for (const auto &op : rel.physical_ops) {
        std::vector<int> targets;
        for (Leg l : op.legs) {
            targets.push_back(static_cast<int>(l));
        }
        apply_local(v, dims, targets, op.matrix);
    }
    apply_local(v, dims, {static_cast<int>(Leg::VirtIn)}, rel.virtual_in);
    apply_local(v, dims, {static_cast<int>(Leg::VirtOut)}, rel.virtual_out);
    return v;
}

inline double symmetry_fidelity(const SimpsTensor &s, const SymmetryRelation &rel) {
    CVector b = four_leg_state(s);
    return overlap_fidelity(b, apply_relation(s, rel, b));
}

inline bool verify_symmetry(const SimpsTensor &s, const SymmetryRelation &rel, double tol = 1e-9) {
    return symmetry_fidelity(s, rel) >= 1 - tol;
}

// ----- MPS -> SIMPS ------------------------------------------------------------

struct SimpsConversion {
    SimpsTensor s;
    /// Isometries P^i (D × χ^i) whose columns span the row space of A^i.
    std::vector<CMatrix> P;
    /// The MPS actually converted (after the optional physical basis change).
    MpsTensor source;
    std::vector<std::string> warnings;
};

/// Physical basis change: A'^k = Σ_i W_{ki} A^i.
inline MpsTensor change_physical_basis(const MpsTensor &t, const CMatrix &W) {
    if (W.rows() != t.d || W.cols() != t.d || !is_unitary(W)) {
        throw InputError("physical basis change must be a d x d unitary");
    }
    std::vector<CMatrix> out;
    for (int k = 0; k < t.d; ++k) {
        CMatrix m = CMatrix::Zero(t.D, t.D);
        for (int i = 0; i < t.d; ++i) {
            m += W(k, i) * t.A[static_cast<std::size_t>(i)];
        }
        out.push_back(m);
    }
    return make_mps(out);
}

/// B^{ij} = P^{i†} A^j P^j with P^i from the right singular vectors of A^i
/// (descending singular value; each column's largest-magnitude entry made
/// real positive). Ranks use a 1e-10 threshold relative to the top value.
inline SimpsConversion mps_to_simps(const MpsTensor &t0, const std::optional<CMatrix> &basis = std::nullopt) {
    t0.validate();
    SimpsConversion out;
    out.source = basis ? change_physical_basis(t0, *basis) : t0;
    const MpsTensor &t = out.source;
    bool all_full = true;
    for (int i = 0; i < t.d; ++i) {
        const CMatrix &a = t.A[static_cast<std::size_t>(i)];
        SvdResult sv = svd(a);
        int r = 0;
        for (double x : sv.s) {
            if (!sv.s.empty() && x > 1e-10 * sv.s[0]) {
                ++r;
            }
        }
        if (r == 0) {
            throw InputError("mps_to_simps: matrix A^" + std::to_string(i) + " vanishes; chi would be zero");
        }
        CMatrix P = sv.Vh.topRows(r).adjoint();
        for (int c = 0; c < r; ++c) {
            Eigen::Index arg = 0;
            double best = -1;
            for (Eigen::Index k = 0; k < P.rows(); ++k) {
                // First index attaining the maximum (ties resolved to the top).
                if (std::abs(P(k, c)) > best + 1e-12) {
                    best = std::abs(P(k, c));
                    arg = k;
                }
            }
            cplx ph = P(arg, c) / std::abs(P(arg, c));
            P.col(c) /= ph;
        }
        if (r < t.D) {
            all_full = false;
        }
        out.P.push_back(P);
        out.s.chi.push_back(r);
    }
    out.s.d = t.d;
    out.s.B.resize(static_cast<std::size_t>(t.d * t.d));
    for (int i = 0; i < t.d; ++i) {
        for (int j = 0; j < t.d; ++j) {
            out.s.at(i, j) = out.P[static_cast<std::size_t>(i)].adjoint() * t.A[static_cast<std::size_t>(j)] *
                             out.P[static_cast<std::size_t>(j)];
        }
    }
    if (all_full) {
        out.warnings.push_back("all matrices A^i are full rank: chi = D, the SIMPS offers no reduction");
    }
    out.s.validate();
    return out;
}

/// Generic MPS with D = Σ χ^p generating the same PBC state:
/// (A^j)_{(p,a),(q,b)} = δ_{qj} B^{pj}_{ab} with (p, a) indexing ⊕_p C^{χ^p}.
inline MpsTensor simps_to_mps(const SimpsTensor &s) {
    s.validate();
    std::vector<int> off(static_cast<std::size_t>(s.d) + 1, 0);
    for (int p = 0; p < s.d; ++p) {
        off[static_cast<std::size_t>(p) + 1] = off[static_cast<std::size_t>(p)] + s.chi[static_cast<std::size_t>(p)];
    }
    int D = off.back();
    std::vector<CMatrix> A;
    for (int j = 0; j < s.d; ++j) {
        CMatrix m = CMatrix::Zero(D, D);
        for (int p = 0; p < s.d; ++p) {
            m.block(off[static_cast<std::size_t>(p)], off[static_cast<std::size_t>(j)], s.chi[static_cast<std::size_t>(p)],
                    s.chi[static_cast<std::size_t>(j)]) = s.at(p, j);
        }
        A.push_back(m);
    }
    return make_mps(A);
}

// ----- Gauge comparison --------------------------------------------------------

struct GaugeComparison {
    bool equal = false;
    /// Global scalar c with B_a^{ij} = c (g^i)^{-1} B_b^{ij} g^j.
    cplx scale = 1.0;
    std::vector<CMatrix> gauges;
    double residual = 0;
    double pbc_fidelity_n4 = 0;
    double pbc_fidelity_n5 = 0;
    std::string reason;
};

/// Searches invertible gauges g^i and a global scalar c such that
/// B_a^{ij} = c (g^i)^{-1} B_b^{ij} g^j. The scalar is fixed from PBC cycle
/// amplitudes, the gauges from the null space of the linear system
/// g^i B_a^{ij} − c B_b^{ij} g^j = 0. A positive answer is cross-checked by PBC
/// state fidelity at N = 4 and 5.
inline GaugeComparison simps_gauge_compare(const SimpsTensor &a, const SimpsTensor &b, double tol = 1e-8) {
    a.validate();
    b.validate();
    GaugeComparison out;
    if (a.d != b.d || a.chi != b.chi) {
        out.reason = "different physical dimension or bond profile";
        return out;
    }
    const int d = a.d;
    // Unnormalized PBC cycle amplitudes for the first length with support.
    auto cycle_amplitude = [](const SimpsTensor &s, const std::vector<int> &cyc) {
        CMatrix M = CMatrix::Identity(s.chi[static_cast<std::size_t>(cyc[0])], s.chi[static_cast<std::size_t>(cyc[0])]);
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            M = M * s.at(cyc[k], cyc[(k + 1) % cyc.size()]);
        }
        return M.trace();
    };
    std::vector<cplx> candidates;
    for (int N = 1; N <= 4 && candidates.empty(); ++N) {
        std::vector<int> cyc(static_cast<std::size_t>(N), 0);
        double best = 0;
        cplx ratio = 0;
        bool mismatch = false;
        while (true) {
            cplx xa = cycle_amplitude(a, cyc);
            cplx xb = cycle_amplitude(b, cyc);
            if ((std::abs(xa) > 1e-9) != (std::abs(xb) > 1e-9)) {
                mismatch = true;
            }
            if (std::abs(xb) > best && std::abs(xa) > 1e-9) {
                best = std::abs(xb);
                ratio = xa / xb;
            }
            int k = N - 1;
            while (k >= 0 && ++cyc[static_cast<std::size_t>(k)] == d) {
                cyc[static_cast<std::size_t>(k)] = 0;
                --k;
            }
            if (k < 0) {
                break;
            }
        }
        if (mismatch) {
            out.reason = "PBC cycle supports differ at length " + std::to_string(N);
            return out;
        }
        if (best > 1e-9) {
            double mag = std::pow(std::abs(ratio), 1.0 / N);
            double ph = std::arg(ratio);
            for (int k = 0; k < N; ++k) {
                candidates.push_back(std::polar(mag, (ph + 2 * kPi * k) / N));
            }
        }
    }
    if (candidates.empty()) {
        out.reason = "no nonzero PBC cycle amplitude up to length 4";
        return out;
    }
    // Unknown layout: g^i stacked as row-major blocks.
    std::vector<int> off(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i < d; ++i) {
        int c = a.chi[static_cast<std::size_t>(i)];
        off[static_cast<std::size_t>(i) + 1] = off[static_cast<std::size_t>(i)] + c * c;
    }
    const int nvar = off.back();
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (cplx c : candidates) {
        int neq = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                neq += a.chi[static_cast<std::size_t>(i)] * a.chi[static_cast<std::size_t>(j)];
            }
        }
        CMatrix L = CMatrix::Zero(neq, nvar);
        int row = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                int ci = a.chi[static_cast<std::size_t>(i)];
                int cj = a.chi[static_cast<std::size_t>(j)];
                const CMatrix &Ba = a.at(i, j);
                const CMatrix &Bb = b.at(i, j);
                // (g^i Ba − c Bb g^j)_{rs} = Σ_k g^i_{rk} Ba_{ks} − c Σ_k Bb_{rk} g^j_{ks}.
                for (int r = 0; r < ci; ++r) {
                    for (int s2 = 0; s2 < cj; ++s2) {
                        for (int k = 0; k < ci; ++k) {
                            L(row, off[static_cast<std::size_t>(i)] + r * ci + k) += Ba(k, s2);
                        }
                        for (int k = 0; k < cj; ++k) {
                            L(row, off[static_cast<std::size_t>(j)] + k * cj + s2) -= c * Bb(r, k);
                        }
                        ++row;
                    }
                }
            }
        }
        // Null space: right singular vectors with vanishing singular values
        // (a full V also covers the directions a wide system leaves free).
        Eigen::JacobiSVD<CMatrix> full(L, Eigen::ComputeFullV);
        const auto &svals = full.singularValues();
        double scale = std::max(1.0, svals.size() > 0 ? svals(0) : 1.0);
        std::vector<int> null_cols;
        for (int k = 0; k < nvar; ++k) {
            double sk = k < svals.size() ? svals(k) : 0.0;
            if (sk <= 1e-9 * scale) {
                null_cols.push_back(k);
            }
        }
        if (null_cols.empty()) {
            continue;
        }
        for (int attempt = 0; attempt < 4; ++attempt) {
            CVector x = CVector::Zero(nvar);
            for (int k : null_cols) {
                x += cplx(nd(rng), nd(rng)) * full.matrixV().col(k);
            }
            std::vector<CMatrix> g;
            bool invertible = true;
            for (int i = 0; i < d; ++i) {
                int ci = a.chi[static_cast<std::size_t>(i)];
                CMatrix gi(ci, ci);
                for (int r = 0; r < ci; ++r) {
                    for (int k = 0; k < ci; ++k) {
                        gi(r, k) = x(off[static_cast<std::size_t>(i)] + r * ci + k);
                    }
                }
                RVector s = singular_values(gi);
                if (s.empty() || s.back() <= 1e-8 * s.front()) {
                    invertible = false;
                }
                g.push_back(gi);
            }
            if (!invertible) {
                continue;
            }
            double res = 0;
            double nrm = 0;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    CMatrix pred = c * g[static_cast<std::size_t>(i)].inverse() * b.at(i, j) * g[static_cast<std::size_t>(j)];
                    res += (pred - a.at(i, j)).squaredNorm();
                    nrm += a.at(i, j).squaredNorm();
                }
            }
            res = std::sqrt(res / std::max(nrm, 1e-300));
            if (res > tol) {
                continue;
            }
            out.scale = c;
            out.gauges = g;
            out.residual = res;
            out.pbc_fidelity_n4 = overlap_fidelity(contract_simps_pbc(a, 4).psi, contract_simps_pbc(b, 4).psi);
            out.pbc_fidelity_n5 = overlap_fidelity(contract_simps_pbc(a, 5).psi, contract_simps_pbc(b, 5).psi);
            out.equal = out.pbc_fidelity_n4 >= 1 - 1e-9 && out.pbc_fidelity_n5 >= 1 - 1e-9;
            if (!out.equal) {
                out.reason = "gauge found but PBC cross-check failed";
            }
            return out;
        }
    }
    out.reason = "no invertible gauge solves the relation";
    return out;
}

inline bool simps_gauge_equal(const SimpsTensor &a, const SimpsTensor &b) {
    return simps_gauge_compare(a, b).equal;
}

/// B → (g^i)^{-1} B^{ij} g^j, a helper for building gauge-transformed copies.
inline SimpsTensor apply_gauge(const SimpsTensor &s, const std::vector<CMatrix> &g) {
    SimpsTensor out = s;
    for (int i = 0; i < s.d; ++i) {
        for (int j = 0; j < s.d; ++j) {
            out.at(i, j) = g[static_cast<std::size_t>(i)].inverse() * s.at(i, j) * g[static_cast<std::size_t>(j)];
        }
    }
    out.validate();
    return out;
}

// ----- Hidden entanglement-spectrum degeneracy -----------------------------------

struct HiddenDegeneracyEntry {
    int v = 0;
    /// A_v^i = B^{vi} B^{iv} (χ^v × χ^v).
    MpsTensor projected;
    /// spec(Π̃)/Tr(Π̃) of the projected family's leading fixed-point space.
    RVector spectrum;
    bool flat = false;
    bool block_injective = false;
};

/// For each physical value v, the MPS obtained by fixing every other physical
/// qudit to v. Its leading fixed-point projector is taken from the full
/// transfer matrix (the projected tensors need not be block injective).
inline std::vector<HiddenDegeneracyEntry> hidden_degeneracy_check(const SimpsTensor &s) {
    s.validate();
    std::vector<HiddenDegeneracyEntry> out;
    for (int v = 0; v < s.d; ++v) {
        std::vector<CMatrix> A;
        for (int i = 0; i < s.d; ++i) {
            A.push_back(s.at(v, i) * s.at(i, v));
        }
        HiddenDegeneracyEntry e;
        e.v = v;
        e.projected = make_mps(A);
        CMatrix pt;
        spectral_fixed_projector(e.projected, &pt);
        e.spectrum = predicted_spectrum(pt);
        e.flat = is_flat(e.spectrum);
        e.block_injective = analyze_blocks(e.projected).injective;
        out.push_back(std::move(e));
    }
    return out;
}

// ----- Bounded-MPS framing ------------------------------------------------------

struct BoundaryMaps {
    /// 𝕡 = Σ_i ⟨i| ⊗ P^i  (D × D′ with D′ = d·χ, column index (i, a)).
    CMatrix P_map;
    /// ℚ = Σ_i ⟨i| ⊗ A^i P^i (D × D′).
    CMatrix Q_map;
};

struct BoundedMps {
    MpsTensor mps;
    BoundaryMaps maps;
    SimpsTensor simps;
};

/// Boundary maps from an MPS and its SIMPS isometries (uniform χ).
inline BoundedMps simps_as_bounded_mps(const SimpsConversion &conv) {
    const MpsTensor &t = conv.source;
    const SimpsTensor &s = conv.s;
    if (!s.uniform()) {
        throw InputError("simps_as_bounded_mps: uniform chi required");
    }
    const int chi = s.chi[0];
    BoundedMps out;
    out.mps = t;
    out.simps = s;
    out.maps.P_map = CMatrix::Zero(t.D, static_cast<Eigen::Index>(t.d) * chi);
    out.maps.Q_map = CMatrix::Zero(t.D, static_cast<Eigen::Index>(t.d) * chi);
    for (int i = 0; i < t.d; ++i) {
        out.maps.P_map.middleCols(static_cast<Eigen::Index>(i) * chi, chi) = conv.P[static_cast<std::size_t>(i)];
        out.maps.Q_map.middleCols(static_cast<Eigen::Index>(i) * chi, chi) =
            t.A[static_cast<std::size_t>(i)] * conv.P[static_cast<std::size_t>(i)];
    }
    return out;
}

/// Same framing for an arbitrary SIMPS via its generic MPS (D = Σ χ^p) and
/// the coordinate isometries P^i|a⟩ = |i, a⟩.
inline BoundedMps simps_as_bounded_mps(const SimpsTensor &s) {
    s.validate();
    if (!s.uniform()) {
        throw InputError("simps_as_bounded_mps: uniform chi required");
    }
    SimpsConversion conv;
    conv.source = simps_to_mps(s);
    conv.s = s;
    const int chi = s.chi[0];
    for (int i = 0; i < s.d; ++i) {
        CMatrix P = CMatrix::Zero(conv.source.D, chi);
        P.middleRows(static_cast<Eigen::Index>(i) * chi, chi) = CMatrix::Identity(chi, chi);
        conv.P.push_back(P);
    }
    return simps_as_bounded_mps(conv);
}

/// State over (a′, i_1..i_L, b′), amplitude ⟨a′|𝕡† A^{i_1}⋯A^{i_L} ℚ|b′⟩.
inline State contract_bounded(const BoundedMps &bm, int L) {
    const MpsTensor &t = bm.mps;
    const Eigen::Index Dp = bm.maps.P_map.cols();
    check_amplitude_cap(dpow(static_cast<double>(Dp), 2) * dpow(t.d, L), "contract_bounded");
    CMatrix M = bm.maps.P_map.adjoint();  // rows a′
    for (int site = 0; site < L; ++site) {
        CMatrix next(M.rows() * t.d, t.D);
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            for (int i = 0; i < t.d; ++i) {
                next.row(r * t.d + i) = M.row(r) * t.A[static_cast<std::size_t>(i)];
            }
        }
        M = std::move(next);
    }
    CMatrix F = M * bm.maps.Q_map;
    CVector v(F.size());
    for (Eigen::Index r = 0; r < F.rows(); ++r) {
        for (Eigen::Index c = 0; c < F.cols(); ++c) {
            v(r * F.cols() + c) = F(r, c);
        }
    }
    std::vector<int> dims{static_cast<int>(Dp)};
    for (int k = 0; k < L; ++k) {
        dims.push_back(t.d);
    }
    dims.push_back(static_cast<int>(Dp));
    return normalized_state(std::move(v), std::move(dims));
}

/// Fidelity between the bounded-MPS state with L = N − 2 and the OBC SIMPS
/// state on N sites, after regrouping (a, i1) and (iN, b) into the composite
/// boundary qudits a′ = (i1, a), b′ = (iN, b).
inline double bounded_mps_fidelity(const BoundedMps &bm, int N) {
    if (N < 2) {
        throw InputError("bounded_mps_fidelity: N must be at least 2");
    }
    State bs = contract_bounded(bm, N - 2);
    State ss = contract_simps_obc(bm.simps, N);
    // SIMPS order: a, i1, ..., iN, b  ->  i1, a, i2..i_{N-1}, iN, b.
    std::vector<int> perm;
    perm.push_back(1);
    perm.push_back(0);
    for (int k = 2; k <= N + 1; ++k) {
        perm.push_back(k);
    }
    CVector reordered = permute_factors(ss.psi, ss.dims, perm);
    return overlap_fidelity(reordered, bs.psi);
}

}  // namespace mpsfuse

#endif  // MPSFUSE_SIMPS_HPP
