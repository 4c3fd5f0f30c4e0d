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

#ifndef MPSFUSE_MPS_HPP
#define MPSFUSE_MPS_HPP

// Translation-invariant matrix product states: exact contraction, transfer
// matrix analysis, entanglement spectra, push-through solving and the
// necessary-condition fusibility verdict.

#include "mpsfuse/num.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mpsfuse {

/// Entry magnitudes at or below this are treated as structural zeros.
inline constexpr double kStructuralZero = 1e-12;

struct MpsTensor {
    int d = 0;
    int D = 0;
    std::vector<CMatrix> A;
    /// Declared block sizes (consecutive basis ranges), if any.
    std::optional<std::vector<int>> blocks;

    /// Checks the invariants; throws InputError with a diagnostic otherwise.
    void validate() const {
        if (d <= 0 || D <= 0) {
            throw InputError("MpsTensor: d and D must be positive");
        }
        if (static_cast<int>(A.size()) != d) {
            throw InputError("MpsTensor: expected " + std::to_string(d) + " matrices, got " +
                             std::to_string(A.size()));
        }
        if (D > limits().max_bond.load()) {
            throw CapExceeded("MpsTensor: bond dimension " + std::to_string(D) + " exceeds --max-bond " +
                              std::to_string(limits().max_bond.load()));
        }
        for (int i = 0; i < d; ++i) {
            const CMatrix &m = A[static_cast<std::size_t>(i)];
            if (m.rows() != D || m.cols() != D) {
                throw InputError("MpsTensor: matrix " + std::to_string(i) + " is not " + std::to_string(D) + "x" +
                                 std::to_string(D));
            }
            if (!all_finite(m)) {
                throw InputError("MpsTensor: matrix " + std::to_string(i) + " has non-finite entries");
            }
        }
        if (blocks) {
            int sum = 0;
            std::vector<int> owner;
            for (std::size_t b = 0; b < blocks->size(); ++b) {
                int sz = (*blocks)[b];
                if (sz <= 0) {
                    throw InputError("MpsTensor: block sizes must be positive");
                }
                for (int k = 0; k < sz; ++k) {
                    owner.push_back(static_cast<int>(b));
                }
                sum += sz;
            }
            if (sum != D) {
                throw InputError("MpsTensor: declared block sizes sum to " + std::to_string(sum) + ", not D=" +
                                 std::to_string(D));
            }
            for (int i = 0; i < d; ++i) {
                for (int r = 0; r < D; ++r) {
                    for (int c = 0; c < D; ++c) {
                        if (owner[static_cast<std::size_t>(r)] != owner[static_cast<std::size_t>(c)] &&
                            std::abs(A[static_cast<std::size_t>(i)](r, c)) > kStructuralZero) {
                            throw InputError("MpsTensor: matrix " + std::to_string(i) +
                                             " is not block diagonal w.r.t. the declared blocks");
                        }
                    }
                }
            }
        }
    }
};

inline MpsTensor make_mps(std::vector<CMatrix> mats, std::optional<std::vector<int>> blocks = std::nullopt) {
    MpsTensor t;
    t.d = static_cast<int>(mats.size());
    t.D = mats.empty() ? 0 : static_cast<int>(mats[0].rows());
    t.A = std::move(mats);
    t.blocks = std::move(blocks);
    t.validate();
    return t;
}

/// A statevector together with its factor dimensions and the norm it had
/// before normalization.
struct State {
    CVector psi;
    std::vector<int> dims;
    double norm = 0;
};

inline State normalized_state(CVector v, std::vector<int> dims) {
    State s;
    s.norm = v.norm();
    if (s.norm == 0.0) {
        throw NumericalError("contraction produced the zero vector");
    }
    s.psi = v / s.norm;
    s.dims = std::move(dims);
    return s;
}

namespace detail {

/// Rows indexed by (a, i1..iN) (a most significant), columns by b:
/// M[(a,i),b] = ⟨a|A^{i1}⋯A^{iN}|b⟩.
inline CMatrix obc_matrix(const MpsTensor &t, int N) {
    const Eigen::Index D = t.D;
    CMatrix M = CMatrix::Identity(D, D);
    for (int site = 0; site < N; ++site) {
        CMatrix next(M.rows() * t.d, D);
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            for (int i = 0; i < t.d; ++i) {
                next.row(r * t.d + i) = M.row(r) * t.A[static_cast<std::size_t>(i)];
            }
        }
        M = std::move(next);
    }
    return M;
}

}  // namespace detail

/// OBC state over (a, i1..iN, b) with amplitude ⟨a|A^{i1}⋯A^{iN}|b⟩.
inline State contract_obc(const MpsTensor &t, int N) {
    t.validate();
    if (N < 0) {
        throw InputError("contract_obc: N must be nonnegative");
    }
    check_amplitude_cap(dpow(t.D, 2) * dpow(t.d, N), "contract_obc");
    CMatrix M = detail::obc_matrix(t, N);
    CVector v(M.size());
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        for (Eigen::Index b = 0; b < M.cols(); ++b) {
            v(r * M.cols() + b) = M(r, b);
        }
    }
    std::vector<int> dims;
    dims.push_back(t.D);
    for (int k = 0; k < N; ++k) {
        dims.push_back(t.d);
    }
    dims.push_back(t.D);
    return normalized_state(std::move(v), std::move(dims));
}

/// PBC state with amplitude Tr(A^{i1}⋯A^{iN}).
inline State contract_pbc(const MpsTensor &t, int N) {
    t.validate();
    if (N < 1) {
        throw InputError("contract_pbc: N must be at least 1");
    }
    check_amplitude_cap(dpow(t.D, 2) * dpow(t.d, N), "contract_pbc");
    CMatrix M = detail::obc_matrix(t, N);
    Eigen::Index phys = M.rows() / t.D;
    CVector v = CVector::Zero(phys);
    for (Eigen::Index a = 0; a < t.D; ++a) {
        for (Eigen::Index x = 0; x < phys; ++x) {
            v(x) += M(a * phys + x, a);
        }
    }
    return normalized_state(std::move(v), std::vector<int>(static_cast<std::size_t>(N), t.d));
}

/// T = Σ_i A^i ⊗ conj(A^i).
inline CMatrix transfer_matrix(const MpsTensor &t) {
    t.validate();
    CMatrix T = CMatrix::Zero(static_cast<Eigen::Index>(t.D) * t.D, static_cast<Eigen::Index>(t.D) * t.D);
    for (const auto &a : t.A) {
        T += kron(a, a.conjugate());
    }
    return T;
}

struct BlockPartition {
    /// Basis indices of each block, in increasing order of smallest index.
    std::vector<std::vector<int>> blocks;
    std::vector<int> sizes() const {
        std::vector<int> s;
        for (const auto &b : blocks) {
            s.push_back(static_cast<int>(b.size()));
        }
        return s;
    }
    bool injective = false;
    /// Shortest product length at which the span reached Σ D_α², or -1.
    int injectivity_length = -1;
    /// Span dimension reached (max over lengths tried) and the target.
    int span_dimension = 0;
    int target_dimension = 0;
    std::string diagnostic;
};

/// Tensor outside the block-injective class.
struct NotBlockInjective : InputError {
    using InputError::InputError;
};

/// Support-graph block detection plus the block-injectivity span test.
/// Never throws on non-injective input; see detect_blocks for the throwing form.
inline BlockPartition analyze_blocks(const MpsTensor &t) {
    t.validate();
    const int D = t.D;
    std::vector<int> parent(static_cast<std::size_t>(D));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto &a : t.A) {
        for (int r = 0; r < D; ++r) {
            for (int c = 0; c < D; ++c) {
                if (std::abs(a(r, c)) > kStructuralZero) {
                    int pr = find(r);
                    int pc = find(c);
                    if (pr != pc) {
                        parent[static_cast<std::size_t>(std::max(pr, pc))] = std::min(pr, pc);
                    }
                }
            }
        }
    }
    BlockPartition bp;
    std::vector<int> root_to_block(static_cast<std::size_t>(D), -1);
    for (int k = 0; k < D; ++k) {
        int r = find(k);
        if (root_to_block[static_cast<std::size_t>(r)] < 0) {
            root_to_block[static_cast<std::size_t>(r)] = static_cast<int>(bp.blocks.size());
            bp.blocks.emplace_back();
        }
        bp.blocks[static_cast<std::size_t>(root_to_block[static_cast<std::size_t>(r)])].push_back(k);
    }
    int target = 0;
    for (const auto &b : bp.blocks) {
        target += static_cast<int>(b.size() * b.size());
    }
    bp.target_dimension = target;

    // Incremental span S_L = span{A^i M : M ∈ S_{L-1}}, kept as an
    // orthonormal basis of row-major vectorized D×D matrices.
    auto orthonormal_rows = [](const CMatrix &rows) -> CMatrix {
        if (rows.rows() == 0) {
            return rows;
        }
        SvdResult s = svd(rows);
        int r = 0;
        for (double x : s.s) {
            if (x > 1e-10 * std::max(1.0, s.s[0])) {
                ++r;
            }
        }
        return s.Vh.topRows(r);
    };
    CMatrix rows(t.d, static_cast<Eigen::Index>(D) * D);
    for (int i = 0; i < t.d; ++i) {
        rows.row(i) = vec(t.A[static_cast<std::size_t>(i)]).transpose();
    }
    CMatrix S = orthonormal_rows(rows);
    int cap = 2 * D * D;
    for (int L = 1; L <= cap; ++L) {
        bp.span_dimension = std::max(bp.span_dimension, static_cast<int>(S.rows()));
        if (S.rows() == target) {
            bp.injective = true;
            bp.injectivity_length = L;
            break;
        }
        if (S.rows() == 0) {
            break;
        }
        CMatrix next(S.rows() * t.d, static_cast<Eigen::Index>(D) * D);
        for (Eigen::Index k = 0; k < S.rows(); ++k) {
            CMatrix M = unvec(S.row(k).transpose(), D, D);
            for (int i = 0; i < t.d; ++i) {
                next.row(k * t.d + i) = vec(t.A[static_cast<std::size_t>(i)] * M).transpose();
            }
        }
        CMatrix S2 = orthonormal_rows(next);
        // A stationary span that is not full will never grow.
        if (S2.rows() == S.rows() && (S2 * S.adjoint()).norm() >= std::sqrt(static_cast<double>(S.rows())) - 1e-9) {
            S = S2;
            bp.span_dimension = std::max(bp.span_dimension, static_cast<int>(S.rows()));
            if (S.rows() != target) {
                break;
            }
        }
        S = std::move(S2);
    }
    if (!bp.injective) {
        std::ostringstream os;
        os << "tensor is not block injective: span of products reached dimension " << bp.span_dimension
           << " but the detected blocks require " << target;
        bp.diagnostic = os.str();
    }
    return bp;
}

/// Finest simultaneous block partition in the given basis; throws
/// NotBlockInjective if the blocks fail the span test.
inline BlockPartition detect_blocks(const MpsTensor &t) {
    BlockPartition bp = analyze_blocks(t);
    if (!bp.injective) {
        throw NotBlockInjective(bp.diagnostic);
    }
    return bp;
}

struct FixedPointData {
    /// Fixed-point projector on C^{D} ⊗ C^{D} (D²×D²).
    CMatrix projector;
    /// Per dominant block: right/left fixed points as D×D matrices embedded in
    /// the full space, normalized so Tr(σ_L† σ_R) = 1. σ_R solves
    /// Σ A σ A† = σ, σ_L solves Σ A† σ A = σ.
    std::vector<CMatrix> sigma_R;
    std::vector<CMatrix> sigma_L;
    /// Partial trace over the second factor of the projector.
    CMatrix pi_tilde;
    /// 1 − |λ_next|/|λ_top| for the full transfer matrix.
    double spectral_gap = 0;
    /// Leading transfer-matrix eigenvalue (dominant blocks).
    double leading_eigenvalue = 0;
    BlockPartition partition;
    /// Indices of blocks whose leading eigenvalue is strictly below the top.
    std::vector<int> subdominant_blocks;
};

inline CMatrix restrict_block(const CMatrix &m, const std::vector<int> &idx) {
    CMatrix r(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
            r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = m(idx[a], idx[b]);
        }
    }
    return r;
}

inline double transfer_gap(const MpsTensor &t, double *leading = nullptr) {
    SpectralResult sr = eig_general(transfer_matrix(t));
    double top = std::abs(sr.eigenvalues[0]);
    if (leading != nullptr) {
        *leading = top;
    }
    if (static_cast<std::size_t>(sr.top_cluster) >= sr.eigenvalues.size() || top == 0.0) {
        return 1.0;
    }
    return 1.0 - std::abs(sr.eigenvalues[static_cast<std::size_t>(sr.top_cluster)]) / top;
}

/// Per-block fixed points assembled into Π = ⊕_α |R_α⟩⟨L_α| and Π̃ = Tr₂ Π.
inline FixedPointData fixed_points(const MpsTensor &t) {
    FixedPointData fp;
    fp.partition = detect_blocks(t);
    const int D = t.D;
    std::vector<double> lam(fp.partition.blocks.size());
    std::vector<CVector> R(fp.partition.blocks.size());
    std::vector<CVector> L(fp.partition.blocks.size());
    for (std::size_t b = 0; b < fp.partition.blocks.size(); ++b) {
        const auto &idx = fp.partition.blocks[b];
        std::vector<CMatrix> sub;
        for (const auto &a : t.A) {
            sub.push_back(restrict_block(a, idx));
        }
        MpsTensor tb = make_mps(sub);
        SpectralResult sr = eig_general(transfer_matrix(tb));
        if (sr.top_cluster != 1) {
            std::ostringstream os;
            os << "block " << b << " has " << sr.top_cluster
               << " degenerate leading fixed points (wrong block declaration?)";
            throw InputError(os.str());
        }
        if (sr.top_defective) {
            throw NumericalError("block " + std::to_string(b) + ": leading eigenvector pair is singular");
        }
        cplx ev = sr.eigenvalues[0];
        if (std::abs(ev.imag()) > 1e-9 * std::abs(ev) || ev.real() <= 0) {
            throw NumericalError("block " + std::to_string(b) + ": leading transfer eigenvalue is not positive");
        }
        lam[b] = ev.real();
        R[b] = sr.right_eigenvectors.col(0);
        L[b] = sr.left_eigenvectors.col(0);
    }
    double top = *std::max_element(lam.begin(), lam.end());
    fp.leading_eigenvalue = top;
    fp.projector = CMatrix::Zero(static_cast<Eigen::Index>(D) * D, static_cast<Eigen::Index>(D) * D);
    for (std::size_t b = 0; b < fp.partition.blocks.size(); ++b) {
        if (lam[b] < top * (1 - kFixedPointTol)) {
            fp.subdominant_blocks.push_back(static_cast<int>(b));
            continue;
        }
        const auto &idx = fp.partition.blocks[b];
        const auto Db = static_cast<Eigen::Index>(idx.size());
        CMatrix sR = unvec(R[b], Db, Db);
        CMatrix sL = unvec(L[b], Db, Db);
        // Normalize ⟨L|R⟩ = Tr(σ_L† σ_R) = 1; make σ_L Hermitian-positive
        // in orientation by fixing the phase of its trace when possible.
        cplx trL = sL.trace();
        if (std::abs(trL) > 1e-12) {
            sL *= std::abs(trL) / trL;
        }
        cplx ip = (sL.adjoint() * sR).trace();
        sR /= ip;
        CMatrix eR = CMatrix::Zero(D, D);
        CMatrix eL = CMatrix::Zero(D, D);
        for (Eigen::Index a = 0; a < Db; ++a) {
            for (Eigen::Index c = 0; c < Db; ++c) {
                eR(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(c)]) = sR(a, c);
                eL(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(c)]) = sL(a, c);
            }
        }
        fp.sigma_R.push_back(eR);
        fp.sigma_L.push_back(eL);
        fp.projector += vec(eR) * vec(eL).adjoint();
    }
    fp.pi_tilde = partial_trace(fp.projector, D, D, Side::First);
    fp.spectral_gap = transfer_gap(t);
    return fp;
}

/// Spectral projector onto the leading cluster of T/|λ_top|, with no block
/// assumption. Returns Π̃ = Tr₂ Π via `pi_tilde` when requested.
inline CMatrix spectral_fixed_projector(const MpsTensor &t, CMatrix *pi_tilde = nullptr) {
    CMatrix T = transfer_matrix(t);
    CMatrix P = leading_spectral_projector(T);
    if (pi_tilde != nullptr) {
        *pi_tilde = partial_trace(P, t.D, t.D, Side::First);
    }
    return P;
}

/// Squared singular values of the normalized OBC state across the cut after
/// `cut` physical sites (the left part includes the left boundary qudit).
/// Descending, with values below 1e-12 dropped.
inline RVector entanglement_spectrum_exact(const MpsTensor &t, int N, int cut) {
    if (cut < 0 || cut > N) {
        throw InputError("entanglement_spectrum_exact: cut must lie in [0, N]");
    }
    State s = contract_obc(t, N);
    Eigen::Index left = t.D;
    for (int k = 0; k < cut; ++k) {
        left *= t.d;
    }
    Eigen::Index right = s.psi.size() / left;
    CMatrix M(left, right);
    for (Eigen::Index r = 0; r < left; ++r) {
        for (Eigen::Index c = 0; c < right; ++c) {
            M(r, c) = s.psi(r * right + c);
        }
    }
    RVector sv = singular_values(M);
    RVector out;
    for (double x : sv) {
        if (x * x >= 1e-12) {
            out.push_back(x * x);
        }
    }
    return out;
}

inline RVector entanglement_spectrum_exact(const MpsTensor &t, int N) {
    return entanglement_spectrum_exact(t, N, N / 2);
}

/// spec(Π̃)/Tr(Π̃), descending, zeros (below 1e-12) dropped.
inline RVector predicted_spectrum(const CMatrix &pi_tilde) {
    RVector ev = real_spectrum(pi_tilde);
    double tr = 0;
    for (double x : ev) {
        tr += x;
    }
    RVector out;
    for (double x : ev) {
        if (x / tr >= 1e-12) {
            out.push_back(x / tr);
        }
    }
    return out;
}

/// max_k |a_k − b_k| with the shorter list padded by zeros.
inline double spectrum_distance(const RVector &a, const RVector &b) {
    std::size_t n = std::max(a.size(), b.size());
    double err = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double x = k < a.size() ? a[k] : 0.0;
        double y = k < b.size() ? b[k] : 0.0;
        err = std::max(err, std::abs(x - y));
    }
    return err;
}

struct PushThroughResult {
    bool found = false;
    /// Best least-squares u (d×d); unitary when found.
    CMatrix u;
    double residual = 0;
    double unitarity_defect = 0;
};

/// Searches for u with Σ_j u_{ij} A^j = V A^i V†.
inline PushThroughResult solve_pushthrough(const MpsTensor &t, const CMatrix &V, double tol = 1e-9) {
    t.validate();
    if (V.rows() != t.D || V.cols() != t.D) {
        throw InputError("solve_pushthrough: V must be DxD");
    }
    const Eigen::Index D2 = static_cast<Eigen::Index>(t.D) * t.D;
    CMatrix Am(t.d, D2);
    CMatrix Bm(t.d, D2);
    for (int i = 0; i < t.d; ++i) {
        Am.row(i) = vec(t.A[static_cast<std::size_t>(i)]).transpose();
        Bm.row(i) = vec(V * t.A[static_cast<std::size_t>(i)] * V.adjoint()).transpose();
    }
    LeastSquaresResult ls = solve_least_squares(Am, Bm);
    PushThroughResult r;
    r.u = ls.X;
    r.residual = ls.residual;
    r.unitarity_defect = unitarity_defect(ls.X);
    r.found = r.residual <= tol * std::max(1.0, Bm.norm()) && r.unitarity_defect <= tol && is_unitary(V, tol);
    return r;
}

/// Generalized Pauli (clock-shift) basis {𝒳^a Z^b}, index b·D + a (shift
/// fastest): I, 𝒳, 𝒳², …, Z, 𝒳Z, …
inline std::vector<CMatrix> clock_shift_basis(int D) {
    std::vector<CMatrix> out;
    CMatrix X = clock_shift_x(D);
    CMatrix Z = clock_z(D);
    for (int b = 0; b < D; ++b) {
        for (int a = 0; a < D; ++a) {
            out.push_back(mat_pow(X, a) * mat_pow(Z, b));
        }
    }
    return out;
}

/// Orthonormality Tr(V†V') = D δ and count D² (hence completeness).
inline void validate_byproduct_basis(const std::vector<CMatrix> &basis, int D, double tol = 1e-9) {
    if (static_cast<int>(basis.size()) != D * D) {
        throw InputError("byproduct basis must contain D^2 = " + std::to_string(D * D) + " operators");
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (basis[a].rows() != D || basis[a].cols() != D) {
            throw InputError("byproduct basis operator " + std::to_string(a) + " is not DxD");
        }
        for (std::size_t b = a; b < basis.size(); ++b) {
            cplx g = (basis[a].adjoint() * basis[b]).trace();
            cplx want = a == b ? cplx(D) : cplx(0);
            if (std::abs(g - want) > tol * D) {
                throw InputError("byproduct basis is not orthonormal: Tr(V" + std::to_string(a) + "^dag V" +
                                 std::to_string(b) + ") != D delta");
            }
        }
    }
}

enum class Verdict { FusibleNecessaryConditionsMet, NotFusible };

inline const char *verdict_name(Verdict v) {
    return v == Verdict::FusibleNecessaryConditionsMet ? "Fusible-necessary-conditions-met" : "NotFusible";
}

struct PushablePair {
    int index = 0;
    CMatrix V;
    CMatrix u;
    double residual = 0;
};

struct FusibilityReport {
    bool flat_spectrum = false;
    RVector spectrum;
    bool equal_blocks = false;
    std::vector<int> block_sizes;
    std::vector<PushablePair> pushable_basis;
    std::optional<CMatrix> obstruction_witness;
    int obstruction_index = -1;
    double obstruction_residual = 0;
    /// Residual of the least-squares push-through for every basis element.
    RVector residuals;
    CMatrix pi_tilde;
    double spectral_gap = 0;
    Verdict verdict = Verdict::NotFusible;
};

inline bool is_flat(const RVector &spec, double tol = 1e-9) {
    if (spec.empty()) {
        return false;
    }
    auto [mn, mx] = std::minmax_element(spec.begin(), spec.end());
    return *mx - *mn <= tol;
}

inline FusibilityReport check_fusibility(const MpsTensor &t, const std::vector<CMatrix> &byproduct_basis) {
    t.validate();
    validate_byproduct_basis(byproduct_basis, t.D);
    FusibilityReport rep;
    FixedPointData fp = fixed_points(t);
    rep.pi_tilde = fp.pi_tilde;
    rep.spectral_gap = fp.spectral_gap;
    rep.spectrum = real_spectrum(fp.pi_tilde);
    rep.flat_spectrum = is_flat(rep.spectrum);
    rep.block_sizes = fp.partition.sizes();
    rep.equal_blocks = std::adjacent_find(rep.block_sizes.begin(), rep.block_sizes.end(), std::not_equal_to<>()) ==
                       rep.block_sizes.end();
    for (std::size_t k = 0; k < byproduct_basis.size(); ++k) {
        PushThroughResult pr = solve_pushthrough(t, byproduct_basis[k]);
        rep.residuals.push_back(pr.residual);
        if (pr.found) {
            rep.pushable_basis.push_back({static_cast<int>(k), byproduct_basis[k], pr.u, pr.residual});
        } else if (!rep.obstruction_witness) {
            rep.obstruction_witness = byproduct_basis[k];
            rep.obstruction_index = static_cast<int>(k);
            rep.obstruction_residual = pr.residual;
        }
    }
    bool ok = rep.flat_spectrum && rep.equal_blocks && !rep.obstruction_witness;
    rep.verdict = ok ? Verdict::FusibleNecessaryConditionsMet : Verdict::NotFusible;
    return rep;
}

inline FusibilityReport check_fusibility(const MpsTensor &t) {
    return check_fusibility(t, clock_shift_basis(t.D));
}

}  // namespace mpsfuse

#endif  // MPSFUSE_MPS_HPP
