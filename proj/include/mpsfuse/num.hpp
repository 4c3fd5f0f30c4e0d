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

#ifndef MPSFUSE_NUM_HPP
#define MPSFUSE_NUM_HPP

// Dense complex linear-algebra kernel. Everything else in the library is built
// on the handful of helpers here: Kronecker products, SVD, general
// eigendecomposition with left eigenvectors, partial traces, least squares and
// local operator application on a mixed-dimension tensor-product vector.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mpsfuse {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Malformed input: wrong shapes, invalid files, unsatisfied preconditions.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (non-convergence, defective spectrum, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configured desk-scale size cap would be exceeded.
struct CapExceeded : InputError {
    using InputError::InputError;
};

/// Size caps. Set once at program start (the CLI flags write them); library
/// code only reads them.
struct Limits {
    std::atomic<std::uint64_t> max_amplitudes{std::uint64_t{1} << 24};
    std::atomic<int> max_bond{16};
    std::atomic<int> threads{1};
};

inline Limits &limits() {
    static Limits l;
    return l;
}

inline std::uint64_t max_matrix_dim() {
    std::uint64_t b = static_cast<std::uint64_t>(limits().max_bond.load());
    return b * b;
}

/// Throws CapExceeded if `count` amplitudes exceed the configured cap.
inline void check_amplitude_cap(double count, const std::string &what) {
    if (count > static_cast<double>(limits().max_amplitudes.load())) {
        throw CapExceeded(what + ": " + std::to_string(static_cast<long double>(count)) +
                          " amplitudes exceed the cap of " +
                          std::to_string(limits().max_amplitudes.load()) + " (raise --max-amplitudes)");
    }
}

/// Integer power with overflow-safe double accumulation, for cap checks.
inline double dpow(double base, int exp) {
    return std::pow(base, static_cast<double>(exp));
}

inline bool all_finite(const CMatrix &m) {
    return m.allFinite();
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    double dim = static_cast<double>(a.rows()) * b.rows();
    double cdim = static_cast<double>(a.cols()) * b.cols();
    double cap = static_cast<double>(std::max<std::uint64_t>(max_matrix_dim(), 1) * 64);
    if (dim > cap || cdim > cap) {
        throw CapExceeded("kron: result dimension exceeds the configured limit");
    }
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

inline CMatrix kron_all(const std::vector<CMatrix> &ms) {
    CMatrix r = CMatrix::Identity(1, 1);
    for (const auto &m : ms) {
        r = kron(r, m);
    }
    return r;
}

/// Row-major vectorization: vec(M)[i*cols + j] = M(i,j). With this convention
/// (A ⊗ conj(A)) vec(σ) = vec(A σ A†).
inline CVector vec(const CMatrix &m) {
    CVector v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

inline CMatrix unvec(const CVector &v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) {
        throw InputError("unvec: size mismatch");
    }
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = v(i * cols + j);
        }
    }
    return m;
}

struct SvdResult {
    CMatrix U;
    RVector s;
    CMatrix Vh;
};

/// Thin SVD, singular values descending.
inline SvdResult svd(const CMatrix &m) {
    if (!all_finite(m)) {
        throw NumericalError("svd: non-finite input");
    }
    SvdResult r;
    if (m.size() == 0) {
        r.U = CMatrix(m.rows(), 0);
        r.Vh = CMatrix(0, m.cols());
        return r;
    }
    Eigen::BDCSVD<CMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("svd: did not converge");
    }
    r.U = solver.matrixU();
    r.Vh = solver.matrixV().adjoint();
    const auto &sv = solver.singularValues();
    r.s.assign(sv.data(), sv.data() + sv.size());
    return r;
}

/// Singular values only, descending.
inline RVector singular_values(const CMatrix &m) {
    if (m.size() == 0) {
        return {};
    }
    Eigen::BDCSVD<CMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("svd: did not converge");
    }
    const auto &sv = solver.singularValues();
    return RVector(sv.data(), sv.data() + sv.size());
}

/// Numerical rank with a threshold relative to the largest singular value.
inline int numerical_rank(const CMatrix &m, double rel_tol = 1e-10) {
    RVector s = singular_values(m);
    if (s.empty() || s[0] == 0.0) {
        return 0;
    }
    int r = 0;
    for (double x : s) {
        if (x > rel_tol * s[0]) {
            ++r;
        }
    }
    return r;
}

struct SpectralResult {
    /// Sorted by descending magnitude (ties broken by argument, then real part).
    std::vector<cplx> eigenvalues;
    /// Column k is the right eigenvector for eigenvalues[k] (unit norm).
    CMatrix right_eigenvectors;
    /// Column k is the left eigenvector l_k with l_j† r_k = δ_jk inside every
    /// cluster of (numerically) equal eigenvalues that is diagonalizable.
    CMatrix left_eigenvectors;
    /// Size of the leading cluster: eigenvalues whose magnitude lies within
    /// `fixed_point_tol` (relative) of the top magnitude.
    int top_cluster = 0;
    /// Whether the leading cluster is diagonalizable.
    bool top_defective = false;
};

inline constexpr double kFixedPointTol = 1e-9;

namespace detail {

inline std::vector<int> spectral_order(const Eigen::VectorXcd &ev) {
    std::vector<int> order(static_cast<std::size_t>(ev.size()));
    std::iota(order.begin(), order.end(), 0);
    // Strict weak order: magnitude (descending), then |arg|, then imaginary part.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        double ma = std::abs(ev(a));
        double mb = std::abs(ev(b));
        if (ma != mb) {
            return ma > mb;
        }
        double pa = std::abs(std::arg(ev(a)));
        double pb = std::abs(std::arg(ev(b)));
        if (pa != pb) {
            return pa < pb;
        }
        return ev(a).imag() > ev(b).imag();
    });
    return order;
}

}  // namespace detail

/// Dense eigendecomposition of a general complex matrix. Left eigenvectors
/// come from a separate decomposition of m†, matched to the right ones by
/// eigenvalue and biorthonormalized cluster by cluster. Defective clusters
/// other than the leading one are tolerated (their left vectors are left
/// unnormalized); a defective leading cluster raises NumericalError.
inline SpectralResult eig_general(const CMatrix &m, double fixed_point_tol = kFixedPointTol) {
    if (m.rows() != m.cols()) {
        throw InputError("eig_general: matrix is not square");
    }
    if (static_cast<std::uint64_t>(m.rows()) > max_matrix_dim()) {
        throw CapExceeded("eig_general: dimension " + std::to_string(m.rows()) + " exceeds the cap of " +
                          std::to_string(max_matrix_dim()) + " (raise --max-bond)");
    }
    if (!all_finite(m)) {
        throw NumericalError("eig_general: non-finite input");
    }
    const Eigen::Index n = m.rows();
    SpectralResult out;
    if (n == 0) {
        return out;
    }
    Eigen::ComplexEigenSolver<CMatrix> rs(m, true);
    Eigen::ComplexEigenSolver<CMatrix> ls(m.adjoint(), true);
    if (rs.info() != Eigen::Success || ls.info() != Eigen::Success) {
        throw NumericalError("eig_general: eigensolver did not converge");
    }
    std::vector<int> ro = detail::spectral_order(rs.eigenvalues());
    // Left eigenvalues are conj(λ); sort those by the conjugated value.
    Eigen::VectorXcd lev = ls.eigenvalues().conjugate();
    std::vector<int> lo = detail::spectral_order(lev);

    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.right_eigenvectors.resize(n, n);
    out.left_eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[static_cast<std::size_t>(k)] = rs.eigenvalues()(ro[static_cast<std::size_t>(k)]);
        out.right_eigenvectors.col(k) = rs.eigenvectors().col(ro[static_cast<std::size_t>(k)]).normalized();
    }
    // Greedy matching of left eigenvalues to right ones (sorted lists are
    // already aligned up to permutations inside near-degenerate groups).
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    double scale = std::max(1.0, m.norm());
    for (Eigen::Index k = 0; k < n; ++k) {
        cplx lam = out.eigenvalues[static_cast<std::size_t>(k)];
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) {
                continue;
            }
            double dist = std::abs(lev(lo[static_cast<std::size_t>(j)]) - lam);
            if (dist < bd) {
                bd = dist;
                best = static_cast<int>(j);
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        out.left_eigenvectors.col(k) = ls.eigenvectors().col(lo[static_cast<std::size_t>(best)]).normalized();
    }
    // Biorthonormalize inside clusters of equal eigenvalues.
    double cluster_tol = 1e-7 * scale;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && std::abs(out.eigenvalues[static_cast<std::size_t>(end)] -
                                   out.eigenvalues[static_cast<std::size_t>(start)]) < cluster_tol) {
            ++end;
        }
        Eigen::Index len = end - start;
        CMatrix Lc = out.left_eigenvectors.middleCols(start, len);
        CMatrix Rc = out.right_eigenvectors.middleCols(start, len);
        CMatrix M = Lc.adjoint() * Rc;
        RVector sv = singular_values(M);
        bool ok = !sv.empty() && sv.back() > 1e-8;
        if (ok) {
            // Want L' with L'† R = I: L' = L M^{-†}.
            out.left_eigenvectors.middleCols(start, len) = Lc * M.inverse().adjoint();
        }
        start = end;
    }
    double top = std::abs(out.eigenvalues[0]);
    int cluster = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(std::abs(out.eigenvalues[static_cast<std::size_t>(k)]) - top) <=
            fixed_point_tol * std::max(top, 1e-300)) {
            ++cluster;
        } else {
            break;
        }
    }
    out.top_cluster = cluster;
    CMatrix Lc = out.left_eigenvectors.leftCols(cluster);
    CMatrix Rc = out.right_eigenvectors.leftCols(cluster);
    CMatrix M = Lc.adjoint() * Rc;
    out.top_defective = (M - CMatrix::Identity(cluster, cluster)).norm() > 1e-6;
    return out;
}

/// Spectral projector Π = R_c L_c† onto the leading cluster of `m`. Throws if
/// that cluster is defective.
inline CMatrix leading_spectral_projector(const CMatrix &m, double fixed_point_tol = kFixedPointTol,
                                          int *cluster_size = nullptr) {
    SpectralResult sr = eig_general(m, fixed_point_tol);
    if (sr.top_defective) {
        throw NumericalError("leading eigenvalue cluster is defective (not diagonalizable within tolerance)");
    }
    if (cluster_size != nullptr) {
        *cluster_size = sr.top_cluster;
    }
    return sr.right_eigenvectors.leftCols(sr.top_cluster) * sr.left_eigenvectors.leftCols(sr.top_cluster).adjoint();
}

enum class Side { First, Second };

/// Partial trace of an operator on C^{d1} ⊗ C^{d2}. `keep` names the factor
/// that survives: keep == Side::First traces out the second factor.
inline CMatrix partial_trace(const CMatrix &m, int d1, int d2, Side keep) {
    if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
        throw InputError("partial_trace: dimension mismatch");
    }
    if (keep == Side::First) {
        CMatrix r = CMatrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i) {
            for (int j = 0; j < d1; ++j) {
                for (int k = 0; k < d2; ++k) {
                    r(i, j) += m(i * d2 + k, j * d2 + k);
                }
            }
        }
        return r;
    }
    CMatrix r = CMatrix::Zero(d2, d2);
    for (int i = 0; i < d2; ++i) {
        for (int j = 0; j < d2; ++j) {
            for (int k = 0; k < d1; ++k) {
                r(i, j) += m(k * d2 + i, k * d2 + j);
            }
        }
    }
    return r;
}

struct LeastSquaresResult {
    CMatrix X;
    double residual = 0;
};

/// Minimizes ‖X A − B‖_F over X. The residual is the achieved Frobenius norm.
inline LeastSquaresResult solve_least_squares(const CMatrix &A, const CMatrix &B) {
    if (A.cols() != B.cols()) {
        throw InputError("solve_least_squares: A and B must have the same number of columns");
    }
    // X A = B  <=>  A† X† = B†.
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(A.adjoint());
    LeastSquaresResult r;
    r.X = cod.solve(B.adjoint()).adjoint();
    r.residual = (r.X * A - B).norm();
    return r;
}

inline double unitarity_defect(const CMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

inline bool is_unitary(const CMatrix &u, double tol = 1e-9) {
    return unitarity_defect(u) <= tol;
}

/// |⟨a|b⟩| / (‖a‖‖b‖): overlap modulus up to global phase and normalization.
inline double overlap_fidelity(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw InputError("overlap_fidelity: size mismatch");
    }
    double na = a.norm();
    double nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::abs(a.dot(b)) / (na * nb);
}

/// Operator equality up to a global phase: min_φ ‖a − e^{iφ} b‖_F.
inline double phase_distance(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    cplx ip = (b.adjoint() * a).trace();
    cplx ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1.0);
    return (a - ph * b).norm();
}

inline bool equal_up_to_phase(const CMatrix &a, const CMatrix &b, double tol = 1e-9) {
    return phase_distance(a, b) <= tol * std::max(1.0, a.norm());
}

/// Product of dimensions, throwing if the result would overflow the cap.
inline std::size_t dims_product(const std::vector<int> &dims) {
    double p = 1;
    std::size_t n = 1;
    for (int d : dims) {
        if (d <= 0) {
            throw InputError("dimension must be positive");
        }
        p *= d;
        n *= static_cast<std::size_t>(d);
    }
    check_amplitude_cap(p, "tensor-product space");
    return n;
}

/// Applies the operator `m` (dimension Π dims[targets], row-major over the
/// listed targets in the given order) to the tensor-product vector `psi`
/// whose factors have dimensions `dims` (first factor most significant).
inline void apply_local(CVector &psi, const std::vector<int> &dims, const std::vector<int> &targets,
                        const CMatrix &m) {
    std::size_t total = dims_product(dims);
    if (static_cast<std::size_t>(psi.size()) != total) {
        throw InputError("apply_local: vector size does not match dims");
    }
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t q = dims.size(); q-- > 0;) {
        stride[q] = s;
        s *= static_cast<std::size_t>(dims[q]);
    }
    std::size_t sub = 1;
    std::vector<bool> is_target(dims.size(), false);
    for (int t : targets) {
        if (t < 0 || static_cast<std::size_t>(t) >= dims.size() || is_target[static_cast<std::size_t>(t)]) {
            throw InputError("apply_local: invalid or repeated target");
        }
        is_target[static_cast<std::size_t>(t)] = true;
        sub *= static_cast<std::size_t>(dims[static_cast<std::size_t>(t)]);
    }
    if (static_cast<std::size_t>(m.rows()) != sub || static_cast<std::size_t>(m.cols()) != sub) {
        throw InputError("apply_local: operator dimension does not match targets");
    }
    // Offsets of the sub-block indexed by the targets.
    std::vector<std::size_t> offs(sub, 0);
    for (std::size_t x = 0; x < sub; ++x) {
        std::size_t rem = x;
        std::size_t off = 0;
        for (std::size_t k = targets.size(); k-- > 0;) {
            auto q = static_cast<std::size_t>(targets[k]);
            auto dq = static_cast<std::size_t>(dims[q]);
            off += (rem % dq) * stride[q];
            rem /= dq;
        }
        offs[x] = off;
    }
    // Enumerate base indices over the non-target factors.
    std::vector<int> rest;
    for (std::size_t q = 0; q < dims.size(); ++q) {
        if (!is_target[q]) {
            rest.push_back(static_cast<int>(q));
        }
    }
    std::size_t nrest = total / sub;
    CVector in(static_cast<Eigen::Index>(sub));
    for (std::size_t r = 0; r < nrest; ++r) {
        std::size_t rem = r;
        std::size_t base = 0;
        for (std::size_t k = rest.size(); k-- > 0;) {
            auto q = static_cast<std::size_t>(rest[k]);
            auto dq = static_cast<std::size_t>(dims[q]);
            base += (rem % dq) * stride[q];
            rem /= dq;
        }
        for (std::size_t x = 0; x < sub; ++x) {
            in(static_cast<Eigen::Index>(x)) = psi(static_cast<Eigen::Index>(base + offs[x]));
        }
        CVector outv = m * in;
        for (std::size_t x = 0; x < sub; ++x) {
            psi(static_cast<Eigen::Index>(base + offs[x])) = outv(static_cast<Eigen::Index>(x));
        }
    }
}

/// Embeds an operator acting on `targets` (in that order) of a register with
/// factor dimensions `dims` as a full dense matrix. Small systems only.
inline CMatrix embed_operator(const std::vector<int> &dims, const std::vector<int> &targets, const CMatrix &m) {
    std::size_t total = dims_product(dims);
    if (total > 4096) {
        throw CapExceeded("embed_operator: dense operator too large");
    }
    CMatrix full(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    for (std::size_t c = 0; c < total; ++c) {
        CVector e = CVector::Zero(static_cast<Eigen::Index>(total));
        e(static_cast<Eigen::Index>(c)) = 1.0;
        apply_local(e, dims, targets, m);
        full.col(static_cast<Eigen::Index>(c)) = e;
    }
    return full;
}

/// Reduced density matrix of the listed factors (in the listed order).
inline CMatrix reduced_density(const CVector &psi, const std::vector<int> &dims, const std::vector<int> &keep) {
    std::size_t total = dims_product(dims);
    if (static_cast<std::size_t>(psi.size()) != total) {
        throw InputError("reduced_density: vector size does not match dims");
    }
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t q = dims.size(); q-- > 0;) {
        stride[q] = s;
        s *= static_cast<std::size_t>(dims[q]);
    }
    std::vector<bool> kept(dims.size(), false);
    std::size_t ks = 1;
    for (int k : keep) {
        kept[static_cast<std::size_t>(k)] = true;
        ks *= static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);
    }
    std::size_t rs = total / ks;
    CMatrix M(static_cast<Eigen::Index>(ks), static_cast<Eigen::Index>(rs));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t ki = 0;
        std::size_t ri = 0;
        for (std::size_t q = 0; q < dims.size(); ++q) {
            std::size_t digit = (idx / stride[q]) % static_cast<std::size_t>(dims[q]);
            if (kept[q]) {
                continue;
            }
            ri = ri * static_cast<std::size_t>(dims[q]) + digit;
        }
        for (int k : keep) {
            auto q = static_cast<std::size_t>(k);
            std::size_t digit = (idx / stride[q]) % static_cast<std::size_t>(dims[q]);
            ki = ki * static_cast<std::size_t>(dims[q]) + digit;
        }
        M(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(ri)) = psi(static_cast<Eigen::Index>(idx));
    }
    return M * M.adjoint();
}

inline double purity(const CMatrix &rho) {
    cplx tr = rho.trace();
    if (std::abs(tr) == 0.0) {
        return 0.0;
    }
    return ((rho * rho).trace() / (tr * tr)).real();
}

/// Eigenvalues of a matrix with (numerically) real spectrum, descending.
/// Throws NumericalError if an imaginary part exceeds `imag_tol`.
inline RVector real_spectrum(const CMatrix &m, double imag_tol = 1e-9) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    if (es.info() != Eigen::Success) {
        throw NumericalError("real_spectrum: eigensolver did not converge");
    }
    RVector out;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        cplx v = es.eigenvalues()(k);
        if (std::abs(v.imag()) > imag_tol) {
            throw NumericalError("spectrum has imaginary part " + std::to_string(v.imag()));
        }
        out.push_back(v.real());
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Reorders the tensor factors of `psi`: factor k of the result is factor
/// perm[k] of the input.
inline CVector permute_factors(const CVector &psi, const std::vector<int> &dims, const std::vector<int> &perm) {
    std::size_t total = dims_product(dims);
    if (perm.size() != dims.size() || static_cast<std::size_t>(psi.size()) != total) {
        throw InputError("permute_factors: shape mismatch");
    }
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t q = dims.size(); q-- > 0;) {
        stride[q] = s;
        s *= static_cast<std::size_t>(dims[q]);
    }
    CVector out(psi.size());
    std::vector<int> digit(dims.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        // idx enumerates output multi-indices in row-major order.
        std::size_t rem = idx;
        std::size_t src = 0;
        for (std::size_t k = perm.size(); k-- > 0;) {
            auto q = static_cast<std::size_t>(perm[k]);
            auto dq = static_cast<std::size_t>(dims[q]);
            src += (rem % dq) * stride[q];
            rem /= dq;
        }
        out(static_cast<Eigen::Index>(idx)) = psi(static_cast<Eigen::Index>(src));
    }
    return out;
}

// ----- Small operator zoo ---------------------------------------------------

inline CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

inline CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline CMatrix hadamard() {
    CMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

/// Shift 𝒳|k⟩ = |k−1 mod D⟩ (so for D=3, 𝒳 = |0⟩⟨1| + |1⟩⟨2| + |2⟩⟨0|).
inline CMatrix clock_shift_x(int D) {
    CMatrix m = CMatrix::Zero(D, D);
    for (int k = 0; k < D; ++k) {
        m((k - 1 + D) % D, k) = 1.0;
    }
    return m;
}

/// Clock Z|k⟩ = ω^k|k⟩ with ω = exp(2πi/D).
inline CMatrix clock_z(int D) {
    CMatrix m = CMatrix::Zero(D, D);
    for (int k = 0; k < D; ++k) {
        m(k, k) = std::polar(1.0, 2.0 * kPi * k / D);
    }
    return m;
}

inline CMatrix mat_pow(const CMatrix &m, int e) {
    CMatrix r = CMatrix::Identity(m.rows(), m.cols());
    for (int k = 0; k < e; ++k) {
        r = r * m;
    }
    return r;
}

/// Diagonal controlled-Z on two qudits of dimension 2 (qubits).
inline CMatrix cz_gate() {
    CMatrix m = CMatrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

/// Computational-basis vector |x⟩ in dimension n.
inline CVector basis_vector(Eigen::Index n, Eigen::Index x) {
    CVector v = CVector::Zero(n);
    v(x) = 1.0;
    return v;
}

}  // namespace mpsfuse

#endif  // MPSFUSE_NUM_HPP
