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

#ifndef MPSFUSE_QUDIT_HPP
#define MPSFUSE_QUDIT_HPP

// Exact statevector over an ordered list of mixed-dimension qudits, with
// unitary gates, state injection and projective measurement. Measured qudits
// are reset to |0⟩ and stay in the register so indices never move.

#include "mpsfuse/num.hpp"

#include <string>
#include <vector>

namespace mpsfuse {

enum class QuditRole { Bulk, Boundary, Ancilla };

inline const char *qudit_role_name(QuditRole r) {
    switch (r) {
        case QuditRole::Bulk:
            return "bulk";
        case QuditRole::Boundary:
            return "boundary";
        case QuditRole::Ancilla:
            return "ancilla";
    }
    return "?";
}

inline constexpr double kNormTol = 1e-10;
inline constexpr double kBranchPruneTol = 1e-12;

/// Checks that the columns of `basis` form an orthonormal basis.
inline bool is_orthonormal_basis(const CMatrix &basis, double tol = 1e-9) {
    return basis.rows() == basis.cols() && is_unitary(basis, tol);
}

struct MeasurementBranch {
    int outcome = 0;
    double probability = 0;
    /// Normalized post-measurement state with the measured qudits in |0⟩.
    CVector post_state;
};

class QuditRegister {
   public:
    QuditRegister() = default;

    /// All qudits start in |0⟩.
    explicit QuditRegister(std::vector<int> dims, std::vector<QuditRole> roles = {})
        : dims_(std::move(dims)), roles_(std::move(roles)) {
        for (int d : dims_) {
            if (d < 1) {
                throw InputError("QuditRegister: qudit dimensions must be positive");
            }
        }
        if (roles_.empty()) {
            roles_.assign(dims_.size(), QuditRole::Bulk);
        }
        if (roles_.size() != dims_.size()) {
            throw InputError("QuditRegister: one role per qudit is required");
        }
        std::size_t n = dims_product(dims_);
        check_amplitude_cap(static_cast<double>(n), "qudit register");
        amps_ = CVector::Zero(static_cast<Eigen::Index>(n));
        amps_(0) = 1.0;
    }

    QuditRegister(std::vector<int> dims, CVector amplitudes, std::vector<QuditRole> roles = {})
        : QuditRegister(std::move(dims), std::move(roles)) {
        if (amplitudes.size() != amps_.size()) {
            throw InputError("QuditRegister: amplitude vector has the wrong length");
        }
        if (std::abs(amplitudes.norm() - 1.0) > kNormTol) {
            throw InputError("QuditRegister: amplitudes must have unit norm");
        }
        amps_ = std::move(amplitudes);
    }

    const std::vector<int> &dims() const {
        return dims_;
    }
    const std::vector<QuditRole> &roles() const {
        return roles_;
    }
    const CVector &amplitudes() const {
        return amps_;
    }
    int size() const {
        return static_cast<int>(dims_.size());
    }

    int target_dimension(const std::vector<int> &targets) const {
        check_targets(targets);
        int dim = 1;
        for (int q : targets) {
            dim *= dims_[static_cast<std::size_t>(q)];
        }
        return dim;
    }

    /// Applies a unitary to `targets` (joint index row-major in target order).
    void apply_gate(const std::vector<int> &targets, const CMatrix &g) {
        int dim = target_dimension(targets);
        if (g.rows() != dim || g.cols() != dim) {
            throw InputError("apply_gate: gate dimension does not match its targets");
        }
        if (!is_unitary(g)) {
            throw InputError("apply_gate: gate is not unitary");
        }
        apply_local(amps_, dims_, targets, g);
        check_norm("apply_gate");
    }

    /// Replaces the |0…0⟩ state of `targets` by `state` (the targets must be
    /// unentangled and in |0…0⟩).
    void inject(const std::vector<int> &targets, const CVector &state) {
        int dim = target_dimension(targets);
        if (state.size() != dim) {
            throw InputError("inject: state dimension does not match its targets");
        }
        if (std::abs(state.norm() - 1.0) > kNormTol) {
            throw InputError("inject: state must be normalized");
        }
        // Weight of the targets on |0…0⟩ must be one.
        std::vector<std::size_t> stride = strides();
        double w0 = 0;
        CVector out = CVector::Zero(amps_.size());
        std::vector<std::size_t> offs = target_offsets(targets, stride);
        for (Eigen::Index idx = 0; idx < amps_.size(); ++idx) {
            if (!targets_zero(static_cast<std::size_t>(idx), targets, stride)) {
                continue;
            }
            cplx a = amps_(idx);
            w0 += std::norm(a);
            for (int x = 0; x < dim; ++x) {
                out(static_cast<Eigen::Index>(static_cast<std::size_t>(idx) + offs[static_cast<std::size_t>(x)])) +=
                    a * state(x);
            }
        }
        if (std::abs(w0 - 1.0) > kNormTol) {
            throw InputError("inject: target qudits are not in |0...0>");
        }
        amps_ = std::move(out);
        check_norm("inject");
    }

    /// Projective measurement of `targets` in the orthonormal basis given by
    /// the columns of `basis`. Branches with probability below 1e-12 are
    /// dropped; the rest are ordered by outcome.
    std::vector<MeasurementBranch> measure(const std::vector<int> &targets, const CMatrix &basis) const {
        int dim = target_dimension(targets);
        if (basis.rows() != dim || !is_orthonormal_basis(basis)) {
            throw InputError("measure: basis must be an orthonormal basis of the target space");
        }
        CVector rotated = amps_;
        apply_local(rotated, dims_, targets, basis.adjoint());
        std::vector<std::size_t> stride = strides();
        std::vector<std::size_t> offs = target_offsets(targets, stride);
        // Joint target value of every amplitude index, and the index with
        // the targets zeroed.
        std::vector<CVector> slices(static_cast<std::size_t>(dim), CVector::Zero(amps_.size()));
        for (Eigen::Index idx = 0; idx < rotated.size(); ++idx) {
            cplx a = rotated(idx);
            if (a == cplx(0)) {
                continue;
            }
            std::size_t value = 0;
            std::size_t base = static_cast<std::size_t>(idx);
            for (int q : targets) {
                auto qq = static_cast<std::size_t>(q);
                std::size_t digit = (static_cast<std::size_t>(idx) / stride[qq]) % static_cast<std::size_t>(dims_[qq]);
                value = value * static_cast<std::size_t>(dims_[qq]) + digit;
                base -= digit * stride[qq];
            }
            slices[value](static_cast<Eigen::Index>(base)) = a;
        }
        std::vector<MeasurementBranch> out;
        for (int s = 0; s < dim; ++s) {
            double p = slices[static_cast<std::size_t>(s)].squaredNorm();
            if (p < kBranchPruneTol) {
                continue;
            }
            MeasurementBranch b;
            b.outcome = s;
            b.probability = p;
            b.post_state = slices[static_cast<std::size_t>(s)] / std::sqrt(p);
            out.push_back(std::move(b));
        }
        return out;
    }

    /// Continues with one measurement branch.
    void collapse_to(const MeasurementBranch &b) {
        if (b.post_state.size() != amps_.size()) {
            throw InputError("collapse_to: branch belongs to a different register");
        }
        amps_ = b.post_state;
    }

    /// Reduced density matrix of `keep`.
    CMatrix reduced(const std::vector<int> &keep) const {
        check_targets(keep);
        return reduced_density(amps_, dims_, keep);
    }

   private:
    std::vector<int> dims_;
    std::vector<QuditRole> roles_;
    CVector amps_;

    void check_targets(const std::vector<int> &targets) const {
        std::vector<bool> seen(dims_.size(), false);
        for (int q : targets) {
            if (q < 0 || q >= size()) {
                throw InputError("qudit index out of range: " + std::to_string(q));
            }
            if (seen[static_cast<std::size_t>(q)]) {
                throw InputError("duplicate qudit target: " + std::to_string(q));
            }
            seen[static_cast<std::size_t>(q)] = true;
        }
    }
    void check_norm(const char *what) const {
        if (std::abs(amps_.norm() - 1.0) > kNormTol) {
            throw NumericalError(std::string(what) + ": register norm drifted beyond 1e-10");
        }
    }
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> stride(dims_.size());
        std::size_t s = 1;
        for (std::size_t k = dims_.size(); k-- > 0;) {
            stride[k] = s;
            s *= static_cast<std::size_t>(dims_[k]);
        }
        return stride;
    }
    std::vector<std::size_t> target_offsets(const std::vector<int> &targets, const std::vector<std::size_t> &stride) const {
        int dim = 1;
        for (int q : targets) {
            dim *= dims_[static_cast<std::size_t>(q)];
        }
        std::vector<std::size_t> offs(static_cast<std::size_t>(dim), 0);
        for (int x = 0; x < dim; ++x) {
            std::size_t rem = static_cast<std::size_t>(x);
            std::size_t off = 0;
            for (std::size_t k = targets.size(); k-- > 0;) {
                auto q = static_cast<std::size_t>(targets[k]);
                auto dq = static_cast<std::size_t>(dims_[q]);
                off += (rem % dq) * stride[q];
                rem /= dq;
            }
            offs[static_cast<std::size_t>(x)] = off;
        }
        return offs;
    }
    bool targets_zero(std::size_t idx, const std::vector<int> &targets, const std::vector<std::size_t> &stride) const {
        for (int q : targets) {
            auto qq = static_cast<std::size_t>(q);
            if ((idx / stride[qq]) % static_cast<std::size_t>(dims_[qq]) != 0) {
                return false;
            }
        }
        return true;
    }
};

/// Places `state` (over the qudits `positions`, in that order) into a
/// register of dimensions `dims` with every other qudit in |0⟩.
inline CVector embed_state(const CVector &state, const std::vector<int> &dims, const std::vector<int> &positions) {
    QuditRegister r(dims);
    r.inject(positions, state);
    return r.amplitudes();
}

/// Generalized Bell basis built from a byproduct list: column s is
/// conj(vec(V_s))/√D, so projecting two legs onto it inserts V_s.
inline CMatrix bell_basis_from_byproducts(const std::vector<CMatrix> &byproducts) {
    if (byproducts.empty()) {
        throw InputError("bell basis: byproduct list is empty");
    }
    const Eigen::Index D = byproducts[0].rows();
    if (static_cast<Eigen::Index>(byproducts.size()) != D * D) {
        throw InputError("bell basis: need exactly D^2 byproducts");
    }
    CMatrix basis(D * D, D * D);
    for (std::size_t s = 0; s < byproducts.size(); ++s) {
        if (byproducts[s].rows() != D || byproducts[s].cols() != D) {
            throw InputError("bell basis: byproducts must all be D x D");
        }
        basis.col(static_cast<Eigen::Index>(s)) = vec(byproducts[s].conjugate()) / std::sqrt(static_cast<double>(D));
    }
    if (!is_orthonormal_basis(basis)) {
        throw InputError("bell basis: byproducts violate Tr(V^dag V') = D delta");
    }
    return basis;
}

/// Byproduct of outcome s for a two-leg fusion unitary U (measure after U in
/// the computational basis): ⟨s|U reshaped to D×D and scaled by √D.
inline CMatrix identify_byproduct(const CMatrix &U, int outcome) {
    const Eigen::Index n = U.rows();
    const auto D = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (D * D != n || U.cols() != n || !is_unitary(U)) {
        throw InputError("identify_byproduct: U must be a unitary on two D-dimensional legs");
    }
    if (outcome < 0 || outcome >= n) {
        throw InputError("identify_byproduct: outcome out of range");
    }
    // Orthonormality Tr(V^dag V') = D delta holds for all rows of a unitary.
    CVector row = U.row(outcome).transpose();
    return unvec(row, D, D) * std::sqrt(static_cast<double>(D));
}

/// Generalized controlled shift Σ_x |x⟩⟨x| ⊗ X^{x} on Z_d × Z_d
/// (X|k⟩ = |k−1⟩, so the target becomes y − x).
inline CMatrix controlled_shift(int d) {
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
            m(x * d + ((y - x) % d + d) % d, x * d + y) = 1.0;
        }
    }
    return m;
}

}  // namespace mpsfuse

#endif  // MPSFUSE_QUDIT_HPP
