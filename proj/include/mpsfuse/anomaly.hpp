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

#ifndef MPSFUSE_ANOMALY_HPP
#define MPSFUSE_ANOMALY_HPP

// States with anomalous (cocycle-twisted) G symmetry: the fixed-point state
// |ψ_ω⟩, its symmetry operators U^ω(g), the χ = |G| SIMPS tensor generating
// it, the relations used to correct fusion byproducts, the generalized
// fusion basis and the resulting deterministic preparation protocol.

#include "mpsfuse/fusion.hpp"
#include "mpsfuse/group.hpp"
#include "mpsfuse/simps.hpp"

#include <string>
#include <vector>

namespace mpsfuse {

namespace detail {

inline std::vector<int> ring_dims(const GroupSpec &G, int N) {
    if (N < 2) {
        throw InputError("ring states need at least two sites");
    }
    check_amplitude_cap(dpow(G.order(), N), "periodic group-valued register");
    return std::vector<int>(static_cast<std::size_t>(N), G.order());
}

/// Applies ∏_i u^ω(g)_{i,i+1} (periodic) to psi.
inline void apply_u_ring(CVector &psi, const Cocycle &c, int g, int N) {
    std::vector<int> dims = ring_dims(c.group, N);
    CMatrix u = build_u_omega(c, g);
    for (int i = 0; i < N; ++i) {
        apply_local(psi, dims, {i, (i + 1) % N}, u);
    }
}

inline void apply_L_all(CVector &psi, const GroupSpec &G, int g, int N) {
    std::vector<int> dims = ring_dims(G, N);
    CMatrix l = build_L(G, g);
    for (int i = 0; i < N; ++i) {
        apply_local(psi, dims, {i}, l);
    }
}

inline CVector plus_ring(const GroupSpec &G, int N) {
    std::vector<int> dims = ring_dims(G, N);
    std::size_t n = dims_product(dims);
    return CVector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n)));
}

}  // namespace detail

/// |ψ_ω⟩ ∝ Σ_g ∏_i u^ω(g)_{i,i+1} |+_G … +_G⟩ on a ring of N sites.
inline State build_psi_omega(const Cocycle &c, int N) {
    c.check_shape();
    CVector plus = detail::plus_ring(c.group, N);
    CVector acc = CVector::Zero(plus.size());
    for (int g = 0; g < c.group.order(); ++g) {
        CVector v = plus;
        detail::apply_u_ring(v, c, g, N);
        acc += v;
    }
    return normalized_state(std::move(acc), detail::ring_dims(c.group, N));
}

/// Applies U^ω(g) = ∏_i L(g)_i ∏_i u^ω(g)_{i,i+1} (u first) to a ring state.
inline CVector apply_U_omega(const Cocycle &c, int g, int N, CVector psi) {
    detail::apply_u_ring(psi, c, g, N);
    detail::apply_L_all(psi, c.group, g, N);
    return psi;
}

/// Dense matrix of U^ω(g) on N ring sites.
inline CMatrix build_U_omega(const Cocycle &c, int g, int N) {
    std::vector<int> dims = detail::ring_dims(c.group, N);
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    if (n > 4096) {
        throw CapExceeded("build_U_omega: dense operator limited to dimension 4096");
    }
    CMatrix U(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        U.col(k) = apply_U_omega(c, g, N, basis_vector(n, k));
    }
    return U;
}

/// Dense ∏_i L(h)_i and ∏_i u^ω(g)_{i,i+1} on N ring sites.
inline CMatrix build_L_ring(const GroupSpec &G, int h, int N) {
    std::vector<int> dims = detail::ring_dims(G, N);
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    CMatrix M(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        CVector v = basis_vector(n, k);
        detail::apply_L_all(v, G, h, N);
        M.col(k) = v;
    }
    return M;
}

inline CMatrix build_u_ring(const Cocycle &c, int g, int N) {
    std::vector<int> dims = detail::ring_dims(c.group, N);
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    CMatrix M(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        CVector v = basis_vector(n, k);
        detail::apply_u_ring(v, c, g, N);
        M.col(k) = v;
    }
    return M;
}

/// χ = |G| SIMPS tensor with B^{hk} = diag_ℓ ω(ℓ, h, h⁻¹k); its periodic
/// contraction is |ψ_ω⟩.
inline SimpsTensor build_omega_simps(const Cocycle &c) {
    require_linear_cocycle(c);
    const GroupSpec &G = c.group;
    const int n = G.order();
    std::vector<CMatrix> mats;
    for (int h = 0; h < n; ++h) {
        for (int k = 0; k < n; ++k) {
            CMatrix B = CMatrix::Zero(n, n);
            for (int l = 0; l < n; ++l) {
                B(l, l) = c(l, h, G.mul(G.inv(h), k));
            }
            mats.push_back(B);
        }
    }
    return make_simps(n, std::move(mats));
}

/// Relations of the ω tensor:
///  - "L(g)": u^ω(g) on the physical pair, L(g) on both virtual legs;
///  - "Z(chi)": 𝒵(χ) in, conj 𝒵(χ) out, nothing physical;
///  - "shift(g)": L(g)† on the right physical leg compensated by r^ω(g)† on
///    (left physical, right physical, outgoing virtual).
/// With `wrong_push` the physical part of "L(g)" is u^ω(g⁻¹) (a deliberately
/// false relation, for negative controls).
inline std::vector<SymmetryRelation> omega_relations(const Cocycle &c, bool wrong_push = false) {
    const GroupSpec &G = c.group;
    const int n = G.order();
    std::vector<SymmetryRelation> out;
    CMatrix I = CMatrix::Identity(n, n);
    for (int g = 1; g < n; ++g) {
        SymmetryRelation r;
        r.name = "L" + G.element_name(g);
        r.physical_ops = {{{Leg::PhysLeft, Leg::PhysRight}, build_u_omega(c, wrong_push ? G.inv(g) : g)}};
        r.virtual_in = build_L(G, g);
        r.virtual_out = build_L(G, g);
        out.push_back(std::move(r));
    }
    for (int k = 1; k < n; ++k) {
        SymmetryRelation r;
        r.name = "Z" + G.element_name(k);
        CMatrix z = build_Z_char(character(G, k));
        r.virtual_in = z;
        r.virtual_out = z.conjugate();
        out.push_back(std::move(r));
    }
    for (int g = 1; g < n; ++g) {
        SymmetryRelation r;
        r.name = "shift" + G.element_name(g);
        r.physical_ops = {{{Leg::PhysRight}, build_L(G, g).adjoint()},
                          {{Leg::PhysLeft, Leg::PhysRight, Leg::VirtOut}, build_r_omega(c, g).adjoint()}};
        r.virtual_in = I;
        r.virtual_out = I;
        out.push_back(std::move(r));
    }
    return out;
}

/// Orthonormal basis {(𝒵(χ) L(g) ⊗ I)|Ω_G⟩} of the two-leg space, column
/// index χ·|G| + g.
inline CMatrix generalized_fusion_basis(const GroupSpec &G) {
    G.validate();
    const int n = G.order();
    CMatrix basis(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    CVector omega = omega_G(G);
    for (int k = 0; k < n; ++k) {
        for (int g = 0; g < n; ++g) {
            CVector v = omega;
            apply_local(v, {n, n}, {0}, build_Z_char(character(G, k)) * build_L(G, g));
            basis.col(k * n + g) = v;
        }
    }
    return basis;
}

/// Byproducts inserted by the generalized fusion basis: W = conj(𝒵(χ)L(g)).
inline std::vector<CMatrix> generalized_fusion_byproducts(const GroupSpec &G) {
    const int n = G.order();
    std::vector<CMatrix> out;
    for (int k = 0; k < n; ++k) {
        for (int g = 0; g < n; ++g) {
            out.push_back((build_Z_char(character(G, k)) * build_L(G, g)).conjugate());
        }
    }
    return out;
}

/// Deterministic preparation of the OBC ω state from n_blocks seed blocks
/// of block_len sites (SIMPS fusion with the ω relations). `wrong_push`
/// builds the negative control whose step-2 corrections use u^ω(g⁻¹).
inline FusionProtocol build_anomalous_fusion_protocol(const Cocycle &c, int n_blocks, int block_len,
                                                     bool wrong_push = false) {
    require_linear_cocycle(c);
    SimpsTensor s = build_omega_simps(c);
    SimpsFusionOptions opt;
    opt.phys_group = c.group;
    opt.byproducts = generalized_fusion_byproducts(c.group);
    FusionProtocol p;
    if (!wrong_push) {
        p = build_simps_fusion_protocol(s, omega_relations(c), n_blocks, block_len, opt);
    } else {
        opt.skip_relation_check = true;
        p = build_simps_fusion_protocol(s, omega_relations(c, true), n_blocks, block_len, opt);
    }
    p.name = wrong_push ? "anomalous-fusion-wrong-correction" : "anomalous-fusion";
    return p;
}

}  // namespace mpsfuse

#endif  // MPSFUSE_ANOMALY_HPP
