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

#include "mpsfuse/catalog.hpp"
#include "mpsfuse/fusion.hpp"

#include <gtest/gtest.h>

using namespace mpsfuse;

namespace {

/// Bulk and boundary operators of an OBC symmetry on (a, i1..iK, b).
struct ObcSymmetry {
    CMatrix left;
    CMatrix right;
};

/// Ū_Z: Z on a, Z on the first K−1 bulk sites, Z on b.
CVector apply_u_z_bar(CVector v, const std::vector<int> &dims, const ObcSymmetry &b) {
    const int n = static_cast<int>(dims.size());
    apply_local(v, dims, {0}, b.left);
    for (int k = 1; k <= n - 3; ++k) {
        apply_local(v, dims, {k}, pauli_z());
    }
    apply_local(v, dims, {n - 1}, b.right);
    return v;
}

/// Ū_CZ: X on a, CZ on every adjacent bulk pair, X on b.
CVector apply_u_cz_bar(CVector v, const std::vector<int> &dims, const ObcSymmetry &b) {
    const int n = static_cast<int>(dims.size());
    apply_local(v, dims, {0}, b.left);
    for (int k = 1; k + 1 <= n - 2; ++k) {
        apply_local(v, dims, {k, k + 1}, cz_gate());
    }
    apply_local(v, dims, {n - 1}, b.right);
    return v;
}

}  // namespace

TEST(Catalog, EveryEntryIsWellFormed) {
    for (const std::string &name : catalog_names()) {
        CatalogEntry e = catalog_get(name);
        EXPECT_EQ(e.name, name);
        EXPECT_FALSE(e.description.empty()) << name;
        ASSERT_TRUE(e.target_builder) << name;
        CVector t = e.target_builder(4);
        EXPECT_NEAR(t.norm(), 1.0, 1e-12) << name;
        if (e.mps) {
            EXPECT_NEAR(overlap_fidelity(contract_pbc(*e.mps, 4).psi, t), 1.0, 1e-10) << name;
        }
        if (e.simps) {
            EXPECT_NEAR(overlap_fidelity(contract_simps_pbc(*e.simps, 4).psi, t), 1.0, 1e-10) << name;
            for (const auto &r : e.symmetry_relations) {
                EXPECT_TRUE(verify_symmetry(*e.simps, r)) << name << " " << r.name;
            }
        }
    }
    EXPECT_THROW(catalog_get("cluster"), InputError);
}

TEST(Catalog, GhzQuditRange) {
    EXPECT_THROW(ghz_qudit(1), InputError);
    EXPECT_THROW(ghz_qudit(6), InputError);
    EXPECT_EQ(ghz_qudit(2).name, "ghz");
    for (int d = 2; d <= 5; ++d) {
        CatalogEntry e = ghz_qudit(d);
        ASSERT_TRUE(e.mps && e.simps);
        EXPECT_EQ(e.mps->D, d);
        EXPECT_EQ(e.simps->chi_max(), 1);
        EXPECT_NEAR(resource_theta(*e.mps, *e.simps), std::log2(d), 1e-12);
    }
}

TEST(Catalog, AkltGlobalSymmetry) {
    State s = contract_pbc(catalog::aklt_tensor(), 5);
    std::vector<CMatrix> us;
    for (int p = 0; p < 3; ++p) {
        // exp(iπS^P) in the Cartesian basis: +1 on component P, −1 elsewhere.
        CMatrix u = -CMatrix::Identity(3, 3);
        u(p, p) = 1;
        us.push_back(u);
    }
    for (const CMatrix &u : us) {
        CVector v = s.psi;
        for (int i = 0; i < 5; ++i) {
            apply_local(v, s.dims, {i}, u);
        }
        EXPECT_NEAR(overlap_fidelity(v, s.psi), 1.0, 1e-12);
    }
}

TEST(Catalog, NormalSimpsObcSymmetriesWithBoundaryActions) {
    ObcSymmetry z{pauli_z(), pauli_z()};
    ObcSymmetry cz{pauli_x(), pauli_x()};
    const double cz_without_boundary[] = {0.5, 0.25, 0.25};
    for (int K : {3, 4, 5}) {
        State st = contract_simps_obc(catalog::normal_simps(), K);
        EXPECT_NEAR(overlap_fidelity(apply_u_z_bar(st.psi, st.dims, z), st.psi), 1.0, 1e-12) << K;
        EXPECT_NEAR(overlap_fidelity(apply_u_cz_bar(st.psi, st.dims, cz), st.psi), 1.0, 1e-12) << K;
        // Dropping the boundary action breaks the symmetry.
        ObcSymmetry none{CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)};
        EXPECT_NEAR(overlap_fidelity(apply_u_cz_bar(st.psi, st.dims, none), st.psi), cz_without_boundary[K - 3], 1e-12)
            << K;
        EXPECT_NEAR(overlap_fidelity(apply_u_z_bar(st.psi, st.dims, none), st.psi), 0.0, 1e-12) << K;
    }
    // The two boundary actions anticommute on the left boundary qubit.
    EXPECT_LT((z.left * cz.left + cz.left * z.left).norm(), 1e-15);
    EXPECT_GT((z.left * cz.left - cz.left * z.left).norm(), 1.0);
}

TEST(Catalog, PlusPlusClusterNormalization) {
    CVector v = catalog::plus_plus_cluster(4);
    EXPECT_NEAR(v.norm(), 1.0, 1e-15);
    EXPECT_NEAR(overlap_fidelity(v, catalog::plus_plus_cluster(4, -1.0)), 0.0, 1e-12);
}

TEST(ParentHamiltonian, KernelIsPlusAndCluster) {
    const double gaps[] = {3.05572809, 4.686291501, 3.05572809, 3.18513424, 2.831325443};
    for (int N = 4; N <= 8; ++N) {
        ParentHamiltonianReport r = parent_hamiltonian_check(N);
        EXPECT_TRUE(r.hermitian);
        EXPECT_EQ(r.kernel_dimension, 2) << N;
        EXPECT_LT(r.kernel_span_defect, 1e-9) << N;
        EXPECT_LT(r.plus_residual, 1e-10);
        EXPECT_LT(r.cluster_residual, 1e-10);
        EXPECT_LT(r.max_term_residual, 1e-10);
        EXPECT_LT(r.max_symmetrized_residual, 1e-10);
        EXPECT_NEAR(r.gap, gaps[N - 4], 1e-6) << N;
    }
    EXPECT_THROW(parent_hamiltonian_check(3), InputError);
    EXPECT_THROW(parent_hamiltonian_term(11, 0), InputError);
}

TEST(ParentHamiltonian, TermIsHermitian) {
    CMatrix h = parent_hamiltonian_term(5, 2);
    EXPECT_LT((h - h.adjoint()).norm(), 1e-12);
}

TEST(MajumdarGhosh, MapsToPlusPlusCluster) {
    for (int N : {4, 6, 8}) {
        MajumdarGhoshReport r = majumdar_ghosh_check(N);
        EXPECT_EQ(r.sign, (N / 2) % 2 == 0 ? 1 : -1);
        EXPECT_FALSE(r.degenerate);
        EXPECT_NEAR(r.fidelity, 1.0, 1e-9) << N;
        EXPECT_NEAR(r.fidelity_opposite, 0.0, 1e-9) << N;
    }
    MajumdarGhoshReport r2 = majumdar_ghosh_check(2);
    EXPECT_TRUE(r2.degenerate);
    EXPECT_FALSE(r2.note.empty());
    EXPECT_THROW(majumdar_ghosh_state(5), InputError);
}

TEST(MajumdarGhosh, StateIsSingletSuperposition) {
    CVector v = majumdar_ghosh_state(4);
    EXPECT_NEAR(v.norm(), 1.0, 1e-15);
    // Total S^z = 0: no weight on |0000⟩ or |1111⟩.
    EXPECT_NEAR(std::abs(v(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(15)), 0.0, 1e-15);
}
