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

#include "mpsfuse/anomaly.hpp"
#include "mpsfuse/catalog.hpp"
#include "mpsfuse/fusion.hpp"

#include <gtest/gtest.h>

using namespace mpsfuse;

TEST(Group, ProductGroupIndexing) {
    GroupSpec G{{2, 3}};
    G.validate();
    EXPECT_EQ(G.order(), 6);
    EXPECT_EQ(G.exponent(), 6);
    EXPECT_TRUE(check_group_axioms(G));
    EXPECT_EQ(G.element(5), (std::vector<int>{1, 2}));
    EXPECT_EQ(G.index({1, 2}), 5);
    EXPECT_EQ(G.mul(G.index({1, 2}), G.index({1, 2})), G.index({0, 1}));
    EXPECT_EQ(G.inv(G.index({1, 1})), G.index({1, 2}));
    EXPECT_EQ(G.element_name(4), "(1,1)");
    EXPECT_THROW((GroupSpec{{}}).validate(), InputError);
    EXPECT_THROW((GroupSpec{{0}}).validate(), InputError);
}

TEST(Group, CharactersAreHomomorphisms) {
    GroupSpec G{{2, 2}};
    for (int k = 0; k < G.order(); ++k) {
        EXPECT_TRUE(check_character(character(G, k)));
    }
    Character c = character(cyclic_group(3), 1);
    EXPECT_NEAR(std::abs(c(1) - std::polar(1.0, 2 * kPi / 3)), 0, 1e-15);
}

TEST(Group, LeftMultiplicationAndClockOperators) {
    GroupSpec G = cyclic_group(3);
    // L(g)|h⟩ = |gh⟩.
    EXPECT_LT((build_L(G, 1) * basis_vector(3, 2) - basis_vector(3, 0)).norm(), 1e-15);
    EXPECT_LT((build_L(G, 1) * build_L(G, 2) - CMatrix::Identity(3, 3)).norm(), 1e-15);
    EXPECT_LT((build_Z_char(character(G, 1)) - clock_z(3)).norm(), 1e-12);
    EXPECT_NEAR(omega_G(G).norm(), 1.0, 1e-15);
}

TEST(Cocycle, TypeOneZ2IsLinearAndNontrivial) {
    Cocycle c = type_one_cocycle(2, 1);
    for (int g = 0; g < 2; ++g) {
        for (int h = 0; h < 2; ++h) {
            for (int k = 0; k < 2; ++k) {
                cplx want = (g == 1 && h == 1 && k == 1) ? cplx(-1) : cplx(1);
                EXPECT_NEAR(std::abs(c(g, h, k) - want), 0, 1e-15);
            }
        }
    }
    CocycleReport r = validate_cocycle(c);
    EXPECT_TRUE(r.unit_modulus);
    EXPECT_TRUE(r.is_cocycle);
    EXPECT_TRUE(r.is_linear_first_arg);
    EXPECT_FALSE(is_coboundary(c).has_value());
}

TEST(Cocycle, TypeOneZ3IsNontrivial) {
    Cocycle c = type_one_cocycle(3, 1);
    EXPECT_NO_THROW(require_linear_cocycle(c));
    EXPECT_FALSE(is_coboundary(c).has_value());
    EXPECT_TRUE(is_coboundary(trivial_cocycle(cyclic_group(3))).has_value());
}

TEST(Cocycle, CoboundariesAreRecognizedExactly) {
    GroupSpec G = cyclic_group(3);
    std::vector<cplx> beta(9, 1.0);
    beta[1 * 3 + 2] = std::polar(1.0, 2 * kPi / 9);
    beta[2 * 3 + 2] = std::polar(1.0, 2 * kPi * 4 / 27);
    Cocycle c = coboundary_of(G, beta);
    EXPECT_TRUE(validate_cocycle(c).is_cocycle);
    auto found = is_coboundary(c);
    ASSERT_TRUE(found.has_value());
    Cocycle back = coboundary_of(G, *found);
    for (std::size_t k = 0; k < c.table.size(); ++k) {
        EXPECT_NEAR(std::abs(back.table[k] - c.table[k]), 0, 1e-9);
    }
}

TEST(Cocycle, InvalidTablesAreReported) {
    GroupSpec G = cyclic_group(2);
    Cocycle broken = cocycle_from_phases(G, {{1, 1, 0, 1, 2}}, false);
    CocycleReport r = validate_cocycle(broken);
    EXPECT_FALSE(r.is_cocycle);
    EXPECT_FALSE(r.violation.empty());
    EXPECT_THROW(require_linear_cocycle(broken), InputError);
    // A phase that is not a root of unity of order dividing exp(G)²|G|.
    Cocycle irr = trivial_cocycle(G);
    irr.table[7] = std::polar(1.0, 0.1234);
    EXPECT_THROW(is_coboundary(irr), InputError);
    EXPECT_THROW(cocycle_from_phases(G, {{2, 0, 0, 1, 2}}, false), InputError);
    EXPECT_THROW(cocycle_from_phases(G, {{1, 1, 1, 1, 0}}, false), InputError);
}

TEST(Cocycle, RewrittenCocycleConditionHolds) {
    // ω(g,hk,k⁻¹ℓ) ω(h,k,k⁻¹ℓ) = ω(gh,k,k⁻¹ℓ) ω(g,h,ℓ) / ω(g,h,k).
    for (int N : {2, 3}) {
        Cocycle c = type_one_cocycle(N, 1);
        const GroupSpec &G = c.group;
        for (int g = 0; g < N; ++g) {
            for (int h = 0; h < N; ++h) {
                for (int k = 0; k < N; ++k) {
                    for (int l = 0; l < N; ++l) {
                        int m = G.mul(G.inv(k), l);
                        cplx lhs = c(g, G.mul(h, k), m) * c(h, k, m);
                        cplx rhs = c(G.mul(g, h), k, m) * c(g, h, l) / c(g, h, k);
                        EXPECT_LT(std::abs(lhs - rhs), 1e-10);
                    }
                }
            }
        }
    }
}

TEST(AnomalyOperators, ConjugationIdentityAndRepresentation) {
    for (int N : {2, 3}) {
        Cocycle c = type_one_cocycle(N, 1);
        const GroupSpec &G = c.group;
        for (int g = 0; g < N; ++g) {
            for (int h = 0; h < N; ++h) {
                CMatrix LL = kron(build_L(G, h), build_L(G, h));
                CMatrix v = build_v_omega(c, g, h);
                CMatrix lhs = LL.adjoint() * build_u_omega(c, g) * LL;
                CMatrix rhs = build_u_omega(c, g) * kron(v.inverse(), v);
                EXPECT_LT((lhs - rhs).norm(), 1e-10);
                EXPECT_LT((build_u_omega(c, g) * build_u_omega(c, h) - build_u_omega(c, G.mul(g, h))).norm(), 1e-10);
                CMatrix A = build_L_ring(G, h, 4);
                CMatrix B = build_u_ring(c, g, 4);
                EXPECT_LT((A * B - B * A).norm(), 1e-10);
            }
            EXPECT_TRUE(is_unitary(build_r_omega(c, g)));
        }
    }
}

TEST(AnomalyOperators, Z2SymmetryIsXZCZCircuit) {
    Cocycle c = type_one_cocycle(2, 1);
    std::vector<int> dims(4, 2);
    CMatrix W = CMatrix::Identity(16, 16);
    for (int i = 0; i < 4; ++i) {
        W = embed_operator(dims, {i, (i + 1) % 4}, cz_gate()) * W;
    }
    for (int i = 0; i < 4; ++i) {
        W = embed_operator(dims, {i}, pauli_z()) * W;
    }
    for (int i = 0; i < 4; ++i) {
        W = embed_operator(dims, {i}, pauli_x()) * W;
    }
    EXPECT_LT((build_U_omega(c, 1, 4) - W).norm(), 1e-10);
}

TEST(AnomalyState, Z2StateIsPlusPlusZCluster) {
    Cocycle c = type_one_cocycle(2, 1);
    std::vector<int> dims(4, 2);
    CVector plus = CVector::Constant(16, 0.25);
    CVector zc = plus;
    for (int i = 0; i < 4; ++i) {
        apply_local(zc, dims, {i, (i + 1) % 4}, cz_gate());
        apply_local(zc, dims, {i}, pauli_z());
    }
    EXPECT_NEAR(overlap_fidelity(plus + zc, build_psi_omega(c, 4).psi), 1.0, 1e-12);
}

TEST(AnomalyState, TrivialCocycleGivesPlusState) {
    Cocycle c = trivial_cocycle(cyclic_group(2));
    CVector plus = CVector::Constant(16, 0.25);
    EXPECT_NEAR(overlap_fidelity(plus, build_psi_omega(c, 4).psi), 1.0, 1e-12);
    EXPECT_NEAR(overlap_fidelity(plus, contract_simps_pbc(build_omega_simps(c), 4).psi), 1.0, 1e-12);
}

TEST(AnomalyState, StateIsInvariant) {
    for (int N : {2, 3}) {
        Cocycle c = type_one_cocycle(N, 1);
        for (int M : {3, 4, 5}) {
            State psi = build_psi_omega(c, M);
            for (int g = 0; g < N; ++g) {
                EXPECT_NEAR(overlap_fidelity(apply_U_omega(c, g, M, psi.psi), psi.psi), 1.0, 1e-10)
                    << N << " " << M << " " << g;
            }
        }
    }
}

TEST(OmegaSimps, ContractsToPsiOmegaAndSatisfiesRelations) {
    for (int N : {2, 3}) {
        Cocycle c = type_one_cocycle(N, 1);
        SimpsTensor s = build_omega_simps(c);
        EXPECT_EQ(s.chi, std::vector<int>(static_cast<std::size_t>(N), N));
        for (int M : {3, 4}) {
            EXPECT_NEAR(overlap_fidelity(contract_simps_pbc(s, M).psi, build_psi_omega(c, M).psi), 1.0, 1e-10);
        }
        for (const auto &r : omega_relations(c)) {
            EXPECT_NEAR(symmetry_fidelity(s, r), 1.0, 1e-10) << r.name;
        }
    }
}

TEST(OmegaSimps, WrongPushRelationIsFalseForZ3) {
    Cocycle c = type_one_cocycle(3, 1);
    SimpsTensor s = build_omega_simps(c);
    bool any_false = false;
    for (const auto &r : omega_relations(c, true)) {
        any_false = any_false || !verify_symmetry(s, r);
    }
    EXPECT_TRUE(any_false);
}

TEST(GeneralizedBasis, IsOrthonormal) {
    for (int n : {2, 3, 4}) {
        CMatrix b = generalized_fusion_basis(cyclic_group(n));
        EXPECT_LT((b.adjoint() * b - CMatrix::Identity(n * n, n * n)).norm(), 1e-10);
        // Trivial character and identity element give |Ω_G⟩.
        EXPECT_LT((b.col(0) - omega_G(cyclic_group(n))).norm(), 1e-15);
    }
    // For Z₂ these are the four Bell states up to phase.
    CMatrix b = generalized_fusion_basis(cyclic_group(2));
    CMatrix bell = bell_basis_from_byproducts(clock_shift_basis(2));
    for (int k = 0; k < 4; ++k) {
        double best = 0;
        for (int j = 0; j < 4; ++j) {
            best = std::max(best, overlap_fidelity(b.col(k), bell.col(j)));
        }
        EXPECT_NEAR(best, 1.0, 1e-12);
    }
}

TEST(AnomalousFusion, DeterministicForZ2AndZ3) {
    for (int N : {2, 3}) {
        FusionProtocol p = build_anomalous_fusion_protocol(type_one_cocycle(N, 1), 2, 2);
        RunSummary s = summarize(enumerate_protocol(p, 1));
        EXPECT_EQ(s.branches, static_cast<std::size_t>(N * N * N));
        EXPECT_GT(s.min_fidelity, 1 - 1e-9);
        EXPECT_NEAR(s.total_probability, 1.0, 1e-9);
    }
    FusionProtocol p3 = build_anomalous_fusion_protocol(type_one_cocycle(2, 1), 3, 2);
    EXPECT_GT(summarize(enumerate_protocol(p3, 1)).min_fidelity, 1 - 1e-9);
}

TEST(AnomalousFusion, TrivialCocycleIsDeterministic) {
    FusionProtocol p = build_anomalous_fusion_protocol(trivial_cocycle(cyclic_group(3)), 2, 2);
    EXPECT_GT(summarize(enumerate_protocol(p, 1)).min_fidelity, 1 - 1e-9);
}

TEST(AnomalousFusion, WrongPushIsNotDeterministic) {
    FusionProtocol p = build_anomalous_fusion_protocol(type_one_cocycle(3, 1), 2, 2, true);
    RunSummary s = summarize(enumerate_protocol(p, 1));
    EXPECT_NEAR(s.min_fidelity, 1 / std::sqrt(3.0), 1e-9);
    // For Z₂, g⁻¹ = g so the wrong push coincides with the right one.
    FusionProtocol p2 = build_anomalous_fusion_protocol(type_one_cocycle(2, 1), 2, 2, true);
    EXPECT_GT(summarize(enumerate_protocol(p2, 1)).min_fidelity, 1 - 1e-9);
}

TEST(AnomalousFusion, RejectsNonLinearCocycles) {
    std::vector<cplx> beta(4, 1.0);
    beta[3] = cplx(0, 1);
    Cocycle c = coboundary_of(cyclic_group(2), beta);
    if (!validate_cocycle(c).is_linear_first_arg) {
        EXPECT_THROW(build_anomalous_fusion_protocol(c, 2, 2), InputError);
    }
    Cocycle broken = cocycle_from_phases(cyclic_group(2), {{1, 1, 0, 1, 2}}, false);
    EXPECT_THROW(build_anomalous_fusion_protocol(broken, 2, 2), InputError);
}

TEST(AnomalousFusion, MpsFormsAreNotFusible) {
    EXPECT_EQ(check_fusibility(catalog_get("anomalous-z2").mps.value()).verdict, Verdict::NotFusible);
    // The generic Z₃ MPS form is outside the block-injective class.
    EXPECT_THROW(check_fusibility(catalog_get("anomalous-z3").mps.value()), NotBlockInjective);
}
