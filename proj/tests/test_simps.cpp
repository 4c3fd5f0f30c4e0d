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
#include "mpsfuse/simps.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mpsfuse;

namespace {

SimpsTensor random_simps(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<CMatrix> m;
    for (int k = 0; k < 4; ++k) {
        CMatrix x(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                x(i, j) = cplx(n(rng), n(rng));
            }
        }
        m.push_back(x);
    }
    return make_simps(2, m);
}

}  // namespace

TEST(Simps, ValidationRejectsBadShapes) {
    CMatrix I = CMatrix::Identity(2, 2);
    EXPECT_THROW(make_simps(2, {I, I, I}), InputError);
    EXPECT_THROW(make_simps(2, {I, CMatrix::Identity(2, 3), I, I}), InputError);
    // Non-uniform profiles are allowed when shapes are consistent.
    SimpsTensor s = make_simps(2, {CMatrix::Identity(1, 1), CMatrix::Ones(1, 2), CMatrix::Ones(2, 1), I});
    EXPECT_EQ(s.chi, (std::vector<int>{1, 2}));
    EXPECT_FALSE(s.uniform());
}

TEST(Simps, GhzDeltaTensorContraction) {
    State s = contract_simps_pbc(catalog::ghz_simps(3), 3);
    ASSERT_EQ(s.psi.size(), 27);
    EXPECT_NEAR(std::abs(s.psi(0)), 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(std::abs(s.psi(13)), 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(std::abs(s.psi(26)), 1 / std::sqrt(3.0), 1e-15);
}

TEST(Simps, NormalMpsConvertsToIIXXZ) {
    SimpsConversion c = mps_to_simps(catalog::normal_tensor());
    EXPECT_EQ(c.s.chi, (std::vector<int>{2, 2}));
    EXPECT_TRUE(c.warnings.empty());
    GaugeComparison g = simps_gauge_compare(c.s, catalog::normal_simps());
    EXPECT_TRUE(g.equal) << g.reason;
    EXPECT_NEAR(g.pbc_fidelity_n4, 1.0, 1e-9);
    EXPECT_NEAR(g.pbc_fidelity_n5, 1.0, 1e-9);
    // Each P^i is an isometry onto the row space of A^i.
    for (const CMatrix &P : c.P) {
        EXPECT_LT((P.adjoint() * P - CMatrix::Identity(P.cols(), P.cols())).norm(), 1e-12);
    }
}

TEST(Simps, NonNormalMpsConvertsToIIIZ) {
    SimpsConversion c = mps_to_simps(catalog::non_normal_tensor());
    EXPECT_EQ(c.s.chi, (std::vector<int>{2, 2}));
    EXPECT_TRUE(simps_gauge_equal(c.s, catalog::non_normal_simps()));
}

TEST(Simps, GhzMpsConvertsToDeltaTensor) {
    for (int d = 2; d <= 4; ++d) {
        SimpsConversion c = mps_to_simps(catalog::ghz_tensor(d));
        EXPECT_EQ(c.s.chi, std::vector<int>(static_cast<std::size_t>(d), 1));
        EXPECT_TRUE(simps_gauge_equal(c.s, catalog::ghz_simps(d))) << d;
    }
}

TEST(Simps, FullRankConversionWarns) {
    SimpsConversion c = mps_to_simps(catalog::aklt_tensor());
    ASSERT_EQ(c.warnings.size(), 1u);
    EXPECT_NE(c.warnings[0].find("full rank"), std::string::npos);
    EXPECT_EQ(c.s.chi, (std::vector<int>{2, 2, 2}));
}

TEST(Simps, DistinctTensorsAreNotGaugeEqual) {
    GaugeComparison g = simps_gauge_compare(catalog::normal_simps(), catalog::non_normal_simps());
    EXPECT_FALSE(g.equal);
    EXPECT_FALSE(simps_gauge_equal(catalog::ghz_simps(2), catalog::normal_simps()));
}

TEST(Simps, GaugeTransformIsDetected) {
    SimpsTensor s = random_simps(3);
    std::vector<CMatrix> g = {hadamard(), CMatrix(pauli_x() + 0.5 * CMatrix::Identity(2, 2))};
    SimpsTensor t = apply_gauge(s, g);
    GaugeComparison cmp = simps_gauge_compare(s, t);
    EXPECT_TRUE(cmp.equal) << cmp.reason;
    EXPECT_NEAR(cmp.pbc_fidelity_n5, 1.0, 1e-9);
}

TEST(Simps, SimpsToMpsPreservesPbcState) {
    for (const SimpsTensor &s : {catalog::normal_simps(), catalog::non_normal_simps(), random_simps(9)}) {
        MpsTensor m = simps_to_mps(s);
        EXPECT_EQ(m.D, 4);
        for (int N : {3, 4, 5}) {
            EXPECT_NEAR(overlap_fidelity(contract_pbc(m, N).psi, contract_simps_pbc(s, N).psi), 1.0, 1e-12);
        }
    }
    // The normal tensor and its SIMPS form produce the same PBC state.
    EXPECT_NEAR(overlap_fidelity(contract_pbc(catalog::normal_tensor(), 5).psi,
                                 contract_simps_pbc(catalog::normal_simps(), 5).psi),
                1.0, 1e-12);
}

TEST(Simps, CatalogRelationsHold) {
    for (const auto &r : catalog::normal_simps_relations()) {
        EXPECT_NEAR(symmetry_fidelity(catalog::normal_simps(), r), 1.0, 1e-12) << r.name;
    }
    for (const auto &r : catalog::non_normal_simps_relations()) {
        EXPECT_NEAR(symmetry_fidelity(catalog::non_normal_simps(), r), 1.0, 1e-12) << r.name;
    }
    for (int d = 2; d <= 4; ++d) {
        for (const auto &r : catalog::ghz_simps_relations(d)) {
            EXPECT_TRUE(verify_symmetry(catalog::ghz_simps(d), r)) << d << " " << r.name;
        }
    }
}

TEST(Simps, BrokenRelationIsRejected) {
    // Z on the right physical leg of {I, I, X, XZ} is not a symmetry with
    // the same virtual action.
    SymmetryRelation r = catalog::normal_simps_relations()[0];
    r.physical_ops[0].legs = {Leg::PhysRight};
    EXPECT_FALSE(verify_symmetry(catalog::normal_simps(), r));
    EXPECT_LT(symmetry_fidelity(catalog::normal_simps(), r), 0.5);
}

TEST(Simps, RelationKinds) {
    auto rels = catalog::normal_simps_relations();
    EXPECT_EQ(rels[0].kind(), RelationKind::Onsite);
    EXPECT_EQ(rels[1].kind(), RelationKind::TwoSite);
}

TEST(Simps, HiddenDegeneracyOfCatalogTensors) {
    for (const SimpsTensor &s : {catalog::normal_simps(), catalog::non_normal_simps()}) {
        auto hd = hidden_degeneracy_check(s);
        ASSERT_EQ(hd.size(), 2u);
        for (const auto &e : hd) {
            ASSERT_EQ(e.spectrum.size(), 2u);
            EXPECT_NEAR(e.spectrum[0], 0.5, 1e-9);
            EXPECT_NEAR(e.spectrum[1], 0.5, 1e-9);
            EXPECT_TRUE(e.flat);
        }
    }
}

TEST(Simps, HiddenDegeneracyOfGenericTensorIsNotFlat) {
    auto hd = hidden_degeneracy_check(random_simps(5));
    for (const auto &e : hd) {
        EXPECT_FALSE(e.flat) << e.v;
    }
}

TEST(Simps, BoundedMpsReproducesObcSimps) {
    BoundedMps bm = simps_as_bounded_mps(mps_to_simps(catalog::normal_tensor()));
    EXPECT_EQ(bm.maps.P_map.rows(), 3);
    EXPECT_EQ(bm.maps.P_map.cols(), 4);
    for (int N : {2, 3, 4, 5}) {
        EXPECT_NEAR(bounded_mps_fidelity(bm, N), 1.0, 1e-12) << N;
    }
    EXPECT_NEAR(bounded_mps_fidelity(simps_as_bounded_mps(random_simps(11)), 5), 1.0, 1e-12);
    EXPECT_THROW(bounded_mps_fidelity(bm, 1), InputError);
}
