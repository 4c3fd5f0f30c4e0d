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

#include "mpsfuse/num.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mpsfuse;

namespace {

CMatrix random_matrix(int r, int c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) {
            m(i, j) = cplx(n(rng), n(rng));
        }
    }
    return m;
}

}  // namespace

TEST(Num, KronMatchesHandComputedEntries) {
    CMatrix a(2, 2);
    a << 1, 2, 3, 4;
    CMatrix b(2, 2);
    b << 0, 1, 1, 0;
    CMatrix k = kron(a, b);
    CMatrix expect(4, 4);
    expect << 0, 1, 0, 2,  //
        1, 0, 2, 0,        //
        0, 3, 0, 4,        //
        3, 0, 4, 0;
    EXPECT_LT((k - expect).norm(), 1e-15);
    EXPECT_LT((kron_all({a, b}) - k).norm(), 1e-15);
}

TEST(Num, VecIsRowMajorAndUnvecInverts) {
    CMatrix m(2, 3);
    m << 1, 2, 3, 4, 5, 6;
    CVector v = vec(m);
    for (int k = 0; k < 6; ++k) {
        EXPECT_EQ(v(k), cplx(k + 1, 0));
    }
    EXPECT_LT((unvec(v, 2, 3) - m).norm(), 1e-15);
    EXPECT_THROW(unvec(v, 4, 2), InputError);
}

TEST(Num, VecOfProductIsKronTimesVec) {
    // vec(A X B) = (A ⊗ Bᵀ) vec(X) in the row-major convention.
    CMatrix A = random_matrix(3, 3, 1);
    CMatrix X = random_matrix(3, 3, 2);
    CMatrix B = random_matrix(3, 3, 3);
    EXPECT_LT((vec(A * X * B) - kron(A, B.transpose()) * vec(X)).norm(), 1e-12);
}

TEST(Num, PartialTraceOfProductOperator) {
    CMatrix a(2, 2);
    a << 1, 2, 3, 4;
    CMatrix b(3, 3);
    b << 1, 0, 0, 0, 2, 0, 0, 0, 3;
    CMatrix m = kron(a, b);
    EXPECT_LT((partial_trace(m, 2, 3, Side::First) - 6.0 * a).norm(), 1e-14);
    EXPECT_LT((partial_trace(m, 2, 3, Side::Second) - 5.0 * b).norm(), 1e-14);
    EXPECT_THROW(partial_trace(m, 3, 3, Side::First), InputError);
}

TEST(Num, SvdReconstructsAndRankCounts) {
    CMatrix m = random_matrix(4, 2, 7) * random_matrix(2, 5, 8);
    SvdResult s = svd(m);
    ASSERT_EQ(s.s.size(), 4u);
    CMatrix S = CMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) {
        S(k, k) = s.s[static_cast<std::size_t>(k)];
    }
    EXPECT_LT((s.U * S * s.Vh - m).norm(), 1e-12);
    EXPECT_EQ(numerical_rank(m), 2);
    EXPECT_EQ(numerical_rank(CMatrix::Zero(3, 3)), 0);
}

TEST(Num, EigGeneralOrdersByModulusThenPhase) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = cplx(0, 1);
    m(1, 1) = 0.5;
    m(2, 2) = 1.0;
    m(3, 3) = -1.0;
    SpectralResult r = eig_general(m);
    ASSERT_EQ(r.eigenvalues.size(), 4u);
    EXPECT_NEAR(std::abs(r.eigenvalues[0] - cplx(1, 0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(r.eigenvalues[1] - cplx(0, 1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(r.eigenvalues[2] - cplx(-1, 0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(r.eigenvalues[3] - cplx(0.5, 0)), 0, 1e-12);
    // The leading cluster is the whole unit-modulus (peripheral) spectrum.
    EXPECT_EQ(r.top_cluster, 3);
}

TEST(Num, LeadingProjectorOfNonSymmetricMatrix) {
    // m = [[1, 1], [0, 0.5]]: eigenvalue 1 with right (1,0), left (1,2)/…;
    // Π = |r⟩⟨l| / ⟨l|r⟩ = [[1, 2], [0, 0]].
    CMatrix m(2, 2);
    m << 1, 1, 0, 0.5;
    int cluster = 0;
    CMatrix P = leading_spectral_projector(m, kFixedPointTol, &cluster);
    CMatrix expect(2, 2);
    expect << 1, 2, 0, 0;
    EXPECT_EQ(cluster, 1);
    EXPECT_LT((P - expect).norm(), 1e-10);
    EXPECT_LT((P * P - P).norm(), 1e-10);
}

TEST(Num, DefectiveLeadingClusterIsReported) {
    CMatrix jordan(2, 2);
    jordan << 1, 1, 0, 1;
    EXPECT_THROW(leading_spectral_projector(jordan), NumericalError);
}

TEST(Num, LeastSquaresSolvesConsistentSystem) {
    CMatrix X = random_matrix(2, 3, 11);
    CMatrix A = random_matrix(3, 6, 12);
    LeastSquaresResult r = solve_least_squares(A, X * A);
    EXPECT_LT((r.X - X).norm(), 1e-10);
    EXPECT_LT(r.residual, 1e-10);
}

TEST(Num, UnitarityAndPhaseComparisons) {
    EXPECT_TRUE(is_unitary(hadamard()));
    EXPECT_TRUE(is_unitary(cz_gate()));
    EXPECT_FALSE(is_unitary(2.0 * pauli_x()));
    EXPECT_TRUE(equal_up_to_phase(cplx(0, 1) * pauli_z(), pauli_z()));
    EXPECT_FALSE(equal_up_to_phase(pauli_x(), pauli_z()));
    EXPECT_NEAR(phase_distance(std::polar(1.0, 0.3) * pauli_y(), pauli_y()), 0, 1e-12);
}

TEST(Num, OverlapFidelityIgnoresPhaseAndNorm) {
    CVector a(2);
    a << 1, 0;
    CVector b(2);
    b << cplx(0, 3), 0;
    CVector c(2);
    c << 1, 1;
    EXPECT_NEAR(overlap_fidelity(a, b), 1.0, 1e-15);
    EXPECT_NEAR(overlap_fidelity(a, c), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Num, ApplyLocalMatchesEmbeddedOperator) {
    std::vector<int> dims = {2, 3, 2};
    CVector psi = random_matrix(12, 1, 21).col(0);
    CMatrix g = random_matrix(4, 4, 22);
    CVector a = psi;
    apply_local(a, dims, {2, 0}, g);
    CVector b = embed_operator(dims, {2, 0}, g) * psi;
    EXPECT_LT((a - b).norm(), 1e-12);
}

TEST(Num, EmbedOperatorOrdersTargets) {
    // X on factor 1 of (2, 2) is I ⊗ X.
    CMatrix e = embed_operator({2, 2}, {1}, pauli_x());
    EXPECT_LT((e - kron(CMatrix::Identity(2, 2), pauli_x())).norm(), 1e-15);
}

TEST(Num, PermuteFactorsAndReducedDensity) {
    // |0⟩ ⊗ |1⟩ ⊗ |+⟩ on dims (2, 2, 2).
    CVector plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CVector psi = kron(kron(basis_vector(2, 0), basis_vector(2, 1)), plus).col(0);
    CVector q = permute_factors(psi, {2, 2, 2}, {2, 0, 1});
    CVector expect = kron(kron(plus, basis_vector(2, 0)), basis_vector(2, 1)).col(0);
    EXPECT_LT((q - expect).norm(), 1e-15);
    CMatrix rho = reduced_density(psi, {2, 2, 2}, {1});
    EXPECT_NEAR(std::abs(rho(1, 1)), 1.0, 1e-15);
    EXPECT_NEAR(purity(rho), 1.0, 1e-15);
    CVector bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    EXPECT_NEAR(purity(reduced_density(bell, {2, 2}, {0})), 0.5, 1e-15);
}

TEST(Num, RealSpectrumDescending) {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 0.25;
    m(1, 1) = 1;
    m(2, 2) = 0.5;
    RVector s = real_spectrum(m);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s[0], 1);
    EXPECT_DOUBLE_EQ(s[1], 0.5);
    EXPECT_DOUBLE_EQ(s[2], 0.25);
}

TEST(Num, ClockShiftAlgebra) {
    for (int D : {2, 3, 4}) {
        CMatrix X = clock_shift_x(D);
        CMatrix Z = clock_z(D);
        EXPECT_LT((mat_pow(X, D) - CMatrix::Identity(D, D)).norm(), 1e-12);
        EXPECT_LT((mat_pow(Z, D) - CMatrix::Identity(D, D)).norm(), 1e-12);
        // 𝒳|k⟩ = |k−1⟩.
        EXPECT_LT((X * basis_vector(D, 1) - basis_vector(D, 0)).norm(), 1e-15);
        // 𝒳Z = ω Z𝒳 with ω = e^{2πi/D}.
        cplx w = std::polar(1.0, 2 * kPi / D);
        EXPECT_LT((X * Z - w * Z * X).norm(), 1e-12);
    }
}

TEST(Num, PauliConventions) {
    EXPECT_LT((pauli_x() * pauli_y() - cplx(0, 1) * pauli_z()).norm(), 1e-15);
    EXPECT_LT((hadamard() * pauli_z() * hadamard() - pauli_x()).norm(), 1e-15);
    CMatrix cz = cz_gate();
    EXPECT_EQ(cz(3, 3), cplx(-1, 0));
    EXPECT_EQ(cz(2, 2), cplx(1, 0));
}

TEST(Num, AmplitudeCapIsEnforced) {
    std::uint64_t saved = limits().max_amplitudes.load();
    limits().max_amplitudes = 16;
    EXPECT_NO_THROW(check_amplitude_cap(16, "ok"));
    EXPECT_THROW(check_amplitude_cap(17, "too large"), CapExceeded);
    limits().max_amplitudes = saved;
}

TEST(Num, EigGeneralRespectsBondCap) {
    int saved = limits().max_bond.load();
    limits().max_bond = 2;
    EXPECT_THROW(eig_general(CMatrix::Identity(32, 32)), CapExceeded);
    limits().max_bond = saved;
}
