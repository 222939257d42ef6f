// Copyright 2026 The gibbslab Authors
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
#include "gibbslab/linalg.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.h"

using namespace gibbslab;
using gibbslab::testing::max_abs;
using gibbslab::testing::naive_kron;
using gibbslab::testing::random_matrix;
using gibbslab::testing::random_state;

TEST(linalg, vectorization_convention) {
    std::mt19937_64 rng(1);
    Matrix a = random_matrix(4, rng), b = random_matrix(4, rng), x = random_matrix(4, rng);
    Superoperator s = Superoperator::left_right(a, b);
    EXPECT_LT(max_abs(s.apply(x) - a * x * b), 1e-12);
    EXPECT_LT(max_abs(kron(a, b) - naive_kron(a, b)), 1e-15);
}

TEST(linalg, bell_pair_reduces_to_maximally_mixed) {
    Vector psi = Vector::Zero(4);
    psi(0) = psi(3) = 1 / std::sqrt(2.0);
    DensityMatrix bell = DensityMatrix::pure(2, psi);
    std::vector<int> keep{0};
    Matrix r = partial_trace(bell.matrix(), 2, keep);
    EXPECT_LT(max_abs(r - Matrix::Identity(2, 2) / 2), 1e-15);
}

TEST(linalg, product_state_reduces_to_factor) {
    std::mt19937_64 rng(2);
    DensityMatrix a = random_state(1, rng), b = random_state(2, rng);
    Matrix ab = kron(a.matrix(), b.matrix());
    std::vector<int> keep_a{0}, keep_b{1, 2};
    EXPECT_LT(max_abs(partial_trace(ab, 3, keep_a) - a.matrix()), 1e-14);
    EXPECT_LT(max_abs(partial_trace(ab, 3, keep_b) - b.matrix()), 1e-14);
}

TEST(linalg, partial_trace_matches_direct_summation) {
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_state(3, rng);
    std::vector<int> keep{0, 2};
    Matrix r = partial_trace(rho.matrix(), 3, keep);
    // Sum over the middle qubit by hand: index = q0 q1 q2.
    Matrix expect = Matrix::Zero(4, 4);
    for (int a0 = 0; a0 < 2; a0++)
        for (int a2 = 0; a2 < 2; a2++)
            for (int b0 = 0; b0 < 2; b0++)
                for (int b2 = 0; b2 < 2; b2++)
                    for (int m = 0; m < 2; m++)
                        expect(a0 * 2 + a2, b0 * 2 + b2) += rho.matrix()(a0 * 4 + m * 2 + a2, b0 * 4 + m * 2 + b2);
    EXPECT_LT(max_abs(r - expect), 1e-14);
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
}

TEST(linalg, partial_trace_order_independent) {
    std::mt19937_64 rng(4);
    DensityMatrix rho = random_state(4, rng);
    std::vector<int> k013{0, 1, 3}, k012{0, 1, 2}, k01{0, 1}, k12{1, 2};
    Matrix first = partial_trace(partial_trace(rho.matrix(), 4, k013), 3, k01);
    Matrix second = partial_trace(partial_trace(rho.matrix(), 4, k012), 3, k01);
    Matrix direct = partial_trace(rho.matrix(), 4, k01);
    EXPECT_LT(max_abs(first - direct), 1e-12);
    EXPECT_LT(max_abs(second - direct), 1e-12);
    // Local positions refer to the reduced register: {1, 2} of {0, 2, 3} is {2, 3}.
    std::vector<int> k023{0, 2, 3}, k23{2, 3};
    Matrix nested = partial_trace(partial_trace(rho.matrix(), 4, k023), 3, k12);
    EXPECT_LT(max_abs(nested - partial_trace(rho.matrix(), 4, k23)), 1e-12);
}

TEST(linalg, empty_keep_gives_scalar_one) {
    std::mt19937_64 rng(5);
    DensityMatrix rho = random_state(2, rng);
    Matrix r = partial_trace(rho.matrix(), 2, std::vector<int>{});
    ASSERT_EQ(r.rows(), 1);
    EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-12);
}

TEST(linalg, embed_matches_tensor_with_identity) {
    std::mt19937_64 rng(6);
    Matrix a = random_matrix(2, rng);
    std::vector<int> s{1};
    Matrix e = embed(a, s, 3);
    Matrix id = Matrix::Identity(2, 2);
    EXPECT_LT(max_abs(e - naive_kron(naive_kron(id, a), id)), 1e-15);
    Matrix b = random_matrix(4, rng);
    std::vector<int> s02{0, 2};
    // b on qubits (0, 2) equals SWAP_{12} (b (x) I) SWAP_{12}.
    Matrix sw = Matrix::Zero(8, 8);
    for (int x = 0; x < 8; x++) {
        int b0 = x >> 2 & 1, b1 = x >> 1 & 1, b2 = x & 1;
        sw((b0 << 2) | (b2 << 1) | b1, x) = 1;
    }
    EXPECT_LT(max_abs(embed(b, s02, 3) - sw * naive_kron(b, id) * sw), 1e-14);
}

TEST(linalg, divergences_of_identical_states) {
    std::mt19937_64 rng(7);
    DensityMatrix rho = random_state(2, rng);
    Divergences d = divergences(rho, rho);
    EXPECT_NEAR(d.trace_distance, 0, 1e-12);
    EXPECT_NEAR(d.relative_entropy, 0, 1e-10);
    EXPECT_NEAR(d.fidelity, 1, 1e-10);
}

TEST(linalg, divergences_closed_forms) {
    DensityMatrix zero = DensityMatrix::basis_state(1, 0), one = DensityMatrix::basis_state(1, 1);
    EXPECT_NEAR(divergences(zero, one).trace_distance, 1, 1e-15);
    EXPECT_TRUE(std::isinf(divergences(zero, one).relative_entropy));
    EXPECT_NEAR(divergences(zero, DensityMatrix::maximally_mixed(1)).relative_entropy, std::log(2.0), 1e-14);
    EXPECT_NEAR(divergences(zero, DensityMatrix::maximally_mixed(1)).fidelity, 0.5, 1e-14);
}

TEST(linalg, triangle_and_pinsker_on_random_states) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; t++) {
        DensityMatrix a = random_state(2, rng), b = random_state(2, rng), c = random_state(2, rng);
        double ab = divergences(a, b).trace_distance;
        double bc = divergences(b, c).trace_distance;
        double ac = divergences(a, c).trace_distance;
        EXPECT_LE(ac, ab + bc + 1e-10);
        EXPECT_LE(ab, std::sqrt(divergences(a, b).relative_entropy / 2) + 1e-10);
    }
}

TEST(linalg, density_matrix_validation) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix(1, m), DomainError);
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    EXPECT_THROW(DensityMatrix(1, neg), DomainError);
    EXPECT_THROW(DensityMatrix(2, Matrix::Identity(2, 2) / 2), DomainError);
}

TEST(linalg, cptp_identity_channel) {
    CptpReport r = cptp_check(Superoperator::identity(2));
    EXPECT_TRUE(r.is_cp);
    EXPECT_TRUE(r.is_tp);
    Eigen::VectorXd ev = hermitian_eigenvalues(choi_matrix(Superoperator::identity(2)));
    EXPECT_NEAR(ev.maxCoeff(), 4.0, 1e-12);
    EXPECT_NEAR(ev.minCoeff(), 0.0, 1e-12);
}

TEST(linalg, cptp_transpose_map_is_not_cp) {
    Matrix t = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            t(j + 2 * i, i + 2 * j) = 1;
    CptpReport r = cptp_check(Superoperator(1, t));
    EXPECT_FALSE(r.is_cp);
    EXPECT_TRUE(r.is_tp);
    EXPECT_NEAR(r.min_choi_eigenvalue, -1.0, 1e-12);
}

TEST(linalg, expm_and_hermitian_functions) {
    std::mt19937_64 rng(9);
    Matrix a = random_matrix(4, rng);
    Matrix h = a + a.adjoint();
    Matrix e1 = expm(Complex(0, 0.3) * h);
    Matrix e2 = hermitian_function(h, [](double x) { return std::cos(0.3 * x); }) +
                Complex(0, 1) * hermitian_function(h, [](double x) { return std::sin(0.3 * x); });
    EXPECT_LT(max_abs(e1 - e2), 1e-12);
    EXPECT_THROW(hermitian_function(a, [](double x) { return x; }), DomainError);
}
