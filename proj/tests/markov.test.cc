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
#include "gibbslab/markov.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.h"

using namespace gibbslab;
using gibbslab::testing::max_abs;
using gibbslab::testing::random_pure_state;
using gibbslab::testing::random_state;

namespace {

// S(X) in nats from an explicit eigen-decomposition of the reduced state.
double entropy_of(const Matrix &rho, int n, const std::vector<int> &keep) {
    Matrix r = partial_trace(rho, n, keep);
    Eigen::SelfAdjointEigenSolver<Matrix> es(r);
    double s = 0;
    for (double l : es.eigenvalues()) {
        if (l > 1e-15) {
            s -= l * std::log(l);
        }
    }
    return s;
}

Circuit brickwork_cnots() {
    Circuit c(6);
    c.append_layer({Gate::cnot(0, 1), Gate::cnot(2, 3), Gate::cnot(4, 5)});
    return c;
}

Tripartition line(std::vector<int> a, std::vector<int> b, std::vector<int> c, int width) {
    return Tripartition{std::move(a), std::move(b), std::move(c), Lattice{width, 1}};
}

}  // namespace

TEST(markov, lattice_distance) {
    Lattice grid{3, 2};
    EXPECT_EQ(grid.distance(0, 5), 3);
    EXPECT_EQ(grid.distance(1, 4), 1);
    Tripartition t = line({0}, {1, 2, 3, 4}, {5}, 6);
    EXPECT_EQ(t.distance_ac(), 5);
    Tripartition no_geometry{{0}, {1}, {2}, std::nullopt};
    EXPECT_THROW(no_geometry.distance_ac(), DomainError);
}

TEST(markov, tripartition_validation) {
    EXPECT_THROW((Tripartition{{0}, {0}, {1}, {}}.validate(3)), DomainError);
    EXPECT_THROW((Tripartition{{0}, {1}, {3}, {}}.validate(3)), DomainError);
    EXPECT_THROW((Tripartition{{1, 0}, {2}, {}, {}}.validate(3)), DomainError);
    EXPECT_EQ((Tripartition{{2}, {0}, {1}, {}}.all()), (std::vector<int>{0, 1, 2}));
}

TEST(markov, cmi_examples) {
    std::mt19937_64 rng(1);
    Tripartition t{{0}, {1}, {2}, {}};
    Matrix prod = kron(kron(random_state(1, rng).matrix(), random_state(1, rng).matrix()), random_state(1, rng).matrix());
    EXPECT_NEAR(cmi(DensityMatrix(3, prod), t), 0, 1e-12);

    // Classical GHZ correlations are screened by B; the pure GHZ state is not.
    Matrix cat = Matrix::Zero(8, 8);
    cat(0, 0) = cat(7, 7) = 0.5;
    EXPECT_NEAR(cmi(DensityMatrix(3, cat), t), 0, 1e-12);
    Vector ghz = Vector::Zero(8);
    ghz(0) = ghz(7) = 1 / std::sqrt(2.0);
    EXPECT_NEAR(cmi(DensityMatrix::pure(3, ghz), t), std::log(2.0), 1e-12);

    // Bell pair across A and C with B in a product state: I(A:C|B) = 2 ln 2.
    Vector bell = Vector::Zero(8);
    bell(0) = bell(5) = 1 / std::sqrt(2.0);
    EXPECT_NEAR(cmi(DensityMatrix::pure(3, bell), t), 2 * std::log(2.0), 1e-12);

    for (int k = 0; k < 20; k++) {
        DensityMatrix rho = random_state(4, rng);
        Tripartition u{{0}, {1, 3}, {2}, {}};
        double expect = entropy_of(rho.matrix(), 4, {0, 1, 3}) + entropy_of(rho.matrix(), 4, {1, 2, 3}) -
                        entropy_of(rho.matrix(), 4, {0, 1, 2, 3}) - entropy_of(rho.matrix(), 4, {1, 3});
        EXPECT_NEAR(cmi(rho, u), expect, 1e-10);
        EXPECT_GE(cmi(rho, u), -1e-9);
        EXPECT_GE(cmi(random_pure_state(3, rng), t), -1e-9);
    }
}

TEST(markov, shielding_examples) {
    ParentHamiltonian id = build_parent(Circuit(4));
    EXPECT_TRUE(is_shielding(id, {{0}, {}, {3}, {}}));
    EXPECT_TRUE(is_shielding(id, {{0, 1}, {2}, {3}, {}}));

    Circuit c(4);
    c.append_layer({Gate::cnot(0, 1), Gate::cnot(2, 3)});
    c.append_layer({Gate::cnot(1, 2)});
    ParentHamiltonian hp = build_parent(c);
    EXPECT_TRUE(is_shielding(hp, {{0}, {1, 2}, {3}, {}}));

    // CNOT(0 -> 2) gives a term linking 0 and 2 directly, skipping qubit 1.
    Circuit bridge(4);
    bridge.append_layer({Gate::cnot(0, 2)});
    bridge.append_layer({Gate::cnot(2, 3)});
    ParentHamiltonian hb = build_parent(bridge);
    EXPECT_FALSE(is_shielding(hb, {{0}, {1}, {3}, {}}));
}

TEST(markov, petz_recovery_exact_cases) {
    std::mt19937_64 rng(2);
    Tripartition t{{0}, {1}, {2}, {}};
    Matrix prod = kron(kron(random_state(1, rng).matrix(), random_state(1, rng).matrix()), random_state(1, rng).matrix());
    EXPECT_LE(petz_residual(DensityMatrix(3, prod), t), 1e-12);

    // A Markov chain A - B - C: correlated classical bits.
    Matrix chain = Matrix::Zero(8, 8);
    double p[2][2] = {{0.9, 0.1}, {0.2, 0.8}};
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            for (int cc = 0; cc < 2; cc++) {
                int x = a * 4 + b * 2 + cc;
                chain(x, x) = 0.5 * p[a][b] * p[b][cc];
            }
        }
    }
    DensityMatrix rho(3, chain);
    EXPECT_NEAR(cmi(rho, t), 0, 1e-12);
    EXPECT_LE(petz_residual(rho, t), 1e-12);

    ParentHamiltonian hp = build_parent(brickwork_cnots());
    GibbsState g = gibbs_state(hp, 1.0);
    Tripartition shield{{0, 1}, {2, 3}, {4, 5}, {}};
    ASSERT_TRUE(is_shielding(hp, shield));
    EXPECT_LE(petz_residual(g.rho, shield), 1e-7);
}

TEST(markov, petz_recovers_bc_marginal) {
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_state(3, rng);
    Tripartition t{{}, {0}, {1, 2}, {}};
    EXPECT_LT(max_abs(petz_recover(rho, t).matrix() - rho.matrix()), 1e-10);
}

TEST(markov, fawzi_renner) {
    std::mt19937_64 rng(4);
    Tripartition t{{0}, {1}, {2}, {}};
    int nontrivial = 0;
    for (int k = 0; k < 200; k++) {
        DensityMatrix rho = random_state(3, rng);
        double i_bits = cmi(rho, t) / std::log(2.0);
        DensityMatrix rec = petz_recover(rho, t);
        double one_norm = trace_norm(rho.matrix() - rec.matrix());
        EXPECT_GE(i_bits, one_norm * one_norm / (4 * std::log(2.0)) - 1e-12);
        nontrivial += one_norm > 1e-3;
    }
    EXPECT_GT(nontrivial, 150);
}

TEST(markov, hammersley_clifford) {
    for (std::uint64_t seed = 0; seed < 3; seed++) {
        Circuit c = random_circuit(5, seed, {2, true});
        ParentHamiltonian hp = build_parent(c);
        GibbsState g = gibbs_state(hp, 0.8);
        int shielding = 0;
        // Each qubit goes to A, B, C or nowhere.
        for (int code = 0; code < 1024; code++) {
            Tripartition t;
            int x = code;
            for (int q = 0; q < 5; q++, x /= 4) {
                if (x % 4 == 1) {
                    t.a.push_back(q);
                } else if (x % 4 == 2) {
                    t.b.push_back(q);
                } else if (x % 4 == 3) {
                    t.c.push_back(q);
                }
            }
            if (t.a.empty() || t.c.empty()) {
                continue;
            }
            double i = cmi(g.rho, t);
            EXPECT_GE(i, -1e-9);
            if (is_shielding(hp, t)) {
                shielding++;
                EXPECT_LE(i, 1e-8) << seed << " " << code;
            }
        }
        EXPECT_GT(shielding, 0);
    }
}

TEST(markov, restricted_gibbs) {
    ParentHamiltonian hp = build_parent(brickwork_cnots());
    Matrix full = restricted_gibbs(hp, {0, 1, 2, 3, 4, 5}, 0.9);
    EXPECT_LT(max_abs(full - gibbs_state(hp, 0.9).rho.matrix()), 1e-12);
    // Terms inside {0, 1} only.
    Matrix pair = restricted_gibbs(hp, {0, 1}, 0.9);
    EXPECT_LT(max_abs(pair - partial_trace(full, 6, std::vector<int>{0, 1})), 1e-12);
}

TEST(markov, local_indistinguishability_identity) {
    ParentHamiltonian hp = build_parent(Circuit(4));
    LocalIndistinguishability li = local_indistinguishability_check(hp, line({0}, {1, 2}, {3}, 4), 1.3);
    EXPECT_LE(li.residual, 1e-12);
    EXPECT_EQ(li.depth, 0);
    EXPECT_TRUE(li.separated);
}

TEST(markov, local_indistinguishability_brickwork) {
    ParentHamiltonian hp = build_parent(brickwork_cnots());
    for (double beta : {0.5, 1.0, 2.0}) {
        LocalIndistinguishability li = local_indistinguishability_check(hp, line({0}, {1, 2, 3, 4}, {5}, 6), beta);
        EXPECT_EQ(li.depth, 1);
        EXPECT_EQ(li.distance, 5);
        EXPECT_TRUE(li.separated);
        EXPECT_LE(li.residual, 1e-10);
        EXPECT_LE(li.decoupling_residual, 1e-10);
    }
}

TEST(markov, local_indistinguishability_fails_when_close) {
    // Negative control: with A and C adjacent, dropping the straddling terms changes the A marginal.
    int changed = 0;
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        ParentHamiltonian hp = build_parent(random_circuit(3, seed, {2, true}));
        LocalIndistinguishability li = local_indistinguishability_check(hp, line({0}, {1}, {2}, 3), 1.0);
        EXPECT_FALSE(li.separated);
        changed += li.residual > 1e-3;
    }
    EXPECT_GT(changed, 0);
}
