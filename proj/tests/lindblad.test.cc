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
#include "gibbslab/lindblad.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.h"

using namespace gibbslab;
using gibbslab::testing::max_abs;
using gibbslab::testing::random_matrix;
using gibbslab::testing::random_state;

namespace {

Circuit single_cnot() {
    Circuit c(2);
    c.append_layer({Gate::cnot(0, 1)});
    return c;
}

// Dissipator sum_nu w(nu) (A rho A^dag - {A^dag A, rho} / 2) applied column by column.
Matrix direct_generator(const std::vector<std::pair<double, Matrix>> &weighted_components) {
    Eigen::Index d = weighted_components.front().second.rows();
    Matrix out(d * d, d * d);
    for (Eigen::Index j = 0; j < d; j++) {
        for (Eigen::Index i = 0; i < d; i++) {
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = 1;
            Matrix img = Matrix::Zero(d, d);
            for (const auto &[w, a] : weighted_components) {
                Matrix ada = a.adjoint() * a;
                img += w * (a * e * a.adjoint() - 0.5 * (ada * e + e * ada));
            }
            out.col(i + j * d) = vec(img);
        }
    }
    return out;
}

}  // namespace

TEST(lindblad, glauber_weight_values) {
    EXPECT_DOUBLE_EQ(glauber_weight(0, 3.0), 0.5);
    EXPECT_DOUBLE_EQ(glauber_weight(1, 0.0), 0.5);
    for (double beta : {0.5, 1.0, 2.0}) {
        for (int nu = -3; nu <= 3; nu++) {
            EXPECT_NEAR(glauber_weight(nu, beta) / glauber_weight(-nu, beta) / std::exp(-beta * nu), 1.0, 1e-14);
        }
    }
}

TEST(lindblad, single_qubit_generator_by_hand) {
    const double beta = 0.8;
    DaviesGenerator l = build_davies(build_parent(Circuit(1)), beta);
    EXPECT_EQ(l.jumps().size(), 4u);
    Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
    up(1, 0) = 1;
    down(0, 1) = 1;
    const Complex i(0, 1);
    double wu = 1 / (1 + std::exp(beta)), wd = 1 / (1 + std::exp(-beta));
    // X/2 and Y/2 split into raising (nu = +1) and lowering (nu = -1) parts; Z/2 and I/2 have nu = 0.
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    std::vector<std::pair<double, Matrix>> comps{
        {wu, 0.5 * up}, {wd, 0.5 * down}, {wu, 0.5 * i * up}, {wd, -0.5 * i * down}, {0.5, 0.5 * z},
    };
    EXPECT_LT(max_abs(l.superop().matrix() - direct_generator(comps)), 1e-12);
}

TEST(lindblad, single_qubit_discriminant_matrix) {
    for (double beta : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        DaviesGenerator l = build_davies(build_parent(Circuit(1)), beta);
        Discriminant k = discriminant_gap(l, 0.5);
        double w1 = glauber_weight(1, beta), wm = glauber_weight(-1, beta);
        Matrix expect = Matrix::Zero(4, 4);
        // Basis |00>, |01>, |10>, |11> of the vectorized operator.
        expect(0, 0) = 0.5 * w1;
        expect(3, 3) = 0.5 * wm;
        expect(0, 3) = expect(3, 0) = -0.5 * std::sqrt(w1 * wm);
        expect(1, 1) = expect(2, 2) = 0.5;
        EXPECT_LT(max_abs(-k.matrix - expect), 1e-12) << beta;
        EXPECT_NEAR(k.gap, 0.5, 1e-12);
        EXPECT_GE(k.gap, 0.25);
        Vector kernel(4);
        kernel << 1, 0, 0, std::exp(-beta / 2);
        kernel /= kernel.norm();
        EXPECT_LT((k.kernel - kernel).norm(), 1e-10);
    }
}

TEST(lindblad, jump_count) {
    EXPECT_EQ(build_davies(build_parent(Circuit(2)), 1.0).jumps().size(), 8u);
    EXPECT_EQ(build_davies(build_parent(single_cnot()), 1.0).jumps().size(), 32u);
}

TEST(lindblad, components_sum_to_jump) {
    DaviesGenerator l = build_davies(build_parent(random_circuit(3, 1, {3, true})), 1.0);
    for (std::size_t a = 0; a < l.jumps().size(); a += 7) {
        Matrix sum = Matrix::Zero(8, 8);
        for (const auto &[nu, m] : l.components(a)) {
            sum += m;
        }
        EXPECT_LT(max_abs(sum - l.jump_matrix(a)), 1e-10);
    }
}

TEST(lindblad, gibbs_is_fixed_point_and_spectrum_real) {
    for (std::uint64_t seed = 0; seed < 4; seed++) {
        DaviesGenerator l = build_davies(build_parent(random_circuit(3, seed, {3, true})), 1.0);
        EXPECT_LT(trace_norm(l.superop().apply(l.gibbs().matrix())), 1e-9);
        Eigen::ComplexEigenSolver<Matrix> es(l.superop().matrix());
        EXPECT_LT(es.eigenvalues().imag().cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(lindblad, detailed_balance) {
    DaviesGenerator single = build_davies(build_parent(Circuit(1)), 1.0);
    EXPECT_LE(detailed_balance_check(single, 0.5).residual, 1e-10);
    DaviesGenerator l = build_davies(build_parent(random_circuit(3, 2, {3, true})), 0.7);
    for (double s : {0.0, 0.5, 1.0}) {
        DetailedBalanceReport r = detailed_balance_check(l, s);
        EXPECT_LE(r.residual, 1e-9);
        EXPECT_LE(r.discriminant_hermiticity, 1e-9);
    }
    Matrix k0 = discriminant_matrix(l.superop(), l.gibbs(), 0.0);
    Matrix kh = discriminant_matrix(l.superop(), l.gibbs(), 0.5);
    Matrix k1 = discriminant_matrix(l.superop(), l.gibbs(), 1.0);
    EXPECT_LT(max_abs(k0 - kh), 1e-9);
    EXPECT_LT(max_abs(k1 - kh), 1e-9);
}

TEST(lindblad, reversed_weights_break_detailed_balance) {
    DaviesGenerator l = build_davies(build_parent(Circuit(1)), 1.0, WeightConvention::kReversed);
    EXPECT_GT(detailed_balance_check(l, 0.5).residual, 1e-3);
    EXPECT_GT(trace_norm(l.superop().apply(l.gibbs().matrix())), 1e-3);
}

TEST(lindblad, evolve) {
    std::mt19937_64 rng(5);
    DaviesGenerator l = build_davies(build_parent(single_cnot()), 1.0);
    DensityMatrix rho = random_state(2, rng);
    EXPECT_LT(max_abs(evolve(l, rho, 0).matrix() - rho.matrix()), 1e-14);
    for (double t : {0.3, 2.0, 7.5}) {
        EXPECT_NEAR(evolve(l, rho, t).matrix().trace().real(), 1.0, 1e-10);
    }
    double gap = discriminant_gap(l, 0.5).gap;
    EXPECT_LT(trace_distance(evolve(l, rho, 200 / gap).matrix(), l.gibbs().matrix()), 1e-6);
}

TEST(lindblad, mixing_identity_two_qubits) {
    const double beta = 1.0;
    DaviesGenerator l = build_davies(build_parent(Circuit(2)), beta);
    std::vector<double> grid;
    for (int k = 0; k <= 100; k++) {
        grid.push_back(0.5 * k);
    }
    MixingDiagnostics m = mixing_diagnostics(l, grid);
    ASSERT_TRUE(m.halving_time.has_value());
    EXPECT_LE(*m.halving_time, 50);
    EXPECT_TRUE(m.curves_monotone);
    EXPECT_GE(m.fitted_rate, 1 / (16 * (1 + std::exp(beta))) - 1e-6);
    // Spectral-gap mixing bound.
    double gap = discriminant_gap(l, 0.5).gap;
    double min_eig = hermitian_eigenvalues(l.gibbs().matrix()).minCoeff();
    double bound = std::log(2 / std::sqrt(min_eig)) / gap;
    EXPECT_LE(*m.halving_time, bound + 0.5);
    EXPECT_THROW(mixing_diagnostics(l, {}), DomainError);
}

TEST(lindblad, entropy_production) {
    std::mt19937_64 rng(6);
    for (const Circuit &c : {Circuit(2), single_cnot()}) {
        for (double beta : {0.5, 1.0}) {
            DaviesGenerator l = build_davies(build_parent(c), beta);
            EXPECT_NEAR(entropy_production(l, l.gibbs()), 0, 1e-10);
            int ell = l.hamiltonian().supports().ell;
            double alpha = std::pow(4.0, 1 - ell) / (16 * (1 + std::exp(beta)));
            for (int t = 0; t < 200; t++) {
                DensityMatrix rho = random_state(2, rng);
                double ep = entropy_production(l, rho);
                double d = relative_entropy(rho.matrix(), l.gibbs().matrix());
                EXPECT_LE(ep, 0);
                EXPECT_LE(ep, -alpha * d + 1e-9);
            }
        }
    }
}

TEST(lindblad, convex_decomposition_identity) {
    DaviesGenerator l = build_davies(build_parent(Circuit(2)), 1.0);
    ConvexDecomposition cd = convex_decomposition(l);
    EXPECT_DOUBLE_EQ(cd.q, 1.0);
    EXPECT_LE(cd.identity_residual, 1e-12);
    EXPECT_EQ(max_abs(cd.rest.matrix()), 0.0);
}

TEST(lindblad, convex_decomposition_cnot_and_random) {
    std::vector<Circuit> circuits{single_cnot(), random_circuit(3, 4, {2, true}),
                                  build_iqp_cluster(2, 1, {3, 5})};
    for (const Circuit &c : circuits) {
        DaviesGenerator l = build_davies(build_parent(c), 0.9);
        ConvexDecomposition cd = convex_decomposition(l);
        EXPECT_DOUBLE_EQ(cd.q, std::pow(4.0, 1 - l.hamiltonian().supports().ell));
        EXPECT_LE(cd.identity_residual, 1e-8);
        EXPECT_LE(cd.rest_fixed_point_residual, 1e-10);
        EXPECT_TRUE(cd.rest_channel.is_cp);
        EXPECT_TRUE(cd.rest_channel.is_tp);
        // Rotating the decomposition back reproduces the generator.
        Matrix u = l.hamiltonian().unitary().matrix();
        Matrix r = kron(u.conjugate(), u);
        Matrix back = r * (cd.q * cd.non_interacting.matrix() + (1 - cd.q) * cd.rest.matrix()) * r.adjoint();
        EXPECT_LT(max_abs(back - l.superop().matrix()), 1e-8);
    }
    EXPECT_DOUBLE_EQ(convex_decomposition(build_davies(build_parent(single_cnot()), 1.0)).q, 0.25);
}

TEST(lindblad, pauli_second_moment) {
    std::mt19937_64 rng(7);
    Matrix x = random_matrix(8, rng);
    std::vector<int> region{0, 2}, rest{1};
    Matrix twirl = Matrix::Zero(8, 8);
    for (const PauliString &p : all_paulis(2)) {
        Matrix q = place(p, region, 3).matrix().matrix();
        twirl += q * x * q / 16.0;
    }
    Matrix expect = embed(partial_trace(x, 3, rest), rest, 3) / 4.0;
    EXPECT_LT(max_abs(twirl - expect), 1e-12);
}

TEST(lindblad, jump_set_rotation_invariance) {
    Circuit c = random_circuit(3, 9, {3, true});
    ParentHamiltonian hp = build_parent(c);
    DaviesGenerator l = build_davies(hp, 1.1);
    std::vector<Matrix> rotated;
    for (int i = 0; i < 3; i++) {
        const auto &cone = hp.supports().lightcone[i];
        Matrix ui = build_unitary(lightcone_subcircuit(c, {i})).matrix();
        double norm = std::ldexp(1.0, -static_cast<int>(cone.size()));
        for (const PauliString &p : all_paulis(static_cast<int>(cone.size()))) {
            rotated.push_back(norm * ui * place(p, cone, 3).matrix().matrix() * ui.adjoint());
        }
    }
    Superoperator alt = DaviesGenerator::assemble(hp, rotated, 1.1);
    EXPECT_LT(max_abs(alt.matrix() - l.superop().matrix()), 1e-9);
}

TEST(lindblad, operator_fourier_transform) {
    DaviesGenerator single = build_davies(build_parent(Circuit(1)), 1.0);
    // Jump 1 is X/2: its raising part is |1><0| / 2.
    auto comps = single.components(1);
    Matrix up = Matrix::Zero(2, 2);
    up(1, 0) = 0.5;
    EXPECT_LT(max_abs(comps.at(1) - up), 1e-15);
    EXPECT_LE(oft_check(single, 1), 1e-12);
    // Jump 3 is Z/2, which only has a zero-frequency part.
    EXPECT_EQ(single.components(3).size(), 1u);
    EXPECT_EQ(single.components(3).begin()->first, 0);

    DaviesGenerator l = build_davies(build_parent(random_circuit(3, 3, {3, true})), 1.0);
    double worst = 0, worst_dup = 0;
    for (std::size_t a = 0; a < l.jumps().size(); a += 5) {
        worst = std::max(worst, oft_check(l, a));
        worst_dup = std::max(worst_dup, oft_check(l, a, OftGrid::kEndpointDuplicated));
    }
    EXPECT_LE(worst, 1e-10);
    EXPECT_GT(worst_dup, 1e-3);
}

TEST(lindblad, boltzmann_filter) {
    BoltzmannFilter f = boltzmann_filter(32, 1.0, 1e-6);
    EXPECT_LE(f.actual_norm_err, 0.256);
    EXPECT_NEAR(f.bound, 0.256, 1e-12);
    EXPECT_GT(f.actual_norm_err, 0);
    Eigen::MatrixXd wtw = f.w.transpose() * f.w;
    EXPECT_LT((wtw - Eigen::MatrixXd::Identity(wtw.rows(), wtw.cols())).cwiseAbs().maxCoeff(), 1e-12);

    BoltzmannFilter wide = boltzmann_filter(3, 1.0, 1e-3);  // cutoff ln(1000) > 3
    EXPECT_EQ(wide.actual_norm_err, 0.0);
    EXPECT_EQ((wide.w - wide.w_trunc).cwiseAbs().maxCoeff(), 0.0);
    BoltzmannFilter hot = boltzmann_filter(5, 0.0, 0.1);
    EXPECT_EQ(hot.actual_norm_err, 0.0);
    EXPECT_THROW(boltzmann_filter(4, 1.0, 1.0), DomainError);
    EXPECT_THROW(boltzmann_filter(4, 1.0, 0.0), DomainError);
}

TEST(lindblad, capacity) {
    EXPECT_THROW(build_davies(build_parent(Circuit(kMaxDaviesQubits + 1)), 1.0), CapacityError);
}
