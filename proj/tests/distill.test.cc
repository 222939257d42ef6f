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
#include "gibbslab/distill.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "test_util.h"

using namespace gibbslab;

namespace {

double bern_mass(const Bits &s, double p) {
    double m = 1;
    for (auto b : s) {
        m *= b ? p : 1 - p;
    }
    return m;
}

Bits without_root(const Bits &b) { return Bits(b.begin() + 1, b.end()); }

// Root-error probability by enumerating every noise vector on the k gadget bits.
double enumerated_failure(const BTreeGadget &g, double p) {
    const int k = g.size();
    double fail = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); s++) {
        Bits bits = index_to_bits(s, k);
        if (g.decode(without_root(g.encode(bits))) != bits[0]) {
            fail += bern_mass(bits, p);
        }
    }
    return fail;
}

Circuit cluster_base(int w, int h, std::uint64_t seed) { return build_iqp_cluster(w, h, random_t_powers(w * h, seed)); }

}  // namespace

TEST(distill, sizes_and_structure) {
    EXPECT_EQ(build_gadget(3, 2).size(), 4);
    EXPECT_EQ(build_gadget(3, 3).size(), 13);
    EXPECT_EQ(build_gadget(2, 4).size(), 15);
    BTreeGadget g = build_gadget(3, 2);
    EXPECT_EQ(g.cnot_schedule().size(), 3u);
    for (auto [p, c] : g.cnot_schedule()) {
        EXPECT_EQ(p, 0);
        EXPECT_EQ(g.parent(c), 0);
    }
    BTreeGadget t = build_gadget(3, 3);
    EXPECT_EQ(t.children(0), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(t.children(2), (std::vector<int>{7, 8, 9}));
    EXPECT_TRUE(t.children(12).empty());
    EXPECT_EQ(t.level(12), 2);
    EXPECT_TRUE(t.is_leaf(4));
    EXPECT_FALSE(t.is_leaf(3));
    EXPECT_EQ(t.parent(0), -1);
    // The level above the leaves is scheduled before the root's CNOTs.
    EXPECT_EQ(t.cnot_schedule().front().first, 1);
    EXPECT_EQ(t.cnot_schedule().back().first, 0);
    EXPECT_EQ(t.cnot_schedule().size(), 12u);
    Circuit tree = t.circuit();
    for (const Layer &l : tree.layers()) {
        for (const Gate &gate : l) {
            EXPECT_EQ(gate.kind, GateKind::kCnot);
        }
    }
    EXPECT_THROW(build_gadget(1, 3), DomainError);
    EXPECT_THROW(build_gadget(3, 1), DomainError);
    EXPECT_THROW(build_gadget(3, 14), CapacityError);
}

TEST(distill, encode_examples) {
    BTreeGadget g = build_gadget(3, 2);
    EXPECT_EQ(g.encode(Bits(4, 0)), Bits(4, 0));
    EXPECT_EQ(g.encode({1, 0, 0, 0}), (Bits{1, 1, 1, 1}));
    EXPECT_THROW(g.encode(Bits(3, 0)), DomainError);
}

TEST(distill, encode_matches_statevector) {
    std::mt19937_64 rng(3);
    for (auto [b, d] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
        BTreeGadget g = build_gadget(b, d);
        Circuit c = g.circuit();
        for (int trial = 0; trial < 10; trial++) {
            std::uint64_t s = rng() & ((std::uint64_t{1} << g.size()) - 1);
            Vector psi = Vector::Zero(std::int64_t{1} << g.size());
            psi(s) = 1;
            Vector out = simulate(c, psi);
            Eigen::Index arg;
            out.cwiseAbs().maxCoeff(&arg);
            EXPECT_NEAR(std::abs(out(arg)), 1.0, 1e-12);
            EXPECT_EQ(static_cast<std::uint64_t>(arg), bits_to_index(g.encode(index_to_bits(s, g.size()))));
        }
    }
}

TEST(distill, decode_examples) {
    BTreeGadget g = build_gadget(3, 2);
    EXPECT_EQ(g.decode({0, 0, 0}), 0);
    EXPECT_EQ(g.decode({1, 1, 0}), 1);
    EXPECT_EQ(g.decode({0, 1, 0}), 0);
    EXPECT_THROW(g.decode({0, 0}), DomainError);
    EXPECT_THROW(build_gadget(2, 3).decode(Bits(6, 0)), DomainError);
}

TEST(distill, decode_correct_when_stage_majorities_hold) {
    // Estimates are exact when each parent has at most one flipped child (B = 3).
    BTreeGadget g = build_gadget(3, 3);
    for (std::uint64_t s = 0; s < (1u << 13); s++) {
        Bits bits = index_to_bits(s, 13);
        bool majorities_ok = true;
        for (int p = 0; p < 4; p++) {
            int flips = 0;
            for (int c : g.children(p)) {
                flips += bits[c];
            }
            majorities_ok = majorities_ok && flips <= 1;
        }
        if (majorities_ok) {
            EXPECT_EQ(g.decode(without_root(g.encode(bits))), bits[0]) << s;
        }
    }
}

TEST(distill, exact_failure_examples) {
    EXPECT_NEAR(exact_failure_rate(3, 2, 0.1), 0.028, 1e-15);
    EXPECT_NEAR(exact_failure_rate(3, 3, 0.1), 3 * 0.028 * 0.028 * 0.972 + std::pow(0.028, 3), 1e-15);
    EXPECT_NEAR(exact_failure_rate(3, 3, 0.1), 0.002308096, 1e-15);
    EXPECT_NEAR(exact_failure_rate(3, 3, 0.25), 0.0656127929687500, 1e-15);
    EXPECT_NEAR(majority_failure(3, 0.25), 0.15625, 1e-15);
    for (int b : {3, 5, 7}) {
        for (int d : {2, 3, 4}) {
            EXPECT_EQ(exact_failure_rate(b, d, 0.0), 0.0);
            EXPECT_NEAR(exact_failure_rate(b, d, 0.5), 0.5, 1e-14);
        }
    }
    EXPECT_THROW(majority_failure(4, 0.1), DomainError);
}

TEST(distill, exhaustive_enumeration_matches_exact_rate) {
    for (auto [b, d] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{5, 2}, std::pair{7, 2}}) {
        BTreeGadget g = build_gadget(b, d);
        ASSERT_LE(g.size(), 15);
        for (double p : {0.05, 0.1, 0.25, 0.4}) {
            EXPECT_NEAR(enumerated_failure(g, p), exact_failure_rate(b, d, p), 1e-12) << b << "," << d << "," << p;
        }
    }
}

TEST(distill, recursion_inequalities) {
    for (int b : {3, 5, 7, 11}) {
        for (double p : {0.01, 0.1, 0.25, 0.4}) {
            double x = p;
            for (int stage = 0; stage < 5; stage++) {
                double next = majority_failure(b, x);
                EXPECT_LE(next, std::pow(2.0, b) * std::pow(x, b / 2.0));
                x = next;
            }
        }
    }
    for (int b : {11, 21, 31}) {
        for (double delta : {0.2, 0.5}) {
            EXPECT_LE(majority_failure(b, (1 - delta) / 2), std::pow(1 - delta * delta, b / 2.0));
        }
    }
}

TEST(distill, monte_carlo_matches_exact) {
    for (int b : {3, 5}) {
        for (int d : {2, 3}) {
            for (double p : {0.1, 0.25}) {
                McEstimate mc = mc_failure_rate(b, d, p, 100000, 42);
                double exact = exact_failure_rate(b, d, p);
                double sigma = std::sqrt(exact * (1 - exact) / 100000);
                EXPECT_LE(std::abs(mc.rate - exact), 4 * sigma) << b << "," << d << "," << p;
                EXPECT_EQ(mc.trials, 100000u);
            }
        }
    }
    EXPECT_EQ(mc_failure_rate(3, 3, 0.0, 1000, 1).failures, 0u);
    EXPECT_EQ(mc_failure_rate(3, 2, 0.1, 5000, 9).failures, mc_failure_rate(3, 2, 0.1, 5000, 9).failures);
}

TEST(distill, gadget_geometry) {
    EXPECT_EQ(supports(build_gadget(3, 2).circuit()).ell, 4);
    for (int b : {3, 5}) {
        for (int d : {2, 3, 4}) {
            BTreeGadget g = build_gadget(b, d);
            CircuitSupports s = supports(g.circuit());
            EXPECT_LE(s.ell, b * d);
            EXPECT_EQ(s.locality, d);
            for (int u = 0; u < g.size(); u++) {
                std::vector<int> path;
                for (int v = u; v >= 0; v = g.parent(v)) {
                    path.push_back(v);
                }
                std::sort(path.begin(), path.end());
                EXPECT_EQ(s.z_support[u], path) << u;
            }
        }
    }
}

TEST(distill, ft_assembly) {
    Circuit base = cluster_base(2, 2, 7);
    FTCircuit ft = assemble_ft_circuit(base, 3, 3);
    EXPECT_EQ(ft.total_bits(), 52);
    EXPECT_EQ(ft.root_bit(2), 26);
    GadgetedIqp lay = ft.layout();
    EXPECT_NO_THROW(lay.validate());
    std::set<int> roots(lay.root_bits.begin(), lay.root_bits.end());
    EXPECT_EQ(roots.size(), 4u);
    FTGeometry geo = ft_geometry(ft);
    EXPECT_TRUE(geo.within_bounds);
    EXPECT_LE(geo.ell, geo.base_ell + geo.gadget_ell);
    EXPECT_LE(geo.locality, geo.base_locality + 3);
    Circuit bad(2);
    bad.append_layer({Gate::cnot(0, 1)});
    EXPECT_THROW(assemble_ft_circuit(bad, 3, 2), DomainError);
}

TEST(distill, classical_register_matches_density_matrix) {
    // n = 2, B = 3, D = 2: the rendered circuit has 8 qubits.
    Circuit base = cluster_base(2, 1, 3);
    FTCircuit ft = assemble_ft_circuit(base, 3, 2);
    const double p = 0.2;
    const int total = ft.total_bits();
    DensityMatrix rho = noisy_output_state(ft.render(), p);
    GadgetedIqp lay = ft.layout();
    std::vector<double> ideal = output_distribution(base);
    std::vector<double> model(std::size_t{1} << total, 0.0);
    for (std::uint64_t e = 0; e < model.size(); e++) {
        Bits noise = index_to_bits(e, total);
        for (auto [c, t] : lay.cnots) {
            noise[t] ^= noise[c];
        }
        for (std::uint64_t x = 0; x < ideal.size(); x++) {
            Bits out = noise;
            for (int j = 0; j < 2; j++) {
                out[lay.root_bits[j]] ^= (x >> (1 - j)) & 1;
            }
            model[bits_to_index(out)] += bern_mass(index_to_bits(e, total), p) * ideal[x];
        }
    }
    for (std::size_t y = 0; y < model.size(); y++) {
        EXPECT_NEAR(rho.matrix()(y, y).real(), model[y], 1e-12);
    }
}

TEST(distill, conditional_exactness) {
    Circuit base = cluster_base(2, 1, 4);
    FTCircuit ft = assemble_ft_circuit(base, 3, 2);
    const double p = 0.3;
    const int total = ft.total_bits(), k = ft.gadget().size();
    std::vector<double> ideal = output_distribution(base);
    std::vector<double> conditional(ideal.size(), 0.0);
    double success = 0;
    for (std::uint64_t e = 0; e < (std::uint64_t{1} << total); e++) {
        Bits noise = index_to_bits(e, total);
        bool ok = true;
        Bits encoded(total);
        for (int j = 0; j < 2; j++) {
            Bits s(noise.begin() + j * k, noise.begin() + (j + 1) * k);
            Bits b = ft.gadget().encode(s);
            std::copy(b.begin(), b.end(), encoded.begin() + j * k);
            ok = ok && ft.gadget().decode(without_root(b)) == s[0];
        }
        if (!ok) {
            continue;
        }
        double mass = bern_mass(noise, p);
        success += mass;
        for (std::uint64_t x = 0; x < ideal.size(); x++) {
            Bits out = encoded;
            for (int j = 0; j < 2; j++) {
                out[ft.root_bit(j)] ^= (x >> (1 - j)) & 1;
            }
            conditional[ft.correct(out)] += mass * ideal[x];
        }
    }
    EXPECT_NEAR(success, std::pow(1 - exact_failure_rate(3, 2, p), 2), 1e-12);
    for (std::size_t x = 0; x < ideal.size(); x++) {
        EXPECT_NEAR(conditional[x] / success, ideal[x], 1e-12);
    }
}

TEST(distill, ft_pipeline_small) {
    FTCircuit ft = assemble_ft_circuit(cluster_base(2, 1, 5), 3, 3);
    FTPipelineResult r = ft_pipeline(ft, 2.0, 11, 20000);
    EXPECT_NEAR(r.p, 1 / (1 + std::exp(2.0)), 1e-15);
    EXPECT_EQ(r.corrected.size(), 20000u);
    EXPECT_NEAR(r.failure_bound, 2 * exact_failure_rate(3, 3, r.p), 1e-15);
    EXPECT_LE(r.tvd, r.failure_bound + 3 * r.standard_error);
    FTPipelineResult clean = ft_pipeline(ft, 60.0, 11, 20000);
    EXPECT_LE(clean.tvd, 3 * clean.standard_error);
    FTCircuit deeper = assemble_ft_circuit(cluster_base(2, 1, 5), 3, 4);
    EXPECT_LT(ft_pipeline(deeper, 2.0, 11, 10).failure_bound, r.failure_bound);
}

TEST(distill, sweep_csv_format) {
    auto rows = threshold_sweep({3}, {2}, {0.1, 0.2}, 1000, 3);
    ASSERT_EQ(rows.size(), 2u);
    std::string csv = sweep_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "B,D,p,exact_rate,mc_rate,stderr,trials");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_NE(csv.find("3,2,0.1,0.028,"), std::string::npos);
}
