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
#include "gibbslab/noise.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "gibbslab/hamiltonian.h"
#include "gibbslab/rng.h"

namespace gibbslab {

double beta_to_p(double beta) {
    if (!(beta >= 0)) {
        throw DomainError("beta must be non-negative");
    }
    return 1 / (1 + std::exp(beta));
}

double p_to_beta(double p) {
    if (!(p >= 0 && p <= 0.5)) {
        throw DomainError("no finite non-negative beta gives a flip rate outside [0, 1/2]");
    }
    if (p == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log((1 - p) / p);
}

double combined_rate(double p_in, double p_out) {
    return p_in * (1 - p_out) + p_out * (1 - p_in);
}

void NoiseSpec::validate() const {
    for (double p : {p_in, p_out}) {
        if (!(p >= 0 && p < 0.5)) {
            throw DomainError("noise rates must lie in [0, 1/2)");
        }
    }
}

Superoperator bit_flip_channel(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("flip probability must lie in [0, 1]");
    }
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    Matrix id = Matrix::Identity(2, 2);
    return Superoperator(1, (1 - p) * kron(id, id) + p * kron(x.transpose(), x));
}

DensityMatrix noisy_output_state(const Circuit &circuit, double p) {
    int n = circuit.num_qubits();
    require_dense_capacity(n, kMaxParentQubits, "noisy_output_state");
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("flip probability must lie in [0, 1]");
    }
    Matrix c = build_unitary(circuit).matrix();
    Eigen::Index d = c.rows();
    Vector diag(d);
    for (Eigen::Index x = 0; x < d; x++) {
        int w = std::popcount(static_cast<std::uint64_t>(x));
        diag(x) = std::pow(p, w) * std::pow(1 - p, n - w);
    }
    return DensityMatrix(n, c * diag.asDiagonal() * c.adjoint());
}

double gibbs_equivalence_check(const Circuit &circuit, double beta) {
    GibbsState g = gibbs_state(build_parent(circuit), beta);
    DensityMatrix noisy = noisy_output_state(circuit, beta_to_p(beta));
    return trace_distance(g.rho.matrix(), noisy.matrix());
}

void GadgetedIqp::validate() const {
    std::string why;
    if (!is_iqp_shaped(core, &why)) {
        throw DomainError("core circuit is not IQP-shaped: " + why);
    }
    if (static_cast<int>(root_bits.size()) != core.num_qubits()) {
        throw DomainError("need one root bit per core qubit");
    }
    std::set<int> seen;
    for (int b : root_bits) {
        if (b < 0 || b >= total_bits || !seen.insert(b).second) {
            throw DomainError("root bits must be distinct register bits");
        }
    }
    for (auto [c, t] : cnots) {
        if (c < 0 || t < 0 || c >= total_bits || t >= total_bits || c == t) {
            throw DomainError("invalid classical CNOT");
        }
    }
}

std::vector<Bits> sample_noisy_iqp(const GadgetedIqp &layout, const NoiseSpec &noise, std::uint64_t seed,
                                   std::size_t count) {
    layout.validate();
    noise.validate();
    std::vector<double> probs = output_distribution(layout.core);
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t k = 0; k < probs.size(); k++) {
        acc += probs[k];
        cdf[k] = acc;
    }
    const int n = layout.core.num_qubits();
    std::vector<Bits> out(count, Bits(layout.total_bits, 0));
    for (std::size_t s = 0; s < count; s++) {
        std::mt19937_64 rng = make_rng(seed, s);
        Bits &bits = out[s];
        for (auto &b : bits) {
            b = bernoulli(rng, noise.p_in);
        }
        for (auto [c, t] : layout.cnots) {
            bits[t] ^= bits[c];
        }
        double u = std::uniform_real_distribution<double>(0.0, acc)(rng);
        std::size_t x = std::min<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(),
                                              probs.size() - 1);
        for (int j = 0; j < n; j++) {
            bits[layout.root_bits[j]] ^= (x >> (n - 1 - j)) & 1;
        }
        if (noise.p_out > 0) {
            for (auto &b : bits) {
                b ^= bernoulli(rng, noise.p_out);
            }
        }
    }
    return out;
}

Bits index_to_bits(std::uint64_t x, int n) {
    Bits b(n);
    for (int q = 0; q < n; q++) {
        b[q] = (x >> (n - 1 - q)) & 1;
    }
    return b;
}

std::uint64_t bits_to_index(const Bits &bits) {
    if (bits.size() > 64) {
        throw CapacityError("bit string too long for an index");
    }
    std::uint64_t x = 0;
    for (auto b : bits) {
        x = (x << 1) | (b & 1);
    }
    return x;
}

double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    if (p.size() != q.size()) {
        throw DomainError("distributions have different supports");
    }
    double s = 0;
    for (std::size_t k = 0; k < p.size(); k++) {
        s += std::abs(p[k] - q[k]);
    }
    return s / 2;
}

std::vector<double> empirical_distribution(const std::vector<std::uint64_t> &samples, std::size_t outcomes) {
    std::vector<double> h(outcomes, 0.0);
    for (auto x : samples) {
        if (x >= outcomes) {
            throw DomainError("sample outside the outcome range");
        }
        h[x] += 1;
    }
    if (!samples.empty()) {
        for (auto &v : h) {
            v /= double(samples.size());
        }
    }
    return h;
}

double tvd_standard_error(const std::vector<double> &p, std::size_t count) {
    double s = 0;
    for (double v : p) {
        s += std::sqrt(v * (1 - v) / double(count));
    }
    return s / 2;
}

}  // namespace gibbslab
