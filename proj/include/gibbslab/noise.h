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
#ifndef GIBBSLAB_NOISE_H
#define GIBBSLAB_NOISE_H

#include <cstdint>
#include <utility>
#include <vector>

#include "gibbslab/circuit.h"
#include "gibbslab/linalg.h"

namespace gibbslab {

using Bits = std::vector<std::uint8_t>;

/// Bit-flip rate (1 + e^beta)^{-1} at inverse temperature beta. beta = +inf gives 0.
double beta_to_p(double beta);
/// Inverse of beta_to_p on (0, 1/2]. p = 0 gives +inf.
double p_to_beta(double p);
/// Rate of one flip after two independent flips with rates p_in and p_out.
double combined_rate(double p_in, double p_out);

struct NoiseSpec {
    double p_in = 0;
    double p_out = 0;
    /// Throws DomainError unless both rates lie in [0, 1/2).
    void validate() const;
};

/// rho -> (1 - p) rho + p X rho X on one qubit.
Superoperator bit_flip_channel(double p);

/// C (D_p(|0><0|))^{(x) n} C^dagger.
DensityMatrix noisy_output_state(const Circuit &circuit, double p);

/// Trace distance between the Gibbs state of the parent Hamiltonian and the noisy circuit output.
double gibbs_equivalence_check(const Circuit &circuit, double beta);

/// Classical CNOT networks on a bit register followed by an IQP core whose inputs are `root_bits`.
struct GadgetedIqp {
    Circuit core;
    int total_bits = 0;
    /// root_bits[j] is the register bit feeding core qubit j.
    std::vector<int> root_bits;
    /// (control, target) pairs applied in order before the core.
    std::vector<std::pair<int, int>> cnots;

    /// Throws DomainError when the description is inconsistent or the core is not IQP-shaped.
    void validate() const;
};

/// Samples the register with Bern(p_in) input flips and Bern(p_out) readout flips.
/// Input flips before an IQP core only shift its output, so the core is sampled once per shot from
/// its exact distribution and XORed with the propagated flips.
std::vector<Bits> sample_noisy_iqp(const GadgetedIqp &layout, const NoiseSpec &noise, std::uint64_t seed,
                                   std::size_t count);

/// Bits of index x on n qubits, qubit 0 first.
Bits index_to_bits(std::uint64_t x, int n);
std::uint64_t bits_to_index(const Bits &bits);

/// Half the L1 distance between a histogram of samples (normalized) and a distribution.
double total_variation(const std::vector<double> &p, const std::vector<double> &q);
std::vector<double> empirical_distribution(const std::vector<std::uint64_t> &samples, std::size_t outcomes);
/// (1/2) sum_x sqrt(p_x (1 - p_x) / count).
double tvd_standard_error(const std::vector<double> &p, std::size_t count);

}  // namespace gibbslab

#endif
