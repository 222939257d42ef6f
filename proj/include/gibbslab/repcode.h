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
#ifndef GIBBSLAB_REPCODE_H
#define GIBBSLAB_REPCODE_H

#include <cstdint>
#include <string>
#include <vector>

#include "gibbslab/circuit.h"
#include "gibbslab/noise.h"

namespace gibbslab {

/// Diagonal core D = e^{i phase} exp(i sum_j theta_j prod_i Z_i^{M_ji}) of an IQP circuit.
struct IqpProgram {
    int num_qubits = 0;
    /// M, one row per monomial, entries 0/1.
    std::vector<Bits> rows;
    std::vector<double> theta;
    double global_phase = 0;

    void validate() const;
    /// Diagonal of D over basis indices (qubit 0 most significant).
    Vector diagonal() const;
};

IqpProgram iqp_to_program(const Circuit &circuit);
/// H layer, the monomial rotations, H layer. With decompose_multiz, rotations of weight >= 2 are
/// rendered as CNOT ladders around a single-qubit rotation.
Circuit program_to_circuit(const IqpProgram &program, bool decompose_multiz = false);

/// Replaces each qubit by r replicas: qubit i becomes i r, ..., i r + r - 1, and M becomes M G^T.
IqpProgram encode_program(const IqpProgram &program, int r);
/// The (n r) x n repetition generator G.
std::vector<Bits> repetition_generator(int n, int r);

/// exp(i theta Z^{(x) k}) as ceil(log2 k) CNOT matching layers, a ZROT, and the layers reversed.
Circuit decompose_multiz(int k, double theta);

/// Majority over each block of r replicas. r must be odd.
Bits block_decode(const Bits &y, int r);

/// P[Binom(r, q) > r / 2].
double repetition_failure(int r, double q);
/// n (4 q (1 - q))^{r / 2}.
double repcode_bound(int n, double q, int r);

struct RepcodeResult {
    int n = 0;
    int r = 0;
    double p_in = 0;
    double p_out = 0;
    double q = 0;
    double bound = 0;
    double tvd = 0;
    double standard_error = 0;
    std::size_t samples = 0;
    int encoded_depth = 0;
    std::vector<double> empirical;
    std::vector<double> ideal;
};
RepcodeResult repcode_pipeline(const Circuit &base, int r, double p_in, double p_out, std::uint64_t seed,
                               std::size_t count);
std::string repcode_csv(const std::vector<RepcodeResult> &rows);

}  // namespace gibbslab

#endif
