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
#ifndef GIBBSLAB_CIRCUIT_H
#define GIBBSLAB_CIRCUIT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gibbslab/linalg.h"
#include "gibbslab/pauli.h"

namespace gibbslab {

enum class GateKind {
    kH,
    kCnot,
    kCz,
    /// T^k = diag(1, e^{i k pi / 4}).
    kTPow,
    /// exp(i theta Z).
    kZRot,
    /// exp(i theta Z (x) ... (x) Z) on its qubit list.
    kMultiZRot,
};

struct Gate {
    GateKind kind;
    std::vector<int> qubits;
    int power = 0;
    double theta = 0;

    static Gate h(int q);
    static Gate cnot(int control, int target);
    static Gate cz(int a, int b);
    static Gate tpow(int q, int k);
    static Gate zrot(int q, double theta);
    static Gate mzrot(std::vector<int> qubits, double theta);

    bool is_diagonal() const;
    Gate inverse() const;
    /// Matrix on the gate's own qubits, in the listed order.
    Matrix local_matrix() const;
    /// Depth once lowered to one- and two-qubit gates.
    int lowered_depth() const;
    std::string name() const;
    bool operator==(const Gate &other) const = default;
};

using Layer = std::vector<Gate>;

/// A layered circuit. Gates within a layer act on disjoint qubits.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Layer> &layers() const { return layers_; }
    /// Appends a layer, checking qubit ranges and disjointness. Empty layers are dropped.
    void append_layer(Layer layer);
    /// Appends every layer of other, which must act on the same register.
    void append(const Circuit &other);

    /// Number of layers after lowering multi-qubit Z rotations to CNOT ladders.
    int depth() const;
    std::size_t gate_count() const;
    Circuit adjoint() const;
    /// The subcircuit keeping only the listed gates, indexed as (layer, position).
    Circuit filtered(const std::vector<std::vector<bool>> &keep) const;
    bool operator==(const Circuit &other) const = default;

   private:
    int num_qubits_ = 0;
    std::vector<Layer> layers_;
};

/// Limit for statevector simulation.
constexpr int kMaxStatevectorQubits = 22;

void apply_gate(Vector &state, int num_qubits, const Gate &gate);
Vector simulate(const Circuit &circuit, const Vector &initial);
Vector simulate_zero(const Circuit &circuit);
DenseOperator build_unitary(const Circuit &circuit);

/// Output distribution over basis indices (qubit 0 is the most significant bit).
std::vector<double> output_distribution(const Circuit &circuit);
std::vector<std::uint64_t> sample_distribution(const std::vector<double> &probs, std::uint64_t seed,
                                               std::size_t count);
std::vector<std::uint64_t> sample(const Circuit &circuit, std::uint64_t seed, std::size_t count);

struct SupportOptions {
    /// Pauli term budget for symbolic propagation before falling back to a dense test.
    std::size_t max_terms = 1 << 14;
};

struct CircuitSupports {
    /// lightcone[i]: qubits causally reachable from qubit i at the input (includes i).
    std::vector<std::vector<int>> lightcone;
    /// reverse_lightcone[j] = { i : j in lightcone[i] }.
    std::vector<std::vector<int>> reverse_lightcone;
    /// z_support[i]: support of C Z_i C^dagger.
    std::vector<std::vector<int>> z_support;
    int ell = 0;
    int ell_reverse = 0;
    int locality = 0;
};

CircuitSupports supports(const Circuit &circuit, const SupportOptions &options = {});
std::vector<int> lightcone(const Circuit &circuit, int qubit);

/// C O C^dagger, propagated symbolically. Throws CapacityError once more than max_terms terms appear.
PauliSum conjugate(const Circuit &circuit, const PauliSum &op, std::size_t max_terms = 1 << 20);

/// Gates reachable from any of the seed qubits, in time order.
Circuit lightcone_subcircuit(const Circuit &circuit, const std::vector<int> &seeds);

/// True when the circuit is H^n, then diagonal gates and CNOTs with identity net permutation, then H^n.
bool is_iqp_shaped(const Circuit &circuit, std::string *why = nullptr);

/// Cluster-state IQP circuit on a width x height grid with T^{b_i} on qubit i = row * width + col.
Circuit build_iqp_cluster(int width, int height, const std::vector<int> &t_powers);
std::vector<int> random_t_powers(int num_qubits, std::uint64_t seed);

struct RandomCircuitOptions {
    int depth = 4;
    bool allow_rotations = false;
};
Circuit random_circuit(int num_qubits, std::uint64_t seed, const RandomCircuitOptions &options = {});

/// Text format: "qubits n", then gate lines; "---" separates layers, '#' starts a comment.
class ParseError : public DomainError {
   public:
    ParseError(int line, const std::string &msg);
    int line() const { return line_; }

   private:
    int line_;
};
Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit &circuit);

}  // namespace gibbslab

#endif
