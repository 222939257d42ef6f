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
#ifndef GIBBSLAB_DISTILL_H
#define GIBBSLAB_DISTILL_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gibbslab/circuit.h"
#include "gibbslab/noise.h"

namespace gibbslab {

/// Complete B-ary tree of CNOTs with D node levels. Nodes are numbered breadth first, root 0.
class BTreeGadget {
   public:
    static constexpr std::size_t kMaxNodes = 1000000;

    static BTreeGadget build(int arity, int levels);

    int arity() const { return arity_; }
    int levels() const { return levels_; }
    int size() const { return size_; }
    int parent(int u) const;
    std::vector<int> children(int u) const;
    /// Distance from the root.
    int level(int u) const;
    bool is_leaf(int u) const { return level(u) == levels_ - 1; }

    /// (parent, child) pairs, from the level above the leaves up to the root; within a level,
    /// layer t applies each parent's t-th child.
    const std::vector<std::pair<int, int>> &cnot_schedule() const { return schedule_; }
    /// The schedule as a k-qubit CNOT circuit, one layer per (level, child slot).
    Circuit circuit() const;

    /// Computational-basis action of the gadget on bits.
    Bits encode(const Bits &s) const;
    /// Guess of the root's input flip from the k - 1 non-root bits (node order 1..k-1).
    int decode(const Bits &measured) const;

   private:
    int arity_ = 0;
    int levels_ = 0;
    int size_ = 0;
    std::vector<int> level_start_;
    std::vector<std::pair<int, int>> schedule_;
};

inline BTreeGadget build_gadget(int arity, int levels) {
    return BTreeGadget::build(arity, levels);
}

/// P[Binom(B, x) > B / 2].
double majority_failure(int arity, double x);
/// Root error rate after D - 1 majority stages.
double exact_failure_rate(int arity, int levels, double p);

struct McEstimate {
    double rate = 0;
    double standard_error = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
};
McEstimate mc_failure_rate(int arity, int levels, double p, std::size_t trials, std::uint64_t seed);

/// Base IQP circuit with one gadget per input; gadget j occupies bits [j k, (j + 1) k), root first.
class FTCircuit {
   public:
    FTCircuit(Circuit base, BTreeGadget gadget);

    const Circuit &base() const { return base_; }
    const BTreeGadget &gadget() const { return gadget_; }
    int num_inputs() const { return base_.num_qubits(); }
    int total_bits() const { return base_.num_qubits() * gadget_.size(); }
    int root_bit(int j) const { return j * gadget_.size(); }
    /// Gadgets in parallel, then the base circuit on the root qubits.
    Circuit render() const;
    GadgetedIqp layout() const;
    /// Corrected base outcome from one register readout.
    std::uint64_t correct(const Bits &bits) const;

   private:
    Circuit base_;
    BTreeGadget gadget_;
};

FTCircuit assemble_ft_circuit(const Circuit &base, int arity, int levels);

struct FTGeometry {
    int ell = 0;
    int locality = 0;
    int base_ell = 0;
    int base_locality = 0;
    int gadget_ell = 0;
    int gadget_locality = 0;
    bool within_bounds = false;
};
FTGeometry ft_geometry(const FTCircuit &ft);

struct FTPipelineResult {
    double p = 0;
    std::vector<std::uint64_t> corrected;
    std::vector<double> empirical;
    std::vector<double> ideal;
    double tvd = 0;
    double standard_error = 0;
    double failure_rate = 0;
    /// n * failure_rate.
    double failure_bound = 0;
};
FTPipelineResult ft_pipeline(const FTCircuit &ft, double beta, std::uint64_t seed, std::size_t count,
                             double p_out = 0);

struct SweepRow {
    int arity;
    int levels;
    double p;
    double exact_rate;
    McEstimate mc;
};
std::vector<SweepRow> threshold_sweep(const std::vector<int> &arities, const std::vector<int> &levels,
                                      const std::vector<double> &ps, std::size_t trials, std::uint64_t seed);
std::string sweep_csv(const std::vector<SweepRow> &rows);

}  // namespace gibbslab

#endif
