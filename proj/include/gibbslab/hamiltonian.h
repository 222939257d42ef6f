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
#ifndef GIBBSLAB_HAMILTONIAN_H
#define GIBBSLAB_HAMILTONIAN_H

#include <vector>

#include "gibbslab/circuit.h"
#include "gibbslab/linalg.h"

namespace gibbslab {

/// Largest register for which build_parent materializes dense operators.
constexpr int kMaxParentQubits = 10;

struct HamiltonianTerm {
    /// S_i, the support of C Z_i C^dagger.
    std::vector<int> support;
    /// h_i = C |1><1|_i C^dagger restricted to the support.
    Matrix local;
};

/// H = sum_i C |1><1|_i C^dagger. Eigenvectors C|x> with energy |x|.
class ParentHamiltonian {
   public:
    static ParentHamiltonian build(const Circuit &circuit);

    int num_qubits() const { return circuit_.num_qubits(); }
    const Circuit &circuit() const { return circuit_; }
    const CircuitSupports &supports() const { return supports_; }
    const std::vector<HamiltonianTerm> &terms() const { return terms_; }
    /// Dense h_i on the whole register.
    DenseOperator term(int i) const;
    const DenseOperator &dense() const { return h_; }
    /// The circuit unitary C, whose columns are the eigenvectors.
    const DenseOperator &unitary() const { return c_; }
    /// Projector onto the energy-k eigenspace.
    DenseOperator eigenprojector(int k) const;

   private:
    Circuit circuit_;
    CircuitSupports supports_;
    std::vector<HamiltonianTerm> terms_;
    DenseOperator h_;
    DenseOperator c_;
};

inline ParentHamiltonian build_parent(const Circuit &circuit) {
    return ParentHamiltonian::build(circuit);
}

struct GibbsState {
    DensityMatrix rho;
    double partition_function = 0;
};
GibbsState gibbs_state(const ParentHamiltonian &hp, double beta);

/// Greedy coloring of the term-overlap graph, lowest free color in index order.
std::vector<int> color_interactions(const ParentHamiltonian &hp);
/// ell * 2^depth + 1.
int coloring_bound(const ParentHamiltonian &hp);

}  // namespace gibbslab

#endif
