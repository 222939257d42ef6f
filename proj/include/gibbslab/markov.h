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
#ifndef GIBBSLAB_MARKOV_H
#define GIBBSLAB_MARKOV_H

#include <optional>
#include <vector>

#include "gibbslab/hamiltonian.h"
#include "gibbslab/linalg.h"

namespace gibbslab {

/// Qubit q sits at (q % width, q / width). A 1D chain has height 1.
struct Lattice {
    int width = 0;
    int height = 1;
    /// Shortest path length along lattice edges.
    int distance(int a, int b) const;
};

struct Tripartition {
    std::vector<int> a;
    std::vector<int> b;
    std::vector<int> c;
    std::optional<Lattice> lattice;

    /// Throws DomainError on overlapping, unsorted or out-of-range parts.
    void validate(int num_qubits) const;
    /// Sorted union.
    std::vector<int> all() const;
    /// Minimum lattice distance between A and C. Throws if no lattice is attached.
    int distance_ac() const;
};

/// I(A:C|B) = S(AB) + S(BC) - S(ABC) - S(B) in nats.
double cmi(const DensityMatrix &rho, const Tripartition &t);

/// True when removing B leaves no chain of interaction supports from A to C.
bool is_shielding(const ParentHamiltonian &hp, const Tripartition &t);

/// (I_A (x) R_{B->BC})(rho_AB) with the Petz map R. The result lives on A u B u C in increasing qubit order.
DensityMatrix petz_recover(const DensityMatrix &rho, const Tripartition &t);
/// Trace distance between rho_ABC and its Petz recovery.
double petz_residual(const DensityMatrix &rho, const Tripartition &t);

/// Gibbs state of the terms supported inside X, on the qubits of X (sorted).
Matrix restricted_gibbs(const ParentHamiltonian &hp, const std::vector<int> &x, double beta);

struct LocalIndistinguishability {
    /// Trace distance between Tr_{BC} Gibbs(H_{ABC}) and Tr_B Gibbs(H_{AB}).
    double residual = 0;
    /// Distance of U^dagger Gibbs(H_{ABC}) U from the product across the cut (A u B_A | rest),
    /// where U collects the lightcones of the qubits whose lightcone lies in B.
    double decoupling_residual = 0;
    int depth = 0;
    int distance = 0;
    /// distance >= 4 depth + 1.
    bool separated = false;
};
LocalIndistinguishability local_indistinguishability_check(const ParentHamiltonian &hp, const Tripartition &t,
                                                           double beta);

}  // namespace gibbslab

#endif
