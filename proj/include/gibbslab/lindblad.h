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
#ifndef GIBBSLAB_LINDBLAD_H
#define GIBBSLAB_LINDBLAD_H

#include <map>
#include <optional>
#include <vector>

#include "gibbslab/hamiltonian.h"
#include "gibbslab/linalg.h"
#include "gibbslab/pauli.h"

namespace gibbslab {

/// Largest register for which Davies generators are assembled (superoperator dimension 4^n).
constexpr int kMaxDaviesQubits = 5;

/// Weight for a frequency component that raises the energy by nu: (1 + e^{beta nu})^{-1}.
/// Satisfies w(nu) / w(-nu) = e^{-beta nu}.
double glauber_weight(int nu, double beta);

enum class WeightConvention {
    /// glauber_weight above; the generator is detailed balanced.
    kDetailedBalance,
    /// (1 + e^{-beta nu})^{-1} with the same frequency labels. Violates detailed balance;
    /// kept as a negative control.
    kReversed,
};
double transition_weight(WeightConvention convention, int nu, double beta);

struct Jump {
    int site;
    /// Pauli on the lightcone of `site`, embedded in the full register.
    PauliString pauli;
    /// 2^{-|L_site|}.
    double normalization;
};

/// Sum over jumps and frequencies of w(nu) D[A_nu], assembled in the eigenbasis given by
/// `energies` (energy of each basis index). Jumps must already be expressed in that basis.
Matrix assemble_in_eigenbasis(const std::vector<int> &energies, const std::vector<Matrix> &jumps, double beta,
                              WeightConvention convention);

/// Frequency components A_nu = sum_k Pi_{k+nu} A Pi_k, for nu in [-n, n], skipping zero components.
std::map<int, Matrix> frequency_components(const ParentHamiltonian &hp, const Matrix &a);

class DaviesGenerator {
   public:
    static DaviesGenerator build(const ParentHamiltonian &hp, double beta,
                                 WeightConvention convention = WeightConvention::kDetailedBalance);
    /// Same construction with an arbitrary jump list given in the computational basis.
    static Superoperator assemble(const ParentHamiltonian &hp, const std::vector<Matrix> &jumps, double beta,
                                  WeightConvention convention = WeightConvention::kDetailedBalance);

    int num_qubits() const { return hp_.num_qubits(); }
    const ParentHamiltonian &hamiltonian() const { return hp_; }
    double beta() const { return beta_; }
    WeightConvention convention() const { return convention_; }
    const std::vector<Jump> &jumps() const { return jumps_; }
    Matrix jump_matrix(std::size_t a) const;
    std::map<int, Matrix> components(std::size_t a) const;
    const Superoperator &superop() const { return superop_; }
    const DensityMatrix &gibbs() const { return gibbs_; }

   private:
    ParentHamiltonian hp_;
    double beta_ = 0;
    WeightConvention convention_ = WeightConvention::kDetailedBalance;
    std::vector<Jump> jumps_;
    Superoperator superop_;
    DensityMatrix gibbs_;
};

inline DaviesGenerator build_davies(const ParentHamiltonian &hp, double beta,
                                    WeightConvention convention = WeightConvention::kDetailedBalance) {
    return DaviesGenerator::build(hp, beta, convention);
}

struct DetailedBalanceReport {
    /// Largest violation of L G = G L^dagger, G = (sigma^s)^T (x) sigma^{1-s}, in a normalized Pauli basis.
    double residual = 0;
    /// Largest entry of K_s - K_s^dagger.
    double discriminant_hermiticity = 0;
};
DetailedBalanceReport detailed_balance_check(const DaviesGenerator &l, double s);

struct Discriminant {
    double s = 0.5;
    Matrix matrix;
    /// Smallest nonzero eigenvalue of -K.
    double gap = 0;
    Eigen::VectorXd eigenvalues;
    Vector kernel;
};
Matrix discriminant_matrix(const Superoperator &l, const DensityMatrix &sigma, double s);
Discriminant discriminant_gap(const DaviesGenerator &l, double s);

DensityMatrix evolve(const DaviesGenerator &l, const DensityMatrix &rho, double t);

struct MixingDiagnostics {
    /// Smallest grid time at which every probe pair contracts by half in trace norm.
    std::optional<double> halving_time;
    /// Relative entropy to the Gibbs state along the grid, one curve per probe state.
    std::vector<std::vector<double>> entropy_curves;
    std::vector<double> t_grid;
    /// Smallest least-squares decay rate of log D(t) over the probe curves.
    double fitted_rate = 0;
    bool curves_monotone = true;
};
std::vector<DensityMatrix> mixing_probes(const DaviesGenerator &l);
MixingDiagnostics mixing_diagnostics(const DaviesGenerator &l, const std::vector<double> &t_grid);

/// Tr(L[rho](log rho - log rho_beta)) after mixing rho with 1e-9 of the maximally mixed state.
double entropy_production(const DaviesGenerator &l, const DensityMatrix &rho);

struct ConvexDecomposition {
    double q = 1;
    /// L rotated into the circuit frame: C^dagger L[C . C^dagger] C.
    Superoperator rotated;
    Superoperator non_interacting;
    Superoperator rest;
    double identity_residual = 0;
    /// Largest entry of L_rest[sigma_beta] for the product Gibbs state sigma_beta.
    double rest_fixed_point_residual = 0;
    CptpReport rest_channel;
};
ConvexDecomposition convex_decomposition(const DaviesGenerator &l);

enum class OftGrid {
    /// 2n + 1 times spaced by 2 pi / (2n + 1); exact for integer spectra in [0, n].
    kExact,
    /// 2n + 1 times spaced by pi / n, both endpoints included. Not exact.
    kEndpointDuplicated,
};
/// Largest entry error between the time-averaged and projector-defined frequency components of jump a.
double oft_check(const DaviesGenerator &l, std::size_t a, OftGrid grid = OftGrid::kExact);

struct BoltzmannFilter {
    Eigen::MatrixXd w;
    Eigen::MatrixXd w_trunc;
    double actual_norm_err = 0;
    double bound = 0;
    /// Frequencies whose weight was clamped.
    double cutoff = 0;
};
/// Rotation blocks [[sqrt g, -sqrt(1-g)], [sqrt(1-g), sqrt g]] with g(w) = (1 + e^{-beta w})^{-1},
/// for w in [-n, n]. Index = (block row) * (2n + 1) + (w + n).
BoltzmannFilter boltzmann_filter(int n, double beta, double delta);

}  // namespace gibbslab

#endif
