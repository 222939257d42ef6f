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
#include "gibbslab/checks.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>

#include "gibbslab/circuit.h"
#include "gibbslab/distill.h"
#include "gibbslab/hamiltonian.h"
#include "gibbslab/markov.h"
#include "gibbslab/noise.h"
#include "gibbslab/pauli.h"
#include "gibbslab/repcode.h"
#include "gibbslab/rng.h"

namespace gibbslab {

namespace {

constexpr double kPi = std::numbers::pi;

// Collects pass/fail and the worst value of the headline metric; extra facts go into the detail text.
class Tally {
   public:
    Tally(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

    void metric(double v) {
        worst_ = std::max(worst_, v);
        ok_ = ok_ && v <= tolerance_;
    }
    void bound(const char *what, double v, double tol) {
        ok_ = ok_ && v <= tol;
        note(what, v);
    }
    void require(bool cond, const std::string &what) {
        if (!cond) {
            ok_ = false;
            note(what);
        }
    }
    /// Keyed values keep the entry of largest magnitude.
    void note(const std::string &key, double v) {
        for (auto &[k, old] : values_) {
            if (k == key) {
                if (!(std::abs(old) >= std::abs(v))) {
                    old = v;
                }
                return;
            }
        }
        values_.emplace_back(key, v);
    }
    void note(const std::string &text) {
        if (std::find(texts_.begin(), texts_.end(), text) == texts_.end()) {
            texts_.push_back(text);
        }
    }

    CheckResult result() const {
        CheckResult r;
        r.name = name_;
        r.passed = ok_;
        r.value = worst_;
        r.tolerance = tolerance_;
        std::string detail;
        char buf[128];
        for (const auto &[k, v] : values_) {
            std::snprintf(buf, sizeof buf, "%s%s=%.6g", detail.empty() ? "" : "; ", k.c_str(), v);
            detail += buf;
        }
        for (const auto &text : texts_) {
            detail += (detail.empty() ? "" : "; ") + text;
        }
        r.detail = detail;
        return r;
    }

   private:
    std::string name_;
    double tolerance_;
    double worst_ = 0;
    bool ok_ = true;
    std::vector<std::pair<std::string, double>> values_;
    std::vector<std::string> texts_;
};

DensityMatrix random_density(int n, std::mt19937_64 &rng, double regularize = 0) {
    Eigen::Index d = Eigen::Index{1} << n;
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    if (regularize > 0) {
        rho = (1 - regularize) * rho + regularize * Matrix::Identity(d, d) / double(d);
    }
    return DensityMatrix(n, rho);
}

Circuit cluster_circuit(int width, int height, std::uint64_t b_seed) {
    return build_iqp_cluster(width, height, random_t_powers(width * height, b_seed));
}

// Nearest-neighbour circuit on a line: alternating even/odd bonds, each bond CNOT, CZ or a pair of
// single-qubit gates.
Circuit line_circuit(int n, std::uint64_t seed, int depth) {
    std::mt19937_64 rng = make_rng(seed, 17);
    Circuit c(n);
    for (int layer = 0; layer < depth; layer++) {
        Layer l;
        std::vector<bool> used(n, false);
        for (int q = layer % 2; q + 1 < n; q += 2) {
            int kind = std::uniform_int_distribution<int>(0, 3)(rng);
            if (kind == 0) {
                l.push_back(Gate::cnot(q, q + 1));
            } else if (kind == 1) {
                l.push_back(Gate::cnot(q + 1, q));
            } else if (kind == 2) {
                l.push_back(Gate::cz(q, q + 1));
            } else {
                continue;
            }
            used[q] = used[q + 1] = true;
        }
        for (int q = 0; q < n; q++) {
            if (!used[q]) {
                int kind = std::uniform_int_distribution<int>(0, 2)(rng);
                if (kind == 0) {
                    l.push_back(Gate::h(q));
                } else if (kind == 1) {
                    l.push_back(Gate::tpow(q, std::uniform_int_distribution<int>(1, 7)(rng)));
                }
            }
        }
        c.append_layer(std::move(l));
    }
    return c;
}

// Random circuits shared by the Gibbs and Davies criteria: n in {2, 3, 4}, depth in {1, 2, 3}.
std::vector<Circuit> gibbs_instances(int count) {
    std::vector<Circuit> out;
    for (int i = 0; i < count; i++) {
        out.push_back(random_circuit(2 + i % 3, 1000 + i, {1 + (i / 3) % 3, true}));
    }
    return out;
}

std::vector<Circuit> circuits_with_ell(int count, const std::vector<int> &ells, int max_qubits) {
    std::vector<Circuit> out;
    for (std::uint64_t seed = 0; seed < 2000 && static_cast<int>(out.size()) < count; seed++) {
        int n = 3 + static_cast<int>(seed % (max_qubits - 2));
        Circuit c = random_circuit(n, 5000 + seed, {1 + static_cast<int>(seed % 2), true});
        int ell = supports(c).ell;
        if (std::find(ells.begin(), ells.end(), ell) != ells.end()) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

// Root-error probability of decode after encode, summed over every noise vector.
double enumerated_failure(const BTreeGadget &g, double p) {
    const int k = g.size();
    double fail = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); s++) {
        Bits bits = index_to_bits(s, k);
        Bits measured(bits.size() - 1);
        Bits enc = g.encode(bits);
        std::copy(enc.begin() + 1, enc.end(), measured.begin());
        if (g.decode(measured) != bits[0]) {
            double m = 1;
            for (auto b : bits) {
                m *= b ? p : 1 - p;
            }
            fail += m;
        }
    }
    return fail;
}

Matrix multiz_diagonal(int k, double theta) {
    Eigen::Index d = Eigen::Index{1} << k;
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index x = 0; x < d; x++) {
        m(x, x) = std::exp(Complex(0, (std::popcount(static_cast<std::uint64_t>(x)) % 2 ? -1 : 1) * theta));
    }
    return m;
}

int ceil_log2(int k) {
    int l = 0;
    while ((1 << l) < k) {
        l++;
    }
    return l;
}

// ---- shared measurement routines ----

void gibbs_equivalence(Tally &t, const std::vector<Circuit> &circuits, const std::vector<double> &betas) {
    for (const Circuit &c : circuits) {
        for (double beta : betas) {
            t.metric(gibbs_equivalence_check(c, beta));
        }
    }
}

void davies_correctness(Tally &t, const std::vector<Circuit> &circuits, const std::vector<double> &betas,
                        const CheckContext &ctx) {
    double worst_fp = 0, worst_db = 0, worst_s = 0, worst_imag = 0;
    for (const Circuit &c : circuits) {
        ParentHamiltonian hp = build_parent(c);
        for (double beta : betas) {
            DaviesGenerator l = build_davies(hp, beta, ctx.convention());
            double fp = trace_norm(l.superop().apply(l.gibbs().matrix()));
            double db = 0;
            for (double s : {0.0, 0.5, 1.0}) {
                DetailedBalanceReport r = detailed_balance_check(l, s);
                db = std::max({db, r.residual, r.discriminant_hermiticity});
            }
            Matrix kh = discriminant_matrix(l.superop(), l.gibbs(), 0.5);
            double ds = std::max((discriminant_matrix(l.superop(), l.gibbs(), 0.0) - kh).cwiseAbs().maxCoeff(),
                                 (discriminant_matrix(l.superop(), l.gibbs(), 1.0) - kh).cwiseAbs().maxCoeff());
            Eigen::ComplexEigenSolver<Matrix> es(l.superop().matrix(), false);
            double imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
            worst_fp = std::max(worst_fp, fp);
            worst_db = std::max(worst_db, db);
            worst_s = std::max(worst_s, ds);
            worst_imag = std::max(worst_imag, imag);
            t.metric(db);
        }
    }
    t.bound("fixed_point", worst_fp, 1e-9);
    t.bound("s_spread", worst_s, 1e-9);
    t.bound("max_imag", worst_imag, 1e-8);
}

void single_qubit_analytics(Tally &t, const std::vector<double> &betas, const CheckContext &ctx) {
    for (double beta : betas) {
        DaviesGenerator l = build_davies(build_parent(Circuit(1)), beta, ctx.convention());
        Discriminant k = discriminant_gap(l, 0.5);
        t.metric(std::abs(k.gap - 0.5));
        t.require(k.gap >= 0.25, "gap below 1/4");
        Vector kernel(4);
        kernel << 1, 0, 0, std::exp(-beta / 2);
        kernel /= kernel.norm();
        // Fix the phase of the computed kernel vector before comparing.
        Complex phase = std::abs(k.kernel(0)) > 0 ? k.kernel(0) / std::abs(k.kernel(0)) : Complex(1);
        t.bound("kernel", (k.kernel / phase - kernel).norm(), 1e-10);
    }
}

void convex_checks(Tally &t, const std::vector<Circuit> &circuits, const CheckContext &ctx) {
    double worst_fp = 0, min_choi = 0;
    for (const Circuit &c : circuits) {
        DaviesGenerator l = build_davies(build_parent(c), 0.9, ctx.convention());
        ConvexDecomposition cd = convex_decomposition(l);
        int ell = l.hamiltonian().supports().ell;
        t.require(cd.q == std::pow(4.0, 1 - ell), "q differs from 4^(1-ell)");
        t.metric(cd.identity_residual);
        worst_fp = std::max(worst_fp, cd.rest_fixed_point_residual);
        min_choi = std::min(min_choi, cd.rest_channel.min_choi_eigenvalue);
        t.bound("trace_defect", cd.rest_channel.trace_preservation_defect, 1e-8);
    }
    t.note("min_choi", min_choi);
    t.bound("rest_fixed_point", worst_fp, 1e-9);
    t.require(min_choi >= -1e-8, "negative Choi eigenvalue");
}

void mlsi_checks(Tally &t, const std::vector<Circuit> &circuits, const std::vector<double> &betas, int states,
                 const CheckContext &ctx) {
    std::mt19937_64 rng(77);
    double worst_ep = -std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::vector<double> grid;
    for (int k = 0; k < 50; k++) {
        grid.push_back(0.4 * k);
    }
    for (const Circuit &c : circuits) {
        for (double beta : betas) {
            DaviesGenerator l = build_davies(build_parent(c), beta, ctx.convention());
            int ell = l.hamiltonian().supports().ell;
            double alpha = std::pow(4.0, 1 - ell) / (16 * (1 + std::exp(beta)));
            for (int s = 0; s < states; s++) {
                DensityMatrix rho = random_density(2, rng, 0.01);
                double ep = entropy_production(l, rho);
                double d = relative_entropy(rho.matrix(), l.gibbs().matrix());
                worst_ep = std::max(worst_ep, ep);
                t.metric(std::max(0.0, ep + alpha * d));
            }
            monotone = monotone && mixing_diagnostics(l, grid).curves_monotone;
        }
    }
    t.bound("max_ep", worst_ep, 1e-12);
    t.require(monotone, "relative entropy increased along the flow");
}

void oft_checks(Tally &t, const std::vector<Circuit> &circuits, const CheckContext &ctx) {
    for (const Circuit &c : circuits) {
        DaviesGenerator l = build_davies(build_parent(c), 1.0, ctx.convention());
        for (std::size_t a = 0; a < l.jumps().size(); a++) {
            t.metric(oft_check(l, a));
        }
    }
}

void boltzmann_checks(Tally &t, int n, double beta, const std::vector<double> &deltas) {
    for (double delta : deltas) {
        BoltzmannFilter f = boltzmann_filter(n, beta, delta);
        t.require(f.actual_norm_err <= f.bound, "truncation error above 8 n sqrt(delta)");
        t.metric(f.actual_norm_err / f.bound);
        t.note("err", f.actual_norm_err);
    }
}

void mc_checks(Tally &t, const std::vector<int> &arities, const std::vector<int> &levels,
               const std::vector<double> &ps, std::size_t trials) {
    std::uint64_t stream = 0;
    for (int b : arities) {
        for (int d : levels) {
            for (double p : ps) {
                double exact = exact_failure_rate(b, d, p);
                McEstimate mc = mc_failure_rate(b, d, p, trials, stream_seed(2024, stream++));
                double sigma = std::sqrt(exact * (1 - exact) / double(trials));
                t.metric(std::abs(mc.rate - exact) / sigma);
            }
        }
    }
}

void chain_checks(Tally &t, const std::vector<int> &arities, const std::vector<double> &ps, int stages) {
    for (int b : arities) {
        for (double p : ps) {
            double x = p;
            for (int s = 0; s < stages && x <= 0.5; s++) {
                double next = exact_failure_rate(b, 2, x);
                t.require(next <= std::pow(2.0, b) * std::pow(x, b / 2.0), "chain inequality violated");
                x = next;
            }
        }
    }
}

void geometry_checks(Tally &t, const std::vector<int> &arities, const std::vector<int> &levels) {
    for (int b : arities) {
        for (int d : levels) {
            CircuitSupports s = supports(build_gadget(b, d).circuit());
            t.require(s.ell <= b * d, "lightcone above B*D for B=" + std::to_string(b) + " D=" + std::to_string(d));
            t.require(s.locality == d, "max z-support differs from D for B=" + std::to_string(b) +
                                           " D=" + std::to_string(d));
            t.metric(double(s.ell) / (b * d));
        }
    }
}

void coloring_checks(Tally &t, int count, int max_qubits) {
    for (int i = 0; i < count; i++) {
        int n = 2 + i % (max_qubits - 1);
        Circuit c = random_circuit(n, 3000 + i, {1 + i % 3, true});
        ParentHamiltonian hp = build_parent(c);
        std::vector<int> color = color_interactions(hp);
        const auto &terms = hp.terms();
        for (std::size_t a = 0; a < terms.size(); a++) {
            for (std::size_t b = a + 1; b < terms.size(); b++) {
                if (color[a] != color[b]) {
                    continue;
                }
                std::vector<int> common;
                std::set_intersection(terms[a].support.begin(), terms[a].support.end(), terms[b].support.begin(),
                                      terms[b].support.end(), std::back_inserter(common));
                t.require(common.empty(), "overlapping supports share a color");
            }
        }
        int used = color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
        int bound = coloring_bound(hp);
        t.require(used <= bound, "color count above ell 2^d + 1");
        t.metric(double(used) / bound);
    }
}

std::vector<Tripartition> all_tripartitions(int n) {
    std::vector<Tripartition> out;
    int total = 1;
    for (int q = 0; q < n; q++) {
        total *= 4;
    }
    for (int code = 0; code < total; code++) {
        Tripartition t;
        int x = code;
        for (int q = 0; q < n; q++, x /= 4) {
            if (x % 4 == 1) {
                t.a.push_back(q);
            } else if (x % 4 == 2) {
                t.b.push_back(q);
            } else if (x % 4 == 3) {
                t.c.push_back(q);
            }
        }
        if (!t.a.empty() && !t.c.empty()) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

// Hammersley-Clifford and exact Petz recovery on every shielding tripartition.
void markov_shielding(Tally &t, const std::vector<Circuit> &circuits, double beta, bool with_petz) {
    std::size_t shielding = 0;
    double worst_petz = 0, min_cmi = 0;
    for (const Circuit &c : circuits) {
        ParentHamiltonian hp = build_parent(c);
        DensityMatrix rho = gibbs_state(hp, beta).rho;
        for (const Tripartition &tp : all_tripartitions(c.num_qubits())) {
            if (!is_shielding(hp, tp)) {
                continue;
            }
            shielding++;
            double i = cmi(rho, tp);
            min_cmi = std::min(min_cmi, i);
            t.metric(i);
            if (with_petz) {
                worst_petz = std::max(worst_petz, petz_residual(rho, tp));
            }
        }
    }
    t.note("shielding", double(shielding));
    t.require(shielding > 0, "no shielding tripartitions found");
    t.bound("min_cmi", -min_cmi, 1e-9);
    if (with_petz) {
        t.bound("petz", worst_petz, 1e-7);
    }
}

void fawzi_renner(Tally &t, int states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tripartition tp{{0}, {1}, {2}, {}};
    for (int k = 0; k < states; k++) {
        DensityMatrix rho = random_density(3, rng);
        double i_bits = cmi(rho, tp) / std::log(2.0);
        double one_norm = trace_norm(rho.matrix() - petz_recover(rho, tp).matrix());
        // Violation of I(A:C|B) >= |rho - R(rho)|_1^2 / (4 ln 2), in bits.
        t.metric(std::max(0.0, one_norm * one_norm / (4 * std::log(2.0)) - i_bits));
    }
}

Circuit brickwork_cnots() {
    Circuit c(6);
    c.append_layer({Gate::cnot(0, 1), Gate::cnot(2, 3), Gate::cnot(4, 5)});
    return c;
}

void local_indistinguishability(Tally &t) {
    struct Case {
        Circuit circuit;
        Tripartition part;
    };
    std::vector<Case> cases{
        {Circuit(4), {{0}, {1, 2}, {3}, Lattice{4, 1}}},
        {brickwork_cnots(), {{0}, {1, 2, 3, 4}, {5}, Lattice{6, 1}}},
        {line_circuit(6, 5, 1), {{0}, {1, 2, 3, 4}, {5}, Lattice{6, 1}}},
    };
    for (const Case &c : cases) {
        for (double beta : {0.5, 2.0}) {
            LocalIndistinguishability li = local_indistinguishability_check(build_parent(c.circuit), c.part, beta);
            t.require(li.separated, "instance does not satisfy d(A,C) >= 4 d + 1");
            t.metric(li.residual);
            t.metric(li.decoupling_residual);
        }
    }
}

IqpProgram full_program(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    IqpProgram p{n, {}, {}, angle(rng)};
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); m++) {
        p.rows.push_back(index_to_bits(m, n));
        p.theta.push_back(angle(rng));
    }
    return p;
}

void encoding_identity(Tally &t, int max_n, int max_r) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= max_n; n++) {
        for (int r = 1; r <= max_r; r++) {
            IqpProgram p = full_program(n, rng);
            Vector d = p.diagonal();
            Vector de = encode_program(p, r).diagonal();
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << (n * r)); y++) {
                std::uint64_t parity = 0;
                for (int a = 0; a < n * r; a++) {
                    parity ^= ((y >> (n * r - 1 - a)) & 1) << (n - 1 - a / r);
                }
                t.metric(std::abs(de(y) - d(parity)));
            }
        }
    }
}

void multiz_checks(Tally &t, int max_k, int angles) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int k = 1; k <= max_k; k++) {
        for (int a = 0; a < angles; a++) {
            double theta = angle(rng);
            Circuit c = decompose_multiz(k, theta);
            t.metric((build_unitary(c).matrix() - multiz_diagonal(k, theta)).cwiseAbs().maxCoeff());
            t.require(c.depth() == 2 * ceil_log2(k) + 1, "decomposition depth differs from 2 ceil(log2 k) + 1");
        }
    }
}

// ---- acceptance criteria ----

CheckResult criterion_gibbs(const CheckContext &) {
    Tally t("gibbs_equals_noisy_circuit", 1e-10);
    gibbs_equivalence(t, gibbs_instances(20), {0.5, 1.0, 2.0});
    return t.result();
}

CheckResult criterion_davies(const CheckContext &ctx) {
    Tally t("davies_correctness", 1e-9);
    std::vector<Circuit> small;
    for (const Circuit &c : gibbs_instances(20)) {
        if (c.num_qubits() <= 3) {
            small.push_back(c);
        }
    }
    davies_correctness(t, small, {0.5, 1.0, 2.0}, ctx);
    return t.result();
}

CheckResult criterion_single_qubit(const CheckContext &ctx) {
    Tally t("single_qubit_gap", 1e-12);
    single_qubit_analytics(t, {0.0, 0.5, 1.0, 2.0, 4.0}, ctx);
    return t.result();
}

CheckResult criterion_convex(const CheckContext &ctx) {
    Tally t("convex_decomposition", 1e-8);
    auto circuits = circuits_with_ell(10, {2, 3}, 4);
    t.require(circuits.size() == 10, "could not find 10 circuits with ell in {2, 3}");
    convex_checks(t, circuits, ctx);
    return t.result();
}

std::vector<Circuit> two_qubit_circuits() {
    Circuit cnot(2);
    cnot.append_layer({Gate::cnot(0, 1)});
    return {Circuit(2), cnot, cluster_circuit(2, 1, 7), random_circuit(2, 12, {2, true})};
}

CheckResult criterion_mlsi(const CheckContext &ctx) {
    Tally t("mlsi_entropy_production", 1e-9);
    mlsi_checks(t, two_qubit_circuits(), {0.5, 1.0}, 200, ctx);
    return t.result();
}

CheckResult criterion_distill_rates(const CheckContext &) {
    Tally t("distillation_rates", 4.0);
    // Exhaustive enumeration over the k = 4 and k = 13 gadgets is the oracle for f_3 and f_3 o f_3.
    double f1 = exact_failure_rate(3, 2, 0.1), f2 = exact_failure_rate(3, 3, 0.1);
    t.bound("f3_vs_enumeration", std::abs(f1 - enumerated_failure(build_gadget(3, 2), 0.1)), 1e-12);
    t.bound("f3f3_vs_enumeration", std::abs(f2 - enumerated_failure(build_gadget(3, 3), 0.1)), 1e-12);
    t.bound("f3(0.1)-0.028", std::abs(f1 - 0.028), 1e-12);
    // Closed form 3 x^2 (1 - x) + x^3 at x = 0.028.
    t.bound("f3f3(0.1)-0.002308096", std::abs(f2 - 0.002308096), 1e-7);
    t.note("f3f3", f2);
    mc_checks(t, {3, 5}, {2, 3}, {0.1, 0.25}, 1000000);
    chain_checks(t, {3, 5}, {0.1, 0.25}, 6);
    return t.result();
}

CheckResult criterion_geometry(const CheckContext &) {
    Tally t("gadget_geometry", 1.0);
    geometry_checks(t, {3, 5}, {2, 3, 4});
    return t.result();
}

CheckResult criterion_ft(const CheckContext &) {
    Tally t("ft_pipeline", 0.03);
    FTCircuit ft = assemble_ft_circuit(cluster_circuit(2, 2, 7), 3, 3);
    FTPipelineResult r = ft_pipeline(ft, 2.0, 7, 100000);
    t.metric(r.tvd);
    t.note("tvd", r.tvd);
    t.note("bound", r.failure_bound);
    t.note("stderr", r.standard_error);
    t.bound("tvd_over_bound", r.tvd, r.failure_bound + 3 * r.standard_error);
    FTPipelineResult deeper = ft_pipeline(assemble_ft_circuit(cluster_circuit(2, 2, 7), 3, 4), 2.0, 7, 1);
    t.require(deeper.failure_bound < r.failure_bound, "D = 4 does not lower the failure bound");
    return t.result();
}

CheckResult criterion_coloring(const CheckContext &) {
    Tally t("interaction_coloring", 1.0);
    coloring_checks(t, 50, 8);
    return t.result();
}

CheckResult criterion_matrix_ingredients(const CheckContext &ctx) {
    Tally t("oft_and_boltzmann_filter", 1e-10);
    std::vector<Circuit> circuits;
    for (int i = 0; i < 5; i++) {
        circuits.push_back(random_circuit(1 + i % 3, 700 + i, {2, true}));
    }
    oft_checks(t, circuits, ctx);
    Tally b("boltzmann", 1.0);
    boltzmann_checks(b, 32, 1.0, {1e-4, 1e-6});
    CheckResult rb = b.result();
    t.require(rb.passed, "Boltzmann truncation: " + rb.detail);
    t.note(rb.detail);
    return t.result();
}

CheckResult criterion_markov(const CheckContext &) {
    Tally t("markov_structure", 1e-8);
    markov_shielding(t, {line_circuit(5, 1, 2), line_circuit(6, 2, 2), line_circuit(6, 3, 1)}, 1.0, true);
    Tally fr("fawzi_renner", 1e-12);
    fawzi_renner(fr, 200, 99);
    CheckResult rfr = fr.result();
    t.require(rfr.passed, "Fawzi-Renner violated");
    Tally li("local_indistinguishability", 1e-10);
    local_indistinguishability(li);
    CheckResult rli = li.result();
    t.require(rli.passed, "local indistinguishability " + rli.detail);
    t.note("fr_violation", rfr.value);
    t.note("li_residual", rli.value);
    return t.result();
}

CheckResult criterion_repcode(const CheckContext &) {
    Tally t("repetition_code", 1e-10);
    encoding_identity(t, 3, 3);
    multiz_checks(t, 6, 10);
    RepcodeResult r = repcode_pipeline(cluster_circuit(2, 1, 7), 9, 0.05, 0.05, 7, 100000);
    t.note("tvd", r.tvd);
    t.note("bound", r.bound);
    t.bound("pipeline_tvd", r.tvd, r.bound + 3 * r.standard_error);
    return t.result();
}

// ---- invariant battery ----

template <class F>
NamedCheck check(std::string name, double tol, F body) {
    return {name, [name, tol, body](const CheckContext &ctx) {
                Tally t(name, tol);
                body(t, ctx);
                return t.result();
            }};
}

std::vector<NamedCheck> build_battery() {
    std::vector<NamedCheck> b;
    b.push_back(check("pauli.product_matches_matrices", 1e-12, [](Tally &t, const CheckContext &) {
        auto ps = all_paulis(2);
        for (const auto &p : ps) {
            for (const auto &q : ps) {
                Matrix lhs = (p * q).matrix().matrix();
                Matrix rhs = p.matrix().matrix() * q.matrix().matrix();
                t.metric((lhs - rhs).cwiseAbs().maxCoeff());
                Matrix comm = rhs - q.matrix().matrix() * p.matrix().matrix();
                t.require(p.commutes(q) == (comm.cwiseAbs().maxCoeff() < 1e-12), "commutation flag wrong");
            }
        }
    }));
    b.push_back(check("linalg.partial_trace_consistency", 1e-12, [](Tally &t, const CheckContext &) {
        std::mt19937_64 rng(1);
        DensityMatrix rho = random_density(3, rng);
        std::vector<int> k01{0, 1}, k0{0};
        Matrix two = partial_trace(rho.matrix(), 3, k01);
        t.metric((partial_trace(two, 2, k0) - partial_trace(rho.matrix(), 3, k0)).cwiseAbs().maxCoeff());
        t.metric(std::abs(two.trace().real() - 1));
    }));
    b.push_back(check("linalg.entropy_bounds", 1e-10, [](Tally &t, const CheckContext &) {
        std::mt19937_64 rng(2);
        for (int k = 0; k < 20; k++) {
            DensityMatrix rho = random_density(2, rng);
            double s = von_neumann_entropy(rho.matrix());
            t.require(s >= -1e-12 && s <= 2 * std::log(2.0) + 1e-12, "entropy out of [0, n ln 2]");
            DensityMatrix sigma = random_density(2, rng);
            Divergences d = divergences(rho, sigma);
            // Pinsker: D >= 2 T^2.
            t.metric(std::max(0.0, 2 * d.trace_distance * d.trace_distance - d.relative_entropy));
            t.require(d.fidelity <= 1 + 1e-12, "fidelity above 1");
        }
    }));
    b.push_back(check("linalg.channel_cptp", 1e-9, [](Tally &t, const CheckContext &) {
        CptpReport r = cptp_check(bit_flip_channel(0.2));
        t.require(r.is_cp && r.is_tp, "bit flip channel not CPTP");
        t.metric(r.trace_preservation_defect);
        Matrix bad = 1.1 * Superoperator::identity(1).matrix();
        t.require(!cptp_check(Superoperator(1, bad)).is_tp, "scaled identity reported trace preserving");
    }));
    b.push_back(check("circuit.adjoint_inverts", 1e-12, [](Tally &t, const CheckContext &) {
        for (std::uint64_t s = 0; s < 5; s++) {
            Circuit c = random_circuit(4, s, {4, true});
            Circuit both = c;
            both.append(c.adjoint());
            Matrix u = build_unitary(both).matrix();
            t.metric((u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
        }
    }));
    b.push_back(check("circuit.zsupport_within_lightcone", 0, [](Tally &t, const CheckContext &) {
        for (std::uint64_t s = 0; s < 10; s++) {
            CircuitSupports sup = supports(random_circuit(6, s, {3, true}));
            for (std::size_t i = 0; i < sup.z_support.size(); i++) {
                t.require(std::includes(sup.lightcone[i].begin(), sup.lightcone[i].end(), sup.z_support[i].begin(),
                                        sup.z_support[i].end()),
                          "S_i not inside L_i");
            }
        }
    }));
    b.push_back(check("circuit.zsupport_matches_dense", 1e-10, [](Tally &t, const CheckContext &) {
        for (std::uint64_t s = 0; s < 4; s++) {
            Circuit c = random_circuit(4, 40 + s, {3, true});
            CircuitSupports sup = supports(c);
            Matrix u = build_unitary(c).matrix();
            for (int i = 0; i < 4; i++) {
                Matrix zi = u * PauliString::single(4, i, 'Z').matrix().matrix() * u.adjoint();
                for (int q = 0; q < 4; q++) {
                    // q is outside the support iff zi commutes with X_q and Z_q.
                    double acts = 0;
                    for (char p : {'X', 'Z'}) {
                        Matrix pq = PauliString::single(4, q, p).matrix().matrix();
                        acts = std::max(acts, (zi * pq - pq * zi).cwiseAbs().maxCoeff());
                    }
                    bool in = std::binary_search(sup.z_support[i].begin(), sup.z_support[i].end(), q);
                    t.require(in == (acts > 1e-10), "z-support differs from dense commutator test");
                }
            }
        }
    }));
    b.push_back(check("circuit.text_round_trip", 0, [](Tally &t, const CheckContext &) {
        for (std::uint64_t s = 0; s < 5; s++) {
            Circuit c = random_circuit(5, s, {3, true});
            t.require(parse_circuit(format_circuit(c)) == c, "format/parse changed the circuit");
        }
    }));
    b.push_back(check("circuit.distribution_normalized", 1e-10, [](Tally &t, const CheckContext &) {
        auto p = output_distribution(cluster_circuit(3, 2, 7));
        double s = 0;
        for (double v : p) {
            s += v;
        }
        t.metric(std::abs(s - 1));
        t.require(sample(cluster_circuit(2, 2, 1), 5, 100) == sample(cluster_circuit(2, 2, 1), 5, 100),
                  "sampling not deterministic");
    }));
    b.push_back(check("hamiltonian.terms_commute", 1e-10, [](Tally &t, const CheckContext &) {
        ParentHamiltonian hp = build_parent(random_circuit(4, 3, {3, true}));
        for (int i = 0; i < 4; i++) {
            for (int j = i + 1; j < 4; j++) {
                Matrix a = hp.term(i).matrix(), b = hp.term(j).matrix();
                t.metric((a * b - b * a).cwiseAbs().maxCoeff());
            }
        }
    }));
    b.push_back(check("hamiltonian.affine_form", 1e-10, [](Tally &t, const CheckContext &) {
        // H = (n I - C (sum_i Z_i) C^dagger) / 2.
        Circuit c = random_circuit(4, 8, {3, true});
        ParentHamiltonian hp = build_parent(c);
        Matrix u = build_unitary(c).matrix();
        Matrix z = Matrix::Zero(16, 16);
        for (int i = 0; i < 4; i++) {
            z += PauliString::single(4, i, 'Z').matrix().matrix();
        }
        Matrix expect = 0.5 * (4.0 * Matrix::Identity(16, 16) - u * z * u.adjoint());
        t.metric((hp.dense().matrix() - expect).cwiseAbs().maxCoeff());
    }));
    b.push_back(check("hamiltonian.integer_spectrum", 1e-10, [](Tally &t, const CheckContext &) {
        ParentHamiltonian hp = build_parent(random_circuit(3, 9, {3, true}));
        Matrix sum = Matrix::Zero(8, 8);
        for (int k = 0; k <= 3; k++) {
            Matrix p = hp.eigenprojector(k).matrix();
            t.metric((hp.dense().matrix() * p - double(k) * p).cwiseAbs().maxCoeff());
            sum += p;
        }
        t.metric((sum - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff());
    }));
    b.push_back(check("hamiltonian.coloring_valid", 1.0, [](Tally &t, const CheckContext &) { coloring_checks(t, 10, 6); }));
    b.push_back(check("noise.rate_round_trip", 1e-14, [](Tally &t, const CheckContext &) {
        for (double p : {0.01, 0.1, 0.3, 0.49}) {
            t.metric(std::abs(beta_to_p(p_to_beta(p)) - p));
        }
    }));
    b.push_back(check("noise.flip_channels_compose", 1e-14, [](Tally &t, const CheckContext &) {
        Matrix lhs = bit_flip_channel(0.2).matrix() * bit_flip_channel(0.1).matrix();
        t.metric((lhs - bit_flip_channel(combined_rate(0.1, 0.2)).matrix()).cwiseAbs().maxCoeff());
    }));
    b.push_back(check("noise.gibbs_equivalence", 1e-10, [](Tally &t, const CheckContext &) {
        gibbs_equivalence(t, gibbs_instances(6), {0.7, 2.0});
    }));
    b.push_back(check("noise.sampler_matches_density_matrix", 24.32, [](Tally &t, const CheckContext &) {
        // chi-square statistic, 7 degrees of freedom, 0.999 quantile.
        Circuit c = cluster_circuit(3, 1, 7);
        GadgetedIqp lay{c, 3, {0, 1, 2}, {}};
        const std::size_t count = 20000;
        auto samples = sample_noisy_iqp(lay, {0.1, 0.2}, 5, count);
        DensityMatrix rho = noisy_output_state(c, combined_rate(0.1, 0.2));
        std::vector<double> counts(8, 0.0);
        for (const Bits &s : samples) {
            counts[bits_to_index(s)] += 1;
        }
        double chi = 0;
        for (int x = 0; x < 8; x++) {
            double e = rho.matrix()(x, x).real() * count;
            chi += (counts[x] - e) * (counts[x] - e) / e;
        }
        t.metric(chi);
    }));
    b.push_back(check("lindblad.fixed_point", 1e-9, [](Tally &t, const CheckContext &ctx) {
        for (const Circuit &c : gibbs_instances(6)) {
            if (c.num_qubits() > 3) {
                continue;
            }
            DaviesGenerator l = build_davies(build_parent(c), 1.0, ctx.convention());
            t.metric(trace_norm(l.superop().apply(l.gibbs().matrix())));
        }
    }));
    b.push_back(check("lindblad.detailed_balance", 1e-9, [](Tally &t, const CheckContext &ctx) {
        std::vector<Circuit> cs{Circuit(1), random_circuit(2, 4, {2, true}), random_circuit(3, 5, {2, true})};
        for (const Circuit &c : cs) {
            DaviesGenerator l = build_davies(build_parent(c), 1.0, ctx.convention());
            for (double s : {0.0, 0.5, 1.0}) {
                DetailedBalanceReport r = detailed_balance_check(l, s);
                t.metric(r.residual);
                t.metric(r.discriminant_hermiticity);
            }
        }
    }));
    b.push_back(check("lindblad.trace_preserving", 1e-10, [](Tally &t, const CheckContext &ctx) {
        DaviesGenerator l = build_davies(build_parent(random_circuit(3, 6, {2, true})), 1.0, ctx.convention());
        // Tr L[X] = 0 for every X: the vectorized identity is a left null vector.
        Vector id = vec(Matrix::Identity(8, 8));
        t.metric((id.adjoint() * l.superop().matrix()).cwiseAbs().maxCoeff());
        t.metric(l.superop().matrix().cwiseAbs().maxCoeff() > 0 ? 0 : 1);
    }));
    b.push_back(check("lindblad.single_qubit_gap", 1e-12, [](Tally &t, const CheckContext &ctx) {
        single_qubit_analytics(t, {0.0, 1.0, 3.0}, ctx);
    }));
    b.push_back(check("lindblad.gap_positive", 0, [](Tally &t, const CheckContext &ctx) {
        DaviesGenerator l = build_davies(build_parent(cluster_circuit(2, 1, 3)), 1.0, ctx.convention());
        Discriminant k = discriminant_gap(l, 0.5);
        t.require(k.gap > 1e-6, "zero spectral gap");
        t.require(k.eigenvalues.minCoeff() > -1e-9, "discriminant has a positive eigenvalue");
    }));
    b.push_back(check("lindblad.convex_decomposition", 1e-8, [](Tally &t, const CheckContext &ctx) {
        convex_checks(t, circuits_with_ell(3, {2, 3}, 3), ctx);
    }));
    b.push_back(check("lindblad.entropy_production", 1e-9, [](Tally &t, const CheckContext &ctx) {
        mlsi_checks(t, two_qubit_circuits(), {1.0}, 20, ctx);
    }));
    b.push_back(check("lindblad.oft_exact", 1e-10, [](Tally &t, const CheckContext &ctx) {
        oft_checks(t, {random_circuit(2, 70, {2, true})}, ctx);
    }));
    b.push_back(check("lindblad.oft_endpoint_grid_inexact", 0, [](Tally &t, const CheckContext &ctx) {
        DaviesGenerator l = build_davies(build_parent(random_circuit(3, 3, {3, true})), 1.0, ctx.convention());
        double worst = 0;
        for (std::size_t a = 0; a < l.jumps().size(); a += 5) {
            worst = std::max(worst, oft_check(l, a, OftGrid::kEndpointDuplicated));
        }
        t.require(worst > 1e-3, "endpoint-duplicated grid unexpectedly exact");
    }));
    b.push_back(check("lindblad.boltzmann_filter", 1.0, [](Tally &t, const CheckContext &) {
        boltzmann_checks(t, 16, 1.0, {1e-4, 1e-6});
    }));
    b.push_back(check("distill.exact_rate_examples", 1e-12, [](Tally &t, const CheckContext &) {
        t.metric(std::abs(exact_failure_rate(3, 2, 0.1) - 0.028));
        t.metric(std::abs(exact_failure_rate(3, 3, 0.25) - 0.06561279296875));
        t.metric(exact_failure_rate(5, 4, 0.0));
    }));
    b.push_back(check("distill.enumeration_oracle", 1e-12, [](Tally &t, const CheckContext &) {
        for (auto [bb, d] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{5, 2}}) {
            for (double p : {0.1, 0.3}) {
                t.metric(std::abs(enumerated_failure(build_gadget(bb, d), p) - exact_failure_rate(bb, d, p)));
            }
        }
    }));
    b.push_back(check("distill.encode_matches_statevector", 0, [](Tally &t, const CheckContext &) {
        BTreeGadget g = build_gadget(2, 3);
        Circuit c = g.circuit();
        for (std::uint64_t s = 0; s < 128; s += 9) {
            Vector psi = Vector::Zero(128);
            psi(s) = 1;
            Vector out = simulate(c, psi);
            std::uint64_t expect = bits_to_index(g.encode(index_to_bits(s, 7)));
            t.require(std::abs(out(expect)) > 1 - 1e-12, "encode disagrees with the gadget unitary");
        }
    }));
    b.push_back(check("distill.monte_carlo", 4.0, [](Tally &t, const CheckContext &) {
        mc_checks(t, {3}, {2, 3}, {0.1, 0.25}, 50000);
    }));
    b.push_back(check("distill.recursion_inequality", 0, [](Tally &t, const CheckContext &) {
        chain_checks(t, {3, 5, 7}, {0.05, 0.1, 0.25, 0.4}, 6);
        for (int bb : {11, 21, 31}) {
            for (double delta : {0.2, 0.5}) {
                t.require(exact_failure_rate(bb, 2, (1 - delta) / 2) <= std::pow(1 - delta * delta, bb / 2.0),
                          "base bound violated");
            }
        }
    }));
    b.push_back(check("distill.gadget_geometry", 1.0, [](Tally &t, const CheckContext &) {
        geometry_checks(t, {3, 5}, {2, 3});
    }));
    b.push_back(check("distill.ft_geometry", 0, [](Tally &t, const CheckContext &) {
        t.require(ft_geometry(assemble_ft_circuit(cluster_circuit(2, 2, 7), 3, 3)).within_bounds,
                  "assembled circuit exceeds base + gadget geometry");
    }));
    b.push_back(check("repcode.program_round_trip", 1e-10, [](Tally &t, const CheckContext &) {
        Circuit c = cluster_circuit(2, 2, 7);
        IqpProgram p = iqp_to_program(c);
        for (bool decompose : {false, true}) {
            auto a = output_distribution(c), bb = output_distribution(program_to_circuit(p, decompose));
            for (std::size_t x = 0; x < a.size(); x++) {
                t.metric(std::abs(a[x] - bb[x]));
            }
        }
    }));
    b.push_back(check("repcode.encoding_identity", 1e-12, [](Tally &t, const CheckContext &) {
        encoding_identity(t, 2, 3);
    }));
    b.push_back(check("repcode.multiz_decomposition", 1e-10, [](Tally &t, const CheckContext &) {
        multiz_checks(t, 5, 3);
    }));
    b.push_back(check("repcode.chernoff_bound", 0, [](Tally &t, const CheckContext &) {
        for (double q : {0.05, 0.26}) {
            for (int r = 3; r <= 21; r += 2) {
                t.require(repetition_failure(r, q) <= std::pow(4 * q * (1 - q), r / 2.0), "Chernoff bound violated");
            }
        }
    }));
    b.push_back(check("markov.strong_subadditivity", 1e-9, [](Tally &t, const CheckContext &) {
        std::mt19937_64 rng(5);
        for (int k = 0; k < 30; k++) {
            t.metric(std::max(0.0, -cmi(random_density(3, rng), {{0}, {1}, {2}, {}})));
        }
    }));
    b.push_back(check("markov.hammersley_clifford", 1e-8, [](Tally &t, const CheckContext &) {
        markov_shielding(t, {line_circuit(4, 11, 2), random_circuit(4, 12, {2, true})}, 0.8, false);
    }));
    b.push_back(check("markov.fawzi_renner", 1e-12, [](Tally &t, const CheckContext &) { fawzi_renner(t, 40, 3); }));
    b.push_back(check("markov.local_indistinguishability", 1e-10,
                      [](Tally &t, const CheckContext &) { local_indistinguishability(t); }));
    return b;
}

}  // namespace

const std::vector<NamedCheck> &acceptance_criteria() {
    static const std::vector<NamedCheck> criteria{
        {"gibbs_equals_noisy_circuit", criterion_gibbs},
        {"davies_correctness", criterion_davies},
        {"single_qubit_gap", criterion_single_qubit},
        {"convex_decomposition", criterion_convex},
        {"mlsi_entropy_production", criterion_mlsi},
        {"distillation_rates", criterion_distill_rates},
        {"gadget_geometry", criterion_geometry},
        {"ft_pipeline", criterion_ft},
        {"interaction_coloring", criterion_coloring},
        {"oft_and_boltzmann_filter", criterion_matrix_ingredients},
        {"markov_structure", criterion_markov},
        {"repetition_code", criterion_repcode},
    };
    return criteria;
}

const std::vector<NamedCheck> &invariant_battery() {
    static const std::vector<NamedCheck> battery = build_battery();
    return battery;
}

CheckResult run_check(const NamedCheck &check, const CheckContext &ctx) {
    auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = check.run(ctx);
    } catch (const std::exception &e) {
        r.name = check.name;
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace gibbslab
