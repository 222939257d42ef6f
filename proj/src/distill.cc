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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gibbslab/rng.h"

namespace gibbslab {

namespace {

void require_odd(int arity) {
    if (arity % 2 == 0) {
        throw DomainError("majority decoding needs an odd arity; even arity has ties");
    }
}

}  // namespace

BTreeGadget BTreeGadget::build(int arity, int levels) {
    if (arity < 2 || levels < 2) {
        throw DomainError("gadget needs arity >= 2 and at least 2 levels");
    }
    BTreeGadget g;
    g.arity_ = arity;
    g.levels_ = levels;
    std::size_t total = 0, width = 1;
    for (int l = 0; l < levels; l++) {
        g.level_start_.push_back(static_cast<int>(total));
        total += width;
        if (total > kMaxNodes) {
            throw CapacityError("gadget has more than " + std::to_string(kMaxNodes) + " nodes");
        }
        width *= static_cast<std::size_t>(arity);
    }
    g.level_start_.push_back(static_cast<int>(total));
    g.size_ = static_cast<int>(total);
    for (int l = levels - 2; l >= 0; l--) {
        for (int t = 0; t < arity; t++) {
            for (int p = g.level_start_[l]; p < g.level_start_[l + 1]; p++) {
                g.schedule_.emplace_back(p, arity * p + 1 + t);
            }
        }
    }
    return g;
}

int BTreeGadget::parent(int u) const {
    if (u < 0 || u >= size_) {
        throw DomainError("node out of range");
    }
    return u == 0 ? -1 : (u - 1) / arity_;
}

std::vector<int> BTreeGadget::children(int u) const {
    if (is_leaf(u)) {
        return {};
    }
    std::vector<int> out;
    for (int t = 0; t < arity_; t++) {
        out.push_back(arity_ * u + 1 + t);
    }
    return out;
}

int BTreeGadget::level(int u) const {
    if (u < 0 || u >= size_) {
        throw DomainError("node out of range");
    }
    int l = 0;
    while (u >= level_start_[l + 1]) {
        l++;
    }
    return l;
}

Circuit BTreeGadget::circuit() const {
    Circuit c(size_);
    std::size_t idx = 0;
    for (int l = levels_ - 2; l >= 0; l--) {
        int parents = level_start_[l + 1] - level_start_[l];
        for (int t = 0; t < arity_; t++) {
            Layer layer;
            for (int k = 0; k < parents; k++, idx++) {
                layer.push_back(Gate::cnot(schedule_[idx].first, schedule_[idx].second));
            }
            c.append_layer(std::move(layer));
        }
    }
    return c;
}

Bits BTreeGadget::encode(const Bits &s) const {
    if (static_cast<int>(s.size()) != size_) {
        throw DomainError("encode: expected " + std::to_string(size_) + " bits");
    }
    Bits b = s;
    for (auto [p, c] : schedule_) {
        b[c] ^= b[p];
    }
    return b;
}

int BTreeGadget::decode(const Bits &measured) const {
    require_odd(arity_);
    if (static_cast<int>(measured.size()) != size_ - 1) {
        throw DomainError("decode: expected " + std::to_string(size_ - 1) + " bits");
    }
    std::vector<std::uint8_t> est(size_, 0);
    for (int u = level_start_[levels_ - 1]; u < size_; u++) {
        est[u] = measured[u - 1];
    }
    for (int l = levels_ - 2; l >= 0; l--) {
        for (int p = level_start_[l]; p < level_start_[l + 1]; p++) {
            int ones = 0;
            for (int t = 0; t < arity_; t++) {
                ones += est[arity_ * p + 1 + t];
            }
            std::uint8_t guess = 2 * ones > arity_;
            if (p == 0) {
                return guess;
            }
            est[p] = guess ^ measured[p - 1];
        }
    }
    return 0;
}

double majority_failure(int arity, double x) {
    require_odd(arity);
    double total = 0;
    double binom = 1;
    for (int j = 0; j <= arity; j++) {
        if (2 * j > arity) {
            total += binom * std::pow(x, j) * std::pow(1 - x, arity - j);
        }
        binom = binom * (arity - j) / (j + 1);
    }
    return total;
}

double exact_failure_rate(int arity, int levels, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("flip probability must lie in [0, 1]");
    }
    if (levels < 2) {
        throw DomainError("gadget needs at least 2 levels");
    }
    double x = p;
    for (int stage = 0; stage < levels - 1; stage++) {
        x = majority_failure(arity, x);
    }
    return x;
}

McEstimate mc_failure_rate(int arity, int levels, double p, std::size_t trials, std::uint64_t seed) {
    require_odd(arity);
    if (trials == 0) {
        throw DomainError("need at least one trial");
    }
    BTreeGadget g = BTreeGadget::build(arity, levels);
    McEstimate est;
    est.trials = trials;
    Bits s(g.size());
    Bits measured(g.size() - 1);
    for (std::size_t t = 0; t < trials; t++) {
        std::mt19937_64 rng = make_rng(seed, t);
        for (auto &b : s) {
            b = bernoulli(rng, p);
        }
        Bits e = g.encode(s);
        std::copy(e.begin() + 1, e.end(), measured.begin());
        if (g.decode(measured) != s[0]) {
            est.failures++;
        }
    }
    est.rate = double(est.failures) / double(trials);
    est.standard_error = std::sqrt(est.rate * (1 - est.rate) / double(trials));
    return est;
}

FTCircuit::FTCircuit(Circuit base, BTreeGadget gadget) : base_(std::move(base)), gadget_(std::move(gadget)) {
    std::string why;
    if (!is_iqp_shaped(base_, &why)) {
        throw DomainError("base circuit is not IQP-shaped: " + why);
    }
}

Circuit FTCircuit::render() const {
    const int k = gadget_.size();
    Circuit out(total_bits());
    Circuit tree = gadget_.circuit();
    for (const Layer &l : tree.layers()) {
        Layer wide;
        for (int j = 0; j < num_inputs(); j++) {
            for (const Gate &g : l) {
                wide.push_back(Gate::cnot(j * k + g.qubits[0], j * k + g.qubits[1]));
            }
        }
        out.append_layer(std::move(wide));
    }
    for (const Layer &l : base_.layers()) {
        Layer wide;
        for (Gate g : l) {
            for (int &q : g.qubits) {
                q *= k;
            }
            wide.push_back(std::move(g));
        }
        out.append_layer(std::move(wide));
    }
    return out;
}

GadgetedIqp FTCircuit::layout() const {
    GadgetedIqp lay;
    lay.core = base_;
    lay.total_bits = total_bits();
    const int k = gadget_.size();
    for (int j = 0; j < num_inputs(); j++) {
        lay.root_bits.push_back(root_bit(j));
        for (auto [p, c] : gadget_.cnot_schedule()) {
            lay.cnots.emplace_back(j * k + p, j * k + c);
        }
    }
    return lay;
}

std::uint64_t FTCircuit::correct(const Bits &bits) const {
    const int k = gadget_.size();
    const int n = num_inputs();
    std::uint64_t x = 0;
    Bits measured(k - 1);
    for (int j = 0; j < n; j++) {
        std::copy(bits.begin() + j * k + 1, bits.begin() + (j + 1) * k, measured.begin());
        std::uint64_t bit = bits[j * k] ^ gadget_.decode(measured);
        x = (x << 1) | bit;
    }
    return x;
}

FTCircuit assemble_ft_circuit(const Circuit &base, int arity, int levels) {
    return FTCircuit(base, BTreeGadget::build(arity, levels));
}

FTGeometry ft_geometry(const FTCircuit &ft) {
    FTGeometry g;
    CircuitSupports full = supports(ft.render());
    CircuitSupports base = supports(ft.base());
    CircuitSupports gadget = supports(ft.gadget().circuit());
    g.ell = full.ell;
    g.locality = full.locality;
    g.base_ell = base.ell;
    g.base_locality = base.locality;
    g.gadget_ell = gadget.ell;
    g.gadget_locality = gadget.locality;
    g.within_bounds = g.ell <= g.base_ell + g.gadget_ell && g.locality <= g.base_locality + ft.gadget().levels();
    return g;
}

FTPipelineResult ft_pipeline(const FTCircuit &ft, double beta, std::uint64_t seed, std::size_t count,
                             double p_out) {
    FTPipelineResult r;
    r.p = beta_to_p(beta);
    auto samples = sample_noisy_iqp(ft.layout(), NoiseSpec{r.p, p_out}, seed, count);
    r.corrected.reserve(count);
    for (const Bits &b : samples) {
        r.corrected.push_back(ft.correct(b));
    }
    r.ideal = output_distribution(ft.base());
    r.empirical = empirical_distribution(r.corrected, r.ideal.size());
    r.tvd = total_variation(r.empirical, r.ideal);
    r.standard_error = tvd_standard_error(r.ideal, count);
    r.failure_rate = exact_failure_rate(ft.gadget().arity(), ft.gadget().levels(), r.p);
    r.failure_bound = ft.num_inputs() * r.failure_rate;
    return r;
}

std::vector<SweepRow> threshold_sweep(const std::vector<int> &arities, const std::vector<int> &levels,
                                      const std::vector<double> &ps, std::size_t trials, std::uint64_t seed) {
    std::vector<SweepRow> rows;
    std::uint64_t stream = 0;
    for (int b : arities) {
        for (int d : levels) {
            for (double p : ps) {
                rows.push_back({b, d, p, exact_failure_rate(b, d, p), mc_failure_rate(b, d, p, trials,
                                                                                       stream_seed(seed, stream++))});
            }
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << "B,D,p,exact_rate,mc_rate,stderr,trials\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,%.10g,%.10g,%zu\n", r.arity, r.levels, r.p, r.exact_rate,
                      r.mc.rate, r.mc.standard_error, r.mc.trials);
        out << buf;
    }
    return out.str();
}

}  // namespace gibbslab
