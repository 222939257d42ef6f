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
// gibbslab: command-line front end for the experiments and the verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gibbslab/checks.h"
#include "gibbslab/circuit.h"
#include "gibbslab/distill.h"
#include "gibbslab/hamiltonian.h"
#include "gibbslab/lindblad.h"
#include "gibbslab/markov.h"
#include "gibbslab/noise.h"
#include "gibbslab/repcode.h"
#include "gibbslab/version.h"

namespace {

using json = nlohmann::ordered_json;
using namespace gibbslab;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

// Thrown for failed verification so the exit status is 1 without an error message.
struct ChecksFailed {};

struct Source {
    std::string circuit_path;
    std::string grid;
    std::uint64_t b_seed = 0;
};

struct Options {
    Source source;
    double beta = 1.0;
    double p_in = 0.1;
    double p_out = 0.0;
    std::string gadget = "3,3";
    std::vector<std::string> gadgets{"3,2", "3,3", "5,2", "5,3"};
    std::vector<double> ps{0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    int rep = 3;
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
    std::size_t trials = 100000;
    std::string out;
    std::string format = "json";
    double t_max = 20.0;
    int points = 50;
    std::vector<int> part_a, part_b, part_c;
    bool acceptance = false;
    int criterion = 0;
    std::string fault = "none";
};

std::pair<int, int> parse_pair(const std::string &text, char sep, const char *what) {
    std::istringstream in(text);
    int a = 0, b = 0;
    char c = 0;
    if (!(in >> a >> c >> b) || c != sep || !in.eof()) {
        throw DomainError(std::string("malformed ") + what + ": '" + text + "'");
    }
    return {a, b};
}

struct LoadedCircuit {
    Circuit circuit;
    std::optional<Lattice> lattice;
};

LoadedCircuit load_circuit(const Source &s) {
    if (!s.circuit_path.empty() && !s.grid.empty()) {
        throw DomainError("give either --circuit or --grid, not both");
    }
    if (!s.grid.empty()) {
        auto [w, h] = parse_pair(s.grid, 'x', "grid (expected WxH)");
        if (w < 1 || h < 1) {
            throw DomainError("grid dimensions must be positive");
        }
        return {build_iqp_cluster(w, h, random_t_powers(w * h, s.b_seed)), Lattice{w, h}};
    }
    if (s.circuit_path.empty()) {
        throw DomainError("a circuit is required: --circuit PATH or --grid WxH --b-seed S");
    }
    std::ifstream in(s.circuit_path);
    if (!in) {
        throw DomainError("cannot read circuit file '" + s.circuit_path + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    Circuit c = parse_circuit(text.str());
    return {c, Lattice{c.num_qubits(), 1}};
}

json source_json(const Source &s) {
    if (!s.grid.empty()) {
        return {{"grid", s.grid}, {"b_seed", s.b_seed}};
    }
    return {{"circuit", s.circuit_path}};
}

json geometry_json(const CircuitSupports &s) {
    return {{"ell", s.ell}, {"ell_reverse", s.ell_reverse}, {"locality", s.locality}};
}

void add_source(CLI::App *sub, Options &o) {
    sub->add_option("--circuit", o.source.circuit_path, "Circuit file");
    sub->add_option("--grid", o.source.grid, "Cluster IQP grid WxH");
    sub->add_option("--b-seed", o.source.b_seed, "Seed for the T powers of the cluster IQP");
}

void add_beta(CLI::App *sub, Options &o) {
    sub->add_option("--beta", o.beta, "Inverse temperature")->check(CLI::NonNegativeNumber);
}

// ---- subcommands ----

json run_gibbs_check(const Options &o) {
    LoadedCircuit lc = load_circuit(o.source);
    ParentHamiltonian hp = build_parent(lc.circuit);
    double residual = gibbs_equivalence_check(lc.circuit, o.beta);
    return {{"num_qubits", lc.circuit.num_qubits()},
            {"p", beta_to_p(o.beta)},
            {"partition_function", gibbs_state(hp, o.beta).partition_function},
            {"geometry", geometry_json(hp.supports())},
            {"residual", residual},
            {"tolerance", 1e-10},
            {"passed", residual <= 1e-10}};
}

json run_davies(const Options &o) {
    LoadedCircuit lc = load_circuit(o.source);
    DaviesGenerator l = build_davies(build_parent(lc.circuit), o.beta);
    DetailedBalanceReport db = detailed_balance_check(l, 0.5);
    Discriminant k = discriminant_gap(l, 0.5);
    Eigen::ComplexEigenSolver<Matrix> es(l.superop().matrix(), false);
    return {{"num_qubits", l.num_qubits()},
            {"jumps", l.jumps().size()},
            {"fixed_point_residual", trace_norm(l.superop().apply(l.gibbs().matrix()))},
            {"detailed_balance_residual", db.residual},
            {"discriminant_hermiticity", db.discriminant_hermiticity},
            {"gap", k.gap},
            {"max_imag_eigenvalue", es.eigenvalues().imag().cwiseAbs().maxCoeff()},
            {"geometry", geometry_json(l.hamiltonian().supports())}};
}

json run_mixing(const Options &o, std::string *csv) {
    if (o.points < 2 || !(o.t_max > 0)) {
        throw DomainError("need --points >= 2 and --t-max > 0");
    }
    LoadedCircuit lc = load_circuit(o.source);
    DaviesGenerator l = build_davies(build_parent(lc.circuit), o.beta);
    std::vector<double> grid;
    for (int k = 0; k < o.points; k++) {
        grid.push_back(o.t_max * k / (o.points - 1));
    }
    MixingDiagnostics m = mixing_diagnostics(l, grid);
    int ell = l.hamiltonian().supports().ell;
    std::ostringstream table;
    table << "t";
    for (std::size_t c = 0; c < m.entropy_curves.size(); c++) {
        table << ",probe" << c;
    }
    table << "\n";
    char buf[64];
    for (std::size_t k = 0; k < grid.size(); k++) {
        std::snprintf(buf, sizeof buf, "%.10g", grid[k]);
        table << buf;
        for (const auto &curve : m.entropy_curves) {
            std::snprintf(buf, sizeof buf, ",%.10g", curve[k]);
            table << buf;
        }
        table << "\n";
    }
    *csv = table.str();
    json halving = m.halving_time ? json(*m.halving_time) : json(nullptr);
    return {{"num_qubits", l.num_qubits()},
            {"halving_time", halving},
            {"gap", discriminant_gap(l, 0.5).gap},
            {"fitted_rate", m.fitted_rate},
            {"mlsi_lower_bound", std::pow(4.0, 1 - ell) / (16 * (1 + std::exp(o.beta)))},
            {"curves_monotone", m.curves_monotone},
            {"t_grid", m.t_grid},
            {"entropy_curves", m.entropy_curves}};
}

json run_convex(const Options &o) {
    LoadedCircuit lc = load_circuit(o.source);
    DaviesGenerator l = build_davies(build_parent(lc.circuit), o.beta);
    ConvexDecomposition cd = convex_decomposition(l);
    return {{"num_qubits", l.num_qubits()},
            {"ell", l.hamiltonian().supports().ell},
            {"q", cd.q},
            {"identity_residual", cd.identity_residual},
            {"rest_fixed_point_residual", cd.rest_fixed_point_residual},
            {"rest_min_choi_eigenvalue", cd.rest_channel.min_choi_eigenvalue},
            {"rest_trace_defect", cd.rest_channel.trace_preservation_defect},
            {"rest_cptp", cd.rest_channel.is_cp && cd.rest_channel.is_tp}};
}

json run_distill_sweep(const Options &o, std::string *csv) {
    std::vector<SweepRow> rows;
    std::uint64_t stream = 0;
    for (const std::string &g : o.gadgets) {
        auto [b, d] = parse_pair(g, ',', "gadget (expected B,D)");
        auto part = threshold_sweep({b}, {d}, o.ps, o.trials, o.seed + stream++);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    *csv = sweep_csv(rows);
    json out = json::array();
    for (const SweepRow &r : rows) {
        out.push_back({{"B", r.arity},
                       {"D", r.levels},
                       {"p", r.p},
                       {"exact_rate", r.exact_rate},
                       {"mc_rate", r.mc.rate},
                       {"stderr", r.mc.standard_error},
                       {"trials", r.mc.trials}});
    }
    return {{"rows", out}};
}

json run_ft_pipeline(const Options &o) {
    LoadedCircuit lc = load_circuit(o.source);
    auto [b, d] = parse_pair(o.gadget, ',', "gadget (expected B,D)");
    FTCircuit ft = assemble_ft_circuit(lc.circuit, b, d);
    FTPipelineResult r = ft_pipeline(ft, o.beta, o.seed, o.samples, o.p_out);
    FTGeometry geo = ft_geometry(ft);
    return {{"num_inputs", ft.num_inputs()},
            {"total_bits", ft.total_bits()},
            {"p", r.p},
            {"tvd", r.tvd},
            {"standard_error", r.standard_error},
            {"failure_rate", r.failure_rate},
            {"failure_bound", r.failure_bound},
            {"within_bound", r.tvd <= r.failure_bound + 3 * r.standard_error},
            {"geometry",
             {{"ell", geo.ell},
              {"locality", geo.locality},
              {"base_ell", geo.base_ell},
              {"base_locality", geo.base_locality},
              {"gadget_ell", geo.gadget_ell},
              {"gadget_locality", geo.gadget_locality},
              {"within_bounds", geo.within_bounds}}},
            {"empirical", r.empirical},
            {"ideal", r.ideal}};
}

json run_repcode(const Options &o, std::string *csv) {
    LoadedCircuit lc = load_circuit(o.source);
    RepcodeResult r = repcode_pipeline(lc.circuit, o.rep, o.p_in, o.p_out, o.seed, o.samples);
    *csv = repcode_csv({r});
    return {{"n", r.n},
            {"r", r.r},
            {"q", r.q},
            {"bound", r.bound},
            {"tvd", r.tvd},
            {"standard_error", r.standard_error},
            {"within_bound", r.tvd <= r.bound + 3 * r.standard_error},
            {"encoded_depth", r.encoded_depth},
            {"empirical", r.empirical},
            {"ideal", r.ideal}};
}

json run_markov(const Options &o) {
    LoadedCircuit lc = load_circuit(o.source);
    ParentHamiltonian hp = build_parent(lc.circuit);
    Tripartition t{o.part_a, o.part_b, o.part_c, lc.lattice};
    for (auto *part : {&t.a, &t.b, &t.c}) {
        std::sort(part->begin(), part->end());
    }
    t.validate(hp.num_qubits());
    DensityMatrix rho = gibbs_state(hp, o.beta).rho;
    LocalIndistinguishability li = local_indistinguishability_check(hp, t, o.beta);
    return {{"A", t.a},
            {"B", t.b},
            {"C", t.c},
            {"shielding", is_shielding(hp, t)},
            {"cmi", cmi(rho, t)},
            {"petz_residual", petz_residual(rho, t)},
            {"li_residual", li.residual},
            {"decoupling_residual", li.decoupling_residual},
            {"distance", li.distance},
            {"depth", li.depth},
            {"separated", li.separated}};
}

json run_verify(const Options &o) {
    CheckContext ctx;
    if (o.fault == "weight-sign") {
        ctx.fault = Fault::kWeightSign;
    } else if (o.fault != "none") {
        throw DomainError("unknown fault '" + o.fault + "'");
    }
    std::vector<const NamedCheck *> selected;
    if (o.criterion != 0) {
        const auto &all = acceptance_criteria();
        if (o.criterion < 1 || o.criterion > static_cast<int>(all.size())) {
            throw DomainError("criterion must be between 1 and " + std::to_string(all.size()));
        }
        selected.push_back(&all[o.criterion - 1]);
    } else {
        for (const auto &c : o.acceptance ? acceptance_criteria() : invariant_battery()) {
            selected.push_back(&c);
        }
    }
    json checks = json::array();
    int failed = 0;
    for (const NamedCheck *c : selected) {
        CheckResult r = run_check(*c, ctx);
        failed += !r.passed;
        std::fprintf(stderr, "%s %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"value", r.value},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    return {{"checks", checks}, {"passed", static_cast<int>(selected.size()) - failed}, {"failed", failed}};
}

// Flattens the scalar fields of a result into key,value lines.
std::string scalar_csv(const json &result) {
    std::string out = "key,value\n";
    for (const auto &[k, v] : result.items()) {
        if (v.is_primitive()) {
            out += k + "," + v.dump() + "\n";
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"gibbslab: parent Hamiltonians, Davies generators and noisy IQP sampling"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "TOML or INI file with option defaults");
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_option("--out", o.out, "Write the result here instead of standard output");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", o.seed, "Random seed");

    auto *gibbs = app.add_subcommand("gibbs-check", "Compare the Gibbs state with the noisy circuit output");
    add_source(gibbs, o);
    add_beta(gibbs, o);

    auto *davies = app.add_subcommand("davies", "Build the Davies generator and report its invariants");
    add_source(davies, o);
    add_beta(davies, o);

    auto *mixing = app.add_subcommand("mixing", "Trace-norm contraction and relative-entropy decay");
    add_source(mixing, o);
    add_beta(mixing, o);
    mixing->add_option("--t-max", o.t_max, "Last time on the grid");
    mixing->add_option("--points", o.points, "Number of grid points");

    auto *convex = app.add_subcommand("convex", "Convex decomposition of the rotated generator");
    add_source(convex, o);
    add_beta(convex, o);

    auto *sweep = app.add_subcommand("distill-sweep", "Exact and Monte Carlo gadget failure rates");
    sweep->add_option("--gadget", o.gadgets, "Gadget B,D (repeatable)");
    sweep->add_option("--p", o.ps, "Flip probabilities")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);

    auto *ft = app.add_subcommand("ft-pipeline", "Sample a gadgeted IQP circuit under input noise and decode");
    add_source(ft, o);
    add_beta(ft, o);
    ft->add_option("--gadget", o.gadget, "Gadget B,D");
    ft->add_option("--p-out", o.p_out, "Output flip probability")->check(CLI::Range(0.0, 0.5));
    ft->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);

    auto *rep = app.add_subcommand("repcode", "Repetition-encoded IQP sampling under input and output noise");
    add_source(rep, o);
    rep->add_option("--rep", o.rep, "Replication factor r (odd)");
    rep->add_option("--p-in", o.p_in, "Input flip probability")->check(CLI::Range(0.0, 0.5));
    rep->add_option("--p-out", o.p_out, "Output flip probability")->check(CLI::Range(0.0, 0.5));
    rep->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);

    auto *markov = app.add_subcommand("markov", "CMI, shielding, Petz recovery and local indistinguishability");
    add_source(markov, o);
    add_beta(markov, o);
    markov->add_option("--a", o.part_a, "Qubits of A")->delimiter(',')->required();
    markov->add_option("--b", o.part_b, "Qubits of B")->delimiter(',');
    markov->add_option("--c", o.part_c, "Qubits of C")->delimiter(',')->required();

    auto *verify = app.add_subcommand("verify", "Run the invariant battery or the acceptance criteria");
    verify->add_flag("--acceptance", o.acceptance, "Run all acceptance criteria instead of the battery");
    verify->add_option("--criterion", o.criterion, "Run one acceptance criterion (1-12)");
    verify->add_option("--inject-fault", o.fault, "Deliberate defect: none or weight-sign");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    CLI::App *cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    json config;
    try {
        std::string csv;
        json result;
        if (name == "gibbs-check") {
            config = {{"source", source_json(o.source)}, {"beta", o.beta}};
            result = run_gibbs_check(o);
        } else if (name == "davies") {
            config = {{"source", source_json(o.source)}, {"beta", o.beta}};
            result = run_davies(o);
        } else if (name == "mixing") {
            config = {{"source", source_json(o.source)}, {"beta", o.beta}, {"t_max", o.t_max}, {"points", o.points}};
            result = run_mixing(o, &csv);
        } else if (name == "convex") {
            config = {{"source", source_json(o.source)}, {"beta", o.beta}};
            result = run_convex(o);
        } else if (name == "distill-sweep") {
            config = {{"gadgets", o.gadgets}, {"p", o.ps}, {"trials", o.trials}, {"seed", o.seed}};
            result = run_distill_sweep(o, &csv);
        } else if (name == "ft-pipeline") {
            config = {{"source", source_json(o.source)}, {"beta", o.beta},     {"gadget", o.gadget},
                      {"p_out", o.p_out},                {"seed", o.seed},     {"samples", o.samples}};
            result = run_ft_pipeline(o);
        } else if (name == "repcode") {
            config = {{"source", source_json(o.source)}, {"rep", o.rep},   {"p_in", o.p_in},
                      {"p_out", o.p_out},                {"seed", o.seed}, {"samples", o.samples}};
            result = run_repcode(o, &csv);
        } else if (name == "markov") {
            config = {{"source", source_json(o.source)}, {"beta", o.beta}};
            result = run_markov(o);
        } else {
            config = {{"acceptance", o.acceptance}, {"criterion", o.criterion}, {"inject_fault", o.fault}};
            result = run_verify(o);
        }

        std::string text;
        if (o.format == "csv") {
            text = csv.empty() ? scalar_csv(result) : csv;
        } else {
            json doc{{"command", name}, {"version", kVersion}, {"config", config}, {"result", result}};
            text = doc.dump(2) + "\n";
        }
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out);
            if (!f) {
                throw DomainError("cannot write '" + o.out + "'");
            }
            f << text;
        }
        if (name == "verify" && result["failed"].get<int>() > 0) {
            return kExitFailure;
        }
    } catch (const ParseError &e) {
        std::cerr << "gibbslab: circuit parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError &e) {
        std::cerr << "gibbslab: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CapacityError &e) {
        std::cerr << "gibbslab: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
