// Copyright 2026 The somdms Authors
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

#include "somdms/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "somdms/circuitfile.hpp"
#include "somdms/correlations.hpp"
#include "somdms/figures.hpp"
#include "somdms/optics.hpp"
#include "somdms/profile.hpp"
#include "somdms/tomography.hpp"

namespace somdms::cli {

namespace {

using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << content;
    if (!f) throw IoError("write failed for '" + path + "'");
}

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

json matrix_json(const ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json rr = json::array();
        json ii = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"re", re}, {"im", im}};
}

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedVariable);
    if (env == nullptr || *env == '\0') return 1;
    std::uint64_t v = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string(kSeedVariable) + " is not an unsigned integer: '" + s + "'");
    }
    return v;
}

struct StateOptions {
    std::string family;
    std::string circuit;
    double p = 0.5;
    double m = 0.5;
    double eps = 0.0;
    CLI::Option* family_opt = nullptr;
    CLI::Option* circuit_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
};

void add_state_options(CLI::App* cmd, StateOptions& s) {
    s.family_opt = cmd->add_option("--family", s.family, "State family: rank2, rank3 or mdms");
    s.circuit_opt = cmd->add_option("--circuit", s.circuit, "Circuit file whose detected state is analyzed");
    s.p_opt = cmd->add_option("--p", s.p, "Bell weight p (rank2, mdms)");
    s.m_opt = cmd->add_option("--m", s.m, "Product-state split m (rank3, mdms)");
    s.eps_opt = cmd->add_option("--eps", s.eps, "Mixing weight epsilon");
    s.family_opt->excludes(s.circuit_opt);
}

DensityMatrix4 resolve_state(const StateOptions& s, json& params) {
    const bool by_family = s.family_opt->count() > 0;
    const bool by_circuit = s.circuit_opt->count() > 0;
    if (by_family == by_circuit) throw std::invalid_argument("give exactly one of --family or --circuit");
    if (by_circuit) {
        if (s.p_opt->count() || s.m_opt->count() || s.eps_opt->count()) {
            throw std::invalid_argument("--p, --m and --eps do not apply to --circuit");
        }
        params["circuit"] = s.circuit;
        const CircuitDocument doc = parse_document(read_text(s.circuit), s.circuit);
        return ensemble_density(run_circuit(doc.circuit));
    }
    const Family family = parse_family(s.family);
    if (family == Family::Rank2 && s.m_opt->count()) throw std::invalid_argument("rank2 has no --m");
    if (family == Family::Rank3 && s.p_opt->count()) throw std::invalid_argument("rank3 fixes p = 1/2; drop --p");
    const StateParams sp{family == Family::Rank3 ? 0.5 : s.p, family == Family::Rank2 ? 1.0 : s.m, s.eps};
    params["family"] = s.family;
    params["p"] = sp.p;
    params["m"] = sp.m;
    params["epsilon"] = sp.epsilon;
    return family_state(family, sp);
}

void add_optimizer_options(CLI::App* cmd, OptimizerConfig& o, bool& no_refine) {
    cmd->add_option("--grid-theta", o.grid_theta, "Grid points in theta")->check(CLI::Range(2, 100000));
    cmd->add_option("--grid-phi", o.grid_phi, "Grid points in phi")->check(CLI::Range(1, 100000));
    cmd->add_flag("--no-refine", no_refine, "Skip the simplex refinement");
    cmd->add_option("--simplex-tol", o.simplex_tolerance, "Simplex diameter tolerance (radians)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-evals", o.max_evaluations, "Simplex evaluation budget")->check(CLI::PositiveNumber);
}

json optimizer_json(const OptimizerConfig& o) {
    return {{"grid_theta", o.grid_theta},
            {"grid_phi", o.grid_phi},
            {"refine", o.refine},
            {"simplex_tolerance", o.simplex_tolerance},
            {"max_evaluations", o.max_evaluations}};
}

struct NoiseOptions {
    NoiseConfig config{1.0, 0.48, 0.49, 100, 0};
    CLI::Option* seed_opt = nullptr;
};

void add_noise_options(CLI::App* cmd, NoiseOptions& n) {
    cmd->add_option("--hwp-jitter", n.config.hwp_jitter, "Half-range of analysis plate angle error (degrees)");
    cmd->add_option("--bs-r", n.config.bs_r, "Analysis beam splitter intensity reflectance");
    cmd->add_option("--bs-t", n.config.bs_t, "Analysis beam splitter intensity transmittance");
    cmd->add_option("--runs", n.config.runs, "Monte Carlo runs");
    n.seed_opt = cmd->add_option("--seed", n.config.seed, std::string("Root seed (default: $") + kSeedVariable + " or 1)");
}

std::uint64_t resolve_seed(NoiseOptions& n) {
    if (n.seed_opt->count() == 0) n.config.seed = default_seed();
    return n.config.seed;
}

json noise_json(const NoiseConfig& n) {
    return {{"hwp_jitter_deg", n.hwp_jitter}, {"bs_r", n.bs_r}, {"bs_t", n.bs_t}, {"runs", n.runs}, {"seed", n.seed}};
}

json stats_json(const MeasureStats& s) { return {{"mean", s.mean}, {"std", s.std}, {"values", s.values}}; }

// Drops every occurrence of `flag` (as "--flag v" or "--flag=v").
std::vector<std::string> without_flag(const std::vector<std::string>& args, const std::string& flag) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == flag) {
            ++i;
            continue;
        }
        if (args[i].rfind(flag + "=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

struct Invocation {
    std::vector<std::string> args;  // as given, seed pinned when used
    std::string command;
    json parameters = json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> outputs;
    std::string output;    // --output
    std::string manifest;  // --manifest

    void emit(const std::string& path, const std::string& content, std::ostream& out) {
        if (is_stdout(path)) {
            out << content;
        } else {
            write_text(path, content);
            outputs.push_back(path);
        }
    }

    void write_manifest(double seconds) const {
        std::string path = manifest;
        if (path.empty()) path = is_stdout(output) ? "somdms-" + command + ".manifest.json" : output + ".manifest.json";
        std::vector<std::string> recorded = args;
        if (seed) {
            recorded = without_flag(recorded, "--seed");
            recorded.push_back("--seed");
            recorded.push_back(std::to_string(*seed));
        }
        json m = {{"tool", "somdms"},
                  {"version", kVersion},
                  {"command", command},
                  {"args", recorded},
                  {"parameters", parameters},
                  {"seed", seed ? json(*seed) : json(nullptr)},
                  {"outputs", outputs},
                  {"duration_seconds", seconds}};
        write_text(path, m.dump(2) + "\n");
    }
};

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_replay(const std::string& manifest_path, const std::string& output, const std::string& manifest,
               std::ostream& out, std::ostream& err) {
    json m;
    try {
        m = json::parse(read_text(manifest_path));
    } catch (const json::exception& e) {
        throw std::invalid_argument("manifest '" + manifest_path + "' is not valid JSON: " + e.what());
    }
    if (!m.contains("args") || !m["args"].is_array()) throw std::invalid_argument("manifest has no args array");
    std::vector<std::string> args = m["args"].get<std::vector<std::string>>();
    if (args.empty() || args[0] == "replay") throw std::invalid_argument("manifest does not record a command");
    if (!output.empty()) {
        args = without_flag(without_flag(args, "--output"), "-o");
        args.push_back("--output");
        args.push_back(output);
    }
    if (!manifest.empty()) {
        args = without_flag(args, "--manifest");
        args.push_back("--manifest");
        args.push_back(manifest);
    }
    return dispatch(args, out, err);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlations, circuits and tomography for spin-orbit two-qubit states", "somdms"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Invocation inv;
    inv.args = args;

    StateOptions corr_state, prof_state, tomo_state;
    OptimizerConfig optimizer;
    bool no_refine = false;
    NoiseOptions noise;

    // correlations
    CLI::App* corr = app.add_subcommand("correlations", "Mutual information, C, Q and concurrence as JSON");
    add_state_options(corr, corr_state);
    add_optimizer_options(corr, optimizer, no_refine);

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "Correlations along one parameter as CSV");
    std::string sweep_family;
    std::string sweep_var = "eps";
    double from = 0.0, to = 1.0, step = 0.05;
    double fixed_p = 0.5, fixed_m = 0.5, fixed_eps = 0.0;
    bool with_noise = false;
    std::string plot;
    sweep->add_option("--family", sweep_family, "rank2, rank3 or mdms")->required();
    sweep->add_option("--var", sweep_var, "Swept parameter: eps, p or m");
    sweep->add_option("--from", from, "First value");
    sweep->add_option("--to", to, "Last value");
    sweep->add_option("--step", step, "Step")->check(CLI::PositiveNumber);
    CLI::Option* fixed_p_opt = sweep->add_option("--p", fixed_p, "Fixed p");
    CLI::Option* fixed_m_opt = sweep->add_option("--m", fixed_m, "Fixed m");
    CLI::Option* fixed_eps_opt = sweep->add_option("--eps", fixed_eps, "Fixed epsilon");
    sweep->add_flag("--noise", with_noise, "Monte Carlo tomography noise; adds std columns");
    add_noise_options(sweep, noise);
    add_optimizer_options(sweep, optimizer, no_refine);
    sweep->add_option("--plot", plot, "gnuplot script path (default: <output>.gp)");

    // scatter
    CLI::App* scatter = app.add_subcommand("scatter", "Q against C for rank-2 and rank-3 samples as CSV");
    double scatter_step = 0.01;
    scatter->add_option("--step", scatter_step, "Grid step in each parameter, in (0, 0.1]");
    add_optimizer_options(scatter, optimizer, no_refine);
    scatter->add_option("--plot", plot, "gnuplot script path (default: <output>.gp)");

    // profile
    CLI::App* prof = app.add_subcommand("profile", "Transverse detection-probability map");
    add_state_options(prof, prof_state);
    GridConfig grid;
    std::string format;
    prof->add_option("--half-width", grid.half_width, "Half-width of the window in waists");
    prof->add_option("--samples", grid.samples, "Samples per axis");
    prof->add_option("--waist", grid.waist, "Mode waist");
    prof->add_option("--format", format, "pgm or csv (default from the output extension)")
        ->check(CLI::IsMember({"pgm", "csv"}));

    // tomography
    CLI::App* tomo = app.add_subcommand("tomography", "Noisy tomography Monte Carlo as JSON");
    add_state_options(tomo, tomo_state);
    add_noise_options(tomo, noise);
    add_optimizer_options(tomo, optimizer, no_refine);

    // replay
    CLI::App* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    std::string replay_manifest;
    replay->add_option("manifest_file", replay_manifest, "Manifest JSON file")->required();

    for (CLI::App* cmd : {corr, sweep, scatter, prof, tomo, replay}) {
        cmd->add_option("--output,-o", inv.output, "Output file ('-' for standard output)");
        cmd->add_option("--manifest", inv.manifest, "Manifest path (default: <output>.manifest.json)");
    }
    prof->get_option("--output")->required();

    std::vector<const char*> argv{"somdms"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadArguments;
    }

    optimizer.refine = !no_refine;
    const auto start = std::chrono::steady_clock::now();

    if (replay->parsed()) return run_replay(replay_manifest, inv.output, inv.manifest, out, err);

    if (corr->parsed()) {
        inv.command = "correlations";
        const DensityMatrix4 rho = resolve_state(corr_state, inv.parameters);
        inv.parameters["optimizer"] = optimizer_json(optimizer);
        const CorrelationReport r = analyze(rho, optimizer);
        const json report = {{"mutual_information", r.mutual_information},
                             {"classical_correlation", r.classical_correlation},
                             {"discord", r.discord},
                             {"concurrence", r.concurrence},
                             {"optimal_angles", {{"theta", r.optimal_angles.theta}, {"phi", r.optimal_angles.phi}}},
                             {"converged", r.converged}};
        inv.emit(inv.output, report.dump(2) + "\n", out);
    } else if (sweep->parsed()) {
        inv.command = "sweep";
        SweepSpec spec;
        spec.family = parse_family(sweep_family);
        spec.variable = parse_variable(sweep_var);
        const CLI::Option* swept = spec.variable == SweepVariable::Epsilon ? fixed_eps_opt
                                   : spec.variable == SweepVariable::P     ? fixed_p_opt
                                                                           : fixed_m_opt;
        if (swept->count()) throw std::invalid_argument("the swept parameter cannot also be fixed");
        if (spec.family == Family::Rank2 && fixed_m_opt->count()) throw std::invalid_argument("rank2 has no --m");
        if (spec.family == Family::Rank3 && fixed_p_opt->count()) throw std::invalid_argument("rank3 fixes p = 1/2");
        spec.fixed = {spec.family == Family::Rank3 ? 0.5 : fixed_p, spec.family == Family::Rank2 ? 1.0 : fixed_m,
                      fixed_eps};
        spec.from = from;
        spec.to = to;
        spec.step = step;
        spec.optimizer = optimizer;
        inv.parameters = {{"family", sweep_family}, {"variable", variable_name(spec.variable)},
                          {"from", from},           {"to", to},
                          {"step", step},           {"p", spec.fixed.p},
                          {"m", spec.fixed.m},      {"epsilon", spec.fixed.epsilon},
                          {"optimizer", optimizer_json(optimizer)}};
        if (with_noise) {
            inv.seed = resolve_seed(noise);
            spec.noise = noise.config;
            inv.parameters["noise"] = noise_json(noise.config);
        }
        const std::vector<SweepRow> rows = run_sweep(spec);
        inv.emit(inv.output, sweep_csv(spec.variable, rows), out);
        if (plot.empty() && !is_stdout(inv.output)) plot = inv.output + ".gp";
        if (!plot.empty()) inv.emit(plot, sweep_gnuplot(is_stdout(inv.output) ? "sweep.csv" : inv.output, spec.variable), out);
    } else if (scatter->parsed()) {
        inv.command = "scatter";
        inv.parameters = {{"step", scatter_step}, {"optimizer", optimizer_json(optimizer)}};
        const std::vector<ScatterPoint> points = run_scatter(scatter_step, optimizer);
        inv.emit(inv.output, scatter_csv(points), out);
        if (plot.empty() && !is_stdout(inv.output)) plot = inv.output + ".gp";
        if (!plot.empty()) inv.emit(plot, scatter_gnuplot(is_stdout(inv.output) ? "scatter.csv" : inv.output), out);
    } else if (prof->parsed()) {
        inv.command = "profile";
        const DensityMatrix4 rho = resolve_state(prof_state, inv.parameters);
        if (format.empty()) format = inv.output.ends_with(".csv") ? "csv" : "pgm";
        inv.parameters["grid"] = {{"half_width", grid.half_width}, {"samples", grid.samples}, {"waist", grid.waist}};
        inv.parameters["format"] = format;
        const IntensityMap map = intensity_map(rho, grid);
        inv.emit(inv.output, format == "csv" ? to_csv(map) : to_pgm(map), out);
    } else if (tomo->parsed()) {
        inv.command = "tomography";
        const DensityMatrix4 rho = resolve_state(tomo_state, inv.parameters);
        inv.seed = resolve_seed(noise);
        inv.parameters["noise"] = noise_json(noise.config);
        inv.parameters["optimizer"] = optimizer_json(optimizer);
        const DensityMatrix4 first = perturb_and_measure(rho, noise.config, 0);
        const CorrelationStats stats = monte_carlo_correlations(rho, noise.config, optimizer);
        const json report = {{"truth", matrix_json(rho.matrix())},
                             {"reconstructed", matrix_json(first.matrix())},
                             {"fidelity", fidelity(first, rho)},
                             {"stats",
                              {{"C", stats_json(stats.classical)},
                               {"Cprime", stats_json(stats.concurrence)},
                               {"Q", stats_json(stats.discord)},
                               {"Im", stats_json(stats.mutual_information)},
                               {"fidelity", stats_json(stats.fidelity)}}},
                             {"unconverged_runs", stats.unconverged_runs}};
        inv.emit(inv.output, report.dump(2) + "\n", out);
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    inv.write_manifest(seconds);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const DegenerateStateError& e) {
        err << "somdms: degenerate state: " << e.what() << "\n";
        return kExitDegenerateState;
    } catch (const somdms::ParseError& e) {
        err << "somdms: circuit error: " << e.what() << "\n";
        return kExitBadArguments;
    } catch (const std::exception& e) {
        err << "somdms: " << e.what() << "\n";
        return kExitBadArguments;
    }
}

}  // namespace somdms::cli
