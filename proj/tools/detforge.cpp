#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "detforge/errors.hpp"
#include "detforge/format.hpp"
#include "detforge/hamiltonian_builder.hpp"
#include "detforge/integral_io.hpp"
#include "detforge/orbital_rotation.hpp"
#include "detforge/problem_mappings.hpp"
#include "detforge/scf_driver.hpp"
#include "detforge/solvers.hpp"

namespace fs = std::filesystem;
using namespace detforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

struct Options {
    std::string bundle;
    std::string fcidump;
    std::string config;
    std::string algorithm;
    std::string solver;
    std::string penalties;
    std::string lambda;
    std::string trace;
    std::string summary;
    std::string model;
    std::string format;
    std::string out;
    std::string gradient;
    double tol = 0.0;
    int max_iter = 0;
    std::uint64_t seed = 0;
    int threads = 0;
    int restarts = 0;
    int sweeps = 0;
    bool timing = false;
};

struct PenaltyFlags {
    bool number = false;
    bool spin = false;
    bool s2report = false;
};

PenaltyFlags parse_penalties(const std::string& list) {
    PenaltyFlags f;
    if (list.empty() || list == "none") return f;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "number")
            f.number = true;
        else if (item == "spin")
            f.spin = true;
        else if (item == "s2report")
            f.s2report = true;
        else if (!item.empty())
            throw ConfigError("unknown penalty '" + item + "' (expected number, spin, s2report)");
    }
    return f;
}

std::optional<double> parse_lambda(const std::string& s) {
    if (s.empty() || s == "auto") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !(v > 0.0)) throw ConfigError("--lambda expects 'auto' or a positive number");
    return v;
}

GradientMode parse_gradient(const std::string& s) {
    if (s == "fd") return GradientMode::FiniteDifference;
    if (s == "analytic") return GradientMode::Analytic;
    throw ConfigError("unknown gradient mode '" + s + "' (expected fd or analytic)");
}

int env_threads() {
    const char* v = std::getenv("DETFORGE_THREADS");
    if (!v || !*v) return 0;
    try {
        const int t = std::stoi(v);
        if (t > 0) return t;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("DETFORGE_THREADS must be a positive integer, got '") + v + "'");
}

// Config file keys mirror the command-line flags; explicit flags are applied afterwards.
void apply_config_file(const std::string& path, ScfConfig& cfg, PenaltyFlags& pen, bool& s2report) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFile("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw MalformedFile("config " + path + ": expected a JSON object");
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            const auto& v = it.value();
            SolverBudget& b = cfg.budget;
            if (k == "algorithm") cfg.algorithm = parse_algorithm(v.get<std::string>());
            else if (k == "solver") cfg.method = parse_method(v.get<std::string>());
            else if (k == "penalties") {
                pen = parse_penalties(v.get<std::string>());
                cfg.number_penalty = pen.number;
                cfg.spin_penalty = pen.spin;
                s2report = pen.s2report;
            } else if (k == "lambda") cfg.lambda = v.is_string() ? parse_lambda(v.get<std::string>())
                                                                 : std::optional<double>(v.get<double>());
            else if (k == "tol") cfg.epsilon = v.get<double>();
            else if (k == "max_iter") cfg.max_iter = v.get<int>();
            else if (k == "seed") b.seed = v.get<std::uint64_t>();
            else if (k == "threads") b.threads = v.get<int>();
            else if (k == "restarts") b.restarts = v.get<int>();
            else if (k == "sweeps") b.sweeps = v.get<int>();
            else if (k == "tabu_iterations") b.tabu_iterations = v.get<int>();
            else if (k == "tabu_tenure") b.tabu_tenure = v.get<int>();
            else if (k == "time_limit") b.time_limit = v.get<double>();
            else if (k == "t_initial") b.t_initial = v.get<double>();
            else if (k == "t_final") b.t_final = v.get<double>();
            else if (k == "sdp_rank") b.sdp_rank = v.get<int>();
            else if (k == "sdp_max_iter") b.sdp_max_iter = v.get<int>();
            else if (k == "sdp_tol") b.sdp_tol = v.get<double>();
            else if (k == "hyperplanes") b.hyperplanes = v.get<int>();
            else if (k == "gradient") cfg.gradient = parse_gradient(v.get<std::string>());
            else if (k == "fd_step") cfg.fd_step = v.get<double>();
            else if (k == "kappa_gtol") cfg.kappa_gtol = v.get<double>();
            else if (k == "kappa_max_iter") cfg.kappa_max_iter = v.get<int>();
            else if (k == "warm_start") cfg.warm_start = v.get<bool>();
            else if (k == "timing") cfg.record_timing = v.get<bool>();
            else throw ConfigError("config " + path + ": unknown key '" + k + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
}

void check_config(const ScfConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw ConfigError("--tol must be positive");
    if (cfg.max_iter < 1) throw ConfigError("--max-iter must be at least 1");
    if (cfg.budget.threads < 1) throw ConfigError("--threads must be positive");
    if (cfg.budget.restarts < 1) throw ConfigError("restarts must be positive");
    if (cfg.budget.sweeps < 1) throw ConfigError("sweeps must be positive");
}

struct Resolved {
    ScfConfig cfg;
    bool s2report = false;
};

Resolved resolve_scf_config(const Options& o, const CLI::App& sub) {
    Resolved r;
    ScfConfig& cfg = r.cfg;
    PenaltyFlags pen{cfg.number_penalty, cfg.spin_penalty, false};
    if (const int t = env_threads(); t > 0) cfg.budget.threads = t;
    if (!o.config.empty()) apply_config_file(o.config, cfg, pen, r.s2report);
    auto given = [&](const char* name) { return sub.count(name) > 0; };
    if (given("--algorithm")) cfg.algorithm = parse_algorithm(o.algorithm);
    if (given("--solver")) cfg.method = parse_method(o.solver);
    if (given("--penalties")) {
        pen = parse_penalties(o.penalties);
        cfg.number_penalty = pen.number;
        cfg.spin_penalty = pen.spin;
        r.s2report = pen.s2report;
    }
    if (given("--lambda")) cfg.lambda = parse_lambda(o.lambda);
    if (given("--tol")) cfg.epsilon = o.tol;
    if (given("--max-iter")) cfg.max_iter = o.max_iter;
    if (given("--seed")) cfg.budget.seed = o.seed;
    if (given("--threads")) cfg.budget.threads = o.threads;
    if (given("--restarts")) cfg.budget.restarts = o.restarts;
    if (given("--sweeps")) cfg.budget.sweeps = o.sweeps;
    if (given("--gradient")) cfg.gradient = parse_gradient(o.gradient);
    if (given("--timing")) cfg.record_timing = o.timing;
    check_config(cfg);
    return r;
}

void require_one_input(const Options& o) {
    if (o.bundle.empty() == o.fcidump.empty())
        throw ConfigError("exactly one of --bundle or --fcidump is required");
}

fs::path summary_path(const Options& o) {
    if (!o.summary.empty()) return o.summary;
    fs::path p(o.trace);
    p.replace_extension(".json");
    if (p == fs::path(o.trace)) p += ".summary.json";
    return p;
}

void write_trace(const Options& o, const ScfConfig& cfg, const ScfTrace& t, const ScfState& s) {
    if (o.trace.empty()) {
        if (!o.summary.empty()) write_text_file(o.summary, trace_summary_json(t, s) + "\n");
        return;
    }
    write_text_file(o.trace, trace_csv(t, cfg.record_timing));
    write_text_file(summary_path(o), trace_summary_json(t, s) + "\n");
}

MoHamiltonianData mo_from_bundle(const IntegralBundle& b) {
    return ao_to_mo(b, initial_orbitals(b), true);
}

int cmd_scf(const Options& o, const CLI::App& sub) {
    require_one_input(o);
    const Resolved rc = resolve_scf_config(o, sub);
    const ScfConfig& cfg = rc.cfg;

    if (cfg.algorithm == Algorithm::Boost) {
        const MoHamiltonianData mo =
            o.fcidump.empty() ? mo_from_bundle(load_bundle(o.bundle)) : load_fcidump(o.fcidump);
        const BoostReport rep = run_boost(mo, cfg);
        ScfTrace t;
        t.algorithm = algorithm_name(cfg.algorithm);
        t.solver = method_name(cfg.method);
        t.converged = true;
        t.final_energy = rep.energy;
        IterationRecord rec;
        rec.iteration = 1;
        rec.energy = rep.energy;
        rec.bitstring = bitstring(rep.best);
        rec.solver_evals = rep.solver_evals;
        rec.s2_diag = s2_diagonal(mo.m_spatial).value(bits_to_spins(rep.best));
        t.records.push_back(rec);
        ScfState s;
        s.iteration = 1;
        s.energy = rep.energy;
        s.b_min = rep.best;
        s.s2_diag = rec.s2_diag;
        s.converged = true;
        write_trace(o, cfg, t, s);
        std::cout << format_fixed(rep.energy, 6) << "\n";
        std::cout << "aufbau_energy " << format_fixed(rep.aufbau_energy, 6) << "\n";
        std::cout << "bitstring " << bitstring(rep.best) << "\n";
        std::cout << "instability " << (rep.instability ? "yes" : "no") << "\n";
        if (rc.s2report) std::cout << "s2_diagonal " << format_double(rec.s2_diag) << "\n";
        return kExitOk;
    }

    ScfResult res;
    if (!o.fcidump.empty()) {
        if (cfg.algorithm != Algorithm::One)
            throw ConfigError("FCIDUMP input supports --algorithm 1 and boost; algorithm 2 needs an AO bundle");
        res = run_algorithm1(load_fcidump(o.fcidump), cfg);
    } else {
        const IntegralBundle b = load_bundle(o.bundle);
        res = cfg.algorithm == Algorithm::One ? run_algorithm1(b, cfg) : run_algorithm2(b, cfg);
    }
    write_trace(o, cfg, res.trace, res.state);
    std::cout << format_fixed(res.state.energy, 6) << "\n";
    if (rc.s2report) std::cout << "s2_diagonal " << format_double(res.state.s2_diag) << "\n";
    if (!res.trace.converged) {
        std::cerr << "MaxIterExceeded: no convergence within " << cfg.max_iter
                  << " iterations; reporting the lowest-energy iterate\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

// Minimising Σ_{ij} (w_ij / 2) z_i z_j maximises the cut; the cut equals total_weight/2 - value.
QusoModel maxcut_as_quso(const MaxCutInstance& g) {
    QusoModel m(g.n_vertices);
    for (const auto& [key, w] : g.weights) m.add_quadratic(key.first, key.second, 0.5 * w);
    return m;
}

int cmd_solve(const Options& o, const CLI::App& sub) {
    if (o.model.empty()) throw ConfigError("--model is required");
    SolverBudget budget;
    if (const int t = env_threads(); t > 0) budget.threads = t;
    if (sub.count("--seed")) budget.seed = o.seed;
    if (sub.count("--threads")) budget.threads = o.threads;
    if (sub.count("--restarts")) budget.restarts = o.restarts;
    if (sub.count("--sweeps")) budget.sweeps = o.sweeps;
    if (budget.threads < 1) throw ConfigError("--threads must be positive");
    const Method method = parse_method(o.solver.empty() ? "brute" : o.solver);

    const std::string text = read_text_file(o.model);
    if (text.rfind("# maxcut", 0) == 0) {
        const MaxCutInstance g = maxcut_from_text(text);
        SolverResult r;
        if (method == Method::Brute) {
            r = brute_force_maxcut(g);
        } else if (method == Method::Gw) {
            r = gw_maxcut(g, budget);
        } else {
            const QusoModel m = maxcut_as_quso(g);
            r = solve(m, method, budget);
            r.best_value = g.cut_value(r.best_assignment);
        }
        std::cout << "cut " << format_double(r.best_value) << "\n";
        std::cout << "assignment " << join_ints(r.best_assignment) << "\n";
        if (r.sdp_bound) {
            std::cout << "sdp_bound " << format_double(*r.sdp_bound) << "\n";
            std::cout << "certificate " << format_double(r.ratio_certificate.value_or(0.0)) << "\n";
            std::cout << "sdp_converged " << (r.sdp_converged ? "yes" : "no") << "\n";
        }
        std::cout << "evaluations " << r.evaluations << "\n";
        return kExitOk;
    }

    const auto model = load_model(o.model);
    SolverResult r;
    std::vector<int> assignment;
    double value = 0.0;
    if (const auto* q = std::get_if<QusoModel>(&model)) {
        r = solve(*q, method, budget);
        assignment = r.best_assignment;
        value = q->value(assignment);
    } else {
        const QuboModel& qb = std::get<QuboModel>(model);
        r = solve(qubo_to_quso(qb), method, budget);
        assignment = spins_to_bits(r.best_assignment);
        value = qb.value(assignment);
    }
    std::cout << "value " << format_double(value) << "\n";
    std::cout << "assignment " << join_ints(assignment) << "\n";
    if (r.sdp_bound) {
        std::cout << "sdp_bound " << format_double(*r.sdp_bound) << "\n";
        std::cout << "certificate " << format_double(r.ratio_certificate.value_or(0.0)) << "\n";
        std::cout << "sdp_converged " << (r.sdp_converged ? "yes" : "no") << "\n";
    }
    std::cout << "evaluations " << r.evaluations << "\n";
    return kExitOk;
}

int cmd_export(const Options& o, const CLI::App& sub) {
    require_one_input(o);
    if (o.out.empty()) throw ConfigError("--out is required");
    const Resolved rc = resolve_scf_config(o, sub);
    MoHamiltonianData mo;
    if (o.fcidump.empty()) {
        const IntegralBundle b = load_bundle(o.bundle);
        mo = ao_to_mo(b, initial_orbitals(b));
    } else {
        mo = load_fcidump(o.fcidump);
    }
    const QusoModel raw = jw_map(build_diagonal_hamiltonian(mo));
    const QusoModel model = apply_penalties(raw, penalty_spec(rc.cfg, mo.n_alpha, mo.n_beta));
    const std::string fmt = o.format.empty() ? "maxcut" : o.format;
    if (fmt == "quso") {
        save_model(model, o.out);
    } else if (fmt == "qubo") {
        save_model(quso_to_qubo(model), o.out);
    } else if (fmt == "maxcut") {
        const MaxCutInstance g = quso_to_maxcut(model);
        save_model(g, o.out);
        std::cout << "vertices " << g.n_vertices << " edges " << g.weights.size() << "\n";
    } else if (fmt == "xorsat") {
        const MaxCutInstance g = quso_to_maxcut(model);
        export_xorsat(g, o.out);
        std::cout << "variables " << g.n_vertices << " clauses " << g.weights.size() << "\n";
    } else {
        throw ConfigError("unknown export format '" + fmt + "' (expected quso, qubo, maxcut, xorsat)");
    }
    return kExitOk;
}

int print_checks(const std::vector<ValidationCheck>& checks) {
    bool ok = true;
    for (const ValidationCheck& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << ": " << c.detail;
        std::cout << "\n";
        ok = ok && c.passed;
    }
    return ok ? kExitOk : kExitInput;
}

int cmd_validate(const Options& o) {
    require_one_input(o);
    if (!o.fcidump.empty()) return print_checks(validate_mo(load_fcidump(o.fcidump)));
    return print_checks(validate_bundle(load_bundle_unchecked(o.bundle)));
}

void add_input_flags(CLI::App* s, Options& o) {
    s->add_option("--bundle", o.bundle, "Integral bundle (JSON)");
    s->add_option("--fcidump", o.fcidump, "FCIDUMP file in a fixed MO basis");
}

void add_scf_flags(CLI::App* s, Options& o) {
    s->add_option("--config", o.config, "JSON config; explicit flags take precedence");
    s->add_option("--algorithm", o.algorithm, "1, 2 or boost");
    s->add_option("--solver", o.solver, "brute, anneal, tabu or gw");
    s->add_option("--penalties", o.penalties, "Comma list of number, spin, s2report (or none)");
    s->add_option("--lambda", o.lambda, "Penalty weight: auto or a positive number");
    s->add_option("--tol", o.tol, "Energy convergence threshold (Hartree)");
    s->add_option("--max-iter", o.max_iter, "Maximum outer iterations");
    s->add_option("--seed", o.seed, "Master seed");
    s->add_option("--threads", o.threads, "Worker threads (fallback: DETFORGE_THREADS)");
    s->add_option("--restarts", o.restarts, "Heuristic restarts");
    s->add_option("--sweeps", o.sweeps, "Annealing sweeps per restart");
    s->add_option("--gradient", o.gradient, "Orbital gradient for algorithm 1: fd or analytic");
    s->add_flag("--timing", o.timing, "Fill the wall_ms trace column");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"detforge: single-determinant SCF with combinatorial inner solvers"};
    app.require_subcommand(1);
    Options o;

    CLI::App* scf = app.add_subcommand("scf", "Run the orbital-rotation (1) or Fock-diagonalization (2) SCF loop, or the boost check");
    add_input_flags(scf, o);
    add_scf_flags(scf, o);
    scf->add_option("--trace", o.trace, "Trace CSV path; the JSON summary goes next to it");
    scf->add_option("--summary", o.summary, "JSON summary path");

    CLI::App* slv = app.add_subcommand("solve", "Solve a QUSO, QUBO or MaxCut model file");
    slv->add_option("--model", o.model, "Model file");
    slv->add_option("--method,--solver", o.solver, "brute, anneal, tabu or gw");
    slv->add_option("--seed", o.seed, "Master seed");
    slv->add_option("--threads", o.threads, "Worker threads (fallback: DETFORGE_THREADS)");
    slv->add_option("--restarts", o.restarts, "Heuristic restarts");
    slv->add_option("--sweeps", o.sweeps, "Annealing sweeps per restart");

    CLI::App* exp = app.add_subcommand("export", "Write the penalized inner problem as quso, qubo, maxcut or xorsat");
    add_input_flags(exp, o);
    add_scf_flags(exp, o);
    exp->add_option("--format", o.format, "quso, qubo, maxcut (default) or xorsat");
    exp->add_option("--out", o.out, "Output path");

    CLI::App* val = app.add_subcommand("validate", "Check the invariants of a bundle or FCIDUMP file");
    add_input_flags(val, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (scf->parsed()) return cmd_scf(o, *scf);
        if (slv->parsed()) return cmd_solve(o, *slv);
        if (exp->parsed()) return cmd_export(o, *exp);
        if (val->parsed()) return cmd_validate(o);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
