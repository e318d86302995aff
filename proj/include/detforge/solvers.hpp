#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detforge/models.hpp"

namespace detforge {

struct SolverBudget {
    std::uint64_t seed = 1;
    int restarts = 32;
    int sweeps = 100;          // annealing sweeps per restart
    int tabu_iterations = 0;   // per restart; 0 picks max(100, 20 n)
    int tabu_tenure = 0;       // 0 picks clamp(n/4, 1, 20)
    std::optional<double> time_limit;  // seconds, checked between restarts
    std::optional<double> t_initial;   // default max|coefficient|
    std::optional<double> t_final;     // default 1e-3 t_initial
    int sdp_rank = 0;          // 0 picks ceil(sqrt(2n)) + 1
    int sdp_max_iter = 5000;
    double sdp_tol = 1e-7;
    int hyperplanes = 200;
    int threads = 1;
    // Restart 0 starts here when set (spins for QUSO, bits for QUBO).
    std::optional<std::vector<int>> initial;
};

struct SolverResult {
    std::vector<int> best_assignment;
    double best_value = 0.0;
    std::uint64_t evaluations = 0;
    std::vector<double> history;  // best value per restart
    std::optional<double> sdp_bound;
    std::optional<double> ratio_certificate;
    bool sdp_converged = true;
};

struct Sector {
    std::vector<int> alpha;
    int n_alpha = 0;
    std::vector<int> beta;
    int n_beta = 0;
};

enum class Method { Brute, Anneal, Tabu, Gw };

Method parse_method(const std::string& name);
std::string method_name(Method m);

// Number of states enumerated for the given sector (variables outside both
// sets are free).
double sector_state_count(std::size_t n, const Sector& sector);

SolverResult brute_force(const QusoModel& m, const std::optional<Sector>& sector = std::nullopt);
SolverResult brute_force(const QuboModel& m, const std::optional<Sector>& sector = std::nullopt);

SolverResult simulated_annealing(const QusoModel& m, const SolverBudget& budget);
SolverResult simulated_annealing(const QuboModel& m, const SolverBudget& budget);

SolverResult tabu_search(const QusoModel& m, const SolverBudget& budget);
SolverResult tabu_search(const QuboModel& m, const SolverBudget& budget);

// Assignment is over graph vertices; best_value is the cut weight. With an
// ancilla, the returned assignment has z_ω = +1.
SolverResult gw_maxcut(const MaxCutInstance& g, const SolverBudget& budget);

// Exact maximum cut by enumeration (vertex 0 fixed to +1), n ≤ 27.
SolverResult brute_force_maxcut(const MaxCutInstance& g);

// Uniform dispatch over QUSO models; best_assignment is a spin vector and
// best_value the QUSO value.
SolverResult solve(const QusoModel& m, Method method, const SolverBudget& budget,
                   const std::optional<Sector>& sector = std::nullopt);

// Counter-based seed split used for restarts and hyperplanes.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace detforge
