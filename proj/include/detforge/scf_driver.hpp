#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "detforge/hamiltonian_builder.hpp"
#include "detforge/integral_io.hpp"
#include "detforge/solvers.hpp"

namespace detforge {

enum class Algorithm { One, Two, Boost };
enum class GradientMode { FiniteDifference, Analytic };

Algorithm parse_algorithm(const std::string& s);
std::string algorithm_name(Algorithm a);

// Solver defaults for inner problems: 3000 annealing sweeps per restart.
SolverBudget scf_default_budget();

struct ScfConfig {
    Algorithm algorithm = Algorithm::Two;
    Method method = Method::Brute;
    SolverBudget budget = scf_default_budget();
    bool number_penalty = true;
    bool spin_penalty = true;
    std::optional<double> lambda;  // empty means auto
    double epsilon = 1e-8;
    int max_iter = 50;
    GradientMode gradient = GradientMode::FiniteDifference;
    double fd_step = 1e-5;
    double kappa_gtol = 1e-6;
    int kappa_max_iter = 200;
    // Heuristic inner solvers start restart 0 from the previous determinant.
    bool warm_start = true;
    bool record_timing = false;  // wall_ms column of the trace CSV
};

struct IterationRecord {
    int iteration = 0;
    double energy = 0.0;
    std::string bitstring;
    std::uint64_t solver_evals = 0;
    double wall_ms = 0.0;
    double s2_diag = 0.0;
    double consistency_error = 0.0;  // |AO energy - diagonal expectation|, Algorithm 2 only
};

struct ScfTrace {
    std::vector<IterationRecord> records;
    std::string algorithm;
    std::string solver;
    bool converged = false;
    double final_energy = 0.0;
    double total_wall_ms = 0.0;
};

struct ScfState {
    int iteration = 0;
    Eigen::MatrixXd c;
    Eigen::MatrixXd gamma;
    Eigen::MatrixXd fock;
    double energy = 0.0;
    FockState b_min;
    double s2_diag = 0.0;
    bool converged = false;
};

struct ScfResult {
    ScfState state;
    ScfTrace trace;
};

struct BoostReport {
    FockState best;
    double energy = 0.0;
    FockState aufbau;
    double aufbau_energy = 0.0;
    bool instability = false;
    std::uint64_t solver_evals = 0;
};

// Occupation-summed MO 1-RDM, T_pp = b_2p + b_2p+1.
Eigen::MatrixXd spin_free_rdm(const FockState& b);

PenaltySpec penalty_spec(const ScfConfig& cfg, int n_alpha, int n_beta);

struct InnerSolution {
    FockState b;
    double energy = 0.0;  // raw diagonal energy including the shift
    std::uint64_t evaluations = 0;
};

// One inner problem: diagonal Hamiltonian, penalties, solver, sector check.
InnerSolution solve_inner(const DiagonalHamiltonian& hd, const ScfConfig& cfg, int n_alpha,
                          int n_beta, const FockState* warm);

// AO-basis Coulomb and exchange: J_μν = Σ γ_λσ (μν|λσ), K_μν = Σ γ_λσ (μλ|σν).
Eigen::MatrixXd coulomb(const EriTensor& eri, const Eigen::MatrixXd& gamma);
Eigen::MatrixXd exchange(const EriTensor& eri, const Eigen::MatrixXd& gamma);

// Symmetric orthogonaliser S^(-1/2) from the SVD of S.
Eigen::MatrixXd inverse_sqrt_overlap(const Eigen::MatrixXd& s);

// Orbitals diagonalising F in the S-metric, ascending energies.
Eigen::MatrixXd orbitals_from_fock(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& a);

// Initial AO density: gamma_init, else c_init aufbau, else core guess.
Eigen::MatrixXd initial_density(const IntegralBundle& b);

// Starting orbitals: eigenvectors of the Fock matrix built from the initial density.
Eigen::MatrixXd initial_orbitals(const IntegralBundle& b);

struct AoEnergy {
    double energy = 0.0;
    Eigen::MatrixXd gamma;
    Eigen::MatrixXd fock;  // spin-averaged
};

AoEnergy ao_energy(const IntegralBundle& b, const Eigen::MatrixXd& c, const FockState& occ);

ScfResult run_algorithm2(const IntegralBundle& bundle, const ScfConfig& cfg);

// Works in the given MO basis; state.c is the cumulative rotation Vᵀ.
ScfResult run_algorithm1(const MoHamiltonianData& mo, const ScfConfig& cfg);
// Starts from initial_orbitals and reports C in the AO basis.
ScfResult run_algorithm1(const IntegralBundle& bundle, const ScfConfig& cfg);

BoostReport run_boost(const MoHamiltonianData& mo, const ScfConfig& cfg);

// Energy of determinant b after rotating the MO basis by V (rows are new orbitals).
double rotated_energy(const MoHamiltonianData& mo, const Eigen::MatrixXd& v, const FockState& b);

// dE/dκ at κ = 0 from the generalized Fock matrices.
Eigen::VectorXd analytic_kappa_gradient(const MoHamiltonianData& mo, const FockState& b);

std::string bitstring(const FockState& b);
std::string trace_csv(const ScfTrace& t, bool with_timing);
std::string trace_summary_json(const ScfTrace& t, const ScfState& s);

}  // namespace detforge
