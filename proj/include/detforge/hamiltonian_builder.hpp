#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "detforge/integral_io.hpp"
#include "detforge/models.hpp"

namespace detforge {

// Spin orbital s = 2p + σ, σ = 0 for α and 1 for β.
struct DiagonalHamiltonian {
    int m_spin = 0;
    Eigen::VectorXd diag;
    Eigen::MatrixXd pair;
    double shift = 0.0;
};

struct PenaltySpec {
    std::optional<int> n_alpha_target;
    std::optional<int> n_beta_target;
    bool s2_zero = false;
    std::optional<double> lambda;  // empty means "auto"

    bool empty() const { return !n_alpha_target && !n_beta_target && !s2_zero; }
};

DiagonalHamiltonian build_diagonal_hamiltonian(const MoHamiltonianData& mo);

double energy_of_state(const DiagonalHamiltonian& h, const FockState& b);

QusoModel jw_map(const DiagonalHamiltonian& h);

// (Σ_{i∈set} (1 - z_i)/2 - target)²
QusoModel number_penalty(const std::vector<int>& indices, int target, std::size_t n);

// N_β minus the number of doubly occupied spatial orbitals.
QusoModel spin_penalty_closed_shell(int m_spatial, int n_beta);

// Diagonal part of S² on every determinant.
QusoModel s2_diagonal(int m_spatial);

// (N_β - Σ_k x_{2k} x_{2k+1})² over bits, the quartic squared form of the
// closed-shell penalty.
PuboModel spin_penalty_squared(int m_spatial, int n_beta);

double resolve_lambda(const QusoModel& h_quso, const PenaltySpec& spec);

QusoModel penalty_model(std::size_t n, const PenaltySpec& spec);

QusoModel apply_penalties(const QusoModel& h_quso, const PenaltySpec& spec);

std::vector<int> alpha_indices(int m_spatial);
std::vector<int> beta_indices(int m_spatial);

// Lowest-index occupation in each spin channel.
FockState aufbau_state(int m_spatial, int n_alpha, int n_beta);

}  // namespace detforge
