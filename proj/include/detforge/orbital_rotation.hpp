#pragma once

#include <Eigen/Dense>
#include <utility>

#include "detforge/integral_io.hpp"
#include "detforge/tensor.hpp"

namespace detforge {

// κ entries follow the strictly-lower triangle in row-major order:
// (1,0), (2,0), (2,1), (3,0), ...
std::size_t kappa_length(std::size_t m);

Eigen::MatrixXd skew_from_kappa(const Eigen::VectorXd& kappa, std::size_t m);
Eigen::VectorXd kappa_from_skew(const Eigen::MatrixXd& k);

// V = exp(-K) for real antisymmetric K.
Eigen::MatrixXd rotation_matrix(const Eigen::MatrixXd& k);

// h̄ = V h Vᵀ
Eigen::MatrixXd transform_one_electron(const Eigen::MatrixXd& h, const Eigen::MatrixXd& v);

// ḡ_abcd = Σ V_ap V_bq V_cr V_ds g_pqrs, four single-index passes.
EriTensor transform_two_electron_full(const EriTensor& eri, const Eigen::MatrixXd& v);

struct DiagonalSlices {
    Eigen::MatrixXd w_ppqq;
    Eigen::MatrixXd w_pqqp;
};

// Only the (pp|qq) and (pq|qp) slices of the transformed tensor. V may be
// rectangular (r × n) to transform a subset of orbitals.
DiagonalSlices transform_two_electron_diagonal(const EriTensor& eri, const Eigen::MatrixXd& v);

// MO integrals for coefficient matrix C (columns are orbitals). Keeps the
// full MO tensor only when requested.
MoHamiltonianData ao_to_mo(const IntegralBundle& bundle, const Eigen::MatrixXd& c,
                           bool keep_full_tensor = false);

// Rotates MO-basis data by V; the full tensor is required when keep_full is set.
MoHamiltonianData rotate_mo(const MoHamiltonianData& mo, const Eigen::MatrixXd& v, bool keep_full);

double orthonormality_error(const Eigen::MatrixXd& c, const Eigen::MatrixXd& s);

}  // namespace detforge
