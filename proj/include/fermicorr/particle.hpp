#pragma once

#include <vector>

#include "fermicorr/densmat.hpp"

namespace fermicorr {

// Antisymmetric expansion matrices of the spectral branches of a two-fermion
// state on four modes, |Psi_i> = sum_ab w^(i)_ab f_a† f_b† |0>, with
// sqrt(eigenvalue) absorbed into each branch.
struct SlaterExpansion {
  std::vector<Eigen::Matrix4cd> w;
};

// C^(p) = S(gamma) + S(1 - gamma) - S(rho), gamma trace-normalized to the
// particle number; natural log.
double nonfreeness(const DensityMatrix& rho_fock, const Matrix& gamma);

// Spectral branches of a state supported on the N=2 sector of a 4-mode Fock
// space (16-dimensional input).
SlaterExpansion slater_expansion(const DensityMatrix& rho);

// K_ij = sum epsilon^{abcd} w^(i)_ab w^(j)_cd (complex symmetric, r x r at
// the actual rank r <= 6).
Matrix slater_k_matrix(const SlaterExpansion& expansion);
Matrix slater_k_matrix(const DensityMatrix& rho);

// E^(p) = max(0, 2 max|kappa| - sum|kappa|) over the singular values of K;
// zero on convex mixtures of configuration states.
double quantum_nonfreeness(const DensityMatrix& rho);

}  // namespace fermicorr
