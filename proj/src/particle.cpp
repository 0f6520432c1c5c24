#include "fermicorr/particle.hpp"

#include <bit>
#include <cmath>

namespace fermicorr {

double nonfreeness(const DensityMatrix& rho_fock, const Matrix& gamma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(gamma),
                                           Eigen::EigenvaluesOnly);
  double s_gamma = 0.0, s_holes = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam < -kPsdTol || lam > 1.0 + kPsdTol)
      throw ValidationError("nonfreeness: occupation outside [0, 1]: " +
                            std::to_string(lam));
    if (lam > kEigClamp) s_gamma -= lam * std::log(lam);
    const double hole = 1.0 - lam;
    if (hole > kEigClamp) s_holes -= hole * std::log(hole);
  }
  const double val = s_gamma + s_holes - raw::entropy(rho_fock.mat());
  return val < 0.0 ? 0.0 : val;
}

namespace {

// two-particle bit-strings of a 4-mode register, and their (a < b) mode pairs
constexpr int kSectorStates[6] = {3, 5, 6, 9, 10, 12};

std::pair<int, int> mode_pair(int bits) {
  int a = -1, b = -1;
  for (int m = 0; m < 4; ++m)
    if (bits & (1 << m)) {
      if (a < 0)
        a = m;
      else
        b = m;
    }
  return {a, b};
}

}  // namespace

SlaterExpansion slater_expansion(const DensityMatrix& rho) {
  if (rho.dim() != 16)
    throw ValidationError("slater_expansion: 16-dimensional Fock input required");
  double outside = 0.0;
  for (int g = 0; g < 16; ++g)
    if (std::popcount(static_cast<unsigned>(g)) != 2)
      outside += std::abs(rho.mat()(g, g).real());
  if (outside > 1e-10)
    throw ValidationError("slater_expansion: support outside the N=2 sector (" +
                          std::to_string(outside) + ")");

  Matrix block(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      block(i, j) = rho.mat()(kSectorStates[i], kSectorStates[j]);

  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(block));
  SlaterExpansion out;
  for (int k = 5; k >= 0; --k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= kEigClamp) continue;
    const double scale = std::sqrt(lam);
    Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 6; ++i) {
      const auto [a, b] = mode_pair(kSectorStates[i]);
      const Complex c = scale * es.eigenvectors()(i, k);
      w(a, b) += 0.5 * c;
      w(b, a) -= 0.5 * c;
    }
    out.w.push_back(w);
  }
  return out;
}

Matrix slater_k_matrix(const SlaterExpansion& expansion) {
  const int r = static_cast<int>(expansion.w.size());
  // K_ij = sum epsilon^{abcd} w_i(a,b) w_j(c,d); with antisymmetric w this
  // reduces to the three complementary-pair contractions
  auto pair_coeff = [](const Eigen::Matrix4cd& w, int a, int b) {
    return 2.0 * w(a, b);
  };
  Matrix k = Matrix::Zero(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const auto& wi = expansion.w[i];
      const auto& wj = expansion.w[j];
      Complex acc = pair_coeff(wi, 0, 1) * pair_coeff(wj, 2, 3) +
                    pair_coeff(wi, 2, 3) * pair_coeff(wj, 0, 1) -
                    pair_coeff(wi, 0, 2) * pair_coeff(wj, 1, 3) -
                    pair_coeff(wi, 1, 3) * pair_coeff(wj, 0, 2) +
                    pair_coeff(wi, 0, 3) * pair_coeff(wj, 1, 2) +
                    pair_coeff(wi, 1, 2) * pair_coeff(wj, 0, 3);
      k(i, j) = acc;
    }
  return k;
}

Matrix slater_k_matrix(const DensityMatrix& rho) {
  return slater_k_matrix(slater_expansion(rho));
}

double quantum_nonfreeness(const DensityMatrix& rho) {
  const Matrix k = slater_k_matrix(rho);
  if (k.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(k);
  const RealVector kappa = svd.singularValues();
  const double val = 2.0 * kappa.maxCoeff() - kappa.sum();
  return val < 0.0 ? 0.0 : val;
}

}  // namespace fermicorr
