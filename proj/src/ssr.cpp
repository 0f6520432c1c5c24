#include "fermicorr/ssr.hpp"

#include <bit>
#include <cmath>

#include "fermicorr/measures.hpp"
#include "fermicorr/twoorb.hpp"

namespace fermicorr {

SsrKind parse_ssr(const std::string& s) {
  if (s == "none") return SsrKind::None;
  if (s == "p" || s == "parity") return SsrKind::Parity;
  if (s == "n" || s == "number") return SsrKind::Number;
  throw ValidationError("unknown SSR kind '" + s + "' (none|p|n)");
}

std::string ssr_name(SsrKind kind) {
  switch (kind) {
    case SsrKind::None: return "none";
    case SsrKind::Parity: return "p";
    case SsrKind::Number: return "n";
  }
  return "?";
}

SectorDecomposition sector_projectors(const Matrix& local_charge,
                                      SsrKind kind) {
  const int n = static_cast<int>(local_charge.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(local_charge));

  SectorDecomposition dec;
  if (kind == SsrKind::None) {
    dec.values.push_back(0.0);
    dec.projectors.push_back(Matrix::Identity(n, n));
    return dec;
  }
  for (int k = 0; k < n; ++k) {
    const double ev = es.eigenvalues()(k);
    const double rounded = std::round(ev);
    if (std::abs(ev - rounded) > 1e-8)
      throw ValidationError("sector_projectors: non-integer charge spectrum");
    const double value =
        kind == SsrKind::Parity ? std::fmod(std::abs(rounded), 2.0) : rounded;
    int slot = -1;
    for (std::size_t i = 0; i < dec.values.size(); ++i)
      if (dec.values[i] == value) slot = static_cast<int>(i);
    if (slot < 0) {
      dec.values.push_back(value);
      dec.projectors.push_back(Matrix::Zero(n, n));
      slot = static_cast<int>(dec.values.size()) - 1;
    }
    const Vector v = es.eigenvectors().col(k);
    dec.projectors[slot] += v * v.adjoint();
  }
  return dec;
}

Matrix local_fock_number(int dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw ValidationError("local_fock_number: dimension must be 2^k");
  Matrix m = Matrix::Zero(dim, dim);
  for (int g = 0; g < dim; ++g)
    m(g, g) = static_cast<double>(std::popcount(static_cast<unsigned>(g)));
  return m;
}

DensityMatrix ssr_project(const DensityMatrix& rho, SsrKind kind,
                          const Matrix& charge_a, const Matrix& charge_b) {
  if (rho.shape().factor_count() != 2)
    throw ValidationError("ssr_project: bipartite shape required");
  if (kind == SsrKind::None) return rho;
  const SectorDecomposition da = sector_projectors(charge_a, kind);
  const SectorDecomposition db = sector_projectors(charge_b, kind);

  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& pa : da.projectors)
    for (const Matrix& pb : db.projectors) {
      const Matrix p = raw::kron(pa, pb);
      out += p * rho.mat() * p;
    }
  return DensityMatrix(rho.shape(), std::move(out));
}

DensityMatrix ssr_project(const DensityMatrix& rho, SsrKind kind) {
  if (rho.shape().factor_count() != 2)
    throw ValidationError("ssr_project: bipartite shape required");
  if (kind == SsrKind::None) return rho;
  return ssr_project(rho, kind, local_fock_number(rho.shape().dims[0]),
                     local_fock_number(rho.shape().dims[1]));
}

namespace {

// The twoorb closed form applies when the projected state is diagonal in the
// symmetric two-orbital eigenbasis.
bool table_diagonal(const DensityMatrix& rho) {
  if (rho.dim() != 16 || rho.shape().dims[0] != 4) return false;
  const std::vector<Matrix> gens = standard_generators();
  for (const Matrix& g : gens) {
    const double comm =
        (rho.mat() * g - g * rho.mat()).cwiseAbs().maxCoeff();
    if (comm > 1e-8) return false;
  }
  return true;
}

}  // namespace

double ssr_measure(const DensityMatrix& rho, SsrKind kind,
                   CorrelationMeasure measure,
                   const SsrMeasureOptions& options) {
  const DensityMatrix physical = ssr_project(rho, kind);
  if (measure == CorrelationMeasure::Total)
    return mutual_information(physical, options.log_base);

  double entanglement;
  DensityMatrix sigma_star = physical;
  if (table_diagonal(physical)) {
    const SymmetricTwoOrbitalState s = project_to_table_basis(physical);
    const ClosestSeparableResult res = closest_separable_nssr(s);
    entanglement = res.entanglement;
    sigma_star = table_mixture(res.q, TableConvention::Nssr);
  } else {
    const OptReport report = closest_separable_alternating(physical, options.sep);
    if (!report.converged)
      throw NonConvergenceError("ssr_measure: optimizer hit the sweep cap");
    entanglement = report.value;
    sigma_star = report.sigma_star;
  }
  if (measure == CorrelationMeasure::Entanglement)
    return entanglement * log_scale(options.log_base);
  return classical_correlation_geometric(physical, sigma_star,
                                         options.log_base);
}

}  // namespace fermicorr
