#include "fermicorr/measures.hpp"

#include <cmath>

namespace fermicorr {

CorrelationReport make_report(double total, double entanglement,
                              double classical, SsrKind ssr, LogBase base) {
  if (entanglement > total + 1e-8)
    throw ValidationError("CorrelationReport: entanglement exceeds total");
  return {total, entanglement, classical, ssr, base};
}

namespace {

void require_bipartite(const DensityMatrix& rho, const char* who) {
  if (rho.shape().factor_count() != 2)
    throw ValidationError(std::string(who) + ": bipartite shape required");
}

}  // namespace

double mutual_information(const DensityMatrix& rho, LogBase base) {
  require_bipartite(rho, "mutual_information");
  const double sa = von_neumann_entropy(partial_trace(rho, {0}));
  const double sb = von_neumann_entropy(partial_trace(rho, {1}));
  const double s = von_neumann_entropy(rho);
  const double val = sa + sb - s;
  return (val < 0.0 ? 0.0 : val) * log_scale(base);
}

DensityMatrix closest_uncorrelated(const DensityMatrix& rho) {
  require_bipartite(rho, "closest_uncorrelated");
  const DensityMatrix a = partial_trace(rho, {0});
  const DensityMatrix b = partial_trace(rho, {1});
  return DensityMatrix(rho.shape(), raw::kron(a.mat(), b.mat()));
}

double classical_correlation_geometric(const DensityMatrix& rho,
                                       const DensityMatrix& sigma_star,
                                       LogBase base) {
  return relative_entropy(sigma_star, closest_uncorrelated(rho), base);
}

double log_negativity(const DensityMatrix& rho, LogBase base) {
  require_bipartite(rho, "log_negativity");
  const double tn = trace_norm(partial_transpose(rho, 1));
  const double val = std::log(tn);
  return (val < 0.0 ? 0.0 : val) * log_scale(base);
}

PptResult is_ppt(const DensityMatrix& rho) {
  require_bipartite(rho, "is_ppt");
  const double lo = raw::min_eigenvalue(
      raw::partial_transpose(rho.mat(), rho.shape().dims, 1));
  return {lo >= -kPsdTol, lo};
}

double multipartite_mutual_information(
    const DensityMatrix& rho, const std::vector<std::vector<int>>& parts,
    LogBase base) {
  if (parts.size() < 2)
    throw ValidationError(
        "multipartite_mutual_information: at least two parts required");
  int covered = 0;
  int expected_next = 0;
  for (const auto& group : parts) {
    if (group.empty())
      throw ValidationError("multipartite_mutual_information: empty part");
    for (int f : group) {
      if (f != expected_next)
        throw ValidationError(
            "multipartite_mutual_information: parts must partition the "
            "factors in ascending consecutive order");
      ++expected_next;
      ++covered;
    }
  }
  if (covered != rho.shape().factor_count())
    throw ValidationError(
        "multipartite_mutual_information: parts must cover all factors");

  Matrix prod;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Matrix red = partial_trace(rho, parts[k]).mat();
    prod = (k == 0) ? red : raw::kron(prod, red);
  }
  return raw::relative_entropy(rho.mat(), prod) * log_scale(base);
}

CouplingBound coupling_bound(const DensityMatrix& rho_thermal,
                             const std::vector<HermitianOperator>& couplings,
                             double temperature, LogBase base) {
  if (temperature <= 0.0)
    throw ValidationError("coupling_bound: temperature must be positive");
  std::vector<std::vector<int>> parts;
  for (int f = 0; f < rho_thermal.shape().factor_count(); ++f)
    parts.push_back({f});
  const double lhs =
      multipartite_mutual_information(rho_thermal, parts, base);
  double frob = 0.0;
  for (const auto& h : couplings) frob += h.entries.norm();
  const double rhs = 2.0 * frob / temperature * log_scale(base);
  return {lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace fermicorr
