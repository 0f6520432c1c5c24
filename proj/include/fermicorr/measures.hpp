#pragma once

#include <vector>

#include "fermicorr/densmat.hpp"
#include "fermicorr/ssr.hpp"

namespace fermicorr {

struct CorrelationReport {
  double total;
  double entanglement;
  double classical;
  SsrKind ssr;
  LogBase log_base;
};

// Validates entanglement <= total + 1e-8.
CorrelationReport make_report(double total, double entanglement,
                              double classical, SsrKind ssr, LogBase base);

// S(rho_A) + S(rho_B) - S(rho) for a bipartite shape.
double mutual_information(const DensityMatrix& rho,
                          LogBase base = LogBase::Natural);

// rho_A (x) rho_B, the relative-entropy-closest uncorrelated state.
DensityMatrix closest_uncorrelated(const DensityMatrix& rho);

// C(rho) = S(sigma_star || rho_A (x) rho_B) with sigma_star the closest
// separable state supplied by the caller.
double classical_correlation_geometric(const DensityMatrix& rho,
                                       const DensityMatrix& sigma_star,
                                       LogBase base = LogBase::Natural);

double log_negativity(const DensityMatrix& rho,
                      LogBase base = LogBase::Natural);

struct PptResult {
  bool ppt;
  double min_eigenvalue;
};

PptResult is_ppt(const DensityMatrix& rho);

// S(rho || rho_1 (x) ... (x) rho_nu) over a grouping of the shape's factors
// into consecutive ascending parts.
double multipartite_mutual_information(const DensityMatrix& rho,
                                       const std::vector<std::vector<int>>& parts,
                                       LogBase base = LogBase::Natural);

struct CouplingBound {
  double lhs;
  double rhs;
  bool satisfied;
};

// lhs = multipartite mutual information over all factors, rhs = (2/T) * sum
// of Frobenius norms of the coupling terms.
CouplingBound coupling_bound(const DensityMatrix& rho_thermal,
                             const std::vector<HermitianOperator>& couplings,
                             double temperature,
                             LogBase base = LogBase::Natural);

}  // namespace fermicorr
