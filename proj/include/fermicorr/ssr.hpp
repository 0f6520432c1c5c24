#pragma once

#include <string>
#include <vector>

#include "fermicorr/densmat.hpp"
#include "fermicorr/sep_opt.hpp"

namespace fermicorr {

enum class SsrKind { None, Parity, Number };

SsrKind parse_ssr(const std::string& s);  // none|p|n
std::string ssr_name(SsrKind kind);

// One projector per local charge value; orthogonal and complete.
struct SectorDecomposition {
  std::vector<double> values;
  std::vector<Matrix> projectors;
};

// Spectral projectors of a local charge operator with near-integer spectrum,
// grouped by parity or by particle number (eigenvalues rounded to nearest
// integer, tolerance 1e-8).
SectorDecomposition sector_projectors(const Matrix& local_charge,
                                      SsrKind kind);

// Local particle number of a 2^k-dimensional local Fock factor (diagonal
// popcount matrix).
Matrix local_fock_number(int dim);

// rho^Q = sum_{q,q'} (P_q (x) P_q') rho (P_q (x) P_q'); idempotent and
// trace-preserving. kind = None returns the input unchanged.
DensityMatrix ssr_project(const DensityMatrix& rho, SsrKind kind,
                          const Matrix& charge_a, const Matrix& charge_b);

// Convenience overload deriving local particle numbers from the factor
// dimensions; both factors must be local Fock spaces (dimension 2^k).
DensityMatrix ssr_project(const DensityMatrix& rho, SsrKind kind);

enum class CorrelationMeasure { Total, Entanglement, Classical };

struct SsrMeasureOptions {
  LogBase log_base = LogBase::Natural;
  AltOptions sep;  // backend options for the numerical entanglement route
};

// Applies ssr_project then the requested unrestricted measure. Entanglement
// uses the twoorb closed form when the projected state is diagonal in the
// symmetric two-orbital eigenbasis, and the alternating optimizer otherwise.
double ssr_measure(const DensityMatrix& rho, SsrKind kind,
                   CorrelationMeasure measure,
                   const SsrMeasureOptions& options = {});

}  // namespace fermicorr
