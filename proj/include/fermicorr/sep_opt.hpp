#pragma once

#include <cstdint>
#include <vector>

#include "fermicorr/densmat.hpp"

namespace fermicorr {

// sigma = sum_i A_i (x) B_i with every factor positive semidefinite.
struct ProductDecomposition {
  std::vector<Matrix> factors_a;
  std::vector<Matrix> factors_b;

  Matrix assemble() const;  // unnormalized sum
};

enum class OptKind { PptLower, AlternatingUpper };

struct OptReport {
  double value;
  DensityMatrix sigma_star;
  long iterations;
  bool converged;
  OptKind kind;
  ProductDecomposition decomposition;  // populated for AlternatingUpper
};

struct PptOptions {
  long max_iters = 20000;
  double tol = 1e-9;        // relative objective change between iterations
  double feas_tol = 1e-9;   // allowed PSD/PPT/trace violation at return
};

// min S(rho||sigma) over unit-trace sigma with sigma >= 0 and sigma^{T_B} >= 0
// (lower bound for the relative entropy of entanglement). Projected gradient
// with Dykstra feasibility projections.
OptReport e_ppt(const DensityMatrix& rho, const PptOptions& options = {});

struct AltOptions {
  int term_count = 0;   // 0: Caratheodory default (D^2; D(D+1)/2 when real)
  int restarts = 8;
  std::uint64_t seed = 1;
  int max_sweeps = 500;
  double tol = 1e-8;    // objective improvement per outer sweep
  double gap_tol = 5e-7;  // conditional-gradient optimality certificate
  int inner_iters = 40; // projected-gradient steps per half-sweep
  int jobs = 1;         // restarts run in parallel when > 1
  // Restrict the product factors to real matrices. Off by default: the real
  // separable states are NOT the convex hull of real product states (e.g.
  // the dephased-Bell mixture (1 - sy (x) sy)/4 is real and separable yet
  // every real product has <sy (x) sy> = 0), so the restriction can exclude
  // the optimum even for real input.
  bool real_factors = false;
};

// Alternating convex minimization over the product factors (upper bound for
// the relative entropy of entanglement; sigma* is separable by construction).
OptReport closest_separable_alternating(const DensityMatrix& rho,
                                        const AltOptions& options = {});

// rho_p = p 1/4 + (1-p) |Psi+><Psi+|, Psi+ = (|00> + |11>)/sqrt(2)
DensityMatrix werner_state(double p);

// 3x3 bound entangled family, PPT for every a in [0, 1]
DensityMatrix horodecki_state(double a);

}  // namespace fermicorr
