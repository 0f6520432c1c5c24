#pragma once

#include <cstdint>

#include "fermicorr/densmat.hpp"

namespace fermicorr {

// Columns of each unitary are the candidate local eigenbases |a>, |b>.
struct LocalBases {
  Matrix basis_a;
  Matrix basis_b;

  LocalBases(Matrix a, Matrix b);  // validates unitarity to 1e-10
};

struct DiscordResult {
  double discord;
  DensityMatrix closest_classical;
  LocalBases bases;
  long iterations;
};

// sigma_cl = sum_ab mu_ab |a><a| (x) |b><b| with mu_ab = <ab| rho |ab>.
DensityMatrix classical_state(const DensityMatrix& rho,
                              const LocalBases& bases);

// Brute-force search over Haar-random local bases.
DiscordResult discord_direct(const DensityMatrix& rho, long samples,
                             std::uint64_t seed);

struct McmcOptions {
  long steps = 5000;
  double eta = 0.1;      // step size of the unitary walk U' = exp(i eta H) U
  double beta = 1e4;     // inverse temperature of the acceptance rule
  int restarts = 8;
  std::uint64_t seed = 1;
  int jobs = 1;
};

// Metropolis walk on the local unitaries; returns the best state seen.
DiscordResult discord_mcmc(const DensityMatrix& rho,
                           const McmcOptions& options = {});

// rho(c) = (1-c) 1/4 + c |Psi-><Psi-|, Psi- = (|00> - |11>)/sqrt(2)
DensityMatrix werner_discord_family(double c);

// Known discord of rho(c): (1-c)/4 log(1-c) - (1+c)/2 log(1+c)
//                          + (1+3c)/4 log(1+3c)
double discord_werner_closed_form(double c);

// C'(rho) = I(sigma_cl*), mutual information of the closest classical state.
double classical_correlation_discord(const DiscordResult& result,
                                     LogBase base = LogBase::Natural);

}  // namespace fermicorr
