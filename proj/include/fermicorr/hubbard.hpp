#pragma once

#include <array>

#include "fermicorr/densmat.hpp"
#include "fermicorr/fock.hpp"
#include "fermicorr/scan.hpp"
#include "fermicorr/sep_opt.hpp"
#include "fermicorr/ssr.hpp"

namespace fermicorr {

// Dimensionless dimer: U = 1, hopping t = exp(-r), k_B = 1.
struct DimerParams {
  double t;
  double r;
  double temperature;

  static DimerParams from_r(double r, double temperature);
  static DimerParams from_t(double t, double temperature);
};

struct DimerSpectrum {
  std::array<double, 6> energies;  // E0 <= 0 = E1 = E2 = E3 <= E4 <= E5
  double a, b, c, d;               // singlet-sector eigenvector coefficients
  double w;                        // sqrt(U^2/4 + 4 t^2)
};

// Modes ordered (L up, L down, R up, R down).
Matrix dimer_hamiltonian(double t);

// Restriction of a 16x16 operator to the N=2 sector (6x6).
Matrix dimer_n2_block(const Matrix& op16);

// The hopping term alone (the L:R coupling of the Hamiltonian).
Matrix dimer_hopping_term(double t);

DimerSpectrum closed_form_spectrum(double t);

// e^{-H/T}/Z on the N=2 sector, embedded in the 16-dim Fock space; T = 0
// returns the pure ground state.
DensityMatrix gibbs_state(const DimerParams& params);

// e^{-H/T}/Z over the whole Fock space. This is the free-energy minimizer
// the coupling bound addresses; the sector-restricted state above is not,
// and fails the bound at large (T, r).
DensityMatrix gibbs_state_full(const DimerParams& params);

enum class Picture { Mode, Particle };

// Root of the sudden-death condition in r (bisection to 1e-8):
// mode: 3 exp(-dE/T) = a^2;  particle: |a^2 - b^2| p^2 = 3 q^2.
double critical_distance_mode(double temperature);
double critical_distance_particle(double temperature);

// -log(T)/2 + c0 + c1 T small-T expansion (O(T^2) truncated).
double asymptotic_rcrit(double temperature, Picture picture);

struct HubbardScanOptions {
  Picture picture = Picture::Mode;
  SsrKind ssr = SsrKind::Number;
  LogBase log_base = LogBase::Natural;
  int jobs = 1;
  AltOptions sep;  // numerical backend for ssr = none / p fallbacks
};

// Mode picture: columns (T, r, t, total, entanglement); particle picture:
// columns (T, r, t, nonfreeness, quantum_nonfreeness). Rows in grid order
// (T outer, r inner); per-row failures recorded in the status column.
ScanTable hubbard_scan(const std::vector<double>& temperatures,
                       const std::vector<double>& separations,
                       const HubbardScanOptions& options = {});

}  // namespace fermicorr
