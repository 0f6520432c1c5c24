#pragma once

#include <array>

#include "fermicorr/densmat.hpp"

namespace fermicorr {

// Eigenbasis convention for the two states of the doubly-occupied pair.
// Nssr: Psi6 = |dd,vac>, Psi7 = |vac,dd> (definite local particle number).
// Pssr: Psi6/7 = (|vac,dd> -/+ |dd,vac>)/sqrt(2) (definite reflection parity).
enum class TableConvention { Nssr, Pssr };

// Weights over the 16 simultaneous eigenstates of (N_A, N_B, S_z, S^2);
// p[k] belongs to state Psi_{k+1}.
struct SymmetricTwoOrbitalState {
  std::array<double, 16> p;
  TableConvention convention;
};

// The k-th eigenstate (k in 1..16) as a vector on the 4 (x) 4 two-orbital
// space, local basis order (vac, up, down, updown).
Vector table_state(int k, TableConvention convention);

// Mixture sum_k w_k |Psi_k><Psi_k|.
DensityMatrix table_mixture(const std::array<double, 16>& w,
                            TableConvention convention);

// The generators (N_A, N_B, S_z, S^2) on the two-orbital space.
std::vector<Matrix> standard_generators();

// Projection onto the simultaneous eigensectors of a commuting generator
// set: rho -> sum_k P_k rho P_k. Idempotent, trace and positivity preserving.
DensityMatrix twirl(const DensityMatrix& rho,
                    const std::vector<Matrix>& generators);

// Weights p_k = <Psi_k| rho |Psi_k>. Requires [rho, N] = [rho, S_z] =
// [rho, S^2] = 0 within 1e-8.
SymmetricTwoOrbitalState project_to_table_basis(
    const DensityMatrix& rho, TableConvention convention = TableConvention::Nssr);

// Applies the projection that maps between conventions (averages the Psi6/7
// weights; an information-losing projection in both directions).
SymmetricTwoOrbitalState convert_convention(const SymmetricTwoOrbitalState& s,
                                            TableConvention target);

// Weights of the (1,1)-occupation block where all entanglement lives.
struct SectorM {
  double p8, p9, p10, p11;
  double trace() const { return p8 + p9 + p10 + p11; }
};

SectorM sector_m(const SymmetricTwoOrbitalState& s);

// Peres-Horodecki on the sector: separable iff q10 q11 >= ((q8 - q9)/2)^2.
bool sector_m_separable(const SectorM& q);

struct ClosestSeparableResult {
  std::array<double, 16> q;  // closest separable state weights
  double entanglement;       // S(rho || sigma*), natural log
};

// Closed-form closest separable state for an N-SSR symmetric state
// (Nssr convention required).
ClosestSeparableResult closest_separable_nssr(
    const SymmetricTwoOrbitalState& state);

// P-SSR restricted entanglement for a particle-hole symmetrized state
// (p1 = p16 within 1e-10; Pssr convention required).
double entanglement_pssr(const SymmetricTwoOrbitalState& state);

struct SingleOrbitalMeasures {
  double total;           // I, no SSR
  double entanglement;    // E, no SSR
  double total_p;
  double entanglement_p;
  double total_n;
  double entanglement_n;
};

// Closed forms from the spectrum (p1..p4) of a one-orbital reduced state of
// a pure symmetric total state; natural log.
SingleOrbitalMeasures single_orbital_measures(const std::array<double, 4>& p);

// sum_{alpha<=N} (1 - lambda_alpha) + sum_{alpha>N} lambda_alpha for
// descending natural occupation numbers.
double intrinsic_correlation(const std::vector<double>& occupations_desc,
                             int particle_count);

}  // namespace fermicorr
