#pragma once

#include <utility>
#include <vector>

#include "fermicorr/densmat.hpp"

namespace fermicorr {

inline constexpr int kMaxModes = 12;

enum class Spin : int { Up = 0, Down = 1 };

struct ModeLabel {
  int site;
  Spin spin;
  bool operator==(const ModeLabel& o) const {
    return site == o.site && spin == o.spin;
  }
};

// Ordered fermionic modes. Occupation bit-strings index the Fock basis with
// mode 0 as the least significant bit; |n1..nd> = (f1†)^n1 ... (fd†)^nd |0>.
class ModeBasis {
 public:
  explicit ModeBasis(std::vector<ModeLabel> labels);

  // d orbitals, modes ordered (site0,up),(site0,down),(site1,up),...
  static ModeBasis spin_orbitals(int orbital_count);

  int mode_count() const { return static_cast<int>(labels_.size()); }
  int fock_dim() const { return 1 << mode_count(); }
  const ModeLabel& label(int mode) const { return labels_.at(mode); }
  int index_of(int site, Spin spin) const;  // -1 when absent

 private:
  std::vector<ModeLabel> labels_;
};

struct FockState {
  ModeBasis basis;
  Vector amplitudes;

  FockState(ModeBasis b, Vector amps);
};

struct Bipartition {
  std::vector<int> part_a;
  std::vector<int> part_b;

  // part_a as given (ascending required), part_b = complement ascending
  static Bipartition parts(int mode_count, std::vector<int> part_a);
  static Bipartition split_at(int mode_count, int first_m_modes);
  int mode_count() const {
    return static_cast<int>(part_a.size() + part_b.size());
  }
};

Matrix creation_op(const ModeBasis& basis, int mode);
Matrix annihilation_op(const ModeBasis& basis, int mode);

FockState config_state(const ModeBasis& basis,
                       const std::vector<int>& occupied);

// Basis reordering (part A modes first, anticommutation signs applied) and
// reshape to the A (x) B tensor structure of shape (2^|A|, 2^|B|).
DensityMatrix split_bipartite(const FockState& psi, const Bipartition& parts);
DensityMatrix split_bipartite(const DensityMatrix& rho_full,
                              const Bipartition& parts);

// split_bipartite followed by partial trace over the complement; for a single
// orbital (up, down) the local basis order is (vac, up, down, updown).
DensityMatrix mode_reduced_density(const DensityMatrix& rho_full,
                                   const std::vector<int>& keep_modes);
DensityMatrix mode_reduced_density(const FockState& psi,
                                   const std::vector<int>& keep_modes);

// Total particle number restricted to a mode subset.
Matrix number_op(const ModeBasis& basis, const std::vector<int>& modes);

struct SymmetryOps {
  Matrix number;     // N
  Matrix number_a;   // N restricted to part A
  Matrix number_b;
  Matrix s_z;
  Matrix s_squared;  // (S+S- + S-S+)/2 + Sz^2
  Matrix reflection;
};

// site_swap lists the site pairs exchanged by the reflection (an involution;
// unlisted sites are fixed points).
SymmetryOps symmetry_ops(const ModeBasis& basis, const Bipartition& parts,
                         const std::vector<std::pair<int, int>>& site_swap);

// gamma_{i,j} = <psi| f_j† f_i |psi> (trace = particle number expectation)
Matrix one_particle_rdm(const FockState& psi);
Matrix one_particle_rdm(const DensityMatrix& rho_full, int mode_count);

}  // namespace fermicorr
