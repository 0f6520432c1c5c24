#include "fermicorr/fock.hpp"

#include <algorithm>
#include <bit>

namespace fermicorr {

namespace {

int popcount_below(unsigned n, int mode) {
  return std::popcount(n & ((1u << mode) - 1u));
}

// Jordan-Wigner phase of f_mode(†) acting past the modes below `mode`.
double jw_sign(unsigned n, int mode) {
  return (popcount_below(n, mode) & 1) ? -1.0 : 1.0;
}

}  // namespace

ModeBasis::ModeBasis(std::vector<ModeLabel> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || static_cast<int>(labels_.size()) > kMaxModes)
    throw ValidationError("ModeBasis: mode count must be in [1, 12]");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw ValidationError("ModeBasis: duplicate mode label");
}

ModeBasis ModeBasis::spin_orbitals(int orbital_count) {
  std::vector<ModeLabel> labels;
  for (int s = 0; s < orbital_count; ++s) {
    labels.push_back({s, Spin::Up});
    labels.push_back({s, Spin::Down});
  }
  return ModeBasis(std::move(labels));
}

int ModeBasis::index_of(int site, Spin spin) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i].site == site && labels_[i].spin == spin)
      return static_cast<int>(i);
  return -1;
}

FockState::FockState(ModeBasis b, Vector amps)
    : basis(std::move(b)), amplitudes(std::move(amps)) {
  if (amplitudes.size() != basis.fock_dim())
    throw ValidationError("FockState: amplitude length mismatch");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > kTraceTol)
    throw ValidationError("FockState: norm " + std::to_string(n));
}

Bipartition Bipartition::parts(int mode_count, std::vector<int> part_a) {
  if (part_a.empty() || static_cast<int>(part_a.size()) >= mode_count)
    throw ValidationError("Bipartition: both parts must be non-empty");
  std::vector<bool> in_a(mode_count, false);
  int prev = -1;
  for (int m : part_a) {
    if (m < 0 || m >= mode_count || in_a[m])
      throw ValidationError("Bipartition: invalid mode index");
    if (m <= prev)
      throw ValidationError("Bipartition: part A must be ascending");
    prev = m;
    in_a[m] = true;
  }
  Bipartition p;
  p.part_a = std::move(part_a);
  for (int m = 0; m < mode_count; ++m)
    if (!in_a[m]) p.part_b.push_back(m);
  return p;
}

Bipartition Bipartition::split_at(int mode_count, int first_m_modes) {
  std::vector<int> a(first_m_modes);
  for (int m = 0; m < first_m_modes; ++m) a[m] = m;
  return parts(mode_count, std::move(a));
}

Matrix creation_op(const ModeBasis& basis, int mode) {
  const int d = basis.mode_count();
  if (mode < 0 || mode >= d)
    throw ValidationError("creation_op: mode index out of range");
  const int n = basis.fock_dim();
  Matrix m = Matrix::Zero(n, n);
  for (unsigned ket = 0; ket < static_cast<unsigned>(n); ++ket) {
    if (ket & (1u << mode)) continue;
    m(ket | (1u << mode), ket) = jw_sign(ket, mode);
  }
  return m;
}

Matrix annihilation_op(const ModeBasis& basis, int mode) {
  return creation_op(basis, mode).adjoint();
}

FockState config_state(const ModeBasis& basis,
                       const std::vector<int>& occupied) {
  unsigned bits = 0;
  for (int m : occupied) {
    if (m < 0 || m >= basis.mode_count())
      throw ValidationError("config_state: mode index out of range");
    if (bits & (1u << m))
      throw ValidationError("config_state: duplicate mode index");
    bits |= 1u << m;
  }
  Vector amps = Vector::Zero(basis.fock_dim());
  amps(bits) = Complex(1, 0);
  return FockState(basis, std::move(amps));
}

namespace {

// Maps each Fock index to its tensor index in the (A, B) layout together with
// the fermionic reordering sign: parity of inversions of the new mode
// positions along the occupied modes taken in ascending old order.
struct SplitMap {
  std::vector<int> target;
  std::vector<double> sign;
  int dim_a, dim_b;
};

SplitMap build_split_map(const Bipartition& parts) {
  const int d = parts.mode_count();
  const int na = static_cast<int>(parts.part_a.size());
  const int nb = static_cast<int>(parts.part_b.size());
  std::vector<int> pos(d);
  for (int k = 0; k < na; ++k) pos[parts.part_a[k]] = k;
  for (int k = 0; k < nb; ++k) pos[parts.part_b[k]] = na + k;

  SplitMap map;
  map.dim_a = 1 << na;
  map.dim_b = 1 << nb;
  const int n = 1 << d;
  map.target.resize(n);
  map.sign.resize(n);
  for (unsigned g = 0; g < static_cast<unsigned>(n); ++g) {
    std::vector<int> new_pos;
    for (int m = 0; m < d; ++m)
      if (g & (1u << m)) new_pos.push_back(pos[m]);
    int inversions = 0;
    for (std::size_t i = 0; i < new_pos.size(); ++i)
      for (std::size_t j = i + 1; j < new_pos.size(); ++j)
        if (new_pos[i] > new_pos[j]) ++inversions;
    unsigned ia = 0, ib = 0;
    for (int p : new_pos) {
      if (p < na)
        ia |= 1u << p;
      else
        ib |= 1u << (p - na);
    }
    map.target[g] = static_cast<int>(ia) * map.dim_b + static_cast<int>(ib);
    map.sign[g] = (inversions & 1) ? -1.0 : 1.0;
  }
  return map;
}

void check_full_fock(int dim, const Bipartition& parts, const char* who) {
  if (dim != (1 << parts.mode_count()))
    throw ValidationError(std::string(who) +
                          ": input not on the full Fock space of the parts");
}

}  // namespace

DensityMatrix split_bipartite(const FockState& psi, const Bipartition& parts) {
  check_full_fock(static_cast<int>(psi.amplitudes.size()), parts,
                  "split_bipartite");
  const SplitMap map = build_split_map(parts);
  Vector out = Vector::Zero(psi.amplitudes.size());
  for (int g = 0; g < psi.amplitudes.size(); ++g)
    out(map.target[g]) = map.sign[g] * psi.amplitudes(g);
  return pure_state(TensorShape{map.dim_a, map.dim_b}, out);
}

DensityMatrix split_bipartite(const DensityMatrix& rho_full,
                              const Bipartition& parts) {
  check_full_fock(rho_full.dim(), parts, "split_bipartite");
  const SplitMap map = build_split_map(parts);
  const int n = rho_full.dim();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(map.target[i], map.target[j]) =
          map.sign[i] * map.sign[j] * rho_full.mat()(i, j);
  return DensityMatrix(TensorShape{map.dim_a, map.dim_b}, std::move(out));
}

DensityMatrix mode_reduced_density(const DensityMatrix& rho_full,
                                   const std::vector<int>& keep_modes) {
  if (keep_modes.empty())
    throw ValidationError("mode_reduced_density: empty keep set");
  int d = 0;
  while ((1 << d) < rho_full.dim()) ++d;
  const Bipartition parts = Bipartition::parts(d, keep_modes);
  return partial_trace(split_bipartite(rho_full, parts), {0});
}

DensityMatrix mode_reduced_density(const FockState& psi,
                                   const std::vector<int>& keep_modes) {
  if (keep_modes.empty())
    throw ValidationError("mode_reduced_density: empty keep set");
  const Bipartition parts =
      Bipartition::parts(psi.basis.mode_count(), keep_modes);
  return partial_trace(split_bipartite(psi, parts), {0});
}

Matrix number_op(const ModeBasis& basis, const std::vector<int>& modes) {
  const int n = basis.fock_dim();
  Matrix m = Matrix::Zero(n, n);
  for (unsigned g = 0; g < static_cast<unsigned>(n); ++g) {
    int count = 0;
    for (int mode : modes)
      if (g & (1u << mode)) ++count;
    m(g, g) = static_cast<double>(count);
  }
  return m;
}

SymmetryOps symmetry_ops(const ModeBasis& basis, const Bipartition& parts,
                         const std::vector<std::pair<int, int>>& site_swap) {
  const int d = basis.mode_count();
  std::vector<int> all(d);
  for (int m = 0; m < d; ++m) all[m] = m;

  SymmetryOps ops;
  ops.number = number_op(basis, all);
  ops.number_a = number_op(basis, parts.part_a);
  ops.number_b = number_op(basis, parts.part_b);

  // spin operators need the up/down partner of every mode
  std::vector<int> ups, downs;
  for (int m = 0; m < d; ++m) {
    const ModeLabel& l = basis.label(m);
    const int partner =
        basis.index_of(l.site, l.spin == Spin::Up ? Spin::Down : Spin::Up);
    if (partner < 0)
      throw ValidationError("symmetry_ops: unpaired spin label at site " +
                            std::to_string(l.site));
    if (l.spin == Spin::Up) ups.push_back(m);
  }

  const int n = basis.fock_dim();
  Matrix s_plus = Matrix::Zero(n, n);
  for (int up : ups) {
    const int down = basis.index_of(basis.label(up).site, Spin::Down);
    s_plus += creation_op(basis, up) * annihilation_op(basis, down);
  }
  Matrix s_minus = s_plus.adjoint();
  ops.s_z = Matrix::Zero(n, n);
  for (int up : ups) {
    const int down = basis.index_of(basis.label(up).site, Spin::Down);
    ops.s_z += 0.5 * (number_op(basis, {up}) - number_op(basis, {down}));
  }
  ops.s_squared =
      0.5 * (s_plus * s_minus + s_minus * s_plus) + ops.s_z * ops.s_z;

  // reflection: signed mode permutation induced by the site involution
  std::vector<int> mode_perm(d);
  for (int m = 0; m < d; ++m) {
    const ModeLabel& l = basis.label(m);
    int target_site = l.site;
    for (const auto& [x, y] : site_swap) {
      if (l.site == x) target_site = y;
      if (l.site == y) target_site = x;
    }
    const int target = basis.index_of(target_site, l.spin);
    if (target < 0)
      throw ValidationError("symmetry_ops: site swap leaves the basis");
    mode_perm[m] = target;
  }
  for (int m = 0; m < d; ++m)
    if (mode_perm[mode_perm[m]] != m)
      throw ValidationError("symmetry_ops: site swap is not an involution");

  ops.reflection = Matrix::Zero(n, n);
  for (unsigned g = 0; g < static_cast<unsigned>(n); ++g) {
    std::vector<int> new_pos;
    unsigned image = 0;
    for (int m = 0; m < d; ++m)
      if (g & (1u << m)) {
        new_pos.push_back(mode_perm[m]);
        image |= 1u << mode_perm[m];
      }
    int inversions = 0;
    for (std::size_t i = 0; i < new_pos.size(); ++i)
      for (std::size_t j = i + 1; j < new_pos.size(); ++j)
        if (new_pos[i] > new_pos[j]) ++inversions;
    ops.reflection(image, g) = (inversions & 1) ? -1.0 : 1.0;
  }
  return ops;
}

namespace {

// f_mode |psi> computed directly on amplitudes.
Vector apply_annihilation(const Vector& amps, int mode) {
  Vector out = Vector::Zero(amps.size());
  for (unsigned g = 0; g < static_cast<unsigned>(amps.size()); ++g)
    if (g & (1u << mode)) out(g & ~(1u << mode)) = jw_sign(g, mode) * amps(g);
  return out;
}

}  // namespace

Matrix one_particle_rdm(const FockState& psi) {
  const int d = psi.basis.mode_count();
  std::vector<Vector> lowered;
  lowered.reserve(d);
  for (int m = 0; m < d; ++m)
    lowered.push_back(apply_annihilation(psi.amplitudes, m));
  Matrix gamma(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gamma(i, j) = lowered[j].dot(lowered[i]);
  return raw::hermitize(gamma);
}

Matrix one_particle_rdm(const DensityMatrix& rho_full, int mode_count) {
  if (rho_full.dim() != (1 << mode_count))
    throw ValidationError("one_particle_rdm: dimension/mode count mismatch");
  Matrix gamma(mode_count, mode_count);
  // gamma_{i,j} = Tr[rho f_j† f_i]; entry computed bitwise
  for (int i = 0; i < mode_count; ++i)
    for (int j = 0; j < mode_count; ++j) {
      Complex acc(0, 0);
      for (unsigned g = 0; g < static_cast<unsigned>(rho_full.dim()); ++g) {
        if (!(g & (1u << i))) continue;
        const unsigned mid = g & ~(1u << i);
        if (mid & (1u << j)) continue;
        const unsigned h = mid | (1u << j);
        // <h| f_j† f_i |g> = jw(g,i) * jw(mid,j)
        acc += jw_sign(g, i) * jw_sign(mid, j) * rho_full.mat()(g, h);
      }
      gamma(i, j) = acc;
    }
  return raw::hermitize(gamma);
}

}  // namespace fermicorr
