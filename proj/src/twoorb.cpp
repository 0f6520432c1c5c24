#include "fermicorr/twoorb.hpp"

#include <cmath>
#include <numbers>

#include "fermicorr/fock.hpp"

namespace fermicorr {

namespace {

constexpr int kVac = 0, kUp = 1, kDown = 2, kUpDown = 3;

Vector product16(int a, int b) {
  Vector v = Vector::Zero(16);
  v(a * 4 + b) = Complex(1, 0);
  return v;
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

Vector table_state(int k, TableConvention convention) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (k) {
    case 1:
      return product16(kVac, kVac);
    case 2:
      return product16(kVac, kUp);
    case 3:
      return product16(kUp, kVac);
    case 4:
      return product16(kVac, kDown);
    case 5:
      return product16(kDown, kVac);
    case 6:
      if (convention == TableConvention::Nssr)
        return product16(kUpDown, kVac);
      return inv_sqrt2 *
             (product16(kVac, kUpDown) - product16(kUpDown, kVac));
    case 7:
      if (convention == TableConvention::Nssr)
        return product16(kVac, kUpDown);
      return inv_sqrt2 *
             (product16(kVac, kUpDown) + product16(kUpDown, kVac));
    case 8:
      return inv_sqrt2 * (product16(kUp, kDown) - product16(kDown, kUp));
    case 9:
      return inv_sqrt2 * (product16(kUp, kDown) + product16(kDown, kUp));
    case 10:
      return product16(kUp, kUp);
    case 11:
      return product16(kDown, kDown);
    case 12:
      return product16(kUpDown, kUp);
    case 13:
      return product16(kUp, kUpDown);
    case 14:
      return product16(kUpDown, kDown);
    case 15:
      return product16(kDown, kUpDown);
    case 16:
      return product16(kUpDown, kUpDown);
    default:
      throw ValidationError("table_state: index outside 1..16");
  }
}

DensityMatrix table_mixture(const std::array<double, 16>& w,
                            TableConvention convention) {
  Matrix m = Matrix::Zero(16, 16);
  for (int k = 1; k <= 16; ++k) {
    if (w[k - 1] == 0.0) continue;
    const Vector v = table_state(k, convention);
    m += w[k - 1] * (v * v.adjoint());
  }
  return DensityMatrix(TensorShape{4, 4}, std::move(m));
}

std::vector<Matrix> standard_generators() {
  const ModeBasis basis = ModeBasis::spin_orbitals(2);
  const Bipartition parts = Bipartition::split_at(4, 2);
  const SymmetryOps ops = symmetry_ops(basis, parts, {{0, 1}});
  return {ops.number_a, ops.number_b, ops.s_z, ops.s_squared};
}

DensityMatrix twirl(const DensityMatrix& rho,
                    const std::vector<Matrix>& generators) {
  const int n = rho.dim();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].rows() != n)
      throw ValidationError("twirl: generator dimension mismatch");
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      const double comm =
          (generators[i] * generators[j] - generators[j] * generators[i])
              .cwiseAbs()
              .maxCoeff();
      if (comm > 1e-10)
        throw ValidationError("twirl: generators do not commute");
    }
  }

  // refine the joint eigensector partition generator by generator
  std::vector<std::vector<int>> blocks{std::vector<int>(n)};
  for (int i = 0; i < n; ++i) blocks[0][i] = i;

  Matrix frame = Matrix::Identity(n, n);
  for (const Matrix& g : generators) {
    std::vector<std::vector<int>> next_blocks;
    Matrix next_frame(n, n);
    int col = 0;
    for (const auto& block : blocks) {
      const int b = static_cast<int>(block.size());
      Matrix sub(n, b);
      for (int j = 0; j < b; ++j) sub.col(j) = frame.col(block[j]);
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          raw::hermitize(sub.adjoint() * g * sub));
      const Matrix rotated = sub * es.eigenvectors();
      // split by eigenvalue clusters
      int start = 0;
      for (int j = 1; j <= b; ++j) {
        if (j == b ||
            es.eigenvalues()(j) - es.eigenvalues()(start) > 1e-8) {
          std::vector<int> cluster;
          for (int t = start; t < j; ++t) {
            next_frame.col(col) = rotated.col(t);
            cluster.push_back(col);
            ++col;
          }
          next_blocks.push_back(std::move(cluster));
          start = j;
        }
      }
    }
    blocks = std::move(next_blocks);
    frame = std::move(next_frame);
  }

  Matrix out = Matrix::Zero(n, n);
  for (const auto& block : blocks) {
    Matrix p = Matrix::Zero(n, n);
    for (int j : block) {
      const Vector v = frame.col(j);
      p += v * v.adjoint();
    }
    out += p * rho.mat() * p;
  }
  return DensityMatrix(rho.shape(), std::move(out));
}

SymmetricTwoOrbitalState project_to_table_basis(const DensityMatrix& rho,
                                                TableConvention convention) {
  if (rho.dim() != 16 || rho.shape().factor_count() != 2)
    throw ValidationError("project_to_table_basis: 4x4 bipartite required");
  const ModeBasis basis = ModeBasis::spin_orbitals(2);
  const Bipartition parts = Bipartition::split_at(4, 2);
  const SymmetryOps ops = symmetry_ops(basis, parts, {{0, 1}});
  for (const Matrix* g : {&ops.number, &ops.s_z, &ops.s_squared}) {
    const double comm =
        (rho.mat() * (*g) - (*g) * rho.mat()).cwiseAbs().maxCoeff();
    if (comm > 1e-8)
      throw ValidationError(
          "project_to_table_basis: state breaks the N/Sz/S^2 symmetry (" +
          std::to_string(comm) + ")");
  }
  SymmetricTwoOrbitalState s{{}, convention};
  for (int k = 1; k <= 16; ++k) {
    const Vector v = table_state(k, convention);
    s.p[k - 1] = std::real(v.dot(rho.mat() * v));
    if (s.p[k - 1] < 0.0) {
      if (s.p[k - 1] < -1e-12)
        throw ValidationError("project_to_table_basis: negative weight");
      s.p[k - 1] = 0.0;
    }
  }
  double total = 0.0;
  for (double w : s.p) total += w;
  for (double& w : s.p) w /= total;
  return s;
}

SymmetricTwoOrbitalState convert_convention(const SymmetricTwoOrbitalState& s,
                                            TableConvention target) {
  if (s.convention == target) return s;
  SymmetricTwoOrbitalState out = s;
  out.convention = target;
  const double avg = 0.5 * (s.p[5] + s.p[6]);
  out.p[5] = avg;
  out.p[6] = avg;
  return out;
}

SectorM sector_m(const SymmetricTwoOrbitalState& s) {
  return {s.p[7], s.p[8], s.p[9], s.p[10]};
}

bool sector_m_separable(const SectorM& q) {
  const double half_diff = 0.5 * (q.p8 - q.p9);
  return q.p10 * q.p11 >= half_diff * half_diff - 1e-15;
}

namespace {

// Closest separable weights inside a 4-dimensional block of the sector-M
// form: (c1, c2) the coherent pair (q8/q9 roles), (d1, d2) the diagonal pair
// (q10/q11 roles). Returns the block entanglement and overwrites the weights.
double solve_sector_block(double& c1, double& c2, double& d1, double& d2) {
  const double p8 = c1, p9 = c2, p10 = d1, p11 = d2;
  const double sum = p8 + p9 + p10 + p11;
  if (sum <= 0.0) return 0.0;
  const double half_diff = 0.5 * (p8 - p9);
  if (p10 * p11 >= half_diff * half_diff - 1e-15) return 0.0;  // separable

  const bool swap = p9 > p8;
  const double t = swap ? p9 : p8;
  const double u = swap ? p8 : p9;

  double q_t, q_u, q_d1, q_d2;
  if (std::abs(p10 - p11) <= 1e-10 * std::max(1.0, sum)) {
    q_t = 0.5 * sum;
    if (sum - t <= 1e-14) {
      // pure-singlet limit (u = p10 = p11 = 0): trace normalization pins
      // the remainder
      q_u = sum - q_t;
      q_d1 = q_d2 = 0.0;
    } else {
      q_u = 0.5 * sum * u / (sum - t);
      q_d1 = 0.5 * sum * p10 / (sum - t);
      q_d2 = q_d1;
    }
  } else {
    const double a = sum * sum - (p10 - p11) * (p10 - p11);
    const double b = (t - u) * sum;
    const double c = (p10 + p11) * (p10 + p11) * (t - u) * (t - u) +
                     8.0 * p10 * p11 *
                         (2.0 * p10 * p11 + (p10 + p11) * (t + u) +
                          2.0 * t * u);
    const double root = std::sqrt(std::max(c, 0.0));
    q_t = (a + b + root) / (4.0 * (sum - u));
    q_u = (a - b - root) / (4.0 * (sum - t));
    const double shift = 0.5 * (t + u - q_t - q_u);
    q_d1 = p10 + shift;
    q_d2 = p11 + shift;
  }

  double ent = 0.0;
  const double ps[4] = {t, u, p10, p11};
  double qs[4] = {q_t, q_u, q_d1, q_d2};
  for (int i = 0; i < 4; ++i) {
    if (qs[i] < 0.0) qs[i] = 0.0;
    if (ps[i] > 0.0) {
      if (qs[i] <= 0.0)
        throw ValidationError("sector solution lost support");
      ent += ps[i] * (std::log(ps[i]) - std::log(qs[i]));
    }
  }
  c1 = swap ? qs[1] : qs[0];
  c2 = swap ? qs[0] : qs[1];
  d1 = qs[2];
  d2 = qs[3];
  return ent < 0.0 ? 0.0 : ent;
}

}  // namespace

ClosestSeparableResult closest_separable_nssr(
    const SymmetricTwoOrbitalState& state) {
  if (state.convention != TableConvention::Nssr)
    throw ValidationError(
        "closest_separable_nssr: Nssr basis convention required");
  std::array<double, 16> p = state.p;
  double total = 0.0;
  for (double& w : p) {
    if (w < -1e-12)
      throw ValidationError("closest_separable_nssr: negative weight");
    if (w < 0.0) w = 0.0;
    total += w;
  }
  if (std::abs(total - 1.0) > kTraceTol)
    throw ValidationError("closest_separable_nssr: weights do not sum to 1");
  for (double& w : p) w /= total;

  ClosestSeparableResult result{p, 0.0};
  result.entanglement = solve_sector_block(result.q[7], result.q[8],
                                           result.q[9], result.q[10]);
  return result;
}

double entanglement_pssr(const SymmetricTwoOrbitalState& state) {
  if (state.convention != TableConvention::Pssr)
    throw ValidationError("entanglement_pssr: Pssr basis convention required");
  if (std::abs(state.p[0] - state.p[15]) > 1e-10)
    throw ValidationError(
        "entanglement_pssr: requires a particle-hole symmetrized state "
        "(p1 = p16); use the numerical optimizer instead");

  // sector M is convention independent
  SymmetricTwoOrbitalState nssr = convert_convention(state, TableConvention::Nssr);
  const double e_n = closest_separable_nssr(nssr).entanglement;

  // even-even sector M': coherent pair (p6, p7), diagonal pair (p1, p16)
  double c1 = state.p[5], c2 = state.p[6], d1 = state.p[0], d2 = state.p[15];
  const double e_mprime = solve_sector_block(c1, c2, d1, d2);
  return e_n + e_mprime;
}

SingleOrbitalMeasures single_orbital_measures(const std::array<double, 4>& p) {
  double total = 0.0;
  for (double x : p) {
    if (x < -1e-12)
      throw ValidationError("single_orbital_measures: negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw ValidationError("single_orbital_measures: probabilities sum to " +
                          std::to_string(total));

  const double sum_xlx =
      xlogx(p[0]) + xlogx(p[1]) + xlogx(p[2]) + xlogx(p[3]);
  SingleOrbitalMeasures m{};
  m.entanglement = -sum_xlx;
  m.total = 2.0 * m.entanglement;
  m.entanglement_p = xlogx(p[0] + p[3]) + xlogx(p[1] + p[2]) - sum_xlx;
  m.total_p = m.entanglement_p - sum_xlx;
  m.entanglement_n = xlogx(p[1] + p[2]) - xlogx(p[1]) - xlogx(p[2]);
  m.total_n = m.entanglement_n - sum_xlx;
  return m;
}

double intrinsic_correlation(const std::vector<double>& occupations_desc,
                             int particle_count) {
  if (particle_count < 0 ||
      particle_count > static_cast<int>(occupations_desc.size()))
    throw ValidationError("intrinsic_correlation: invalid particle count");
  for (std::size_t i = 0; i < occupations_desc.size(); ++i) {
    const double x = occupations_desc[i];
    if (x < -1e-10 || x > 1.0 + 1e-10)
      throw ValidationError("intrinsic_correlation: occupation outside [0,1]");
    if (i > 0 && occupations_desc[i] > occupations_desc[i - 1] + 1e-12)
      throw ValidationError("intrinsic_correlation: input not descending");
  }
  double dist = 0.0;
  for (std::size_t i = 0; i < occupations_desc.size(); ++i)
    dist += (static_cast<int>(i) < particle_count)
                ? 1.0 - occupations_desc[i]
                : occupations_desc[i];
  return dist;
}

}  // namespace fermicorr
