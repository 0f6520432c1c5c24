#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fermicorr/fock.hpp"
#include "fermicorr/hubbard.hpp"
#include "fermicorr/measures.hpp"
#include "fermicorr/rng.hpp"
#include "fermicorr/sep_opt.hpp"
#include "fermicorr/twoorb.hpp"

using namespace fermicorr;

namespace {

std::array<double, 16> weights_of(std::initializer_list<std::pair<int, double>>
                                      entries) {
  std::array<double, 16> w{};
  for (const auto& [k, v] : entries) w[k - 1] = v;
  return w;
}

std::array<double, 16> random_simplex16(Rng& rng) {
  std::array<double, 16> w{};
  double total = 0.0;
  for (double& x : w) {
    const double u = rng.u01();
    x = -std::log(u);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

SectorM random_sector_m(Rng& rng) {
  double w[4], total = 0.0;
  for (double& x : w) {
    x = -std::log(rng.u01());
    total += x;
  }
  return {w[0] / total, w[1] / total, w[2] / total, w[3] / total};
}

DensityMatrix sector_m_state(const SectorM& q) {
  return table_mixture(
      weights_of({{8, q.p8}, {9, q.p9}, {10, q.p10}, {11, q.p11}}),
      TableConvention::Nssr);
}

}  // namespace

TEST_CASE("table states are orthonormal and carry the right quantum numbers") {
  for (TableConvention conv :
       {TableConvention::Nssr, TableConvention::Pssr}) {
    for (int i = 1; i <= 16; ++i)
      for (int j = 1; j <= 16; ++j) {
        const Complex ip = table_state(i, conv).dot(table_state(j, conv));
        CHECK(std::abs(ip - (i == j ? Complex(1, 0) : Complex(0, 0))) <
              1e-13);
      }
  }
  const std::vector<Matrix> gens = standard_generators();
  // |Psi_10> = up,up: Sz = 1, S^2 = 2;  |Psi_8>: singlet
  const Vector triplet = table_state(10, TableConvention::Nssr);
  CHECK((gens[2] * triplet - triplet).norm() < 1e-13);
  CHECK((gens[3] * triplet - 2.0 * triplet).norm() < 1e-13);
  const Vector singlet = table_state(8, TableConvention::Nssr);
  CHECK((gens[3] * singlet).norm() < 1e-13);
}

TEST_CASE("twirl: fixed point, sector orthogonality, S^2 coherence removal") {
  const std::vector<Matrix> gens = standard_generators();
  Rng rng(3);

  const DensityMatrix sym = table_mixture(random_simplex16(rng),
                                          TableConvention::Nssr);
  const DensityMatrix twirled = twirl(sym, gens);
  CHECK((twirled.mat() - sym.mat()).cwiseAbs().maxCoeff() < 1e-12);

  // coherence between different (N_A, N_B) sectors is removed
  const Vector psi2 = table_state(2, TableConvention::Nssr);
  const Vector psi3 = table_state(3, TableConvention::Nssr);
  Vector mix = (psi2 + psi3) / std::numbers::sqrt2;
  const DensityMatrix coherent = pure_state(TensorShape{4, 4}, mix);
  const DensityMatrix after = twirl(coherent, gens);
  CHECK(std::abs(after.mat()(1, 4)) < 1e-13);  // vac,up x up,vac coherence

  // coherence b between Psi8 and Psi9 is removed by the S^2 generator
  const Vector psi8 = table_state(8, TableConvention::Nssr);
  const Vector psi9 = table_state(9, TableConvention::Nssr);
  Matrix with_b = 0.5 * (psi8 * psi8.adjoint() + psi9 * psi9.adjoint()) +
                  0.2 * (psi8 * psi9.adjoint() + psi9 * psi8.adjoint());
  const DensityMatrix rho_b(TensorShape{4, 4}, with_b);
  const DensityMatrix no_b = twirl(rho_b, gens);
  CHECK(std::abs((psi8.adjoint() * no_b.mat() * psi9)(0, 0)) < 1e-12);
  CHECK(std::real((psi8.adjoint() * no_b.mat() * psi8)(0, 0)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // non-commuting generators are rejected
  Matrix x = Matrix::Zero(16, 16), z = Matrix::Zero(16, 16);
  x(0, 1) = x(1, 0) = 1.0;
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  CHECK_THROWS_AS(twirl(sym, {x, z}), ValidationError);
}

TEST_CASE("twirl preserves separability of symmetric separable states") {
  // random separable states with the (N_A, N_B, Sz) symmetry plus a complex
  // Psi8/Psi9 coherence; twirling in the S^2 generator keeps them separable
  Rng rng(5);
  const std::vector<Matrix> gens = standard_generators();
  const Vector psi8 = table_state(8, TableConvention::Nssr);
  const Vector psi9 = table_state(9, TableConvention::Nssr);
  int checked = 0;
  for (int trial = 0; trial < 600; ++trial) {
    std::array<double, 16> w = random_simplex16(rng);
    const SectorM m{w[7], w[8], w[9], w[10]};
    // |b| < sqrt(p8 p9) keeps the state positive
    const double b_abs = 0.98 * std::sqrt(m.p8 * m.p9) * rng.u01();
    const double phase = 2.0 * M_PI * rng.u01();
    const Complex b = b_abs * std::exp(Complex(0, phase));
    Matrix rho = table_mixture(w, TableConvention::Nssr).mat();
    rho += b * (psi8 * psi9.adjoint()) + std::conj(b) * (psi9 * psi8.adjoint());
    const DensityMatrix state(TensorShape{4, 4}, rho);
    if (!is_ppt(state).ppt) continue;  // keep only the separable family
    const DensityMatrix twirled = twirl(state, gens);
    CHECK(is_ppt(twirled).ppt);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("project_to_table_basis: pure states and the dimer ground state") {
  const std::array<double, 16> pure8 = weights_of({{8, 1.0}});
  const SymmetricTwoOrbitalState s =
      project_to_table_basis(table_mixture(pure8, TableConvention::Nssr));
  CHECK(s.p[7] == doctest::Approx(1.0).epsilon(1e-12));

  // Hubbard ground state split L:R carries a^2 on Psi8 and b^2/2 on Psi6/7
  const double t = 0.7;
  const DimerSpectrum spec = closed_form_spectrum(t);
  const DensityMatrix ground =
      split_bipartite(gibbs_state(DimerParams::from_t(t, 0.0)),
                      Bipartition::split_at(4, 2));
  const SymmetricTwoOrbitalState g = project_to_table_basis(ground);
  CHECK(g.p[7] == doctest::Approx(spec.a * spec.a).epsilon(1e-10));
  CHECK(g.p[5] == doctest::Approx(spec.b * spec.b / 2.0).epsilon(1e-10));
  CHECK(g.p[6] == doctest::Approx(spec.b * spec.b / 2.0).epsilon(1e-10));

  // in the Pssr convention the reflection-even state takes all of b^2
  const SymmetricTwoOrbitalState gp =
      project_to_table_basis(ground, TableConvention::Pssr);
  CHECK(gp.p[6] == doctest::Approx(spec.b * spec.b).epsilon(1e-10));
  CHECK(gp.p[5] < 1e-12);

  // spin-flip symmetry of singlet-derived states: p10 = p11
  CHECK(g.p[9] == doctest::Approx(g.p[10]).epsilon(1e-12));

  // states breaking the symmetry are rejected
  Vector skew = Vector::Zero(16);
  skew(0) = std::sqrt(0.5);
  skew(1) = std::sqrt(0.5);
  CHECK_THROWS_AS(project_to_table_basis(pure_state(TensorShape{4, 4}, skew)),
                  ValidationError);
}

TEST_CASE("separability condition on sector M") {
  CHECK_FALSE(sector_m_separable({1.0, 0.0, 0.0, 0.0}));
  CHECK(sector_m_separable({0.25, 0.25, 0.25, 0.25}));

  // agreement with the PPT test on random sector-M states
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const SectorM q = random_sector_m(rng);
    CHECK(sector_m_separable(q) == is_ppt(sector_m_state(q)).ppt);
  }
}

TEST_CASE("closest_separable_nssr: pure singlet and boundary cases") {
  const auto singlet = SymmetricTwoOrbitalState{weights_of({{8, 1.0}}),
                                                TableConvention::Nssr};
  const ClosestSeparableResult res = closest_separable_nssr(singlet);
  CHECK(res.entanglement == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(res.q[7] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.q[8] == doctest::Approx(0.5).epsilon(1e-12));

  // boundary-separable state has E = 0 and q = p
  const auto boundary = SymmetricTwoOrbitalState{
      weights_of({{8, 0.5}, {10, 0.25}, {11, 0.25}}), TableConvention::Nssr};
  const ClosestSeparableResult bres = closest_separable_nssr(boundary);
  CHECK(bres.entanglement == doctest::Approx(0.0));
  for (int k = 0; k < 16; ++k)
    CHECK(bres.q[k] == doctest::Approx(boundary.p[k]).epsilon(1e-12));
}

TEST_CASE("closest_separable_nssr: solution invariants on random states") {
  Rng rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const SymmetricTwoOrbitalState s{random_simplex16(rng),
                                     TableConvention::Nssr};
    const ClosestSeparableResult res = closest_separable_nssr(s);

    // weights off sector M are untouched
    for (int k : {0, 1, 2, 3, 4, 5, 6, 11, 12, 13, 14, 15})
      CHECK(res.q[k] == doctest::Approx(s.p[k]).epsilon(1e-12));

    // sector trace preservation
    const SectorM qp = sector_m({res.q, TableConvention::Nssr});
    const SectorM pp = sector_m(s);
    CHECK(qp.trace() == doctest::Approx(pp.trace()).epsilon(1e-11));

    // output sits on or inside the separability boundary
    CHECK(sector_m_separable(qp));

    // closed-form value equals the direct relative entropy of the mixtures
    const DensityMatrix rho = table_mixture(s.p, TableConvention::Nssr);
    const DensityMatrix sigma = table_mixture(res.q, TableConvention::Nssr);
    CHECK(res.entanglement ==
          doctest::Approx(relative_entropy(rho, sigma)).epsilon(1e-9));
  }
}

TEST_CASE("special case p10 = p11 agrees with the general solution") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    double w[3], total = 0.0;
    for (double& x : w) {
      x = -std::log(rng.u01());
      total += x;
    }
    const double p8 = w[0] / total, p9 = w[1] / total,
                 p10 = 0.5 * w[2] / total;
    const auto base = SymmetricTwoOrbitalState{
        weights_of({{8, p8}, {9, p9}, {10, p10}, {11, p10}}),
        TableConvention::Nssr};
    const ClosestSeparableResult res = closest_separable_nssr(base);

    // the closed form of the relative entropy in the special case
    const SectorM m = sector_m(base);
    if (!sector_m_separable(m)) {
      const double t = std::max(p8, p9);
      const double sum = m.trace();
      const double want = t * std::log(t) +
                          (sum - t) * std::log(sum - t) -
                          sum * std::log(sum / 2.0);
      CHECK(res.entanglement == doctest::Approx(want).epsilon(1e-10));
    }

    // perturb into the general branch and back: continuity at p10 = p11
    auto nudged = base;
    nudged.p[9] += 1e-9;
    nudged.p[10] -= 1e-9;
    const ClosestSeparableResult res2 = closest_separable_nssr(nudged);
    CHECK(std::abs(res2.entanglement - res.entanglement) < 1e-6);
  }
}

TEST_CASE("closed form matches the numerical optimizer") {
  Rng rng(13);
  AltOptions opt;
  opt.restarts = 6;
  opt.seed = 29;
  opt.term_count = 24;
  int done = 0;
  for (int trial = 0; trial < 40 && done < 6; ++trial) {
    const SymmetricTwoOrbitalState s{random_simplex16(rng),
                                     TableConvention::Nssr};
    if (sector_m_separable(sector_m(s))) continue;
    ++done;
    const ClosestSeparableResult closed = closest_separable_nssr(s);
    const DensityMatrix rho = table_mixture(s.p, TableConvention::Nssr);
    const OptReport numeric = closest_separable_alternating(rho, opt);
    CHECK(numeric.value ==
          doctest::Approx(closed.entanglement).epsilon(1e-6));
  }
  CHECK(done == 6);
}

TEST_CASE("entanglement_pssr: sector M' contributions") {
  // empty M' sector: E^P = E^N
  const auto no_mprime = SymmetricTwoOrbitalState{
      weights_of({{8, 0.6}, {9, 0.1}, {10, 0.15}, {11, 0.15}}),
      TableConvention::Pssr};
  const double e_p = entanglement_pssr(no_mprime);
  const double e_n =
      closest_separable_nssr(
          convert_convention(no_mprime, TableConvention::Nssr))
          .entanglement;
  CHECK(e_p == doctest::Approx(e_n).epsilon(1e-12));

  // pure (|vac,dd> - |dd,vac>)/sqrt(2): E^P = log 2 while E^N = 0
  const auto odd_pair = SymmetricTwoOrbitalState{weights_of({{6, 1.0}}),
                                                 TableConvention::Pssr};
  CHECK(entanglement_pssr(odd_pair) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(closest_separable_nssr(
            convert_convention(odd_pair, TableConvention::Nssr))
            .entanglement == doctest::Approx(0.0));

  // separable M' block contributes nothing even with p6 != p7
  const auto sep_mprime = SymmetricTwoOrbitalState{
      weights_of({{1, 0.3}, {6, 0.25}, {7, 0.15}, {16, 0.3}}),
      TableConvention::Pssr};
  CHECK(entanglement_pssr(sep_mprime) == doctest::Approx(0.0));

  // particle-hole validity condition is enforced
  const auto asym = SymmetricTwoOrbitalState{
      weights_of({{1, 0.4}, {6, 0.3}, {7, 0.3}}), TableConvention::Pssr};
  CHECK_THROWS_AS(entanglement_pssr(asym), ValidationError);
}

TEST_CASE("entanglement_pssr against the numerical optimizer") {
  Rng rng(17);
  AltOptions opt;
  opt.restarts = 6;
  opt.seed = 31;
  opt.term_count = 24;
  int done = 0;
  for (int trial = 0; trial < 20 && done < 3; ++trial) {
    std::array<double, 16> w = random_simplex16(rng);
    const double ph = 0.5 * (w[0] + w[15]);
    w[0] = ph;
    w[15] = ph;  // particle-hole symmetrize
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    const SymmetricTwoOrbitalState s{w, TableConvention::Pssr};
    const DensityMatrix rho = table_mixture(w, TableConvention::Pssr);
    const OptReport numeric = closest_separable_alternating(rho, opt);
    CHECK(numeric.value ==
          doctest::Approx(entanglement_pssr(s)).epsilon(1e-5));
    ++done;
  }
  CHECK(done == 3);
}

TEST_CASE("Hubbard ground state: E^P >= E^N along the curve") {
  for (double r : {0.5, 1.0, 2.0}) {
    const DensityMatrix ground =
        split_bipartite(gibbs_state(DimerParams::from_r(r, 0.0)),
                        Bipartition::split_at(4, 2));
    const DensityMatrix rho_p = ssr_project(ground, SsrKind::Parity);
    const DensityMatrix rho_n = ssr_project(ground, SsrKind::Number);
    const double e_p = entanglement_pssr(
        project_to_table_basis(rho_p, TableConvention::Pssr));
    const double e_n =
        closest_separable_nssr(project_to_table_basis(rho_n)).entanglement;
    CHECK(e_p >= e_n - 1e-12);
  }
}

TEST_CASE("single-orbital measures: spot values and identities") {
  const SingleOrbitalMeasures zero =
      single_orbital_measures({1.0, 0.0, 0.0, 0.0});
  CHECK(zero.total == doctest::Approx(0.0));
  CHECK(zero.entanglement_n == doctest::Approx(0.0));

  const SingleOrbitalMeasures half =
      single_orbital_measures({0.5, 0.0, 0.0, 0.5});
  CHECK(half.entanglement == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(half.entanglement_p == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(half.entanglement_n == doctest::Approx(0.0));

  const SingleOrbitalMeasures quarter =
      single_orbital_measures({0.25, 0.25, 0.25, 0.25});
  CHECK(quarter.entanglement ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(quarter.entanglement_p ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(quarter.entanglement_n ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

  Rng rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    double w[4], total = 0.0;
    for (double& x : w) {
      x = -std::log(rng.u01());
      total += x;
    }
    const SingleOrbitalMeasures m = single_orbital_measures(
        {w[0] / total, w[1] / total, w[2] / total, w[3] / total});
    CHECK(std::abs(m.total - 2.0 * m.entanglement) < 1e-10);
    CHECK(std::abs(m.total_p - (m.entanglement_p + m.entanglement)) < 1e-10);
    CHECK(std::abs(m.total_n - (m.entanglement_n + m.entanglement)) < 1e-10);
  }
  CHECK_THROWS_AS(single_orbital_measures({0.5, 0.5, 0.5, -0.5}),
                  ValidationError);
}

TEST_CASE("intrinsic correlation") {
  CHECK(intrinsic_correlation({1.0, 1.0, 0.0, 0.0}, 2) ==
        doctest::Approx(0.0));
  CHECK(intrinsic_correlation({0.9, 0.9, 0.1, 0.1}, 2) ==
        doctest::Approx(0.4).epsilon(1e-14));
  CHECK_THROWS_AS(intrinsic_correlation({0.1, 0.9}, 1), ValidationError);
}

TEST_CASE("singlet totals: reduced two-orbital states inherit the symmetry") {
  // random three-orbital singlets (S^2 = 0, N fixed): every two-orbital
  // reduced state commutes with its local S^2 and Sz
  Rng rng(23);
  const ModeBasis basis = ModeBasis::spin_orbitals(3);
  const Bipartition pair_rest = Bipartition::parts(6, {0, 1, 2, 3});
  const SymmetryOps ops = symmetry_ops(basis, pair_rest, {});

  // the {S^2 = 0, N = 2} subspace is the kernel of a positive combination
  const Matrix n_shift = ops.number - 2.0 * Matrix::Identity(64, 64);
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      raw::hermitize(ops.s_squared + 50.0 * n_shift * n_shift));
  std::vector<Vector> singlet_basis;
  for (int k = 0; k < 64; ++k)
    if (std::abs(es.eigenvalues()(k)) < 1e-8)
      singlet_basis.push_back(es.eigenvectors().col(k));
  REQUIRE(singlet_basis.size() > 1);

  const std::vector<Matrix> pair_gens = standard_generators();
  for (int trial = 0; trial < 20; ++trial) {
    Vector amps = Vector::Zero(64);
    for (const Vector& v : singlet_basis) amps += rng.complex_normal() * v;
    amps /= amps.norm();
    const FockState psi(basis, amps);
    for (const std::vector<int>& keep :
         {std::vector<int>{0, 1, 2, 3}, std::vector<int>{0, 1, 4, 5},
          std::vector<int>{2, 3, 4, 5}}) {
      const DensityMatrix red_pair = mode_reduced_density(psi, keep);
      // shape (16): regroup to (4,4) via the contiguous split of the pair
      const DensityMatrix pair44 =
          split_bipartite(DensityMatrix(TensorShape{16}, red_pair.mat()),
                          Bipartition::split_at(4, 2));
      for (const Matrix& g : {pair_gens[2], pair_gens[3]}) {
        const double comm =
            (pair44.mat() * g - g * pair44.mat()).cwiseAbs().maxCoeff();
        CHECK(comm < 1e-10);
      }
      // and the spin-flip condition p10 = p11
      const SymmetricTwoOrbitalState s = project_to_table_basis(pair44);
      CHECK(std::abs(s.p[9] - s.p[10]) < 1e-10);
    }
  }
}
