#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fermicorr/fock.hpp"
#include "fermicorr/measures.hpp"
#include "fermicorr/rng.hpp"
#include "fermicorr/ssr.hpp"
#include "fermicorr/twoorb.hpp"

using namespace fermicorr;

namespace {

DensityMatrix random_state(Rng& rng, TensorShape shape) {
  return DensityMatrix(shape, random_positive(rng, shape.total_dim()));
}

}  // namespace

TEST_CASE("sector projectors are orthogonal and complete") {
  for (int dim : {2, 4}) {
    for (SsrKind kind : {SsrKind::Parity, SsrKind::Number}) {
      const SectorDecomposition dec =
          sector_projectors(local_fock_number(dim), kind);
      Matrix sum = Matrix::Zero(dim, dim);
      for (std::size_t i = 0; i < dec.projectors.size(); ++i) {
        sum += dec.projectors[i];
        for (std::size_t j = 0; j < dec.projectors.size(); ++j) {
          const Matrix prod = dec.projectors[i] * dec.projectors[j];
          const Matrix want = i == j ? dec.projectors[i]
                                     : Matrix::Zero(dim, dim).eval();
          CHECK((prod - want).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
      CHECK((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  Matrix bad = 0.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(sector_projectors(bad, SsrKind::Number), ValidationError);
}

TEST_CASE("ssr_project: fixed points, idempotence, trace") {
  Rng rng(3);
  const DensityMatrix rho = random_state(rng, TensorShape{4, 4});

  const DensityMatrix none = ssr_project(rho, SsrKind::None);
  CHECK((none.mat() - rho.mat()).cwiseAbs().maxCoeff() == 0.0);

  for (SsrKind kind : {SsrKind::Parity, SsrKind::Number}) {
    const DensityMatrix p1 = ssr_project(rho, kind);
    const DensityMatrix p2 = ssr_project(p1, kind);
    CHECK((p2.mat() - p1.mat()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(p1.mat().trace().real() - 1.0) < 1e-12);
    CHECK(raw::min_eigenvalue(p1.mat()) > -1e-12);
  }
}

TEST_CASE("ssr_project: two-mode superposition becomes a classical mixture") {
  // (|0>_A |0>_B + |0>_A |1>_B)/sqrt(2) on two single-mode factors
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0 / std::numbers::sqrt2;
  psi(1) = 1.0 / std::numbers::sqrt2;
  const DensityMatrix rho = pure_state(TensorShape{2, 2}, psi);
  const DensityMatrix proj = ssr_project(rho, SsrKind::Parity);
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = 0.5;
  want(1, 1) = 0.5;
  CHECK((proj.mat() - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("ssr_project kills exactly the off-sector coherences") {
  Rng rng(5);
  const DensityMatrix rho = random_state(rng, TensorShape{4, 4});
  const DensityMatrix pn = ssr_project(rho, SsrKind::Number);
  const DensityMatrix pp = ssr_project(rho, SsrKind::Parity);
  const int local_n[4] = {0, 1, 1, 2};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = 0; b2 < 4; ++b2) {
          const Complex before = rho.mat()(a * 4 + b, a2 * 4 + b2);
          const Complex after_n = pn.mat()(a * 4 + b, a2 * 4 + b2);
          const Complex after_p = pp.mat()(a * 4 + b, a2 * 4 + b2);
          const bool same_n =
              local_n[a] == local_n[a2] && local_n[b] == local_n[b2];
          const bool same_p = (local_n[a] % 2) == (local_n[a2] % 2) &&
                              (local_n[b] % 2) == (local_n[b2] % 2);
          CHECK(std::abs(after_n - (same_n ? before : Complex(0, 0))) < 1e-14);
          CHECK(std::abs(after_p - (same_p ? before : Complex(0, 0))) < 1e-14);
        }
}

TEST_CASE("ssr_project preserves sector-block-diagonal expectation values") {
  Rng rng(9);
  const DensityMatrix rho = random_state(rng, TensorShape{4, 4});
  const DensityMatrix proj = ssr_project(rho, SsrKind::Number);
  const SectorDecomposition dec =
      sector_projectors(local_fock_number(4), SsrKind::Number);

  // random observable obeying the block structure on both factors
  Matrix raw_obs(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) raw_obs(i, j) = rng.complex_normal();
  raw_obs = raw::hermitize(raw_obs);
  Matrix obs = Matrix::Zero(16, 16);
  for (const Matrix& pa : dec.projectors)
    for (const Matrix& pb : dec.projectors) {
      const Matrix p = raw::kron(pa, pb);
      obs += p * raw_obs * p;
    }
  const Complex before = (rho.mat() * obs).trace();
  const Complex after = (proj.mat() * obs).trace();
  CHECK(std::abs(before - after) < 1e-12);
}

TEST_CASE("ssr_project commutes with local sector-preserving unitaries") {
  Rng rng(15);
  const DensityMatrix rho = random_state(rng, TensorShape{4, 4});
  // build a local unitary block-diagonal in the number sectors
  const SectorDecomposition dec =
      sector_projectors(local_fock_number(4), SsrKind::Number);
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(3, 3) = std::exp(Complex(0, 0.7));
  const Matrix u11 = random_unitary(rng, 2);
  u.block(1, 1, 2, 2) = u11;
  const Matrix big = raw::kron(u, u.conjugate());

  const DensityMatrix rotated(rho.shape(), big * rho.mat() * big.adjoint());
  const Matrix lhs = ssr_project(rotated, SsrKind::Number).mat();
  const Matrix rhs =
      big * ssr_project(rho, SsrKind::Number).mat() * big.adjoint();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ssr_measure: product states carry no correlation") {
  Rng rng(27);
  const Matrix a = random_positive(rng, 4);
  const Matrix b = random_positive(rng, 4);
  const DensityMatrix prod(TensorShape{4, 4}, raw::kron(a, b));
  SsrMeasureOptions opts;
  opts.sep.term_count = 12;
  opts.sep.restarts = 2;
  for (SsrKind kind : {SsrKind::None, SsrKind::Parity, SsrKind::Number}) {
    CHECK(ssr_measure(prod, kind, CorrelationMeasure::Total, opts) < 1e-9);
    CHECK(ssr_measure(prod, kind, CorrelationMeasure::Entanglement, opts) <
          1e-6);
    CHECK(ssr_measure(prod, kind, CorrelationMeasure::Classical, opts) < 1e-5);
  }
}

TEST_CASE("ssr_measure: singlet under N-SSR keeps log 2 entanglement") {
  const std::array<double, 16> w = [] {
    std::array<double, 16> x{};
    x[7] = 1.0;  // pure |Psi_8>
    return x;
  }();
  const DensityMatrix singlet = table_mixture(w, TableConvention::Nssr);
  const double e_none =
      ssr_measure(singlet, SsrKind::None, CorrelationMeasure::Entanglement);
  const double e_n =
      ssr_measure(singlet, SsrKind::Number, CorrelationMeasure::Entanglement);
  CHECK(e_none == doctest::Approx(std::log(2.0)).epsilon(1e-5));
  CHECK(e_n == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("ssr_measure: N-SSR kills the doubly-occupied coherence") {
  // (|vac,updown> + |updown,vac>)/sqrt(2)
  Vector psi = Vector::Zero(16);
  psi(0 * 4 + 3) = 1.0 / std::numbers::sqrt2;
  psi(3 * 4 + 0) = 1.0 / std::numbers::sqrt2;
  const DensityMatrix rho = pure_state(TensorShape{4, 4}, psi);
  const double e_n =
      ssr_measure(rho, SsrKind::Number, CorrelationMeasure::Entanglement);
  CHECK(e_n < 1e-9);
}

TEST_CASE("entanglement is monotone in the SSR hierarchy") {
  Rng rng(51);
  SsrMeasureOptions opts;
  opts.sep.restarts = 4;
  opts.sep.term_count = 24;
  for (int trial = 0; trial < 3; ++trial) {
    // random symmetric-ish pure state with mixed sectors
    Vector psi(16);
    for (int i = 0; i < 16; ++i) psi(i) = rng.complex_normal();
    psi /= psi.norm();
    const DensityMatrix rho = pure_state(TensorShape{4, 4}, psi);
    const double e_none =
        ssr_measure(rho, SsrKind::None, CorrelationMeasure::Entanglement, opts);
    const double e_p = ssr_measure(rho, SsrKind::Parity,
                                   CorrelationMeasure::Entanglement, opts);
    const double e_n = ssr_measure(rho, SsrKind::Number,
                                   CorrelationMeasure::Entanglement, opts);
    CHECK(e_n <= e_p + 1e-5);
    CHECK(e_p <= e_none + 1e-5);
  }
}
