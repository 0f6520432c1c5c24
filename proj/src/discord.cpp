#include "fermicorr/discord.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fermicorr/measures.hpp"
#include "fermicorr/parallel.hpp"
#include "fermicorr/rng.hpp"

namespace fermicorr {

LocalBases::LocalBases(Matrix a, Matrix b)
    : basis_a(std::move(a)), basis_b(std::move(b)) {
  for (const Matrix* u : {&basis_a, &basis_b}) {
    if (u->rows() != u->cols())
      throw ValidationError("LocalBases: basis matrix not square");
    const double dev =
        (u->adjoint() * (*u) - Matrix::Identity(u->rows(), u->cols()))
            .cwiseAbs()
            .maxCoeff();
    if (dev > 1e-10)
      throw ValidationError("LocalBases: not unitary, deviation " +
                            std::to_string(dev));
  }
}

DensityMatrix classical_state(const DensityMatrix& rho,
                              const LocalBases& bases) {
  if (rho.shape().factor_count() != 2)
    throw ValidationError("classical_state: bipartite shape required");
  const int da = rho.shape().dims[0];
  const int db = rho.shape().dims[1];
  if (bases.basis_a.rows() != da || bases.basis_b.rows() != db)
    throw ValidationError("classical_state: basis dimension mismatch");

  Matrix sigma = Matrix::Zero(rho.dim(), rho.dim());
  Vector v(rho.dim());
  double total = 0.0;
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) {
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
          v(i * db + j) = bases.basis_a(i, a) * bases.basis_b(j, b);
      const double mu = std::real(v.dot(rho.mat() * v));
      if (mu > 0) {
        sigma.noalias() += mu * (v * v.adjoint());
        total += mu;
      }
    }
  sigma /= total;  // absorbs eigenvalue noise clamped away above
  return DensityMatrix(rho.shape(), std::move(sigma));
}

namespace {

double discord_of(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return raw::relative_entropy(rho.mat(), sigma.mat());
}

Matrix exp_i_eta_h(const Matrix& h, double eta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (int k = 0; k < h.rows(); ++k)
    phases(k) = std::exp(Complex(0, eta * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

DiscordResult discord_direct(const DensityMatrix& rho, long samples,
                             std::uint64_t seed) {
  if (samples < 1) throw ValidationError("discord_direct: samples < 1");
  const int da = rho.shape().dims[0];
  const int db = rho.shape().dims[1];
  Rng rng(seed);

  double best = std::numeric_limits<double>::infinity();
  Matrix best_a, best_b;
  for (long n = 0; n < samples; ++n) {
    const Matrix ua = random_unitary(rng, da);
    const Matrix ub = random_unitary(rng, db);
    const DensityMatrix sigma = classical_state(rho, LocalBases(ua, ub));
    const double d = discord_of(rho, sigma);
    if (d < best) {
      best = d;
      best_a = ua;
      best_b = ub;
    }
  }
  LocalBases bases(best_a, best_b);
  return {best, classical_state(rho, bases), bases, samples};
}

DiscordResult discord_mcmc(const DensityMatrix& rho,
                           const McmcOptions& options) {
  if (options.steps < 1 || options.eta <= 0 || options.beta <= 0)
    throw ValidationError("discord_mcmc: invalid options");
  const int da = rho.shape().dims[0];
  const int db = rho.shape().dims[1];
  const int restarts = std::max(1, options.restarts);

  struct Walk {
    double best;
    Matrix ua, ub;
  };
  std::vector<Walk> results(restarts);

  parallel_for(restarts, options.jobs, [&](long w) {
    Rng rng = Rng::derive(options.seed, static_cast<std::uint64_t>(w));
    Matrix ua = random_unitary(rng, da);
    Matrix ub = random_unitary(rng, db);
    double current = discord_of(rho, classical_state(rho, LocalBases(ua, ub)));
    Walk walk{current, ua, ub};
    for (long n = 0; n < options.steps; ++n) {
      const Matrix ua2 =
          exp_i_eta_h(random_hermitian_unit(rng, da), options.eta) * ua;
      const Matrix ub2 =
          exp_i_eta_h(random_hermitian_unit(rng, db), options.eta) * ub;
      const double cand =
          discord_of(rho, classical_state(rho, LocalBases(ua2, ub2)));
      bool accept = cand < current;
      if (!accept) accept = rng.u01() < std::exp(-options.beta * (cand - current));
      if (accept) {
        ua = ua2;
        ub = ub2;
        current = cand;
        if (current < walk.best) {
          walk.best = current;
          walk.ua = ua;
          walk.ub = ub;
        }
      }
    }
    results[w] = std::move(walk);
  });

  int winner = 0;
  for (int w = 1; w < restarts; ++w)
    if (results[w].best < results[winner].best) winner = w;
  LocalBases bases(results[winner].ua, results[winner].ub);
  return {results[winner].best, classical_state(rho, bases), bases,
          options.steps * restarts};
}

DensityMatrix werner_discord_family(double c) {
  if (c < 0.0 || c > 1.0)
    throw ValidationError("werner_discord_family: c outside [0, 1]");
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0 / std::numbers::sqrt2;
  psi(3) = -1.0 / std::numbers::sqrt2;
  Matrix m = (1.0 - c) * Matrix::Identity(4, 4) / 4.0 +
             c * (psi * psi.adjoint());
  return DensityMatrix(TensorShape{2, 2}, std::move(m));
}

double discord_werner_closed_form(double c) {
  if (c < 0.0 || c > 1.0)
    throw ValidationError("discord_werner_closed_form: c outside [0, 1]");
  auto xlx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  return xlx(1.0 - c) / 4.0 - xlx(1.0 + c) / 2.0 + xlx(1.0 + 3.0 * c) / 4.0;
}

double classical_correlation_discord(const DiscordResult& result,
                                     LogBase base) {
  return mutual_information(result.closest_classical, base);
}

}  // namespace fermicorr
