#include "fermicorr/sep_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "fermicorr/parallel.hpp"
#include "fermicorr/rng.hpp"

namespace fermicorr {

Matrix ProductDecomposition::assemble() const {
  Matrix sum = Matrix::Zero(factors_a[0].rows() * factors_b[0].rows(),
                            factors_a[0].rows() * factors_b[0].rows());
  for (std::size_t i = 0; i < factors_a.size(); ++i)
    sum += raw::kron(factors_a[i], factors_b[i]);
  return sum;
}

namespace {

constexpr double kFloor = 1e-16;

Matrix psd_clip(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(m));
  RealVector e = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

// Frechet derivative of the matrix log at sigma, applied to rho. The kernel
// is symmetric, so this equals the adjoint map needed for gradients of
// Tr[rho log sigma].
Matrix dlog_apply(const Matrix& sigma, const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(sigma));
  const int n = static_cast<int>(sigma.rows());
  RealVector s = es.eigenvalues().cwiseMax(kFloor);
  const Matrix m = es.eigenvectors().adjoint() * rho * es.eigenvectors();
  Matrix scaled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double si = s(i), sj = s(j);
      double phi;
      if (std::abs(si - sj) < 1e-13 * std::max({si, sj, 1e-30}))
        phi = 2.0 / (si + sj);
      else
        phi = (std::log(si) - std::log(sj)) / (si - sj);
      scaled(i, j) = m(i, j) * phi;
    }
  return es.eigenvectors() * scaled * es.eigenvectors().adjoint();
}

double tr_rho_log_rho(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(rho),
                                           Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x > kEigClamp) acc += x * std::log(x);
  }
  return acc;
}

// S(rho || sigma/Tr sigma) with the first term precomputed; one
// eigendecomposition per call.
double objective_value(const Matrix& rho, double tr_rlogr,
                       const Matrix& sigma_unnorm) {
  const double t = sigma_unnorm.trace().real();
  if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(sigma_unnorm / t));
  double val = 0.0, kernel = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double s = es.eigenvalues()(k);
    const Vector v = es.eigenvectors().col(k);
    const double w = std::real(v.dot(rho * v));
    if (s > kEigClamp)
      val += w * std::log(s);
    else
      kernel += std::max(w, 0.0);
  }
  if (kernel > 1e-10) return std::numeric_limits<double>::infinity();
  return tr_rlogr - val;
}

struct PptProjector {
  std::vector<int> dims;

  Matrix pt(const Matrix& m) const {
    return raw::partial_transpose(m, dims, 1);
  }

  // Dykstra's alternating projections onto PSD, PT-PSD and the trace-one
  // affine slice.
  Matrix project(Matrix x, int max_rounds = 400, double tol = 1e-13) const {
    const int n = static_cast<int>(x.rows());
    x = raw::hermitize(x);
    Matrix p = Matrix::Zero(n, n), q = Matrix::Zero(n, n),
           r = Matrix::Zero(n, n);
    Matrix y = x;
    for (int round = 0; round < max_rounds; ++round) {
      const Matrix y_prev = y;
      Matrix t = psd_clip(y + p);
      p = (y + p) - t;
      y = t;
      t = pt(psd_clip(pt(y + q)));
      q = (y + q) - t;
      y = t;
      t = y + r;
      t += ((1.0 - t.trace().real()) / n) * Matrix::Identity(n, n);
      r = (y + r) - t;
      y = t;
      if ((y - y_prev).norm() < tol && round > 2) break;
    }
    return y;
  }

  double feasibility_violation(const Matrix& m) const {
    const double psd = std::max(0.0, -raw::min_eigenvalue(m));
    const double ppt = std::max(0.0, -raw::min_eigenvalue(pt(m)));
    const double tr = std::abs(m.trace().real() - 1.0);
    return std::max({psd, ppt, tr});
  }
};

}  // namespace

OptReport e_ppt(const DensityMatrix& rho, const PptOptions& options) {
  if (rho.shape().factor_count() != 2)
    throw ValidationError("e_ppt: bipartite shape required");
  const int n = rho.dim();
  const PptProjector proj{rho.shape().dims};

  // A PPT input is its own closest PPT state.
  if (raw::min_eigenvalue(proj.pt(rho.mat())) >= -kPsdTol)
    return {0.0, rho, 0, true, OptKind::PptLower, {}};

  const double tr_rlogr = tr_rho_log_rho(rho.mat());
  Matrix sigma = proj.project(0.7 * rho.mat() +
                              0.3 * Matrix::Identity(n, n) / n);
  double f = objective_value(rho.mat(), tr_rlogr, sigma);
  double step = 0.5;
  long it = 0;
  bool converged = false;
  for (; it < options.max_iters; ++it) {
    const Matrix grad = -dlog_apply(sigma, rho.mat());
    bool improved = false;
    Matrix cand;
    double fc = f;
    while (step > 1e-16) {
      cand = proj.project(sigma - step * grad);
      fc = objective_value(rho.mat(), tr_rlogr, cand);
      if (fc < f) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      converged = true;
      break;
    }
    const double drop = f - fc;
    sigma = cand;
    f = fc;
    step = std::min(step * 1.6, 10.0);
    if (drop < options.tol * std::max(1.0, std::abs(f))) {
      converged = true;
      break;
    }
  }

  // polish into a strictly valid state
  sigma = psd_clip(sigma);
  sigma /= sigma.trace().real();
  if (proj.feasibility_violation(sigma) > options.feas_tol) converged = false;
  const double value = raw::relative_entropy(rho.mat(), sigma);
  return {value < 0 ? 0 : value, DensityMatrix(rho.shape(), sigma), it,
          converged, OptKind::PptLower, {}};
}

namespace {

struct AltProblem {
  const Matrix& rho;
  int da, db;
  double tr_rlogr;

  // Scale-invariant objective: S(rho || sigma/Tr sigma) evaluated on the
  // unnormalized assembled sum.
  double objective(const Matrix& sigma) const {
    return objective_value(rho, tr_rlogr, sigma);
  }

  Matrix contract_a(const Matrix& g, const Matrix& a) const {
    Matrix out = Matrix::Zero(db, db);
    for (int k = 0; k < db; ++k)
      for (int l = 0; l < db; ++l) {
        Complex acc(0, 0);
        for (int m = 0; m < da; ++m)
          for (int n = 0; n < da; ++n)
            acc += a(n, m) * g(m * db + k, n * db + l);
        out(k, l) = acc;
      }
    return out;
  }

  Matrix contract_b(const Matrix& g, const Matrix& b) const {
    Matrix out = Matrix::Zero(da, da);
    for (int m = 0; m < da; ++m)
      for (int n = 0; n < da; ++n) {
        Complex acc(0, 0);
        for (int k = 0; k < db; ++k)
          for (int l = 0; l < db; ++l)
            acc += b(l, k) * g(m * db + k, n * db + l);
        out(m, n) = acc;
      }
    return out;
  }
};

// One projected-gradient half-sweep over the factors of one side.
double half_sweep(const AltProblem& prob, ProductDecomposition& dec,
                  bool update_b, int iters, bool real_factors, double& step,
                  double f_current) {
  const int terms = static_cast<int>(dec.factors_a.size());
  double f = f_current;
  step = std::max(step, 1e-3);  // recover from a fully stalled line search
  for (int it = 0; it < iters; ++it) {
    Matrix sigma = dec.assemble();
    const double t = sigma.trace().real();
    const Matrix g = dlog_apply(sigma / t, prob.rho) / t;

    std::vector<Matrix> grads(terms);
    double grad_norm2 = 0.0;
    for (int i = 0; i < terms; ++i) {
      Matrix grad;
      if (update_b)
        grad = -prob.contract_a(g, dec.factors_a[i]) +
               (dec.factors_a[i].trace().real() / t) *
                   Matrix::Identity(prob.db, prob.db);
      else
        grad = -prob.contract_b(g, dec.factors_b[i]) +
               (dec.factors_b[i].trace().real() / t) *
                   Matrix::Identity(prob.da, prob.da);
      grad = raw::hermitize(grad);
      if (real_factors) grad = grad.real().cast<Complex>();
      grad_norm2 += grad.squaredNorm();
      grads[i] = std::move(grad);
    }
    if (grad_norm2 < 1e-26) break;

    std::vector<Matrix>& side = update_b ? dec.factors_b : dec.factors_a;
    bool improved = false;
    std::vector<Matrix> trial(terms);
    double fc = f;
    while (step > 1e-15) {
      for (int i = 0; i < terms; ++i)
        trial[i] = psd_clip(side[i] - step * grads[i]);
      std::vector<Matrix> saved = side;
      side = trial;
      fc = prob.objective(dec.assemble());
      if (fc < f) {
        improved = true;
        break;
      }
      side = std::move(saved);
      step *= 0.5;
    }
    if (!improved) break;
    f = fc;
    step = std::min(step * 2.0, 1e3);
  }
  return f;
}

// Best product direction for the linearized objective: minimizes
// <a (x) b| grad |a (x) b> by alternating minimal-eigenvector updates.
std::pair<Vector, Vector> best_product_direction(const AltProblem& prob,
                                                 const Matrix& grad,
                                                 bool real_factors, Rng& rng,
                                                 double* value) {
  const int da = prob.da, db = prob.db;
  double best = std::numeric_limits<double>::infinity();
  Vector best_a, best_b;
  for (int init = 0; init < 8; ++init) {
    Vector b(db);
    for (int i = 0; i < db; ++i)
      b(i) = real_factors ? Complex(rng.normal(), 0) : rng.complex_normal();
    b /= b.norm();
    Vector a;
    double cur = 0.0;
    for (int it = 0; it < 20; ++it) {
      Matrix ma = prob.contract_b(grad, b * b.adjoint());
      if (real_factors) ma = ma.real().cast<Complex>();
      Eigen::SelfAdjointEigenSolver<Matrix> ea(raw::hermitize(ma));
      a = ea.eigenvectors().col(0);
      Matrix mb = prob.contract_a(grad, a * a.adjoint());
      if (real_factors) mb = mb.real().cast<Complex>();
      Eigen::SelfAdjointEigenSolver<Matrix> eb(raw::hermitize(mb));
      b = eb.eigenvectors().col(0);
      const double next = eb.eigenvalues()(0);
      if (std::abs(next - cur) < 1e-13) {
        cur = next;
        break;
      }
      cur = next;
    }
    if (cur < best) {
      best = cur;
      best_a = a;
      best_b = b;
    }
  }
  *value = best;
  return {best_a, best_b};
}

// Fully-corrective weight rebalance: with the product shapes frozen, the
// objective is convex in the term weights; exponentiated-gradient steps with
// backtracking converge fast and leave the zigzag to adjust shapes only.
double weight_polish(const AltProblem& prob, ProductDecomposition& dec,
                     int iters, double f) {
  const int terms = static_cast<int>(dec.factors_a.size());
  std::vector<Matrix> products(terms);
  std::vector<double> weights(terms);
  double wsum = 0.0;
  for (int i = 0; i < terms; ++i) {
    const double ta = dec.factors_a[i].trace().real();
    const double tb = dec.factors_b[i].trace().real();
    weights[i] = ta * tb;
    wsum += weights[i];
    products[i] = (ta > 0 && tb > 0)
                      ? Matrix(raw::kron(dec.factors_a[i] / ta,
                                         dec.factors_b[i] / tb))
                      : Matrix(Matrix::Zero(prob.rho.rows(), prob.rho.cols()));
  }
  if (wsum <= 0.0) return f;
  std::vector<double> scale(terms, 1.0);

  auto assemble_w = [&](const std::vector<double>& w) {
    Matrix sigma = Matrix::Zero(prob.rho.rows(), prob.rho.cols());
    for (int i = 0; i < terms; ++i) sigma += w[i] * products[i];
    return sigma;
  };

  double eta = 1.0;
  for (int it = 0; it < iters; ++it) {
    const Matrix sigma = assemble_w(weights);
    const double t = sigma.trace().real();
    const Matrix g = dlog_apply(sigma / t, prob.rho) / t;
    std::vector<double> pull(terms);
    double max_pull = 0.0;
    for (int i = 0; i < terms; ++i) {
      pull[i] = std::real((g * products[i]).trace());
      max_pull = std::max(max_pull, std::abs(pull[i]));
    }
    if (max_pull == 0.0) break;
    bool improved = false;
    std::vector<double> trial(terms);
    double fc = f;
    while (eta > 1e-12) {
      for (int i = 0; i < terms; ++i)
        trial[i] = weights[i] * std::exp(eta * (pull[i] - 1.0 / t));
      fc = prob.objective(assemble_w(trial));
      if (fc < f - 1e-15) {
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
    for (int i = 0; i < terms; ++i) {
      if (weights[i] > 0) scale[i] *= trial[i] / weights[i];
      weights[i] = trial[i];
    }
    f = fc;
    eta = std::min(eta * 2.0, 1e3);
  }
  for (int i = 0; i < terms; ++i) dec.factors_b[i] *= scale[i];
  return f;
}

struct EscapeResult {
  double gap;      // certified suboptimality bound of the convex problem
  bool improved;
};

// Conditional-gradient escape: the zigzag half-steps can wedge at a joint
// stationary point of the bilinear parametrization; the full problem is
// convex over the separable set, so an improving product vertex exists
// whenever the current point is not optimal, and the linearization gap
// bounds the distance to the optimum.
EscapeResult frank_wolfe_escape(const AltProblem& prob,
                                ProductDecomposition& dec, bool real_factors,
                                Rng& rng, int term_cap, double& f) {
  Matrix sigma = dec.assemble();
  const double t = sigma.trace().real();
  const Matrix g = dlog_apply(sigma / t, prob.rho) / t;
  const Matrix grad = -g + Matrix::Identity(sigma.rows(), sigma.cols()) / t;

  double vertex_value = 0.0;
  const auto [a, b] =
      best_product_direction(prob, grad, real_factors, rng, &vertex_value);
  const double current_value = std::real((grad * sigma).trace()) / t;
  const double gap = (current_value - vertex_value) * t;
  if (vertex_value >= current_value - 1e-13) return {gap, false};

  const Matrix pa = a * a.adjoint();
  const Matrix pb = b * b.adjoint();
  // sigma(gamma) = (1 - gamma) sigma + gamma t (P_a (x) P_b)
  double gamma = 1.0;
  bool improved = false;
  double fc = f;
  while (gamma > 1e-10) {
    Matrix cand = (1.0 - gamma) * sigma + (gamma * t) * raw::kron(pa, pb);
    fc = prob.objective(cand);
    if (fc < f - 1e-14) {
      improved = true;
      break;
    }
    gamma *= 0.5;
  }
  if (!improved) return {gap, false};

  for (Matrix& m : dec.factors_b) m *= (1.0 - gamma);
  dec.factors_a.push_back(gamma * t * pa);
  dec.factors_b.push_back(pb);
  if (static_cast<int>(dec.factors_a.size()) > term_cap) {
    // drop the lightest term; the next sweeps re-optimize the rest
    int lightest = 0;
    double lightest_weight = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dec.factors_a.size(); ++i) {
      const double w = dec.factors_a[i].trace().real() *
                       dec.factors_b[i].trace().real();
      if (w < lightest_weight) {
        lightest_weight = w;
        lightest = static_cast<int>(i);
      }
    }
    dec.factors_a.erase(dec.factors_a.begin() + lightest);
    dec.factors_b.erase(dec.factors_b.begin() + lightest);
    fc = prob.objective(dec.assemble());
    if (fc > f) return {gap, false};  // dropped weight mattered
  }
  f = fc;
  return {gap, true};
}

OptReport run_alternating(const DensityMatrix& rho, const AltOptions& options,
                          std::uint64_t stream, bool real_factors,
                          int terms) {
  const int da = rho.shape().dims[0];
  const int db = rho.shape().dims[1];
  AltProblem prob{rho.mat(), da, db, tr_rho_log_rho(rho.mat())};

  Rng rng = Rng::derive(options.seed, stream);
  ProductDecomposition dec;
  for (int i = 0; i < terms; ++i) {
    dec.factors_a.push_back(random_positive(rng, da, real_factors));
    dec.factors_b.push_back(random_positive(rng, db, real_factors));
  }

  double f = prob.objective(dec.assemble());
  double step_b = 0.5, step_a = 0.5;
  int sweep = 0;
  bool converged = false;
  const int term_cap = terms + std::max(8, terms / 2);
  for (; sweep < options.max_sweeps; ++sweep) {
    const double f_before = f;
    f = half_sweep(prob, dec, true, options.inner_iters, real_factors, step_b,
                   f);
    if (f > f_before + 1e-12)
      throw NonConvergenceError("alternating: objective increased");
    const double f_mid = f;
    f = half_sweep(prob, dec, false, options.inner_iters, real_factors,
                   step_a, f);
    if (f > f_mid + 1e-12)
      throw NonConvergenceError("alternating: objective increased");
    f = weight_polish(prob, dec, 60, f);
    if (f_before - f < options.tol) {
      const EscapeResult esc =
          frank_wolfe_escape(prob, dec, real_factors, rng, term_cap, f);
      if (esc.gap <= options.gap_tol) {
        converged = true;
        ++sweep;
        break;
      }
      if (!esc.improved) {
        ++sweep;  // stalled above the certificate: not converged
        break;
      }
    }
  }

  // normalize the stored decomposition so it reconstructs sigma* exactly
  Matrix sigma = dec.assemble();
  const double t = sigma.trace().real();
  for (auto& b : dec.factors_b) b /= t;
  sigma /= t;
  sigma = psd_clip(sigma);
  sigma /= sigma.trace().real();
  const double value = raw::relative_entropy(rho.mat(), sigma);
  return {value < 0 ? 0 : value, DensityMatrix(rho.shape(), sigma), sweep,
          converged, OptKind::AlternatingUpper, std::move(dec)};
}

}  // namespace

OptReport closest_separable_alternating(const DensityMatrix& rho,
                                        const AltOptions& options) {
  if (rho.shape().factor_count() != 2)
    throw ValidationError(
        "closest_separable_alternating: bipartite shape required");
  if (options.term_count < 0)
    throw ValidationError("closest_separable_alternating: term_count < 0");

  const bool real_factors = options.real_factors;
  if (real_factors && rho.mat().imag().cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError(
        "closest_separable_alternating: real factors need a real state");
  const int d = rho.dim();
  const int terms = options.term_count > 0
                        ? options.term_count
                        : (real_factors ? d * (d + 1) / 2 : d * d);

  const int restarts = std::max(1, options.restarts);
  std::vector<std::optional<OptReport>> reports(restarts);
  parallel_for(restarts, options.jobs, [&](long w) {
    reports[w] = run_alternating(rho, options, static_cast<std::uint64_t>(w),
                                 real_factors, terms);
  });

  int winner = 0;
  for (int w = 1; w < restarts; ++w)
    if (reports[w]->value < reports[winner]->value) winner = w;
  return std::move(*reports[winner]);
}

DensityMatrix werner_state(double p) {
  if (p < 0.0 || p > 1.0)
    throw ValidationError("werner_state: p outside [0, 1]");
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0 / std::numbers::sqrt2;
  psi(3) = 1.0 / std::numbers::sqrt2;
  Matrix m =
      p * Matrix::Identity(4, 4) / 4.0 + (1.0 - p) * (psi * psi.adjoint());
  return DensityMatrix(TensorShape{2, 2}, std::move(m));
}

DensityMatrix horodecki_state(double a) {
  if (a < 0.0 || a > 1.0)
    throw ValidationError("horodecki_state: a outside [0, 1]");
  Matrix m = Matrix::Zero(9, 9);
  for (int i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = a;
  m(6, 6) = (1.0 + a) / 2.0;
  m(8, 8) = (1.0 + a) / 2.0;
  m(0, 4) = m(4, 0) = a;
  m(0, 8) = m(8, 0) = a;
  m(4, 8) = m(8, 4) = a;
  m(6, 8) = m(8, 6) = std::sqrt(1.0 - a * a) / 2.0;
  m /= (8.0 * a + 1.0);
  return DensityMatrix(TensorShape{3, 3}, std::move(m));
}

}  // namespace fermicorr
