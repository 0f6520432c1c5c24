#include "fermicorr/hubbard.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "fermicorr/measures.hpp"
#include "fermicorr/parallel.hpp"
#include "fermicorr/particle.hpp"
#include "fermicorr/twoorb.hpp"

namespace fermicorr {

namespace {

constexpr double kU = 1.0;
constexpr int kN2States[6] = {3, 5, 6, 9, 10, 12};

}  // namespace

DimerParams DimerParams::from_r(double r, double temperature) {
  if (temperature < 0.0)
    throw ValidationError("DimerParams: negative temperature");
  return {std::exp(-r), r, temperature};
}

DimerParams DimerParams::from_t(double t, double temperature) {
  if (t < 0.0) throw ValidationError("DimerParams: negative hopping");
  if (temperature < 0.0)
    throw ValidationError("DimerParams: negative temperature");
  return {t, t > 0.0 ? -std::log(t) : std::numeric_limits<double>::infinity(),
          temperature};
}

Matrix dimer_hopping_term(double t) {
  const ModeBasis basis = ModeBasis::spin_orbitals(2);
  const int lu = 0, ld = 1, ru = 2, rd = 3;
  Matrix h = Matrix::Zero(16, 16);
  for (const auto& [a, b] : {std::pair{lu, ru}, std::pair{ld, rd}}) {
    const Matrix hop = creation_op(basis, a) * annihilation_op(basis, b);
    h += -t * (hop + hop.adjoint());
  }
  return h;
}

Matrix dimer_hamiltonian(double t) {
  const ModeBasis basis = ModeBasis::spin_orbitals(2);
  Matrix h = dimer_hopping_term(t);
  for (int site : {0, 1}) {
    const int up = basis.index_of(site, Spin::Up);
    const int down = basis.index_of(site, Spin::Down);
    h += kU * number_op(basis, {up}) * number_op(basis, {down});
  }
  return h;
}

Matrix dimer_n2_block(const Matrix& op16) {
  if (op16.rows() != 16)
    throw ValidationError("dimer_n2_block: 16x16 operator required");
  Matrix block(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) block(i, j) = op16(kN2States[i], kN2States[j]);
  return block;
}

DimerSpectrum closed_form_spectrum(double t) {
  DimerSpectrum s;
  s.w = std::sqrt(kU * kU / 4.0 + 4.0 * t * t);
  s.energies = {kU / 2.0 - s.w, 0.0, 0.0, 0.0, kU, kU / 2.0 + s.w};
  s.a = std::sqrt((s.w + kU / 2.0) / (2.0 * s.w));
  s.b = 2.0 * t / std::sqrt(2.0 * s.w * (s.w + kU / 2.0));
  s.c = -std::sqrt((s.w - kU / 2.0) / (2.0 * s.w));
  s.d = t > 0.0 ? 2.0 * t / std::sqrt(2.0 * s.w * (s.w - kU / 2.0)) : 1.0;
  return s;
}

DensityMatrix gibbs_state(const DimerParams& params) {
  const Matrix block = dimer_n2_block(dimer_hamiltonian(params.t));
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw::hermitize(block));

  Eigen::VectorXd weights(6);
  if (params.temperature == 0.0) {
    weights.setZero();
    weights(0) = 1.0;  // non-degenerate ground state for every finite r
  } else {
    const double e0 = es.eigenvalues()(0);
    for (int k = 0; k < 6; ++k)
      weights(k) = std::exp(-(es.eigenvalues()(k) - e0) / params.temperature);
    weights /= weights.sum();
  }

  Matrix rho16 = Matrix::Zero(16, 16);
  for (int k = 0; k < 6; ++k) {
    if (weights(k) <= 0.0) continue;
    Vector full = Vector::Zero(16);
    for (int i = 0; i < 6; ++i) full(kN2States[i]) = es.eigenvectors()(i, k);
    rho16 += weights(k) * (full * full.adjoint());
  }
  return DensityMatrix(TensorShape{16}, std::move(rho16));
}

DensityMatrix gibbs_state_full(const DimerParams& params) {
  if (params.temperature <= 0.0)
    throw ValidationError("gibbs_state_full: temperature must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      raw::hermitize(dimer_hamiltonian(params.t)));
  Eigen::VectorXd weights(16);
  const double e0 = es.eigenvalues()(0);
  for (int k = 0; k < 16; ++k)
    weights(k) = std::exp(-(es.eigenvalues()(k) - e0) / params.temperature);
  weights /= weights.sum();
  const Matrix rho = es.eigenvectors() * weights.asDiagonal() *
                     es.eigenvectors().adjoint();
  return DensityMatrix(TensorShape{16}, rho);
}

namespace {

double delta_e(double t) { return closed_form_spectrum(t).w - kU / 2.0; }

double mode_condition(double r, double temperature) {
  const double t = std::exp(-r);
  const double a2 = 0.5 * (1.0 / std::sqrt(16.0 * t * t + 1.0) + 1.0);
  return 3.0 * std::exp(-delta_e(t) / temperature) - a2;
}

double particle_condition(double r, double temperature) {
  const double t = std::exp(-r);
  const DimerSpectrum s = closed_form_spectrum(t);
  const double x = std::exp(-delta_e(t) / temperature);
  const double p2 = 1.0 / (1.0 + 3.0 * x);
  const double q2 = x / (1.0 + 3.0 * x);
  return std::abs(s.a * s.a - s.b * s.b) * p2 - 3.0 * q2;
}

double bisect_root(double (*f)(double, double), double temperature,
                   bool ascending) {
  if (temperature <= 0.0)
    throw ValidationError("critical distance: temperature must be positive");
  double lo = 0.1;
  double hi = -0.5 * std::log(temperature) + 10.0;
  double flo = f(lo, temperature);
  double fhi = f(hi, temperature);
  if (ascending) {
    flo = -flo;
    fhi = -fhi;
  }
  if (flo <= 0.0 || fhi >= 0.0)
    throw NonConvergenceError(
        "critical distance: no sign change in the bracket");
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    double fm = f(mid, temperature);
    if (ascending) fm = -fm;
    (fm > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double critical_distance_mode(double temperature) {
  // condition is negative left of the root
  return bisect_root(&mode_condition, temperature, true);
}

double critical_distance_particle(double temperature) {
  // condition is positive left of the root
  return bisect_root(&particle_condition, temperature, false);
}

double asymptotic_rcrit(double temperature, Picture picture) {
  if (temperature <= 0.0)
    throw ValidationError("asymptotic_rcrit: temperature must be positive");
  const double c0 = std::log(2.0) - 0.5 * std::log(std::log(3.0));
  const double c1 = picture == Picture::Mode
                        ? -0.5 * (1.0 + std::log(3.0))
                        : -0.5 * (2.0 + std::log(3.0));
  return -0.5 * std::log(temperature) + c0 + c1 * temperature;
}

namespace {

struct ModePointResult {
  double total;
  double entanglement;
};

ModePointResult mode_point(const DimerParams& params,
                           const HubbardScanOptions& options) {
  const DensityMatrix gibbs = gibbs_state(params);
  const Bipartition lr = Bipartition::split_at(4, 2);
  const DensityMatrix split = split_bipartite(gibbs, lr);
  const DensityMatrix physical = ssr_project(split, options.ssr);

  ModePointResult out{};
  out.total = mutual_information(physical, options.log_base);

  switch (options.ssr) {
    case SsrKind::Number: {
      const SymmetricTwoOrbitalState s = project_to_table_basis(physical);
      out.entanglement = closest_separable_nssr(s).entanglement *
                         log_scale(options.log_base);
      break;
    }
    case SsrKind::Parity: {
      const SymmetricTwoOrbitalState s =
          project_to_table_basis(physical, TableConvention::Pssr);
      out.entanglement =
          entanglement_pssr(s) * log_scale(options.log_base);
      break;
    }
    case SsrKind::None: {
      AltOptions alt = options.sep;
      alt.jobs = 1;  // scan rows already fan out
      const OptReport report = closest_separable_alternating(physical, alt);
      if (!report.converged)
        throw NonConvergenceError("alternating optimizer hit the sweep cap");
      out.entanglement = report.value * log_scale(options.log_base);
      break;
    }
  }
  return out;
}

}  // namespace

ScanTable hubbard_scan(const std::vector<double>& temperatures,
                       const std::vector<double>& separations,
                       const HubbardScanOptions& options) {
  if (temperatures.empty() || separations.empty())
    throw ValidationError("hubbard_scan: empty grid");

  ScanTable table;
  table.columns = options.picture == Picture::Mode
                      ? std::vector<std::string>{"T", "r", "t", "total",
                                                 "entanglement"}
                      : std::vector<std::string>{"T", "r", "t", "nonfreeness",
                                                 "quantum_nonfreeness"};
  const long n = static_cast<long>(temperatures.size()) *
                 static_cast<long>(separations.size());
  table.rows.resize(n);

  parallel_for(n, options.jobs, [&](long idx) {
    const double temp = temperatures[idx / separations.size()];
    const double r = separations[idx % separations.size()];
    ScanTable::Row& row = table.rows[idx];
    const DimerParams params = DimerParams::from_r(r, temp);
    row.values = {temp, r, params.t, 0.0, 0.0};
    try {
      if (options.picture == Picture::Mode) {
        const ModePointResult m = mode_point(params, options);
        row.values[3] = m.total;
        row.values[4] = m.entanglement;
      } else {
        const DensityMatrix gibbs = gibbs_state(params);
        const Matrix gamma = one_particle_rdm(gibbs, 4);
        row.values[3] = nonfreeness(gibbs, gamma) * log_scale(options.log_base);
        // quantum nonfreeness is a convex-roof quantity, not a logarithmic
        // one; the log-base switch does not apply
        row.values[4] = quantum_nonfreeness(gibbs);
      }
    } catch (const std::exception& e) {
      row.status = e.what();
    }
  });
  table.validate();
  return table;
}

}  // namespace fermicorr
