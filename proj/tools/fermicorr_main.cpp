#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "fermicorr/discord.hpp"
#include "fermicorr/hubbard.hpp"
#include "fermicorr/rng.hpp"
#include "fermicorr/measures.hpp"
#include "fermicorr/parallel.hpp"
#include "fermicorr/particle.hpp"
#include "fermicorr/rdmio.hpp"
#include "fermicorr/sep_opt.hpp"
#include "fermicorr/ssr.hpp"
#include "fermicorr/twoorb.hpp"

namespace fc = fermicorr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNonConvergence = 2;

struct GlobalOptions {
  std::string log_base = "e";
  std::string out = "-";
  std::string format = "csv";
  int jobs = 0;  // 0 = FERMICORR_JOBS / hardware
  std::uint64_t seed = 12345;

  fc::LogBase base() const {
    if (log_base == "e") return fc::LogBase::Natural;
    if (log_base == "2") return fc::LogBase::Two;
    throw fc::ValidationError("--log-base must be e or 2");
  }
  int effective_jobs() const {
    return jobs > 0 ? jobs : fc::default_jobs();
  }
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit_text(const GlobalOptions& g, const std::string& text) {
  if (g.out == "-" || g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw fc::ValidationError("cannot open '" + g.out + "'");
  f << text;
}

void emit_table(const GlobalOptions& g, const fc::ScanTable& table) {
  fc::write_scan(table, fc::parse_scan_format(g.format), g.out);
}

fc::DensityMatrix bell_state() {
  fc::Vector psi = fc::Vector::Zero(4);
  psi(0) = 1.0 / std::numbers::sqrt2;
  psi(3) = 1.0 / std::numbers::sqrt2;
  return fc::pure_state(fc::TensorShape{2, 2}, psi);
}

int cmd_bell(const GlobalOptions& g) {
  const fc::DensityMatrix rho = bell_state();
  const double i = fc::mutual_information(rho, g.base());

  fc::AltOptions alt;
  alt.seed = g.seed;
  alt.jobs = g.effective_jobs();
  const fc::OptReport report = fc::closest_separable_alternating(rho, alt);
  const double e = report.value * fc::log_scale(g.base());
  const double c =
      fc::classical_correlation_geometric(rho, report.sigma_star, g.base());

  std::ostringstream out;
  out << "I = " << fmt17(i) << "\n"
      << "E = " << fmt17(e) << "\n"
      << "C = " << fmt17(c) << "\n";
  emit_text(g, out.str());
  return report.converged ? kExitOk : kExitNonConvergence;
}

int cmd_discord(const GlobalOptions& g, const std::string& family,
                const std::string& c_grid, const std::string& rdm_path,
                long steps, double eta, double beta, int restarts) {
  fc::McmcOptions mc;
  mc.steps = steps;
  mc.eta = eta;
  mc.beta = beta;
  mc.restarts = restarts;
  mc.seed = g.seed;

  if (!rdm_path.empty()) {
    const fc::RdmFile file = fc::parse_rdm(rdm_path);
    if (file.kind != fc::RdmKind::TwoOrbital)
      throw fc::ValidationError("discord --rdm expects a two-orbital file");
    mc.jobs = g.effective_jobs();
    const fc::DiscordResult res = fc::discord_mcmc(file.state, mc);
    fc::ScanTable table;
    table.columns = {"discord", "classical"};
    table.rows.push_back(
        {{res.discord * fc::log_scale(g.base()),
          fc::classical_correlation_discord(res, g.base())},
         "ok"});
    emit_table(g, table);
    return kExitOk;
  }

  if (family != "werner")
    throw fc::ValidationError("discord: unknown family '" + family + "'");
  const std::vector<double> grid = fc::parse_grid(c_grid);
  fc::ScanTable table;
  table.columns = {"c", "discord", "closed_form"};
  table.rows.resize(grid.size());
  fc::parallel_for(static_cast<long>(grid.size()), g.effective_jobs(),
                   [&](long i) {
                     const double c = grid[i];
                     fc::McmcOptions point = mc;
                     point.seed = fc::splitmix64(g.seed ^ (0x5eedULL + i));
                     point.jobs = 1;
                     auto& row = table.rows[i];
                     try {
                       const fc::DiscordResult res =
                           fc::discord_mcmc(fc::werner_discord_family(c), point);
                       row.values = {c, res.discord * fc::log_scale(g.base()),
                                     fc::discord_werner_closed_form(c) *
                                         fc::log_scale(g.base())};
                     } catch (const std::exception& e) {
                       row.values = {c, 0.0, 0.0};
                       row.status = e.what();
                     }
                   });
  emit_table(g, table);
  return kExitOk;
}

int scan_family(const GlobalOptions& g, const std::string& family,
                const std::string& grid_spec, int terms, int restarts) {
  const std::vector<double> grid = fc::parse_grid(grid_spec);
  fc::ScanTable table;
  table.columns = {family == "werner" ? "p" : "a", "E_RE", "E_PPT"};
  table.rows.resize(grid.size());
  bool all_converged = true;

  fc::parallel_for(static_cast<long>(grid.size()), g.effective_jobs(),
                   [&](long i) {
                     auto& row = table.rows[i];
                     row.values = {grid[i], 0.0, 0.0};
                     try {
                       const fc::DensityMatrix rho =
                           family == "werner" ? fc::werner_state(grid[i])
                                              : fc::horodecki_state(grid[i]);
                       fc::AltOptions alt;
                       alt.term_count = terms;
                       alt.restarts = restarts;
                       alt.seed = fc::splitmix64(g.seed ^ (0xa17ULL + i));
                       alt.jobs = 1;
                       const fc::OptReport upper =
                           fc::closest_separable_alternating(rho, alt);
                       const fc::OptReport lower = fc::e_ppt(rho);
                       if (!upper.converged || !lower.converged)
                         row.status = "non-convergence";
                       row.values[1] = upper.value * fc::log_scale(g.base());
                       row.values[2] = lower.value * fc::log_scale(g.base());
                     } catch (const std::exception& e) {
                       row.status = e.what();
                     }
                   });
  for (const auto& row : table.rows)
    if (row.status != "ok") all_converged = false;
  emit_table(g, table);
  return all_converged ? kExitOk : kExitNonConvergence;
}

int cmd_sep_opt(const GlobalOptions& g, const std::string& family,
                const std::string& grid_spec, const std::string& rdm_path,
                int terms, int restarts) {
  if (!rdm_path.empty()) {
    const fc::RdmFile file = fc::parse_rdm(rdm_path);
    fc::AltOptions alt;
    alt.term_count = terms;
    alt.restarts = restarts;
    alt.seed = g.seed;
    alt.jobs = g.effective_jobs();
    const fc::OptReport upper =
        fc::closest_separable_alternating(file.state, alt);
    const fc::OptReport lower = fc::e_ppt(file.state);
    fc::ScanTable table;
    table.columns = {"E_RE", "E_PPT", "sweeps"};
    table.rows.push_back({{upper.value * fc::log_scale(g.base()),
                           lower.value * fc::log_scale(g.base()),
                           static_cast<double>(upper.iterations)},
                          upper.converged && lower.converged
                              ? "ok"
                              : "non-convergence"});
    emit_table(g, table);
    return upper.converged && lower.converged ? kExitOk
                                              : kExitNonConvergence;
  }
  if (family.empty())
    throw fc::ValidationError("sep-opt: provide --family or --rdm");
  return scan_family(g, family, grid_spec, terms, restarts);
}

int cmd_hubbard_scan(const GlobalOptions& g, const std::string& picture,
                     const std::string& ssr, const std::string& t_spec,
                     const std::string& r_spec) {
  fc::HubbardScanOptions options;
  options.picture =
      picture == "particle" ? fc::Picture::Particle : fc::Picture::Mode;
  if (picture != "mode" && picture != "particle")
    throw fc::ValidationError("--picture must be mode or particle");
  options.ssr = fc::parse_ssr(ssr);
  options.log_base = g.base();
  options.jobs = g.effective_jobs();
  options.sep.seed = g.seed;
  const fc::ScanTable table =
      fc::hubbard_scan(fc::parse_grid(t_spec), fc::parse_grid(r_spec), options);
  emit_table(g, table);
  for (const auto& row : table.rows)
    if (row.status != "ok") return kExitNonConvergence;
  return kExitOk;
}

int cmd_hubbard_rcrit(const GlobalOptions& g, const std::string& picture,
                      const std::string& t_spec) {
  const bool mode = picture == "mode";
  if (!mode && picture != "particle")
    throw fc::ValidationError("--picture must be mode or particle");
  const std::vector<double> temps = fc::parse_grid(t_spec);
  fc::ScanTable table;
  table.columns = {"T", "r_crit", "r_asymptotic"};
  for (double t : temps) {
    fc::ScanTable::Row row;
    try {
      const double root = mode ? fc::critical_distance_mode(t)
                               : fc::critical_distance_particle(t);
      const double asym = fc::asymptotic_rcrit(
          t, mode ? fc::Picture::Mode : fc::Picture::Particle);
      row.values = {t, root, asym};
    } catch (const std::exception& e) {
      row.values = {t, 0.0, 0.0};
      row.status = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  emit_table(g, table);
  for (const auto& row : table.rows)
    if (row.status != "ok") return kExitNonConvergence;
  return kExitOk;
}

int cmd_twoorb(const GlobalOptions& g, const std::string& rdm_path,
               const std::string& ssr) {
  const fc::RdmFile file = fc::parse_rdm(rdm_path);
  if (file.kind != fc::RdmKind::TwoOrbital)
    throw fc::ValidationError("twoorb expects a two-orbital RDM file");
  const fc::SsrKind kind = fc::parse_ssr(ssr);

  fc::SsrMeasureOptions opts;
  opts.log_base = g.base();
  opts.sep.seed = g.seed;
  opts.sep.jobs = g.effective_jobs();
  const double i =
      fc::ssr_measure(file.state, kind, fc::CorrelationMeasure::Total, opts);
  const double e = fc::ssr_measure(file.state, kind,
                                   fc::CorrelationMeasure::Entanglement, opts);
  const double c = fc::ssr_measure(file.state, kind,
                                   fc::CorrelationMeasure::Classical, opts);
  std::ostringstream out;
  out << "ssr = " << fc::ssr_name(kind) << "\n"
      << "I = " << fmt17(i) << "\n"
      << "E = " << fmt17(e) << "\n"
      << "C = " << fmt17(c) << "\n";
  emit_text(g, out.str());
  return kExitOk;
}

int cmd_particle(const GlobalOptions& g, const std::string& rdm_path) {
  const fc::RdmFile file = fc::parse_rdm(rdm_path);
  if (file.kind != fc::RdmKind::TwoOrbital)
    throw fc::ValidationError("particle expects a two-orbital RDM file");
  // the (4,4) split of a 4-mode register is the contiguous, sign-free one,
  // so the matrix doubles as the 16-dim Fock representation
  const fc::DensityMatrix rho_fock(fc::TensorShape{16}, file.state.mat());
  const fc::Matrix gamma = fc::one_particle_rdm(rho_fock, 4);
  std::ostringstream out;
  out << "nonfreeness = "
      << fmt17(fc::nonfreeness(rho_fock, gamma) * fc::log_scale(g.base()))
      << "\n"
      << "quantum_nonfreeness = "
      << fmt17(fc::quantum_nonfreeness(rho_fock)) << "\n";
  emit_text(g, out.str());
  return kExitOk;
}

int cmd_rdm(const GlobalOptions& g, const std::string& rdm_path) {
  const fc::RdmFile file = fc::parse_rdm(rdm_path);
  std::ostringstream out;
  out << "version = " << file.version << "\n"
      << "kind = " << (file.kind == fc::RdmKind::OneOrbital ? "one" : "two")
      << "\n"
      << "dim = " << file.state.dim() << "\n"
      << "trace = " << fmt17(file.state.mat().trace().real()) << "\n"
      << "min_eigenvalue = "
      << fmt17(fc::raw::min_eigenvalue(file.state.mat())) << "\n";
  emit_text(g, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation and entanglement measures for fermionic modes"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--log-base", g.log_base, "logarithm base (e|2)")
      ->check(CLI::IsMember({"e", "2"}));
  app.add_option("--jobs", g.jobs, "worker count (0 = auto)");
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out", g.out, "output path (- = stdout)");
  app.add_option("--format", g.format, "table format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* bell = app.add_subcommand("bell", "Bell-state I/E/C triple");

  auto* discord =
      app.add_subcommand("discord", "geometric quantum discord (MCMC)");
  std::string d_family = "werner", d_c = "0.0:1.0:0.1", d_rdm;
  long d_steps = 5000;
  double d_eta = 0.1, d_beta = 1e4;
  int d_restarts = 8;
  discord->add_option("--family", d_family, "state family (werner)");
  discord->add_option("--c", d_c, "mixing parameter grid");
  discord->add_option("--rdm", d_rdm, "two-orbital RDM file");
  discord->add_option("--steps", d_steps, "walk length");
  discord->add_option("--eta", d_eta, "step size");
  discord->add_option("--beta", d_beta, "inverse temperature");
  discord->add_option("--restarts", d_restarts, "independent walks");

  auto* werner = app.add_subcommand("werner", "Werner-state E_RE/E_PPT scan");
  std::string w_grid = "0.0:1.0:0.02";
  int w_terms = 0, w_restarts = 8;
  werner->add_option("--p", w_grid, "mixing parameter grid");
  werner->add_option("--terms", w_terms, "product terms (0 = default)");
  werner->add_option("--restarts", w_restarts, "optimizer restarts");

  auto* horodecki =
      app.add_subcommand("horodecki", "bound-entanglement E_RE/E_PPT scan");
  std::string h_grid = "0.0:1.0:0.025";
  int h_terms = 0, h_restarts = 8;
  horodecki->add_option("--a", h_grid, "family parameter grid");
  horodecki->add_option("--terms", h_terms, "product terms (0 = default)");
  horodecki->add_option("--restarts", h_restarts, "optimizer restarts");

  auto* hubbard = app.add_subcommand("hubbard", "Hubbard-dimer scans");
  std::string hb_picture = "mode", hb_ssr = "n", hb_t = "0.1",
              hb_r = "0.1:6.0:0.05";
  hubbard->add_option("--picture", hb_picture, "mode|particle");
  hubbard->add_option("--ssr", hb_ssr, "superselection rule (none|p|n)");
  hubbard->add_option("--T", hb_t, "temperature value or grid");
  hubbard->add_option("--r", hb_r, "separation grid");
  auto* rcrit =
      hubbard->add_subcommand("rcrit", "critical separation distances");
  std::string rc_picture = "mode", rc_t = "0.1";
  rcrit->add_option("--picture", rc_picture, "mode|particle");
  rcrit->add_option("--T", rc_t, "temperature value or grid");

  auto* twoorb =
      app.add_subcommand("twoorb", "two-orbital I/E/C under an SSR");
  std::string to_rdm, to_ssr = "n";
  twoorb->add_option("--rdm", to_rdm, "two-orbital RDM file")->required();
  twoorb->add_option("--ssr", to_ssr, "superselection rule (none|p|n)");

  auto* particle =
      app.add_subcommand("particle", "nonfreeness and quantum nonfreeness");
  std::string pa_rdm;
  particle->add_option("--rdm", pa_rdm, "two-orbital RDM file")->required();

  auto* sep = app.add_subcommand("sep-opt", "closest separable state bounds");
  std::string s_family, s_grid = "0.0:1.0:0.1", s_rdm;
  int s_terms = 0, s_restarts = 8;
  sep->add_option("--family", s_family, "werner|horodecki");
  sep->add_option("--grid", s_grid, "family parameter grid");
  sep->add_option("--rdm", s_rdm, "RDM file");
  sep->add_option("--terms", s_terms, "product terms (0 = default)");
  sep->add_option("--restarts", s_restarts, "optimizer restarts");

  auto* rdm = app.add_subcommand("rdm", "validate an orbital RDM file");
  std::string r_path;
  rdm->add_option("file", r_path, "RDM file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (bell->parsed()) return cmd_bell(g);
    if (discord->parsed())
      return cmd_discord(g, d_family, d_c, d_rdm, d_steps, d_eta, d_beta,
                         d_restarts);
    if (werner->parsed())
      return scan_family(g, "werner", w_grid, w_terms, w_restarts);
    if (horodecki->parsed())
      return scan_family(g, "horodecki", h_grid, h_terms, h_restarts);
    if (hubbard->parsed()) {
      if (rcrit->parsed()) return cmd_hubbard_rcrit(g, rc_picture, rc_t);
      return cmd_hubbard_scan(g, hb_picture, hb_ssr, hb_t, hb_r);
    }
    if (twoorb->parsed()) return cmd_twoorb(g, to_rdm, to_ssr);
    if (particle->parsed()) return cmd_particle(g, pa_rdm);
    if (sep->parsed())
      return cmd_sep_opt(g, s_family, s_grid, s_rdm, s_terms, s_restarts);
    if (rdm->parsed()) return cmd_rdm(g, r_path);
  } catch (const fc::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
