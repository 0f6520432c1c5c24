// Timing comparison between the serial reference path (jobs = 1) and the
// OpenMP path for the scan-level kernels. Also checks that both paths give
// identical tables.

#include <chrono>
#include <cstdio>
#include <vector>

#include "fermicorr/discord.hpp"
#include "fermicorr/hubbard.hpp"
#include "fermicorr/parallel.hpp"
#include "fermicorr/scan.hpp"

using namespace fermicorr;

namespace {

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

bool tables_equal(const ScanTable& a, const ScanTable& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t c = 0; c < a.columns.size(); ++c)
      if (a.rows[i].values[c] != b.rows[i].values[c]) return false;
  return true;
}

}  // namespace

int main() {
  const int jobs = default_jobs();
  std::printf("workers for the parallel path: %d\n\n", jobs);

  {
    const std::vector<double> temps = parse_grid("0.05:0.15:0.05");
    const std::vector<double> rs = parse_grid("0.1:4.0:0.1");
    HubbardScanOptions opt;
    opt.jobs = 1;
    double t0 = now();
    const ScanTable serial = hubbard_scan(temps, rs, opt);
    const double t_serial = now() - t0;
    opt.jobs = jobs;
    t0 = now();
    const ScanTable parallel = hubbard_scan(temps, rs, opt);
    const double t_parallel = now() - t0;
    std::printf("hubbard mode scan (%zu points): serial %.3fs, parallel %.3fs"
                " (x%.2f), identical: %s\n",
                serial.rows.size(), t_serial, t_parallel,
                t_serial / t_parallel, tables_equal(serial, parallel) ? "yes" : "NO");
  }

  {
    const DensityMatrix rho = werner_discord_family(0.5);
    McmcOptions opt;
    opt.steps = 2000;
    opt.restarts = 8;
    opt.jobs = 1;
    double t0 = now();
    const DiscordResult serial = discord_mcmc(rho, opt);
    const double t_serial = now() - t0;
    opt.jobs = jobs;
    t0 = now();
    const DiscordResult parallel = discord_mcmc(rho, opt);
    const double t_parallel = now() - t0;
    std::printf("discord restarts (8 x 2000 steps): serial %.3fs, parallel"
                " %.3fs (x%.2f), identical: %s\n",
                t_serial, t_parallel, t_serial / t_parallel,
                serial.discord == parallel.discord ? "yes" : "NO");
  }

  return 0;
}
