#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fermicorr/discord.hpp"
#include "fermicorr/measures.hpp"
#include "fermicorr/rng.hpp"
#include "fermicorr/sep_opt.hpp"

using namespace fermicorr;

namespace {

DensityMatrix bell_minus() {
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0 / std::numbers::sqrt2;
  psi(3) = -1.0 / std::numbers::sqrt2;
  return pure_state(TensorShape{2, 2}, psi);
}

LocalBases computational(int da, int db) {
  return LocalBases(Matrix::Identity(da, da), Matrix::Identity(db, db));
}

}  // namespace

TEST_CASE("classical_state: fixed point and the dephased Bell mixture") {
  Matrix diag = Matrix::Zero(4, 4);
  diag(0, 0) = 0.4;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  diag(3, 3) = 0.1;
  const DensityMatrix cl(TensorShape{2, 2}, diag);
  const DensityMatrix back = classical_state(cl, computational(2, 2));
  CHECK((back.mat() - cl.mat()).cwiseAbs().maxCoeff() < 1e-13);

  const DensityMatrix dephased =
      classical_state(bell_minus(), computational(2, 2));
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = 0.5;
  want(3, 3) = 0.5;
  CHECK((dephased.mat() - want).cwiseAbs().maxCoeff() < 1e-13);

  CHECK_THROWS_AS(classical_state(cl, computational(2, 3)), ValidationError);
  Matrix not_unitary = 2.0 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(LocalBases(not_unitary, not_unitary), ValidationError);
}

TEST_CASE("classical_state output has zero discord") {
  Rng rng(3);
  McmcOptions fast;
  fast.steps = 600;
  fast.restarts = 2;
  fast.seed = 99;
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix rho(TensorShape{2, 2}, random_positive(rng, 4));
    const LocalBases bases(random_unitary(rng, 2), random_unitary(rng, 2));
    const DensityMatrix cl = classical_state(rho, bases);
    CHECK(discord_mcmc(cl, fast).discord < 1e-6);
  }
}

TEST_CASE("discord_direct: products, determinism, monotone in samples") {
  Rng rng(5);
  const Matrix pa = random_positive(rng, 2);
  Vector va = Vector::Zero(2), vb = Vector::Zero(2);
  va(0) = 1.0;
  vb(1) = 1.0;
  Vector prod(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod(i * 2 + j) = va(i) * vb(j);
  const DensityMatrix pure_prod = pure_state(TensorShape{2, 2}, prod);
  CHECK(discord_direct(pure_prod, 5, 7).discord < 1e-10);

  const DensityMatrix rho = werner_discord_family(0.5);
  const DiscordResult r1 = discord_direct(rho, 200, 42);
  const DiscordResult r2 = discord_direct(rho, 200, 42);
  CHECK(r1.discord == r2.discord);  // reproducibility contract

  const DiscordResult small = discord_direct(rho, 50, 42);
  const DiscordResult large = discord_direct(rho, 400, 42);
  CHECK(large.discord <= small.discord + 1e-15);

  CHECK_THROWS_AS(discord_direct(rho, 0, 1), ValidationError);
}

TEST_CASE("discord_direct approaches the closed form") {
  const DensityMatrix rho = werner_discord_family(0.5);
  const DiscordResult res = discord_direct(rho, 4000, 11);
  CHECK(res.discord ==
        doctest::Approx(discord_werner_closed_form(0.5)).epsilon(2e-3));
}

TEST_CASE("discord closed form: endpoints and a frozen midpoint") {
  CHECK(discord_werner_closed_form(0.0) == doctest::Approx(0.0));
  CHECK(discord_werner_closed_form(1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // 0.25 log(0.5)/... evaluated independently: see tests/oracles
  CHECK(discord_werner_closed_form(0.5) ==
        doctest::Approx(0.18193869103146292).epsilon(1e-12));
  CHECK_THROWS_AS(discord_werner_closed_form(1.5), ValidationError);
}

TEST_CASE("discord_mcmc matches the closed form across the family") {
  McmcOptions opt;
  opt.steps = 2500;
  opt.restarts = 4;
  opt.seed = 7;
  for (double c : {0.1, 0.5, 0.9}) {
    const DiscordResult res = discord_mcmc(werner_discord_family(c), opt);
    CHECK(res.discord ==
          doctest::Approx(discord_werner_closed_form(c)).epsilon(1e-3));
    // result invariant: discord equals the distance to the reported state
    CHECK(std::abs(res.discord -
                   relative_entropy(werner_discord_family(c),
                                    res.closest_classical)) < 1e-9);
  }
  CHECK(discord_mcmc(werner_discord_family(0.0), opt).discord < 1e-9);
}

TEST_CASE("discord dominates entanglement (classical set is smaller)") {
  McmcOptions opt;
  opt.steps = 2000;
  opt.restarts = 4;
  opt.seed = 19;
  AltOptions alt;
  alt.restarts = 4;
  alt.seed = 19;
  Rng rng(23);
  for (int trial = 0; trial < 2; ++trial) {
    const DensityMatrix rho(TensorShape{3, 3}, random_positive(rng, 9));
    const double q = discord_mcmc(rho, opt).discord;
    const double e = closest_separable_alternating(rho, alt).value;
    CHECK(q >= e - 1e-6);
  }
}

TEST_CASE("classical correlation from the closest classical state") {
  McmcOptions opt;
  opt.steps = 3000;
  opt.restarts = 6;
  opt.seed = 3;
  const DiscordResult bell_res = discord_mcmc(bell_minus(), opt);
  CHECK(classical_correlation_discord(bell_res) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-3));

  // classical input: C' equals its mutual information
  Matrix diag = Matrix::Zero(4, 4);
  diag(0, 0) = 0.6;
  diag(3, 3) = 0.4;
  const DensityMatrix cl(TensorShape{2, 2}, diag);
  const DiscordResult cl_res = discord_mcmc(cl, opt);
  CHECK(classical_correlation_discord(cl_res) ==
        doctest::Approx(mutual_information(cl)).epsilon(1e-6));
}
