// End-to-end checks of the command-line interface: exit codes, byte-identical
// reruns, and numeric agreement with the golden files under tests/golden.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;
std::string g_source_dir;

int run(const std::string& args, const std::string& out_path) {
  const std::string cmd =
      g_cli + " " + args + " > " + out_path + " 2> out_cli.err";
  return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// parse every numeric token; non-numeric tokens must match literally
bool numerically_equal(const std::string& a, const std::string& b,
                       double tol) {
  auto tokens = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',' || ch == '\n' || ch == ' ' || ch == '=') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  const auto ta = tokens(a), tb = tokens(b);
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    char* enda = nullptr;
    char* endb = nullptr;
    const double va = std::strtod(ta[i].c_str(), &enda);
    const double vb = std::strtod(tb[i].c_str(), &endb);
    const bool num_a = enda && *enda == '\0' && enda != ta[i].c_str();
    const bool num_b = endb && *endb == '\0' && endb != tb[i].c_str();
    if (num_a != num_b) return false;
    if (num_a) {
      if (std::abs(va - vb) > tol * std::max({1.0, std::abs(va)})) return false;
    } else if (ta[i] != tb[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("nonsense-subcommand", "out_usage.txt") != 0);
  CHECK(run("--log-base 3 bell", "out_usage.txt") != 0);
}

TEST_CASE("bell triple matches golden output") {
  REQUIRE(run("bell", "out_bell.txt") == 0);
  CHECK(numerically_equal(slurp("out_bell.txt"),
                          slurp(g_source_dir + "/golden/bell.txt"), 1e-6));
}

TEST_CASE("identical invocations are byte-identical") {
  REQUIRE(run("--seed 7 discord --family werner --c 0.2:0.8:0.3 --steps 400 "
              "--restarts 2",
              "out_d1.csv") == 0);
  REQUIRE(run("--seed 7 discord --family werner --c 0.2:0.8:0.3 --steps 400 "
              "--restarts 2",
              "out_d2.csv") == 0);
  CHECK(slurp("out_d1.csv") == slurp("out_d2.csv"));

  // a different seed changes the sampled walk
  REQUIRE(run("--seed 8 discord --family werner --c 0.2:0.8:0.3 --steps 400 "
              "--restarts 2",
              "out_d3.csv") == 0);
  CHECK(slurp("out_d1.csv") != slurp("out_d3.csv"));
}

TEST_CASE("discord scan stays within 1e-3 of the closed form") {
  REQUIRE(run("--seed 7 discord --family werner --c 0.1:0.9:0.2", "out_disc.csv") ==
          0);
  std::istringstream in(slurp("out_disc.csv"));
  std::string line;
  std::getline(in, line);  // header
  CHECK(line == "c,discord,closed_form,status");
  int rows = 0;
  while (std::getline(in, line)) {
    double c, d, f;
    char comma;
    std::istringstream ls(line);
    ls >> c >> comma >> d >> comma >> f;
    CHECK(std::abs(d - f) < 1e-3);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("werner scan at reduced resolution matches golden") {
  REQUIRE(run("--seed 11 werner --p 0.0:1.0:0.25", "out_werner.csv") == 0);
  CHECK(numerically_equal(slurp("out_werner.csv"),
                          slurp(g_source_dir + "/golden/werner.csv"), 1e-5));
}

TEST_CASE("hubbard scan and rcrit match golden") {
  REQUIRE(run("hubbard --ssr n --T 0.1 --r 0.5:2.5:0.5", "out_hub.csv") == 0);
  CHECK(numerically_equal(slurp("out_hub.csv"),
                          slurp(g_source_dir + "/golden/hubbard_mode.csv"),
                          1e-8));

  REQUIRE(run("hubbard --picture particle --ssr n --T 0.1 --r 0.5:2.5:0.5",
              "out_hubp.csv") == 0);
  CHECK(numerically_equal(slurp("out_hubp.csv"),
                          slurp(g_source_dir + "/golden/hubbard_particle.csv"),
                          1e-8));

  REQUIRE(run("hubbard rcrit --picture mode --T 0.1", "out_rc.csv") == 0);
  CHECK(numerically_equal(slurp("out_rc.csv"),
                          slurp(g_source_dir + "/golden/rcrit_mode.csv"),
                          1e-6));
  REQUIRE(run("hubbard rcrit --picture particle --T 0.1", "out_rcp.csv") == 0);
  CHECK(numerically_equal(slurp("out_rcp.csv"),
                          slurp(g_source_dir + "/golden/rcrit_particle.csv"),
                          1e-6));
}

TEST_CASE("twoorb / particle / rdm consume the fixture file") {
  const std::string fixture = g_source_dir + "/fixtures/singlet.rdm";

  REQUIRE(run("rdm " + fixture, "out_rdm.txt") == 0);
  CHECK(slurp("out_rdm.txt").find("kind = two") != std::string::npos);

  REQUIRE(run("twoorb --rdm " + fixture + " --ssr n", "out_to.txt") == 0);
  CHECK(numerically_equal(slurp("out_to.txt"),
                          slurp(g_source_dir + "/golden/twoorb_singlet.txt"),
                          1e-6));

  REQUIRE(run("particle --rdm " + fixture, "out_part.txt") == 0);
  CHECK(numerically_equal(slurp("out_part.txt"),
                          slurp(g_source_dir + "/golden/particle_singlet.txt"),
                          1e-8));

  // validation failure path: corrupt file exits 1
  {
    std::ofstream bad("out_bad.rdm");
    bad << "orbrdm 1\nkind two\nbasis omega,up,down,updown\nsigns jw-lsb\n"
           "0 0 0.7 0\n";
  }
  CHECK(run("twoorb --rdm out_bad.rdm", "out_badresult.txt") != 0);
}

TEST_CASE("log base 2 rescales the bell triple") {
  REQUIRE(run("--log-base 2 bell", "out_bell2.txt") == 0);
  const std::string text = slurp("out_bell2.txt");
  CHECK(text.find("I = 2") != std::string::npos);
  CHECK(text.find("E = 1") != std::string::npos);
  CHECK(text.find("C = 1") != std::string::npos);
}

TEST_CASE("sep-opt on an rdm file emits both bounds") {
  const std::string fixture = g_source_dir + "/fixtures/singlet.rdm";
  REQUIRE(run("sep-opt --rdm " + fixture + " --terms 16 --restarts 4",
              "out_so.csv") == 0);
  std::istringstream in(slurp("out_so.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "E_RE,E_PPT,sweeps,status");
  double e_re = 0.0;
  std::istringstream(row) >> e_re;
  CHECK(std::abs(e_re - std::log(2.0)) < 1e-5);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <cli-binary> <tests-source-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_source_dir = argv[2];
  doctest::Context context;
  return context.run();
}
