#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using floquet::cli_main;

namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run(std::vector<std::string> args) {
  args.insert(args.begin(), "floquet");
  std::ostringstream out;
  std::ostringstream err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  const int code = cli_main(args);
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "floquet_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("unit conversion") {
  const Captured c = run({"convert", "800", "wavelength_nm_to_omega_au"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("0.05695", 0) == 0);
  CHECK(run({"convert", "1", "au_to_ev"}).out.rfind("27.211", 0) == 0);
  CHECK(run({"convert", "1", "furlongs"}).code == 2);
}

TEST_CASE("missing option exits 2 without writing output") {
  const fs::path out = scratch("missing.csv");
  const Captured c = run({"spectrum", "--f0", "0.1", "--omega", "0.2", "--L", "10", "--min", "0.01", "--max", "0.1",
                          "--steps", "4", "--out", out.string()});
  CHECK(c.code == 2);
  CHECK(c.err.find("--d") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK(run({"spectrum", "--bogus", "1"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("config file with command-line override") {
  const fs::path cfg = scratch("run.cfg");
  std::ofstream(cfg) << "# fig 3 subset\nf0=0.1\nomega=0.2\nphi0=3.14159265\nL=10\nd=30\nmin=0.05\nmax=0.3\nsteps=3\n";
  const fs::path out = scratch("cfg.csv");
  const Captured c = run({"spectrum", "--config", cfg.string(), "--steps", "5", "--out", out.string()});
  CHECK(c.code == 0);
  const std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(text.rfind("x_value,T_avg", 0) == 0);

  const fs::path bad = scratch("bad.cfg");
  std::ofstream(bad) << "f0=0.1\ncolour=blue\n";
  CHECK(run({"spectrum", "--config", bad.string()}).code == 2);
}

TEST_CASE("json format and invalid inputs") {
  const Captured c = run({"phase-sweep", "--e0", "0.06", "--f0", "0.1", "--omega", "0.2", "--L", "10", "--d", "10",
                          "--steps", "3", "--format", "json"});
  REQUIRE(c.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(c.out);
  CHECK(doc["axis"] == "phi0");
  CHECK(doc["records"].size() == 3);
  CHECK(run({"phase-sweep", "--e0", "0.06", "--f0", "0.1", "--omega", "0.2", "--L", "10", "--d", "10", "--format",
             "xml"})
            .code == 2);
  CHECK(run({"channels", "--e0", "0.1", "--f0", "0.1", "--omega", "-0.2", "--L", "10", "--d", "10"}).code == 2);
}

TEST_CASE("runtime failure exits 1") {
  // E0 = omega puts channel -1 exactly on its threshold.
  const Captured c = run({"channels", "--e0", "0.2", "--f0", "0.1", "--omega", "0.2", "--L", "10", "--d", "30"});
  CHECK(c.code == 1);
  CHECK(c.err.find("threshold") != std::string::npos);
}

TEST_CASE("other subcommands produce their schemas") {
  const Captured ch = run({"channels", "--e0", "0.1", "--f0", "0.1", "--omega", "0.2", "--L", "10", "--d", "30"});
  CHECK(ch.code == 0);
  CHECK(ch.out.rfind("n,E_n,k_re,k_im,q_re,q_im,propagating,propagating_in_field,jR,jT\n", 0) == 0);

  const Captured map = run({"current-map", "--e0", "0.06", "--f0", "0.1", "--omega", "0.2", "--L", "10", "--d", "10",
                            "--nx", "20", "--nt-per-period", "8", "--periods", "1"});
  CHECK(map.code == 0);
  CHECK(map.out.rfind("x,t,j,rho,force_sign\n", 0) == 0);
  CHECK(std::count(map.out.begin(), map.out.end(), '\n') == 1 + 20 * 9);

  const Captured st = run({"static-spectrum", "--up", "0.0625", "--L", "10", "--d", "10", "--min", "0.005", "--max",
                           "0.19", "--steps", "50"});
  CHECK(st.code == 0);
  CHECK(st.out.rfind("x_value,T_static\n", 0) == 0);
  CHECK(st.err.find("resonance") != std::string::npos);

  const fs::path states = scratch("states.csv");
  const Captured eg = run({"eigenstates", "--up", "0.0625", "--L", "10", "--d", "10", "--grid", "400", "--emax", "0.1",
                           "--states", "2", "--states-out", states.string()});
  CHECK(eg.code == 0);
  CHECK(eg.out.rfind("index,energy,well_weight,localized\n", 0) == 0);
  CHECK(slurp(states).rfind("x,V,psi[0],psi[1]\n", 0) == 0);
}
