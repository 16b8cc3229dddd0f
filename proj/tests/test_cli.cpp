// Exit-code and output-contract checks for the qcn binary (path in QCN_CLI).
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok: " : "FAILED: ") << what << "\n";
  if (!ok) ++g_failures;
}

std::string cli() {
  if (const char* env = std::getenv("QCN_CLI")) return env;
  return "./qcn";
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " > cli_test.log 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  check(run("estimate --map rose_petal --out cli_est.csv") == 0,
        "estimate exits 0");
  const std::string est = slurp("cli_est.csv");
  check(est.rfind("kind,value,log10_value,param_json\n", 0) == 0,
        "stable CSV header");
  check(est.find("thm47_inf") != std::string::npos &&
            est.find("thm51_beta") != std::string::npos &&
            est.find("classical_elliptic") != std::string::npos &&
            est.find("quasidisc_MK") != std::string::npos,
        "estimate emits one row per bound kind");
  check(est.find("\"\"best\"\":true") != std::string::npos,
        "the best applicable bound is marked");

  check(run("bounds --map rose_petal --out cli_bounds.csv") == 0,
        "bounds alias exits 0");
  check(slurp("cli_bounds.csv") == est, "bounds alias matches estimate");

  // The thm47 row carries the best-bound marker for the petal.
  {
    std::istringstream lines(est);
    std::string line;
    bool thm47_best = false;
    while (std::getline(lines, line))
      if (line.rfind("thm47_inf,", 0) == 0 &&
          line.find("\"\"best\"\":true") != std::string::npos)
        thm47_best = true;
    check(thm47_best, "thm47 is the best bound for the petal");
  }

  check(run("estimate --map disc --out cli_disc.csv") == 0,
        "disc estimate exits 0");
  check(slurp("cli_disc.csv").find("payne_weinberger,") != std::string::npos,
        "pure Payne-Weinberger row appears for K = 1");

  check(run("estimate --map bogus") == 4, "unknown map exits 4");
  check(run("verify --map disc --nr 2 --na 8") == 4,
        "invalid resolution exits 4");
  check(run("verify --map rose_petal --nr 16 --na 64 --refine 1 "
            "--format json --out cli_verify.json") == 0,
        "verify exits 0 when all bounds hold");
  const std::string rep = slurp("cli_verify.json");
  check(rep.find("\"mu1_fem\"") != std::string::npos &&
            rep.find("\"violations\": []") != std::string::npos,
        "verify report carries mu1 and an empty violation list");

  // Disc at the default resolution: mu1 within the documented band.
  check(run("verify --map disc --format json --out cli_disc.json") == 0,
        "disc verify exits 0");
  {
    const std::string disc_rep = slurp("cli_disc.json");
    const std::string key = "\"mu1_fem\": ";
    const size_t at = disc_rep.find(key);
    double mu1 = 0.0;
    if (at != std::string::npos) mu1 = std::stod(disc_rep.substr(at + key.size()));
    check(mu1 > 3.32 && mu1 < 3.46, "disc mu1 in [3.32, 3.46] at (32,128)");
  }

  check(run("constants --k-list 1 1.5 --out cli_mk.csv") == 0,
        "constants exits 0");
  check(!slurp("cli_mk.csv.plot").empty(), "constants writes plot data");

  check(run("estimate --map rose_petal --format json --out cli_est.json") == 0,
        "estimate json exits 0");
  check(slurp("cli_est.json").find("\"bounds\"") != std::string::npos,
        "json output has the bound table");

  for (const char* f :
       {"cli_est.csv", "cli_bounds.csv", "cli_disc.csv", "cli_verify.json",
        "cli_disc.json", "cli_mk.csv", "cli_mk.csv.plot", "cli_est.json",
        "cli_test.log"})
    std::remove(f);

  std::cout << (g_failures == 0 ? "all CLI checks passed\n" : "FAILURES\n");
  return g_failures;
}
