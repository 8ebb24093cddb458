// End-to-end checks of the CLI binary: determinism of CSV output, exit codes,
// and basic shape of each subcommand's output. Invoked by ctest with the
// binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "[FAIL] " << what << "\n";
  } else {
    std::cout << "[ ok ] " << what << "\n";
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

size_t count_lines(const std::string& s) {
  size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-helmholtz-binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string tmp = "cli_test_tmp";
  std::system(("rm -rf " + tmp + " && mkdir -p " + tmp).c_str());

  const std::string ellipse = R"('{"type":"ellipse","a":1.1,"b":0.9090909090909091}')";

  // determinism: identical perturb invocations byte-for-byte
  const std::string pcmd = cli + " perturb --boundary " + ellipse +
                           " --bc neumann --states 8 --lambda-grid -0.1:0.1:0.05 --out ";
  expect(run(pcmd + tmp + "/p1.csv") == 0, "perturb exit 0");
  expect(run(pcmd + tmp + "/p2.csv") == 0, "perturb rerun exit 0");
  const std::string p1 = slurp(tmp + "/p1.csv"), p2 = slurp(tmp + "/p2.csv");
  expect(!p1.empty() && p1 == p2, "perturb output byte-identical");
  expect(count_lines(p1) == 2 + 5 * 8, "perturb row count: header + manifest + 5 lambda x 8 states");
  expect(p1.rfind("# helmholtz", 0) == 0, "perturb manifest header present");

  // determinism: empirical
  const std::string ecmd =
      cli + " empirical --t-grid 1:3:0.5 --bc dirichlet --states 10 --out ";
  expect(run(ecmd + tmp + "/e1.csv") == 0, "empirical exit 0");
  expect(run(ecmd + tmp + "/e2.csv") == 0, "empirical rerun exit 0");
  expect(slurp(tmp + "/e1.csv") == slurp(tmp + "/e2.csv"), "empirical output byte-identical");

  // output independent of the worker count
  expect(run("HELMHOLTZ_THREADS=1 " + pcmd + tmp + "/p_t1.csv") == 0, "perturb 1 thread");
  expect(run("HELMHOLTZ_THREADS=7 " + pcmd + tmp + "/p_t7.csv") == 0, "perturb 7 threads");
  expect(slurp(tmp + "/p_t1.csv") == p1 && slurp(tmp + "/p_t7.csv") == p1,
         "output independent of HELMHOLTZ_THREADS");

  // duality scan endpoints
  expect(run(cli + " duality --t-grid 1:2:0.25 --out " + tmp + "/d.csv") == 0, "duality exit 0");
  {
    std::ifstream in(tmp + "/d.csv");
    std::string header, columns, first;
    std::getline(in, header);
    std::getline(in, columns);
    std::getline(in, first);
    expect(columns == "t,t_dual,alpha,area_t,area_tdual,delta", "duality column layout");
    expect(first.rfind("1,inf,", 0) == 0, "duality t=1 row maps to the infinite dual");
  }

  // oracle on the unit circle: small window, must converge
  expect(run(cli + " oracle --boundary '{\"type\":\"ellipse\",\"a\":1.0,\"b\":1.0}'"
                   " --bc neumann --window 1.7:2.0 --basis 24 --out " +
             tmp + "/o.csv") == 0,
         "oracle circle exit 0");
  {
    const std::string o = slurp(tmp + "/o.csv");
    expect(o.find("1.841") != std::string::npos, "oracle finds the first Neumann root");
    expect(o.find(",1\n") != std::string::npos, "oracle reports a converged row");
  }

  // empty window: zero converged results -> exit 3
  expect(run(cli + " oracle --boundary '{\"type\":\"ellipse\",\"a\":1.0,\"b\":1.0}'"
                   " --bc neumann --window 2.2:2.6 --basis 24 --out " +
             tmp + "/o_empty.csv 2>/dev/null") == 3,
         "oracle empty window exit 3");

  // invalid inputs -> exit 2
  expect(run(cli + " perturb --boundary '{\"type\":\"pentagon\"}' --bc neumann"
                   " --lambda-grid 0:0.1:0.05 --out /dev/null 2>/dev/null") == 2,
         "unknown boundary type exit 2");
  expect(run(cli + " perturb --boundary " + ellipse +
             " --bc dirichlet --lambda-grid 0:0.1:0.05 --out /dev/null 2>/dev/null") == 2,
         "dirichlet perturbation rejected with exit 2");
  expect(run(cli + " empirical --bc neumann --out /dev/null 2>/dev/null") == 2,
         "empirical without t exit 2");
  expect(run(cli + " perturb --boundary " + ellipse +
             " --bc neumann --lambda-grid 0:0.9:0.3 --out /dev/null 2>/dev/null") == 2,
         "ellipse lambda out of range exit 2");

  std::system(("rm -rf " + tmp).c_str());
  if (failures) {
    std::cerr << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
