#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "itopo/bounds.hpp"
#include "itopo/graph.hpp"
#include "itopo/ilp.hpp"
#include "itopo/interference.hpp"
#include "support/fixtures.hpp"

using namespace itopo;
using namespace itopo::testing;
namespace fs = std::filesystem;

namespace {

const std::string kBin = ITOPO_BIN;

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir("cli_" + name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& f) const {
    return (dir / f).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("generate emits a loadable canonical graph, reproducibly") {
  Scratch s("gen");
  std::string g1 = s / "g1.txt";
  CmdResult r = run_cmd(kBin + " generate --n 12 --seed 7 -o " + g1);
  CHECK(r.status == 0);
  NetworkGraph g = load_graph_file(g1);
  CHECK_NOTHROW(validate_network(g));
  CHECK(g.overlay_ids().front() == 1);

  std::string g2 = s / "g2.txt";
  CHECK(run_cmd(kBin + " generate --n 12 --seed 7 -o " + g2).status == 0);
  CHECK(slurp(g1) == slurp(g2));

  // Different seed, different graph.
  std::string g3 = s / "g3.txt";
  CHECK(run_cmd(kBin + " generate --n 12 --seed 8 -o " + g3).status == 0);
  CHECK(slurp(g1) != slurp(g3));
}

TEST_CASE("fmatrix matches the library and writes to stdout by default") {
  Scratch s("fm");
  std::string gp = s / "g.txt";
  save_graph_file(make_deep_tree7(), gp);
  std::string fp = s / "f.csv";
  CHECK(run_cmd(kBin + " fmatrix -g " + gp + " -o " + fp).status == 0);
  CHECK(load_fmatrix_file(fp) ==
        interference_from_topology(make_deep_tree7()));

  CmdResult out = run_cmd(kBin + " fmatrix -g " + gp);
  CHECK(out.status == 0);
  CHECK(out.out == slurp(fp));
}

TEST_CASE("infer-f agrees with the ground-truth matrix byte for byte") {
  Scratch s("inf");
  std::string gp = s / "g.txt";
  save_graph_file(make_star3(), gp);
  CmdResult truth = run_cmd(kBin + " fmatrix -g " + gp);
  CmdResult est = run_cmd(kBin + " infer-f -g " + gp + " --seed 5");
  CHECK(truth.status == 0);
  CHECK(est.status == 0);
  CHECK(est.out == truth.out);
  // Same seed, same bytes.
  CmdResult est2 = run_cmd(kBin + " infer-f -g " + gp + " --seed 5");
  CHECK(est2.out == est.out);
}

TEST_CASE("recover rebuilds a tree from its matrix") {
  Scratch s("rec");
  std::string gp = s / "g.txt";
  std::string fp = s / "f.csv";
  std::string hp = s / "ghat.txt";
  save_graph_file(make_deep_tree7(), gp);
  REQUIRE(run_cmd(kBin + " fmatrix -g " + gp + " -o " + fp).status == 0);
  CmdResult r = run_cmd(kBin + " recover --algo tree -f " + fp + " -o " + hp);
  CHECK(r.status == 0);
  CHECK(tree_encoding(canonical_form(load_graph_file(hp))) ==
        tree_encoding(make_deep_tree7()));

  CmdResult gen = run_cmd(kBin + " recover --algo general -f " + fp);
  CHECK(gen.status == 0);
  CHECK(gen.out.find("f_distance=0") != std::string::npos);
}

TEST_CASE("recover reports pattern mismatches through exit status") {
  Scratch s("recfail");
  std::string gp = s / "g.txt";
  std::string fp = s / "f.csv";
  save_graph_file(make_ring(6, 3), gp);
  REQUIRE(run_cmd(kBin + " fmatrix -g " + gp + " -o " + fp).status == 0);
  CmdResult r = run_cmd(kBin + " recover --algo tree -f " + fp + " 2>&1");
  CHECK(r.status == 1);
  CHECK(r.out.find("error: NotATree") != std::string::npos);
}

TEST_CASE("bounds prints the full bound chain and the link condition") {
  Scratch s("bnd");
  std::string gp = s / "g.txt";
  std::string fp = s / "f.csv";
  save_graph_file(make_grid(), gp);
  REQUIRE(run_cmd(kBin + " fmatrix -g " + gp + " -o " + fp).status == 0);
  CmdResult r = run_cmd(kBin + " bounds -f " + fp + " -g " + gp);
  CHECK(r.status == 0);
  CHECK(r.out.find("upper_bound=") != std::string::npos);
  CHECK(r.out.find("cover_size=") != std::string::npos);
  CHECK(r.out.find("lower_bound=") != std::string::npos);
  CHECK(r.out.find("feasible_edges=") != std::string::npos);
  CHECK(r.out.find("condition_holds=false") != std::string::npos);
  CHECK(r.out.find("witness_free={11,12}") != std::string::npos);

  // On a minimal tree the condition holds and no witness-free edges appear.
  Scratch t("bndtree");
  std::string tg = t / "g.txt";
  std::string tf = t / "f.csv";
  save_graph_file(make_star3(), tg);
  REQUIRE(run_cmd(kBin + " fmatrix -g " + tg + " -o " + tf).status == 0);
  CmdResult rt = run_cmd(kBin + " bounds -f " + tf + " -g " + tg + " --exact");
  CHECK(rt.status == 0);
  CHECK(rt.out.find("condition_holds=true") != std::string::npos);
  CHECK(rt.out.find("witness_free=\n") != std::string::npos);
  CHECK(rt.out.find("(exact)") != std::string::npos);

  // Exact covering is fenced; past the edge budget the tool says so and
  // leaves greedy as the route forward.
  Scratch u("bndbig");
  std::string ug = u / "g.txt";
  std::string uf = u / "f.csv";
  save_graph_file(make_deep_tree7(), ug);
  REQUIRE(run_cmd(kBin + " fmatrix -g " + ug + " -o " + uf).status == 0);
  CmdResult big = run_cmd(kBin + " bounds -f " + uf + " --exact 2>&1");
  CHECK(big.status == 1);
  CHECK(big.out.find("error: BudgetExceeded") != std::string::npos);
  CHECK(run_cmd(kBin + " bounds -f " + uf).status == 0);
}

TEST_CASE("ilp export, solve and verify round trip") {
  Scratch s("ilp");
  std::string gp = s / "g.txt";
  std::string fp = s / "f.csv";
  std::string lp = s / "m.lp";
  std::string sol = s / "sol.txt";
  std::string ghat = s / "ghat.txt";
  save_graph_file(make_star3(), gp);
  REQUIRE(run_cmd(kBin + " fmatrix -g " + gp + " -o " + fp).status == 0);

  CHECK(run_cmd(kBin + " ilp-export -f " + fp + " --nodes 4 -o " + lp)
            .status == 0);
  IlpModel parsed = parse_lp(slurp(lp));
  CHECK(same_structure(
      parsed, build_ilp_model(interference_from_topology(make_star3()), 4)));

  CmdResult solved =
      run_cmd(kBin + " ilp-solve -f " + fp + " --nodes 4 -o " + ghat);
  CHECK(solved.status == 0);
  CHECK(solved.out.find("objective=3") != std::string::npos);
  CHECK(solved.out.find("optimal=true") != std::string::npos);
  NetworkGraph rebuilt = load_graph_file(ghat);
  CHECK(rebuilt.num_edges() == 3);

  // Fake an external solver answer from the known optimum and verify it.
  std::ostringstream text;
  for (auto [a, b] : rebuilt.edges()) text << "x_" << a << "_" << b << " 1\n";
  auto ts = enumerate_tunnels(rebuilt);
  for (std::size_t l = 0; l < ts.size(); ++l)
    for (auto [i, j] : ts[l].links)
      text << "xt_" << (l + 1) << "_" << i << "_" << j << " 1\n";
  spit(sol, text.str());
  CmdResult ok = run_cmd(kBin + " verify -f " + fp + " -s " + sol);
  CHECK(ok.status == 0);
  CHECK(ok.out.find("feasible") != std::string::npos);

  // Drop one edge variable: the paths no longer fit the graph.
  std::string broken = text.str();
  broken = broken.substr(broken.find('\n') + 1);
  spit(sol, broken);
  CmdResult bad = run_cmd(kBin + " verify -f " + fp + " -s " + sol);
  CHECK(bad.status == 1);
  CHECK(bad.out.find("violation:") != std::string::npos);
}

TEST_CASE("evaluate writes the study csv and honours --jobs") {
  Scratch s("eval");
  std::string cfgp = s / "study.cfg";
  std::string csv1 = s / "r1.csv";
  std::string csv2 = s / "r2.csv";
  spit(cfgp,
       "n = 10\n"
       "trials = 4\n"
       "seed = 11\n"
       "recovery = general\n");
  CmdResult r1 = run_cmd(kBin + " evaluate -c " + cfgp + " -o " + csv1);
  CHECK(r1.status == 0);
  CHECK(r1.out.find("n=10") != std::string::npos);
  CmdResult r2 = run_cmd(kBin + " evaluate -c " + cfgp + " -o " + csv2 +
                         " --jobs 3");
  CHECK(r2.status == 0);

  auto strip_runtime = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
      auto cut = line.rfind(',');
      out += line.substr(0, cut) + "\n";
    }
    return out;
  };
  std::string a = slurp(csv1);
  std::string b = slurp(csv2);
  CHECK(a.substr(0, a.find('\n')) ==
        "n,seed,algorithm,edit_distance,f_hamming,runtime_ms");
  CHECK(strip_runtime(a) == strip_runtime(b));
}

TEST_CASE("export-dot emits graphviz text") {
  Scratch s("dot");
  std::string gp = s / "g.txt";
  save_graph_file(make_star3(), gp);
  CmdResult r = run_cmd(kBin + " export-dot -g " + gp);
  CHECK(r.status == 0);
  CHECK(r.out.find("graph") != std::string::npos);
  CHECK(r.out.find("--") != std::string::npos);
}

TEST_CASE("usage errors exit 2, runtime errors exit 1") {
  Scratch s("err");
  CmdResult usage = run_cmd(kBin + " fmatrix 2>&1");
  CHECK(usage.status == 2);

  CmdResult missing =
      run_cmd(kBin + " fmatrix -g " + (s / "absent.txt") + " 2>&1");
  CHECK(missing.status == 1);
  CHECK(missing.out.find("error: IoError") != std::string::npos);

  CmdResult badalgo = run_cmd(kBin + " recover --algo magic -f x 2>&1");
  CHECK(badalgo.status == 2);

  CmdResult nosub = run_cmd(kBin + " 2>&1");
  CHECK(nosub.status == 2);
}
