#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "orlicz/group.hpp"
#include "orlicz/runner.hpp"

using namespace orlicz;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace

TEST_CASE("config round-trip is idempotent and strict") {
  ExperimentConfig cfg;
  cfg.task = "phase";
  cfg.seed = 99;
  cfg.trials = 7;
  cfg.n = 16;
  cfg.phi = "powerlog(p=2,alpha=1)";
  cfg.e_sizes = {1, 4, 9};
  cfg.support_tol = 2.5e-11;

  const std::string text = serialize_config(cfg);
  const ExperimentConfig back = parse_config(text);
  CHECK(back == cfg);
  CHECK(serialize_config(back) == text);  // parse -> serialize -> parse fixed point

  CHECK_THROWS_WITH_AS(parse_config("[nope]\nx = 1\n"),
                       doctest::Contains("unknown section"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[dims]\nq = 1\n"), doctest::Contains("unknown key"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[dims]\nn 4\n"), doctest::Contains("key = value"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("n = 4\n"), doctest::Contains("outside any section"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("[dims]\nn = x\n"), doctest::Contains("line 2"),
                       std::invalid_argument);

  // comments and spacing are tolerated
  const ExperimentConfig commented =
      parse_config("# top\n[dims]\n  n = 4   # inline\n\nd = 2\n");
  CHECK(commented.n == 4);
  CHECK(commented.d == 2);
}

TEST_CASE("config hash tracks content") {
  ExperimentConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 2;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("runner: verify task writes deterministic reports") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.task = "verify";
  cfg.verify_id = "NORMALIZE";
  cfg.trials = 40;
  cfg.seed = 11;
  cfg.n = 8;
  cfg.out = (fs::temp_directory_path() / "orlicz_run_a").string();
  const RunResult a = run(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.hard_failures == 0);

  cfg.out = (fs::temp_directory_path() / "orlicz_run_b").string();
  const RunResult b = run(cfg);
  CHECK(slurp(a.artifacts[0]) == slurp(b.artifacts[0]));  // reports.jsonl
  CHECK(slurp(a.artifacts[1]) == slurp(b.artifacts[1]));  // summary.csv
  CHECK(slurp(a.artifacts[0]).find("\"holds\":true") != std::string::npos);
}

TEST_CASE("runner: up task on the comb signal reports classical equality") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.task = "up";
  cfg.up_theorem = "classical";
  cfg.up_signal = "comb";
  cfg.n = 8;
  cfg.out = (fs::temp_directory_path() / "orlicz_up").string();
  const RunResult res = run(cfg);
  CHECK(res.exit_code == 0);
  const std::string body = slurp(res.artifacts[0]);
  CHECK(body.find("\"lhs\":8.0") != std::string::npos);
  CHECK(body.find("\"rhs\":8.0") != std::string::npos);
}

TEST_CASE("runner: recover task round-trips a fully observed spectrum") {
  namespace fs = std::filesystem;
  const GroupDims g = GroupDims::make(8, 1);
  const Signal truth = make_gaussian(SiteSet::full(g), 3);
  const Signal spec = dft(truth);
  const fs::path dir = fs::temp_directory_path() / "orlicz_recover";
  fs::create_directories(dir);
  {
    std::ofstream s(dir / "spectrum.csv");
    write_csv(spec, s);
    std::ofstream e(dir / "erased.csv");
    write_sites_csv(SiteSet::of(g, {}), e);
  }
  ExperimentConfig cfg;
  cfg.task = "recover";
  cfg.n = 8;
  cfg.input = (dir / "spectrum.csv").string();
  cfg.erased = (dir / "erased.csv").string();
  cfg.out = (dir / "out").string();
  const RunResult res = run(cfg);
  CHECK(res.exit_code == 0);
  std::ifstream rec(res.artifacts[0]);
  const Signal recovered = read_csv(g, rec);
  double worst = 0;
  for (std::size_t i = 0; i < g.size; ++i)
    worst = std::max(worst, std::abs(recovered.values[i] - truth.values[i]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("runner: phase task emits the documented csv header") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.task = "phase";
  cfg.n = 8;
  cfg.trials = 4;
  cfg.e_sizes = {1};
  cfg.s_sizes = {2};
  cfg.out = (fs::temp_directory_path() / "orlicz_phase").string();
  const RunResult res = run(cfg);
  CHECK(res.exit_code == 0);
  const std::string body = slurp(res.artifacts[0]);
  CHECK(body.rfind("e_size,s_size,success_rate,cert_classical,cert_restriction,cert_random", 0) ==
        0);
}

TEST_CASE("runner: norms task reports all methods for a signal file") {
  namespace fs = std::filesystem;
  const GroupDims g = GroupDims::make(8, 1);
  const fs::path dir = fs::temp_directory_path() / "orlicz_norms";
  fs::create_directories(dir);
  {
    std::ofstream s(dir / "signal.csv");
    write_csv(make_gaussian(SiteSet::full(g), 4), s);
  }
  ExperimentConfig cfg;
  cfg.task = "norms";
  cfg.n = 8;
  cfg.phi = "powerlog(p=2,alpha=1)";
  cfg.input = (dir / "signal.csv").string();
  cfg.out = (dir / "out").string();
  const RunResult res = run(cfg);
  CHECK(res.exit_code == 0);
  const std::string body = slurp(res.artifacts[0]);
  for (const char* key : {"luxemburg_counting", "orlicz_amemiya_counting",
                          "orlicz_dual_sup_counting", "j_phi", "\"method\": \"bisection\""})
    CHECK(body.find(key) != std::string::npos);
}

TEST_CASE("runner: estimator tasks persist auditable witnesses") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.task = "lambda-estimate";
  cfg.n = 64;
  cfg.phi = "power(p=4)";
  cfg.expected_size = 8.0;
  cfg.budget = 2;
  cfg.seed = 5;
  cfg.out = (fs::temp_directory_path() / "orlicz_lam").string();
  const RunResult lam = run(cfg);
  CHECK(lam.exit_code == 0);
  const std::string body = slurp(lam.artifacts[1]);
  CHECK(body.find("k_lower") != std::string::npos);
  CHECK(body.find("witness_path") != std::string::npos);
  const GroupDims g = GroupDims::make(64, 1);
  std::ifstream w(lam.artifacts[0]);
  CHECK(read_csv(g, w).values.size() == 64);  // witness round-trips

  cfg.task = "restriction-estimate";
  cfg.phi = "power(p=1.5)";
  cfg.psi = "power(p=3)";
  cfg.out = (fs::temp_directory_path() / "orlicz_res").string();
  const RunResult rest = run(cfg);
  CHECK(rest.exit_code == 0);
  CHECK(slurp(rest.artifacts[1]).find("c_lower") != std::string::npos);
}

TEST_CASE("runner: unknown task rejected") {
  ExperimentConfig cfg;
  cfg.task = "nope";
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}
