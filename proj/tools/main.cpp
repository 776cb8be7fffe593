#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "orlicz/runner.hpp"

namespace {

orlicz::ExperimentConfig load_base(const std::string& config_path) {
  if (config_path.empty()) return {};
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config '" + config_path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return orlicz::parse_config(body.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-space uncertainty and recovery experiments on Z_N^d"};
  app.require_subcommand(1);

  orlicz::ExperimentConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config file (sections per module)");
    sub->add_option("--seed", cfg.seed, "master RNG seed");
    sub->add_option("--trials", cfg.trials, "trial count");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--n", cfg.n, "modulus N");
    sub->add_option("--d", cfg.d, "dimension d");
    sub->add_option("--phi", cfg.phi, "Young function, e.g. power(p=2)");
    sub->add_option("--psi", cfg.psi, "second Young function");
  };

  auto* verify = app.add_subcommand("verify", "run an inequality-registry sweep");
  add_common(verify);
  verify->add_option("--id", cfg.verify_id, "registry id, e.g. HOLDER_1C");

  auto* norms = app.add_subcommand("norms", "norm reports for a signal CSV");
  add_common(norms);
  norms->add_option("--input", cfg.input, "signal CSV (index,re,im)");

  auto* restr = app.add_subcommand("restriction-estimate", "lower-bound the restriction constant");
  add_common(restr);
  restr->add_option("--set", cfg.input, "frequency-set CSV (default: generic sample)");
  restr->add_option("--budget", cfg.budget, "random-sample budget");
  restr->add_option("--expected-size", cfg.expected_size, "generic-set expected size");

  auto* lambda = app.add_subcommand("lambda-estimate", "lower-bound the Lambda_Phi constant");
  add_common(lambda);
  lambda->add_option("--set", cfg.input, "frequency-set CSV (default: generic sample)");
  lambda->add_option("--budget", cfg.budget, "random-sample budget");
  lambda->add_option("--expected-size", cfg.expected_size, "generic-set expected size");

  auto* genset = app.add_subcommand("genset", "sample a Bernoulli generic set");
  add_common(genset);
  genset->add_option("--expected-size", cfg.expected_size, "expected cardinality");

  auto* up = app.add_subcommand("up", "evaluate an uncertainty-principle bound");
  add_common(up);
  up->add_option("--theorem", cfg.up_theorem,
                 "classical|restriction-i|restriction-ii|annihilating|lambda-phi|burstein");
  up->add_option("--signal", cfg.up_signal, "comb|delta|constant|spectral|<csv path>");
  up->add_option("--branch", cfg.up_branch, "above|below (position of psi vs x^2)");
  up->add_option("--alpha", cfg.up_alpha, "Burstein family parameter");

  auto* recover = app.add_subcommand("recover", "basis-pursuit recovery from a spectrum");
  add_common(recover);
  recover->add_option("--input", cfg.input, "observed spectrum CSV");
  recover->add_option("--erased", cfg.erased, "erased frequency CSV");

  auto* phase = app.add_subcommand("phase", "success-rate table over (|E|, |S|)");
  add_common(phase);
  phase->add_option("--e-sizes", cfg.e_sizes, "support sizes");
  phase->add_option("--s-sizes", cfg.s_sizes, "erased-set sizes");
  phase->add_option("--c-restriction", cfg.c_restriction, "restriction constant for certificates");
  phase->add_option("--d-random", cfg.d_random, "D constant for the random-model certificate");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.task = app.get_subcommands().front()->get_name();
    // config file first, then explicit flags override it
    if (!config_path.empty()) {
      orlicz::ExperimentConfig base = load_base(config_path);
      const orlicz::ExperimentConfig defaults;
      base.task = cfg.task;
      if (cfg.seed != defaults.seed) base.seed = cfg.seed;
      if (cfg.trials != defaults.trials) base.trials = cfg.trials;
      if (cfg.out != defaults.out) base.out = cfg.out;
      if (cfg.n != defaults.n) base.n = cfg.n;
      if (cfg.d != defaults.d) base.d = cfg.d;
      if (cfg.phi != defaults.phi) base.phi = cfg.phi;
      if (cfg.psi != defaults.psi) base.psi = cfg.psi;
      if (cfg.input != defaults.input) base.input = cfg.input;
      if (cfg.erased != defaults.erased) base.erased = cfg.erased;
      if (cfg.verify_id != defaults.verify_id) base.verify_id = cfg.verify_id;
      if (cfg.budget != defaults.budget) base.budget = cfg.budget;
      if (cfg.expected_size != defaults.expected_size) base.expected_size = cfg.expected_size;
      if (cfg.up_theorem != defaults.up_theorem) base.up_theorem = cfg.up_theorem;
      if (cfg.up_signal != defaults.up_signal) base.up_signal = cfg.up_signal;
      if (cfg.up_branch != defaults.up_branch) base.up_branch = cfg.up_branch;
      if (cfg.up_alpha != defaults.up_alpha) base.up_alpha = cfg.up_alpha;
      if (cfg.e_sizes != defaults.e_sizes) base.e_sizes = cfg.e_sizes;
      if (cfg.s_sizes != defaults.s_sizes) base.s_sizes = cfg.s_sizes;
      if (cfg.c_restriction != defaults.c_restriction) base.c_restriction = cfg.c_restriction;
      if (cfg.d_random != defaults.d_random) base.d_random = cfg.d_random;
      cfg = base;
    }
    const orlicz::RunResult res = orlicz::run(cfg);
    for (const auto& path : res.artifacts) std::printf("wrote %s\n", path.c_str());
    if (res.hypothesis_failures > 0)
      std::printf("hypothesis failures: %d (counted in the manifest, exit stays 0)\n",
                  res.hypothesis_failures);
    if (res.hard_failures > 0) std::printf("hard failures: %d\n", res.hard_failures);
    return res.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
