#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "xorcodes/version.hpp"

namespace {

void add_grid(CLI::App* cmd, xorcodes::cli::SweepGrid& grid)
{
  cmd->add_option("--p-min", grid.p_min, "first erasure probability of the sweep");
  cmd->add_option("--p-max", grid.p_max, "last erasure probability of the sweep");
  cmd->add_option("--p-step", grid.p_step, "sweep step");
}

void emit(const std::string& text, const std::string& path)
{
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

} // namespace

int main(int argc, char** argv)
{
  using namespace xorcodes;

  CLI::App app{"Binary erasure code evaluation and search"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  cli::EvalOptions eval;
  std::string eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "decoding-probability vector and channel sweep of a generator matrix");
  eval_cmd->add_option("matrix", eval.matrix, "matrix text file")->required();
  eval_cmd->add_option("--samples", eval.samples, "samples per entry (0 = exact enumeration)");
  eval_cmd->add_option("--threshold", eval.threshold, "largest subset count enumerated exactly");
  eval_cmd->add_option("--seed", eval.seed, "sampling seed");
  eval_cmd->add_option("--threads", eval.threads, "worker cap (0 = all cores)");
  eval_cmd->add_option("--out", eval_out, "output file (default stdout)");
  add_grid(eval_cmd, eval.grid);

  SearchConfig search;
  int algorithm = 2;
  std::string search_out;
  auto* search_cmd = app.add_subcommand("search", "stochastic hill-climbing search for a code family");
  search_cmd->add_option("--n", search.n, "code length")->required();
  search_cmd->add_option("--k", search.k, "code dimension")->required();
  search_cmd->add_option("--k1", search.k1, "balance of the XOR block (odd)");
  search_cmd->add_option("--attempts", search.attempts, "independent restarts");
  search_cmd->add_option("--seed", search.master_seed, "master seed");
  search_cmd->add_option("--ref-p", search.objective.reference_p, "erasure probability the score is taken at");
  search_cmd->add_option("--weights", search.objective.weights, "score as a weighted sum of rho entries instead")
      ->delimiter(',');
  search_cmd->add_option("--algorithm", algorithm, "1 = random linear start, 2 = balanced XOR start")
      ->check(CLI::IsMember({1, 2}));
  search_cmd->add_option("--samples", search.samples, "sampled scoring with this many samples (0 = exact)");
  search_cmd->add_option("--threshold", search.exact_threshold, "largest subset count enumerated exactly");
  search_cmd->add_option("--max-steps", search.max_climb_steps, "neighbor proposals per climb");
  search_cmd->add_option("--stagnation", search.stagnation_limit, "consecutive rejections that end a climb");
  search_cmd->add_option("--threads", search.threads, "worker cap (0 = all cores)");
  search_cmd->add_option("--out", search_out, "family file (default stdout)");

  cli::BaselineOptions baseline;
  std::string baseline_out;
  auto* baseline_cmd = app.add_subcommand("baseline", "analytic random linear code over GF(q)");
  baseline_cmd->add_option("--n", baseline.n, "code length")->required();
  baseline_cmd->add_option("--k", baseline.k, "code dimension")->required();
  baseline_cmd->add_option("--q", baseline.q, "field size");
  baseline_cmd->add_option("--out", baseline_out, "output file (default stdout)");
  add_grid(baseline_cmd, baseline.grid);

  cli::SimulateOptions simulate;
  std::string simulate_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo erasure channel against the analytic p_s");
  simulate_cmd->add_option("matrix", simulate.matrix, "matrix text file")->required();
  simulate_cmd->add_option("--p", simulate.p, "erasure probability");
  simulate_cmd->add_option("--trials", simulate.trials, "channel trials");
  simulate_cmd->add_option("--seed", simulate.seed, "seed");
  simulate_cmd->add_option("--samples", simulate.samples, "sampled analytic side (0 = exact)");
  simulate_cmd->add_option("--threshold", simulate.threshold, "largest subset count enumerated exactly");
  simulate_cmd->add_option("--threads", simulate.threads, "worker cap (0 = all cores)");
  simulate_cmd->add_option("--out", simulate_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eval_cmd) {
      emit(cli::run_eval(eval), eval_out);
    } else if (*search_cmd) {
      search.algorithm = static_cast<Algorithm>(algorithm);
      const auto result = cli::run_search(search);
      if (search_out.empty()) {
        std::cout << result.family_file;
      } else {
        emit(result.family_file, search_out);
        std::cout << result.summary;
      }
    } else if (*baseline_cmd) {
      emit(cli::run_baseline(baseline), baseline_out);
    } else if (*simulate_cmd) {
      emit(cli::run_simulate(simulate), simulate_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
