#include "commands.hpp"

#include <cmath>
#include <limits>

#include "xorcodes/gf2.hpp"
#include "xorcodes/version.hpp"

namespace xorcodes::cli {

namespace {

std::string manifest(const std::string& subcommand, const std::string& config)
{
  return "# xorcodes " + subcommand + " version=" + version + " " + config + "\n";
}

std::string describe_grid(const SweepGrid& grid)
{
  return "p_min=" + format_real(grid.p_min) + " p_max=" + format_real(grid.p_max) +
         " p_step=" + format_real(grid.p_step);
}

std::string vd_and_sweep(const DecodingVector& vd, const SweepGrid& grid)
{
  const auto points = probability_grid(grid.p_min, grid.p_max, grid.p_step);
  return format_vd_csv(vd) + "\n" + format_sweep_csv(channel_sweep(vd, points));
}

DecodingVector evaluate(const BinaryMatrix& g, std::uint64_t samples, std::uint64_t threshold, std::uint64_t seed,
                        unsigned threads)
{
  if (samples == 0) {
    try {
      return exact_vd(g, ExactOptions{threshold, threads});
    } catch (const ThresholdExceeded& e) {
      throw ThresholdExceeded(std::string(e.what()) + " (rerun with --samples N)");
    }
  }
  Rng rng{seed};
  return sampled_vd(g, SampleOptions{samples, threshold, threads}, rng);
}

std::string describe_vd_mode(std::uint64_t samples, std::uint64_t threshold, std::uint64_t seed)
{
  if (samples == 0)
    return "vd=exact threshold=" + std::to_string(threshold);
  return "vd=sampled samples=" + std::to_string(samples) + " threshold=" + std::to_string(threshold) +
         " seed=" + std::to_string(seed);
}

} // namespace

std::string run_eval(const EvalOptions& opts)
{
  const auto g = load_matrix(opts.matrix);
  if (g.rows() > g.cols())
    throw std::invalid_argument("generator matrix must have k <= n");
  const auto vd = evaluate(g, opts.samples, opts.threshold, opts.seed, opts.threads);
  std::string out = manifest("eval", "input=" + opts.matrix.string() + " " +
                                         describe_vd_mode(opts.samples, opts.threshold, opts.seed) + " " +
                                         describe_grid(opts.grid));
  out += "# code n=" + std::to_string(g.cols()) + " k=" + std::to_string(g.rows()) + "\n";
  return out + vd_and_sweep(vd, opts.grid);
}

std::string run_baseline(const BaselineOptions& opts)
{
  if (opts.k < 1 || opts.n < opts.k)
    throw std::invalid_argument("baseline needs 1 <= k <= n");
  const auto vd = rlnc_vd(opts.n, opts.k, opts.q);
  std::string out = manifest("baseline", "n=" + std::to_string(opts.n) + " k=" + std::to_string(opts.k) +
                                             " q=" + std::to_string(opts.q) + " " + describe_grid(opts.grid));
  return out + vd_and_sweep(vd, opts.grid);
}

std::string run_simulate(const SimulateOptions& opts)
{
  const auto g = load_matrix(opts.matrix);
  if (g.rows() > g.cols())
    throw std::invalid_argument("generator matrix must have k <= n");
  Rng rng{opts.seed};
  const auto est = simulate_ps(g, opts.p, opts.trials, rng, opts.threads);
  const auto vd = evaluate(g, opts.samples, opts.threshold, derive_seed(opts.seed, 1), opts.threads);
  const double analytic = p_success(vd, opts.p).p_s;

  double z = 0.0;
  const double diff = est.value - analytic;
  if (est.standard_error > 0.0)
    z = diff / est.standard_error;
  else if (std::abs(diff) > 1e-12)
    z = std::copysign(std::numeric_limits<double>::infinity(), diff);

  std::string out = manifest("simulate", "input=" + opts.matrix.string() + " p=" + format_real(opts.p) +
                                             " trials=" + std::to_string(opts.trials) +
                                             " seed=" + std::to_string(opts.seed) + " " +
                                             describe_vd_mode(opts.samples, opts.threshold, opts.seed));
  out += "estimate=" + format_real(est.value) + "\n";
  out += "stderr=" + format_real(est.standard_error) + "\n";
  out += "analytic=" + format_real(analytic) + "\n";
  out += "z=" + format_real(z) + "\n";
  return out;
}

SearchResult run_search(const SearchConfig& cfg)
{
  const auto family = search_family(cfg);
  SearchResult result;
  result.family_file = manifest("search", describe_config(cfg));
  result.family_file += "# candidates=" + std::to_string(family.size()) + "\n";
  result.family_file += format_family(family);

  const auto& best = family.front();
  result.summary = "best_score=" + format_real(best.score) + "\nbest_vd=";
  for (std::size_t i = 0; i < best.vd.size(); ++i)
    result.summary += (i ? "," : "") + format_real(best.vd.rho(i));
  result.summary += "\ncandidates=" + std::to_string(family.size()) + "\n";
  return result;
}

} // namespace xorcodes::cli
