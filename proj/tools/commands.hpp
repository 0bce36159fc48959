#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "xorcodes/metrics.hpp"
#include "xorcodes/search.hpp"

namespace xorcodes::cli {

struct SweepGrid {
  double p_min = 0.0;
  double p_max = 0.5;
  double p_step = 0.01;
};

struct EvalOptions {
  std::filesystem::path matrix;
  std::uint64_t samples = 0; ///< 0 = exact enumeration
  std::uint64_t threshold = default_enumeration_threshold;
  std::uint64_t seed = 0;
  SweepGrid grid;
  unsigned threads = 1;
};

struct BaselineOptions {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t q = 2;
  SweepGrid grid;
};

struct SimulateOptions {
  std::filesystem::path matrix;
  double p = 0.1;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0; ///< for the analytic side when enumeration is too large
  std::uint64_t threshold = default_enumeration_threshold;
  unsigned threads = 1;
};

struct SearchResult {
  std::string family_file;
  std::string summary;
};

// Every run_* returns the complete output text, starting with a '#' manifest
// header. Nothing in the output depends on the thread count.
std::string run_eval(const EvalOptions& opts);
std::string run_baseline(const BaselineOptions& opts);
std::string run_simulate(const SimulateOptions& opts);
SearchResult run_search(const SearchConfig& cfg);

} // namespace xorcodes::cli
