#include "xorcodes/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "xorcodes/parallel.hpp"

namespace xorcodes {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t sample_chunk = 1024;
constexpr std::size_t trial_chunk = 8192;

/// Uniform double in [0, 1) from the top 53 bits.
double unit_interval(Rng& rng) noexcept
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_probability(double p)
{
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("erasure probability must lie in [0, 1]");
}

/// Pascal triangle up to n, saturating.
using ChooseTable = std::vector<std::vector<std::uint64_t>>;

ChooseTable choose_table(std::size_t n)
{
  ChooseTable t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t a = 0; a <= n; ++a) {
    t[a][0] = 1;
    for (std::size_t b = 1; b <= a; ++b) {
      const std::uint64_t x = t[a - 1][b - 1];
      const std::uint64_t y = t[a - 1][b];
      t[a][b] = (x > saturated - y) ? saturated : x + y;
    }
  }
  return t;
}

/// Depth-first walk over size-`size` column subsets in lexicographic order.
/// The basis is shared along the current prefix; once a prefix reaches rank k,
/// every completion is decodable and is counted in one step.
class SubsetCounter {
public:
  SubsetCounter(std::span<const std::span<const Word>> columns, std::size_t k, std::size_t size,
                const ChooseTable& choose)
    : columns_{columns}
    , n_{columns.size()}
    , k_{k}
    , size_{size}
    , basis_(k)
    , choose_{choose}
  {}

  /// Subsets whose smallest index is `first`.
  std::uint64_t count_with_first(std::size_t first)
  {
    basis_.clear();
    basis_.insert(columns_[first]);
    return count(first + 1, 1);
  }

private:
  std::uint64_t count(std::size_t start, std::size_t picked)
  {
    const std::size_t need = size_ - picked;
    if (basis_.rank() == k_)
      return choose_[n_ - start][need];
    if (basis_.rank() + need < k_)
      return 0;

    const std::size_t r = basis_.rank();
    std::uint64_t total = 0;
    for (std::size_t c = start; c + need <= n_; ++c) {
      basis_.insert(columns_[c]);
      total += count(c + 1, picked + 1);
      basis_.truncate(r);
    }
    return total;
  }

  std::span<const std::span<const Word>> columns_;
  std::size_t n_;
  std::size_t k_;
  std::size_t size_;
  ColumnBasis basis_;
  const ChooseTable& choose_;
};

void check_code_shape(const BinaryMatrix& g)
{
  if (g.rows() > g.cols())
    throw std::invalid_argument("generator matrix must have k <= n");
}

VdEntry exact_entry(const BinaryMatrix& g, std::size_t size, unsigned threads)
{
  VdEntry e;
  e.mode = EntryMode::exact;
  e.trials = binomial(g.cols(), size);
  e.hits = count_decodable_subsets(g, size, threads);
  e.rho = static_cast<double>(e.hits) / static_cast<double>(e.trials);
  return e;
}

} // namespace

const char* to_string(EntryMode mode) noexcept
{
  switch (mode) {
  case EntryMode::exact:
    return "exact";
  case EntryMode::sampled:
    return "sampled";
  case EntryMode::analytic:
    return "analytic";
  }
  return "unknown";
}

DecodingVector::DecodingVector(std::size_t n, std::size_t k, std::vector<VdEntry> entries)
  : n_{n}
  , k_{k}
  , entries_{std::move(entries)}
{
  if (k_ < 1 || k_ > n_)
    throw std::invalid_argument("decoding vector needs 1 <= k <= n");
  if (entries_.size() != n_ - k_ + 1)
    throw std::invalid_argument("decoding vector must have n - k + 1 entries");
  for (const auto& e : entries_)
    if (!(e.rho >= 0.0 && e.rho <= 1.0))
      throw std::invalid_argument("decoding probabilities must lie in [0, 1]");
}

DecodingVector DecodingVector::from_values(std::size_t n, std::size_t k, std::vector<double> rho, EntryMode mode)
{
  std::vector<VdEntry> entries;
  entries.reserve(rho.size());
  for (double r : rho)
    entries.push_back(VdEntry{r, mode, 0, 0, 0.0});
  return DecodingVector(n, k, std::move(entries));
}

std::vector<double> DecodingVector::values() const
{
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_)
    out.push_back(e.rho);
  return out;
}

EntryMode DecodingVector::mode() const noexcept
{
  bool analytic = false;
  for (const auto& e : entries_) {
    if (e.mode == EntryMode::sampled)
      return EntryMode::sampled;
    analytic = analytic || e.mode == EntryMode::analytic;
  }
  return analytic ? EntryMode::analytic : EntryMode::exact;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept
{
  if (r > n)
    return 0;
  r = std::min(r, n - r);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (n - r + i) / i;
    if (c > saturated)
      return saturated;
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t count_decodable_subsets(const BinaryMatrix& g, std::size_t size, unsigned threads)
{
  if (size < g.rows() || size > g.cols())
    return 0;
  std::vector<std::span<const Word>> columns;
  columns.reserve(g.cols());
  for (std::size_t c = 0; c < g.cols(); ++c)
    columns.push_back(g.column_words(c));
  const ChooseTable choose = choose_table(g.cols());

  const std::size_t firsts = g.cols() - size + 1;
  if (resolve_threads(threads) == 1) {
    SubsetCounter counter(columns, g.rows(), size, choose);
    std::uint64_t total = 0;
    for (std::size_t first = 0; first < firsts; ++first)
      total += counter.count_with_first(first);
    return total;
  }
  std::vector<std::uint64_t> partial(firsts, 0);
  parallel_for(firsts, threads, [&](std::size_t first) {
    SubsetCounter counter(columns, g.rows(), size, choose);
    partial[first] = counter.count_with_first(first);
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

DecodingVector exact_vd(const BinaryMatrix& g, const ExactOptions& options)
{
  check_code_shape(g);
  const std::size_t n = g.cols();
  const std::size_t k = g.rows();
  for (std::size_t size = k; size <= n; ++size) {
    const std::uint64_t subsets = binomial(n, size);
    if (subsets > options.threshold)
      throw ThresholdExceeded("C(" + std::to_string(n) + "," + std::to_string(size) + ") = " +
                              (subsets == saturated ? std::string("overflow") : std::to_string(subsets)) +
                              " exceeds the exact enumeration threshold " + std::to_string(options.threshold) +
                              "; use sampling");
  }

  std::vector<VdEntry> entries;
  entries.reserve(n - k + 1);
  for (std::size_t size = k; size <= n; ++size)
    entries.push_back(exact_entry(g, size, options.threads));
  return DecodingVector(n, k, std::move(entries));
}

DecodingVector sampled_vd(const BinaryMatrix& g, const SampleOptions& options, Rng& rng)
{
  check_code_shape(g);
  if (options.samples_per_entry < 1)
    throw std::invalid_argument("samples_per_entry must be at least 1");
  const std::size_t n = g.cols();
  const std::size_t k = g.rows();
  const std::uint64_t base_seed = rng();

  std::vector<VdEntry> entries(n - k + 1);
  std::size_t longest_sampled = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (binomial(n, k + i) <= options.threshold)
      entries[i] = exact_entry(g, k + i, options.threads);
    else {
      entries[i].mode = EntryMode::sampled;
      longest_sampled = k + i;
    }
  }
  if (longest_sampled == 0)
    return DecodingVector(n, k, std::move(entries));

  const std::uint64_t samples = options.samples_per_entry;
  const std::size_t chunks = static_cast<std::size_t>((samples + sample_chunk - 1) / sample_chunk);
  // histogram[c][t]: samples in chunk c whose first t columns were the shortest full-rank prefix
  std::vector<std::vector<std::uint64_t>> histogram(chunks, std::vector<std::uint64_t>(longest_sampled + 1, 0));

  parallel_for(chunks, options.threads, [&](std::size_t chunk) {
    Rng local = make_rng(base_seed, chunk);
    ColumnBasis basis(k);
    std::vector<std::size_t> order(n);
    const std::uint64_t begin = chunk * sample_chunk;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + sample_chunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      basis.clear();
      for (std::size_t t = 0; t < longest_sampled; ++t) {
        std::uniform_int_distribution<std::size_t> pick(t, n - 1);
        std::swap(order[t], order[pick(local)]);
        basis.insert(g.column_words(order[t]));
        if (basis.rank() == k) {
          ++histogram[chunk][t + 1];
          break;
        }
      }
    }
  });

  std::vector<std::uint64_t> reached(longest_sampled + 1, 0);
  for (const auto& h : histogram)
    for (std::size_t t = 0; t <= longest_sampled; ++t)
      reached[t] += h[t];
  std::partial_sum(reached.begin(), reached.end(), reached.begin());

  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    if (e.mode != EntryMode::sampled)
      continue;
    e.trials = samples;
    e.hits = reached[k + i];
    e.rho = static_cast<double>(e.hits) / static_cast<double>(samples);
    e.standard_error = std::sqrt(e.rho * (1.0 - e.rho) / static_cast<double>(samples));
  }
  return DecodingVector(n, k, std::move(entries));
}

double binomial_pmf(std::size_t n, std::size_t i, double p)
{
  check_probability(p);
  if (i > n)
    return 0.0;
  if (p == 0.0)
    return i == 0 ? 1.0 : 0.0;
  if (p == 1.0)
    return i == n ? 1.0 : 0.0;
  const auto ni = static_cast<double>(n - i);
  const auto id = static_cast<double>(i);
  if (n <= 60)
    return static_cast<double>(binomial(n, i)) * std::pow(p, id) * std::pow(1.0 - p, ni);
  const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(id + 1.0) - std::lgamma(ni + 1.0);
  return std::exp(log_choose + id * std::log(p) + ni * std::log1p(-p));
}

ChannelPoint p_success(const DecodingVector& vd, double p)
{
  check_probability(p);
  const std::size_t n = vd.n();
  const std::size_t redundancy = n - vd.k();

  ChannelPoint point;
  point.p = p;
  for (std::size_t lost = 0; lost <= redundancy; ++lost)
    point.p_u1 += binomial_pmf(n, lost, p) * (1.0 - vd.rho(redundancy - lost));
  for (std::size_t lost = redundancy + 1; lost <= n; ++lost)
    point.p_u2 += binomial_pmf(n, lost, p);

  point.p_s = std::clamp(1.0 - (point.p_u1 + point.p_u2), 0.0, 1.0);
  point.p_u = 1.0 - point.p_s;
  return point;
}

std::vector<double> probability_grid(double p_min, double p_max, double step)
{
  check_probability(p_min);
  check_probability(p_max);
  if (p_min > p_max)
    throw std::invalid_argument("p_min must not exceed p_max");
  if (!(step > 0.0))
    throw std::invalid_argument("p_step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 0.5)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t j = 0; j < count; ++j)
    grid.push_back(std::min(1.0, p_min + static_cast<double>(j) * step));
  return grid;
}

std::vector<ChannelPoint> channel_sweep(const DecodingVector& vd, std::span<const double> grid)
{
  std::vector<ChannelPoint> out;
  out.reserve(grid.size());
  for (double p : grid)
    out.push_back(p_success(vd, p));
  return out;
}

double rlnc_probability(std::size_t received, std::size_t k, std::uint64_t q)
{
  if (q < 2)
    throw std::invalid_argument("field size q must be at least 2");
  if (k < 1)
    throw std::invalid_argument("k must be at least 1");
  if (received < k)
    return 0.0;
  double product = 1.0;
  for (std::size_t j = 0; j < k; ++j)
    product *= 1.0 - std::pow(static_cast<double>(q), -static_cast<double>(received - j));
  return product;
}

DecodingVector rlnc_vd(std::size_t n, std::size_t k, std::uint64_t q)
{
  if (n < k)
    throw std::invalid_argument("n must be at least k");
  std::vector<VdEntry> entries;
  for (std::size_t i = 0; i <= n - k; ++i)
    entries.push_back(VdEntry{rlnc_probability(k + i, k, q), EntryMode::analytic, 0, 0, 0.0});
  return DecodingVector(n, k, std::move(entries));
}

bool is_mds(const DecodingVector& vd)
{
  if (vd.mode() == EntryMode::sampled)
    throw std::invalid_argument("MDS predicate requires exact V_D");
  return std::all_of(vd.entries().begin(), vd.entries().end(), [](const VdEntry& e) { return e.rho == 1.0; });
}

Estimate simulate_ps(const BinaryMatrix& g, double p, std::uint64_t trials, Rng& rng, unsigned threads)
{
  check_probability(p);
  if (trials < 1)
    throw std::invalid_argument("trials must be at least 1");
  const std::uint64_t base_seed = rng();
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  const std::size_t chunks = static_cast<std::size_t>((trials + trial_chunk - 1) / trial_chunk);
  std::vector<std::uint64_t> successes(chunks, 0);

  parallel_for(chunks, threads, [&](std::size_t chunk) {
    Rng local = make_rng(base_seed, chunk);
    ColumnBasis basis(k);
    const std::uint64_t begin = chunk * trial_chunk;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + trial_chunk);
    std::uint64_t ok = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      basis.clear();
      for (std::size_t c = 0; c < n; ++c) {
        const bool erased = unit_interval(local) < p;
        if (!erased && basis.rank() < k)
          basis.insert(g.column_words(c));
      }
      ok += basis.rank() == k ? 1 : 0;
    }
    successes[chunk] = ok;
  });

  Estimate est;
  est.trials = trials;
  est.successes = std::accumulate(successes.begin(), successes.end(), std::uint64_t{0});
  est.value = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.standard_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(trials));
  return est;
}

std::string format_real(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.9g", value);
  return buf;
}

double round3(double value)
{
  return std::round(value * 1000.0) / 1000.0;
}

std::string format_vd_csv(const DecodingVector& vd)
{
  std::string out = "i,rho,mode,stderr\n";
  for (std::size_t i = 0; i < vd.size(); ++i) {
    const auto& e = vd.entry(i);
    out += std::to_string(i) + "," + format_real(e.rho) + "," + to_string(e.mode) + "," +
           format_real(e.standard_error) + "\n";
  }
  return out;
}

std::string format_sweep_csv(std::span<const ChannelPoint> points)
{
  std::string out = "p,p_s,p_u\n";
  for (const auto& pt : points)
    out += format_real(pt.p) + "," + format_real(pt.p_s) + "," + format_real(pt.p_u) + "\n";
  return out;
}

} // namespace xorcodes
