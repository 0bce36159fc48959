#include "xorcodes/search.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "text.hpp"
#include "xorcodes/parallel.hpp"

namespace xorcodes {

namespace {

constexpr std::size_t full_rank_tries = 1000;

CodeCandidate make_candidate(BinaryMatrix g, const SearchConfig& cfg, Rng& rng, Provenance provenance)
{
  auto vd = evaluate_vd(g, cfg, rng);
  const double score = cfg.objective.score(vd);
  return CodeCandidate{std::move(g), std::move(vd), score, std::move(provenance)};
}

std::string latin_token(const LatinRectangle& rect)
{
  std::string out;
  for (std::size_t r = 0; r < rect.height(); ++r) {
    if (r > 0)
      out.push_back('/');
    for (std::size_t c = 0; c < rect.width(); ++c) {
      if (c > 0)
        out.push_back(',');
      out += std::to_string(rect.at(r, c));
    }
  }
  return out;
}

} // namespace

double Objective::score(const DecodingVector& vd) const
{
  if (weights.empty())
    return p_success(vd, reference_p).p_s;
  if (weights.size() != vd.size())
    throw std::invalid_argument("objective weights must have n - k + 1 entries");
  double total = 0.0;
  for (std::size_t i = 0; i < vd.size(); ++i)
    total += weights[i] * vd.rho(i);
  return total;
}

void SearchConfig::validate() const
{
  if (k < 1)
    throw std::invalid_argument("k must be at least 1");
  if (n <= k)
    throw std::invalid_argument("n must be greater than k");
  if (k1 % 2 == 0)
    throw std::invalid_argument("k1 must be odd");
  if (algorithm == Algorithm::balanced_xor && k1 > k)
    throw std::invalid_argument("k1 must not exceed k");
  if (algorithm == Algorithm::balanced_xor && k1 == k && k > 1)
    throw std::invalid_argument("k1 = k gives the all-ones block, which is singular; pick k1 < k");
  if (algorithm != Algorithm::random_linear && algorithm != Algorithm::balanced_xor)
    throw std::invalid_argument("algorithm must be 1 or 2");
  if (attempts < 1)
    throw std::invalid_argument("attempts must be at least 1");
  if (stagnation_limit < 1)
    throw std::invalid_argument("stagnation limit must be at least 1");
  if (!(objective.reference_p >= 0.0 && objective.reference_p <= 1.0))
    throw std::invalid_argument("reference erasure probability must lie in [0, 1]");
  if (!objective.weights.empty() && objective.weights.size() != n - k + 1)
    throw std::invalid_argument("objective weights must have n - k + 1 entries");
  if (samples == 0) {
    for (std::size_t size = k; size <= n; ++size)
      if (binomial(n, size) > exact_threshold)
        throw std::invalid_argument("C(" + std::to_string(n) + "," + std::to_string(size) +
                                    ") exceeds the exact enumeration threshold; use sampling");
  }
}

DecodingVector evaluate_vd(const BinaryMatrix& g, const SearchConfig& cfg, Rng& rng)
{
  if (cfg.samples == 0)
    return exact_vd(g, ExactOptions{cfg.exact_threshold, 1});
  return sampled_vd(g, SampleOptions{cfg.samples, cfg.exact_threshold, 1}, rng);
}

CodeCandidate init_random(const SearchConfig& cfg, Rng& rng)
{
  cfg.validate();
  for (std::size_t attempt = 0; attempt < full_rank_tries; ++attempt) {
    auto g = random_matrix(cfg.k, cfg.n, rng);
    if (rank(g) == cfg.k) {
      Provenance prov;
      prov.algorithm = Algorithm::random_linear;
      prov.k1 = cfg.k1;
      return make_candidate(std::move(g), cfg, rng, std::move(prov));
    }
  }
  throw std::runtime_error("no full-rank random generator found in " + std::to_string(full_rank_tries) + " tries");
}

CodeCandidate init_balanced(const SearchConfig& cfg, Rng& rng)
{
  cfg.validate();
  auto block = random_balanced_code(cfg.k, cfg.k1, rng);

  BinaryMatrix g(cfg.k, cfg.n);
  for (std::size_t r = 0; r < cfg.k; ++r) {
    for (std::size_t c = 0; c < cfg.k; ++c)
      if (block.matrix.get(r, c))
        g.set(r, c, true);
    g.set(r, cfg.k, true);
  }
  for (std::size_t r = 0; r < cfg.k; ++r)
    for (std::size_t c = cfg.k + 1; c < cfg.n; ++c)
      if (rng() & 1U)
        g.set(r, c, true);

  Provenance prov;
  prov.algorithm = Algorithm::balanced_xor;
  prov.k1 = cfg.k1;
  prov.rectangle = std::move(block.rectangle);
  return make_candidate(std::move(g), cfg, rng, std::move(prov));
}

std::size_t mutable_positions(const SearchConfig& cfg)
{
  if (cfg.algorithm == Algorithm::random_linear)
    return cfg.k * cfg.n;
  return cfg.n > cfg.k + 1 ? cfg.k * (cfg.n - cfg.k - 1) : 0;
}

CodeCandidate neighbor(const CodeCandidate& c, const SearchConfig& cfg, Rng& rng)
{
  const std::size_t positions = mutable_positions(cfg);
  if (positions == 0)
    throw std::invalid_argument("code has no mutable positions");
  const std::size_t first_col = cfg.algorithm == Algorithm::random_linear ? 0 : cfg.k + 1;
  const std::size_t width = cfg.n - first_col;

  std::uniform_int_distribution<std::size_t> pick(0, positions - 1);
  const std::size_t at = pick(rng);
  BinaryMatrix g = c.g;
  g.flip(at / width, first_col + at % width);
  return make_candidate(std::move(g), cfg, rng, c.provenance);
}

bool better(const CodeCandidate& a, const CodeCandidate& b)
{
  if (a.score != b.score)
    return a.score > b.score;
  const auto av = a.vd.entries();
  const auto bv = b.vd.entries();
  return std::lexicographical_compare(bv.begin(), bv.end(), av.begin(), av.end(),
                                      [](const VdEntry& x, const VdEntry& y) { return x.rho < y.rho; });
}

CodeCandidate climb(CodeCandidate start, const SearchConfig& cfg, Rng& rng, const ClimbObserver& on_accept)
{
  CodeCandidate current = std::move(start);
  if (mutable_positions(cfg) == 0)
    return current;

  std::size_t rejections = 0;
  for (std::size_t step = 0; step < cfg.max_climb_steps && rejections < cfg.stagnation_limit; ++step) {
    auto next = neighbor(current, cfg, rng);
    ++current.provenance.proposals;
    if (better(next, current)) {
      next.provenance.proposals = current.provenance.proposals;
      next.provenance.accepted_moves = current.provenance.accepted_moves + 1;
      current = std::move(next);
      rejections = 0;
      if (on_accept)
        on_accept(current);
    } else {
      ++rejections;
    }
  }
  return current;
}

CodeCandidate run_restart(const SearchConfig& cfg, std::size_t restart)
{
  const std::uint64_t seed = derive_seed(cfg.master_seed, restart);
  Rng rng{seed};
  auto start = cfg.algorithm == Algorithm::random_linear ? init_random(cfg, rng) : init_balanced(cfg, rng);
  start.provenance.restart = restart;
  start.provenance.seed = seed;
  return climb(std::move(start), cfg, rng);
}

std::vector<CodeCandidate> search_family(const SearchConfig& cfg)
{
  cfg.validate();
  std::vector<std::optional<CodeCandidate>> slots(cfg.attempts);
  parallel_for(cfg.attempts, cfg.threads, [&](std::size_t i) { slots[i] = run_restart(cfg, i); });

  std::vector<CodeCandidate> all;
  all.reserve(slots.size());
  for (auto& s : slots)
    all.push_back(std::move(*s));
  return pareto_front(std::move(all));
}

bool dominates(const DecodingVector& a, const DecodingVector& b)
{
  if (a.n() != b.n() || a.k() != b.k())
    throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.rho(i) < b.rho(i))
      return false;
  return true;
}

std::vector<CodeCandidate> pareto_front(std::vector<CodeCandidate> candidates)
{
  std::vector<bool> keep(candidates.size(), true);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size() && keep[i]; ++j) {
      if (i == j || !dominates(candidates[j].vd, candidates[i].vd))
        continue;
      // Equal vectors dominate each other; the earliest one stays.
      const bool equal = dominates(candidates[i].vd, candidates[j].vd);
      keep[i] = equal && i < j;
    }
  }
  std::vector<CodeCandidate> front;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (keep[i])
      front.push_back(std::move(candidates[i]));
  std::stable_sort(front.begin(), front.end(),
                   [](const CodeCandidate& a, const CodeCandidate& b) { return a.score > b.score; });
  return front;
}

std::string format_provenance(const Provenance& p, double score)
{
  std::string out = "algorithm=" + std::to_string(static_cast<int>(p.algorithm));
  out += " restart=" + std::to_string(p.restart);
  out += " seed=" + std::to_string(p.seed);
  out += " k1=" + std::to_string(p.k1);
  out += " accepted=" + std::to_string(p.accepted_moves);
  out += " proposals=" + std::to_string(p.proposals);
  out += " score=" + format_real(score);
  if (p.rectangle)
    out += " latin=" + latin_token(*p.rectangle);
  return out;
}

std::string format_family(const std::vector<CodeCandidate>& family)
{
  std::string out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& c = family[i];
    if (i > 0)
      out.push_back('\n');
    out += format_matrix(c.g);
    for (std::size_t j = 0; j < c.vd.size(); ++j) {
      if (j > 0)
        out.push_back(',');
      out += format_real(c.vd.rho(j));
    }
    out.push_back('\n');
    out += format_provenance(c.provenance, c.score) + "\n";
  }
  return out;
}

std::string describe_config(const SearchConfig& cfg)
{
  std::ostringstream os;
  os << "n=" << cfg.n << " k=" << cfg.k << " k1=" << cfg.k1 << " algorithm=" << static_cast<int>(cfg.algorithm)
     << " attempts=" << cfg.attempts << " max_climb_steps=" << cfg.max_climb_steps
     << " stagnation_limit=" << cfg.stagnation_limit << " seed=" << cfg.master_seed;
  if (cfg.objective.weights.empty()) {
    os << " objective=p_success ref_p=" << format_real(cfg.objective.reference_p);
  } else {
    os << " objective=weights:";
    for (std::size_t i = 0; i < cfg.objective.weights.size(); ++i)
      os << (i ? "," : "") << format_real(cfg.objective.weights[i]);
  }
  if (cfg.samples == 0)
    os << " vd=exact threshold=" << cfg.exact_threshold;
  else
    os << " vd=sampled samples=" << cfg.samples << " threshold=" << cfg.exact_threshold;
  return os.str();
}

std::vector<FamilyRecord> parse_family(std::string_view text)
{
  const auto lines = detail::split_lines(text);
  std::vector<FamilyRecord> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < lines.size() && (lines[i].empty() || lines[i].front() == '#'))
      ++i;
  };

  for (skip(); i < lines.size(); skip()) {
    const std::size_t header_line = i;
    const std::string_view header = lines[i];
    std::size_t rows = 0;
    const auto parsed = std::from_chars(header.data(), header.data() + header.size(), rows);
    if (parsed.ec != std::errc{} || rows == 0 || i + rows + 2 >= lines.size())
      throw ParseError(header_line + 1, "truncated family record");

    std::string block;
    for (std::size_t r = 0; r <= rows; ++r)
      block.append(lines[i + r]).push_back('\n');
    FamilyRecord rec{parse_matrix(block), {}, {}};
    i += rows + 1;

    std::string_view vd_line = lines[i];
    std::size_t pos = 0;
    while (pos <= vd_line.size()) {
      const std::size_t end = std::min(vd_line.find(',', pos), vd_line.size());
      rec.rho.push_back(std::stod(std::string(vd_line.substr(pos, end - pos))));
      pos = end + 1;
    }
    ++i;

    std::istringstream prov{std::string(lines[i])};
    std::string token;
    while (prov >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw ParseError(i + 1, "provenance token without '='");
      rec.provenance[token.substr(0, eq)] = token.substr(eq + 1);
    }
    ++i;
    out.push_back(std::move(rec));
  }
  return out;
}

} // namespace xorcodes
