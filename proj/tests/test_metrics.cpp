#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "xorcodes/metrics.hpp"

using namespace xorcodes;

namespace {

// Exact rational evaluation of the channel formula on the golden code at
// p = 0.1, computed offline with fractions and cross-checked by a 10^6-trial
// Monte Carlo run over the 2^13 erasure patterns (estimate 0.99996, z = 0.49).
constexpr double golden_ps_at_0_1 = 0.9999568878273;

// (decodable, total) per entry for the golden code, from exhaustive enumeration
// in an independent script.
constexpr std::uint64_t golden_hits[] = {792, 1536, 1680, 1284, 715, 286, 78, 13, 1};
constexpr std::uint64_t golden_totals[] = {1287, 1716, 1716, 1287, 715, 286, 78, 13, 1};

BinaryMatrix parity_3_2()
{
  return BinaryMatrix::from_strings({"101", "011"});
}

std::vector<double> grid101()
{
  return probability_grid(0.0, 1.0, 0.01);
}

} // namespace

TEST(Binomial, ExactAndSaturating)
{
  EXPECT_EQ(binomial(13, 6), 1716u);
  EXPECT_EQ(binomial(5, 7), 0u);
  EXPECT_EQ(binomial(108, 3), 204'156u);
  EXPECT_EQ(binomial(60, 30), 118'264'581'564'861'424ULL);
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(ExactVd, GoldenGenerator)
{
  const auto vd = exact_vd(fixtures::golden_13_5());
  ASSERT_EQ(vd.size(), 9u);
  for (std::size_t i = 0; i < vd.size(); ++i) {
    EXPECT_EQ(vd.entry(i).hits, golden_hits[i]);
    EXPECT_EQ(vd.entry(i).trials, golden_totals[i]);
    EXPECT_EQ(vd.entry(i).mode, EntryMode::exact);
  }
  for (std::size_t i = 0; i < std::size(fixtures::golden_vd); ++i)
    EXPECT_EQ(round3(vd.rho(i)), fixtures::golden_vd[i]) << i;
  EXPECT_EQ(vd.rho(8), 1.0);
}

TEST(ExactVd, TrivialCodes)
{
  const auto id = exact_vd(BinaryMatrix::identity(5));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id.rho(0), 1.0);

  const auto parity = exact_vd(parity_3_2());
  EXPECT_EQ(parity.values(), (std::vector<double>{1.0, 1.0}));
}

TEST(ExactVd, ThresholdNamesTheBinomial)
{
  Rng rng{1};
  const auto g = random_matrix(5, 30, rng);
  try {
    exact_vd(g, ExactOptions{1000, 1});
    FAIL() << "expected ThresholdExceeded";
  } catch (const ThresholdExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("C(30,5)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(exact_vd(BinaryMatrix(4, 3)), std::invalid_argument);
}

TEST(ExactVd, MatchesErasurePatternOracle)
{
  Rng rng{77};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t k = 1 + rng() % n;
    const auto g = random_matrix(k, n, rng);
    const auto vd = exact_vd(g);
    const auto expected = oracle::erasure_pattern_vd(g);
    for (std::size_t i = 0; i < vd.size(); ++i) {
      ASSERT_EQ(vd.entry(i).hits, expected[i].first) << format_matrix(g);
      ASSERT_EQ(vd.entry(i).trials, expected[i].second);
    }
  }
}

TEST(ExactVd, IndependentOfThreadCount)
{
  Rng rng{3};
  const auto g = random_matrix(6, 16, rng);
  EXPECT_EQ(exact_vd(g, ExactOptions{default_enumeration_threshold, 1}),
            exact_vd(g, ExactOptions{default_enumeration_threshold, 4}));
}

TEST(ExactVd, MonotoneAndFullRankEndpoint)
{
  Rng rng{5};
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 13;
    const std::size_t k = 1 + rng() % (n - 1);
    auto g = random_matrix(k, n, rng);
    if (trial % 3 == 0)
      for (std::size_t c = 0; c < n; ++c)
        g.set(k - 1, c, false);
    const auto vd = exact_vd(g);
    for (std::size_t i = 0; i + 1 < vd.size(); ++i)
      EXPECT_LE(vd.rho(i), vd.rho(i + 1));
    EXPECT_EQ(vd.rho(n - k) == 1.0, rank(g) == k);
  }
}

TEST(SampledVd, AgreesWithExactWithinFourStandardErrors)
{
  const auto g = fixtures::golden_13_5();
  const auto exact = exact_vd(g);
  Rng rng{2718};
  const auto sampled = sampled_vd(g, SampleOptions{100'000, 1, 1}, rng);
  EXPECT_EQ(sampled.mode(), EntryMode::sampled);
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const auto& e = sampled.entry(i);
    if (e.mode == EntryMode::exact) {
      EXPECT_EQ(e.rho, exact.rho(i));
      continue;
    }
    EXPECT_EQ(e.trials, 100'000u);
    EXPECT_NEAR(e.standard_error, std::sqrt(e.rho * (1 - e.rho) / 1e5), 1e-15);
    EXPECT_LE(std::abs(e.rho - exact.rho(i)), 4 * e.standard_error + 1e-12) << "entry " << i;
  }
  // single subset at the top is always enumerated
  EXPECT_EQ(sampled.entry(8).mode, EntryMode::exact);
  EXPECT_EQ(sampled.rho(8), 1.0);
  for (std::size_t i = 0; i + 1 < sampled.size(); ++i)
    EXPECT_LE(sampled.rho(i), sampled.rho(i + 1));
}

TEST(SampledVd, DeterministicAndThreadIndependent)
{
  const auto g = fixtures::golden_13_5();
  Rng a{9}, b{9};
  const auto first = sampled_vd(g, SampleOptions{5000, 1, 1}, a);
  const auto second = sampled_vd(g, SampleOptions{5000, 1, 3}, b);
  EXPECT_EQ(first, second);
}

TEST(SampledVd, SmallCodesFallBackToEnumeration)
{
  const auto g = fixtures::golden_13_5();
  Rng rng{1};
  EXPECT_EQ(sampled_vd(g, SampleOptions{}, rng), exact_vd(g));
  EXPECT_THROW(sampled_vd(g, SampleOptions{0, 1, 1}, rng), std::invalid_argument);
}

TEST(PSuccess, Endpoints)
{
  const auto vd = exact_vd(fixtures::golden_13_5());
  EXPECT_DOUBLE_EQ(p_success(vd, 0.0).p_s, vd.rho(vd.size() - 1));
  EXPECT_EQ(p_success(vd, 1.0).p_s, 0.0);

  const auto half = DecodingVector::from_values(3, 2, {0.25, 0.5});
  EXPECT_DOUBLE_EQ(p_success(half, 0.0).p_s, 0.5);
  EXPECT_THROW(p_success(vd, -0.01), std::invalid_argument);
  EXPECT_THROW(p_success(vd, 1.5), std::invalid_argument);
  EXPECT_THROW(p_success(vd, std::nan("")), std::invalid_argument);
}

TEST(PSuccess, GoldenCodeAtTenPercent)
{
  const auto pt = p_success(exact_vd(fixtures::golden_13_5()), 0.1);
  EXPECT_NEAR(pt.p_s, golden_ps_at_0_1, 1e-12);
  EXPECT_NEAR(pt.p_s + pt.p_u, 1.0, 1e-12);
  EXPECT_NEAR(pt.p_u1 + pt.p_u2, pt.p_u, 1e-12);
}

TEST(PSuccess, HandComputedTwoByThree)
{
  // [3,2] with rho = (0.5, 1): P(no loss) + P(one loss) * rho_0
  const auto vd = DecodingVector::from_values(3, 2, {0.5, 1.0});
  const double p = 0.2;
  const double expected = std::pow(0.8, 3) + 3 * 0.2 * 0.64 * 0.5;
  EXPECT_NEAR(p_success(vd, p).p_s, expected, 1e-15);
}

TEST(PSuccess, NonincreasingInErasureProbability)
{
  Rng rng{31};
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_matrix(4, 10, rng);
    const auto vd = exact_vd(g);
    const auto sweep = channel_sweep(vd, grid101());
    ASSERT_EQ(sweep.size(), 101u);
    for (std::size_t j = 0; j + 1 < sweep.size(); ++j)
      EXPECT_GE(sweep[j].p_s + 1e-12, sweep[j + 1].p_s);
  }
}

TEST(PSuccess, NondecreasingInEachEntry)
{
  const auto base = exact_vd(fixtures::golden_13_5());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto raised = base.values();
    raised[i] = std::min(1.0, raised[i] + 0.05);
    const auto up = DecodingVector::from_values(13, 5, raised);
    for (double p : grid101())
      EXPECT_GE(p_success(up, p).p_s + 1e-15, p_success(base, p).p_s);
  }
}

TEST(BinomialPmf, LogPathSumsToOne)
{
  for (double p : {0.01, 0.1, 0.37, 0.5, 0.9}) {
    double total = 0;
    for (std::size_t i = 0; i <= 108; ++i)
      total += binomial_pmf(108, i, p);
    EXPECT_NEAR(total, 1.0, 1e-12);
    // exact and log branches agree where both are valid
    const double exact = binomial_pmf(60, 7, p);
    const double logged = std::exp(std::lgamma(61.0) - std::lgamma(8.0) - std::lgamma(54.0) + 7 * std::log(p) +
                                   53 * std::log1p(-p));
    EXPECT_NEAR(exact, logged, 1e-12);
  }
}

TEST(Rlnc, ProductFormula)
{
  EXPECT_EQ(rlnc_probability(4, 5, 2), 0.0);
  EXPECT_EQ(rlnc_probability(4, 5, 7), 0.0);
  EXPECT_EQ(rlnc_probability(1, 1, 2), 0.5);
  EXPECT_EQ(rlnc_probability(5, 5, 2), 0.298004150390625);
  EXPECT_THROW(rlnc_probability(5, 5, 1), std::invalid_argument);

  double direct = 1.0;
  for (int j = 1; j <= 5; ++j)
    direct *= 1.0 - 1.0 / std::pow(4.0, j);
  EXPECT_NEAR(rlnc_vd(13, 5, 4).rho(0), direct, 1e-15);
  EXPECT_NEAR(direct, 0.6887617288157344, 1e-15);
}

TEST(Rlnc, VectorShapeAndMonotonicity)
{
  const auto single = rlnc_vd(5, 5, 2);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.rho(0), 0.298004150390625);
  EXPECT_EQ(single.mode(), EntryMode::analytic);

  for (std::size_t k = 1; k <= 10; ++k) {
    for (std::uint64_t q : {2u, 4u, 8u}) {
      const auto vd = rlnc_vd(k + 8, k, q);
      for (std::size_t i = 0; i + 1 < vd.size(); ++i)
        EXPECT_LT(vd.rho(i), vd.rho(i + 1));
      if (q < 8) {
        const auto bigger = rlnc_vd(k + 8, k, q * 2);
        for (std::size_t i = 0; i < vd.size(); ++i)
          EXPECT_LT(vd.rho(i), bigger.rho(i));
      }
    }
  }
}

TEST(IsMds, Basics)
{
  EXPECT_TRUE(is_mds(exact_vd(parity_3_2())));
  EXPECT_TRUE(is_mds(exact_vd(BinaryMatrix::identity(4))));
  EXPECT_FALSE(is_mds(exact_vd(fixtures::golden_13_5())));

  Rng rng{0};
  const auto sampled = sampled_vd(fixtures::golden_13_5(), SampleOptions{100, 1, 1}, rng);
  try {
    is_mds(sampled);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "MDS predicate requires exact V_D");
  }
}

TEST(SimulatePs, Endpoints)
{
  const auto g = fixtures::golden_13_5();
  Rng rng{1};
  const auto clean = simulate_ps(g, 0.0, 10'000, rng);
  EXPECT_EQ(clean.value, 1.0);
  EXPECT_EQ(clean.standard_error, 0.0);
  EXPECT_EQ(simulate_ps(g, 1.0, 10'000, rng).value, 0.0);
  EXPECT_THROW(simulate_ps(g, 0.1, 0, rng), std::invalid_argument);
}

TEST(SimulatePs, GoldenCodeAgreesWithChannelFormula)
{
  Rng rng{17};
  const auto est = simulate_ps(fixtures::golden_13_5(), 0.1, 1'000'000, rng);
  EXPECT_LE(std::abs(est.value - golden_ps_at_0_1), 3 * est.standard_error);
}

TEST(SimulatePs, ThreadCountDoesNotChangeResult)
{
  const auto g = fixtures::golden_13_5();
  Rng a{8}, b{8};
  const auto one = simulate_ps(g, 0.3, 100'000, a, 1);
  const auto four = simulate_ps(g, 0.3, 100'000, b, 4);
  EXPECT_EQ(one.successes, four.successes);
}

TEST(Csv, Formatting)
{
  EXPECT_EQ(format_real(1.0), "1.00000000");
  EXPECT_EQ(format_real(0.298004150390625), "0.298004150");
  EXPECT_EQ(format_real(0.0), "0.00000000");
  EXPECT_EQ(round3(0.9976689976689976), 0.998);
  EXPECT_EQ(round3(0.0005), 0.001);

  const auto csv = format_vd_csv(exact_vd(fixtures::golden_13_5()));
  EXPECT_EQ(csv.substr(0, csv.find('\n', 18) + 1), "i,rho,mode,stderr\n0,0.615384615,exact,0.00000000\n");

  const auto sweep = format_sweep_csv(channel_sweep(exact_vd(BinaryMatrix::identity(2)), probability_grid(0, 0.5, 0.25)));
  EXPECT_EQ(sweep, "p,p_s,p_u\n0.00000000,1.00000000,0.00000000\n0.250000000,0.562500000,0.437500000\n"
                   "0.500000000,0.250000000,0.750000000\n");
}

TEST(Grid, DefaultSweepHasFiftyOnePoints)
{
  const auto grid = probability_grid(0.0, 0.5, 0.01);
  ASSERT_EQ(grid.size(), 51u);
  EXPECT_NEAR(grid.back(), 0.5, 1e-12);
  EXPECT_THROW(probability_grid(0.3, 0.2, 0.01), std::invalid_argument);
  EXPECT_THROW(probability_grid(0.0, 0.5, 0.0), std::invalid_argument);
}
