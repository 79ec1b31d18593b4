#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "newsort/rng.hpp"

using namespace newsort;

TEST_CASE("splitmix64 reference stream from seed 0") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("identical seeds give identical streams") {
  for (std::uint64_t seed : {0ULL, 42ULL, 0xDEADBEEFULL, ~0ULL}) {
    SplitMix64 a(seed), b(seed);
    for (int i = 0; i < 256; ++i) REQUIRE(a.next() == b.next());
  }
}

TEST_CASE("distinct seeds separate within the first four outputs") {
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    SplitMix64 a(seed), b(seed + 1);
    bool differs = false;
    for (int i = 0; i < 4; ++i) differs = differs || a.next() != b.next();
    REQUIRE(differs);
  }
}

TEST_CASE("next_unit maps the top 53 bits into [0,1)") {
  SplitMix64 rng(0);
  CHECK(rng.next_unit() == static_cast<double>(0xE220A8397B1DCDAFULL >> 11) * 0x1p-53);

  SplitMix64 ranger(1234);
  for (int i = 0; i < 1'000'000; ++i) {
    const double u = ranger.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }

  SplitMix64 meanr(42);
  double sum = 0.0;
  for (int i = 0; i < 1'000'000; ++i) sum += meanr.next_unit();
  CHECK(std::abs(sum / 1e6 - 0.5) < 0.002);
}

TEST_CASE("next_unit passes a Kolmogorov-Smirnov check at the 1% level") {
  constexpr std::size_t n = 10'000;
  SplitMix64 rng(7);
  std::vector<double> u(n);
  for (auto& x : u) x = rng.next_unit();
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = static_cast<double>(i + 1) / n - u[i];
    const double lo = u[i] - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("discrete uniform sampler") {
  SplitMix64 rng(3);
  for (int i = 0; i < 10'000; ++i) REQUIRE(sample_discrete_uniform(1, rng) == 1);

  std::vector<int> counts(6, 0);
  SplitMix64 freq(9);
  for (int i = 0; i < 100'000; ++i) counts[sample_discrete_uniform(5, freq)]++;
  for (int v = 1; v <= 5; ++v) {
    CHECK(std::abs(counts[v] / 1e5 - 0.2) < 0.012);
  }

  // upper boundary: u just below 1 must never yield k+1
  const double top = std::nextafter(1.0, 0.0);
  CHECK(detail::discrete_uniform_from_unit(10, top) == 10);
  CHECK(detail::discrete_uniform_from_unit(1, top) == 1);
  CHECK(detail::discrete_uniform_from_unit(std::int64_t{1} << 62, top) < std::int64_t{1} << 62);
  CHECK(detail::discrete_uniform_from_unit(10, 0.0) == 1);
  // the clamp itself, fed a u outside the generator's half-open range
  CHECK(detail::discrete_uniform_from_unit(10, 1.0) == 10);

  CHECK_THROWS_AS(sample_discrete_uniform(0, rng), std::invalid_argument);
}

TEST_CASE("poisson product method") {
  // e^-lambda close to 1: the very first uniform already ends the loop
  SplitMix64 rng(0);
  CHECK(sample_poisson(0.001, rng) == 0);

  SplitMix64 meanr(12);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) sum += static_cast<double>(sample_poisson(1.0, meanr));
  CHECK(std::abs(sum / 1e5 - 1.0) < 0.0095);  // 3 * sqrt(1) / sqrt(1e5)

  SplitMix64 varr(13);
  std::vector<double> draws(100'000);
  for (auto& d : draws) d = static_cast<double>(sample_poisson(5.5, varr));
  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= static_cast<double>(draws.size());
  double var = 0.0;
  for (double d : draws) var += (d - mean) * (d - mean);
  var /= static_cast<double>(draws.size() - 1);
  CHECK(std::abs(var - 5.5) < 0.25);

  CHECK_THROWS_AS(sample_poisson(0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_poisson(-2.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_poisson(100.5, rng), std::invalid_argument);
}

TEST_CASE("geometric sampler counts failures before the first success") {
  SplitMix64 rng(21);
  for (int i = 0; i < 10'000; ++i) REQUIRE(sample_geometric(1.0, rng) == 0);

  CHECK(detail::geometric_from_unit(0.5, 0.0) == 0);  // ln(1) = 0
  CHECK(detail::geometric_from_unit(0.25, 0.0) == 0);

  SplitMix64 meanr(22);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) sum += static_cast<double>(sample_geometric(0.5, meanr));
  // mean (1-p)/p = 1, 3 * sqrt((1-p)/p^2) / sqrt(1e5)
  CHECK(std::abs(sum / 1e5 - 1.0) < 0.0134);

  CHECK_THROWS_AS(sample_geometric(0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_geometric(1.5, rng), std::invalid_argument);
}

TEST_CASE("continuous uniform sampler stays inside [0, theta)") {
  SplitMix64 rng(31);
  for (int i = 0; i < 100'000; ++i) {
    const double v = sample_continuous_uniform(7.5, rng);
    REQUIRE(v >= 0.0);
    REQUIRE(v < 7.5);
  }

  SplitMix64 meanr(32);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) sum += sample_continuous_uniform(50.0, meanr);
  CHECK(std::abs(sum / 1e5 - 25.0) < 0.137);  // 3 * (50/sqrt(12)) / sqrt(1e5)

  CHECK_THROWS_AS(sample_continuous_uniform(0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_continuous_uniform(-1.0, rng), std::invalid_argument);
}

TEST_CASE("exponential sampler") {
  CHECK(detail::exponential_from_unit(3.0, 0.0) == 0.0);

  SplitMix64 meanr(41);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) sum += sample_exponential(1.0, meanr);
  CHECK(std::abs(sum / 1e5 - 1.0) < 0.0095);

  // scale family: lambda=6 draws equal the lambda=1 draws divided by 6
  SplitMix64 a(55), b(55);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(sample_exponential(6.0, a) == sample_exponential(1.0, b) / 6.0);
  }

  CHECK_THROWS_AS(sample_exponential(0.0, meanr), std::invalid_argument);
}

TEST_CASE("normal sampler via Box-Muller pairs") {
  // u1 = 1 makes the radius collapse, so the draw is exactly mu
  CHECK(detail::box_muller(1.0, 0.37).first == 0.0);

  SplitMix64 meanr(61);
  NormalSampler sampler(50.0, 10.0);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) sum += sampler.next(meanr);
  CHECK(std::abs(sum / 1e5 - 50.0) < 0.095);  // 3 * sigma / sqrt(1e5)

  // affine family: same seed, (mu, sigma) = (0,1) vs (50,10)
  SplitMix64 sa(62), sb(62);
  NormalSampler unit(0.0, 1.0), shifted(50.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = unit.next(sa);
    const double y = shifted.next(sb);
    REQUIRE(std::abs(y - (50.0 + 10.0 * x)) <= 1e-9 * std::max(1.0, std::abs(y)));
  }

  CHECK_THROWS_AS(NormalSampler(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::normal(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("draw_key key modes") {
  // continuous theta=5 truncates into {0..4}
  const auto uniform_keys = generate_keys(DistributionSpec::continuous_uniform(5.0), 10'000, 77,
                                          KeyMode::integer);
  for (const auto v : std::get<IntKeys>(uniform_keys)) {
    REQUIRE(v >= 0);
    REQUIRE(v <= 4);
  }

  // integer families carry the same numeric value in either mode
  const auto int_keys =
      generate_keys(DistributionSpec::poisson(2.0), 2'000, 78, KeyMode::integer);
  const auto real_keys = generate_keys(DistributionSpec::poisson(2.0), 2'000, 78, KeyMode::real);
  const auto& iv = std::get<IntKeys>(int_keys);
  const auto& rv = std::get<RealKeys>(real_keys);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    REQUIRE(static_cast<double>(iv[i]) == rv[i]);
  }

  // tight normal around 0.5 truncates toward zero almost everywhere
  const auto tight =
      generate_keys(DistributionSpec::normal(0.5, 0.1), 10'000, 79, KeyMode::integer);
  std::size_t zeros = 0;
  for (const auto v : std::get<IntKeys>(tight)) zeros += v == 0;
  CHECK(zeros > 9'900);

  RealKeys with_nan{1.0, std::nan(""), 2.0};
  CHECK_THROWS_AS(require_total_order(with_nan), std::invalid_argument);
}

TEST_CASE("sampler means stay inside the 3-sigma band across many seeds") {
  // discrete uniform K=7: mean 4, var (49-1)/12 = 4; expect ~0.27% misses
  constexpr int kSeeds = 200;
  constexpr int kDraws = 10'000;
  const double bound = 3.0 * std::sqrt(4.0 / kDraws);
  int misses = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    SplitMix64 rng(1000 + static_cast<std::uint64_t>(seed));
    double sum = 0.0;
    for (int i = 0; i < kDraws; ++i) sum += static_cast<double>(sample_discrete_uniform(7, rng));
    misses += std::abs(sum / kDraws - 4.0) > bound;
  }
  CHECK(misses <= 4);
}
