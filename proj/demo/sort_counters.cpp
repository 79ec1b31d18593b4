// Minimal tour: draw keys from two distributions, sort them with both
// algorithms, and print the exact counters side by side.

#include <cstdio>

#include "newsort/harness.hpp"
#include "newsort/rng.hpp"
#include "newsort/sort.hpp"

int main() {
  using namespace newsort;
  constexpr std::size_t n = 20000;
  constexpr std::uint64_t seed = 1;

  const DistributionSpec specs[] = {
      DistributionSpec::discrete_uniform(5),
      DistributionSpec::discrete_uniform(50),
      DistributionSpec::normal(50.0, 10.0),
  };
  std::printf("%-28s %14s %14s %10s\n", "input (int keys, n=20000)", "new_sort cmp",
              "baseline cmp", "max depth");
  for (const auto& spec : specs) {
    const KeyArray keys = generate_keys(spec, n, seed, KeyMode::integer);
    const auto& ints = std::get<IntKeys>(keys);
    const auto a = new_sort(ints);
    const auto b = quicksort_baseline(ints);
    std::printf("%-28s %14llu %14llu %10llu\n", spec.describe().c_str(),
                static_cast<unsigned long long>(a.stats.comparisons),
                static_cast<unsigned long long>(b.stats.comparisons),
                static_cast<unsigned long long>(a.stats.max_depth));
  }
  return 0;
}
