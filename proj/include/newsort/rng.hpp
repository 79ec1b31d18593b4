#pragma once

// Seedable deterministic PRNG and the six variate families driven by it.
// Integer-valued streams are bit-exact for a given seed; real-valued samplers
// pass through libm transcendentals and reproduce to ~1e-12 relative across
// platforms.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "newsort/keys.hpp"

namespace newsort {

/// splitmix64. The state advances by a fixed odd increment per draw and the
/// output is a three-step xor-shift-multiply mix of the new state, so equal
/// seeds give identical streams everywhere. Copying the object copies the
/// stream position.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1): the top 53 bits of the next output, times 2^-53.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

  constexpr std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

enum class Family {
  discrete_uniform,
  poisson,
  geometric,
  continuous_uniform,
  exponential,
  normal,
};

inline const char* to_string(Family family) {
  switch (family) {
    case Family::discrete_uniform: return "discrete_uniform";
    case Family::poisson: return "poisson";
    case Family::geometric: return "geometric";
    case Family::continuous_uniform: return "continuous_uniform";
    case Family::exponential: return "exponential";
    case Family::normal: return "normal";
  }
  return "?";
}

inline Family family_from_string(const std::string& name) {
  if (name == "discrete_uniform") return Family::discrete_uniform;
  if (name == "poisson") return Family::poisson;
  if (name == "geometric") return Family::geometric;
  if (name == "continuous_uniform") return Family::continuous_uniform;
  if (name == "exponential") return Family::exponential;
  if (name == "normal") return Family::normal;
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

/// One of the six input distributions plus its parameters, validated at
/// construction. Poisson lambda is capped at 100: the product-method loop
/// terminates against exp(-lambda), which must stay a normal double.
class DistributionSpec {
 public:
  static DistributionSpec discrete_uniform(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("discrete_uniform: k must be an integer >= 1");
    DistributionSpec s(Family::discrete_uniform);
    s.a_ = static_cast<double>(k);
    return s;
  }

  static DistributionSpec poisson(double lambda) {
    if (!(lambda > 0.0) || !(lambda <= 100.0)) {
      throw std::invalid_argument("poisson: lambda must satisfy 0 < lambda <= 100");
    }
    DistributionSpec s(Family::poisson);
    s.a_ = lambda;
    return s;
  }

  static DistributionSpec geometric(double p) {
    if (!(p > 0.0) || !(p <= 1.0)) {
      throw std::invalid_argument("geometric: p must lie in (0, 1]");
    }
    DistributionSpec s(Family::geometric);
    s.a_ = p;
    return s;
  }

  static DistributionSpec continuous_uniform(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("continuous_uniform: theta must be > 0");
    DistributionSpec s(Family::continuous_uniform);
    s.a_ = theta;
    return s;
  }

  static DistributionSpec exponential(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("exponential: lambda must be > 0");
    DistributionSpec s(Family::exponential);
    s.a_ = lambda;
    return s;
  }

  static DistributionSpec normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normal: sigma must be > 0");
    if (std::isnan(mu)) throw std::invalid_argument("normal: mu must be a number");
    DistributionSpec s(Family::normal);
    s.a_ = mu;
    s.b_ = sigma;
    return s;
  }

  Family family() const { return family_; }
  std::int64_t k() const { return static_cast<std::int64_t>(a_); }
  double lambda() const { return a_; }
  double p() const { return a_; }
  double theta() const { return a_; }
  double mu() const { return a_; }
  double sigma() const { return b_; }

  /// Short human label, e.g. "poisson(lambda=2)".
  std::string describe() const;

 private:
  explicit DistributionSpec(Family family) : family_(family) {}

  Family family_;
  double a_ = 0.0;
  double b_ = 0.0;
};

namespace detail {

// Pure mapping cores, separated so boundary behaviour is testable without
// steering the generator into specific outputs.

inline std::int64_t discrete_uniform_from_unit(std::int64_t k, double u) {
  const auto value = static_cast<std::int64_t>(std::floor(static_cast<double>(k) * u)) + 1;
  return value > k ? k : value;  // k*u can round up to k for huge k
}

inline std::int64_t geometric_from_unit(double p, double u) {
  if (p == 1.0) return 0;
  // failures before the first success; 1-u in (0,1] keeps the log finite
  return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log1p(-p)));
}

inline double exponential_from_unit(double lambda, double u) {
  return -std::log1p(-u) / lambda;
}

// Box-Muller pair from u1 in (0,1], u2 in [0,1).
inline std::pair<double, double> box_muller(double u1, double u2) {
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace detail

inline std::int64_t sample_discrete_uniform(std::int64_t k, SplitMix64& rng) {
  if (k < 1) throw std::invalid_argument("discrete_uniform: k must be an integer >= 1");
  return detail::discrete_uniform_from_unit(k, rng.next_unit());
}

/// Product method: multiply uniforms until the running product drops below
/// exp(-lambda); the draw is the number of uniforms consumed minus one.
inline std::int64_t sample_poisson(double lambda, SplitMix64& rng) {
  if (!(lambda > 0.0) || !(lambda <= 100.0)) {
    throw std::invalid_argument("poisson: lambda must satisfy 0 < lambda <= 100");
  }
  const double limit = std::exp(-lambda);
  double product = 1.0;
  std::int64_t consumed = 0;
  do {
    product *= rng.next_unit();
    ++consumed;
  } while (product >= limit);
  return consumed - 1;
}

inline std::int64_t sample_geometric(double p, SplitMix64& rng) {
  if (!(p > 0.0) || !(p <= 1.0)) throw std::invalid_argument("geometric: p must lie in (0, 1]");
  return detail::geometric_from_unit(p, rng.next_unit());
}

inline double sample_continuous_uniform(double theta, SplitMix64& rng) {
  if (!(theta > 0.0)) throw std::invalid_argument("continuous_uniform: theta must be > 0");
  return theta * rng.next_unit();
}

inline double sample_exponential(double lambda, SplitMix64& rng) {
  if (!(lambda > 0.0)) throw std::invalid_argument("exponential: lambda must be > 0");
  return detail::exponential_from_unit(lambda, rng.next_unit());
}

/// Normal draws via Box-Muller. Each pair of outputs consumes exactly two
/// uniforms; the sine variate is cached and handed out on the following call,
/// so the uniform stream alignment never depends on (mu, sigma).
class NormalSampler {
 public:
  NormalSampler(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normal: sigma must be > 0");
  }

  double next(SplitMix64& rng) {
    if (cached_) {
      const double z = *cached_;
      cached_.reset();
      return mu_ + sigma_ * z;
    }
    const double u1 = 1.0 - rng.next_unit();  // (0,1]
    const double u2 = rng.next_unit();
    const auto [z1, z2] = detail::box_muller(u1, u2);
    cached_ = z2;
    return mu_ + sigma_ * z1;
  }

 private:
  double mu_;
  double sigma_;
  std::optional<double> cached_;
};

inline std::int64_t truncate_toward_zero(double v) {
  // every family here stays far inside int64 range; the clamp only guards the cast
  constexpr double kLimit = 9.0e18;
  if (v >= kLimit) return std::numeric_limits<std::int64_t>::max();
  if (v <= -kLimit) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(v);
}

/// Draws the key sequence for one trial: one variate per key from its own
/// generator. Integer families yield exact integers in either mode; in
/// integer mode continuous variates are truncated toward zero.
class KeySource {
 public:
  KeySource(const DistributionSpec& spec, std::uint64_t seed)
      : spec_(spec),
        rng_(seed),
        normal_(spec.family() == Family::normal ? NormalSampler(spec.mu(), spec.sigma())
                                                : NormalSampler(0.0, 1.0)) {}

  double next_variate() {
    switch (spec_.family()) {
      case Family::discrete_uniform:
        return static_cast<double>(sample_discrete_uniform(spec_.k(), rng_));
      case Family::poisson:
        return static_cast<double>(sample_poisson(spec_.lambda(), rng_));
      case Family::geometric:
        return static_cast<double>(sample_geometric(spec_.p(), rng_));
      case Family::continuous_uniform:
        return sample_continuous_uniform(spec_.theta(), rng_);
      case Family::exponential:
        return sample_exponential(spec_.lambda(), rng_);
      case Family::normal:
        return normal_.next(rng_);
    }
    return 0.0;  // unreachable
  }

  std::int64_t next_int_key() { return truncate_toward_zero(next_variate()); }

 private:
  DistributionSpec spec_;
  SplitMix64 rng_;
  NormalSampler normal_;  // inert unless the family is normal
};

inline KeyArray generate_keys(const DistributionSpec& spec, std::size_t n, std::uint64_t seed,
                              KeyMode mode) {
  KeySource source(spec, seed);
  if (mode == KeyMode::integer) {
    IntKeys keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keys.push_back(source.next_int_key());
    return keys;
  }
  RealKeys keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) keys.push_back(source.next_variate());
  require_total_order(keys);
  return keys;
}

inline std::string DistributionSpec::describe() const {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };
  switch (family_) {
    case Family::discrete_uniform: return "discrete_uniform(k=" + num(a_) + ")";
    case Family::poisson: return "poisson(lambda=" + num(a_) + ")";
    case Family::geometric: return "geometric(p=" + num(a_) + ")";
    case Family::continuous_uniform: return "continuous_uniform(theta=" + num(a_) + ")";
    case Family::exponential: return "exponential(lambda=" + num(a_) + ")";
    case Family::normal: return "normal(mu=" + num(a_) + ", sigma=" + num(b_) + ")";
  }
  return "?";
}

}  // namespace newsort
