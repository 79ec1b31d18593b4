#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace newsort {

/// Sweep-wide key representation. `integer` truncates every variate toward
/// zero, which piles duplicates onto few distinct values and is the mode that
/// reproduces the published trend tables; `real` keeps full double precision,
/// where operation counts depend only on the relative order of the keys.
enum class KeyMode { integer, real };

using IntKeys = std::vector<std::int64_t>;
using RealKeys = std::vector<double>;
using KeyArray = std::variant<IntKeys, RealKeys>;

inline const char* to_string(KeyMode mode) {
  return mode == KeyMode::integer ? "int" : "real";
}

inline KeyMode key_mode_from_string(const std::string& name) {
  if (name == "int") return KeyMode::integer;
  if (name == "real") return KeyMode::real;
  throw std::invalid_argument("unknown key mode '" + name + "' (expected int or real)");
}

/// Real keys need a total order, so NaN is rejected when an array is built,
/// never inside the comparison loop.
inline void require_total_order(const RealKeys& keys) {
  for (double v : keys) {
    if (std::isnan(v)) {
      throw std::invalid_argument("NaN key rejected: real keys must form a total order");
    }
  }
}

inline std::size_t key_count(const KeyArray& keys) {
  return std::visit([](const auto& v) { return v.size(); }, keys);
}

}  // namespace newsort
