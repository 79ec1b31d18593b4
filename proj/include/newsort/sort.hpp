#pragma once

// Interchange-free quicksort variant with exact operation counters, plus an
// in-place quicksort baseline for comparative counts.
//
// Each partition keeps the segment's first element as pivot and copies the
// remaining elements into a scratch range of the same length: keys <= pivot
// fill the front in encounter order, keys > pivot fill the back in reverse
// encounter order, and the pivot drops into the single blank slot left in
// between. The scratch range is copied back before the segment splits, so
// nothing is ever interchanged; the cost is carried entirely by comparisons
// and buffer writes.

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace newsort {

/// Exact per-sort counters. `elapsed_ns` is wall time and excluded from every
/// determinism guarantee; the other three are pure functions of the input.
struct SortStats {
  std::uint64_t comparisons = 0;  // sum of (segment length - 1) over partition calls
  std::uint64_t writes = 0;       // new_sort: 2 per element per partition (scratch + copy-back)
  std::uint64_t max_depth = 0;    // deepest chain of nested partition calls; 0 for length <= 1
  std::uint64_t elapsed_ns = 0;
};

template <typename T>
struct SortOutcome {
  std::vector<T> output;
  SortStats stats;
};

namespace detail {

// One partition pass over `segment`, staged through `scratch` (same length).
// Returns the pivot's final index, i.e. the number of non-pivot keys <= pivot.
template <typename T>
std::size_t partition_into(std::span<T> segment, std::span<T> scratch, SortStats& stats) {
  const std::size_t m = segment.size();
  assert(m >= 1 && scratch.size() == m);
  const T pivot = segment[0];
  std::size_t front = 0;
  std::size_t back = m - 1;
  for (std::size_t i = 1; i < m; ++i) {
    const T element = segment[i];
    if (pivot < element) {
      scratch[back--] = element;  // last unfilled slot: > pivot
    } else {
      scratch[front++] = element;  // first unfilled slot: ties go left
    }
  }
  scratch[front] = pivot;  // front == back here: the one blank position
  std::copy(scratch.begin(), scratch.end(), segment.begin());
  stats.comparisons += m - 1;
  stats.writes += 2 * static_cast<std::uint64_t>(m);
  return front;
}

// [lo, hi) plus the nesting depth its partition call will run at.
struct WorkSegment {
  std::size_t lo;
  std::size_t hi;
  std::uint64_t depth;
};

}  // namespace detail

/// Partitions `segment` in place around its first element and returns the
/// pivot's final index. Allocates its own scratch; the full sort reuses one
/// sort-wide buffer instead.
template <typename T>
std::size_t partition_segment(std::span<T> segment, SortStats& stats) {
  assert(!segment.empty());
  std::vector<T> scratch(segment.size());
  return detail::partition_into(segment, std::span<T>(scratch), stats);
}

/// Sorts a copy of `input` by repeated interchange-free partitioning and
/// returns the sorted keys with exact counters.
///
/// The driver is an explicit work stack rather than recursion: duplicate-heavy
/// or presorted inputs produce partition chains of length n-1, which would
/// overflow a call stack long before the sizes used in the sweep experiments.
/// The larger side of each split is stacked and the smaller side is processed
/// next, capping the stack at O(log n) entries, while one n-length scratch
/// buffer serves every partition call.
template <typename T>
SortOutcome<T> new_sort(std::span<const T> input) {
  SortOutcome<T> out;
  out.output.assign(input.begin(), input.end());
  const std::size_t n = out.output.size();
  if (n <= 1) return out;

  const auto start = std::chrono::steady_clock::now();
  std::vector<T> scratch(n);
  std::vector<detail::WorkSegment> work;
  detail::WorkSegment seg{0, n, 1};
  while (true) {
    while (seg.hi - seg.lo >= 2) {
      const std::size_t len = seg.hi - seg.lo;
      std::span<T> view(out.output.data() + seg.lo, len);
      std::span<T> stage(scratch.data() + seg.lo, len);
      const std::size_t pivot = seg.lo + detail::partition_into(view, stage, out.stats);
      out.stats.max_depth = std::max(out.stats.max_depth, seg.depth);
      detail::WorkSegment larger{seg.lo, pivot, seg.depth + 1};
      detail::WorkSegment smaller{pivot + 1, seg.hi, seg.depth + 1};
      if (larger.hi - larger.lo < smaller.hi - smaller.lo) std::swap(larger, smaller);
      if (larger.hi - larger.lo >= 2) work.push_back(larger);
      seg = smaller;
    }
    if (work.empty()) break;
    seg = work.back();
    work.pop_back();
  }
  out.stats.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
          .count());
  return out;
}

template <typename T>
SortOutcome<T> new_sort(const std::vector<T>& input) {
  return new_sort(std::span<const T>(input));
}

/// In-place quicksort used only for comparative reporting: same first-element
/// pivot and ties-left rule as new_sort, but partitioned by interchanges.
/// `writes` counts element moves at 3 per executed swap (temporary-variable
/// convention); swaps of a slot with itself are skipped and cost nothing.
template <typename T>
SortOutcome<T> quicksort_baseline(std::span<const T> input) {
  SortOutcome<T> out;
  out.output.assign(input.begin(), input.end());
  const std::size_t n = out.output.size();
  if (n <= 1) return out;

  const auto start = std::chrono::steady_clock::now();
  T* a = out.output.data();
  auto exchange = [&](std::size_t i, std::size_t j) {
    const T tmp = a[i];
    a[i] = a[j];
    a[j] = tmp;
    out.stats.writes += 3;
  };
  std::vector<detail::WorkSegment> work;
  detail::WorkSegment seg{0, n, 1};
  while (true) {
    while (seg.hi - seg.lo >= 2) {
      const T pivot = a[seg.lo];
      std::size_t store = seg.lo;
      for (std::size_t j = seg.lo + 1; j < seg.hi; ++j) {
        if (!(pivot < a[j])) {  // a[j] <= pivot: ties left
          ++store;
          if (store != j) exchange(store, j);
        }
      }
      out.stats.comparisons += seg.hi - seg.lo - 1;
      if (store != seg.lo) exchange(seg.lo, store);
      out.stats.max_depth = std::max(out.stats.max_depth, seg.depth);
      detail::WorkSegment larger{seg.lo, store, seg.depth + 1};
      detail::WorkSegment smaller{store + 1, seg.hi, seg.depth + 1};
      if (larger.hi - larger.lo < smaller.hi - smaller.lo) std::swap(larger, smaller);
      if (larger.hi - larger.lo >= 2) work.push_back(larger);
      seg = smaller;
    }
    if (work.empty()) break;
    seg = work.back();
    work.pop_back();
  }
  out.stats.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
          .count());
  return out;
}

template <typename T>
SortOutcome<T> quicksort_baseline(const std::vector<T>& input) {
  return quicksort_baseline(std::span<const T>(input));
}

/// True iff `output` is non-decreasing and multiset-equal to `input`.
/// The multiset check compares std::sort-ed copies, staying independent of
/// the algorithms under test.
template <typename T>
bool verify_sorted_permutation(std::span<const T> input, std::span<const T> output) {
  if (input.size() != output.size()) return false;
  if (!std::is_sorted(output.begin(), output.end())) return false;
  std::vector<T> lhs(input.begin(), input.end());
  std::vector<T> rhs(output.begin(), output.end());
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

template <typename T>
bool verify_sorted_permutation(const std::vector<T>& input, const std::vector<T>& output) {
  return verify_sorted_permutation(std::span<const T>(input), std::span<const T>(output));
}

}  // namespace newsort
