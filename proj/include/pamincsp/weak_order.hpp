#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pamincsp/model.hpp"

namespace pamincsp {

inline constexpr int kMaxWeakOrderElements = 12;

namespace detail {

template <class Visit>
void insert_weak_order(int next, int n, int blocks, std::vector<std::int64_t> &rank,
                       Visit &visit) {
  if (next == n) {
    visit(std::span<const std::int64_t>(rank.data(), rank.size()));
    return;
  }
  const auto idx = static_cast<std::size_t>(next);
  // Join an existing block.
  for (int b = 0; b < blocks; ++b) {
    rank[idx] = b;
    insert_weak_order(next + 1, n, blocks, rank, visit);
  }
  // Open a new block in one of the blocks+1 gaps.
  for (int gap = 0; gap <= blocks; ++gap) {
    for (int i = 0; i < next; ++i)
      if (rank[static_cast<std::size_t>(i)] >= gap)
        ++rank[static_cast<std::size_t>(i)];
    rank[idx] = gap;
    insert_weak_order(next + 1, n, blocks + 1, rank, visit);
    for (int i = 0; i < next; ++i)
      if (rank[static_cast<std::size_t>(i)] > gap)
        --rank[static_cast<std::size_t>(i)];
  }
  rank[idx] = 0;
}

} // namespace detail

/// Calls `visit(ranks)` once for every weak order (ordered set partition) of
/// n elements. Ranks are dense: the blocks are numbered 0..b-1 from lowest.
/// The enumeration order is fixed.
template <class Visit>
void enumerate_weak_orders(int n, Visit &&visit) {
  if (n < 0 || n > kMaxWeakOrderElements)
    throw GuardExceeded("weak-order enumeration limited to " +
                        std::to_string(kMaxWeakOrderElements) +
                        " elements, got " + std::to_string(n));
  std::vector<std::int64_t> rank(static_cast<std::size_t>(n), 0);
  detail::insert_weak_order(0, n, 0, rank, visit);
}

inline std::vector<std::vector<std::int64_t>> all_weak_orders(int n) {
  std::vector<std::vector<std::int64_t>> out;
  enumerate_weak_orders(n, [&](std::span<const std::int64_t> r) {
    out.emplace_back(r.begin(), r.end());
  });
  return out;
}

} // namespace pamincsp
