#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "wsp/bignat.hpp"
#include "wsp/error.hpp"

namespace wsp {

// Set partition of steps 1..k in restricted-growth form: rgs[i-1] is the
// 1-based block index of step i, and a block index may exceed all earlier
// ones by at most one.
struct Pattern {
  std::vector<int> rgs;

  int block_count() const {
    return rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end());
  }

  bool operator==(const Pattern&) const = default;
};

inline bool is_valid_rgs(const std::vector<int>& rgs) {
  int max_seen = 0;
  for (int b : rgs) {
    if (b < 1 || b > max_seen + 1) return false;
    max_seen = std::max(max_seen, b);
  }
  return true;
}

// Yields every set partition of [k] exactly once, in lexicographic
// restricted-growth order, starting from the single-block pattern [1,..,1].
class PatternEnumerator {
 public:
  explicit PatternEnumerator(int k) {
    if (k < 1) fail(Errc::validation, "pattern enumeration requires k >= 1");
    rgs_.assign(static_cast<std::size_t>(k), 1);
  }

  // Writes the next pattern into `out`; false once the stream is exhausted.
  bool next(Pattern& out) {
    if (done_) return false;
    if (first_) {
      first_ = false;
      out.rgs = rgs_;
      return true;
    }
    const int k = static_cast<int>(rgs_.size());
    std::vector<int> prefix_max(static_cast<std::size_t>(k), 0);
    for (int i = 1; i < k; ++i) prefix_max[i] = std::max(prefix_max[i - 1], rgs_[i - 1]);
    for (int i = k - 1; i >= 1; --i) {
      if (rgs_[i] <= prefix_max[i]) {
        ++rgs_[i];
        std::fill(rgs_.begin() + i + 1, rgs_.end(), 1);
        out.rgs = rgs_;
        return true;
      }
    }
    done_ = true;
    return false;
  }

 private:
  std::vector<int> rgs_;
  bool first_ = true;
  bool done_ = false;
};

// Bell number via the Bell-triangle recurrence.
inline BigNat bell_number(int k) {
  if (k < 0) fail(Errc::validation, "bell number of a negative size");
  std::vector<BigNat> row{BigNat(1)};
  for (int i = 0; i < k; ++i) {
    std::vector<BigNat> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const BigNat& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

// counts[i][mx] is the number of restricted-growth completions of a prefix of
// length i whose maximum block index is mx; counts[0][0] equals Bell(k).
// Capped at k <= 25 so every entry fits in a 64-bit counter.
inline std::vector<std::vector<std::uint64_t>> rgs_completion_counts(int k) {
  if (k < 0 || k > 25)
    fail(Errc::budget_exceeded, "completion counting supports at most 25 steps");
  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(k) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 2, 0));
  for (int mx = 0; mx <= k + 1; ++mx) counts[k][mx] = 1;
  for (int i = k - 1; i >= 0; --i)
    for (int mx = 0; mx <= k; ++mx)
      counts[i][mx] = static_cast<std::uint64_t>(mx) * counts[i + 1][mx] + counts[i + 1][mx + 1];
  return counts;
}

}  // namespace wsp
