#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wsp {

// Unsigned big integer with just enough arithmetic for counting oracles:
// addition, comparison, decimal printing.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v) {  // NOLINT: implicit by design
    while (v != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      v >>= 32;
    }
  }

  BigNat& operator+=(const BigNat& other) {
    const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t sum = carry + limbs_[i];
      if (i < other.limbs_.size()) sum += other.limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(sum);
      carry = sum >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  friend BigNat operator+(BigNat a, const BigNat& b) {
    a += b;
    return a;
  }

  bool operator==(const BigNat&) const = default;

  std::strong_ordering operator<=>(const BigNat& other) const {
    if (limbs_.size() != other.limbs_.size())
      return limbs_.size() <=> other.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
    return std::strong_ordering::equal;
  }

  std::optional<std::uint64_t> to_u64() const {
    if (limbs_.size() > 2) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return v;
  }

  std::string str() const {
    if (limbs_.empty()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
      // divide by 10^9, collecting the remainder as the next digit block
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        const std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1'000'000'000u);
        rem = cur % 1'000'000'000u;
      }
      while (!work.empty() && work.back() == 0) work.pop_back();
      for (int j = 0; j < 9; ++j) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    return std::string(digits.rbegin(), digits.rend());
  }

 private:
  std::vector<std::uint32_t> limbs_;  // base 2^32, little-endian, no trailing zeros
};

}  // namespace wsp
