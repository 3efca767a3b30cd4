#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nlshybrid {

// Unsigned big integer, base 2^32.  Just enough arithmetic for exact tree
// censuses: addition, small-factor multiplication, comparison, printing.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v) {  // NOLINT(google-explicit-constructor)
    while (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
      v >>= 32;
    }
  }

  bool is_zero() const { return limbs_.empty(); }

  BigUint& operator+=(const BigUint& o) {
    const std::size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0u);
      limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
      carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

  BigUint& operator*=(std::uint64_t f) {
    if (f == 0 || is_zero()) {
      limbs_.clear();
      return *this;
    }
    const std::uint64_t lo = f & 0xffffffffu, hi = f >> 32;
    std::vector<std::uint32_t> out(limbs_.size() + 2, 0);
    auto add_at = [&](std::size_t pos, std::uint64_t v) {
      while (v) {
        if (pos >= out.size()) out.push_back(0);
        std::uint64_t s = out[pos] + (v & 0xffffffffu);
        out[pos] = static_cast<std::uint32_t>(s & 0xffffffffu);
        v = (v >> 32) + (s >> 32);
        ++pos;
      }
    };
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      add_at(i, limbs_[i] * lo);
      if (hi) add_at(i + 1, limbs_[i] * hi);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    limbs_ = std::move(out);
    return *this;
  }

  friend BigUint operator*(BigUint a, std::uint64_t f) { return a *= f; }

  int compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
  }
  bool operator==(const BigUint& o) const { return compare(o) == 0; }
  bool operator<(const BigUint& o) const { return compare(o) < 0; }
  bool operator<=(const BigUint& o) const { return compare(o) <= 0; }

  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const {
    std::uint64_t v = 0;
    for (std::size_t i = std::min<std::size_t>(limbs_.size(), 2); i-- > 0;)
      v = (v << 32) | limbs_[i];
    return v;
  }

  double to_double() const {
    double v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return v;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        const std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 10);
        rem = cur % 10;
      }
      digits.push_back(static_cast<char>('0' + rem));
      while (!work.empty() && work.back() == 0) work.pop_back();
    }
    return {digits.rbegin(), digits.rend()};
  }

 private:
  std::vector<std::uint32_t> limbs_;  // little-endian
};

}  // namespace nlshybrid
