#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace frri {

/// Fixed-width bitset sized at runtime, with the word-level operations the
/// cover solver needs (intersection popcounts, subset tests) that
/// std::bitset / boost::dynamic_bitset do not expose efficiently.
class Bitset {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Bitset() = default;
  explicit Bitset(std::size_t n, bool value = false)
      : n_(n), blocks_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return n_; }
  bool empty_universe() const { return n_ == 0; }

  bool test(std::size_t i) const { return (blocks_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { blocks_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { blocks_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(blocks_.begin(), blocks_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }
  bool none() const {
    for (auto b : blocks_)
      if (b) return false;
    return true;
  }
  bool any() const { return !none(); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  /// this := this & ~o
  Bitset& and_not_assign(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
    return *this;
  }

  bool operator==(const Bitset& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & o.blocks_[i]) return true;
    return false;
  }
  std::size_t and_count(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(blocks_[i] & o.blocks_[i]));
    return c;
  }
  std::size_t and_not_count(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(blocks_[i] & ~o.blocks_[i]));
    return c;
  }

  std::size_t find_first() const { return scan_from(0); }
  std::size_t find_next(std::size_t after) const {
    return after + 1 >= n_ ? npos : scan_from(after + 1);
  }

 private:
  void trim() {
    if (n_ & 63) blocks_.back() &= (~std::uint64_t{0}) >> (64 - (n_ & 63));
  }
  std::size_t scan_from(std::size_t start) const {
    std::size_t word = start >> 6;
    if (word >= blocks_.size()) return npos;
    std::uint64_t cur = blocks_[word] & (~std::uint64_t{0} << (start & 63));
    while (true) {
      if (cur) return (word << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++word == blocks_.size()) return npos;
      cur = blocks_[word];
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace frri
