#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace sumprod::detail {

/// Interning table for fixed-width integer keys: maps each distinct key to a
/// dense id in insertion order. Open addressing, linear probing.
class KeyTable {
 public:
  explicit KeyTable(std::size_t width) : width_(width), slots_(64, kEmpty) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return width_ == 0 ? count_ : arena_.size() / width_; }

  std::span<const std::int32_t> key(std::size_t id) const {
    return {arena_.data() + id * width_, width_};
  }

  /// Id of `key`, inserting it when new.
  std::uint32_t intern(const std::int32_t* key) {
    if (width_ == 0) {
      count_ = 1;
      return 0;
    }
    if ((size() + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t pos = hash(key) & mask;; pos = (pos + 1) & mask) {
      const std::uint32_t id = slots_[pos];
      if (id == kEmpty) {
        const auto fresh = static_cast<std::uint32_t>(size());
        arena_.insert(arena_.end(), key, key + width_);
        slots_[pos] = fresh;
        return fresh;
      }
      if (std::memcmp(arena_.data() + std::size_t{id} * width_, key, width_ * sizeof(std::int32_t)) == 0) {
        return id;
      }
    }
  }

 private:
  static constexpr std::uint32_t kEmpty = UINT32_MAX;

  std::uint64_t hash(const std::int32_t* key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < width_; ++i) {
      h ^= static_cast<std::uint32_t>(key[i]);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return h ^ (h >> 32);
  }

  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, kEmpty);
    const std::size_t mask = next.size() - 1;
    for (std::size_t id = 0; id < size(); ++id) {
      std::size_t pos = hash(arena_.data() + id * width_) & mask;
      while (next[pos] != kEmpty) pos = (pos + 1) & mask;
      next[pos] = static_cast<std::uint32_t>(id);
    }
    slots_.swap(next);
  }

  std::size_t width_;
  std::size_t count_ = 0;  // only used when width_ == 0
  std::vector<std::int32_t> arena_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace sumprod::detail
