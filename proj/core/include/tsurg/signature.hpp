#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tsurg {

using MultiIndex = std::vector<std::size_t>;

// One tensor leg. `split` optionally records an internal factorization of the
// leg space (e.g. C^2 (x) C^2 for a cycle vertex); empty means no split.
struct Leg {
  std::size_t dim = 1;
  std::vector<std::size_t> split;

  bool has_split() const { return !split.empty(); }
  friend bool operator==(const Leg&, const Leg&) = default;
};

// Ordered leg dimensions with optional per-leg splits. Multi-indices are
// packed row-major (leg 0 most significant) into a 64-bit linear key, so the
// total cell count must stay below 2^63.
class LegSignature {
 public:
  LegSignature() = default;
  explicit LegSignature(std::vector<Leg> legs);
  // Legs without splits.
  static LegSignature from_dims(std::span<const std::size_t> dims);

  std::size_t order() const { return legs_.size(); }
  const Leg& leg(std::size_t i) const { return legs_.at(i); }
  const std::vector<Leg>& legs() const { return legs_; }
  std::size_t dim(std::size_t i) const { return legs_.at(i).dim; }
  std::vector<std::size_t> dims() const;

  std::uint64_t cell_count() const { return cells_; }

  std::uint64_t pack(std::span<const std::size_t> index) const;
  MultiIndex unpack(std::uint64_t key) const;
  // Index of leg `leg` inside a packed key.
  std::size_t component(std::uint64_t key, std::size_t leg) const {
    return static_cast<std::size_t>((key / strides_[leg]) % legs_[leg].dim);
  }
  std::uint64_t stride(std::size_t leg) const { return strides_[leg]; }

  std::string str() const;

  friend bool operator==(const LegSignature& a, const LegSignature& b) { return a.legs_ == b.legs_; }

 private:
  std::vector<Leg> legs_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t cells_ = 1;
};

// Product of `dims`, throwing std::overflow_error past 2^63.
std::uint64_t checked_product(std::span<const std::size_t> dims);

}  // namespace tsurg
