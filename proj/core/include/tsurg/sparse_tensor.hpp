#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsurg/rational.hpp"
#include "tsurg/signature.hpp"

namespace tsurg {

// Multi-leg tensor stored as a sorted list of (packed multi-index, nonzero
// coefficient). Sorting by packed key is lexicographic multi-index order.
// Immutable once built; use TensorBuilder to accumulate.
class SparseTensor {
 public:
  using Entry = std::pair<std::uint64_t, Rational>;

  SparseTensor() = default;
  explicit SparseTensor(LegSignature signature) : signature_(std::move(signature)) {}

  // Zero-leg tensor holding a single scalar.
  static SparseTensor scalar(const Rational& value);

  const LegSignature& signature() const { return signature_; }
  std::size_t order() const { return signature_.order(); }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  MultiIndex index_of(const Entry& e) const { return signature_.unpack(e.first); }
  Rational at(std::span<const std::size_t> index) const;

  // Same entries, different leg metadata (splits) over identical dims.
  SparseTensor with_signature(LegSignature signature) const;

  std::string str() const;

  // Equal iff leg dimensions and entry maps are identical. Splits are
  // layout metadata and do not take part.
  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    return a.signature_.dims() == b.signature_.dims() && a.entries_ == b.entries_;
  }

 private:
  friend class TensorBuilder;
  LegSignature signature_;
  std::vector<Entry> entries_;
};

// Hash-map accumulator; `build()` sorts and drops cancelled entries.
class TensorBuilder {
 public:
  explicit TensorBuilder(LegSignature signature) : signature_(std::move(signature)) {}

  const LegSignature& signature() const { return signature_; }

  void add(std::uint64_t key, const Rational& value);
  void add(std::span<const std::size_t> index, const Rational& value) { add(signature_.pack(index), value); }

  SparseTensor build() &&;

 private:
  LegSignature signature_;
  std::unordered_map<std::uint64_t, Rational> acc_;
};

}  // namespace tsurg
