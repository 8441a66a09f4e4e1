#include "tsurg/sparse_tensor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tsurg {

SparseTensor SparseTensor::scalar(const Rational& value) {
  SparseTensor t{LegSignature{}};
  if (!value.is_zero()) t.entries_.emplace_back(0, value);
  return t;
}

Rational SparseTensor::at(std::span<const std::size_t> index) const {
  const std::uint64_t key = signature_.pack(index);
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                                   [](const Entry& e, std::uint64_t k) { return e.first < k; });
  if (it == entries_.end() || it->first != key) return Rational{};
  return it->second;
}

SparseTensor SparseTensor::with_signature(LegSignature signature) const {
  if (signature.dims() != signature_.dims()) {
    throw std::invalid_argument("with_signature: leg dimensions differ");
  }
  SparseTensor out(std::move(signature));
  out.entries_ = entries_;
  return out;
}

std::string SparseTensor::str() const {
  std::ostringstream os;
  os << "tensor " << signature_.str() << " nnz=" << entries_.size();
  for (const Entry& e : entries_) {
    os << "\n  (";
    const MultiIndex idx = signature_.unpack(e.first);
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
    os << ") " << e.second;
  }
  return os.str();
}

void TensorBuilder::add(std::uint64_t key, const Rational& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = acc_.try_emplace(key, value);
  if (!inserted) it->second += value;
}

SparseTensor TensorBuilder::build() && {
  SparseTensor out(std::move(signature_));
  out.entries_.reserve(acc_.size());
  for (auto& [k, v] : acc_) {
    if (!v.is_zero()) out.entries_.emplace_back(k, std::move(v));
  }
  std::sort(out.entries_.begin(), out.entries_.end(),
            [](const SparseTensor::Entry& a, const SparseTensor::Entry& b) { return a.first < b.first; });
  acc_.clear();
  return out;
}

}  // namespace tsurg
