#include "tsurg/signature.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace tsurg {

std::uint64_t checked_product(std::span<const std::size_t> dims) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t p = 1;
  for (const std::size_t d : dims) {
    if (d != 0 && p > kLimit / d) throw std::overflow_error("index space exceeds 2^63 cells");
    p *= d;
  }
  return p;
}

LegSignature::LegSignature(std::vector<Leg> legs) : legs_(std::move(legs)) {
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    const Leg& l = legs_[i];
    if (l.dim < 1) throw std::invalid_argument("leg " + std::to_string(i) + " has dimension 0");
    if (l.has_split()) {
      for (const std::size_t f : l.split) {
        if (f < 1) throw std::invalid_argument("leg " + std::to_string(i) + " has a zero split factor");
      }
      if (checked_product(l.split) != l.dim) {
        throw std::invalid_argument("leg " + std::to_string(i) + ": split product differs from dimension");
      }
    }
  }
  const auto d = dims();
  cells_ = checked_product(d);
  strides_.assign(legs_.size(), 1);
  for (std::size_t i = legs_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * legs_[i].dim;
}

LegSignature LegSignature::from_dims(std::span<const std::size_t> dims) {
  std::vector<Leg> legs;
  legs.reserve(dims.size());
  for (const std::size_t d : dims) legs.push_back(Leg{d, {}});
  return LegSignature(std::move(legs));
}

std::vector<std::size_t> LegSignature::dims() const {
  std::vector<std::size_t> out;
  out.reserve(legs_.size());
  for (const Leg& l : legs_) out.push_back(l.dim);
  return out;
}

std::uint64_t LegSignature::pack(std::span<const std::size_t> index) const {
  if (index.size() != legs_.size()) throw std::invalid_argument("multi-index has wrong length");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= legs_[i].dim) throw std::out_of_range("multi-index out of bounds at leg " + std::to_string(i));
    key += index[i] * strides_[i];
  }
  return key;
}

MultiIndex LegSignature::unpack(std::uint64_t key) const {
  MultiIndex out(legs_.size());
  for (std::size_t i = 0; i < legs_.size(); ++i) out[i] = component(key, i);
  return out;
}

std::string LegSignature::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    if (i) os << ", ";
    os << legs_[i].dim;
    if (legs_[i].has_split()) {
      os << '[';
      for (std::size_t f = 0; f < legs_[i].split.size(); ++f) os << (f ? "x" : "") << legs_[i].split[f];
      os << ']';
    }
  }
  os << ')';
  return os.str();
}

}  // namespace tsurg
