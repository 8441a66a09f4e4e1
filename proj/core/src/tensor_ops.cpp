#include "tsurg/tensor_ops.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tsurg {

namespace {

void require_permutation(std::span<const std::size_t> perm, std::size_t n, const char* what) {
  if (perm.size() != n) throw std::invalid_argument(std::string(what) + ": permutation has wrong size");
  std::vector<bool> seen(n, false);
  for (const std::size_t p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument(std::string(what) + ": not a bijection");
    seen[p] = true;
  }
}

// Row-major decomposition of `index` over `dims`.
std::vector<std::size_t> digits(std::size_t index, std::span<const std::size_t> dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    out[f] = index % dims[f];
    index /= dims[f];
  }
  return out;
}

std::size_t compose(std::span<const std::size_t> idx, std::span<const std::size_t> dims) {
  std::size_t v = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) v = v * dims[f] + idx[f];
  return v;
}

}  // namespace

SparseTensor tensor_product(const SparseTensor& t1, const SparseTensor& t2) {
  std::vector<Leg> legs = t1.signature().legs();
  legs.insert(legs.end(), t2.signature().legs().begin(), t2.signature().legs().end());
  LegSignature sig(std::move(legs));
  const std::uint64_t shift = t2.signature().cell_count();
  TensorBuilder b(sig);
  for (const auto& [k1, v1] : t1.entries()) {
    for (const auto& [k2, v2] : t2.entries()) b.add(k1 * shift + k2, v1 * v2);
  }
  return std::move(b).build();
}

bool interleavable(const Leg& l1, const Leg& l2) {
  return l1.has_split() && l2.has_split() && l1.split.size() == l2.split.size();
}

Leg interleaved_leg(const Leg& l1, const Leg& l2) {
  if (!interleavable(l1, l2)) return Leg{l1.dim * l2.dim, {l1.dim, l2.dim}};
  Leg out{l1.dim * l2.dim, {}};
  for (std::size_t f = 0; f < l1.split.size(); ++f) out.split.push_back(l1.split[f] * l2.split[f]);
  return out;
}

std::size_t interleave_index(std::size_t plain, std::span<const std::size_t> split1,
                             std::span<const std::size_t> split2) {
  const std::size_t dim2 = std::accumulate(split2.begin(), split2.end(), std::size_t{1}, std::multiplies<>());
  const auto x1 = digits(plain / dim2, split1);
  const auto x2 = digits(plain % dim2, split2);
  std::size_t v = 0;
  for (std::size_t f = 0; f < split1.size(); ++f) v = v * (split1[f] * split2[f]) + x1[f] * split2[f] + x2[f];
  return v;
}

SparseTensor pairwise_product(const SparseTensor& t1, const SparseTensor& t2, KroneckerLayout layout) {
  const LegSignature& s1 = t1.signature();
  const LegSignature& s2 = t2.signature();
  if (s1.order() != s2.order()) throw std::invalid_argument("pairwise_product: leg-count mismatch");
  const std::size_t k = s1.order();
  std::vector<Leg> legs;
  std::vector<bool> interleave(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    interleave[i] = layout == KroneckerLayout::kInterleaved && interleavable(s1.leg(i), s2.leg(i));
    legs.push_back(interleave[i] ? interleaved_leg(s1.leg(i), s2.leg(i))
                                 : Leg{s1.dim(i) * s2.dim(i), {s1.dim(i), s2.dim(i)}});
  }
  LegSignature sig(std::move(legs));
  TensorBuilder b(sig);
  MultiIndex idx(k);
  for (const auto& [k1, v1] : t1.entries()) {
    for (const auto& [k2, v2] : t2.entries()) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t plain = s1.component(k1, i) * s2.dim(i) + s2.component(k2, i);
        idx[i] = interleave[i] ? interleave_index(plain, s1.leg(i).split, s2.leg(i).split) : plain;
      }
      b.add(idx, v1 * v2);
    }
  }
  return std::move(b).build();
}

SparseTensor permute_legs(const SparseTensor& t, std::span<const std::size_t> perm) {
  const LegSignature& s = t.signature();
  require_permutation(perm, s.order(), "permute_legs");
  std::vector<Leg> legs;
  for (const std::size_t p : perm) legs.push_back(s.leg(p));
  TensorBuilder b(LegSignature(std::move(legs)));
  MultiIndex idx(perm.size());
  for (const auto& [key, v] : t.entries()) {
    for (std::size_t p = 0; p < perm.size(); ++p) idx[p] = s.component(key, perm[p]);
    b.add(idx, v);
  }
  return std::move(b).build();
}

SparseTensor group_legs(const SparseTensor& t, const std::vector<std::vector<std::size_t>>& partition) {
  const LegSignature& s = t.signature();
  std::vector<bool> seen(s.order(), false);
  std::vector<Leg> legs;
  for (const auto& block : partition) {
    if (block.empty()) throw std::invalid_argument("group_legs: empty block");
    Leg leg{1, {}};
    for (const std::size_t l : block) {
      if (l >= s.order() || seen[l]) throw std::invalid_argument("group_legs: not a partition of the legs");
      seen[l] = true;
      leg.dim *= s.dim(l);
      leg.split.push_back(s.dim(l));
    }
    if (block.size() == 1) leg = s.leg(block.front());
    legs.push_back(std::move(leg));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("group_legs: partition does not cover every leg");
  }
  TensorBuilder b(LegSignature(std::move(legs)));
  MultiIndex idx(partition.size());
  for (const auto& [key, v] : t.entries()) {
    for (std::size_t g = 0; g < partition.size(); ++g) {
      std::size_t x = 0;
      for (const std::size_t l : partition[g]) x = x * s.dim(l) + s.component(key, l);
      idx[g] = x;
    }
    b.add(idx, v);
  }
  return std::move(b).build();
}

SparseTensor apply_at_leg(const SparseTensor& t, std::size_t leg, const RationalMatrix& m) {
  const LegSignature& s = t.signature();
  if (leg >= s.order()) throw std::invalid_argument("apply_at_leg: leg out of range");
  if (m.cols() != s.dim(leg)) throw std::invalid_argument("apply_at_leg: matrix columns differ from leg dimension");
  std::vector<Leg> legs = s.legs();
  if (m.rows() != legs[leg].dim) legs[leg] = Leg{m.rows(), {}};
  LegSignature out_sig(std::move(legs));
  const RationalMatrix mt = m.transpose();
  TensorBuilder b(out_sig);
  for (const auto& [key, v] : t.entries()) {
    const std::size_t x = s.component(key, leg);
    const std::uint64_t base = key - x * s.stride(leg);
    // Packed keys can be shifted in place only when the leg keeps its dimension.
    if (m.rows() == s.dim(leg)) {
      for (const auto& [y, c] : mt.row(x)) b.add(base + y * s.stride(leg), v * c);
    } else {
      MultiIndex idx = s.unpack(key);
      for (const auto& [y, c] : mt.row(x)) {
        idx[leg] = y;
        b.add(idx, v * c);
      }
    }
  }
  return std::move(b).build();
}

SparseTensor apply_at_factor(const SparseTensor& t, std::size_t leg, std::size_t factor, const RationalMatrix& m) {
  const LegSignature& s = t.signature();
  if (leg >= s.order()) throw std::invalid_argument("apply_at_factor: leg out of range");
  const Leg& old = s.leg(leg);
  if (factor >= old.split.size()) throw std::invalid_argument("apply_at_factor: factor out of range");
  if (m.cols() != old.split[factor]) throw std::invalid_argument("apply_at_factor: matrix columns differ from factor");
  Leg nl = old;
  nl.split[factor] = m.rows();
  nl.dim = static_cast<std::size_t>(checked_product(nl.split));
  std::vector<Leg> legs = s.legs();
  legs[leg] = nl;
  TensorBuilder b(LegSignature(std::move(legs)));
  const RationalMatrix mt = m.transpose();
  for (const auto& [key, v] : t.entries()) {
    MultiIndex idx = s.unpack(key);
    auto d = digits(idx[leg], old.split);
    const std::size_t x = d[factor];
    for (const auto& [y, c] : mt.row(x)) {
      d[factor] = y;
      idx[leg] = compose(d, nl.split);
      b.add(idx, v * c);
    }
  }
  return std::move(b).build();
}

RationalMatrix factor_permutation_matrix(std::span<const std::size_t> split, std::span<const std::size_t> perm) {
  require_permutation(perm, split.size(), "factor_permutation_matrix");
  const std::size_t dim = static_cast<std::size_t>(checked_product(split));
  std::vector<std::size_t> new_split;
  for (const std::size_t p : perm) new_split.push_back(split[p]);
  RationalMatrix m(dim, dim);
  std::vector<std::size_t> nd(split.size());
  for (std::size_t x = 0; x < dim; ++x) {
    const auto d = digits(x, split);
    for (std::size_t q = 0; q < perm.size(); ++q) nd[q] = d[perm[q]];
    m.set(compose(nd, new_split), x, Rational{1});
  }
  return m;
}

SparseTensor permute_leg_factors(const SparseTensor& t, std::size_t leg, std::span<const std::size_t> perm) {
  const Leg& old = t.signature().leg(leg);
  if (!old.has_split()) throw std::invalid_argument("permute_leg_factors: leg has no split");
  const SparseTensor moved = apply_at_leg(t, leg, factor_permutation_matrix(old.split, perm));
  std::vector<Leg> legs = moved.signature().legs();
  legs[leg].split.clear();
  for (const std::size_t p : perm) legs[leg].split.push_back(old.split[p]);
  return moved.with_signature(LegSignature(std::move(legs)));
}

RationalMatrix flatten(const SparseTensor& t, std::span<const std::size_t> row_legs) {
  const LegSignature& s = t.signature();
  std::vector<bool> on_rows(s.order(), false);
  for (const std::size_t l : row_legs) {
    if (l >= s.order()) throw std::invalid_argument("flatten: leg out of range");
    on_rows[l] = true;
  }
  std::vector<std::size_t> rl;
  std::vector<std::size_t> cl;
  for (std::size_t l = 0; l < s.order(); ++l) (on_rows[l] ? rl : cl).push_back(l);
  if (rl.empty() || cl.empty()) throw std::invalid_argument("flatten: both sides must be nonempty");
  std::vector<std::size_t> rd;
  std::vector<std::size_t> cd;
  for (const std::size_t l : rl) rd.push_back(s.dim(l));
  for (const std::size_t l : cl) cd.push_back(s.dim(l));
  const std::uint64_t rows = checked_product(rd);
  const std::uint64_t cols = checked_product(cd);
  if (rows > (std::uint64_t{1} << 28)) throw std::length_error("flatten: too many rows");
  std::vector<std::tuple<std::size_t, std::size_t, const Rational*>> cells;
  cells.reserve(t.nnz());
  for (const auto& [key, v] : t.entries()) {
    std::size_t r = 0;
    std::size_t c = 0;
    for (const std::size_t l : rl) r = r * s.dim(l) + s.component(key, l);
    for (const std::size_t l : cl) c = c * s.dim(l) + s.component(key, l);
    cells.emplace_back(r, c, &v);
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  RationalMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (const auto& [r, c, v] : cells) m.push(r, c, *v);
  return m;
}

}  // namespace tsurg
