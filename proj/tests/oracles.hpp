#pragma once

// Brute-force reference computations that share no code with the library
// beyond its plain data types.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <random>
#include <vector>

#include "tsurg/hypergraph.hpp"
#include "tsurg/matrix.hpp"
#include "tsurg/sparse_tensor.hpp"

namespace oracle {

using Index = std::vector<std::size_t>;
using DenseMap = std::map<Index, mpq_class>;

// Textbook Gaussian elimination over mpq_class on a dense copy.
inline std::size_t rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<std::vector<mpq_class>> dense(const tsurg::RationalMatrix& m) {
  std::vector<std::vector<mpq_class>> out(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [c, v] : m.row(i)) out[i][c] = v.value();
  }
  return out;
}

// Entries of a sparse tensor keyed by unpacked multi-index.
inline DenseMap entries(const tsurg::SparseTensor& t) {
  DenseMap out;
  for (const auto& e : t.entries()) out[t.index_of(e)] = e.second.value();
  return out;
}

// The graph tensor from its defining sum: enumerate every assignment of edge
// indices and read each leg index as a mixed-radix number over its ports.
inline DenseMap graph_tensor(const tsurg::Hypergraph& h) {
  const auto& edges = h.edges();
  std::vector<std::size_t> assign(edges.size(), 0);
  DenseMap out;
  while (true) {
    Index idx(h.vertex_count(), 0);
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
      std::size_t x = 0;
      for (const std::size_t e : h.ports(v)) x = x * edges[e].dim + assign[e];
      idx[v] = x;
    }
    out[idx] += 1;
    std::size_t q = edges.size();
    while (q > 0) {
      --q;
      if (++assign[q] < edges[q].dim) break;
      assign[q] = 0;
      if (q == 0) return out;
    }
    if (edges.empty()) return out;
  }
}

// <2,2,2> with leg v reading (incoming edge, outgoing edge) on the triangle:
// A[e2][e0] B[e0][e1] C[e1][e2].
inline DenseMap matmul222() {
  DenseMap out;
  for (std::size_t e0 = 0; e0 < 2; ++e0) {
    for (std::size_t e1 = 0; e1 < 2; ++e1) {
      for (std::size_t e2 = 0; e2 < 2; ++e2) out[{e2 * 2 + e0, e0 * 2 + e1, e1 * 2 + e2}] = 1;
    }
  }
  return out;
}

// Largest product of straddling edge dimensions over all 2^k vertex subsets.
inline mpz_class max_cut_value(const tsurg::Hypergraph& h) {
  mpz_class best = 0;
  const std::size_t k = h.vertex_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    mpz_class v = 1;
    for (const auto& e : h.edges()) {
      bool in = false;
      bool out = false;
      for (const std::size_t u : e.verts) ((mask >> u) & 1 ? in : out) = true;
      if (in && out) v *= e.dim;
    }
    if (v > best) best = v;
  }
  return best;
}

inline tsurg::RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int density_pct) {
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  tsurg::RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (pct(rng) < density_pct) m.set(i, j, tsurg::Rational(num(rng), den(rng)));
    }
  }
  return m;
}

}  // namespace oracle
