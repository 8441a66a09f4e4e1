#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tsurg/rational.hpp"

namespace tsurg {

// Rational matrix with row-wise sparse storage. Each row holds (column, value)
// pairs sorted by column with no zero values.
class RationalMatrix {
 public:
  using RowEntry = std::pair<std::size_t, Rational>;
  using Row = std::vector<RowEntry>;

  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  // Column vector a (x) row vector b, i.e. the a.size() x b.size() outer product.
  static RationalMatrix outer(const std::vector<Rational>& a, const std::vector<Rational>& b);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  // Rows must be appended in order of their columns for O(1) insertion;
  // falls back to `set` otherwise.
  void push(std::size_t r, std::size_t c, const Rational& value);

  const Row& row(std::size_t r) const { return data_.at(r); }
  std::vector<Rational> column(std::size_t c) const;

  RationalMatrix transpose() const;
  std::vector<std::vector<Rational>> dense() const;
  // Matrix-vector product; v.size() must equal cols().
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  std::string str() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

// Exact rank over Q. Small matrices (rows*cols < 2^22) use fraction-free
// Bareiss elimination after clearing row denominators; larger ones use sparse
// incremental row echelon reduction.
std::size_t matrix_rank(const RationalMatrix& m);

// Individual engines, exposed for cross-checking.
std::size_t bareiss_rank(const RationalMatrix& m);
std::size_t sparse_rank(const RationalMatrix& m);

// M = U * V^T with U rows x r, V cols x r and r = rank(M). U holds the pivot
// columns of M and V^T the nonzero rows of the reduced row echelon form, with
// pivots chosen as the first nonzero row, columns scanned left to right.
struct RankFactorization {
  RationalMatrix left;
  RationalMatrix right;
  std::size_t rank() const { return left.cols(); }
};
RankFactorization rank_factorization(const RationalMatrix& m);

// Inverse of a square matrix; throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace tsurg
