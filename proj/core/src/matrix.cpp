#include "tsurg/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tsurg {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational{1});
  return m;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_dense: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!rows[r][c].is_zero()) m.data_[r].emplace_back(c, rows[r][c]);
    }
  }
  return m;
}

RationalMatrix RationalMatrix::outer(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  RationalMatrix m(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].is_zero()) continue;
    for (std::size_t c = 0; c < b.size(); ++c) {
      if (!b[c].is_zero()) m.data_[r].emplace_back(c, a[r] * b[c]);
    }
  }
  return m;
}

std::size_t RationalMatrix::nnz() const {
  std::size_t n = 0;
  for (const Row& r : data_) n += r.size();
  return n;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("matrix column out of range");
  const Row& row = data_.at(r);
  const auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const RowEntry& e, std::size_t col) { return e.first < col; });
  if (it == row.end() || it->first != c) return Rational{};
  return it->second;
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (c >= cols_) throw std::out_of_range("matrix column out of range");
  Row& row = data_.at(r);
  const auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const RowEntry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value.is_zero()) {
      row.erase(it);
    } else {
      it->second = value;
    }
  } else if (!value.is_zero()) {
    row.insert(it, RowEntry{c, value});
  }
}

void RationalMatrix::push(std::size_t r, std::size_t c, const Rational& value) {
  Row& row = data_.at(r);
  if (c >= cols_) throw std::out_of_range("matrix column out of range");
  if (row.empty() || row.back().first < c) {
    if (!value.is_zero()) row.emplace_back(c, value);
  } else {
    set(r, c, at(r, c) + value);
  }
}

std::vector<Rational> RationalMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  }
  return t;
}

std::vector<std::vector<Rational>> RationalMatrix::dense() const {
  std::vector<std::vector<Rational>> out(rows(), std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : data_[r]) out[r][c] = v;
  }
  return out;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<Rational> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, x] : data_[r]) {
      if (!v[c].is_zero()) out[r] += x * v[c];
    }
  }
  return out;
}

std::string RationalMatrix::str() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
    os << '\n';
  }
  return os.str();
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, x] : a.row(r)) {
      for (const auto& [c, y] : b.row(k)) acc[c] += x * y;
    }
    for (auto& [c, v] : acc) {
      if (!v.is_zero()) out.data_[r].emplace_back(c, std::move(v));
    }
  }
  return out;
}

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;

// Dense integer copy of `m`, each row scaled by the lcm of its denominators.
std::vector<std::vector<mpz_class>> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (const auto& [c, v] : m.row(r)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.value().get_den_mpz_t());
    }
    for (const auto& [c, v] : m.row(r)) {
      a[r][c] = v.value().get_num() * (l / v.value().get_den());
    }
  }
  return a;
}

// Dense rational Gauss-Jordan to reduced row echelon form. Pivots are searched
// in the first `cols` columns only (row operations span the full width). Pivot
// = first row at or below the current one with a nonzero entry; columns left
// to right.
std::vector<std::size_t> rref_in_place(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const std::size_t width = a[r].size();
    const Rational inv = Rational{1} / a[r][c];
    for (std::size_t j = c; j < width; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < width; ++j) {
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t bareiss_rank(const RationalMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  mpz_class prev = 1;
  std::size_t r = 0;
  mpz_class t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t sparse_rank(const RationalMatrix& m) {
  using SRow = RationalMatrix::Row;
  // Basis rows keyed by leading column, normalised to a leading 1.
  std::map<std::size_t, SRow> basis;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SRow row = m.row(r);
    while (!row.empty()) {
      const auto it = basis.find(row.front().first);
      if (it == basis.end()) {
        const Rational inv = Rational{1} / row.front().second;
        for (auto& e : row) e.second *= inv;
        basis.emplace(row.front().first, std::move(row));
        break;
      }
      const Rational f = row.front().second;
      const SRow& b = it->second;
      SRow merged;
      merged.reserve(row.size() + b.size());
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < b.size()) {
        if (j == b.size() || (i < row.size() && row[i].first < b[j].first)) {
          merged.push_back(std::move(row[i++]));
        } else if (i == row.size() || b[j].first < row[i].first) {
          merged.emplace_back(b[j].first, -(f * b[j].second));
          ++j;
        } else {
          Rational v = row[i].second - f * b[j].second;
          if (!v.is_zero()) merged.emplace_back(row[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      row = std::move(merged);
    }
  }
  return basis.size();
}

std::size_t matrix_rank(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const auto cells = static_cast<std::uint64_t>(m.rows()) * m.cols();
  return cells < kDenseLimit ? bareiss_rank(m) : sparse_rank(m);
}

RankFactorization rank_factorization(const RationalMatrix& m) {
  auto a = m.dense();
  const auto pivots = rref_in_place(a, m.cols());
  const std::size_t r = pivots.size();
  RankFactorization f{RationalMatrix(m.rows(), r), RationalMatrix(m.cols(), r)};
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < m.rows(); ++i) f.left.set(i, k, m.at(i, pivots[k]));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!a[k][j].is_zero()) f.right.set(j, k, a[k][j]);
    }
  }
  return f;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::domain_error("inverse of a non-square matrix");
  std::vector<std::vector<Rational>> a = m.dense();
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = Rational{1};
  }
  const auto pivots = rref_in_place(a, n);
  if (pivots.size() != n) throw std::domain_error("matrix is singular");
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[i][n + j].is_zero()) out.set(i, j, a[i][n + j]);
    }
  }
  return out;
}

}  // namespace tsurg
