#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "tsurg/hypergraph.hpp"
#include "tsurg/matrix.hpp"
#include "tsurg/rational.hpp"
#include "tsurg/sparse_tensor.hpp"
#include "tsurg/tensor_ops.hpp"

using namespace tsurg;

namespace {

SparseTensor from_entries(std::vector<std::size_t> dims, const std::vector<std::pair<MultiIndex, Rational>>& entries) {
  TensorBuilder b(LegSignature::from_dims(dims));
  for (const auto& [idx, v] : entries) b.add(idx, v);
  return std::move(b).build();
}

SparseTensor random_tensor(std::mt19937_64& rng, const std::vector<std::size_t>& dims, int density_pct) {
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<long> num(-4, 4);
  const LegSignature sig = LegSignature::from_dims(dims);
  TensorBuilder b(sig);
  for (std::uint64_t key = 0; key < sig.cell_count(); ++key) {
    if (pct(rng) < density_pct) b.add(key, Rational(num(rng)));
  }
  return std::move(b).build();
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational(0, 5).str(), "0");
  EXPECT_EQ(Rational(0, 5).denominator(), 1);
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "-3", "1/2", "-7/9", "123456789012345678901234567891/2"}) {
    EXPECT_EQ(Rational::parse(s).str(), s);
  }
  EXPECT_EQ(Rational::parse("2/4").str(), "1/2");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3);
  const Rational b(-1, 6);
  EXPECT_EQ(a + b, Rational(1, 6));
  EXPECT_EQ(a - b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(-1, 18));
  EXPECT_EQ(a / b, Rational(-2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_LT(b, a);
}

TEST(Matrix, TrivialRanks) {
  EXPECT_EQ(matrix_rank(RationalMatrix::identity(2)), 2u);
  EXPECT_EQ(matrix_rank(RationalMatrix(3, 4)), 0u);
}

TEST(Matrix, BareissAndSparseAgreeWithOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 9);
    const RationalMatrix m = oracle::random_matrix(rng, size(rng), size(rng), 20 + trial % 60);
    const std::size_t expected = oracle::rank(oracle::dense(m));
    EXPECT_EQ(bareiss_rank(m), expected);
    EXPECT_EQ(sparse_rank(m), expected);
    EXPECT_EQ(matrix_rank(m), expected);
    EXPECT_EQ(matrix_rank(m.transpose()), expected);
  }
}

TEST(Matrix, LowRankProducts) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> r(1, 4);
    const std::size_t k = r(rng);
    const RationalMatrix m = oracle::random_matrix(rng, 7, k, 90) * oracle::random_matrix(rng, k, 6, 90);
    EXPECT_EQ(matrix_rank(m), oracle::rank(oracle::dense(m)));
    EXPECT_LE(matrix_rank(m), k);
  }
}

TEST(Matrix, RankFactorizationReproduces) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalMatrix m = oracle::random_matrix(rng, 1 + trial % 5, 1 + trial % 7, 50);
    const RankFactorization f = rank_factorization(m);
    EXPECT_EQ(f.rank(), matrix_rank(m));
    EXPECT_EQ(f.left.rows(), m.rows());
    EXPECT_EQ(f.right.rows(), m.cols());
    EXPECT_EQ(f.left * f.right.transpose(), m);
    EXPECT_EQ(rank_factorization(m).left, f.left);  // deterministic
  }
}

TEST(Matrix, RankFactorizationExamples) {
  const RankFactorization id = rank_factorization(RationalMatrix::identity(2));
  EXPECT_EQ(id.rank(), 2u);
  EXPECT_EQ(id.left * id.right.transpose(), RationalMatrix::identity(2));
  const RationalMatrix outer = RationalMatrix::outer({1, 2}, {3, 4});
  const RankFactorization f = rank_factorization(outer);
  EXPECT_EQ(f.rank(), 1u);
  EXPECT_EQ(f.left * f.right.transpose(), outer);
  EXPECT_EQ(rank_factorization(RationalMatrix(2, 3)).rank(), 0u);
}

TEST(Matrix, InverseRoundTrip) {
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 20) {
    const RationalMatrix m = oracle::random_matrix(rng, 4, 4, 70);
    if (matrix_rank(m) != 4) continue;
    EXPECT_EQ(m * inverse(m), RationalMatrix::identity(4));
    ++done;
  }
  EXPECT_THROW(inverse(RationalMatrix(2, 2)), std::domain_error);
}

TEST(Tensor, PairwiseSquareOfTriangle) {
  const SparseTensor t = graph_tensor(cycle(3));
  const SparseTensor sq = pairwise_product(t, t, KroneckerLayout::kInterleaved);
  EXPECT_EQ(sq.nnz(), 64u);
  EXPECT_EQ(sq, graph_tensor(cycle(3, 4)));
  for (const auto& e : sq.entries()) EXPECT_EQ(e.second, Rational(1));
}

TEST(Tensor, ScalarIdentityProduct) {
  const SparseTensor t = graph_tensor(cycle(3));
  EXPECT_EQ(tensor_product(t, SparseTensor::scalar(1)), t);
  EXPECT_EQ(tensor_product(SparseTensor::scalar(1), t), t);
}

TEST(Tensor, PairwiseVectors) {
  const SparseTensor a = from_entries({3}, {{{0}, 1}, {{1}, 1}});
  const SparseTensor b = from_entries({2}, {{{0}, 1}});
  const SparseTensor p = pairwise_product(a, b);
  EXPECT_EQ(p.signature().dim(0), 6u);
  EXPECT_EQ(p.signature().leg(0).split, (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(p, from_entries({6}, {{{0}, 1}, {{2}, 1}}));
  EXPECT_THROW(pairwise_product(a, graph_tensor(cycle(3))), std::invalid_argument);
}

TEST(Tensor, ConcatenationNnzMultiplies) {
  std::mt19937_64 rng(1);
  const SparseTensor a = random_tensor(rng, {2, 3}, 60);
  const SparseTensor b = random_tensor(rng, {3, 2, 2}, 60);
  EXPECT_EQ(tensor_product(a, b).nnz(), a.nnz() * b.nnz());
}

TEST(Tensor, PermuteLegs) {
  const SparseTensor t = graph_tensor(cycle(3));
  const std::vector<std::size_t> rot{1, 2, 0};
  EXPECT_EQ(permute_legs(t, rot), t);
  const std::vector<std::size_t> id{0, 1, 2};
  EXPECT_EQ(permute_legs(t, id), t);
  const SparseTensor s = from_entries({2, 2}, {{{0, 1}, 1}});
  const std::vector<std::size_t> swap{1, 0};
  EXPECT_EQ(permute_legs(s, swap), from_entries({2, 2}, {{{1, 0}, 1}}));
  const std::vector<std::size_t> bad{0, 0, 1};
  EXPECT_THROW(permute_legs(t, bad), std::invalid_argument);
}

TEST(Tensor, GroupLegs) {
  const SparseTensor t = graph_tensor(cycle(3));
  const std::vector<std::size_t> plain{4, 4, 4};
  const SparseTensor six = group_legs(t, {{0}, {1}, {2}});
  EXPECT_EQ(six, t);
  const SparseTensor one = group_legs(t, {{0, 1, 2}});
  EXPECT_EQ(one.order(), 1u);
  EXPECT_EQ(one.signature().dim(0), 64u);
  EXPECT_EQ(one.nnz(), 8u);
  EXPECT_THROW(group_legs(t, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(group_legs(t, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(Tensor, GroupSixLegFormIntoPairs) {
  // T_2(C_3) as a six-leg tensor over edge-index slots, legs (2v, 2v+1) being
  // vertex v's (incoming, outgoing) slots.
  TensorBuilder b(LegSignature::from_dims(std::vector<std::size_t>(6, 2)));
  for (std::size_t e0 = 0; e0 < 2; ++e0) {
    for (std::size_t e1 = 0; e1 < 2; ++e1) {
      for (std::size_t e2 = 0; e2 < 2; ++e2) b.add(MultiIndex{e2, e0, e0, e1, e1, e2}, 1);
    }
  }
  const SparseTensor six = std::move(b).build();
  EXPECT_EQ(group_legs(six, {{0, 1}, {2, 3}, {4, 5}}), graph_tensor(cycle(3)));
}

TEST(Tensor, ApplyAtLeg) {
  std::mt19937_64 rng(2);
  const SparseTensor t = random_tensor(rng, {3, 2, 4}, 50);
  EXPECT_EQ(apply_at_leg(t, 0, RationalMatrix::identity(3)), t);
  EXPECT_TRUE(apply_at_leg(t, 1, RationalMatrix(5, 2)).is_zero());
  const RationalMatrix u = oracle::random_matrix(rng, 2, 3, 80);
  const RationalMatrix v = oracle::random_matrix(rng, 5, 4, 80);
  EXPECT_EQ(apply_at_leg(apply_at_leg(t, 0, u), 2, v), apply_at_leg(apply_at_leg(t, 2, v), 0, u));
  EXPECT_THROW(apply_at_leg(t, 0, RationalMatrix::identity(2)), std::invalid_argument);
  RationalMatrix w;
  do {
    w = oracle::random_matrix(rng, 4, 4, 80);
  } while (matrix_rank(w) != 4);
  EXPECT_EQ(apply_at_leg(apply_at_leg(t, 2, w), 2, inverse(w)), t);
}

TEST(Tensor, FlattenTriangle) {
  const SparseTensor t = graph_tensor(cycle(3));
  const std::vector<std::size_t> side{0};
  const RationalMatrix m = flatten(t, side);
  EXPECT_EQ(m.rows(), 4u);
  EXPECT_EQ(m.cols(), 16u);
  EXPECT_EQ(matrix_rank(m), 4u);
  EXPECT_EQ(oracle::rank(oracle::dense(m)), 4u);
  EXPECT_THROW(flatten(t, std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(Tensor, FlattenSimpleTensorHasRankOne) {
  const SparseTensor a = from_entries({3}, {{{0}, 1}, {{2}, -2}});
  const SparseTensor b = from_entries({2}, {{{1}, 3}});
  const SparseTensor c = from_entries({2}, {{{0}, 1}, {{1}, 1}});
  const SparseTensor t = tensor_product(tensor_product(a, b), c);
  for (const std::vector<std::size_t>& side : {std::vector<std::size_t>{0}, {1}, {0, 2}}) {
    EXPECT_EQ(matrix_rank(flatten(t, side)), 1u);
  }
}

TEST(Tensor, FlattenC5) {
  const SparseTensor t = graph_tensor(cycle(5));
  // Two adjacent vertices against the rest cut two edges; a max cut cuts four.
  const RationalMatrix adjacent = flatten(t, std::vector<std::size_t>{0, 1});
  EXPECT_EQ(matrix_rank(adjacent), 4u);
  EXPECT_EQ(oracle::rank(oracle::dense(adjacent)), 4u);
  EXPECT_EQ(matrix_rank(flatten(t, std::vector<std::size_t>{0, 2})), 16u);
  // Permuting legs within a side does not change the rank.
  const std::vector<std::size_t> perm{2, 0, 4, 1, 3};
  EXPECT_EQ(matrix_rank(flatten(permute_legs(t, perm), std::vector<std::size_t>{0, 1})), 16u);
}

TEST(Tensor, FactorPermutation) {
  const SparseTensor t = graph_tensor(cycle(3));
  const std::vector<std::size_t> swap{1, 0};
  const SparseTensor s = permute_leg_factors(permute_leg_factors(t, 1, swap), 1, swap);
  EXPECT_EQ(s, t);
}
