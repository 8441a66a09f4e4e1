#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "tsurg/decomp_io.hpp"
#include "tsurg/decomposition.hpp"
#include "tsurg/hypergraph.hpp"
#include "tsurg/tensor_ops.hpp"

using namespace tsurg;

namespace {

Decomposition random_decomposition(std::mt19937_64& rng, const LegSignature& sig, std::size_t terms) {
  std::uniform_int_distribution<long> num(-2, 2);
  std::uniform_int_distribution<long> den(1, 2);
  Decomposition d;
  d.signature = sig;
  for (std::size_t t = 0; t < terms; ++t) {
    Term term;
    for (std::size_t l = 0; l < sig.order(); ++l) {
      Vector v(sig.dim(l));
      do {
        for (auto& x : v) x = Rational(num(rng), den(rng));
      } while (is_zero_vector(v));
      term.push_back(v);
    }
    d.terms.push_back(term);
  }
  return d;
}

// Dense brute-force sum of simple terms.
oracle::DenseMap brute_reconstruct(const Decomposition& d) {
  oracle::DenseMap out;
  const auto dims = d.signature.dims();
  for (const Term& t : d.terms) {
    oracle::Index idx(dims.size(), 0);
    while (true) {
      mpq_class p = 1;
      for (std::size_t l = 0; l < dims.size(); ++l) p *= t[l][idx[l]].value();
      if (p != 0) out[idx] += p;
      std::size_t l = dims.size();
      bool done = true;
      while (l > 0) {
        --l;
        if (++idx[l] < dims[l]) {
          done = false;
          break;
        }
        idx[l] = 0;
      }
      if (done) break;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TEST(Decomp, StrassenShape) {
  const Decomposition s = strassen();
  EXPECT_EQ(s.size(), 7u);
  EXPECT_EQ(s.signature.dims(), (std::vector<std::size_t>{4, 4, 4}));
  std::size_t negative_terms = 0;
  for (const Term& t : s.terms) {
    bool neg = false;
    for (const Vector& v : t) {
      for (const Rational& x : v) {
        EXPECT_TRUE(x == 0 || x == 1 || x == -1);
        neg = neg || x < 0;
      }
    }
    negative_terms += neg;
  }
  EXPECT_GE(negative_terms, 3u);
}

TEST(Decomp, StrassenReconstructsMatrixMultiplication) {
  EXPECT_EQ(oracle::entries(reconstruct(strassen())), oracle::matmul222());
  EXPECT_EQ(brute_reconstruct(strassen()), oracle::matmul222());
  const VerifyReport r = verify(strassen(), graph_tensor(cycle(3)));
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.term_count, 7u);
  EXPECT_EQ(r.str(), "7 terms, VERIFIED");
}

TEST(Decomp, StrassenLocalRanks) {
  for (std::size_t leg = 0; leg < 3; ++leg) {
    const LocalRankProfile p = local_rank_profile(strassen(), leg, 2, 2);
    EXPECT_EQ(p.str(), "{1:6, 2:1}");
    EXPECT_EQ(p.term_count(), 7u);
    EXPECT_EQ(p.rank_sum(), 8u);
  }
  EXPECT_THROW(local_rank_profile(strassen(), 0, 2, 3), std::invalid_argument);
}

TEST(Decomp, DeletionIsDetected) {
  Decomposition d = strassen();
  d.terms.erase(d.terms.begin() + 3);
  const VerifyReport r = verify(d, graph_tensor(cycle(3)));
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.first_discrepancy.has_value());
  // The reported index is the lexicographically smallest differing one.
  const oracle::DenseMap got = brute_reconstruct(d);
  const oracle::DenseMap want = oracle::matmul222();
  oracle::Index first;
  bool found = false;
  for (std::size_t a = 0; a < 4 && !found; ++a) {
    for (std::size_t b = 0; b < 4 && !found; ++b) {
      for (std::size_t c = 0; c < 4 && !found; ++c) {
        const oracle::Index i{a, b, c};
        const mpq_class x = got.count(i) ? got.at(i) : mpq_class(0);
        const mpq_class y = want.count(i) ? want.at(i) : mpq_class(0);
        if (x != y) {
          first = i;
          found = true;
        }
      }
    }
  }
  EXPECT_EQ(*r.first_discrepancy, first);
  EXPECT_NE(r.str().find("MISMATCH"), std::string::npos);
}

TEST(Decomp, VerifySignatureMismatchThrows) {
  EXPECT_THROW(verify(strassen(), graph_tensor(cycle(5))), std::invalid_argument);
}

TEST(Decomp, TrivialDecompositions) {
  EXPECT_EQ(trivial_decomposition(cycle(5)).size(), 32u);
  EXPECT_EQ(trivial_decomposition(unit_hyperedge(3, 2)).size(), 2u);
  EXPECT_EQ(trivial_decomposition(triangle(1, 1, 1)).size(), 1u);
  EXPECT_EQ(local_rank_profile(trivial_decomposition(cycle(5)), 1, 2, 2).str(), "{1:32}");
  for (const Hypergraph& h : {cycle(3), cycle(5), weighted_cycle({1, 2, 3}), dome(1, 1, 2, 2), unit_hyperedge(4, 3),
                              double_dome(2), Hypergraph(3, {HyperEdge{{0, 1}, 2}})}) {
    const Decomposition d = trivial_decomposition(h);
    EXPECT_TRUE(verify(d, graph_tensor(h)).equal) << h.describe();
    EXPECT_EQ(brute_reconstruct(d), oracle::graph_tensor(h));
  }
}

TEST(Decomp, EmptyReconstructsToZero) {
  Decomposition d;
  d.signature = LegSignature::from_dims(std::vector<std::size_t>{2, 3});
  EXPECT_TRUE(reconstruct(d).is_zero());
}

TEST(Decomp, ReconstructMatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const LegSignature sig = LegSignature::from_dims(std::vector<std::size_t>{2, 3, 2});
    const Decomposition d = random_decomposition(rng, sig, 1 + trial % 6);
    EXPECT_EQ(oracle::entries(reconstruct(d)), brute_reconstruct(d));
  }
}

TEST(Decomp, SquareOfStrassen) {
  const Decomposition sq = decomp_product(strassen(), strassen());
  EXPECT_EQ(sq.size(), 49u);
  EXPECT_TRUE(verify(sq, graph_tensor(cycle(3, 4))).equal);
  EXPECT_EQ(local_rank_profile(sq, 1, 4, 4).str(), "{1:36, 2:12, 4:1}");
}

TEST(Decomp, TrivialSquareIsTrivial) {
  const Decomposition t = trivial_decomposition(cycle(3));
  const Decomposition sq = decomp_product(t, t);
  EXPECT_EQ(sq.size(), 64u);
  const Decomposition direct = trivial_decomposition(cycle(3, 4));
  // Same set of simple terms, possibly in another order.
  auto sorted = [](std::vector<Term> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(sorted(sq.terms), sorted(direct.terms));
}

TEST(Decomp, ProductWithUnitPadding) {
  Decomposition one;
  one.signature = LegSignature::from_dims(std::vector<std::size_t>{1, 1, 1});
  one.terms.push_back({{1}, {1}, {1}});
  const Decomposition p = decomp_product(strassen(), one, KroneckerLayout::kPlain);
  EXPECT_EQ(p.terms, strassen().terms);
  EXPECT_THROW(decomp_product(strassen(), trivial_decomposition(cycle(5))), std::invalid_argument);
}

TEST(Decomp, ProductReconstructionIsPairwiseProduct) {
  std::mt19937_64 rng(23);
  for (auto layout : {KroneckerLayout::kPlain, KroneckerLayout::kInterleaved}) {
    const Decomposition a = random_decomposition(rng, LegSignature({Leg{4, {2, 2}}, Leg{2, {2, 1}}}), 3);
    const Decomposition b = random_decomposition(rng, LegSignature({Leg{6, {3, 2}}, Leg{2, {1, 2}}}), 2);
    const Decomposition p = decomp_product(a, b, layout);
    EXPECT_EQ(p.size(), 6u);
    EXPECT_EQ(reconstruct(p), pairwise_product(reconstruct(a), reconstruct(b), layout));
  }
}

TEST(Decomp, LocalRanksMultiplyUnderProduct) {
  const Decomposition s = strassen();
  const Decomposition sq = decomp_product(s, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const std::size_t expected = local_rank(s.terms[i][1], 2, 2) * local_rank(s.terms[j][1], 2, 2);
      EXPECT_EQ(local_rank(sq.terms[i * s.size() + j][1], 4, 4), expected);
    }
  }
}

TEST(Decomp, RotateAndReflectStrassen) {
  const SparseTensor t = graph_tensor(cycle(3));
  for (std::size_t s = 0; s < 3; ++s) EXPECT_TRUE(verify(rotate(strassen(), s), t).equal);
  EXPECT_TRUE(verify(reflect(strassen()), t).equal);
  EXPECT_EQ(rotate(strassen(), 3).terms, strassen().terms);
  EXPECT_EQ(reflect(reflect(strassen())).terms, strassen().terms);
}

TEST(Decomp, ReflectReversesWeights) {
  const Decomposition d = trivial_decomposition(weighted_cycle({1, 2, 3, 4}));
  EXPECT_TRUE(verify(reflect(d), graph_tensor(weighted_cycle({1, 4, 3, 2}))).equal);
  EXPECT_TRUE(verify(rotate(d, 1), graph_tensor(weighted_cycle({2, 3, 4, 1}))).equal);
}

TEST(Decomp, MapsCommuteWithReconstruct) {
  std::mt19937_64 rng(29);
  const Decomposition d = strassen();
  EXPECT_EQ(apply_maps(d, {RationalMatrix::identity(4), std::nullopt, RationalMatrix::identity(4)}).terms, d.terms);
  RationalMatrix m;
  do {
    m = oracle::random_matrix(rng, 4, 4, 70);
  } while (matrix_rank(m) != 4);
  const Decomposition mapped = apply_maps(d, {std::nullopt, m, std::nullopt});
  EXPECT_EQ(reconstruct(mapped), apply_at_leg(reconstruct(d), 1, m));
  const Decomposition back = apply_maps(mapped, {std::nullopt, inverse(m), std::nullopt});
  EXPECT_EQ(back.terms, d.terms);
  const RationalMatrix proj = oracle::random_matrix(rng, 3, 4, 70);
  EXPECT_EQ(reconstruct(apply_maps(d, {proj, std::nullopt, std::nullopt})), apply_at_leg(reconstruct(d), 0, proj));
}

TEST(Decomp, ExportImportRoundTrip) {
  const Decomposition s = strassen();
  const std::string text = export_decomposition(s, std::vector<std::size_t>{2, 2, 2});
  const DecompFile f = import_decomposition(text);
  EXPECT_TRUE(f.decomposition.same_terms(s));
  EXPECT_EQ(f.decomposition.provenance, s.provenance);
  EXPECT_FALSE(f.decomposition.verified);
  EXPECT_EQ(*f.cycle_weights, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(export_decomposition(f.decomposition, f.cycle_weights), text);
}

TEST(Decomp, ExportRationalsRoundTrip) {
  std::mt19937_64 rng(31);
  const Decomposition d = random_decomposition(rng, LegSignature({Leg{4, {2, 2}}, Leg{3, {}}}), 5);
  const DecompFile f = import_decomposition(export_decomposition(d));
  EXPECT_TRUE(f.decomposition.same_terms(d));
  EXPECT_FALSE(f.cycle_weights.has_value());
}

TEST(Decomp, ImportSchemaErrors) {
  const std::string bad_len = R"({"legs": [{"dim": 2}, {"dim": 2}], "terms": [[["1", "0"], ["1"]]]})";
  try {
    import_decomposition(bad_len);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("term 0"), std::string::npos) << e.what();
  }
  EXPECT_THROW(import_decomposition("{"), FormatError);
  EXPECT_THROW(import_decomposition(R"({"terms": []})"), FormatError);
  EXPECT_THROW(import_decomposition(R"({"legs": [{"dim": 2}], "terms": [[["x", "0"]]]})"), FormatError);
  EXPECT_THROW(read_decomposition_file("/nonexistent/file.json"), std::runtime_error);
}

TEST(Decomp, ImportedFileClaimIsNotTrusted) {
  Decomposition s = strassen();
  s.verified = true;
  const DecompFile f = import_decomposition(export_decomposition(s));
  EXPECT_TRUE(f.claimed_verified);
  EXPECT_FALSE(f.decomposition.verified);
}

TEST(Decomp, LocalRankSumBound) {
  // Every verified decomposition of T_n(C_3) has local-rank sum >= n^3.
  const Decomposition sq = decomp_product(strassen(), strassen());
  EXPECT_GE(local_rank_profile(sq, 0, 4, 4).rank_sum(), 64u);
  EXPECT_GE(local_rank_profile(strassen(), 0, 2, 2).rank_sum(), 8u);
}
