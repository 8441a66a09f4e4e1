#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsurg/hypergraph.hpp"
#include "tsurg/matrix.hpp"
#include "tsurg/sparse_tensor.hpp"
#include "tsurg/tensor_ops.hpp"

namespace tsurg {

using Vector = std::vector<Rational>;
// One dense coefficient vector per leg.
using Term = std::vector<Vector>;

// Ordered sum of simple tensors over a fixed leg signature. `verified` is set
// only by verify_and_mark (or by constructions that call it), never by import.
struct Decomposition {
  LegSignature signature;
  std::vector<Term> terms;
  std::string provenance;
  bool verified = false;

  std::size_t size() const { return terms.size(); }
  // Throws std::invalid_argument if a vector length differs from its leg
  // dimension or a term is zero.
  void validate() const;

  // Equal signature (including splits) and identical term lists.
  bool same_terms(const Decomposition& other) const {
    return signature == other.signature && terms == other.terms;
  }
};

bool is_zero_vector(const Vector& v);

// The simple tensor v_1 (x) ... (x) v_k of one term.
SparseTensor term_tensor(const LegSignature& signature, const Term& term);

// Sum of all terms; cancelled entries are dropped.
SparseTensor reconstruct(const Decomposition& d);

struct VerifyReport {
  bool equal = false;
  std::size_t term_count = 0;
  std::optional<MultiIndex> first_discrepancy;  // lexicographically smallest
  Rational expected;                            // target entry there
  Rational actual;                              // reconstructed entry there
  std::string str() const;
};

// Compares reconstruct(d) with t. Throws std::invalid_argument when the leg
// dimensions differ (a signature mismatch is not an inequality).
VerifyReport verify(const Decomposition& d, const SparseTensor& t);
// verify() and record the outcome in d.verified. Returns the outcome.
bool verify_and_mark(Decomposition& d, const SparseTensor& t);

// The a x b matrix of v, row-major: M[x][y] = v[x*b + y].
RationalMatrix reshape(const Vector& v, std::size_t a, std::size_t b);
std::size_t local_rank(const Vector& v, std::size_t a, std::size_t b);

struct LocalRankProfile {
  std::size_t leg = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::map<std::size_t, std::size_t> histogram;  // local rank -> term count

  std::size_t term_count() const;
  // Sum over terms of the local rank.
  std::size_t rank_sum() const;
  std::string str() const;  // "{1:6, 2:1}"
};

// Throws std::invalid_argument when a*b differs from the leg dimension.
LocalRankProfile local_rank_profile(const Decomposition& d, std::size_t leg, std::size_t a, std::size_t b);

// Kronecker product of vectors, plain layout: out[i*|w| + j] = v[i]*w[j].
Vector kron(const Vector& v, const Vector& w);

// Term-pair product (D1-major). Leg i of the result is laid out as by
// pairwise_product with the same layout, so reconstruct(D1 x D2) equals
// pairwise_product(reconstruct(D1), reconstruct(D2), layout).
Decomposition decomp_product(const Decomposition& d1, const Decomposition& d2,
                             KroneckerLayout layout = KroneckerLayout::kInterleaved);

// New leg p is old leg (p + shift) mod k.
Decomposition rotate(const Decomposition& d, std::size_t shift);
// New leg p is old leg k-1-p with its two split factors swapped. Every leg
// must carry a two-factor split. On a weighted cycle (w0, ..., w_{l-1}) this
// yields the cycle (w0, w_{l-1}, ..., w1).
Decomposition reflect(const Decomposition& d);
// New leg p is old leg perm[p].
Decomposition permute(const Decomposition& d, const std::vector<std::size_t>& perm);
// Applies maps[i] at leg i (std::nullopt leaves the leg alone). Terms that
// become zero are dropped. A map whose row count differs from the leg
// dimension clears that leg's split unless `new_splits` supplies one.
Decomposition apply_maps(const Decomposition& d, const std::vector<std::optional<RationalMatrix>>& maps,
                         const std::vector<std::vector<std::size_t>>& new_splits = {});
// Applies m at one factor of a split leg, as apply_at_factor does on tensors.
Decomposition apply_factor_map(const Decomposition& d, std::size_t leg, std::size_t factor, const RationalMatrix& m);

// Built-ins.
// The seven-term decomposition of T_2(C_3) over legs (4,4,4) with splits
// (2,2), with three negative terms.
Decomposition strassen();
// One basis term per edge-index tuple (last edge varies fastest).
Decomposition trivial_decomposition(const Hypergraph& h);

}  // namespace tsurg
