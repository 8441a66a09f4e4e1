#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsurg/matrix.hpp"
#include "tsurg/sparse_tensor.hpp"

namespace tsurg {

// How leg i of a pairwise Kronecker product is laid out.
//  kPlain:       index = i1 * dim2 + i2, split (dim1, dim2).
//  kInterleaved: when both legs carry splits with the same number of factors,
//                factors are multiplied pairwise, (a1,b1) x (a2,b2) ->
//                (a1*a2, b1*b2) with per-factor index x1 * f2 + x2. Legs whose
//                splits are missing or of different arity fall back to kPlain.
// kInterleaved realises T_n(G) (x) T_m(G) = T_nm(G) literally.
enum class KroneckerLayout { kPlain, kInterleaved };

// Concatenation: legs(t1) ++ legs(t2), coefficients multiplied.
SparseTensor tensor_product(const SparseTensor& t1, const SparseTensor& t2);

// Leg-pairwise Kronecker product. Throws std::invalid_argument on leg-count
// mismatch.
SparseTensor pairwise_product(const SparseTensor& t1, const SparseTensor& t2,
                              KroneckerLayout layout = KroneckerLayout::kPlain);

// Index permutation used by kInterleaved for one leg: maps the plain Kronecker
// index over (split1 ++ split2) to the interleaved index.
std::size_t interleave_index(std::size_t plain, std::span<const std::size_t> split1,
                             std::span<const std::size_t> split2);
Leg interleaved_leg(const Leg& l1, const Leg& l2);
bool interleavable(const Leg& l1, const Leg& l2);

// New leg p is old leg perm[p]. Throws if perm is not a bijection of the legs.
SparseTensor permute_legs(const SparseTensor& t, std::span<const std::size_t> perm);

// One leg per block; a block's leg has the product dimension, split = member
// dims, and row-major packing in the block's listed order.
SparseTensor group_legs(const SparseTensor& t, const std::vector<std::vector<std::size_t>>& partition);

// Applies m at `leg` (cols(m) must equal the leg dimension). The leg keeps its
// split if rows(m) equals the old dimension, otherwise the split is dropped.
SparseTensor apply_at_leg(const SparseTensor& t, std::size_t leg, const RationalMatrix& m);

// Applies m at factor `factor` of the leg's split; the split entry becomes
// rows(m).
SparseTensor apply_at_factor(const SparseTensor& t, std::size_t leg, std::size_t factor, const RationalMatrix& m);

// Permutation matrix that reorders the factors of a split leg: new factor q
// is old factor perm[q]. Result is a dim x dim matrix.
RationalMatrix factor_permutation_matrix(std::span<const std::size_t> split, std::span<const std::size_t> perm);

// Reorders the factors of a split leg; the split is permuted accordingly.
SparseTensor permute_leg_factors(const SparseTensor& t, std::size_t leg, std::span<const std::size_t> perm);

// Rows: multi-indices over `row_legs` (ascending leg order, row-major).
// Columns: the complement. Throws if row_legs is empty or all legs.
RationalMatrix flatten(const SparseTensor& t, std::span<const std::size_t> row_legs);

}  // namespace tsurg
