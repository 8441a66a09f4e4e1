#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsurg/decomposition.hpp"
#include "tsurg/patch_library.hpp"

namespace tsurg {

// Split leg `leg` as a x b and insert a path with edge dimensions `path`
// between the halves. The leg is replaced, in place, by the legs
// (a,m1), (m1,m2), ..., (mL,b). With an empty path the leg is split into two
// plain legs of dimensions a and b.
struct SurgeryPlan {
  std::size_t leg = 0;
  std::size_t a = 1;
  std::size_t b = 1;
  std::vector<std::size_t> path;

  // Throws std::invalid_argument unless leg < order, a*b = dim and all path
  // dimensions are >= 1.
  void validate(const LegSignature& s) const;
  std::string str() const;
};

LegSignature surgery_signature(const LegSignature& s, const SurgeryPlan& plan);

// The linear map phi at the planned leg:
//   e_x (x) e_y  ->  sum_j (e_x (x) e_j1) (x) (e_j1 (x) e_j2) (x) ... (x) (e_jL (x) e_y).
SparseTensor surgery_map(const SparseTensor& t, const SurgeryPlan& plan);

// Per term: factor the leg vector as U V^T of rank r, take the library's
// decomposition of the weighted cycle (r, m1, ..., mL), map its first new leg
// through U and its last through V, and splice it in. Output order is input
// term order, then patch term order. The result is verified against nothing;
// callers verify. The provenance lists the patch used per local rank.
Decomposition split_and_insert(const Decomposition& d, const SurgeryPlan& plan, PatchLibrary& library);

// 2^k - 1 terms for T_2(C_k), k odd in [3, 11], by repeated surgery from the
// seven-term base at leg 0 with split (2,2) and path (2,2). Every stage is
// verified; throws std::logic_error if one fails.
Decomposition odd_cycle_decomposition(std::size_t k);

// T_4(C_5) from the square of the seven-term base by surgery at leg 0 with
// split (4,4) and path (4,4), using `library` for the patches. The result is
// verified against T_4(C_5).
Decomposition c5_dim4_decomposition(PatchLibrary& library);

}  // namespace tsurg
