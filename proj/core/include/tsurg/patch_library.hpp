#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tsurg/decomposition.hpp"

namespace tsurg {

using Weights = std::vector<std::size_t>;

// Lexicographically smallest tuple among the rotations and reversals of w.
Weights canonical_weights(const Weights& w);

// Decompositions of weighted-cycle tensors T(w) = weighted_cycle(w), keyed by
// canonical weight tuple. Only decompositions that verify against their
// weighted cycle are admitted.
//
// resolve(q) returns a decomposition of T(q) in the queried orientation. The
// cheapest of the following is used, unless q's class is pinned:
//  - the trivial decomposition (prod q terms);
//  - E (x) resolve(q / o) for every stored entry E and every orientation o of
//    it dividing q componentwise, composed by the interleaved Kronecker
//    product, so stored entries combine (e.g. (2,4,4) from (2,2,2) and the
//    trivial (1,2,2)).
// A pinned class always resolves to its pinned decomposition. Results are
// cached per queried tuple.
class PatchLibrary {
 public:
  // Just the seven-term decomposition of T(2,2,2).
  static PatchLibrary with_defaults();

  // Verifies d against weighted_cycle(w) and stores it if it holds. Returns
  // whether it was admitted. A decomposition with a different leg layout
  // throws std::invalid_argument.
  bool add(const Weights& w, Decomposition d, bool pinned = false);

  Decomposition resolve(const Weights& q);
  std::size_t resolved_size(const Weights& q);

  std::size_t entry_count() const { return entries_.size(); }
  std::vector<std::string> describe() const;

 private:
  struct Entry {
    Weights weights;  // orientation of `decomposition`
    Decomposition decomposition;
    bool pinned = false;
  };
  struct Choice {
    std::size_t size = 0;
    // Index into entries_ and the orientation used; npos means trivial.
    std::size_t entry = static_cast<std::size_t>(-1);
    Weights orientation;
  };

  Choice choose(const Weights& q);

  std::map<Weights, Entry> entries_;  // by canonical weights
  std::map<Weights, Choice> choices_;
  std::map<Weights, Decomposition> cache_;
};

// Decomposition of T(w) from a decomposition of T(base) where w is a rotation
// or reversal of base. Throws if it is not.
Decomposition orient(const Decomposition& d, const Weights& base, const Weights& w);

}  // namespace tsurg
