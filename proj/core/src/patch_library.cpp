#include "tsurg/patch_library.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <numeric>
#include <stdexcept>

#include "tsurg/hypergraph.hpp"

namespace tsurg {

namespace {

Weights rotated(const Weights& w, std::size_t s) {
  Weights out(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) out[p] = w[(p + s) % w.size()];
  return out;
}

Weights reflected(const Weights& w) {
  Weights out(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) out[p] = w[(w.size() - p) % w.size()];
  return out;
}

std::string tuple_str(const Weights& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

std::size_t product(const Weights& w) {
  return std::accumulate(w.begin(), w.end(), std::size_t{1}, std::multiplies<>());
}

// All (reflect, shift) orientations of w, in a fixed order.
std::vector<std::pair<Weights, std::pair<bool, std::size_t>>> orientations(const Weights& w) {
  std::vector<std::pair<Weights, std::pair<bool, std::size_t>>> out;
  for (const bool refl : {false, true}) {
    const Weights base = refl ? reflected(w) : w;
    for (std::size_t s = 0; s < w.size(); ++s) out.push_back({rotated(base, s), {refl, s}});
  }
  return out;
}

}  // namespace

Weights canonical_weights(const Weights& w) {
  Weights best = w;
  for (const auto& [o, how] : orientations(w)) best = std::min(best, o);
  return best;
}

Decomposition orient(const Decomposition& d, const Weights& base, const Weights& w) {
  for (const auto& [o, how] : orientations(base)) {
    if (o != w) continue;
    const auto [refl, s] = how;
    Decomposition out = rotate(refl ? reflect(d) : d, s);
    out.verified = d.verified;
    out.provenance = d.provenance;
    if (refl || s != 0) out.provenance += " oriented " + tuple_str(w);
    return out;
  }
  throw std::invalid_argument("orient: " + tuple_str(w) + " is not a rotation or reversal of " + tuple_str(base));
}

PatchLibrary PatchLibrary::with_defaults() {
  PatchLibrary lib;
  lib.add({2, 2, 2}, strassen());
  return lib;
}

bool PatchLibrary::add(const Weights& w, Decomposition d, bool pinned) {
  const Hypergraph h = weighted_cycle(w);
  if (!(d.signature == graph_signature(h))) {
    throw std::invalid_argument("patch for " + tuple_str(w) + ": leg layout " + d.signature.str() +
                                " does not match the weighted cycle " + graph_signature(h).str());
  }
  if (!verify_and_mark(d, graph_tensor(h))) return false;
  entries_[canonical_weights(w)] = Entry{w, std::move(d), pinned};
  choices_.clear();
  cache_.clear();
  return true;
}

PatchLibrary::Choice PatchLibrary::choose(const Weights& q) {
  if (auto it = choices_.find(q); it != choices_.end()) return it->second;
  Choice best{product(q), static_cast<std::size_t>(-1), {}};
  const Weights key = canonical_weights(q);
  if (auto it = entries_.find(key); it != entries_.end() && it->second.pinned) {
    best = Choice{it->second.decomposition.size(), 0, q};
    best.entry = static_cast<std::size_t>(std::distance(entries_.begin(), it));
    choices_[q] = best;
    return best;
  }
  if (std::any_of(q.begin(), q.end(), [](std::size_t x) { return x != 1; })) {
    std::size_t index = 0;
    for (const auto& [k, e] : entries_) {
      const bool unit = std::all_of(k.begin(), k.end(), [](std::size_t x) { return x == 1; });
      if (k.size() == q.size() && !unit) {
        for (const auto& [o, how] : orientations(e.weights)) {
          bool divides = true;
          Weights rest(q.size());
          for (std::size_t i = 0; i < q.size() && divides; ++i) {
            divides = q[i] % o[i] == 0;
            if (divides) rest[i] = q[i] / o[i];
          }
          if (!divides) continue;
          const std::size_t size = e.decomposition.size() * choose(rest).size;
          if (size < best.size) best = Choice{size, index, o};
        }
      }
      ++index;
    }
  }
  choices_[q] = best;
  return best;
}

std::size_t PatchLibrary::resolved_size(const Weights& q) { return choose(q).size; }

Decomposition PatchLibrary::resolve(const Weights& q) {
  if (auto it = cache_.find(q); it != cache_.end()) return it->second;
  const Choice c = choose(q);
  Decomposition out;
  if (c.entry == static_cast<std::size_t>(-1)) {
    out = trivial_decomposition(weighted_cycle(q));
    out.provenance = "trivial" + tuple_str(q);
  } else {
    const Entry& e = std::next(entries_.begin(), static_cast<std::ptrdiff_t>(c.entry))->second;
    out = orient(e.decomposition, e.weights, c.orientation);
    if (c.orientation != q) {
      Weights rest(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) rest[i] = q[i] / c.orientation[i];
      const Decomposition tail = resolve(rest);
      const std::string prov = "(" + out.provenance + ")x(" + tail.provenance + ")";
      out = decomp_product(out, tail, KroneckerLayout::kInterleaved);
      out.provenance = prov;
    }
  }
  if (!verify_and_mark(out, graph_tensor(weighted_cycle(q)))) {
    throw std::logic_error("patch for " + tuple_str(q) + " failed verification");
  }
  cache_[q] = out;
  return out;
}

std::vector<std::string> PatchLibrary::describe() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_) {
    out.push_back(tuple_str(k) + ": " + std::to_string(e.decomposition.size()) + " terms" + (e.pinned ? " (pinned)" : "") +
                  " [" + e.decomposition.provenance + "]");
  }
  return out;
}

}  // namespace tsurg
