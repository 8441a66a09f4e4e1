#include "tsurg/surgery.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "tsurg/hypergraph.hpp"
#include "tsurg/parallel.hpp"

namespace tsurg {

void SurgeryPlan::validate(const LegSignature& s) const {
  if (leg >= s.order()) throw std::invalid_argument("surgery plan: leg " + std::to_string(leg) + " out of range");
  if (a == 0 || b == 0 || a * b != s.dim(leg)) {
    throw std::invalid_argument("surgery plan: split " + std::to_string(a) + "x" + std::to_string(b) +
                                " does not match leg dimension " + std::to_string(s.dim(leg)));
  }
  for (const std::size_t m : path) {
    if (m == 0) throw std::invalid_argument("surgery plan: path dimensions must be >= 1");
  }
}

std::string SurgeryPlan::str() const {
  std::ostringstream os;
  os << "leg " << leg << ", split (" << a << "," << b << "), path (";
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path[i];
  os << ")";
  return os.str();
}

LegSignature surgery_signature(const LegSignature& s, const SurgeryPlan& plan) {
  plan.validate(s);
  std::vector<Leg> legs;
  for (std::size_t l = 0; l < plan.leg; ++l) legs.push_back(s.leg(l));
  if (plan.path.empty()) {
    legs.push_back(Leg{plan.a, {}});
    legs.push_back(Leg{plan.b, {}});
  } else {
    std::size_t prev = plan.a;
    for (const std::size_t m : plan.path) {
      legs.push_back(Leg{prev * m, {prev, m}});
      prev = m;
    }
    legs.push_back(Leg{prev * plan.b, {prev, plan.b}});
  }
  for (std::size_t l = plan.leg + 1; l < s.order(); ++l) legs.push_back(s.leg(l));
  return LegSignature(std::move(legs));
}

SparseTensor surgery_map(const SparseTensor& t, const SurgeryPlan& plan) {
  const LegSignature& s = t.signature();
  const LegSignature out_sig = surgery_signature(s, plan);
  const std::size_t j = plan.leg;
  const std::size_t L = plan.path.size();
  const std::size_t inserted = L == 0 ? 2 : L + 1;
  std::uint64_t paths = 1;
  for (const std::size_t m : plan.path) paths *= m;
  TensorBuilder b(out_sig);
  MultiIndex idx(out_sig.order());
  std::vector<std::size_t> walk(L);
  for (const auto& [key, v] : t.entries()) {
    const MultiIndex in = s.unpack(key);
    for (std::size_t l = 0; l < j; ++l) idx[l] = in[l];
    for (std::size_t l = j + 1; l < s.order(); ++l) idx[l + inserted - 1] = in[l];
    const std::size_t x = in[j] / plan.b;
    const std::size_t y = in[j] % plan.b;
    if (L == 0) {
      idx[j] = x;
      idx[j + 1] = y;
      b.add(idx, v);
      continue;
    }
    std::fill(walk.begin(), walk.end(), 0);
    for (std::uint64_t p = 0; p < paths; ++p) {
      idx[j] = x * plan.path[0] + walk[0];
      for (std::size_t q = 1; q < L; ++q) idx[j + q] = walk[q - 1] * plan.path[q] + walk[q];
      idx[j + L] = walk[L - 1] * plan.b + y;
      b.add(idx, v);
      for (std::size_t q = L; q-- > 0;) {
        if (++walk[q] < plan.path[q]) break;
        walk[q] = 0;
      }
    }
  }
  return std::move(b).build();
}

Decomposition split_and_insert(const Decomposition& d, const SurgeryPlan& plan, PatchLibrary& library) {
  d.validate();
  const LegSignature out_sig = surgery_signature(d.signature, plan);
  const std::size_t j = plan.leg;
  const std::size_t L = plan.path.size();

  std::vector<RankFactorization> factors(d.size());
  parallel_chunks(d.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) factors[i] = rank_factorization(reshape(d.terms[i][j], plan.a, plan.b));
  });

  // Patches are resolved up front so the library is only touched serially.
  std::map<std::size_t, Decomposition> patches;
  std::map<std::size_t, std::size_t> rank_count;
  for (const auto& f : factors) {
    ++rank_count[f.rank()];
    if (L == 0 || patches.count(f.rank())) continue;
    Weights w{f.rank()};
    w.insert(w.end(), plan.path.begin(), plan.path.end());
    patches.emplace(f.rank(), library.resolve(w));
  }

  std::vector<std::vector<Term>> chunks(std::max<std::size_t>(1, std::min(d.size(), worker_count())));
  parallel_chunks(d.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& out = chunks[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const Term& t = d.terms[i];
      const RankFactorization& f = factors[i];
      std::vector<Term> pieces;
      if (L == 0) {
        for (std::size_t c = 0; c < f.rank(); ++c) pieces.push_back({f.left.column(c), f.right.column(c)});
      } else {
        Decomposition p = apply_factor_map(patches.at(f.rank()), 0, 0, f.left);
        p = apply_factor_map(p, L, 1, f.right);
        pieces = std::move(p.terms);
      }
      for (Term& piece : pieces) {
        Term nt;
        nt.reserve(out_sig.order());
        for (std::size_t l = 0; l < j; ++l) nt.push_back(t[l]);
        for (Vector& v : piece) nt.push_back(std::move(v));
        for (std::size_t l = j + 1; l < t.size(); ++l) nt.push_back(t[l]);
        out.push_back(std::move(nt));
      }
    }
  });

  Decomposition out;
  out.signature = out_sig;
  for (auto& c : chunks) {
    for (Term& t : c) out.terms.push_back(std::move(t));
  }
  std::ostringstream prov;
  prov << "surgery[" << plan.str() << "](" << d.provenance << "):";
  for (const auto& [r, count] : rank_count) {
    prov << " rank " << r << " x" << count << " -> ";
    if (L == 0) {
      prov << r << " split terms";
    } else {
      const Decomposition& p = patches.at(r);
      prov << p.size() << " [" << p.provenance << "]";
    }
    prov << ";";
  }
  out.provenance = prov.str();
  return out;
}

Decomposition odd_cycle_decomposition(std::size_t k) {
  if (k % 2 == 0 || k < 3 || k > 11) {
    throw std::invalid_argument("odd_cycle_decomposition: k must be odd with 3 <= k <= 11, got " + std::to_string(k));
  }
  PatchLibrary library = PatchLibrary::with_defaults();
  Decomposition d = strassen();
  if (!verify_and_mark(d, graph_tensor(cycle(3)))) throw std::logic_error("base decomposition failed verification");
  const SurgeryPlan plan{0, 2, 2, {2, 2}};
  for (std::size_t l = 3; l < k; l += 2) {
    d = split_and_insert(d, plan, library);
    if (!verify_and_mark(d, graph_tensor(cycle(l + 2)))) {
      throw std::logic_error("surgery stage for C_" + std::to_string(l + 2) + " failed verification");
    }
  }
  return d;
}

Decomposition c5_dim4_decomposition(PatchLibrary& library) {
  Decomposition sq = decomp_product(strassen(), strassen(), KroneckerLayout::kInterleaved);
  if (!verify_and_mark(sq, graph_tensor(cycle(3, 4)))) throw std::logic_error("squared base failed verification");
  Decomposition d = split_and_insert(sq, SurgeryPlan{0, 4, 4, {4, 4}}, library);
  if (!verify_and_mark(d, graph_tensor(cycle(5, 4)))) throw std::logic_error("T_4(C_5) construction failed verification");
  return d;
}

}  // namespace tsurg
