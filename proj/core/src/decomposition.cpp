#include "tsurg/decomposition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tsurg/parallel.hpp"

namespace tsurg {

namespace {

std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    out[f] = index % dims[f];
    index /= dims[f];
  }
  return out;
}

std::size_t compose(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  std::size_t v = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) v = v * dims[f] + idx[f];
  return v;
}

Vector apply_matrix(const RationalMatrix& m, const Vector& v) { return m.apply(v); }

// out[y at factor] = sum_x m[y][x] v[x at factor], other factors fixed.
Vector apply_to_factor(const RationalMatrix& mt, const Vector& v, const std::vector<std::size_t>& split,
                       std::size_t factor, const std::vector<std::size_t>& new_split, std::size_t new_dim) {
  Vector out(new_dim);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    auto d = digits(i, split);
    for (const auto& [y, c] : mt.row(d[factor])) {
      d[factor] = y;
      out[compose(d, new_split)] += v[i] * c;
    }
  }
  return out;
}

}  // namespace

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

void Decomposition::validate() const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (t.size() != signature.order()) {
      throw std::invalid_argument("term " + std::to_string(i) + " has " + std::to_string(t.size()) + " vectors, expected " +
                                  std::to_string(signature.order()));
    }
    for (std::size_t l = 0; l < t.size(); ++l) {
      if (t[l].size() != signature.dim(l)) {
        throw std::invalid_argument("term " + std::to_string(i) + ", leg " + std::to_string(l) + ": vector length " +
                                    std::to_string(t[l].size()) + " differs from leg dimension " +
                                    std::to_string(signature.dim(l)));
      }
      if (is_zero_vector(t[l])) throw std::invalid_argument("term " + std::to_string(i) + " is zero");
    }
  }
}

SparseTensor term_tensor(const LegSignature& signature, const Term& term) {
  const std::size_t k = signature.order();
  std::vector<std::vector<std::size_t>> support(k);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t x = 0; x < term[l].size(); ++x) {
      if (!term[l][x].is_zero()) support[l].push_back(x);
    }
    if (support[l].empty()) return SparseTensor(signature);
  }
  TensorBuilder b(signature);
  std::vector<std::size_t> pos(k, 0);
  MultiIndex idx(k);
  while (true) {
    Rational c{1};
    for (std::size_t l = 0; l < k; ++l) {
      idx[l] = support[l][pos[l]];
      c *= term[l][idx[l]];
    }
    b.add(idx, c);
    std::size_t l = k;
    while (l-- > 0) {
      if (++pos[l] < support[l].size()) break;
      pos[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return std::move(b).build();
}

SparseTensor reconstruct(const Decomposition& d) {
  d.validate();
  std::vector<SparseTensor> partial(std::max<std::size_t>(1, std::min(d.size(), worker_count())));
  parallel_chunks(d.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    TensorBuilder b(d.signature);
    for (std::size_t i = begin; i < end; ++i) {
      const SparseTensor term = term_tensor(d.signature, d.terms[i]);
      for (const auto& [key, v] : term.entries()) b.add(key, v);
    }
    partial[chunk] = std::move(b).build();
  });
  if (d.size() <= 1 || partial.size() == 1) {
    return d.size() == 0 ? SparseTensor(d.signature) : partial.front();
  }
  TensorBuilder b(d.signature);
  for (const auto& p : partial) {
    for (const auto& [key, v] : p.entries()) b.add(key, v);
  }
  return std::move(b).build();
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  os << term_count << " terms, " << (equal ? "VERIFIED" : "MISMATCH");
  if (first_discrepancy) {
    os << " at (";
    for (std::size_t i = 0; i < first_discrepancy->size(); ++i) os << (i ? "," : "") << (*first_discrepancy)[i];
    os << "): expected " << expected << ", got " << actual;
  }
  return os.str();
}

VerifyReport verify(const Decomposition& d, const SparseTensor& t) {
  if (d.signature.dims() != t.signature().dims()) {
    throw std::invalid_argument("verify: decomposition legs " + d.signature.str() + " do not match tensor legs " +
                                t.signature().str());
  }
  const SparseTensor r = reconstruct(d);
  VerifyReport rep;
  rep.term_count = d.size();
  const auto& a = r.entries();
  const auto& b = t.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i].first == b[j].first) {
      if (a[i].second != b[j].second) {
        rep.first_discrepancy = t.signature().unpack(a[i].first);
        rep.actual = a[i].second;
        rep.expected = b[j].second;
        return rep;
      }
      ++i;
      ++j;
    } else if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      rep.first_discrepancy = t.signature().unpack(a[i].first);
      rep.actual = a[i].second;
      return rep;
    } else {
      rep.first_discrepancy = t.signature().unpack(b[j].first);
      rep.expected = b[j].second;
      return rep;
    }
  }
  rep.equal = true;
  return rep;
}

bool verify_and_mark(Decomposition& d, const SparseTensor& t) {
  d.verified = verify(d, t).equal;
  return d.verified;
}

RationalMatrix reshape(const Vector& v, std::size_t a, std::size_t b) {
  if (a * b != v.size()) throw std::invalid_argument("reshape: a*b differs from the vector length");
  RationalMatrix m(a, b);
  for (std::size_t x = 0; x < v.size(); ++x) {
    if (!v[x].is_zero()) m.push(x / b, x % b, v[x]);
  }
  return m;
}

std::size_t local_rank(const Vector& v, std::size_t a, std::size_t b) { return matrix_rank(reshape(v, a, b)); }

std::size_t LocalRankProfile::term_count() const {
  std::size_t n = 0;
  for (const auto& [r, c] : histogram) n += c;
  return n;
}

std::size_t LocalRankProfile::rank_sum() const {
  std::size_t n = 0;
  for (const auto& [r, c] : histogram) n += r * c;
  return n;
}

std::string LocalRankProfile::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [r, c] : histogram) {
    os << (first ? "" : ", ") << r << ":" << c;
    first = false;
  }
  os << "}";
  return os.str();
}

LocalRankProfile local_rank_profile(const Decomposition& d, std::size_t leg, std::size_t a, std::size_t b) {
  if (leg >= d.signature.order()) throw std::invalid_argument("local_rank_profile: leg out of range");
  if (a * b != d.signature.dim(leg)) {
    throw std::invalid_argument("local_rank_profile: split " + std::to_string(a) + "x" + std::to_string(b) +
                                " does not match leg dimension " + std::to_string(d.signature.dim(leg)));
  }
  LocalRankProfile p{leg, a, b, {}};
  for (const Term& t : d.terms) ++p.histogram[local_rank(t.at(leg), a, b)];
  return p;
}

Vector kron(const Vector& v, const Vector& w) {
  Vector out(v.size() * w.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < w.size(); ++j) out[i * w.size() + j] = v[i] * w[j];
  }
  return out;
}

Decomposition decomp_product(const Decomposition& d1, const Decomposition& d2, KroneckerLayout layout) {
  const LegSignature& s1 = d1.signature;
  const LegSignature& s2 = d2.signature;
  if (s1.order() != s2.order()) throw std::invalid_argument("decomp_product: leg-count mismatch");
  const std::size_t k = s1.order();
  std::vector<Leg> legs;
  std::vector<bool> inter(k);
  std::vector<std::vector<std::size_t>> perm(k);
  for (std::size_t i = 0; i < k; ++i) {
    inter[i] = layout == KroneckerLayout::kInterleaved && interleavable(s1.leg(i), s2.leg(i));
    legs.push_back(inter[i] ? interleaved_leg(s1.leg(i), s2.leg(i)) : Leg{s1.dim(i) * s2.dim(i), {s1.dim(i), s2.dim(i)}});
    if (inter[i]) {
      perm[i].resize(legs.back().dim);
      for (std::size_t x = 0; x < perm[i].size(); ++x) perm[i][x] = interleave_index(x, s1.leg(i).split, s2.leg(i).split);
    }
  }
  Decomposition out;
  out.signature = LegSignature(std::move(legs));
  out.terms.reserve(d1.size() * d2.size());
  for (const Term& t1 : d1.terms) {
    for (const Term& t2 : d2.terms) {
      Term t(k);
      for (std::size_t i = 0; i < k; ++i) {
        Vector plain = kron(t1[i], t2[i]);
        if (inter[i]) {
          t[i].assign(plain.size(), Rational{});
          for (std::size_t x = 0; x < plain.size(); ++x) t[i][perm[i][x]] = std::move(plain[x]);
        } else {
          t[i] = std::move(plain);
        }
      }
      out.terms.push_back(std::move(t));
    }
  }
  out.provenance = "product(" + d1.provenance + ", " + d2.provenance + ")";
  return out;
}

Decomposition permute(const Decomposition& d, const std::vector<std::size_t>& perm) {
  const std::size_t k = d.signature.order();
  if (perm.size() != k) throw std::invalid_argument("permute: permutation has wrong size");
  std::vector<bool> seen(k, false);
  for (const std::size_t p : perm) {
    if (p >= k || seen[p]) throw std::invalid_argument("permute: not a bijection");
    seen[p] = true;
  }
  std::vector<Leg> legs;
  for (const std::size_t p : perm) legs.push_back(d.signature.leg(p));
  Decomposition out{LegSignature(std::move(legs)), {}, d.provenance, false};
  for (const Term& t : d.terms) {
    Term nt;
    for (const std::size_t p : perm) nt.push_back(t[p]);
    out.terms.push_back(std::move(nt));
  }
  return out;
}

Decomposition rotate(const Decomposition& d, std::size_t shift) {
  const std::size_t k = d.signature.order();
  if (k == 0) return d;
  std::vector<std::size_t> perm(k);
  for (std::size_t p = 0; p < k; ++p) perm[p] = (p + shift) % k;
  Decomposition out = permute(d, perm);
  out.provenance = "rotate(" + d.provenance + ", " + std::to_string(shift % k) + ")";
  return out;
}

Decomposition reflect(const Decomposition& d) {
  const std::size_t k = d.signature.order();
  std::vector<std::size_t> perm(k);
  for (std::size_t p = 0; p < k; ++p) perm[p] = k - 1 - p;
  Decomposition out = permute(d, perm);
  std::vector<Leg> legs = out.signature.legs();
  std::vector<RationalMatrix> swaps;
  for (auto& leg : legs) {
    if (leg.split.size() != 2) throw std::invalid_argument("reflect: every leg needs a two-factor split");
    const std::size_t swap[2] = {1, 0};
    swaps.push_back(factor_permutation_matrix(leg.split, swap));
    std::swap(leg.split[0], leg.split[1]);
  }
  for (Term& t : out.terms) {
    for (std::size_t p = 0; p < k; ++p) t[p] = apply_matrix(swaps[p], t[p]);
  }
  out.signature = LegSignature(std::move(legs));
  out.provenance = "reflect(" + d.provenance + ")";
  return out;
}

Decomposition apply_maps(const Decomposition& d, const std::vector<std::optional<RationalMatrix>>& maps,
                         const std::vector<std::vector<std::size_t>>& new_splits) {
  const std::size_t k = d.signature.order();
  if (maps.size() != k) throw std::invalid_argument("apply_maps: one entry per leg required");
  std::vector<Leg> legs = d.signature.legs();
  for (std::size_t i = 0; i < k; ++i) {
    if (!maps[i]) continue;
    if (maps[i]->cols() != legs[i].dim) {
      throw std::invalid_argument("apply_maps: map at leg " + std::to_string(i) + " has " +
                                  std::to_string(maps[i]->cols()) + " columns, leg dimension is " +
                                  std::to_string(legs[i].dim));
    }
    if (i < new_splits.size() && !new_splits[i].empty()) {
      legs[i] = Leg{maps[i]->rows(), new_splits[i]};
    } else if (maps[i]->rows() != legs[i].dim) {
      legs[i] = Leg{maps[i]->rows(), {}};
    }
  }
  Decomposition out{LegSignature(std::move(legs)), {}, "maps(" + d.provenance + ")", false};
  for (const Term& t : d.terms) {
    Term nt = t;
    bool zero = false;
    for (std::size_t i = 0; i < k && !zero; ++i) {
      if (maps[i]) nt[i] = apply_matrix(*maps[i], t[i]);
      zero = is_zero_vector(nt[i]);
    }
    if (!zero) out.terms.push_back(std::move(nt));
  }
  return out;
}

Decomposition apply_factor_map(const Decomposition& d, std::size_t leg, std::size_t factor, const RationalMatrix& m) {
  if (leg >= d.signature.order()) throw std::invalid_argument("apply_factor_map: leg out of range");
  const Leg& old = d.signature.leg(leg);
  if (factor >= old.split.size()) throw std::invalid_argument("apply_factor_map: factor out of range");
  if (m.cols() != old.split[factor]) throw std::invalid_argument("apply_factor_map: matrix columns differ from factor");
  Leg nl = old;
  nl.split[factor] = m.rows();
  nl.dim = static_cast<std::size_t>(checked_product(nl.split));
  std::vector<Leg> legs = d.signature.legs();
  legs[leg] = nl;
  Decomposition out{LegSignature(std::move(legs)), {}, d.provenance, false};
  const RationalMatrix mt = m.transpose();
  for (const Term& t : d.terms) {
    Term nt = t;
    nt[leg] = apply_to_factor(mt, t[leg], old.split, factor, nl.split, nl.dim);
    if (!is_zero_vector(nt[leg])) out.terms.push_back(std::move(nt));
  }
  return out;
}

Decomposition strassen() {
  const Vector b0{1, 0};
  const Vector b1{0, 1};
  const Vector bp{1, 1};
  const Vector bm{1, -1};
  auto neg = [](Vector v) {
    for (auto& x : v) x = -x;
    return v;
  };
  Vector diag = kron(b0, b0);
  const Vector b11 = kron(b1, b1);
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += b11[i];
  Decomposition d;
  d.signature = LegSignature({Leg{4, {2, 2}}, Leg{4, {2, 2}}, Leg{4, {2, 2}}});
  d.terms = {
      {neg(kron(bm, b0)), kron(b0, bp), kron(b1, b1)},
      {neg(kron(b1, b1)), kron(bm, b0), kron(b0, bp)},
      {neg(kron(b0, bp)), kron(b1, b1), kron(bm, b0)},
      {kron(bm, b1), kron(b1, bp), kron(b0, b0)},
      {kron(b0, b0), kron(bm, b1), kron(b1, bp)},
      {kron(b1, bp), kron(b0, b0), kron(bm, b1)},
      {diag, diag, diag},
  };
  d.provenance = "strassen";
  return d;
}

Decomposition trivial_decomposition(const Hypergraph& h) {
  const std::size_t k = h.vertex_count();
  Decomposition d;
  d.signature = graph_signature(h);
  std::ostringstream prov;
  prov << "trivial(" << h.describe() << ")";
  d.provenance = prov.str();
  std::vector<std::vector<std::size_t>> ports(k);
  for (std::size_t v = 0; v < k; ++v) ports[v] = h.ports(v);
  const auto& edges = h.edges();
  std::vector<std::size_t> edge_dims;
  for (const auto& e : edges) edge_dims.push_back(e.dim);
  const std::uint64_t total = checked_product(edge_dims);
  std::vector<std::size_t> tuple(edges.size(), 0);
  for (std::uint64_t count = 0; count < total; ++count) {
    Term t(k);
    for (std::size_t v = 0; v < k; ++v) {
      std::size_t x = 0;
      for (const std::size_t e : ports[v]) x = x * edges[e].dim + tuple[e];
      t[v].assign(d.signature.dim(v), Rational{});
      t[v][x] = Rational{1};
    }
    d.terms.push_back(std::move(t));
    for (std::size_t e = edges.size(); e-- > 0;) {
      if (++tuple[e] < edges[e].dim) break;
      tuple[e] = 0;
    }
  }
  return d;
}

}  // namespace tsurg
