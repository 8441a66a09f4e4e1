#include "tsurg/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tsurg/parallel.hpp"

namespace tsurg {

using nlohmann::json;

Hypergraph::Hypergraph(std::size_t vertices, std::vector<HyperEdge> edges, std::vector<std::vector<std::size_t>> ports)
    : vertices_(vertices), edges_(std::move(edges)), ports_(std::move(ports)) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& verts = edges_[e].verts;
    if (verts.empty()) throw std::invalid_argument("edge " + std::to_string(e) + " is empty");
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
      throw std::invalid_argument("edge " + std::to_string(e) + " repeats a vertex");
    }
    if (verts.back() >= vertices_) throw std::invalid_argument("edge " + std::to_string(e) + " references a missing vertex");
    if (edges_[e].dim < 1) throw std::invalid_argument("edge " + std::to_string(e) + " has dimension 0");
  }
  if (!ports_.empty()) {
    if (ports_.size() != vertices_) throw std::invalid_argument("ports must list every vertex");
    for (std::size_t v = 0; v < vertices_; ++v) {
      std::vector<std::size_t> expected;
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (std::binary_search(edges_[e].verts.begin(), edges_[e].verts.end(), v)) expected.push_back(e);
      }
      std::vector<std::size_t> given = ports_[v];
      std::sort(given.begin(), given.end());
      if (given != expected) {
        throw std::invalid_argument("ports of vertex " + std::to_string(v) + " are not its incident edges");
      }
    }
  }
}

std::vector<std::size_t> Hypergraph::ports(std::size_t v) const {
  if (v >= vertices_) throw std::out_of_range("vertex out of range");
  if (!ports_.empty()) return ports_[v];
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (std::binary_search(edges_[e].verts.begin(), edges_[e].verts.end(), v)) out.push_back(e);
  }
  return out;
}

bool Hypergraph::uniform_dim() const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const HyperEdge& e) { return e.dim == edges_.front().dim; });
}

Hypergraph Hypergraph::disjoint_union(const Hypergraph& other) const {
  std::vector<HyperEdge> edges = edges_;
  for (HyperEdge e : other.edges_) {
    for (auto& v : e.verts) v += vertices_;
    edges.push_back(std::move(e));
  }
  std::vector<std::vector<std::size_t>> ports;
  if (!ports_.empty() || !other.ports_.empty()) {
    for (std::size_t v = 0; v < vertices_; ++v) ports.push_back(this->ports(v));
    for (std::size_t v = 0; v < other.vertices_; ++v) {
      auto p = other.ports(v);
      for (auto& e : p) e += edges_.size();
      ports.push_back(std::move(p));
    }
  }
  return Hypergraph(vertices_ + other.vertices_, std::move(edges), std::move(ports));
}

Hypergraph Hypergraph::with_dims(const std::vector<std::size_t>& dims) const {
  if (dims.size() != edges_.size()) throw std::invalid_argument("with_dims: one dimension per edge required");
  std::vector<HyperEdge> edges = edges_;
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].dim = dims[e];
  return Hypergraph(vertices_, std::move(edges), ports_);
}

std::string Hypergraph::describe() const {
  std::ostringstream os;
  os << vertices_ << " vertices, " << edges_.size() << " edges:";
  for (const auto& e : edges_) {
    os << " {";
    for (std::size_t i = 0; i < e.verts.size(); ++i) os << (i ? "," : "") << e.verts[i];
    os << "}^" << e.dim;
  }
  return os.str();
}

Hypergraph weighted_cycle(const std::vector<std::size_t>& weights) {
  const std::size_t l = weights.size();
  if (l < 2) throw std::invalid_argument("weighted cycle needs at least two weights");
  std::vector<HyperEdge> edges;
  for (std::size_t q = 0; q < l; ++q) edges.push_back(HyperEdge{{q, (q + 1) % l}, weights[(q + 1) % l]});
  std::vector<std::vector<std::size_t>> ports(l);
  for (std::size_t v = 0; v < l; ++v) ports[v] = {(v + l - 1) % l, v};
  return Hypergraph(l, std::move(edges), std::move(ports));
}

Hypergraph cycle(std::size_t k, std::size_t n) {
  if (k < 3) throw std::invalid_argument("cycle needs k >= 3");
  return weighted_cycle(std::vector<std::size_t>(k, n));
}

Hypergraph triangle(std::size_t n1, std::size_t n2, std::size_t n3) { return weighted_cycle({n1, n2, n3}); }

Hypergraph unit_hyperedge(std::size_t k, std::size_t n) {
  if (k < 1) throw std::invalid_argument("unit hyperedge needs k >= 1");
  std::vector<std::size_t> verts(k);
  for (std::size_t v = 0; v < k; ++v) verts[v] = v;
  return Hypergraph(k, {HyperEdge{verts, n}});
}

Hypergraph dome(std::size_t base_mult, std::size_t leg_mult, std::size_t base_dim, std::size_t leg_dim) {
  if (base_mult < 1 || leg_mult < 1) throw std::invalid_argument("dome multiplicities must be >= 1");
  std::vector<HyperEdge> edges;
  for (std::size_t i = 0; i < base_mult; ++i) edges.push_back(HyperEdge{{1, 2, 3}, base_dim});
  for (std::size_t b = 1; b <= 3; ++b) {
    for (std::size_t i = 0; i < leg_mult; ++i) edges.push_back(HyperEdge{{0, b}, leg_dim});
  }
  return Hypergraph(4, std::move(edges));
}

Hypergraph apex_insertion_graph(std::size_t n) {
  std::vector<HyperEdge> edges;
  auto add = [&](std::size_t a, std::size_t b, std::size_t mult) {
    for (std::size_t i = 0; i < mult; ++i) edges.push_back(HyperEdge{{a, b}, n});
  };
  add(0, 1, 8);
  add(0, 2, 8);
  add(0, 3, 8);
  add(1, 4, 1);
  add(2, 5, 1);
  add(3, 5, 3);
  add(4, 5, 4);
  return Hypergraph(6, std::move(edges));
}

Hypergraph double_dome(std::size_t n) {
  return Hypergraph(7, {HyperEdge{{0, 2}, n}, HyperEdge{{0, 3}, n}, HyperEdge{{2, 3, 5}, n}, HyperEdge{{1, 4}, n},
                        HyperEdge{{1, 6}, n}, HyperEdge{{4, 5, 6}, n}, HyperEdge{{0, 1}, n}});
}

namespace {

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("expected a comma-separated list of positive integers, got '" + s + "'");
    }
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

}  // namespace

bool parse_builder(const std::string& spec, std::size_t n, Hypergraph& out) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need = [&](std::size_t lo, std::size_t hi) {
    auto v = parse_list(args);
    if (v.size() < lo || v.size() > hi) throw std::invalid_argument("wrong number of arguments for builder '" + name + "'");
    return v;
  };
  if (name == "cycle") {
    const auto v = need(1, 1);
    out = cycle(v[0], n);
  } else if (name == "wcycle") {
    out = weighted_cycle(need(2, 64));
  } else if (name == "triangle") {
    const auto v = need(3, 3);
    out = triangle(v[0], v[1], v[2]);
  } else if (name == "unit") {
    const auto v = need(1, 2);
    out = unit_hyperedge(v[0], v.size() > 1 ? v[1] : n);
  } else if (name == "dome") {
    const auto v = need(2, 4);
    out = dome(v[0], v[1], v.size() > 2 ? v[2] : n, v.size() > 3 ? v[3] : n);
  } else if (name == "apex-insertion" && args.empty()) {
    out = apex_insertion_graph(n);
  } else if (name == "double-dome" && args.empty()) {
    out = double_dome(n);
  } else {
    return false;
  }
  return true;
}

std::string to_json(const Hypergraph& h) {
  json j;
  j["vertices"] = h.vertex_count();
  j["edges"] = json::array();
  for (const auto& e : h.edges()) j["edges"].push_back({{"verts", e.verts}, {"dim", e.dim}});
  if (!h.explicit_ports().empty()) j["ports"] = h.explicit_ports();
  return j.dump(2) + "\n";
}

Hypergraph hypergraph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("hypergraph file: ") + e.what());
  }
  try {
    const std::size_t k = j.at("vertices").get<std::size_t>();
    std::vector<HyperEdge> edges;
    const auto& arr = j.at("edges");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      edges.push_back(HyperEdge{arr[i].at("verts").get<std::vector<std::size_t>>(), arr[i].at("dim").get<std::size_t>()});
    }
    std::vector<std::vector<std::size_t>> ports;
    if (j.contains("ports")) ports = j.at("ports").get<std::vector<std::vector<std::size_t>>>();
    return Hypergraph(k, std::move(edges), std::move(ports));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("hypergraph file: ") + e.what());
  }
}

Hypergraph load_hypergraph(const std::string& spec_or_path, std::size_t n) {
  Hypergraph h;
  if (parse_builder(spec_or_path, n, h)) return h;
  std::ifstream in(spec_or_path);
  if (!in) throw std::runtime_error("cannot open hypergraph file '" + spec_or_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return hypergraph_from_json(ss.str());
}

LegSignature graph_signature(const Hypergraph& h) {
  std::vector<Leg> legs(h.vertex_count());
  for (std::size_t v = 0; v < legs.size(); ++v) {
    for (const std::size_t e : h.ports(v)) legs[v].split.push_back(h.edges()[e].dim);
    legs[v].dim = static_cast<std::size_t>(checked_product(legs[v].split));
  }
  return LegSignature(std::move(legs));
}

SparseTensor graph_tensor(const Hypergraph& h) {
  const std::size_t k = h.vertex_count();
  std::vector<std::vector<std::size_t>> ports(k);
  for (std::size_t v = 0; v < k; ++v) ports[v] = h.ports(v);
  TensorBuilder b{graph_signature(h)};
  const auto& edges = h.edges();
  std::vector<std::size_t> edge_dims;
  for (const auto& e : edges) edge_dims.push_back(e.dim);
  const std::uint64_t total = checked_product(edge_dims);
  std::vector<std::size_t> tuple(edges.size(), 0);
  MultiIndex idx(k);
  for (std::uint64_t count = 0; count < total; ++count) {
    for (std::size_t v = 0; v < k; ++v) {
      std::size_t x = 0;
      for (const std::size_t e : ports[v]) x = x * edges[e].dim + tuple[e];
      idx[v] = x;
    }
    b.add(idx, Rational{1});
    for (std::size_t e = edges.size(); e-- > 0;) {
      if (++tuple[e] < edges[e].dim) break;
      tuple[e] = 0;
    }
  }
  return std::move(b).build();
}

CutResult evaluate_cut(const Hypergraph& h, const std::vector<std::size_t>& side) {
  std::vector<bool> in(h.vertex_count(), false);
  for (const std::size_t v : side) in.at(v) = true;
  CutResult r;
  for (std::size_t v = 0; v < h.vertex_count(); ++v) (in[v] ? r.side : r.other).push_back(v);
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    const auto& verts = h.edges()[e].verts;
    const bool any_in = std::any_of(verts.begin(), verts.end(), [&](std::size_t v) { return in[v]; });
    const bool any_out = std::any_of(verts.begin(), verts.end(), [&](std::size_t v) { return !in[v]; });
    if (any_in && any_out) {
      r.cut_edges.push_back(e);
      r.value *= static_cast<unsigned long>(h.edges()[e].dim);
    }
  }
  return r;
}

CutResult max_cut(const Hypergraph& h) {
  const std::size_t k = h.vertex_count();
  if (k > 30) throw std::invalid_argument("max_cut: brute force limited to 30 vertices");
  if (k <= 1) {
    std::vector<std::size_t> all(k);
    for (std::size_t v = 0; v < k; ++v) all[v] = v;
    return evaluate_cut(h, all);
  }
  // Vertex 0 is always on `side`; bit v-1 of the mask puts vertex v there too.
  // The all-ones mask leaves the other side empty and is skipped.
  const std::uint64_t masks = (std::uint64_t{1} << (k - 1)) - 1;
  std::vector<std::uint64_t> edge_bits;
  std::vector<double> edge_log;
  for (const auto& e : h.edges()) {
    std::uint64_t bits = 0;
    for (const std::size_t v : e.verts) bits |= std::uint64_t{1} << v;
    edge_bits.push_back(bits);
    edge_log.push_back(std::log2(static_cast<double>(e.dim)));
  }
  auto side_of = [&](std::uint64_t mask) {
    std::vector<std::size_t> side{0};
    for (std::size_t v = 1; v < k; ++v) {
      if (mask >> (v - 1) & 1) side.push_back(v);
    }
    return side;
  };
  struct Best {
    bool found = false;
    std::uint64_t mask = 0;
    double log = -1;
    mpz_class value = 0;
    std::vector<std::size_t> side;
  };
  auto better = [](const mpz_class& value, const std::vector<std::size_t>& side, const Best& b) {
    if (!b.found) return true;
    const int c = cmp(value, b.value);
    return c > 0 || (c == 0 && side < b.side);
  };
  const std::size_t chunk_count = std::min<std::uint64_t>(worker_count(), masks);
  std::vector<Best> best(std::max<std::size_t>(chunk_count, 1));
  parallel_chunks(static_cast<std::size_t>(masks), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Best& local = best[chunk];
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      const std::uint64_t in = (mask << 1) | 1;
      double log = 0;
      for (std::size_t e = 0; e < edge_bits.size(); ++e) {
        const std::uint64_t b = edge_bits[e];
        if ((b & in) && (b & ~in)) log += edge_log[e];
      }
      if (local.found && log < local.log - 1e-9) continue;
      mpz_class value = 1;
      for (std::size_t e = 0; e < edge_bits.size(); ++e) {
        const std::uint64_t b = edge_bits[e];
        if ((b & in) && (b & ~in)) value *= static_cast<unsigned long>(h.edges()[e].dim);
      }
      auto side = side_of(mask);
      if (better(value, side, local)) {
        local = Best{true, mask, log, value, std::move(side)};
      }
    }
  });
  Best winner;
  for (auto& b : best) {
    if (b.found && better(b.value, b.side, winner)) winner = b;
  }
  return evaluate_cut(h, winner.side);
}

}  // namespace tsurg
