#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tsurg/sparse_tensor.hpp"

namespace tsurg {

struct HyperEdge {
  std::vector<std::size_t> verts;  // sorted, distinct
  std::size_t dim = 1;             // index dimension n_e
  friend bool operator==(const HyperEdge&, const HyperEdge&) = default;
};

// Vertices 0..k-1 and an ordered edge list; multi-edges are repeated entries.
//
// `ports[v]` lists the edges incident to v in the order their indices appear
// inside leg v (the leg's split). When empty, edge-list order is used. Cycle
// builders set ports so that vertex v reads (incoming edge, outgoing edge),
// the layout under which the matrix multiplication tensor and the cycle
// surgery identity hold without relabelling.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t vertices, std::vector<HyperEdge> edges, std::vector<std::vector<std::size_t>> ports = {});

  std::size_t vertex_count() const { return vertices_; }
  const std::vector<HyperEdge>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& explicit_ports() const { return ports_; }

  // Incident edge indices of v in leg order.
  std::vector<std::size_t> ports(std::size_t v) const;

  // True when every edge has the same dimension (vacuously for no edges).
  bool uniform_dim() const;

  // Disjoint union; other's vertices are shifted by vertex_count().
  Hypergraph disjoint_union(const Hypergraph& other) const;
  // Same structure with every edge dimension replaced by f(dim).
  Hypergraph with_dims(const std::vector<std::size_t>& dims) const;

  std::string describe() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t vertices_ = 0;
  std::vector<HyperEdge> edges_;
  std::vector<std::vector<std::size_t>> ports_;
};

// Builders.
// C_k with edge {v, v+1 mod k} listed in order (0,1),(1,2),...,(k-1,0), all of
// dimension n. Throws std::invalid_argument for k < 3.
Hypergraph cycle(std::size_t k, std::size_t n = 2);
// Weighted cycle whose leg v carries the split (w[v], w[v+1 mod l]); for three
// weights this is the matrix multiplication tensor <w0,w1,w2>. Edge (v,v+1)
// has dimension w[v+1]. Requires at least two weights, all >= 1.
Hypergraph weighted_cycle(const std::vector<std::size_t>& weights);
Hypergraph triangle(std::size_t n1, std::size_t n2, std::size_t n3);
// Single hyperedge over k vertices: the rank-n unit k-tensor.
Hypergraph unit_hyperedge(std::size_t k, std::size_t n);
// Apex 0 joined to 1, 2, 3 by `leg_mult` parallel edges each of dimension
// leg_dim, and `base_mult` copies of the hyperedge {1,2,3} of dimension
// base_dim. Base copies come first in the edge list.
Hypergraph dome(std::size_t base_mult, std::size_t leg_mult, std::size_t base_dim, std::size_t leg_dim);
// Six-vertex multigraph obtained by inserting an apex over a split vertex of a
// rectangular triangle: apex 0 to 1,2,3 with multiplicity 8; 1-4 once, 2-5
// once, 3-5 three times, 5-4 four times. Grouping {0,5} against the rest cuts
// 32 of its 33 edges.
Hypergraph apex_insertion_graph(std::size_t n = 2);
// Two domes glued along a shared base vertex and joined at their apexes:
// vertices 0..6, apexes 0 and 1, grouping {0,1,5} against {2,3,4,6} cuts 6 of
// 7 edges.
Hypergraph double_dome(std::size_t n = 2);

// Parses a named builder ("cycle:5", "wcycle:2,3,4", "triangle:4,4,2",
// "unit:3", "dome:1,4", "apex-insertion", "double-dome") using `n` as the
// default dimension. Returns false if `spec` is not a builder name.
bool parse_builder(const std::string& spec, std::size_t n, Hypergraph& out);

// JSON: {"vertices": k, "edges": [{"verts": [..], "dim": n}, ...], "ports": [[..], ...]}
// "ports" is optional.
std::string to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const std::string& text);

// Builder spec or path to a JSON file.
Hypergraph load_hypergraph(const std::string& spec_or_path, std::size_t n);

// Leg layout of graph_tensor(h): leg v has the product of its incident edge
// dims, split in port order.
LegSignature graph_signature(const Hypergraph& h);

// T_n(H): one leg per vertex, one summation index per edge. Leg v has
// dimension prod of its incident edge dims with split in port order; an
// isolated vertex gets a dimension-1 leg. Every coefficient is 1 and
// nnz = prod_e n_e.
SparseTensor graph_tensor(const Hypergraph& h);

struct CutResult {
  std::vector<std::size_t> side;   // side containing vertex 0, ascending
  std::vector<std::size_t> other;  // complement, ascending
  std::vector<std::size_t> cut_edges;
  mpz_class value = 1;  // product of dims of straddling edges
};

// Exhaustive maximum over bipartitions with both sides nonempty (a single
// vertex yields the trivial cut of value 1). Ties go to the lexicographically
// smallest side containing vertex 0. Throws for more than 30 vertices.
CutResult max_cut(const Hypergraph& h);

// Value of a given bipartition.
CutResult evaluate_cut(const Hypergraph& h, const std::vector<std::size_t>& side);

}  // namespace tsurg
