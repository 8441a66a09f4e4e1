#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tsurg/hypergraph.hpp"

namespace tsurg {

enum class Quantity { kRank, kBorderRank, kExponent };
enum class Direction { kLower, kUpper, kEqual };

const char* to_string(Quantity q);
const char* to_string(Direction d);

// A named bound. Rank bounds carry an exact integer; exponent bounds carry a
// binary64 value (and an exact rational when the formula is rational in its
// inputs). `value` is empty for purely symbolic records.
struct BoundRecord {
  Quantity quantity = Quantity::kExponent;
  std::string subject;
  Direction direction = Direction::kUpper;
  std::optional<mpz_class> exact;
  std::optional<double> value;
  std::string citation;  // the argument that gives the bound
  std::string trace;     // inputs and formula
  bool verified_construction = false;

  // Exact integers in full, floats with 8 significant digits.
  std::string value_str() const;
  std::string str() const;
};

struct ExponentParams {
  double omega = 2.3728639;
  double alpha = 0.3029805;
  // Throws std::invalid_argument unless 2 <= omega <= 3 and 0 < alpha <= 1.
  void validate() const;
};

// "%.8g".
std::string format_value(double v);

// Rank lower bound max_cut(H).value, plus the exponent form (the number of cut
// edges) when all edge dimensions agree.
std::vector<BoundRecord> flattening_lower(const Hypergraph& h);

// Exact rank of the flattening of graph_tensor(h) that puts `side` on the
// rows. Throws std::length_error when the tensor is too large to build.
mpz_class flattening_rank(const Hypergraph& h, const std::vector<std::size_t>& side);

// For odd k >= 3: the rectangular rank bound 2^k - 2^{k-2} + 2, the border
// rank bound 2^k - 2^{k-2} + 1 and, for k = 3 and k = 5, the recorded
// interval constants.
std::vector<BoundRecord> cycle_rank_lower(std::size_t k);

// Best value of omega_a + omega_b over k = a + b - 1 (a, b odd, taken from
// `table` or built recursively from it).
BoundRecord surgery_exponent_upper(std::size_t k, const std::map<std::size_t, double>& table);

// k - alpha(1 + (1 - alpha)/(k - 1 + alpha)) and the relaxed k - alpha.
std::array<BoundRecord, 2> alpha_exponent_upper(std::size_t k, const ExponentParams& params);

// min over integer q in [2, q_max] of log_q((q+1)^k / 4); the trace names the
// minimizing q.
BoundRecord laser_exponent_upper(std::size_t k, std::size_t q_max = 10000);

struct TableRow {
  std::size_t k = 0;
  BoundRecord lower;
  BoundRecord upper;
  std::string upper_source;  // omega | surgery | alpha | laser
};

// Odd k in [3, k_max]: lower k-1 from flattening, upper the least of the
// surgery, alpha and laser bounds (k = 3 uses omega itself). The surgery
// recursion consumes the table's own earlier rows.
std::vector<TableRow> best_known_table(const ExponentParams& params, std::size_t k_max = 13);

// (10 omega - 6)/3 for the five-cycle, and the k - alpha variant.
std::vector<BoundRecord> covering_distill_c5(const ExponentParams& params);

// omega(delta g1, delta g2, delta g3) = delta omega(g1, g2, g3). When the two
// largest components agree and min/max < alpha the value 2 max delta is
// attached.
BoundRecord scaling_identity_check(const std::array<double, 3>& gamma, double delta, const ExponentParams& params);

// The dome and hypergraph examples. When `check_flattenings` is set the lower
// bounds are cross-checked by exact flattening ranks at n = 2 where feasible.
std::vector<BoundRecord> dome_and_hypergraph_bounds(const ExponentParams& params, bool check_flattenings = true);

// Rank upper bound sum_r count[r] * cost[r] for surgery with per-local-rank
// patch costs. Throws if a rank class has no cost.
BoundRecord surgery_cost_bound(const std::string& subject, const std::map<std::size_t, std::size_t>& profile,
                               const std::map<std::size_t, std::size_t>& cost, Quantity quantity = Quantity::kRank);

// The T_4(C_5) component-cost bounds: rank 36*16 + 12*26 + 49 = 937 and
// border rank 36*16 + 12*24 + 46 = 910, from the recorded constants for
// <4,4,2> and <4,4,4>.
std::vector<BoundRecord> c5_dim4_cost_bounds();

}  // namespace tsurg
