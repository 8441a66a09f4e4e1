#include "tsurg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tsurg/matrix.hpp"
#include "tsurg/tensor_ops.hpp"

namespace tsurg {

namespace {

void require_odd(std::size_t k, const char* what) {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument(std::string(what) + ": k must be odd and >= 3");
}

BoundRecord exponent(const std::string& subject, Direction dir, double v, std::string citation, std::string trace) {
  BoundRecord r;
  r.quantity = Quantity::kExponent;
  r.subject = subject;
  r.direction = dir;
  r.value = v;
  r.citation = std::move(citation);
  r.trace = std::move(trace);
  return r;
}

BoundRecord integer(Quantity q, const std::string& subject, Direction dir, const mpz_class& v, std::string citation,
                    std::string trace) {
  BoundRecord r;
  r.quantity = q;
  r.subject = subject;
  r.direction = dir;
  r.exact = v;
  r.value = v.get_d();
  r.citation = std::move(citation);
  r.trace = std::move(trace);
  return r;
}

std::string cycle_name(std::size_t k) { return "T(C_" + std::to_string(k) + ")"; }

mpz_class pow2(std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::string side_str(const std::vector<std::size_t>& side) {
  std::string s = "{";
  for (std::size_t i = 0; i < side.size(); ++i) s += (i ? "," : "") + std::to_string(side[i]);
  return s + "}";
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::kRank:
      return "rank";
    case Quantity::kBorderRank:
      return "border-rank";
    case Quantity::kExponent:
      return "exponent";
  }
  return "?";
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kLower:
      return "lower";
    case Direction::kUpper:
      return "upper";
    case Direction::kEqual:
      return "equal";
  }
  return "?";
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

std::string BoundRecord::value_str() const {
  if (exact) return exact->get_str();
  if (value) return format_value(*value);
  return "(symbolic)";
}

std::string BoundRecord::str() const {
  std::ostringstream os;
  os << subject << " " << to_string(quantity) << " " << to_string(direction) << " " << value_str() << "  ["
     << citation << (verified_construction ? ", verified construction" : "") << "]";
  if (!trace.empty()) os << "  " << trace;
  return os.str();
}

void ExponentParams::validate() const {
  if (!(omega >= 2.0 && omega <= 3.0)) throw std::invalid_argument("omega must lie in [2, 3]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

mpz_class flattening_rank(const Hypergraph& h, const std::vector<std::size_t>& side) {
  mpz_class nnz = 1;
  for (const auto& e : h.edges()) nnz *= static_cast<unsigned long>(e.dim);
  if (nnz > (1ul << 22)) throw std::length_error("flattening_rank: graph tensor has too many entries");
  const SparseTensor t = graph_tensor(h);
  return static_cast<unsigned long>(matrix_rank(flatten(t, side)));
}

std::vector<BoundRecord> flattening_lower(const Hypergraph& h) {
  const CutResult cut = max_cut(h);
  std::vector<BoundRecord> out;
  const std::string subject = "T(" + h.describe() + ")";
  const std::string trace = "max cut " + side_str(cut.side) + " | " + side_str(cut.other) + " straddled by " +
                            std::to_string(cut.cut_edges.size()) + " edges";
  out.push_back(integer(Quantity::kRank, subject, Direction::kLower, cut.value, "flattening (max cut)", trace));
  if (h.uniform_dim() && !h.edges().empty() && h.edges().front().dim > 1) {
    out.push_back(exponent(subject, Direction::kLower, static_cast<double>(cut.cut_edges.size()), "flattening (max cut)",
                           "f(G) = " + std::to_string(cut.cut_edges.size())));
    out.back().exact = static_cast<unsigned long>(cut.cut_edges.size());
  }
  return out;
}

std::vector<BoundRecord> cycle_rank_lower(std::size_t k) {
  require_odd(k, "cycle_rank_lower");
  const std::string subject = cycle_name(k);
  const mpz_class base = pow2(k) - pow2(k - 2);
  std::vector<BoundRecord> out;
  out.push_back(integer(Quantity::kRank, subject, Direction::kLower, base + 2, "rectangular matrix product rank bound",
                        "2^k - 2^(k-2) + 2 with k = " + std::to_string(k)));
  out.push_back(integer(Quantity::kBorderRank, subject, Direction::kLower, base + 1, "Young flattening formula",
                        "2^k - 2^(k-2) + 1 with k = " + std::to_string(k)));
  if (k == 3) {
    out.push_back(integer(Quantity::kRank, subject, Direction::kEqual, 7, "recorded constant", "rank is exactly 7"));
    out.push_back(integer(Quantity::kBorderRank, subject, Direction::kLower, 7, "recorded constant", ""));
  } else if (k == 5) {
    out.push_back(integer(Quantity::kRank, subject, Direction::kLower, 25, "recorded constant",
                          "interval as recorded; the rank formula above gives 26"));
    out.push_back(integer(Quantity::kBorderRank, subject, Direction::kLower, 24, "recorded constant",
                          "interval as recorded; the border formula above gives 25"));
    out.push_back(integer(Quantity::kRank, subject, Direction::kUpper, 31, "recorded constant", ""));
    out.push_back(integer(Quantity::kBorderRank, subject, Direction::kUpper, 31, "recorded constant", ""));
  }
  return out;
}

BoundRecord surgery_exponent_upper(std::size_t k, const std::map<std::size_t, double>& table) {
  require_odd(k, "surgery_exponent_upper");
  if (!table.count(3)) throw std::invalid_argument("surgery_exponent_upper: table needs an entry for k = 3");
  std::map<std::size_t, double> best;
  std::map<std::size_t, std::string> how;
  for (std::size_t m = 3; m <= k; m += 2) {
    double v = std::numeric_limits<double>::infinity();
    if (auto it = table.find(m); it != table.end()) {
      v = it->second;
      how[m] = "w" + std::to_string(m);
    }
    for (std::size_t a = 3; a + 2 <= m; a += 2) {
      const std::size_t b = m + 1 - a;
      if (b < 3 || b > a) continue;
      const double c = best[a] + best[b];
      if (c < v) {
        v = c;
        how[m] = "(" + how[a] + " + " + how[b] + ")";
      }
    }
    best[m] = v;
  }
  std::ostringstream trace;
  trace << "w" << k << " <= " << how[k] << " using w_{a+b-1} <= w_a + w_b; table {";
  bool first = true;
  for (const auto& [m, v] : table) {
    trace << (first ? "" : ", ") << m << ": " << format_value(v);
    first = false;
  }
  trace << "}";
  return exponent(cycle_name(k), Direction::kUpper, best[k], "cycle surgery", trace.str());
}

std::array<BoundRecord, 2> alpha_exponent_upper(std::size_t k, const ExponentParams& params) {
  require_odd(k, "alpha_exponent_upper");
  params.validate();
  const double a = params.alpha;
  const double kk = static_cast<double>(k);
  const double tight = kk - a * (1.0 + (1.0 - a) / (kk - 1.0 + a));
  const std::string in = "k = " + std::to_string(k) + ", alpha = " + format_value(a);
  return {exponent(cycle_name(k), Direction::kUpper, tight, "alpha bound", "k - alpha(1 + (1-alpha)/(k-1+alpha)), " + in),
          exponent(cycle_name(k), Direction::kUpper, kk - a, "alpha bound (relaxed)", "k - alpha, " + in)};
}

BoundRecord laser_exponent_upper(std::size_t k, std::size_t q_max) {
  require_odd(k, "laser_exponent_upper");
  if (q_max < 2) throw std::invalid_argument("laser_exponent_upper: q_max must be >= 2");
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 2;
  for (std::size_t q = 2; q <= q_max; ++q) {
    const double v = (static_cast<double>(k) * std::log(static_cast<double>(q + 1)) - std::log(4.0)) /
                     std::log(static_cast<double>(q));
    if (v < best) {
      best = v;
      arg = q;
    }
  }
  return exponent(cycle_name(k), Direction::kUpper, best, "laser method",
                  "min over q in [2, " + std::to_string(q_max) + "] of log_q((q+1)^k / 4), attained at q = " +
                      std::to_string(arg));
}

std::vector<TableRow> best_known_table(const ExponentParams& params, std::size_t k_max) {
  params.validate();
  std::vector<TableRow> rows;
  std::map<std::size_t, double> known;
  for (std::size_t k = 3; k <= k_max; k += 2) {
    TableRow row;
    row.k = k;
    row.lower = integer(Quantity::kExponent, cycle_name(k), Direction::kLower, static_cast<unsigned long>(k - 1),
                        "flattening (max cut)", "k - 1");
    if (k == 3) {
      row.upper = exponent(cycle_name(3), Direction::kUpper, params.omega, "matrix multiplication exponent",
                           "T(C_3) is <2,2,2>, so w3 = omega");
      row.upper_source = "omega";
    } else {
      std::vector<std::pair<BoundRecord, std::string>> c;
      c.emplace_back(surgery_exponent_upper(k, known), "surgery");
      c.emplace_back(alpha_exponent_upper(k, params)[0], "alpha");
      c.emplace_back(laser_exponent_upper(k), "laser");
      std::size_t pick = 0;
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (*c[i].first.value < *c[pick].first.value) pick = i;
      }
      row.upper = c[pick].first;
      row.upper_source = c[pick].second;
    }
    known[k] = *row.upper.value;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BoundRecord> covering_distill_c5(const ExponentParams& params) {
  params.validate();
  const double w = params.omega;
  std::vector<BoundRecord> out;
  out.push_back(exponent(cycle_name(5), Direction::kUpper, (10.0 * w - 6.0) / 3.0, "covering and distillation",
                         "(10 omega - 2*3)/3 with omega = " + format_value(w) + " and distillation rate 2"));
  out.push_back(exponent(cycle_name(5), Direction::kUpper, 5.0 - params.alpha, "covering and distillation (k - alpha)",
                         "k - alpha with k = 5, alpha = " + format_value(params.alpha)));
  return out;
}

BoundRecord scaling_identity_check(const std::array<double, 3>& gamma, double delta, const ExponentParams& params) {
  params.validate();
  for (const double g : gamma) {
    if (!(g >= 0)) throw std::invalid_argument("scaling_identity_check: components must be >= 0");
  }
  if (!(delta > 0)) throw std::invalid_argument("scaling_identity_check: delta must be > 0");
  std::array<double, 3> s = gamma;
  std::sort(s.begin(), s.end());
  std::ostringstream subject;
  subject << "omega(" << format_value(delta * gamma[0]) << "," << format_value(delta * gamma[1]) << ","
          << format_value(delta * gamma[2]) << ")";
  std::ostringstream trace;
  trace << "= " << format_value(delta) << " * omega(" << format_value(gamma[0]) << "," << format_value(gamma[1]) << ","
        << format_value(gamma[2]) << ")";
  BoundRecord r;
  r.quantity = Quantity::kExponent;
  r.subject = subject.str();
  r.direction = Direction::kEqual;
  r.citation = "scaling identity";
  if (s[2] > 0 && s[1] == s[2] && s[0] / s[2] < params.alpha) {
    r.value = 2.0 * s[2] * delta;
    trace << " = " << format_value(s[2] * delta) << " * omega(" << format_value(s[0] / s[2]) << ",1,1) = "
          << format_value(s[2] * delta) << " * 2, since " << format_value(s[0] / s[2]) << " < alpha = "
          << format_value(params.alpha);
  } else {
    trace << " (no closed value: needs two equal largest components and min/max < alpha)";
  }
  r.trace = trace.str();
  return r;
}

std::vector<BoundRecord> dome_and_hypergraph_bounds(const ExponentParams& params, bool check_flattenings) {
  params.validate();
  const double w = params.omega;
  std::vector<BoundRecord> out;
  auto lower_from_cut = [&](const std::string& subject, const Hypergraph& h, bool rank_feasible) {
    const CutResult cut = max_cut(h);
    const std::size_t f = cut.cut_edges.size();
    std::string trace = "grouping " + side_str(cut.side) + " | " + side_str(cut.other) + " cuts " + std::to_string(f) +
                        " of " + std::to_string(h.edges().size()) + " edges";
    if (check_flattenings && rank_feasible) {
      const mpz_class rank = flattening_rank(h, cut.side);
      trace += "; flattening rank at n = 2 is " + rank.get_str() + (rank == cut.value ? " = 2^" : " != 2^") +
               std::to_string(f);
    }
    BoundRecord r = integer(Quantity::kExponent, subject, Direction::kLower, static_cast<unsigned long>(f),
                            "flattening (max cut)", trace);
    return r;
  };

  const Hypergraph d11 = dome(1, 1, 2, 2);
  out.push_back(lower_from_cut("T(dome_{1,1})", d11, true));
  out.push_back(exponent("T(dome_{1,1})", Direction::kUpper, 3.0 * w / 2.0, "dome surgery",
                         "3 omega / 2 with omega = " + format_value(w) +
                             "; the alternative value 3 omega = " + format_value(3.0 * w) + " is not used"));

  const Hypergraph d14 = dome(1, 4, 2, 2);
  out.push_back(lower_from_cut("T(dome_{1,4})", d14, true));
  const BoundRecord scale = scaling_identity_check({1, 4, 4}, 1, params);
  if (params.alpha > 0.25 && scale.value) {
    out.push_back(exponent("T(dome_{1,4})", Direction::kUpper, 12.0, "dome surgery (needs alpha > 1/4)",
                           "squared dome at exponent 24 via " + scale.subject + " = " + format_value(*scale.value)));
  } else {
    BoundRecord r;
    r.subject = "T(dome_{1,4})";
    r.citation = "dome surgery (needs alpha > 1/4)";
    r.trace = "not applicable: alpha = " + format_value(params.alpha) + " <= 1/4";
    out.push_back(r);
  }

  const Hypergraph g = apex_insertion_graph(2);
  out.push_back(lower_from_cut("T(apex insertion graph)", g, false));
  if (params.alpha > 0.25) {
    out.push_back(exponent("T(apex insertion graph)", Direction::kUpper, 4.0 * 2.0 + 2.0 * 12.0,
                           "apex insertion (needs alpha > 1/4)", "4 omega(1/4,1,1) + 2 * 12 = 4*2 + 2*12"));
  }

  const Hypergraph h = double_dome(2);
  out.push_back(lower_from_cut("T(double dome)", h, true));
  out.push_back(exponent("T(double dome)", Direction::kUpper, 6.0 * w / 2.0, "double dome",
                         "2 * (3 omega / 2) with omega = " + format_value(w)));
  return out;
}

BoundRecord surgery_cost_bound(const std::string& subject, const std::map<std::size_t, std::size_t>& profile,
                               const std::map<std::size_t, std::size_t>& cost, Quantity quantity) {
  mpz_class total = 0;
  std::ostringstream trace;
  bool first = true;
  for (const auto& [r, n] : profile) {
    auto it = cost.find(r);
    if (it == cost.end()) throw std::invalid_argument("surgery_cost_bound: no cost for local rank " + std::to_string(r));
    total += mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(it->second);
    trace << (first ? "" : " + ") << n << "*" << it->second;
    first = false;
  }
  trace << " = " << total.get_str();
  return integer(quantity, subject, Direction::kUpper, total, "surgery with per-local-rank patch costs", trace.str());
}

std::vector<BoundRecord> c5_dim4_cost_bounds() {
  const std::map<std::size_t, std::size_t> profile{{1, 36}, {2, 12}, {4, 1}};
  return {surgery_cost_bound("T_4(C_5)", profile, {{1, 16}, {2, 26}, {4, 49}}, Quantity::kRank),
          surgery_cost_bound("T_4(C_5)", profile, {{1, 16}, {2, 24}, {4, 46}}, Quantity::kBorderRank)};
}

}  // namespace tsurg
