// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "tsurg/bounds.hpp"
#include "tsurg/decomp_io.hpp"
#include "tsurg/decomposition.hpp"
#include "tsurg/hypergraph.hpp"
#include "tsurg/matrix.hpp"
#include "tsurg/patch_library.hpp"
#include "tsurg/surgery.hpp"
#include "tsurg/tensor_ops.hpp"

using namespace tsurg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = cli::run(args, out, err);
  return out.str();
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

void criterion1(Outcome& o) {
  int code = 0;
  const std::string out = cli({"decomp", "strassen", "--verify"}, code);
  o.check(code == 0, "exit code");
  o.check(out.find("terms 7\n") != std::string::npos, "7 terms");
  o.check(out.find("7 terms, VERIFIED against T_2(C_3)") != std::string::npos, "verified");
  o.check(out.find("local ranks leg 1 split 2x2: {1:6, 2:1}") != std::string::npos, "profile");
  const Decomposition s = strassen();
  o.check(verify(s, graph_tensor(cycle(3))).equal, "library verify");
  o.detail << "7 terms, exact, profile " << local_rank_profile(s, 1, 2, 2).str();
}

void criterion2(Outcome& o) {
  int code = 0;
  const std::string out = cli({"surgery", "odd-cycle", "--k", "5", "--verify"}, code);
  o.check(code == 0, "exit code");
  o.check(out.find("31 terms, VERIFIED against T_2(C_5)") != std::string::npos, "31 verified");
  const Decomposition d = odd_cycle_decomposition(5);
  const std::string p = local_rank_profile(d, 1, 2, 2).str();
  o.check(d.size() == 31 && verify(d, graph_tensor(cycle(5))).equal, "library verify");
  o.check(p == "{1:30, 2:1}", "profile");
  o.detail << d.size() << " terms, verified, profile " << p;
}

void criterion3(Outcome& o) {
  for (std::size_t k : {7, 9}) {
    const Decomposition d = odd_cycle_decomposition(k);
    const SparseTensor t = graph_tensor(cycle(k));
    o.check(d.size() == (std::size_t{1} << k) - 1, "term count k=" + std::to_string(k));
    o.check(verify(d, t).equal, "verify k=" + std::to_string(k));
    o.detail << "k=" << k << ": " << d.size() << " terms verified (target nnz " << t.nnz() << "); ";
  }
}

void criterion4(Outcome& o) {
  for (std::size_t k : {3, 5, 7}) {
    const Hypergraph h = cycle(k);
    const CutResult c = max_cut(h);
    const std::size_t r = matrix_rank(flatten(graph_tensor(h), c.side));
    o.check(c.cut_edges.size() == k - 1, "max cut k=" + std::to_string(k));
    o.check(r == (std::size_t{1} << (k - 1)), "rank k=" + std::to_string(k));
    o.detail << "k=" << k << ": f=" << c.cut_edges.size() << " rank=" << r << "; ";
  }
}

std::optional<std::string> patch442_path() {
  if (const char* env = std::getenv("TSURG_PATCH442")) return std::string(env);
  const std::filesystem::path p = std::filesystem::path(TSURG_TEST_DATA_DIR) / "patch_442.json";
  if (std::filesystem::exists(p)) return p.string();
  return std::nullopt;
}

void criterion5(Outcome& o) {
  PatchLibrary lib = PatchLibrary::with_defaults();
  const Decomposition d = c5_dim4_decomposition(lib);
  o.check(d.size() == 961, "961 terms");
  o.check(verify(d, graph_tensor(cycle(5, 4))).equal, "961 verified");
  const auto costs = c5_dim4_cost_bounds();
  o.check(costs[0].exact && *costs[0].exact == 937, "cost report 937");
  o.detail << "default patches: " << d.size() << " terms verified; cost report " << costs[0].value_str() << " ("
           << costs[0].trace << "); ";
  if (const auto path = patch442_path()) {
    DecompFile f = read_decomposition_file(*path);
    const Weights w = f.cycle_weights.value_or(Weights{4, 4, 2});
    PatchLibrary with = PatchLibrary::with_defaults();
    o.check(f.decomposition.size() == 26, "patch has 26 terms");
    o.check(with.add(w, std::move(f.decomposition)), "patch verifies");
    const Decomposition e = c5_dim4_decomposition(with);
    o.check(e.size() == 937, "937 terms");
    o.detail << "with supplied 26-term patch: " << e.size() << " terms verified";
  } else {
    o.detail << "no 26-term <4,4,2> file supplied, explicit 937 construction not exercised";
  }
}

void criterion6(Outcome& o) {
  const auto rows = best_known_table({2.3728639, 0.3029805}, 13);
  const double want[] = {4.6031719, 6.6511249, 8.6715848, 10.676522, 12.679854};
  o.check(rows.size() == 6, "row count");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    o.check(near(*rows[i].upper.value, want[i - 1], 1e-5), "upper k=" + std::to_string(rows[i].k));
    o.check(*rows[i].lower.exact == rows[i].k - 1, "lower k=" + std::to_string(rows[i].k));
    o.detail << "k=" << rows[i].k << " " << rows[i].lower.value_str() << " " << rows[i].upper.value_str() << " ("
             << rows[i].upper_source << "); ";
  }
  o.check(rows[1].upper_source == "laser" && rows[2].upper_source == "laser", "laser rows");
}

void criterion7(Outcome& o) {
  const double v = *covering_distill_c5({2.3728639, 0.3029805})[0].value;
  o.check(near(v, 5.9095463, 1e-6), "value");
  o.check(near(v, 5.90955, 1e-5) && v <= 5.90955, "published bound");
  o.detail << "(10 omega - 6)/3 = " << format_value(v);
}

void criterion8(Outcome& o) {
  const auto rs = dome_and_hypergraph_bounds({}, true);
  auto get = [&](const std::string& s, Direction d) -> const BoundRecord* {
    for (const auto& r : rs) {
      if (r.subject == s && r.direction == d) return &r;
    }
    return nullptr;
  };
  const BoundRecord* a = get("T(dome_{1,1})", Direction::kLower);
  const BoundRecord* b = get("T(dome_{1,1})", Direction::kUpper);
  const BoundRecord* c = get("T(dome_{1,4})", Direction::kLower);
  const BoundRecord* d = get("T(dome_{1,4})", Direction::kUpper);
  const BoundRecord* e = get("T(apex insertion graph)", Direction::kLower);
  const BoundRecord* f = get("T(apex insertion graph)", Direction::kUpper);
  const BoundRecord* g = get("T(double dome)", Direction::kLower);
  if (!(a && b && c && d && e && f && g)) {
    o.check(false, "missing records");
    return;
  }
  o.check(*a->exact == 3 && a->trace.find("rank at n = 2 is 8 ") != std::string::npos, "dome_{1,1} lower");
  o.check(near(*b->value, 3 * 2.3728639 / 2, 1e-9), "dome_{1,1} upper");
  o.check(*c->exact == 12 && c->trace.find("4096 = 2^12") != std::string::npos, "dome_{1,4} lower");
  o.check(d->value && *d->value == 12.0, "dome_{1,4} upper");
  o.check(*e->exact == 32 && f->value && *f->value == 32.0, "apex insertion 32");
  o.check(*g->exact == 6 && g->trace.find("64 = 2^6") != std::string::npos, "double dome lower");
  o.detail << "dome_{1,1} [3, " << b->value_str() << "], dome_{1,4} = 12, apex insertion = 32, double dome >= 6";
}

void criterion9(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> small(1, 3);
  std::uniform_int_distribution<std::size_t> order_d(1, 4);
  std::uniform_int_distribution<std::size_t> plen(0, 3);
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  std::size_t passed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t order = order_d(rng);
    std::vector<Leg> legs;
    for (std::size_t l = 0; l < order; ++l) {
      const std::size_t a = small(rng);
      const std::size_t b = small(rng);
      legs.push_back(Leg{a * b, {a, b}});
    }
    Decomposition d;
    d.signature = LegSignature(legs);
    const std::size_t terms = 1 + small(rng);
    for (std::size_t t = 0; t < terms; ++t) {
      Term term;
      for (const Leg& l : legs) {
        Vector v(l.dim);
        do {
          for (auto& x : v) x = Rational(num(rng), den(rng));
        } while (is_zero_vector(v));
        term.push_back(v);
      }
      d.terms.push_back(term);
    }
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, order - 1)(rng);
    std::vector<std::size_t> path(plen(rng));
    for (auto& m : path) m = small(rng);
    const SurgeryPlan plan{j, legs[j].split[0], legs[j].split[1], path};
    PatchLibrary lib = PatchLibrary::with_defaults();
    const Decomposition out = split_and_insert(d, plan, lib);
    if (reconstruct(out) == surgery_map(reconstruct(d), plan)) ++passed;
  }
  o.check(passed == 100, "all trials");
  o.detail << passed << "/100 random decompositions satisfy the surgery identity";
}

void criterion10(Outcome& o) {
  for (std::size_t k : {3, 5, 7, 9}) {
    const Decomposition d = odd_cycle_decomposition(k);
    o.check(d.verified, "verified k=" + std::to_string(k));
    std::size_t min_sum = SIZE_MAX;
    for (std::size_t leg = 0; leg < k; ++leg) min_sum = std::min(min_sum, local_rank_profile(d, leg, 2, 2).rank_sum());
    o.check(min_sum >= (std::size_t{1} << k), "sum k=" + std::to_string(k));
    o.detail << "k=" << k << ": min sum " << min_sum << " >= " << (std::size_t{1} << k) << "; ";
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> fn;
  };
  const std::vector<Criterion> all{
      {1, "seven-term base decomposition", 1, criterion1},
      {2, "C_5 surgery", 1, criterion2},
      {3, "odd cycles k=7, 9", 60, criterion3},
      {4, "flattening chain", 30, criterion4},
      {5, "T_4(C_5)", 120, criterion5},
      {6, "exponent table", 1, criterion6},
      {7, "covering and distillation", 1, criterion7},
      {8, "dome and hypergraph bounds", 60, criterion8},
      {9, "surgery soundness property", 60, criterion9},
      {10, "local-rank-sum inequality", 60, criterion10},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs < c.limit_s, "time limit");
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.detail.str()
              << " (" << format_value(secs) << " s)" << std::endl;
  }
  return all_pass ? 0 : 1;
}
