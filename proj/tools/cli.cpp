#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tsurg/bounds.hpp"
#include "tsurg/decomp_io.hpp"
#include "tsurg/decomposition.hpp"
#include "tsurg/hypergraph.hpp"
#include "tsurg/patch_library.hpp"
#include "tsurg/surgery.hpp"
#include "tsurg/tensor_ops.hpp"

namespace tsurg::cli {

namespace {

// A verification that the user asked for did not hold.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_sizes(const std::string& s, const std::string& flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError(flag + ": expected comma-separated non-negative integers, got '" + s + "'");
    }
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

std::string tuple(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string target_name(const std::string& spec, std::size_t n) {
  if (spec.rfind("cycle:", 0) == 0) return "T_" + std::to_string(n) + "(C_" + spec.substr(6) + ")";
  if (spec.rfind("wcycle:", 0) == 0) return "T(wcycle " + spec.substr(7) + ")";
  if (spec.rfind("triangle:", 0) == 0) return "<" + spec.substr(9) + ">";
  return "T_" + std::to_string(n) + "(" + spec + ")";
}

struct Source {
  Decomposition decomposition;
  std::optional<Weights> cycle_weights;
  std::optional<std::string> graph;  // builder spec of the target, when known
  std::size_t n = 2;
};

// "strassen", "odd-cycle:K", "trivial:GRAPH" or a decomposition file.
Source load_source(const std::string& src, std::size_t n) {
  Source s;
  s.n = n;
  if (src == "strassen") {
    s.decomposition = strassen();
    s.cycle_weights = Weights{2, 2, 2};
    s.graph = "cycle:3";
    s.n = 2;
  } else if (src.rfind("odd-cycle:", 0) == 0) {
    const auto k = parse_sizes(src.substr(10), "odd-cycle");
    if (k.size() != 1) throw UsageError("odd-cycle:K takes one integer");
    s.decomposition = odd_cycle_decomposition(k[0]);
    s.graph = "cycle:" + std::to_string(k[0]);
    s.n = 2;
  } else if (src.rfind("trivial:", 0) == 0) {
    s.decomposition = trivial_decomposition(load_hypergraph(src.substr(8), n));
    s.graph = src.substr(8);
  } else {
    DecompFile f = read_decomposition_file(src);
    s.decomposition = std::move(f.decomposition);
    s.cycle_weights = f.cycle_weights;
  }
  return s;
}

// Target tensor for a source: explicit graph flag first, then what the source
// itself knows.
std::optional<std::pair<SparseTensor, std::string>> target_of(const Source& s, const std::string& graph, std::size_t n) {
  if (!graph.empty()) return std::make_pair(graph_tensor(load_hypergraph(graph, n)), target_name(graph, n));
  if (s.graph) return std::make_pair(graph_tensor(load_hypergraph(*s.graph, s.n)), target_name(*s.graph, s.n));
  if (s.cycle_weights) {
    return std::make_pair(graph_tensor(weighted_cycle(*s.cycle_weights)), "T(wcycle " + tuple(*s.cycle_weights) + ")");
  }
  return std::nullopt;
}

void report_verify(std::ostream& out, const Decomposition& d, const SparseTensor& t, const std::string& name) {
  const VerifyReport r = verify(d, t);
  if (r.equal) {
    out << r.term_count << " terms, VERIFIED against " << name << "\n";
    return;
  }
  std::ostringstream msg;
  msg << "NOT VERIFIED against " << name << ": " << r.str();
  out << msg.str() << "\n";
  throw VerificationFailure(msg.str());
}

void write_out(const std::string& path, const Decomposition& d, const std::optional<Weights>& w, std::ostream& out) {
  if (path.empty()) return;
  write_decomposition_file(path, d, w);
  out << "wrote " << path << "\n";
}

void print_profiles(std::ostream& out, const Decomposition& d) {
  for (std::size_t l = 0; l < d.signature.order(); ++l) {
    const Leg& leg = d.signature.leg(l);
    if (leg.split.size() != 2) continue;
    out << "local ranks leg " << l << " split " << leg.split[0] << "x" << leg.split[1] << ": "
        << local_rank_profile(d, l, leg.split[0], leg.split[1]).str() << "\n";
  }
}

void summarize(std::ostream& out, const Decomposition& d) {
  out << "legs " << d.signature.str() << "\n";
  out << "terms " << d.size() << "\n";
  out << "provenance " << d.provenance << "\n";
}

RationalMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  if (!j.is_array() || j.empty()) throw FormatError(path + ": expected a nonempty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j[0].size()) throw FormatError(path + ": rows must be arrays of equal length");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<long>()));
    rows.push_back(std::move(r));
  }
  return RationalMatrix::from_dense(rows);
}

void register_patches(PatchLibrary& lib, const std::vector<std::string>& files, bool pinned, std::ostream& out) {
  for (const auto& path : files) {
    DecompFile f = read_decomposition_file(path);
    if (!f.cycle_weights) throw FormatError(path + ": a patch file needs a \"cycle_weights\" field");
    const std::size_t size = f.decomposition.size();
    if (!lib.add(*f.cycle_weights, std::move(f.decomposition), pinned)) {
      throw VerificationFailure("patch " + path + " does not verify against T(wcycle " + tuple(*f.cycle_weights) + ")");
    }
    out << "patch " << tuple(*f.cycle_weights) << ": " << size << " terms, verified" << (pinned ? ", pinned" : "")
        << " (" << path << ")\n";
  }
}

void print_table(std::ostream& out, const std::vector<TableRow>& rows, const std::string& format) {
  if (format == "csv") {
    out << "k,lower,upper,upper_source,citation\n";
    for (const auto& r : rows) {
      out << r.k << "," << r.lower.value_str() << "," << r.upper.value_str() << "," << r.upper_source << ",\""
          << r.upper.citation << "\"\n";
    }
    return;
  }
  out << "k   lower  upper       source   argument\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-3zu %-6s %-11s %-8s %s\n", r.k, r.lower.value_str().c_str(),
                  r.upper.value_str().c_str(), r.upper_source.c_str(), r.upper.citation.c_str());
    out << line;
  }
}

void print_records(std::ostream& out, const std::vector<BoundRecord>& records) {
  for (const auto& r : records) out << r.str() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact graph tensors, rank decompositions and tensor surgery", "tsurg"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::function<void()> fn) { sub->callback([&action, fn] { action = fn; }); };

  // Shared flag storage.
  std::string graph;
  std::size_t n = 2;
  std::string out_path;
  std::string input;
  std::string rows_flag;
  bool entries = false;
  bool do_verify = false;
  bool seed_check = false;
  std::string target_graph;
  std::size_t leg = 0;
  std::string split_flag;
  std::string path_flag;
  std::vector<std::string> patches;
  std::vector<std::string> pins;
  std::string patch442;
  std::size_t k = 5;
  std::string a_src;
  std::string b_src;
  std::string layout = "interleaved";
  std::size_t rotate_by = 0;
  bool reflect_flag = false;
  std::vector<std::string> maps;
  ExponentParams params;
  std::size_t kmax = 13;
  std::string format = "text";
  bool no_check = false;
  std::string gamma_flag = "1,4,4";
  double delta = 1.0;

  auto add_n = [&](CLI::App* s) { s->add_option("--n", n, "Default edge dimension")->check(CLI::PositiveNumber); };
  auto add_params = [&](CLI::App* s) {
    s->add_option("--omega", params.omega, "Matrix multiplication exponent");
    s->add_option("--alpha", params.alpha, "Dual exponent");
  };

  // tensor
  auto* tensor = app.add_subcommand("tensor", "Graph tensors");
  tensor->require_subcommand(1);
  auto* t_build = tensor->add_subcommand("build", "Build T_n(H) and print its shape");
  t_build->add_option("--graph", graph, "Builder spec or hypergraph file")->required();
  add_n(t_build);
  t_build->add_flag("--entries", entries, "Print every entry");
  bind(t_build, [&] {
    const Hypergraph h = load_hypergraph(graph, n);
    const SparseTensor t = graph_tensor(h);
    out << "graph " << h.describe() << "\n";
    out << "legs " << t.signature().str() << "\n";
    out << "nnz " << t.nnz() << "\n";
    if (entries) {
      for (const auto& e : t.entries()) {
        const MultiIndex idx = t.index_of(e);
        out << tuple(idx) << " " << e.second << "\n";
      }
    }
  });
  auto* t_flat = tensor->add_subcommand("flatten", "Rank of a flattening (default: along a max cut)");
  t_flat->add_option("--graph", graph, "Builder spec or hypergraph file")->required();
  add_n(t_flat);
  t_flat->add_option("--rows", rows_flag, "Comma-separated legs on the row side");
  bind(t_flat, [&] {
    const Hypergraph h = load_hypergraph(graph, n);
    std::vector<std::size_t> side;
    if (rows_flag.empty()) {
      side = max_cut(h).side;
    } else {
      side = parse_sizes(rows_flag, "--rows");
    }
    const RationalMatrix m = flatten(graph_tensor(h), side);
    out << "rows " << tuple(side) << "\n";
    out << "matrix " << m.rows() << "x" << m.cols() << "\n";
    out << "rank " << matrix_rank(m) << "\n";
  });

  // decomp
  auto* decomp = app.add_subcommand("decomp", "Rank decompositions");
  decomp->require_subcommand(1);
  auto* d_str = decomp->add_subcommand("strassen", "The seven-term decomposition of T_2(C_3)");
  d_str->add_option("--out", out_path, "Write the decomposition to a file");
  d_str->add_flag("--verify", do_verify, "Verify against T_2(C_3)");
  bind(d_str, [&] {
    Decomposition d = strassen();
    summarize(out, d);
    print_profiles(out, d);
    if (do_verify) {
      report_verify(out, d, graph_tensor(cycle(3)), "T_2(C_3)");
      d.verified = true;
    }
    write_out(out_path, d, Weights{2, 2, 2}, out);
  });
  auto* d_triv = decomp->add_subcommand("trivial", "One basis term per edge-index tuple");
  d_triv->add_option("--graph", graph, "Builder spec or hypergraph file")->required();
  add_n(d_triv);
  d_triv->add_option("--out", out_path, "Write the decomposition to a file");
  d_triv->add_flag("--verify", do_verify, "Verify against T_n(H)");
  bind(d_triv, [&] {
    const Hypergraph h = load_hypergraph(graph, n);
    Decomposition d = trivial_decomposition(h);
    summarize(out, d);
    if (do_verify) {
      report_verify(out, d, graph_tensor(h), target_name(graph, n));
      d.verified = true;
    }
    write_out(out_path, d, std::nullopt, out);
  });
  auto* d_ver = decomp->add_subcommand("verify", "Verify a decomposition against a graph tensor");
  d_ver->add_option("--file", input, "Decomposition source")->required();
  d_ver->add_option("--graph", target_graph, "Target graph (default: the file's cycle_weights)");
  add_n(d_ver);
  bind(d_ver, [&] {
    const Source s = load_source(input, n);
    const auto target = target_of(s, target_graph, n);
    if (!target) throw UsageError("decomp verify: no target; pass --graph");
    report_verify(out, s.decomposition, target->first, target->second);
  });
  auto* d_exp = decomp->add_subcommand("export", "Write a decomposition in canonical form");
  d_exp->add_option("--input", input, "strassen | odd-cycle:K | trivial:GRAPH | file")->required();
  add_n(d_exp);
  d_exp->add_option("--out", out_path, "Output file (default: standard output)");
  bind(d_exp, [&] {
    Source s = load_source(input, n);
    if (s.graph) {
      s.decomposition.verified = verify(s.decomposition, graph_tensor(load_hypergraph(*s.graph, s.n))).equal;
    }
    if (out_path.empty()) {
      out << export_decomposition(s.decomposition, s.cycle_weights);
    } else {
      write_out(out_path, s.decomposition, s.cycle_weights, out);
    }
  });
  auto* d_imp = decomp->add_subcommand("import", "Read and validate a decomposition file");
  d_imp->add_option("--file", input, "Decomposition file")->required();
  bind(d_imp, [&] {
    const DecompFile f = read_decomposition_file(input);
    summarize(out, f.decomposition);
    if (f.cycle_weights) out << "cycle_weights " << tuple(*f.cycle_weights) << "\n";
    out << "status unverified (imported" << (f.claimed_verified ? "; file claims verified" : "") << ")\n";
  });
  auto* d_prod = decomp->add_subcommand("product", "Term-pair Kronecker product of two decompositions");
  d_prod->add_option("--a", a_src, "First source")->required();
  d_prod->add_option("--b", b_src, "Second source")->required();
  add_n(d_prod);
  d_prod->add_option("--layout", layout, "interleaved | plain")->check(CLI::IsMember({"interleaved", "plain"}));
  d_prod->add_option("--out", out_path, "Write the product to a file");
  d_prod->add_flag("--verify", do_verify, "Verify against the product of the reconstructions");
  bind(d_prod, [&] {
    const Source a = load_source(a_src, n);
    const Source b = load_source(b_src, n);
    const KroneckerLayout lay = layout == "plain" ? KroneckerLayout::kPlain : KroneckerLayout::kInterleaved;
    Decomposition d = decomp_product(a.decomposition, b.decomposition, lay);
    summarize(out, d);
    print_profiles(out, d);
    std::optional<Weights> w;
    if (a.cycle_weights && b.cycle_weights && a.cycle_weights->size() == b.cycle_weights->size() &&
        lay == KroneckerLayout::kInterleaved) {
      w = Weights(a.cycle_weights->size());
      for (std::size_t i = 0; i < w->size(); ++i) (*w)[i] = (*a.cycle_weights)[i] * (*b.cycle_weights)[i];
    }
    if (do_verify) {
      const SparseTensor t = pairwise_product(reconstruct(a.decomposition), reconstruct(b.decomposition), lay);
      report_verify(out, d, t, "the product of the factor tensors");
    }
    write_out(out_path, d, w, out);
  });
  auto* d_tr = decomp->add_subcommand("transform", "Rotate, reflect or apply per-leg maps");
  d_tr->add_option("--input", input, "Decomposition source")->required();
  add_n(d_tr);
  d_tr->add_option("--rotate", rotate_by, "New leg p is old leg p+s");
  d_tr->add_flag("--reflect", reflect_flag, "Reverse legs and swap each leg's two factors");
  d_tr->add_option("--map", maps, "LEG=FILE: apply the JSON matrix in FILE at LEG");
  d_tr->add_option("--out", out_path, "Write the result to a file");
  d_tr->add_flag("--verify", do_verify, "Verify against the transformed source tensor");
  bind(d_tr, [&] {
    const Source s = load_source(input, n);
    Decomposition d = s.decomposition;
    SparseTensor t = reconstruct(d);
    if (reflect_flag) {
      d = reflect(d);
      std::vector<std::size_t> perm(t.order());
      for (std::size_t p = 0; p < perm.size(); ++p) perm[p] = perm.size() - 1 - p;
      t = permute_legs(t, perm);
      for (std::size_t p = 0; p < t.order(); ++p) {
        const std::size_t swap[2] = {1, 0};
        t = permute_leg_factors(t, p, swap);
      }
    }
    if (rotate_by) {
      d = rotate(d, rotate_by);
      std::vector<std::size_t> perm(t.order());
      for (std::size_t p = 0; p < perm.size(); ++p) perm[p] = (p + rotate_by) % perm.size();
      t = permute_legs(t, perm);
    }
    if (!maps.empty()) {
      std::vector<std::optional<RationalMatrix>> ms(d.signature.order());
      for (const auto& m : maps) {
        const auto eq = m.find('=');
        if (eq == std::string::npos) throw UsageError("--map expects LEG=FILE");
        const auto l = parse_sizes(m.substr(0, eq), "--map");
        if (l.size() != 1 || l[0] >= ms.size()) throw UsageError("--map: leg out of range");
        ms[l[0]] = read_matrix_file(m.substr(eq + 1));
        t = apply_at_leg(t, l[0], *ms[l[0]]);
      }
      d = apply_maps(d, ms);
    }
    summarize(out, d);
    if (do_verify) report_verify(out, d, t, "the transformed source tensor");
    std::optional<Weights> w = s.cycle_weights;
    if (w && reflect_flag) {
      Weights r(w->size());
      for (std::size_t p = 0; p < r.size(); ++p) r[p] = (*w)[(r.size() - p) % r.size()];
      w = r;
    }
    if (w && rotate_by) {
      Weights r(w->size());
      for (std::size_t p = 0; p < r.size(); ++p) r[p] = (*w)[(p + rotate_by) % r.size()];
      w = r;
    }
    if (!maps.empty()) w.reset();
    write_out(out_path, d, w, out);
  });
  auto* d_lr = decomp->add_subcommand("local-ranks", "Histogram of per-term local ranks at a leg");
  d_lr->add_option("--input", input, "Decomposition source")->required();
  add_n(d_lr);
  d_lr->add_option("--leg", leg, "Leg index (0-based)");
  d_lr->add_option("--split", split_flag, "a,b (default: the leg's split)");
  bind(d_lr, [&] {
    const Source s = load_source(input, n);
    std::size_t a = 0;
    std::size_t b = 0;
    if (!split_flag.empty()) {
      const auto ab = parse_sizes(split_flag, "--split");
      if (ab.size() != 2) throw UsageError("--split expects a,b");
      a = ab[0];
      b = ab[1];
    } else {
      if (leg >= s.decomposition.signature.order()) throw UsageError("--leg out of range");
      const Leg& l = s.decomposition.signature.leg(leg);
      if (l.split.size() != 2) throw UsageError("leg has no two-factor split; pass --split");
      a = l.split[0];
      b = l.split[1];
    }
    const LocalRankProfile p = local_rank_profile(s.decomposition, leg, a, b);
    out << "leg " << leg << " split " << a << "x" << b << ": " << p.str() << "\n";
    out << "terms " << p.term_count() << ", local rank sum " << p.rank_sum() << "\n";
  });

  // surgery
  auto* surgery = app.add_subcommand("surgery", "Tensor surgery");
  surgery->require_subcommand(1);
  auto* s_run = surgery->add_subcommand("run", "Split a leg, insert a path and substitute patches");
  s_run->add_option("--input", input, "Decomposition source")->required();
  add_n(s_run);
  s_run->add_option("--leg", leg, "Leg to split (0-based)");
  s_run->add_option("--split", split_flag, "a,b")->required();
  s_run->add_option("--path", path_flag, "m1,...,mL (empty: plain split)");
  s_run->add_option("--patch", patches, "Patch decomposition file with cycle_weights");
  s_run->add_option("--pin", pins, "Patch file that overrides resolution for its class");
  s_run->add_option("--target", target_graph, "Graph the input decomposes (for --seed-check)");
  s_run->add_flag("--seed-check", seed_check, "Verify the input before surgery");
  s_run->add_flag("--verify", do_verify, "Verify the output against the surgery map of the input tensor");
  s_run->add_option("--out", out_path, "Write the result to a file");
  bind(s_run, [&] {
    const Source s = load_source(input, n);
    const auto ab = parse_sizes(split_flag, "--split");
    if (ab.size() != 2) throw UsageError("--split expects a,b");
    const SurgeryPlan plan{leg, ab[0], ab[1], path_flag.empty() ? std::vector<std::size_t>{} : parse_sizes(path_flag, "--path")};
    const auto target = target_of(s, target_graph, n);
    if (seed_check) {
      if (!target) throw UsageError("--seed-check needs a target; pass --target");
      out << "input: ";
      report_verify(out, s.decomposition, target->first, target->second);
    }
    PatchLibrary lib = PatchLibrary::with_defaults();
    register_patches(lib, patches, false, out);
    register_patches(lib, pins, true, out);
    Decomposition d = split_and_insert(s.decomposition, plan, lib);
    out << "plan " << plan.str() << "\n";
    summarize(out, d);
    if (do_verify) {
      const SparseTensor t = surgery_map(target ? target->first : reconstruct(s.decomposition), plan);
      report_verify(out, d, t, "the surgery map of " + (target ? target->second : std::string("the input tensor")));
      d.verified = true;
    }
    write_out(out_path, d, std::nullopt, out);
  });
  auto* s_odd = surgery->add_subcommand("odd-cycle", "2^k - 1 terms for T_2(C_k), k odd");
  s_odd->add_option("--k", k, "Odd cycle length in [3, 11]")->required();
  s_odd->add_flag("--verify", do_verify, "Re-verify the final decomposition");
  s_odd->add_flag("--seed-check", seed_check, "Verify the seven-term base first");
  s_odd->add_option("--out", out_path, "Write the result to a file");
  bind(s_odd, [&] {
    if (k % 2 == 0 || k < 3 || k > 11) throw UsageError("--k must be odd with 3 <= k <= 11");
    if (seed_check) {
      out << "seed: ";
      report_verify(out, strassen(), graph_tensor(cycle(3)), "T_2(C_3)");
    }
    Decomposition d = odd_cycle_decomposition(k);
    const std::string name = "T_2(C_" + std::to_string(k) + ")";
    if (do_verify) {
      report_verify(out, d, graph_tensor(cycle(k)), name);
    } else {
      out << d.size() << " terms, " << (d.verified ? "VERIFIED" : "NOT VERIFIED") << " against " << name << "\n";
    }
    out << "local ranks leg 0 split 2x2: " << local_rank_profile(d, 0, 2, 2).str() << "\n";
    write_out(out_path, d, std::nullopt, out);
  });
  auto* s_c5 = surgery->add_subcommand("c5-dim4", "T_4(C_5) from the squared seven-term base");
  s_c5->add_option("--patch442", patch442, "Decomposition of <4,4,2> (cycle_weights in the file, else (4,4,2))");
  s_c5->add_option("--patch", patches, "Additional patch files");
  s_c5->add_option("--pin", pins, "Patch file that overrides resolution for its class");
  s_c5->add_flag("--verify", do_verify, "Re-verify the final decomposition");
  s_c5->add_flag("--seed-check", seed_check, "Verify the squared base first");
  s_c5->add_option("--out", out_path, "Write the result to a file");
  bind(s_c5, [&] {
    PatchLibrary lib = PatchLibrary::with_defaults();
    if (!patch442.empty()) {
      DecompFile f = read_decomposition_file(patch442);
      const Weights w = f.cycle_weights.value_or(Weights{4, 4, 2});
      const std::size_t size = f.decomposition.size();
      if (!lib.add(w, std::move(f.decomposition))) {
        throw VerificationFailure("patch " + patch442 + " does not verify against T(wcycle " + tuple(w) + ")");
      }
      out << "patch " << tuple(w) << ": " << size << " terms, verified (" << patch442 << ")\n";
    }
    register_patches(lib, patches, false, out);
    register_patches(lib, pins, true, out);
    if (seed_check) {
      out << "seed: ";
      report_verify(out, decomp_product(strassen(), strassen()), graph_tensor(cycle(3, 4)), "T_4(C_3)");
    }
    Decomposition d = c5_dim4_decomposition(lib);
    if (do_verify) {
      report_verify(out, d, graph_tensor(cycle(5, 4)), "T_4(C_5)");
    } else {
      out << d.size() << " terms, " << (d.verified ? "VERIFIED" : "NOT VERIFIED") << " against T_4(C_5)\n";
    }
    out << "provenance " << d.provenance << "\n";
    write_out(out_path, d, std::nullopt, out);
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->require_subcommand(1);
  auto* b_table = bounds->add_subcommand("table", "Best bounds on the exponent of odd cycles");
  add_params(b_table);
  b_table->add_option("--kmax", kmax, "Largest odd k")->check(CLI::Range(3, 101));
  b_table->add_option("--format", format, "text | csv")->check(CLI::IsMember({"text", "csv"}));
  bind(b_table, [&] { print_table(out, best_known_table(params, kmax), format); });
  auto* b_flat = bounds->add_subcommand("flattening", "Max-cut flattening lower bound");
  b_flat->add_option("--graph", graph, "Builder spec or hypergraph file")->required();
  add_n(b_flat);
  b_flat->add_flag("--rank", entries, "Also compute the exact flattening rank");
  bind(b_flat, [&] {
    const Hypergraph h = load_hypergraph(graph, n);
    print_records(out, flattening_lower(h));
    if (entries) out << "flattening rank " << flattening_rank(h, max_cut(h).side).get_str() << "\n";
  });
  auto* b_dome = bounds->add_subcommand("dome", "Dome and hypergraph examples");
  add_params(b_dome);
  b_dome->add_flag("--no-check", no_check, "Skip the exact flattening cross-checks");
  bind(b_dome, [&] { print_records(out, dome_and_hypergraph_bounds(params, !no_check)); });
  auto* b_cyc = bounds->add_subcommand("cycle-lower", "Rank lower bounds for odd cycles");
  b_cyc->add_option("--k", k, "Odd cycle length")->required();
  bind(b_cyc, [&] { print_records(out, cycle_rank_lower(k)); });
  auto* b_cov = bounds->add_subcommand("covering", "Covering and distillation bound for C_5");
  add_params(b_cov);
  bind(b_cov, [&] { print_records(out, covering_distill_c5(params)); });
  auto* b_sc = bounds->add_subcommand("scaling", "Scaling identity for rectangular exponents");
  add_params(b_sc);
  b_sc->add_option("--gamma", gamma_flag, "g1,g2,g3");
  b_sc->add_option("--delta", delta, "Scale factor");
  bind(b_sc, [&] {
    std::array<double, 3> g{};
    std::stringstream ss(gamma_flag);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
      if (i == 3) throw UsageError("--gamma expects three components");
      try {
        g[i++] = std::stod(item);
      } catch (const std::exception&) {
        throw UsageError("--gamma: not a number '" + item + "'");
      }
    }
    if (i != 3) throw UsageError("--gamma expects three components");
    print_records(out, {scaling_identity_check(g, delta, params)});
  });
  auto* b_c5 = bounds->add_subcommand("c5-dim4", "Component-cost bounds for T_4(C_5)");
  bind(b_c5, [&] { print_records(out, c5_dim4_cost_bounds()); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (action) action();
    return kOk;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace tsurg::cli
