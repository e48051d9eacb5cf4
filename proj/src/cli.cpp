#include "qcluster/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "qcluster/errors.hpp"
#include "qcluster/leclerc.hpp"
#include "qcluster/tropical.hpp"

namespace qcluster::cli {

using nlohmann::json;

namespace {

IntMatrix matrix_field(const json& j, const char* name, std::size_t rows, std::size_t cols) {
  if (!j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  const json& m = j.at(name);
  if (!m.is_array() || m.size() != rows)
    throw ParseError(std::string("field \"") + name + "\" must have " + std::to_string(rows) + " rows");
  IntMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!m[r].is_array() || m[r].size() != cols)
      throw ParseError(std::string("field \"") + name + "\" row " + std::to_string(r + 1) + " must have " +
                       std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m[r][c].is_number_integer())
        throw ParseError(std::string("field \"") + name + "\" entry (" + std::to_string(r + 1) + "," +
                         std::to_string(c + 1) + ") is not an integer");
      out(r, c) = m[r][c].get<std::int64_t>();
    }
  }
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string matrix_json(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::int64_t> row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    s += (r ? "," : "") + join(row);
  }
  return s + "]";
}

json exp_json(const ExpVec& e) { return json(e.entries()); }

json one_based(const Word& w) {
  json a = json::array();
  for (std::size_t k : w) a.push_back(k + 1);
  return a;
}

json provenance_json(const Provenance& p) {
  return json{{"node", p.node}, {"exponent", exp_json(p.exponent)}};
}

json decomposition_json(const Decomposition& d) {
  json terms = json::array();
  for (const auto& [key, c] : d.sorted_terms())
    terms.push_back(json{{"degree", exp_json(key)}, {"coeff", c.to_string()}});
  json j{{"status", d.exact() ? "Exact" : "Indeterminate"}, {"terms", terms}};
  if (!d.exact()) j["reason"] = d.reason;
  return j;
}

json verdict_json(const PairRecord& rec) {
  const LeclercVerdict& v = rec.verdict;
  json checks = json::object();
  for (const auto& [name, ok] : v.checks) checks[name] = ok;
  json middle = json::array();
  for (const auto& [key, c] : v.middle)
    middle.push_back(json{{"degree", exp_json(key)}, {"coeff", c.to_string()}});
  json j{{"R", provenance_json(rec.r)}, {"V", provenance_json(rec.v)}, {"verdict", to_string(v.kind)}};
  if (v.kind == LeclercVerdict::Case::Indeterminate) {
    j["reason"] = v.reason;
    return j;
  }
  j["s"] = v.s;
  j["h"] = v.h;
  j["S"] = exp_json(v.S);
  j["H"] = exp_json(v.H);
  j["middle"] = middle;
  j["checks"] = checks;
  j["passed"] = v.passed();
  return j;
}

json triangular_json(const TriangularReport& r) {
  return json{{"pass", r.pass},
              {"fail", r.fail},
              {"indeterminate", r.indeterminate},
              {"witnesses", r.witnesses}};
}

std::vector<std::size_t> parse_scope(const std::string& text, std::size_t nodes) {
  std::vector<std::size_t> out;
  if (text == "all") {
    for (std::size_t i = 0; i < nodes; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = -1;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 0 || static_cast<std::size_t>(v) >= nodes)
      throw ParseError("bad node \"" + item + "\" in --scope (nodes are 0.." + std::to_string(nodes - 1) + ")");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ParseError("empty --scope");
  return out;
}

struct Options {
  std::string seed_file;
  std::string word;
  std::size_t var = 0;
  bool dot = false;
  std::size_t node_cap = kDefaultNodeCap;
  int direction = 1;
  std::int64_t cap = 3;
  std::int64_t r_cap = 1;
  std::int64_t frozen_window = 0;
  std::string scope = "all";
  std::string json_out;
  std::uint64_t rng_seed = 1;
  bool conjecture = false;
};

int cmd_check(const Options& o, std::ostream& out) {
  bool synthesized = false;
  const QuantumSeed s = load_seed_file(o.seed_file, &synthesized);
  if (synthesized) out << "synthesized Lambda: " << matrix_json(s.Lambda) << "\nsynthesized D: " << join(s.D) << "\n";
  const auto rep = check_compatible(s);
  if (rep.ok) {
    out << "compatible\n";
    return kOk;
  }
  out << "not compatible: " << rep.diagnostic << "\n";
  return kCheckFailed;
}

QuantumSeed load_compatible(const std::string& path) {
  const QuantumSeed s = load_seed_file(path);
  const auto rep = check_compatible(s);
  if (!rep.ok) throw PreconditionError("seed is not compatible: " + rep.diagnostic);
  return s;
}

int cmd_mutate(const Options& o, std::ostream& out) {
  const QuantumSeed s = load_compatible(o.seed_file);
  out << seed_to_json(mutate_seed(s, parse_word(o.word, s)));
  return kOk;
}

int cmd_expand(const Options& o, std::ostream& out) {
  const QuantumSeed s = load_compatible(o.seed_file);
  if (o.var < 1 || o.var > s.n) throw ParseError("--var must lie in 1.." + std::to_string(s.n));
  const TrackedSeed ts = apply_word(initial_tracked(s), parse_word(o.word, s));
  out << ts.vars[o.var - 1].to_string() << "\n";
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  const QuantumSeed s = load_compatible(o.seed_file);
  const std::string prefix = o.dot ? "// " : "";
  const GraphSkeleton sk = probe_exchange_graph(s, o.node_cap);
  if (sk.truncated) {
    out << prefix << sk.size() << " nodes\n";
    out << prefix << sk.variables << " cluster variables\n";
    out << prefix << sk.edges / 2 << " edges\n";
    out << prefix << "truncated at " << o.node_cap << " nodes\n";
    return kOk;
  }
  const ExchangeGraph g = build_exchange_graph(s, o.node_cap);
  out << prefix << g.size() << " nodes\n";
  out << prefix << g.cluster_variables().size() << " cluster variables\n";
  out << prefix << g.edges.size() / 2 << " edges\n";
  if (g.truncated) out << prefix << "truncated at " << o.node_cap << " nodes\n";
  for (const auto& v : g.violations) out << prefix << "violation: " << v << "\n";
  if (o.dot) out << to_dot(g);
  return g.violations.empty() ? kOk : kCheckFailed;
}

json shift_json(const QuantumSeed& s, const ShiftData& sd) {
  json sigma = json::array();
  for (std::size_t k : s.unfrozen) sigma.push_back(sd.sigma[k] + 1);
  json u = json::object();
  for (const auto& [k, v] : sd.u) u[std::to_string(k + 1)] = exp_json(v);
  return json{{"direction", sd.direction}, {"word", one_based(sd.word)}, {"sigma", sigma}, {"u", u}};
}

int cmd_shift(const Options& o, std::ostream& out) {
  if (o.direction != 1 && o.direction != -1) throw ParseError("--direction must be 1 or -1");
  const QuantumSeed s = load_compatible(o.seed_file);
  std::optional<ShiftData> sd = find_shift(s, o.direction);
  if (!sd) sd = detect_shift(build_exchange_graph(s, o.node_cap), 0, o.direction);
  const std::string problem = verify_shift(s, *sd);
  if (!problem.empty()) throw InternalError("detected shift does not verify: " + problem);
  out << shift_json(s, *sd).dump() << "\n";
  return kOk;
}

int cmd_leclerc(const Options& o, std::ostream& out) {
  const QuantumSeed s = load_compatible(o.seed_file);
  if (probe_exchange_graph(s, o.node_cap).truncated) {
    out << "exchange graph exceeds " << o.node_cap << " nodes: not finite type within cap\n";
    return kCheckFailed;
  }
  const ExchangeGraph g = build_exchange_graph(s, o.node_cap);
  if (g.truncated) {
    out << "exchange graph exceeds " << o.node_cap << " nodes: not finite type within cap\n";
    return kCheckFailed;
  }
  const std::vector<std::size_t> scope = parse_scope(o.scope, g.size());
  const CandidateBasis basis = enumerate_basis(g, o.cap, o.frozen_window);

  json report;
  report["nodes"] = g.size();
  report["variables"] = g.cluster_variables().size();
  report["basis_size"] = basis.size();
  report["mode"] = o.conjecture ? "conjecture" : "theorem";
  json conflicts = json::array();
  for (const auto& c : basis.conflicts)
    conflicts.push_back(json{{"key", exp_json(c.key)}, {"first", provenance_json(c.first)},
                             {"second", provenance_json(c.second)}});
  report["conflicts"] = conflicts;

  TheoremReport thm;
  if (o.conjecture) {
    thm = verify_conjecture(basis, scope);
  } else {
    thm = verify_theorem(basis, scope, o.r_cap);
  }
  json pairs = json::array();
  for (const auto& rec : thm.pairs) pairs.push_back(verdict_json(rec));
  report["pairs"] = pairs;
  report["summary"] = json{{"in_basis", thm.in_basis},
                           {"in_basis_fail", thm.in_basis_fail},
                           {"two_tail_pass", thm.two_tail_pass},
                           {"two_tail_fail", thm.two_tail_fail},
                           {"indeterminate", thm.indeterminate}};

  std::size_t tri_fail = 0;
  json tri = json::array();
  json products = json::array();
  for (std::size_t node : scope) {
    const TorusBasis tb(basis, node);
    const TriangularReport deg = check_degree_triangular(tb);
    const TriangularReport co = check_codegree_triangular(tb);
    tri_fail += deg.fail + co.fail;
    tri.push_back(json{{"node", node}, {"degree", triangular_json(deg)}, {"codegree", triangular_json(co)}});
    if (node != scope.front()) continue;
    for (const auto* rep : {&deg, &co})
      for (const auto& e : rep->entries)
        products.push_back(json{{"side", rep == &deg ? "degree" : "codegree"},
                                {"node", node},
                                {"vertex", e.vertex + 1},
                                {"key", exp_json(e.key)},
                                {"product", e.product.to_string()},
                                {"decomposition", decomposition_json(e.decomposition)},
                                {"unitriangular", e.unitriangular}});
  }
  report["triangular"] = tri;
  report["products"] = products;

  // Commuting-diagram check on sampled vectors for all node pairs in scope.
  std::vector<ShiftData> shifts;
  for (std::size_t node = 0; node < g.size(); ++node) shifts.push_back(detect_shift(g, node, 1));
  const auto samples = default_samples(s.n, 20, o.rng_seed);
  std::size_t commute_fail = 0;
  for (std::size_t a : scope)
    for (std::size_t b : scope)
      commute_fail += check_trop_commute(g.nodes[a].ts.seed, shifts[a], path_between(g, a, b), shifts[b], samples)
                          .size();
  report["trop_commute_failures"] = commute_fail;

  if (!o.json_out.empty()) {
    std::ofstream f(o.json_out);
    if (!f) throw ParseError("cannot write " + o.json_out);
    f << report.dump(1) << "\n";
  }

  const bool ok = thm.ok() && basis.conflicts.empty() && tri_fail == 0 && commute_fail == 0;
  out << "mode: " << (o.conjecture ? "conjecture" : "theorem") << "\n";
  out << "nodes: " << g.size() << "\n";
  out << "cluster variables: " << g.cluster_variables().size() << "\n";
  out << "basis size: " << basis.size() << "\n";
  out << "pairs: " << thm.pairs.size() << " (InBasis " << thm.in_basis << ", InBasis-fail " << thm.in_basis_fail
      << ", TwoTail-pass " << thm.two_tail_pass << ", TwoTail-fail " << thm.two_tail_fail << ", Indeterminate "
      << thm.indeterminate << ")\n";
  out << "duplicate degree conflicts: " << basis.conflicts.size() << "\n";
  out << "triangularity failures: " << tri_fail << "\n";
  out << "commuting-diagram failures: " << commute_fail << "\n";
  out << "result: " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? kOk : kCheckFailed;
}

}  // namespace

QuantumSeed parse_seed_json(const std::string& text, bool* synthesized) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("seed file must hold a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() <= 0)
    throw ParseError("field \"n\" must be a positive integer");
  const auto n = j["n"].get<std::size_t>();
  if (!j.contains("unfrozen") || !j["unfrozen"].is_array())
    throw ParseError("field \"unfrozen\" must be a list of 1-based vertices");
  std::vector<std::size_t> uf;
  for (const auto& x : j["unfrozen"]) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 1 || x.get<std::int64_t>() > static_cast<std::int64_t>(n))
      throw ParseError("field \"unfrozen\" entries must lie in 1.." + std::to_string(n));
    uf.push_back(x.get<std::size_t>() - 1);
    if (uf.size() > 1 && uf[uf.size() - 2] >= uf.back())
      throw ParseError("field \"unfrozen\" must be strictly increasing");
  }
  const IntMatrix b = matrix_field(j, "B", n, uf.size());
  std::vector<std::int64_t> d;
  if (j.contains("D")) {
    if (!j["D"].is_array() || j["D"].size() != uf.size())
      throw ParseError("field \"D\" must have one entry per unfrozen vertex");
    for (const auto& x : j["D"]) {
      if (!x.is_number_integer()) throw ParseError("field \"D\" entries must be integers");
      d.push_back(x.get<std::int64_t>());
    }
  }
  if (synthesized) *synthesized = false;
  try {
    if (!j.contains("Lambda")) {
      const CompatiblePair pair = find_compatible_lambda(b, uf);
      if (!d.empty() && d != pair.D)
        throw ParseError("field \"D\" does not match the synthesized skew-symmetrizer " + join(pair.D));
      if (synthesized) *synthesized = true;
      return make_seed(n, uf, b, pair.Lambda, pair.D);
    }
    const IntMatrix lambda = matrix_field(j, "Lambda", n, n);
    if (d.empty()) {
      const IntMatrix bl = b.transpose() * lambda;
      for (std::size_t c = 0; c < uf.size(); ++c) d.push_back(bl(c, uf[c]));
    }
    return make_seed(n, uf, b, lambda, d);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid seed: ") + e.what());
  }
}

QuantumSeed load_seed_file(const std::string& path, bool* synthesized) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read seed file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_seed_json(ss.str(), synthesized);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string seed_to_json(const QuantumSeed& s) {
  std::vector<std::int64_t> uf;
  for (std::size_t k : s.unfrozen) uf.push_back(static_cast<std::int64_t>(k + 1));
  std::ostringstream os;
  os << "{\n  \"n\": " << s.n << ",\n  \"unfrozen\": " << join(uf) << ",\n  \"B\": " << matrix_json(s.B)
     << ",\n  \"Lambda\": " << matrix_json(s.Lambda) << ",\n  \"D\": " << join(s.D) << "\n}\n";
  return os.str();
}

Word parse_word(const std::string& text, const QuantumSeed& s) {
  Word w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 1 || v > static_cast<long long>(s.n))
      throw ParseError("bad vertex \"" + item + "\" in word");
    if (!s.is_unfrozen(static_cast<std::size_t>(v - 1)))
      throw ParseError("vertex " + item + " is frozen and cannot be mutated");
    w.push_back(static_cast<std::size_t>(v - 1));
  }
  return w;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum cluster algebra seeds, expansions and triangular-basis checks", "qcluster"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Check that a seed file is a compatible pair");
  check->add_option("file", o.seed_file, "Seed JSON file")->required();

  auto* mutate = app.add_subcommand("mutate", "Print the seed after a mutation word");
  mutate->add_option("file", o.seed_file, "Seed JSON file")->required();
  mutate->add_option("--word", o.word, "Comma-separated 1-based vertices, applied left to right");

  auto* expand = app.add_subcommand("expand", "Expand a cluster variable of a mutated seed");
  expand->add_option("file", o.seed_file, "Seed JSON file")->required();
  expand->add_option("--word", o.word, "Comma-separated 1-based vertices, applied left to right");
  expand->add_option("--var", o.var, "1-based variable index")->required();

  auto* graph = app.add_subcommand("graph", "Enumerate the exchange graph");
  graph->add_option("file", o.seed_file, "Seed JSON file")->required();
  graph->add_flag("--dot", o.dot, "Emit DOT text");
  graph->add_option("--cap", o.node_cap, "Node cap")->capture_default_str();

  auto* shift = app.add_subcommand("shift", "Detect the shifted seed t[1] or t[-1]");
  shift->add_option("file", o.seed_file, "Seed JSON file")->required();
  shift->add_option("--direction", o.direction, "1 or -1")->capture_default_str();
  shift->add_option("--node-cap", o.node_cap, "Node cap for the fallback graph search")->capture_default_str();

  auto* leclerc = app.add_subcommand("leclerc", "Verify the two-tail decomposition of R*V");
  leclerc->add_option("file", o.seed_file, "Seed JSON file")->required();
  leclerc->add_option("--cap", o.cap, "Unfrozen exponent cap of the basis")->capture_default_str();
  leclerc->add_option("--r-cap", o.r_cap, "Exponent cap for R (1: single variables)")->capture_default_str();
  leclerc->add_option("--frozen-window", o.frozen_window, "Frozen exponent window of the basis")
      ->capture_default_str();
  leclerc->add_option("--scope", o.scope, "all, or comma-separated 0-based node ids")->capture_default_str();
  leclerc->add_option("--json", o.json_out, "Write the full JSON report here");
  leclerc->add_option("--seed", o.rng_seed, "RNG seed for sampled checks")->capture_default_str();
  leclerc->add_option("--node-cap", o.node_cap, "Node cap for the exchange graph")->capture_default_str();
  leclerc->add_flag("--conjecture", o.conjecture, "Let R range over all basis elements");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*mutate) return cmd_mutate(o, out);
    if (*expand) return cmd_expand(o, out);
    if (*graph) return cmd_graph(o, out);
    if (*shift) return cmd_shift(o, out);
    if (*leclerc) return cmd_leclerc(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const NoneFound& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace qcluster::cli
