#include "qcluster/expansion.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "qcluster/errors.hpp"

namespace qcluster {

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::vector<ExpVec> TrackedSeed::perm_class() const {
  auto key = degrees;
  std::sort(key.begin(), key.end());
  return key;
}

TrackedSeed initial_tracked(const QuantumSeed& s) {
  const auto rep = check_compatible(s);
  if (!rep.ok) throw PreconditionError("seed is not compatible: " + rep.diagnostic);
  TrackedSeed ts;
  ts.reference = std::make_shared<const DominanceOrder>(s);
  ts.seed = s;
  for (std::size_t i = 0; i < s.n; ++i) {
    ts.vars.push_back(QTElem::monomial(ExpVec::unit(s.n, i)));
    ts.degrees.push_back(ExpVec::unit(s.n, i));
  }
  return ts;
}

QTElem expand_monomial(const TrackedSeed& ts, const ExpVec& m) {
  const QuantumSeed& s = ts.seed;
  const IntMatrix& ref_lambda = ts.reference_seed().Lambda;
  if (m.dim() != s.n) throw DimensionMismatch("monomial exponent has wrong dimension");
  std::int64_t twist = 0;
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j) twist += m[i] * m[j] * s.Lambda(i, j);
  QTElem prod = QTElem::monomial(ExpVec(ts.vars.front().dim()), VCoeff::vpow(-twist));
  for (std::size_t i = 0; i < s.n; ++i) {
    if (m[i] == 0) continue;
    QTElem factor;
    if (m[i] > 0) {
      factor = twisted_pow(ts.vars[i], m[i], ref_lambda);
    } else {
      if (s.is_unfrozen(i))
        throw PreconditionError("negative exponent on unfrozen vertex " + std::to_string(i + 1));
      // Frozen variables are reference monomials X^{f_i}.
      const auto& var = ts.vars[i];
      if (var.size() != 1 || !var.terms().begin()->second.is_one())
        throw InternalError("frozen variable is not a monomial");
      factor = QTElem::monomial((-m[i]) * (-var.terms().begin()->first));
    }
    prod = twisted_mul(prod, factor, ref_lambda);
  }
  return prod;
}

TrackedSeed mutate_tracked(const TrackedSeed& ts, std::size_t k) {
  const QuantumSeed& s = ts.seed;
  const std::size_t ck = s.column_of(k);
  ExpVec lower(s.n), upper(s.n);  // a + f_k and a' + f_k
  for (std::size_t i = 0; i < s.n; ++i) {
    const std::int64_t b = s.B(i, ck);
    if (b < 0) lower[i] = -b;
    if (b > 0) upper[i] = b;
  }
  const ExpVec fk = ExpVec::unit(s.n, k);
  QTElem numerator = expand_monomial(ts, lower).scaled(VCoeff::vpow(lambda(s, lower, fk)));
  numerator += expand_monomial(ts, upper).scaled(VCoeff::vpow(lambda(s, upper, fk)));

  TrackedSeed out = ts;
  out.seed = mutate_seed(s, k);
  QTElem fresh = exact_divide(numerator, ts.vars[k], ts.reference_seed().Lambda);
  out.vars[k] = normalize_deg(*ts.reference, fresh);
  auto g = degree(*ts.reference, out.vars[k]);
  out.degrees[k] = *g;
  out.path.push_back(k);
  return out;
}

TrackedSeed apply_word(const TrackedSeed& ts, const Word& word) {
  TrackedSeed cur = ts;
  for (std::size_t k : word) cur = mutate_tracked(cur, k);
  return cur;
}

QTElem cluster_monomial(const TrackedSeed& ts, const ExpVec& m) {
  if (m.dim() != ts.seed.n) throw DimensionMismatch("cluster monomial exponent has wrong dimension");
  for (std::size_t k : ts.seed.unfrozen)
    if (m[k] < 0)
      throw PreconditionError("cluster monomial exponent is negative at unfrozen vertex " +
                              std::to_string(k + 1));
  const IntMatrix& ref_lambda = ts.reference_seed().Lambda;
  QTElem prod = QTElem::one(ts.vars.front().dim());
  for (std::size_t i = 0; i < ts.seed.n; ++i) {
    if (m[i] > 0) {
      prod = twisted_mul(prod, twisted_pow(ts.vars[i], m[i], ref_lambda), ref_lambda);
    } else if (m[i] < 0) {
      prod = twisted_mul(prod, QTElem::monomial(m[i] * ts.degrees[i]), ref_lambda);
    }
  }
  return normalize_deg(*ts.reference, prod);
}

std::optional<std::vector<std::size_t>> match_permutation(const TrackedSeed& a,
                                                          const TrackedSeed& b) {
  if (a.degrees.size() != b.degrees.size()) return std::nullopt;
  std::vector<std::size_t> p(a.degrees.size());
  for (std::size_t i = 0; i < a.degrees.size(); ++i) {
    auto it = std::find(b.degrees.begin(), b.degrees.end(), a.degrees[i]);
    if (it == b.degrees.end()) return std::nullopt;
    p[i] = static_cast<std::size_t>(it - b.degrees.begin());
  }
  return p;
}

std::size_t ExchangeGraph::find(const std::vector<ExpVec>& key) const {
  auto it = index.find(key);
  return it == index.end() ? GraphNode::npos : it->second;
}

std::vector<QTElem> ExchangeGraph::cluster_variables() const {
  std::map<ExpVec, QTElem> by_degree;
  for (const auto& node : nodes)
    for (std::size_t i : node.ts.seed.unfrozen) by_degree.emplace(node.ts.degrees[i], node.ts.vars[i]);
  std::vector<QTElem> out;
  for (auto& [g, x] : by_degree) out.push_back(x);
  return out;
}

namespace {

void check_merge(ExchangeGraph& g, const TrackedSeed& child, std::size_t target,
                 const std::vector<std::size_t>& p) {
  const TrackedSeed& other = g.nodes[target].ts;
  const QuantumSeed& a = child.seed;
  const QuantumSeed& b = other.seed;
  std::ostringstream where;
  where << "node " << target << " reached by path of length " << child.path.size() << ": ";
  for (std::size_t i = 0; i < a.n; ++i) {
    if (a.is_unfrozen(i) != b.is_unfrozen(p[i]) || (!a.is_unfrozen(i) && p[i] != i)) {
      g.violations.push_back(where.str() + "permutation moves a frozen vertex");
      return;
    }
    if (child.vars[i] != other.vars[p[i]])
      g.violations.push_back(where.str() + "expansion of variable " + std::to_string(i + 1) +
                             " depends on the path");
  }
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      if (a.Lambda(i, j) != b.Lambda(p[i], p[j])) {
        g.violations.push_back(where.str() + "Lambda disagrees under the matched permutation");
        return;
      }
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k : a.unfrozen)
      if (a.b(i, k) != b.b(p[i], p[k])) {
        g.violations.push_back(where.str() + "B~ disagrees under the matched permutation");
        return;
      }
}

void record_repeats(ExchangeGraph& g, const TrackedSeed& ts, std::size_t node) {
  auto key = ts.perm_class();
  if (std::adjacent_find(key.begin(), key.end()) != key.end())
    g.violations.push_back("node " + std::to_string(node) + " has repeated variable degrees");
}

}  // namespace

ExchangeGraph build_exchange_graph(const QuantumSeed& s, std::size_t node_cap) {
  ExchangeGraph g;
  TrackedSeed root = initial_tracked(s);
  g.reference = root.reference;
  g.index.emplace(root.perm_class(), 0);
  record_repeats(g, root, 0);
  g.nodes.push_back(GraphNode{std::move(root)});
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t k : s.unfrozen) {
      TrackedSeed child = mutate_tracked(g.nodes[cur].ts, k);
      const auto key = child.perm_class();
      std::size_t target = g.find(key);
      if (target == GraphNode::npos) {
        if (g.nodes.size() >= node_cap) {
          g.truncated = true;
          continue;
        }
        target = g.nodes.size();
        g.index.emplace(key, target);
        record_repeats(g, child, target);
        g.nodes.push_back(GraphNode{std::move(child), cur, k});
        std::vector<std::size_t> id(s.n);
        for (std::size_t i = 0; i < s.n; ++i) id[i] = i;
        g.edges.push_back(GraphEdge{cur, k, target, id});
        queue.push_back(target);
        continue;
      }
      auto p = match_permutation(child, g.nodes[target].ts);
      if (!p) {
        g.violations.push_back("node " + std::to_string(target) + ": degree matching failed");
        continue;
      }
      check_merge(g, child, target, *p);
      g.edges.push_back(GraphEdge{cur, k, target, *p});
    }
  }
  return g;
}

GraphSkeleton probe_exchange_graph(const QuantumSeed& s, std::size_t node_cap) {
  const auto rep = check_compatible(s);
  if (!rep.ok) throw PreconditionError("seed is not compatible: " + rep.diagnostic);
  const DominanceOrder order(s);
  GraphSkeleton g;
  std::map<std::vector<ExpVec>, std::size_t> index;
  std::set<ExpVec> variables;
  auto sorted = [](std::vector<ExpVec> d) {
    std::sort(d.begin(), d.end());
    return d;
  };
  std::vector<ExpVec> root;
  for (std::size_t i = 0; i < s.n; ++i) root.push_back(ExpVec::unit(s.n, i));
  for (std::size_t k : s.unfrozen) variables.insert(root[k]);
  index.emplace(sorted(root), 0);
  g.seeds.push_back(s);
  g.degrees.push_back(std::move(root));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t k : s.unfrozen) {
      const QuantumSeed& t = g.seeds[cur];
      const std::size_t ck = t.column_of(k);
      ExpVec lower(s.n), upper(s.n);
      for (std::size_t i = 0; i < s.n; ++i) {
        const std::int64_t b = t.B(i, ck);
        if (b < 0) lower -= b * g.degrees[cur][i];
        if (b > 0) upper += b * g.degrees[cur][i];
      }
      ExpVec top;
      if (order.leq(lower, upper)) top = upper;
      else if (order.leq(upper, lower)) top = lower;
      else throw InternalError("probe: exchange degrees are incomparable");
      std::vector<ExpVec> deg = g.degrees[cur];
      deg[k] = top - deg[k];
      auto key = sorted(deg);
      if (index.count(key)) {
        ++g.edges;
        continue;
      }
      if (g.seeds.size() >= node_cap) {
        g.truncated = true;
        continue;
      }
      ++g.edges;
      index.emplace(std::move(key), g.seeds.size());
      variables.insert(deg[k]);
      g.seeds.push_back(mutate_seed(t, k));
      g.degrees.push_back(std::move(deg));
      queue.push_back(g.seeds.size() - 1);
    }
  }
  g.variables = variables.size();
  return g;
}

ExchangeGraph rebase(const ExchangeGraph& g, std::size_t root) {
  if (root >= g.nodes.size()) throw PreconditionError("rebase: node index out of range");
  ExchangeGraph out;
  out.truncated = g.truncated;
  out.edges = g.edges;
  out.violations = g.violations;
  out.nodes.resize(g.nodes.size());

  TrackedSeed start = initial_tracked(g.nodes[root].ts.seed);
  out.reference = start.reference;
  // Walk back to the original reference, then down the BFS tree.
  TrackedSeed origin = apply_word(start, reversed(g.nodes[root].ts.path));
  if (origin.seed != g.nodes[0].ts.seed)
    throw InternalError("rebase: returning to the reference seed changed its labeling");
  out.nodes[0] = GraphNode{std::move(origin), GraphNode::npos, GraphNode::npos};
  for (std::size_t u = 1; u < g.nodes.size(); ++u) {
    const GraphNode& src = g.nodes[u];
    if (src.parent >= u) throw InternalError("rebase: BFS tree is not topologically ordered");
    out.nodes[u] = GraphNode{mutate_tracked(out.nodes[src.parent].ts, src.parent_vertex),
                             src.parent, src.parent_vertex};
  }
  for (std::size_t u = 0; u < out.nodes.size(); ++u) {
    if (out.nodes[u].ts.seed != g.nodes[u].ts.seed)
      throw InternalError("rebase: node " + std::to_string(u) + " changed its labeled seed");
    out.index.emplace(out.nodes[u].ts.perm_class(), u);
  }
  // Paths from the new root: the root itself must get the empty path.
  out.nodes[root].ts.path.clear();
  return out;
}

std::string to_dot(const ExchangeGraph& g) {
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    os << "  n" << u << " [label=\"";
    bool first = true;
    for (const auto& d : g.nodes[u].ts.perm_class()) {
      if (!first) os << " ";
      first = false;
      os << d.to_string();
    }
    os << "\"];\n";
  }
  for (const auto& e : g.edges)
    if (e.from < e.to) os << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.vertex + 1 << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace qcluster
