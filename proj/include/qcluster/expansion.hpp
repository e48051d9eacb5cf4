#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qcluster/pointed.hpp"
#include "qcluster/qtorus.hpp"
#include "qcluster/seed.hpp"

namespace qcluster {

/// Mutation word, applied left to right. Vertices are 0-based.
using Word = std::vector<std::size_t>;

Word reversed(const Word& w);

/// A seed together with the Laurent expansions of its cluster variables in
/// the quantum torus of a fixed reference seed.
struct TrackedSeed {
  std::shared_ptr<const DominanceOrder> reference;
  QuantumSeed seed;
  std::vector<QTElem> vars;
  Word path;                    // from the reference seed
  std::vector<ExpVec> degrees;  // degree of vars[i] in the reference torus

  const QuantumSeed& reference_seed() const { return reference->seed(); }
  /// Sorted degree vectors: identifies the seed up to relabeling.
  std::vector<ExpVec> perm_class() const;
};

TrackedSeed initial_tracked(const QuantumSeed& s);

/// The monomial X(t)^m of the tracked seed t, written in the reference torus
/// as v^{-sum_{i<j} m_i m_j Lambda_ij} X_1^m_1 * ... * X_n^m_n. Negative
/// exponents are allowed on frozen vertices only.
QTElem expand_monomial(const TrackedSeed& ts, const ExpVec& m);

/// mu_k with the new variable obtained from the exchange relation
/// X_k' * X_k = v^{lambda(a,f_k)} X^{a+f_k} + v^{lambda(a',f_k)} X^{a'+f_k}
/// by exact division in the reference torus. Throws NotDivisible when the
/// Laurent phenomenon fails, which indicates a bug.
TrackedSeed mutate_tracked(const TrackedSeed& ts, std::size_t k);

TrackedSeed apply_word(const TrackedSeed& ts, const Word& word);

/// Degree-normalized localized cluster monomial X(t)^m.
QTElem cluster_monomial(const TrackedSeed& ts, const ExpVec& m);

struct GraphNode {
  TrackedSeed ts;
  std::size_t parent = npos;         // BFS tree parent, npos for the root
  std::size_t parent_vertex = npos;  // mutation vertex from the parent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct GraphEdge {
  std::size_t from;
  std::size_t vertex;
  std::size_t to;
  /// Variable i of mu_vertex(from) is variable perm[i] of node `to`.
  std::vector<std::size_t> perm;
};

/// Seeds reachable by mutation, deduplicated up to relabeling.
///
/// Node 0 is the reference seed; nodes are numbered in BFS discovery order
/// (vertices tried in ascending order), which is deterministic.
struct ExchangeGraph {
  std::shared_ptr<const DominanceOrder> reference;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::map<std::vector<ExpVec>, std::size_t> index;
  bool truncated = false;
  /// Inconsistencies found while merging nodes (Lambda, B~ or expansion
  /// disagreement under the matched permutation, repeated degrees).
  std::vector<std::string> violations;

  std::size_t size() const { return nodes.size(); }
  /// Node with the given perm_class, or GraphNode::npos.
  std::size_t find(const std::vector<ExpVec>& key) const;
  /// Distinct unfrozen cluster variables across all nodes.
  std::vector<QTElem> cluster_variables() const;
};

inline constexpr std::size_t kDefaultNodeCap = 10000;

ExchangeGraph build_exchange_graph(const QuantumSeed& s, std::size_t node_cap = kDefaultNodeCap);

/// Exchange graph shape from degrees alone, without expansions. The new
/// degree after mu_k is the larger of the two exchange monomial degrees
/// minus deg X_k. Node numbering agrees with build_exchange_graph.
struct GraphSkeleton {
  std::vector<QuantumSeed> seeds;
  std::vector<std::vector<ExpVec>> degrees;
  std::size_t edges = 0;
  std::size_t variables = 0;  // distinct unfrozen degrees
  bool truncated = false;

  std::size_t size() const { return seeds.size(); }
};

/// Throws InternalError when the two exchange degrees are incomparable.
GraphSkeleton probe_exchange_graph(const QuantumSeed& s, std::size_t node_cap = kDefaultNodeCap);

/// The same graph re-expanded with node `root` as reference. Node indices,
/// labelings and edges are preserved; paths become paths from `root`.
ExchangeGraph rebase(const ExchangeGraph& g, std::size_t root);

/// Permutation p with a.degrees[i] == b.degrees[p[i]], if the degree sets match.
std::optional<std::vector<std::size_t>> match_permutation(const TrackedSeed& a, const TrackedSeed& b);

/// DOT text; node label = sorted degree vectors, edge label = 1-based vertex.
std::string to_dot(const ExchangeGraph& g);

}  // namespace qcluster
