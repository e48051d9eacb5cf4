#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/expansion.hpp"
#include "qcluster/pointed.hpp"
#include "qcluster/tropical.hpp"

namespace qcluster {

/// A cluster monomial X(node)^exponent.
struct Provenance {
  std::size_t node = 0;
  ExpVec exponent;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Two different elements sharing a key.
struct DegreeConflict {
  ExpVec key;
  Provenance first;
  Provenance second;
};

/// Normalized localized cluster monomials of a closed exchange graph, keyed
/// in the torus of node 0.
struct CandidateBasis {
  std::shared_ptr<const NodeTori> tori;
  PointedSet by_degree;
  PointedSet by_codegree;
  std::map<ExpVec, Provenance> provenance;  // by degree key
  std::vector<DegreeConflict> conflicts;

  std::size_t size() const { return by_degree.size(); }
  const ExchangeGraph& graph() const { return tori->graph(); }
};

/// Unfrozen exponents in [0, unfrozen_cap], frozen ones in
/// [-frozen_window, frozen_window]. Throws PreconditionError on a truncated
/// graph.
CandidateBasis enumerate_basis(const ExchangeGraph& g, std::int64_t unfrozen_cap,
                               std::int64_t frozen_window = 0);

/// The candidate basis expanded in the torus of one node.
///
/// Lookups fall back to solving sum_i m_i deg X_i(t') = g with m_uf >= 0 over
/// all nodes t', so every localized cluster monomial is reachable by key.
class TorusBasis {
 public:
  TorusBasis(const CandidateBasis& basis, std::size_t at);

  std::size_t node() const { return at_; }
  const QuantumSeed& seed() const;
  const DominanceOrder& order() const;

  const PointedSet& by_degree() const { return by_degree_; }
  const PointedSet& by_codegree() const { return by_codegree_; }
  const std::vector<DegreeConflict>& conflicts() const { return conflicts_; }

  /// Enumerated elements in the order of the reference keys, expanded here.
  const std::vector<std::pair<Provenance, QTElem>>& elements() const { return elements_; }
  /// Element with the given provenance, expanded here.
  QTElem element(const Provenance& p) const;
  /// Provenance of the enumerated element with the given degree key.
  const Provenance* provenance(const ExpVec& deg) const;

  const QTElem* find_degree(const ExpVec& g) const;
  const QTElem* find_codegree(const ExpVec& eta) const;
  BasisLookup degree_lookup() const;
  BasisLookup codegree_lookup() const;

 private:
  std::optional<Provenance> solve(const ExpVec& key, bool codegree_side) const;

  const CandidateBasis& basis_;
  std::size_t at_;
  PointedSet by_degree_;
  PointedSet by_codegree_;
  std::map<ExpVec, Provenance> provenance_;
  std::vector<std::pair<Provenance, QTElem>> elements_;
  std::vector<DegreeConflict> conflicts_;
  std::vector<FullRankSolver> deg_solvers_;
  std::vector<FullRankSolver> codeg_solvers_;
  mutable PointedSet extra_degree_;
  mutable PointedSet extra_codegree_;
};

struct TriangularEntry {
  std::size_t vertex;
  ExpVec key;  // degree (or codegree) of the basis element
  QTElem product;
  Decomposition decomposition;
  bool unitriangular = false;
};

struct TriangularReport {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t indeterminate = 0;
  std::vector<TriangularEntry> entries;
  std::vector<std::string> witnesses;

  bool ok() const { return fail == 0 && indeterminate == 0; }
};

/// [X_i * L_g]^t against the basis, pivot g + f_i, for every vertex i.
TriangularReport check_degree_triangular(const TorusBasis& tb);
/// {L^eta * X_i}^t against the basis keyed by codegree, pivot eta + f_i.
TriangularReport check_codegree_triangular(const TorusBasis& tb);

struct LeclercVerdict {
  enum class Case { InBasis, TwoTail, Indeterminate };

  Case kind = Case::Indeterminate;
  std::int64_t s = 0;
  std::int64_t h = 0;
  ExpVec S;
  ExpVec H;
  std::vector<std::pair<ExpVec, VCoeff>> middle;
  std::string reason;
  std::vector<std::pair<std::string, bool>> checks;

  bool passed() const;
};

std::string to_string(LeclercVerdict::Case c);

/// Decomposes R*V in the torus of tb. R must be pointed there; V is a basis
/// element. When `single_variable` is set, R = X_i and the n_i = 0 criterion
/// for InBasis is checked too.
LeclercVerdict verify_pair(const TorusBasis& tb, const QTElem& r, const QTElem& v,
                           std::optional<std::size_t> single_variable = std::nullopt);

struct PairRecord {
  Provenance r;
  Provenance v;
  LeclercVerdict verdict;
};

struct TheoremReport {
  std::size_t in_basis = 0;
  std::size_t in_basis_fail = 0;
  std::size_t two_tail_pass = 0;
  std::size_t two_tail_fail = 0;
  std::size_t indeterminate = 0;
  std::vector<PairRecord> pairs;

  bool ok() const { return in_basis_fail == 0 && two_tail_fail == 0; }
};

/// verify_pair over R = X(t)^m, t in scope, m either a unit vector or any
/// nonzero unfrozen exponent in [0, r_cap], and V over the basis.
TheoremReport verify_theorem(const CandidateBasis& basis, const std::vector<std::size_t>& scope,
                             std::int64_t r_cap = 1);

/// R over every enumerated basis element whose provenance node is in scope,
/// V over the basis. Each pair is checked in the torus of R's own seed, where
/// R is a monomial.
TheoremReport verify_conjecture(const CandidateBasis& basis, const std::vector<std::size_t>& scope);

}  // namespace qcluster
