#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/matrix.hpp"
#include "qcluster/qtorus.hpp"
#include "qcluster/seed.hpp"

namespace qcluster {

/// The dominance order of a seed: g' <= g iff g' = g + B~ n with n >= 0.
///
/// B~ has full column rank, so n is unique when it exists; membership is an
/// exact rational solve followed by integrality and sign checks.
class DominanceOrder {
 public:
  explicit DominanceOrder(const QuantumSeed& s);

  /// The n in Z^{I_uf} (indexed by column) with g' - g = B~ n, if integral.
  std::optional<std::vector<std::int64_t>> difference(const ExpVec& gp, const ExpVec& g) const;

  /// g' <= g.
  bool leq(const ExpVec& gp, const ExpVec& g) const;
  /// g' < g.
  bool less(const ExpVec& gp, const ExpVec& g) const { return gp != g && leq(gp, g); }

  /// All g'' with lo <= g'' <= hi (empty when lo is not below hi).
  std::vector<ExpVec> interval(const ExpVec& lo, const ExpVec& hi) const;

  const QuantumSeed& seed() const { return seed_; }

 private:
  QuantumSeed seed_;
  FullRankSolver solver_;
};

bool dominance_leq(const QuantumSeed& s, const ExpVec& gp, const ExpVec& g);

/// Unique dominance-maximal element of the support, if any.
std::optional<ExpVec> degree(const DominanceOrder& order, const QTElem& z);
/// Unique dominance-minimal element of the support, if any.
std::optional<ExpVec> codegree(const DominanceOrder& order, const QTElem& z);

std::optional<ExpVec> degree(const QuantumSeed& s, const QTElem& z);
std::optional<ExpVec> codegree(const QuantumSeed& s, const QTElem& z);

/// Dominance-maximal (resp. minimal) support elements, lex ascending.
std::vector<ExpVec> maximal_support(const DominanceOrder& order, const QTElem& z);
std::vector<ExpVec> minimal_support(const DominanceOrder& order, const QTElem& z);

/// Divides z by the unit coefficient at its degree (resp. codegree). Throws
/// PreconditionError when z has no degree, NonUnitLeading when that
/// coefficient is not +-v^a.
QTElem normalize_deg(const DominanceOrder& order, const QTElem& z);
QTElem normalize_codeg(const DominanceOrder& order, const QTElem& z);

bool is_pointed(const DominanceOrder& order, const QTElem& z);
bool is_copointed(const DominanceOrder& order, const QTElem& z);

struct Bidegree {
  ExpVec deg;
  ExpVec codeg;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

std::optional<Bidegree> bidegree(const DominanceOrder& order, const QTElem& z);

/// Elements keyed by their degree (or, for codegree use, by codegree).
using PointedSet = std::map<ExpVec, QTElem>;

/// Basis access by key; returns nullptr when the key is not available.
using BasisLookup = std::function<const QTElem*(const ExpVec&)>;

BasisLookup lookup_in(const PointedSet& set);

struct Decomposition {
  enum class Status { Exact, Indeterminate };

  std::vector<std::pair<ExpVec, VCoeff>> terms;  // key -> coefficient, in elimination order
  Status status = Status::Exact;
  std::string reason;

  bool exact() const { return status == Status::Exact; }
  /// Coefficient of the given key (zero when absent).
  VCoeff coeff(const ExpVec& key) const;
  /// Terms sorted by key, for order-independent comparison.
  std::vector<std::pair<ExpVec, VCoeff>> sorted_terms() const;
};

struct DecomposeOptions {
  std::size_t max_iterations = 100000;
  /// When set, ties among incomparable extremal degrees are broken in a
  /// shuffled order instead of lexicographically.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Degree unitriangular decomposition of z against a pointed basis.
///
/// Eliminates a dominance-maximal support degree of the remainder at each
/// step. Degrees outside [window.codeg, window.deg], degrees missing from the
/// basis, and the iteration cap all end in Status::Indeterminate.
Decomposition decompose(const DominanceOrder& order, const QTElem& z, const BasisLookup& basis,
                        const Bidegree& window, const DecomposeOptions& opts = {});

/// Codegree mirror of decompose; the basis is keyed by codegree.
Decomposition decompose_co(const DominanceOrder& order, const QTElem& z,
                           const BasisLookup& basis, const Bidegree& window,
                           const DecomposeOptions& opts = {});

/// Sum of coeff * basis[key]; throws if a key is missing.
QTElem reconstruct(const Decomposition& d, const BasisLookup& basis, std::size_t dim);

/// Pivot coefficient is 1 and every other coefficient lies in v^-1 Z[v^-1].
bool is_m_unitriangular(const Decomposition& d, const ExpVec& pivot);

}  // namespace qcluster
