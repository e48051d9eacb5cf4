#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcluster/matrix.hpp"
#include "qcluster/qtorus.hpp"

namespace qcluster {

/// A quantum seed (B~, Lambda) over vertices I = I_uf + I_f.
///
/// Vertices are 0-based. `B` has one row per vertex and one column per
/// unfrozen vertex, in the order given by `unfrozen`. `D` holds the
/// skew-symmetrizer delta_k, one entry per unfrozen vertex, and is fixed for
/// the lifetime of a mutation class.
struct QuantumSeed {
  std::size_t n = 0;
  std::vector<std::size_t> unfrozen;  // sorted
  IntMatrix B;
  IntMatrix Lambda;
  std::vector<std::int64_t> D;

  std::size_t rank() const { return unfrozen.size(); }
  bool is_unfrozen(std::size_t i) const;
  /// Column of B belonging to unfrozen vertex k; throws if k is frozen.
  std::size_t column_of(std::size_t k) const;
  std::vector<std::size_t> frozen() const;
  /// b_{ik} for vertex i and unfrozen vertex k.
  std::int64_t b(std::size_t i, std::size_t k) const { return B(i, column_of(k)); }

  friend bool operator==(const QuantumSeed&, const QuantumSeed&) = default;
};

/// Builds a seed, validating shapes only (not compatibility).
QuantumSeed make_seed(std::size_t n, std::vector<std::size_t> unfrozen, IntMatrix B,
                      IntMatrix Lambda, std::vector<std::int64_t> D);

/// lambda(g, g') = g^T Lambda g'.
std::int64_t lambda(const QuantumSeed& s, const ExpVec& g, const ExpVec& gp);

struct CompatibilityReport {
  bool ok = false;
  std::string diagnostic;  // names the first violated entry when !ok
};

/// B~^T Lambda == (D 0), Lambda skew-symmetric, D > 0, B~ of full column rank.
CompatibilityReport check_compatible(const QuantumSeed& s);

/// mu_k(s). Lambda' = E^T Lambda E is computed for both sign conventions of the
/// elementary matrix E and required to agree; the result must be compatible
/// with the same D. Violations throw InternalError.
QuantumSeed mutate_seed(const QuantumSeed& s, std::size_t k);

/// Applies mutations left to right.
QuantumSeed mutate_seed(const QuantumSeed& s, const std::vector<std::size_t>& word);

/// p* n = B~ n for n supported on I_uf (given as a full-length ExpVec).
ExpVec p_star(const QuantumSeed& s, const ExpVec& n);

/// The Y-monomial X^{p* n}.
QTElem y_variable(const QuantumSeed& s, const ExpVec& n);

/// (-B~, -Lambda), same D.
QuantumSeed opposite_seed(const QuantumSeed& s);

struct CompatiblePair {
  IntMatrix Lambda;
  std::vector<std::int64_t> D;
};

/// Finds an integral skew-symmetric Lambda with B~^T Lambda = (D 0), taking
/// the lexicographically smallest D with entries in [1, bound]. Throws
/// PreconditionError if B~ lacks full column rank, NoneFound if no D works.
CompatiblePair find_compatible_lambda(const IntMatrix& Btilde,
                                      const std::vector<std::size_t>& unfrozen,
                                      std::int64_t bound = 8);

}  // namespace qcluster
