#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcluster/expansion.hpp"
#include "qcluster/matrix.hpp"
#include "qcluster/qtorus.hpp"
#include "qcluster/seed.hpp"

namespace qcluster {

/// Degree tropical transformation phi_{mu_k t, t}.
ExpVec trop_deg(const QuantumSeed& s, std::size_t k, const ExpVec& g);
/// Codegree tropical transformation.
ExpVec trop_codeg(const QuantumSeed& s, std::size_t k, const ExpVec& g);

/// Compositions along a word applied left to right, starting at s.
ExpVec trop_deg_word(const QuantumSeed& s, const Word& w, const ExpVec& g);
ExpVec trop_codeg_word(const QuantumSeed& s, const Word& w, const ExpVec& g);

/// psi_{t, mu_w t}: column i is the degree in t of X_i(mu_w t).
IntMatrix psi(const QuantumSeed& t, const Word& w);

ExpVec apply(const IntMatrix& m, const ExpVec& g);

/// Shift data of a seed t.
///
/// direction +1: t[1] = mu_word t and I_k(t) = X_{sigma[k]}(t[1]), pointed at
/// -f_k + u[k].
/// direction -1: t[-1] = mu_word t and P_k(t) = X_{sigma[k]}(t[-1]), copointed
/// at -f_k + u[k].
/// sigma is a permutation of all vertices fixing the frozen ones; u[k] is
/// supported on frozen vertices.
struct ShiftData {
  int direction = 1;
  Word word;
  std::vector<std::size_t> sigma;
  std::map<std::size_t, ExpVec> u;
};

/// Shift from a maximal green sequence (largest green vertex first). Returns
/// nullopt when no verified shift is found within max_steps mutations.
std::optional<ShiftData> find_shift(const QuantumSeed& t, int direction,
                                    std::size_t max_steps = 10000);

/// Empty string when sd is a valid shift of t, otherwise the first problem.
std::string verify_shift(const QuantumSeed& t, const ShiftData& sd);

/// Shift of node `node`. Falls back to a search over the graph when the green
/// sequence search fails. Throws NoneFound.
ShiftData detect_shift(const ExchangeGraph& g, std::size_t node, int direction);

/// I_k(t) (direction +1) or P_k(t) (direction -1), expanded in t, by vertex k.
std::map<std::size_t, QTElem> shift_vars(const QuantumSeed& t, const ShiftData& sd);
std::map<std::size_t, QTElem> i_vars(const QuantumSeed& t, const ShiftData& plus);
std::map<std::size_t, QTElem> p_vars(const QuantumSeed& t, const ShiftData& minus);

/// Normalized power product over the given exponents (ascending vertex order).
QTElem shift_power(const QuantumSeed& t, const std::map<std::size_t, QTElem>& vars,
                   const ExpVec& d, bool codegree_side);

/// Inj_g^t; throws InternalError when the frozen factor is not frozen.
QTElem inj_element(const QuantumSeed& t, const ShiftData& plus, const ExpVec& g);
/// Proj^{t,eta}; throws InternalError when the frozen factor is not frozen.
QTElem proj_element(const QuantumSeed& t, const ShiftData& minus, const ExpVec& eta);

/// Cluster monomial X(mu_w t)^m, expanded in t.
QTElem monomial_in(const QuantumSeed& t, const Word& w, const ExpVec& m);

/// Swap check for the cluster monomial X(mu_w t)^m: its codegree eta in t
/// maps under psi_{t[-1],t} to its degree in t[-1].
bool check_swap(const QuantumSeed& t, const ShiftData& minus, const Word& w, const ExpVec& m);

/// eta <=_t g iff psi eta >=_{t[-1]} psi g.
bool check_swap_order(const QuantumSeed& t, const ShiftData& minus, const ExpVec& g,
                      const ExpVec& eta);

/// phi_{t',t} psi_{t,t[1]} x == psi_{t',t'[1]} phi^op_{t'[1],t[1]} x for each
/// sample, where t' = mu_path t. Returns the failing samples.
std::vector<ExpVec> check_trop_commute(const QuantumSeed& t, const ShiftData& plus_t,
                                       const Word& path, const ShiftData& plus_tp,
                                       const std::vector<ExpVec>& samples);

/// Mutation word taking the labeled seed of node a to that of node b.
Word path_between(const ExchangeGraph& g, std::size_t a, std::size_t b);

/// Graph form of check_trop_commute.
std::vector<ExpVec> check_trop_commute(const ExchangeGraph& g, std::size_t t, std::size_t tp,
                                       const std::vector<ExpVec>& samples);

/// All +-f_i plus `random_count` vectors with entries in [-3, 3].
std::vector<ExpVec> default_samples(std::size_t n, std::size_t random_count, std::uint64_t seed);

/// Expansions of graph elements in the torus of every node. Keeps a
/// reference to the graph, which must outlive it.
class NodeTori {
 public:
  explicit NodeTori(const ExchangeGraph& g);

  const ExchangeGraph& graph() const { return g_; }
  /// Cluster monomial X(node)^m expanded in the torus of node `at`.
  QTElem monomial(std::size_t at, std::size_t node, const ExpVec& m) const;
  const DominanceOrder& order(std::size_t at) const { return *rebased_[at].reference; }
  /// Node `node` with its variables expanded in the torus of node `at`.
  const TrackedSeed& tracked(std::size_t at, std::size_t node) const {
    return rebased_[at].nodes[node].ts;
  }

 private:
  const ExchangeGraph& g_;
  std::vector<ExchangeGraph> rebased_;
};

struct CompatibilityFailure {
  std::size_t from;
  std::size_t to;
  std::string detail;
};

/// Checks deg at t' == phi_{t',t}(deg at t) (or the codegree mirror with
/// phi^op) for every ordered node pair.
std::vector<CompatibilityFailure> check_compatibly_pointed(const NodeTori& tori, std::size_t node,
                                                           const ExpVec& m, bool codegree = false);

}  // namespace qcluster
