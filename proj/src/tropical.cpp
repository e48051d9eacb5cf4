#include "qcluster/tropical.hpp"

#include <algorithm>
#include <random>

#include "qcluster/errors.hpp"
#include "qcluster/pointed.hpp"

namespace qcluster {

namespace {

bool frozen_supported(const QuantumSeed& s, const ExpVec& u) {
  for (std::size_t k : s.unfrozen)
    if (u[k] != 0) return false;
  return true;
}

std::int64_t pos(std::int64_t x) { return x > 0 ? x : 0; }

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Mutation of an extended exchange matrix whose first rows are indexed by
// the unfrozen columns.
void mutate_matrix(IntMatrix& m, std::size_t c) {
  IntMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == c || j == c) {
        out(i, j) = -m(i, j);
      } else {
        out(i, j) = m(i, j) + pos(m(i, c)) * pos(m(c, j)) - pos(-m(i, c)) * pos(-m(c, j));
      }
    }
  m = out;
}

// Maximal green sequence with the largest green column first.
std::optional<Word> green_to_red(const QuantumSeed& t, std::size_t max_steps) {
  const std::size_t r = t.rank();
  IntMatrix m(2 * r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t c = 0; c < r; ++c) m(a, c) = t.B(t.unfrozen[a], c);
  for (std::size_t a = 0; a < r; ++a) m(r + a, a) = 1;
  Word w;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    std::optional<std::size_t> green;
    for (std::size_t c = r; c-- > 0;) {
      bool nonneg = true;
      for (std::size_t a = 0; a < r; ++a) nonneg = nonneg && m(r + a, c) >= 0;
      if (nonneg) {
        green = c;
        break;
      }
    }
    if (!green) return w;
    mutate_matrix(m, *green);
    w.push_back(t.unfrozen[*green]);
  }
  return std::nullopt;
}

// Matches each unfrozen k to the unfrozen position p whose extremal degree
// equals -f_k plus a frozen vector.
std::optional<ShiftData> match_pattern(const QuantumSeed& t, const std::vector<ExpVec>& degs,
                                       int direction, const Word& w) {
  ShiftData sd;
  sd.direction = direction;
  sd.word = w;
  sd.sigma.resize(t.n);
  for (std::size_t i = 0; i < t.n; ++i) sd.sigma[i] = i;
  std::vector<bool> used(t.n, false);
  for (std::size_t k : t.unfrozen) {
    bool found = false;
    for (std::size_t p : t.unfrozen) {
      const ExpVec u = degs[p] + ExpVec::unit(t.n, k);
      if (!used[p] && frozen_supported(t, u)) {
        sd.sigma[k] = p;
        sd.u[k] = u;
        used[p] = true;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return sd;
}

bool b_condition(const QuantumSeed& t, const QuantumSeed& shifted,
                 const std::vector<std::size_t>& sigma) {
  for (std::size_t i : t.unfrozen)
    for (std::size_t j : t.unfrozen)
      if (shifted.b(sigma[i], sigma[j]) != t.b(i, j)) return false;
  return true;
}

std::optional<ShiftData> shift_from_word(const QuantumSeed& t, int direction, const Word& w) {
  const TrackedSeed ts = apply_word(initial_tracked(t), w);
  if (direction > 0) {
    auto sd = match_pattern(t, ts.degrees, 1, w);
    if (!sd || !b_condition(t, ts.seed, sd->sigma)) return std::nullopt;
    return sd;
  }
  std::vector<ExpVec> codegs;
  for (const auto& x : ts.vars) {
    auto c = codegree(*ts.reference, x);
    if (!c) return std::nullopt;
    codegs.push_back(*c);
  }
  auto sd = match_pattern(t, codegs, -1, w);
  if (!sd) return std::nullopt;
  // t must be shifted from t[-1] by +1 with sigma^-1 inverting sd->sigma.
  auto back = shift_from_word(ts.seed, 1, reversed(w));
  if (!back) return std::nullopt;
  for (std::size_t k : t.unfrozen)
    if (back->sigma[sd->sigma[k]] != k) return std::nullopt;
  return sd;
}

}  // namespace

ExpVec trop_deg(const QuantumSeed& s, std::size_t k, const ExpVec& g) {
  ExpVec out = g;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (i == k) {
      out[i] = -g[k];
      continue;
    }
    const std::int64_t b = s.b(i, k);
    out[i] = g[i] + b * (b >= 0 ? pos(g[k]) : pos(-g[k]));
  }
  return out;
}

ExpVec trop_codeg(const QuantumSeed& s, std::size_t k, const ExpVec& g) {
  ExpVec out = g;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (i == k) {
      out[i] = -g[k];
      continue;
    }
    const std::int64_t b = s.b(i, k);
    out[i] = g[i] - b * (b <= 0 ? pos(g[k]) : pos(-g[k]));
  }
  return out;
}

ExpVec trop_deg_word(const QuantumSeed& s, const Word& w, const ExpVec& g) {
  QuantumSeed cur = s;
  ExpVec x = g;
  for (std::size_t k : w) {
    x = trop_deg(cur, k, x);
    cur = mutate_seed(cur, k);
  }
  return x;
}

ExpVec trop_codeg_word(const QuantumSeed& s, const Word& w, const ExpVec& g) {
  QuantumSeed cur = s;
  ExpVec x = g;
  for (std::size_t k : w) {
    x = trop_codeg(cur, k, x);
    cur = mutate_seed(cur, k);
  }
  return x;
}

IntMatrix psi(const QuantumSeed& t, const Word& w) {
  const TrackedSeed ts = apply_word(initial_tracked(t), w);
  IntMatrix m(t.n, t.n);
  for (std::size_t j = 0; j < t.n; ++j)
    for (std::size_t i = 0; i < t.n; ++i) m(i, j) = ts.degrees[j][i];
  return m;
}

ExpVec apply(const IntMatrix& m, const ExpVec& g) { return ExpVec(m.apply(g.entries())); }

std::optional<ShiftData> find_shift(const QuantumSeed& t, int direction, std::size_t max_steps) {
  auto w = green_to_red(t, max_steps);
  if (!w) return std::nullopt;
  auto plus = shift_from_word(t, 1, *w);
  if (!plus || direction > 0) return plus;
  // t[-1] = (sigma^-1 mu)^-1 t.
  std::vector<std::size_t> inv(t.n);
  for (std::size_t i = 0; i < t.n; ++i) inv[plus->sigma[i]] = i;
  Word mapped;
  for (std::size_t k : plus->word) mapped.push_back(inv[k]);
  return shift_from_word(t, -1, reversed(mapped));
}

std::string verify_shift(const QuantumSeed& t, const ShiftData& sd) {
  auto again = shift_from_word(t, sd.direction, sd.word);
  if (!again) return "word does not reach a shifted seed";
  if (again->sigma != sd.sigma) return "permutation does not match the degrees";
  if (again->u != sd.u) return "frozen corrections do not match";
  return {};
}

Word path_between(const ExchangeGraph& g, std::size_t a, std::size_t b) {
  return concat(reversed(g.nodes[a].ts.path), g.nodes[b].ts.path);
}

ShiftData detect_shift(const ExchangeGraph& g, std::size_t node, int direction) {
  const QuantumSeed& t = g.nodes[node].ts.seed;
  if (auto sd = find_shift(t, direction)) return *sd;
  for (std::size_t other = 0; other < g.size(); ++other) {
    const Word w = path_between(g, node, other);
    if (auto sd = shift_from_word(t, direction, w)) return *sd;
  }
  throw NoneFound("no shifted seed found for node " + std::to_string(node) +
                  (g.truncated ? " (graph truncated)" : ""));
}

std::map<std::size_t, QTElem> shift_vars(const QuantumSeed& t, const ShiftData& sd) {
  const TrackedSeed ts = apply_word(initial_tracked(t), sd.word);
  std::map<std::size_t, QTElem> out;
  for (std::size_t k : t.unfrozen) out.emplace(k, ts.vars[sd.sigma[k]]);
  return out;
}

std::map<std::size_t, QTElem> i_vars(const QuantumSeed& t, const ShiftData& plus) {
  if (plus.direction != 1) throw PreconditionError("I-variables need a +1 shift");
  return shift_vars(t, plus);
}

std::map<std::size_t, QTElem> p_vars(const QuantumSeed& t, const ShiftData& minus) {
  if (minus.direction != -1) throw PreconditionError("P-variables need a -1 shift");
  return shift_vars(t, minus);
}

QTElem shift_power(const QuantumSeed& t, const std::map<std::size_t, QTElem>& vars,
                   const ExpVec& d, bool codegree_side) {
  QTElem prod = QTElem::one(t.n);
  for (const auto& [k, x] : vars) {
    if (d[k] < 0) throw PreconditionError("negative exponent on a shifted variable");
    if (d[k] > 0) prod = twisted_mul(prod, twisted_pow(x, d[k], t.Lambda), t.Lambda);
  }
  const DominanceOrder ord(t);
  return codegree_side ? normalize_codeg(ord, prod) : normalize_deg(ord, prod);
}

namespace {

ExpVec unfrozen_negative_part(const QuantumSeed& t, const ExpVec& g) {
  ExpVec d(t.n);
  for (std::size_t k : t.unfrozen) d[k] = pos(-g[k]);
  return d;
}

}  // namespace

QTElem inj_element(const QuantumSeed& t, const ShiftData& plus, const ExpVec& g) {
  const DominanceOrder ord(t);
  const QTElem ipow = shift_power(t, i_vars(t, plus), unfrozen_negative_part(t, g), false);
  const QTElem a = twisted_mul(QTElem::monomial(positive_part(g)), ipow, t.Lambda);
  const ExpVec u = g - *degree(ord, a);
  if (!frozen_supported(t, u))
    throw InternalError("frozen factor " + u.to_string() + " is not frozen");
  return normalize_deg(ord, twisted_mul(QTElem::monomial(u), a, t.Lambda));
}

QTElem proj_element(const QuantumSeed& t, const ShiftData& minus, const ExpVec& eta) {
  const DominanceOrder ord(t);
  const QTElem ppow = shift_power(t, p_vars(t, minus), unfrozen_negative_part(t, eta), true);
  const QTElem a = twisted_mul(ppow, QTElem::monomial(positive_part(eta)), t.Lambda);
  const ExpVec u = eta - *codegree(ord, a);
  if (!frozen_supported(t, u))
    throw InternalError("frozen factor " + u.to_string() + " is not frozen");
  return normalize_codeg(ord, twisted_mul(a, QTElem::monomial(u), t.Lambda));
}

QTElem monomial_in(const QuantumSeed& t, const Word& w, const ExpVec& m) {
  return cluster_monomial(apply_word(initial_tracked(t), w), m);
}

bool check_swap(const QuantumSeed& t, const ShiftData& minus, const Word& w, const ExpVec& m) {
  const QTElem z = monomial_in(t, w, m);
  const auto eta = codegree(DominanceOrder(t), z);
  const QuantumSeed tm = mutate_seed(t, minus.word);
  const Word back = reversed(minus.word);
  const QTElem zm = monomial_in(tm, concat(back, w), m);
  const auto deg = degree(DominanceOrder(tm), zm);
  if (eta.has_value() != deg.has_value()) return false;
  return !eta || apply(psi(tm, back), *eta) == *deg;
}

bool check_swap_order(const QuantumSeed& t, const ShiftData& minus, const ExpVec& g,
                      const ExpVec& eta) {
  const QuantumSeed tm = mutate_seed(t, minus.word);
  const IntMatrix p = psi(tm, reversed(minus.word));
  return DominanceOrder(t).leq(eta, g) == DominanceOrder(tm).leq(apply(p, g), apply(p, eta));
}

std::vector<ExpVec> check_trop_commute(const QuantumSeed& t, const ShiftData& plus_t,
                                       const Word& path, const ShiftData& plus_tp,
                                       const std::vector<ExpVec>& samples) {
  const QuantumSeed tp = mutate_seed(t, path);
  const QuantumSeed t1 = mutate_seed(t, plus_t.word);
  const IntMatrix psi_t = psi(t, plus_t.word);
  const IntMatrix psi_tp = psi(tp, plus_tp.word);
  const Word op_path = concat(concat(reversed(plus_t.word), path), plus_tp.word);
  std::vector<ExpVec> bad;
  for (const auto& x : samples) {
    const ExpVec lhs = trop_deg_word(t, path, apply(psi_t, x));
    const ExpVec rhs = apply(psi_tp, trop_codeg_word(t1, op_path, x));
    if (lhs != rhs) bad.push_back(x);
  }
  return bad;
}

std::vector<ExpVec> check_trop_commute(const ExchangeGraph& g, std::size_t t, std::size_t tp,
                                       const std::vector<ExpVec>& samples) {
  return check_trop_commute(g.nodes[t].ts.seed, detect_shift(g, t, 1), path_between(g, t, tp),
                            detect_shift(g, tp, 1), samples);
}

std::vector<ExpVec> default_samples(std::size_t n, std::size_t random_count, std::uint64_t seed) {
  std::vector<ExpVec> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(ExpVec::unit(n, i));
    out.push_back(-ExpVec::unit(n, i));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) {
    ExpVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::int64_t>(rng() % 7) - 3;
    out.push_back(x);
  }
  return out;
}

NodeTori::NodeTori(const ExchangeGraph& g) : g_(g) {
  rebased_.reserve(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) rebased_.push_back(rebase(g, a));
}

QTElem NodeTori::monomial(std::size_t at, std::size_t node, const ExpVec& m) const {
  return cluster_monomial(rebased_[at].nodes[node].ts, m);
}

std::vector<CompatibilityFailure> check_compatibly_pointed(const NodeTori& tori, std::size_t node,
                                                           const ExpVec& m, bool codegree_side) {
  const ExchangeGraph& g = tori.graph();
  std::vector<std::optional<ExpVec>> ext(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    const QTElem z = tori.monomial(a, node, m);
    ext[a] = codegree_side ? codegree(tori.order(a), z) : degree(tori.order(a), z);
  }
  std::vector<CompatibilityFailure> bad;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (a == b) continue;
      if (!ext[a] || !ext[b]) {
        bad.push_back({a, b, "missing extremal degree"});
        continue;
      }
      const QuantumSeed& sa = g.nodes[a].ts.seed;
      const Word w = path_between(g, a, b);
      const ExpVec want = codegree_side ? trop_codeg_word(sa, w, *ext[a]) : trop_deg_word(sa, w, *ext[a]);
      if (want != *ext[b])
        bad.push_back({a, b, "expected " + want.to_string() + ", found " + ext[b]->to_string()});
    }
  return bad;
}

}  // namespace qcluster
