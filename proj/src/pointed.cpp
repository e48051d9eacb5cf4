#include "qcluster/pointed.hpp"

#include <algorithm>
#include <random>

#include "qcluster/errors.hpp"

namespace qcluster {

DominanceOrder::DominanceOrder(const QuantumSeed& s) : seed_(s), solver_(s.B) {}

std::optional<std::vector<std::int64_t>> DominanceOrder::difference(const ExpVec& gp,
                                                                    const ExpVec& g) const {
  if (gp.dim() != seed_.n || g.dim() != seed_.n)
    throw DimensionMismatch("dominance comparison of vectors with wrong dimension");
  return solver_.solve((gp - g).entries());
}

bool DominanceOrder::leq(const ExpVec& gp, const ExpVec& g) const {
  auto n = difference(gp, g);
  return n && std::all_of(n->begin(), n->end(), [](std::int64_t x) { return x >= 0; });
}

std::vector<ExpVec> DominanceOrder::interval(const ExpVec& lo, const ExpVec& hi) const {
  std::vector<ExpVec> out;
  auto total = difference(lo, hi);
  if (!total) return out;
  for (auto x : *total)
    if (x < 0) return out;
  // g'' = hi + B~ n'' with 0 <= n'' <= total componentwise.
  const std::size_t r = total->size();
  std::vector<std::int64_t> cur(r, 0);
  while (true) {
    out.emplace_back(hi + ExpVec(seed_.B.apply(cur)));
    std::size_t pos = 0;
    while (pos < r && cur[pos] == (*total)[pos]) cur[pos++] = 0;
    if (pos == r) break;
    ++cur[pos];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool dominance_leq(const QuantumSeed& s, const ExpVec& gp, const ExpVec& g) {
  return DominanceOrder(s).leq(gp, g);
}

std::vector<ExpVec> maximal_support(const DominanceOrder& order, const QTElem& z) {
  std::vector<ExpVec> out;
  for (const auto& [m, c] : z.terms()) {
    bool dominated = false;
    for (const auto& [m2, c2] : z.terms())
      if (order.less(m, m2)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(m);
  }
  return out;
}

std::vector<ExpVec> minimal_support(const DominanceOrder& order, const QTElem& z) {
  std::vector<ExpVec> out;
  for (const auto& [m, c] : z.terms()) {
    bool dominating = false;
    for (const auto& [m2, c2] : z.terms())
      if (order.less(m2, m)) {
        dominating = true;
        break;
      }
    if (!dominating) out.push_back(m);
  }
  return out;
}

std::optional<ExpVec> degree(const DominanceOrder& order, const QTElem& z) {
  if (z.is_zero()) throw PreconditionError("degree of zero element");
  auto mx = maximal_support(order, z);
  if (mx.size() != 1) return std::nullopt;
  return mx.front();
}

std::optional<ExpVec> codegree(const DominanceOrder& order, const QTElem& z) {
  if (z.is_zero()) throw PreconditionError("codegree of zero element");
  auto mn = minimal_support(order, z);
  if (mn.size() != 1) return std::nullopt;
  return mn.front();
}

std::optional<ExpVec> degree(const QuantumSeed& s, const QTElem& z) {
  return degree(DominanceOrder(s), z);
}

std::optional<ExpVec> codegree(const QuantumSeed& s, const QTElem& z) {
  return codegree(DominanceOrder(s), z);
}

namespace {

QTElem divide_by_unit(const QTElem& z, const VCoeff& c) {
  const std::int64_t a = c.unit_exponent();
  const bool negative = c.terms().begin()->second < 0;
  return z.scaled(VCoeff::monomial(-a, negative ? -1 : 1));
}

}  // namespace

QTElem normalize_deg(const DominanceOrder& order, const QTElem& z) {
  auto g = degree(order, z);
  if (!g) throw PreconditionError("normalize_deg: element has no degree");
  return divide_by_unit(z, z.coeff(*g));
}

QTElem normalize_codeg(const DominanceOrder& order, const QTElem& z) {
  auto e = codegree(order, z);
  if (!e) throw PreconditionError("normalize_codeg: element has no codegree");
  return divide_by_unit(z, z.coeff(*e));
}

bool is_pointed(const DominanceOrder& order, const QTElem& z) {
  if (z.is_zero()) return false;
  auto g = degree(order, z);
  return g && z.coeff(*g).is_one();
}

bool is_copointed(const DominanceOrder& order, const QTElem& z) {
  if (z.is_zero()) return false;
  auto e = codegree(order, z);
  return e && z.coeff(*e).is_one();
}

std::optional<Bidegree> bidegree(const DominanceOrder& order, const QTElem& z) {
  auto g = degree(order, z);
  auto e = codegree(order, z);
  if (!g || !e) return std::nullopt;
  return Bidegree{*g, *e};
}

BasisLookup lookup_in(const PointedSet& set) {
  return [&set](const ExpVec& g) -> const QTElem* {
    auto it = set.find(g);
    return it == set.end() ? nullptr : &it->second;
  };
}

VCoeff Decomposition::coeff(const ExpVec& key) const {
  for (const auto& [k, c] : terms)
    if (k == key) return c;
  return {};
}

std::vector<std::pair<ExpVec, VCoeff>> Decomposition::sorted_terms() const {
  auto t = terms;
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return t;
}

namespace {

enum class Side { Degree, Codegree };

Decomposition run_decomposition(const DominanceOrder& order, const QTElem& z,
                                const BasisLookup& basis, const Bidegree& window,
                                const DecomposeOptions& opts, Side side) {
  Decomposition d;
  auto indeterminate = [&d](std::string why) {
    d.status = Decomposition::Status::Indeterminate;
    d.reason = std::move(why);
    return d;
  };
  std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
  QTElem rem = z;
  for (std::size_t iter = 0; !rem.is_zero(); ++iter) {
    if (iter >= opts.max_iterations) return indeterminate("iteration cap reached");
    auto extremal = side == Side::Degree ? maximal_support(order, rem) : minimal_support(order, rem);
    // maximal_support/minimal_support return lex-ascending candidates.
    std::size_t pick = 0;
    if (opts.shuffle_seed && extremal.size() > 1) pick = rng() % extremal.size();
    const ExpVec g = extremal[pick];
    if (!order.leq(window.codeg, g) || !order.leq(g, window.deg))
      return indeterminate("term " + g.to_string() + " escapes the window [" +
                           window.codeg.to_string() + ", " + window.deg.to_string() + "]");
    const QTElem* elem = basis(g);
    if (elem == nullptr) return indeterminate("no basis element at " + g.to_string());
    const VCoeff c = rem.coeff(g);
    auto same = std::find_if(d.terms.begin(), d.terms.end(),
                             [&g](const auto& t) { return t.first == g; });
    if (same == d.terms.end()) {
      d.terms.emplace_back(g, c);
    } else {
      same->second += c;
    }
    rem -= elem->scaled(c);
    if (!rem.coeff(g).is_zero())
      return indeterminate("basis element at " + g.to_string() + " is not normalized there");
  }
  return d;
}

}  // namespace

Decomposition decompose(const DominanceOrder& order, const QTElem& z, const BasisLookup& basis,
                        const Bidegree& window, const DecomposeOptions& opts) {
  return run_decomposition(order, z, basis, window, opts, Side::Degree);
}

Decomposition decompose_co(const DominanceOrder& order, const QTElem& z,
                           const BasisLookup& basis, const Bidegree& window,
                           const DecomposeOptions& opts) {
  return run_decomposition(order, z, basis, window, opts, Side::Codegree);
}

QTElem reconstruct(const Decomposition& d, const BasisLookup& basis, std::size_t dim) {
  QTElem sum(dim);
  for (const auto& [k, c] : d.terms) {
    const QTElem* e = basis(k);
    if (e == nullptr) throw PreconditionError("reconstruct: missing basis element " + k.to_string());
    sum += e->scaled(c);
  }
  return sum;
}

bool is_m_unitriangular(const Decomposition& d, const ExpVec& pivot) {
  if (!d.exact()) return false;
  bool pivot_seen = false;
  for (const auto& [k, c] : d.terms) {
    if (k == pivot) {
      if (!c.is_one()) return false;
      pivot_seen = true;
    } else if (!in_m(c)) {
      return false;
    }
  }
  return pivot_seen;
}

}  // namespace qcluster
