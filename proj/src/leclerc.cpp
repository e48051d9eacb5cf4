#include "qcluster/leclerc.hpp"

#include <map>
#include <optional>
#include <set>

#include "qcluster/errors.hpp"

namespace qcluster {

namespace {

// Exponents with entries in [lo_i, hi_i], lex ascending.
std::vector<ExpVec> exponent_box(const std::vector<std::int64_t>& lo,
                                 const std::vector<std::int64_t>& hi) {
  std::vector<ExpVec> out;
  ExpVec e(lo);
  const std::size_t n = lo.size();
  while (true) {
    out.push_back(e);
    std::size_t i = n;
    while (i > 0 && e[i - 1] == hi[i - 1]) {
      e[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return out;
    ++e[i - 1];
  }
}

std::vector<ExpVec> seed_exponents(const QuantumSeed& s, std::int64_t cap, std::int64_t window) {
  std::vector<std::int64_t> lo(s.n), hi(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    lo[i] = s.is_unfrozen(i) ? 0 : -window;
    hi[i] = s.is_unfrozen(i) ? cap : window;
  }
  return exponent_box(lo, hi);
}

// Inserts z under key, recording a conflict when a different element is there.
void insert_keyed(PointedSet& set, std::map<ExpVec, Provenance>* prov,
                  std::vector<DegreeConflict>& conflicts, const ExpVec& key, const QTElem& z,
                  const Provenance& p, const std::map<ExpVec, Provenance>& owners) {
  auto it = set.find(key);
  if (it == set.end()) {
    set.emplace(key, z);
    if (prov) prov->emplace(key, p);
    return;
  }
  if (it->second != z) {
    auto o = owners.find(key);
    conflicts.push_back({key, o != owners.end() ? o->second : Provenance{}, p});
  }
}

std::string provenance_text(const Provenance& p) {
  return "node " + std::to_string(p.node) + " exponent " + p.exponent.to_string();
}

}  // namespace

CandidateBasis enumerate_basis(const ExchangeGraph& g, std::int64_t unfrozen_cap,
                               std::int64_t frozen_window) {
  if (g.truncated)
    throw PreconditionError("exchange graph is truncated; not finite type within cap");
  CandidateBasis b;
  b.tori = std::make_shared<const NodeTori>(g);
  const DominanceOrder& ord = b.tori->order(0);
  std::map<ExpVec, Provenance> codeg_owner;
  for (std::size_t node = 0; node < g.size(); ++node) {
    for (const auto& m : seed_exponents(g.nodes[node].ts.seed, unfrozen_cap, frozen_window)) {
      const QTElem z = b.tori->monomial(0, node, m);
      const auto bd = bidegree(ord, z);
      if (!bd) throw InternalError("cluster monomial is not bipointed: " + provenance_text({node, m}));
      const Provenance p{node, m};
      const bool fresh = !b.by_degree.count(bd->deg);
      insert_keyed(b.by_degree, &b.provenance, b.conflicts, bd->deg, z, p, b.provenance);
      if (fresh) insert_keyed(b.by_codegree, &codeg_owner, b.conflicts, bd->codeg, z, p, codeg_owner);
    }
  }
  return b;
}

TorusBasis::TorusBasis(const CandidateBasis& basis, std::size_t at) : basis_(basis), at_(at) {
  const NodeTori& tori = *basis.tori;
  const DominanceOrder& ord = tori.order(at);
  std::map<ExpVec, Provenance> codeg_owner;
  for (const auto& [key, p] : basis.provenance) {
    const QTElem z = tori.monomial(at, p.node, p.exponent);
    const auto bd = bidegree(ord, z);
    if (!bd) throw InternalError("cluster monomial is not bipointed: " + provenance_text(p));
    elements_.emplace_back(p, z);
    insert_keyed(by_degree_, &provenance_, conflicts_, bd->deg, z, p, provenance_);
    insert_keyed(by_codegree_, &codeg_owner, conflicts_, bd->codeg, z, p, codeg_owner);
  }
  const std::size_t n = seed().n;
  for (std::size_t node = 0; node < basis.graph().size(); ++node) {
    const TrackedSeed& ts = tori.tracked(at, node);
    IntMatrix dm(n, n), cm(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = codegree(ord, ts.vars[j]);
      if (!c) throw InternalError("cluster variable without codegree");
      for (std::size_t i = 0; i < n; ++i) {
        dm(i, j) = ts.degrees[j][i];
        cm(i, j) = (*c)[i];
      }
    }
    deg_solvers_.emplace_back(dm);
    codeg_solvers_.emplace_back(cm);
  }
}

const QuantumSeed& TorusBasis::seed() const { return order().seed(); }
const DominanceOrder& TorusBasis::order() const { return basis_.tori->order(at_); }

QTElem TorusBasis::element(const Provenance& p) const {
  return basis_.tori->monomial(at_, p.node, p.exponent);
}

const Provenance* TorusBasis::provenance(const ExpVec& deg) const {
  auto it = provenance_.find(deg);
  return it == provenance_.end() ? nullptr : &it->second;
}

std::optional<Provenance> TorusBasis::solve(const ExpVec& key, bool codegree_side) const {
  const auto& solvers = codegree_side ? codeg_solvers_ : deg_solvers_;
  for (std::size_t node = 0; node < solvers.size(); ++node) {
    auto m = solvers[node].solve(key.entries());
    if (!m) continue;
    const QuantumSeed& s = basis_.graph().nodes[node].ts.seed;
    bool ok = true;
    for (std::size_t k : s.unfrozen) ok = ok && (*m)[k] >= 0;
    if (ok) return Provenance{node, ExpVec(*m)};
  }
  return std::nullopt;
}

const QTElem* TorusBasis::find_degree(const ExpVec& g) const {
  if (auto it = by_degree_.find(g); it != by_degree_.end()) return &it->second;
  if (auto it = extra_degree_.find(g); it != extra_degree_.end()) return &it->second;
  const auto p = solve(g, false);
  if (!p) return nullptr;
  const QTElem z = element(*p);
  if (degree(order(), z) != g) throw InternalError("cone solve produced a wrong degree");
  return &extra_degree_.emplace(g, z).first->second;
}

const QTElem* TorusBasis::find_codegree(const ExpVec& eta) const {
  if (auto it = by_codegree_.find(eta); it != by_codegree_.end()) return &it->second;
  if (auto it = extra_codegree_.find(eta); it != extra_codegree_.end()) return &it->second;
  const auto p = solve(eta, true);
  if (!p) return nullptr;
  const QTElem z = element(*p);
  if (codegree(order(), z) != eta) throw InternalError("cone solve produced a wrong codegree");
  return &extra_codegree_.emplace(eta, z).first->second;
}

BasisLookup TorusBasis::degree_lookup() const {
  return [this](const ExpVec& g) { return find_degree(g); };
}

BasisLookup TorusBasis::codegree_lookup() const {
  return [this](const ExpVec& eta) { return find_codegree(eta); };
}

namespace {

TriangularReport check_triangular(const TorusBasis& tb, bool codegree_side) {
  TriangularReport rep;
  const DominanceOrder& ord = tb.order();
  const QuantumSeed& s = tb.seed();
  const BasisLookup lookup = codegree_side ? tb.codegree_lookup() : tb.degree_lookup();
  const PointedSet& keyed = codegree_side ? tb.by_codegree() : tb.by_degree();
  for (std::size_t i = 0; i < s.n; ++i) {
    const QTElem xi = QTElem::monomial(ExpVec::unit(s.n, i));
    for (const auto& [key, l] : keyed) {
      TriangularEntry e{i, key, {}, {}, false};
      e.product = codegree_side ? normalize_codeg(ord, twisted_mul(l, xi, s.Lambda))
                                : normalize_deg(ord, twisted_mul(xi, l, s.Lambda));
      const auto bd = bidegree(ord, e.product);
      const std::string where = "vertex " + std::to_string(i + 1) + ", key " + key.to_string();
      if (!bd) {
        ++rep.indeterminate;
        rep.witnesses.push_back(where + ": product is not bipointed");
        rep.entries.push_back(std::move(e));
        continue;
      }
      e.decomposition = codegree_side ? decompose_co(ord, e.product, lookup, *bd)
                                      : decompose(ord, e.product, lookup, *bd);
      if (!e.decomposition.exact()) {
        ++rep.indeterminate;
        rep.witnesses.push_back(where + ": " + e.decomposition.reason);
      } else {
        const ExpVec pivot = key + ExpVec::unit(s.n, i);
        e.unitriangular = is_m_unitriangular(e.decomposition, pivot) &&
                          reconstruct(e.decomposition, lookup, s.n) == e.product;
        if (e.unitriangular) {
          ++rep.pass;
        } else {
          ++rep.fail;
          rep.witnesses.push_back(where + ": not unitriangular at pivot " + pivot.to_string());
        }
      }
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

}  // namespace

TriangularReport check_degree_triangular(const TorusBasis& tb) { return check_triangular(tb, false); }
TriangularReport check_codegree_triangular(const TorusBasis& tb) { return check_triangular(tb, true); }

bool LeclercVerdict::passed() const {
  if (kind == Case::Indeterminate) return false;
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return true;
}

std::string to_string(LeclercVerdict::Case c) {
  switch (c) {
    case LeclercVerdict::Case::InBasis:
      return "InBasis";
    case LeclercVerdict::Case::TwoTail:
      return "TwoTail";
    case LeclercVerdict::Case::Indeterminate:
      break;
  }
  return "Indeterminate";
}

LeclercVerdict verify_pair(const TorusBasis& tb, const QTElem& r, const QTElem& v,
                           std::optional<std::size_t> single_variable) {
  LeclercVerdict out;
  const DominanceOrder& ord = tb.order();
  const QuantumSeed& s = tb.seed();
  auto indeterminate = [&](std::string why) {
    out.kind = LeclercVerdict::Case::Indeterminate;
    out.reason = std::move(why);
    return out;
  };
  const auto deg_r = degree(ord, r);
  if (!deg_r) return indeterminate("R has no degree");
  const auto gamma = degree(ord, v);
  const auto eta = codegree(ord, v);
  if (!gamma || !eta) return indeterminate("V is not bipointed");
  const QTElem prod = twisted_mul(r, v, s.Lambda);
  const auto bd = bidegree(ord, prod);
  if (!bd) return indeterminate("R*V is not bipointed");
  const BasisLookup lookup = tb.degree_lookup();
  const Decomposition dec = decompose(ord, prod, lookup, *bd);
  if (!dec.exact()) return indeterminate(dec.reason);
  out.checks.emplace_back("roundtrip", reconstruct(dec, lookup, s.n) == prod);

  const auto n = ord.difference(*eta, *gamma);
  if (!n) return indeterminate("codeg V is not below deg V");
  std::optional<bool> n_i_zero;
  if (single_variable) n_i_zero = (*n)[s.column_of(*single_variable)] == 0;

  if (dec.terms.size() == 1 && dec.terms.front().second.is_unit()) {
    out.kind = LeclercVerdict::Case::InBasis;
    out.S = out.H = dec.terms.front().first;
    out.s = out.h = dec.terms.front().second.unit_exponent();
    if (n_i_zero) out.checks.emplace_back("in_basis_criterion", *n_i_zero);
    return out;
  }

  out.kind = LeclercVerdict::Case::TwoTail;
  out.S = bd->deg;
  const VCoeff c_s = dec.coeff(out.S);
  std::vector<std::pair<ExpVec, ExpVec>> codegs;  // degree key -> codegree of its element
  std::size_t h_hits = 0;
  for (const auto& [key, c] : dec.terms) {
    const auto ce = codegree(ord, *lookup(key));
    if (!ce) return indeterminate("basis element " + key.to_string() + " has no codegree");
    codegs.emplace_back(key, *ce);
    if (*ce == bd->codeg) {
      out.H = key;
      ++h_hits;
    }
  }
  const VCoeff c_h = dec.coeff(out.H);
  out.checks.emplace_back("extremal_terms", h_hits == 1 && out.H != out.S && c_s.is_unit() &&
                                                c_h.is_unit());
  if (c_s.is_unit()) out.s = c_s.unit_exponent();
  if (c_h.is_unit()) out.h = c_h.unit_exponent();

  out.checks.emplace_back("s_matches_lambda", c_s == VCoeff::vpow(bilinear(s.Lambda, *deg_r, *gamma)));
  out.checks.emplace_back("h_matches_lambda", c_h == VCoeff::vpow(bilinear(s.Lambda, *deg_r, *eta)));

  bool deg_ok = true, codeg_ok = true, window_ok = true;
  ExpVec codeg_h;
  for (const auto& [key, ce] : codegs)
    if (key == out.H) codeg_h = ce;
  for (const auto& [key, ce] : codegs) {
    if (key != out.S) deg_ok = deg_ok && ord.less(key, out.S);
    if (key != out.H) codeg_ok = codeg_ok && ord.less(codeg_h, ce);
  }
  for (const auto& [key, c] : dec.sorted_terms()) {
    if (key == out.S || key == out.H) continue;
    out.middle.emplace_back(key, c);
    window_ok = window_ok && in_window(c, out.h + 1, out.s - 1);
  }
  out.checks.emplace_back("deg_dominance", deg_ok);
  out.checks.emplace_back("codeg_dominance", codeg_ok);
  out.checks.emplace_back("coeff_window", window_ok);

  const QTElem barred = bar(prod);
  const Decomposition bdec = decompose(ord, barred, lookup, *bd);
  bool bar_ok = bdec.exact() && barred == twisted_mul(v, r, s.Lambda);
  if (bar_ok) {
    auto want = dec.sorted_terms();
    for (auto& [key, c] : want) c = c.bar();
    bar_ok = bdec.sorted_terms() == want;
  }
  out.checks.emplace_back("bar_consistency", bar_ok);
  out.checks.emplace_back("s_gt_h", out.s > out.h);

  ExpVec bn(s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t c = 0; c < s.rank(); ++c) bn[i] += s.B(i, c) * (*n)[c];
  out.checks.emplace_back("s_minus_h", out.s - out.h == -bilinear(s.Lambda, *deg_r, bn));
  if (n_i_zero) out.checks.emplace_back("in_basis_criterion", !*n_i_zero);
  return out;
}

namespace {

void tally(TheoremReport& rep, PairRecord rec) {
  switch (rec.verdict.kind) {
    case LeclercVerdict::Case::InBasis:
      ++(rec.verdict.passed() ? rep.in_basis : rep.in_basis_fail);
      break;
    case LeclercVerdict::Case::TwoTail:
      ++(rec.verdict.passed() ? rep.two_tail_pass : rep.two_tail_fail);
      break;
    case LeclercVerdict::Case::Indeterminate:
      ++rep.indeterminate;
      break;
  }
  rep.pairs.push_back(std::move(rec));
}

}  // namespace

TheoremReport verify_theorem(const CandidateBasis& basis, const std::vector<std::size_t>& scope,
                             std::int64_t r_cap) {
  TheoremReport rep;
  for (std::size_t node : scope) {
    if (node >= basis.graph().size()) throw PreconditionError("node out of range in scope");
    const TorusBasis tb(basis, node);
    const QuantumSeed& s = tb.seed();
    std::set<ExpVec> r_exps;
    for (std::size_t i = 0; i < s.n; ++i) r_exps.insert(ExpVec::unit(s.n, i));
    if (r_cap > 1)
      for (const auto& m : seed_exponents(s, r_cap, 0))
        if (!m.is_zero()) r_exps.insert(m);
    for (const auto& m : r_exps) {
      std::optional<std::size_t> single;
      for (std::size_t k : s.unfrozen)
        if (m == ExpVec::unit(s.n, k)) single = k;
      const QTElem r = QTElem::monomial(m);
      for (const auto& [p, v] : tb.elements()) {
        PairRecord rec{{node, m}, p, verify_pair(tb, r, v, single)};
        tally(rep, std::move(rec));
      }
    }
  }
  return rep;
}

TheoremReport verify_conjecture(const CandidateBasis& basis, const std::vector<std::size_t>& scope) {
  TheoremReport rep;
  const std::set<std::size_t> in_scope(scope.begin(), scope.end());
  for (std::size_t node : in_scope)
    if (node >= basis.graph().size()) throw PreconditionError("node out of range in scope");
  std::map<std::size_t, TorusBasis> tori;
  for (const auto& [key, pr] : basis.provenance) {
    if (!in_scope.count(pr.node)) continue;
    auto it = tori.find(pr.node);
    if (it == tori.end()) it = tori.emplace(pr.node, TorusBasis(basis, pr.node)).first;
    const TorusBasis& tb = it->second;
    const QTElem r = QTElem::monomial(pr.exponent);
    std::optional<std::size_t> single;
    for (std::size_t k : tb.seed().unfrozen)
      if (pr.exponent == ExpVec::unit(tb.seed().n, k)) single = k;
    for (const auto& [pv, v] : tb.elements()) {
      PairRecord rec{pr, pv, verify_pair(tb, r, v, single)};
      tally(rep, std::move(rec));
    }
  }
  return rep;
}

}  // namespace qcluster
