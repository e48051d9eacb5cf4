#include "qcluster/seed.hpp"

#include <algorithm>
#include <sstream>

#include "qcluster/errors.hpp"

namespace qcluster {

bool QuantumSeed::is_unfrozen(std::size_t i) const {
  return std::binary_search(unfrozen.begin(), unfrozen.end(), i);
}

std::size_t QuantumSeed::column_of(std::size_t k) const {
  auto it = std::lower_bound(unfrozen.begin(), unfrozen.end(), k);
  if (it == unfrozen.end() || *it != k)
    throw PreconditionError("vertex " + std::to_string(k + 1) + " is not unfrozen");
  return static_cast<std::size_t>(it - unfrozen.begin());
}

std::vector<std::size_t> QuantumSeed::frozen() const {
  std::vector<std::size_t> f;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_unfrozen(i)) f.push_back(i);
  return f;
}

QuantumSeed make_seed(std::size_t n, std::vector<std::size_t> unfrozen, IntMatrix B,
                      IntMatrix Lambda, std::vector<std::int64_t> D) {
  std::sort(unfrozen.begin(), unfrozen.end());
  if (std::adjacent_find(unfrozen.begin(), unfrozen.end()) != unfrozen.end())
    throw PreconditionError("duplicate unfrozen vertex");
  if (!unfrozen.empty() && unfrozen.back() >= n)
    throw PreconditionError("unfrozen vertex out of range");
  if (B.rows() != n || B.cols() != unfrozen.size())
    throw DimensionMismatch("B~ must be |I| x |I_uf|");
  if (Lambda.rows() != n || Lambda.cols() != n) throw DimensionMismatch("Lambda must be |I| x |I|");
  if (D.size() != unfrozen.size()) throw DimensionMismatch("D must have one entry per unfrozen vertex");
  return QuantumSeed{n, std::move(unfrozen), std::move(B), std::move(Lambda), std::move(D)};
}

std::int64_t lambda(const QuantumSeed& s, const ExpVec& g, const ExpVec& gp) {
  return bilinear(s.Lambda, g, gp);
}

CompatibilityReport check_compatible(const QuantumSeed& s) {
  auto fail = [](std::string msg) { return CompatibilityReport{false, std::move(msg)}; };
  if (s.B.rows() != s.n || s.B.cols() != s.rank() || s.Lambda.rows() != s.n ||
      s.Lambda.cols() != s.n || s.D.size() != s.rank())
    return fail("shape mismatch");
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i; j < s.n; ++j)
      if (s.Lambda(i, j) != -s.Lambda(j, i)) {
        std::ostringstream os;
        os << "Lambda not skew-symmetric at (" << i + 1 << "," << j + 1 << ")";
        return fail(os.str());
      }
  for (std::size_t c = 0; c < s.rank(); ++c)
    if (s.D[c] <= 0) return fail("D entry " + std::to_string(c + 1) + " is not positive");
  const IntMatrix prod = s.B.transpose() * s.Lambda;
  for (std::size_t c = 0; c < s.rank(); ++c)
    for (std::size_t j = 0; j < s.n; ++j) {
      const std::int64_t want = (j == s.unfrozen[c]) ? s.D[c] : 0;
      if (prod(c, j) != want) {
        std::ostringstream os;
        os << "(B~^T Lambda)(" << s.unfrozen[c] + 1 << "," << j + 1 << ") = " << prod(c, j)
           << ", expected " << want;
        return fail(os.str());
      }
    }
  // Compatibility with D > 0 already forces full column rank; keep the check
  // explicit for seeds with an empty or malformed D.
  if (rank(s.B) != s.rank()) return fail("B~ does not have full column rank");
  return {true, ""};
}

namespace {

IntMatrix elementary(const QuantumSeed& s, std::size_t k, int eps) {
  IntMatrix e = IntMatrix::identity(s.n);
  e(k, k) = -1;
  for (std::size_t i = 0; i < s.n; ++i)
    if (i != k) e(i, k) = std::max<std::int64_t>(0, -eps * s.b(i, k));
  return e;
}

}  // namespace

QuantumSeed mutate_seed(const QuantumSeed& s, std::size_t k) {
  const std::size_t ck = s.column_of(k);
  QuantumSeed t = s;
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t c = 0; c < s.rank(); ++c) {
      const std::size_t j = s.unfrozen[c];
      const std::int64_t bij = s.B(i, c);
      if (i == k || j == k) {
        t.B(i, c) = -bij;
      } else {
        const std::int64_t bik = s.B(i, ck);
        const std::int64_t bkj = s.B(k, c);
        t.B(i, c) = bij + std::max<std::int64_t>(0, bik) * bkj + bik * std::max<std::int64_t>(0, -bkj);
      }
    }
  const IntMatrix ep = elementary(s, k, +1);
  const IntMatrix em = elementary(s, k, -1);
  t.Lambda = ep.transpose() * s.Lambda * ep;
  const IntMatrix alt = em.transpose() * s.Lambda * em;
  if (alt != t.Lambda)
    throw InternalError("Lambda mutation at vertex " + std::to_string(k + 1) +
                        " depends on the sign convention");
  const auto rep = check_compatible(t);
  if (!rep.ok)
    throw InternalError("mutation at vertex " + std::to_string(k + 1) +
                        " broke compatibility: " + rep.diagnostic);
  return t;
}

QuantumSeed mutate_seed(const QuantumSeed& s, const std::vector<std::size_t>& word) {
  QuantumSeed t = s;
  for (std::size_t k : word) t = mutate_seed(t, k);
  return t;
}

ExpVec p_star(const QuantumSeed& s, const ExpVec& n) {
  if (n.dim() != s.n) throw DimensionMismatch("p_star: vector has wrong dimension");
  std::vector<std::int64_t> coords(s.rank());
  for (std::size_t i = 0; i < s.n; ++i) {
    if (s.is_unfrozen(i)) {
      coords[s.column_of(i)] = n[i];
    } else if (n[i] != 0) {
      throw PreconditionError("p_star: vector has support on frozen vertex " + std::to_string(i + 1));
    }
  }
  return ExpVec(s.B.apply(coords));
}

QTElem y_variable(const QuantumSeed& s, const ExpVec& n) {
  return QTElem::monomial(p_star(s, n));
}

QuantumSeed opposite_seed(const QuantumSeed& s) {
  QuantumSeed t = s;
  t.B = -s.B;
  t.Lambda = -s.Lambda;
  return t;
}

CompatiblePair find_compatible_lambda(const IntMatrix& Btilde,
                                      const std::vector<std::size_t>& unfrozen,
                                      std::int64_t bound) {
  const std::size_t n = Btilde.rows();
  const std::size_t r = Btilde.cols();
  if (unfrozen.size() != r) throw DimensionMismatch("B~ columns must match unfrozen vertices");
  if (rank(Btilde) != r) throw PreconditionError("B~ does not have full column rank");

  // Unknowns: Lambda(i,j), i<j.
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vars.emplace_back(i, j);
  IntMatrix a(r * n, vars.size());
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t j = 0; j < n; ++j) {
      // (B~^T Lambda)(c, j) = sum_i B(i,c) Lambda(i,j)
      for (std::size_t v = 0; v < vars.size(); ++v) {
        const auto [p, q] = vars[v];
        std::int64_t coef = 0;
        if (q == j) coef += Btilde(p, c);   // Lambda(p,j) = +x
        if (p == j) coef -= Btilde(q, c);   // Lambda(q,j) = -x
        a(c * n + j, v) = coef;
      }
    }

  // delta_i b_ik = -delta_k b_ki on the principal part prunes most candidates.
  auto symmetrizes = [&](const std::vector<std::int64_t>& d) {
    for (std::size_t ci = 0; ci < r; ++ci)
      for (std::size_t ck = 0; ck < r; ++ck)
        if (d[ci] * Btilde(unfrozen[ci], ck) != -d[ck] * Btilde(unfrozen[ck], ci)) return false;
    return true;
  };

  std::vector<std::int64_t> d(r, 1);
  while (true) {
    if (symmetrizes(d)) {
      std::vector<std::int64_t> rhs(r * n, 0);
      for (std::size_t c = 0; c < r; ++c) rhs[c * n + unfrozen[c]] = d[c];
      if (auto x = solve_integer(a, rhs)) {
        IntMatrix lam(n, n);
        for (std::size_t v = 0; v < vars.size(); ++v) {
          lam(vars[v].first, vars[v].second) = (*x)[v];
          lam(vars[v].second, vars[v].first) = -(*x)[v];
        }
        return {lam, d};
      }
    }
    // Next tuple in lexicographic order.
    std::size_t pos = r;
    while (pos > 0 && d[pos - 1] == bound) {
      d[pos - 1] = 1;
      --pos;
    }
    if (pos == 0) break;
    ++d[pos - 1];
  }
  throw NoneFound("no compatible Lambda with D entries in [1, " + std::to_string(bound) + "]");
}

}  // namespace qcluster
