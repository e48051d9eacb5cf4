#pragma once

#include <cstdint>
#include <random>

#include "qcluster/qtorus.hpp"
#include "qcluster/seed.hpp"

namespace fixtures {

using namespace qcluster;

inline QuantumSeed a2() {
  IntMatrix b{{0, -1}, {1, 0}};
  return make_seed(2, {0, 1}, b, b, {1, 1});
}

inline QuantumSeed b2() {
  return make_seed(2, {0, 1}, IntMatrix{{0, -2}, {1, 0}}, IntMatrix{{0, -1}, {1, 0}}, {1, 2});
}

/// Principal coefficients: B~ = [B; Id], Lambda synthesized.
inline QuantumSeed principal(const IntMatrix& b) {
  const std::size_t r = b.rows();
  IntMatrix bt(2 * r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) bt(i, j) = b(i, j);
  for (std::size_t i = 0; i < r; ++i) bt(r + i, i) = 1;
  std::vector<std::size_t> uf;
  for (std::size_t i = 0; i < r; ++i) uf.push_back(i);
  auto pair = find_compatible_lambda(bt, uf);
  return make_seed(2 * r, uf, bt, pair.Lambda, pair.D);
}

inline IntMatrix a3_exchange() { return IntMatrix{{0, -1, 0}, {1, 0, -1}, {0, 1, 0}}; }

inline QuantumSeed a3_principal() { return principal(a3_exchange()); }
inline QuantumSeed a2_principal() { return principal(IntMatrix{{0, -1}, {1, 0}}); }
inline QuantumSeed markov_principal() {
  return principal(IntMatrix{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
}

inline ExpVec f(std::size_t n, std::size_t i) { return ExpVec::unit(n, i); }

inline QTElem mono(std::initializer_list<std::int64_t> m, const VCoeff& c = VCoeff(1)) {
  return QTElem::monomial(ExpVec(m), c);
}

/// Hand-rolled generator for small sparse elements.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  VCoeff coeff() {
    VCoeff c;
    const auto terms = uniform(1, 2);
    for (std::int64_t t = 0; t < terms; ++t) c += VCoeff::monomial(uniform(-3, 3), uniform(-3, 3));
    if (c.is_zero()) c = VCoeff(1);
    return c;
  }

  ExpVec exp(std::size_t n, std::int64_t bound = 2) {
    ExpVec e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = uniform(-bound, bound);
    return e;
  }

  QTElem elem(std::size_t n, std::size_t max_terms = 4) {
    QTElem z(n);
    const auto terms = uniform(1, static_cast<std::int64_t>(max_terms));
    for (std::int64_t t = 0; t < terms; ++t) z.add_term(exp(n), coeff());
    if (z.is_zero()) z = QTElem::one(n);
    return z;
  }
};

}  // namespace fixtures
