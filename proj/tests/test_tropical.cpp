#include "doctest.h"
#include "fixtures.hpp"
#include "qcluster/errors.hpp"
#include "qcluster/tropical.hpp"

using namespace qcluster;
using fixtures::f;
using fixtures::mono;

namespace {

QTElem p2() { return mono({1, -1}) + mono({0, -1}); }
QTElem i2() { return mono({0, -1}) + mono({-1, -1}) + mono({-1, 0}); }
QTElem i1() { return mono({-1, 0}) + mono({-1, 1}); }

std::vector<QuantumSeed> instances() {
  return {fixtures::a2(), fixtures::b2(), fixtures::a2_principal(), fixtures::a3_principal()};
}

std::vector<ExpVec> box(std::size_t n, std::int64_t b) {
  std::vector<ExpVec> out;
  ExpVec e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = -b;
  while (true) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == b) e[i++] = -b;
    if (i == n) return out;
    ++e[i];
  }
}

// All exponents in [0, cap] on unfrozen vertices and zero on frozen ones.
std::vector<ExpVec> unfrozen_exponents(const QuantumSeed& s, std::int64_t cap) {
  std::vector<ExpVec> out;
  for (const auto& e : box(s.n, cap)) {
    bool ok = true;
    for (std::size_t i = 0; i < s.n; ++i)
      ok = ok && (s.is_unfrozen(i) ? e[i] >= 0 : e[i] == 0);
    if (ok) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("tropical transformations on A2") {
  const QuantumSeed s = fixtures::a2();
  CHECK(trop_deg(s, 0, ExpVec{1, 0}) == ExpVec{-1, 1});
  CHECK(trop_deg(s, 0, ExpVec{0, 1}) == ExpVec{0, 1});
  CHECK(trop_codeg(s, 0, ExpVec{1, 0}) == ExpVec{-1, 0});
  const QuantumSeed pa2 = fixtures::a2_principal();
  CHECK(trop_codeg(pa2, 0, ExpVec{0, 0, 2, -1}) == ExpVec{0, 0, 2, -1});
}

TEST_CASE("tropical transformations are involutions and match the opposite seed") {
  fixtures::Gen gen(11);
  for (const auto& s : instances()) {
    for (std::size_t k : s.unfrozen) {
      const QuantumSeed mk = mutate_seed(s, k);
      for (int trial = 0; trial < 40; ++trial) {
        const ExpVec g = gen.exp(s.n, 3);
        CHECK(trop_deg(mk, k, trop_deg(s, k, g)) == g);
        CHECK(trop_codeg(mk, k, trop_codeg(s, k, g)) == g);
        CHECK(trop_codeg(s, k, g) == trop_deg(opposite_seed(s), k, g));
      }
    }
  }
}

TEST_CASE("degrees of mutated variables follow the tropical transformation") {
  for (const auto& s : instances()) {
    const Word w{0, 1, 0, 1, 1, 0};
    const TrackedSeed ts = apply_word(initial_tracked(s), w);
    for (std::size_t i = 0; i < s.n; ++i) {
      // deg^{t} X_i(mu_w t) is the image of f_i under the reverse transformation.
      CHECK(trop_deg_word(ts.seed, reversed(w), f(s.n, i)) == ts.degrees[i]);
    }
  }
}

TEST_CASE("psi") {
  for (const auto& s : instances()) {
    CHECK(psi(s, {}) == IntMatrix::identity(s.n));
    const Word w{1, 0, 1};
    const QuantumSeed t = mutate_seed(s, w);
    // psi is a lattice isomorphism; its inverse is not psi in the other direction.
    const IntMatrix p = psi(s, w);
    REQUIRE(rank(p) == s.n);
    const FullRankSolver solver(p);
    for (std::size_t i = 0; i < s.n; ++i) CHECK(solver.solve(f(s.n, i).entries()).has_value());
    CHECK(psi(t, reversed(w)) * p != IntMatrix::identity(s.n));
  }
}

TEST_CASE("A2 shifts") {
  const QuantumSeed s = fixtures::a2();
  auto plus = find_shift(s, 1);
  REQUIRE(plus.has_value());
  CHECK(plus->word == Word{1, 0, 1});
  CHECK(plus->sigma == std::vector<std::size_t>{1, 0});
  CHECK(verify_shift(s, *plus).empty());
  const QuantumSeed t1 = mutate_seed(s, plus->word);
  CHECK(t1.B == -s.B);
  const IntMatrix p = psi(s, plus->word);
  for (std::size_t k = 0; k < 2; ++k) CHECK(apply(p, f(2, plus->sigma[k])) == -f(2, k));

  auto minus = find_shift(s, -1);
  REQUIRE(minus.has_value());
  CHECK(minus->word == Word{0, 1, 0});
  CHECK(minus->sigma == std::vector<std::size_t>{1, 0});
  CHECK(verify_shift(s, *minus).empty());
  CHECK(mutate_seed(s, minus->word).B == -s.B);

  auto iv = i_vars(s, *plus);
  CHECK(iv.at(0) == i1());
  CHECK(iv.at(1) == i2());
  auto pv = p_vars(s, *minus);
  CHECK(pv.at(0) == i2());
  CHECK(pv.at(1) == p2());
  const DominanceOrder ord(s);
  CHECK(codegree(ord, pv.at(1)) == -f(2, 1));

  ShiftData broken = *plus;
  broken.sigma = {0, 1};
  CHECK_FALSE(verify_shift(s, broken).empty());
  CHECK_THROWS_AS(p_vars(s, *plus), PreconditionError);
}

TEST_CASE("shift degree patterns on all instances") {
  for (const auto& s : instances()) {
    const ExchangeGraph g = build_exchange_graph(s);
    for (std::size_t node = 0; node < g.size(); ++node) {
      const QuantumSeed& t = g.nodes[node].ts.seed;
      const ShiftData plus = detect_shift(g, node, 1);
      const ShiftData minus = detect_shift(g, node, -1);
      CHECK(verify_shift(t, plus).empty());
      CHECK(verify_shift(t, minus).empty());
      const DominanceOrder ord(t);
      for (const auto& [k, x] : i_vars(t, plus)) {
        CHECK(degree(ord, x) == plus.u.at(k) - f(t.n, k));
        for (std::size_t i : t.unfrozen) CHECK(plus.u.at(k)[i] == 0);
      }
      for (const auto& [k, x] : p_vars(t, minus)) CHECK(codegree(ord, x) == minus.u.at(k) - f(t.n, k));
      const IntMatrix p = psi(t, plus.word);
      for (std::size_t i = 0; i < t.n; ++i) {
        if (t.is_unfrozen(i)) continue;
        CHECK(apply(p, f(t.n, i)) == f(t.n, i));
      }
    }
  }
}

TEST_CASE("A3 shift has length six") {
  const QuantumSeed s = fixtures::a3_principal();
  auto plus = find_shift(s, 1);
  REQUIRE(plus.has_value());
  CHECK(plus->word.size() == 6);
  CHECK(verify_shift(s, *plus).empty());
}

TEST_CASE("opposite seeds exchange I and P") {
  for (const auto& s : instances()) {
    const QuantumSeed op = opposite_seed(s);
    const auto minus = find_shift(s, -1);
    const auto op_plus = find_shift(op, 1);
    REQUIRE(minus.has_value());
    REQUIRE(op_plus.has_value());
    const auto pv = p_vars(s, *minus);
    const auto iv = i_vars(op, *op_plus);
    for (std::size_t k : s.unfrozen) CHECK(pv.at(k) == iv.at(k));

    const Word w{0, 1, 0, 1, 1};
    CHECK(apply_word(initial_tracked(op), w).vars == apply_word(initial_tracked(s), w).vars);
  }
}

TEST_CASE("distinguished pointed and copointed functions") {
  const QuantumSeed s = fixtures::a2();
  const ShiftData plus = *find_shift(s, 1);
  const ShiftData minus = *find_shift(s, -1);
  CHECK(inj_element(s, plus, ExpVec{2, 1}) == mono({2, 1}));
  CHECK(inj_element(s, plus, -f(2, 0)) == i1());
  CHECK(proj_element(s, minus, -f(2, 1)) == p2());
  CHECK(proj_element(s, minus, ExpVec{1, -1}) == mono({2, -1}) + mono({1, -1}));

  for (const auto& seed : {fixtures::a2(), fixtures::b2(), fixtures::a2_principal()}) {
    const DominanceOrder ord(seed);
    const ShiftData sp = *find_shift(seed, 1);
    const ShiftData sm = *find_shift(seed, -1);
    for (const auto& g : box(seed.n, seed.n > 2 ? 1 : 2)) {
      const QTElem inj = inj_element(seed, sp, g);
      CHECK(degree(ord, inj) == g);
      const QTElem proj = proj_element(seed, sm, g);
      CHECK(codegree(ord, proj) == g);
    }
  }
}

TEST_CASE("swap proposition") {
  const QuantumSeed s = fixtures::a2();
  const ShiftData minus = *find_shift(s, -1);
  CHECK(check_swap(s, minus, {1}, f(2, 1)));
  const QuantumSeed pa2 = fixtures::a2_principal();
  CHECK(check_swap(pa2, *find_shift(pa2, -1), {}, ExpVec{0, 0, 1, -2}));

  fixtures::Gen gen(5);
  for (const auto& t : instances()) {
    const ShiftData sm = *find_shift(t, -1);
    for (int trial = 0; trial < 50; ++trial) {
      Word w;
      const auto len = gen.uniform(0, 6);
      for (std::int64_t i = 0; i < len; ++i)
        w.push_back(t.unfrozen[static_cast<std::size_t>(gen.uniform(0, static_cast<std::int64_t>(t.rank()) - 1))]);
      ExpVec m(t.n);
      for (std::size_t i = 0; i < t.n; ++i) m[i] = t.is_unfrozen(i) ? gen.uniform(0, 2) : gen.uniform(-1, 1);
      CHECK(check_swap(t, sm, w, m));
      CHECK(check_swap_order(t, sm, gen.exp(t.n), gen.exp(t.n)));
    }
    // Comparable pairs.
    const DominanceOrder ord(t);
    for (int trial = 0; trial < 20; ++trial) {
      const ExpVec g = gen.exp(t.n);
      ExpVec eta = g;
      for (std::size_t c = 0; c < t.rank(); ++c) {
        const auto nc = gen.uniform(0, 2);
        for (std::size_t i = 0; i < t.n; ++i) eta[i] += nc * t.B(i, c);
      }
      REQUIRE(ord.leq(eta, g));
      CHECK(check_swap_order(t, sm, g, eta));
    }
  }
}

TEST_CASE("commuting diagram") {
  for (const auto& s : {fixtures::a2(), fixtures::b2()}) {
    const ExchangeGraph g = build_exchange_graph(s);
    const auto samples = default_samples(s.n, 20, 1);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) CHECK(check_trop_commute(g, a, b, samples).empty());
  }
  const ExchangeGraph g = build_exchange_graph(fixtures::a3_principal());
  const auto samples = default_samples(6, 20, 2);
  for (std::size_t a = 0; a < g.size(); a += 3)
    for (std::size_t b = 0; b < g.size(); b += 5) CHECK(check_trop_commute(g, a, b, samples).empty());
}

TEST_CASE("cluster monomials are compatibly pointed and copointed") {
  for (const auto& s : {fixtures::a2(), fixtures::b2(), fixtures::a2_principal()}) {
    const ExchangeGraph g = build_exchange_graph(s);
    const NodeTori tori(g);
    for (std::size_t node = 0; node < g.size(); ++node)
      for (const auto& m : unfrozen_exponents(s, 2)) {
        CHECK(check_compatibly_pointed(tori, node, m).empty());
        CHECK(check_compatibly_pointed(tori, node, m, true).empty());
      }
  }
  const QuantumSeed pa2 = fixtures::a2_principal();
  const ExchangeGraph g = build_exchange_graph(pa2);
  const NodeTori tori(g);
  CHECK(check_compatibly_pointed(tori, 2, ExpVec{0, 0, -1, 2}).empty());
}
