#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "qcluster/expansion.hpp"

using namespace qcluster;
using fixtures::mono;

namespace {

QTElem p2() { return mono({1, -1}) + mono({0, -1}); }
QTElem i2() { return mono({0, -1}) + mono({-1, -1}) + mono({-1, 0}); }
QTElem i1() { return mono({-1, 0}) + mono({-1, 1}); }

void check_node_invariants(const TrackedSeed& ts) {
  const auto& ref = ts.reference_seed();
  const auto& ord = *ts.reference;
  for (std::size_t i = 0; i < ts.seed.n; ++i) {
    const QTElem& xi = ts.vars[i];
    CHECK(bar(xi) == xi);
    auto bd = bidegree(ord, xi);
    REQUIRE(bd.has_value());
    CHECK(bd->deg == ts.degrees[i]);
    CHECK(xi.coeff(bd->deg) == VCoeff(1));
    for (std::size_t j = 0; j < ts.seed.n; ++j) {
      const QTElem lhs = twisted_mul(xi, ts.vars[j], ref.Lambda);
      const QTElem rhs = twisted_mul(ts.vars[j], xi, ref.Lambda);
      CHECK(lhs == rhs.scaled(VCoeff::vpow(2 * ts.seed.Lambda(i, j))));
    }
  }
}

}  // namespace

TEST_CASE("A2 mutations reproduce the known expansions") {
  const TrackedSeed t0 = initial_tracked(fixtures::a2());
  const TrackedSeed t1 = mutate_tracked(t0, 0);
  CHECK(t1.vars[0] == i1());
  CHECK(t1.vars[1] == mono({0, 1}));
  const TrackedSeed t2 = mutate_tracked(t1, 1);
  CHECK(t2.vars[1] == i2());
  const TrackedSeed t3 = mutate_tracked(t2, 0);
  CHECK(t3.vars[0] == p2());
  CHECK(mutate_tracked(t0, 1).vars[1] == p2());

  const TrackedSeed t5 = apply_word(t0, {0, 1, 0, 1, 0});
  CHECK(t5.vars[0] == mono({0, 1}));
  CHECK(t5.vars[1] == mono({1, 0}));
  CHECK(t5.path == Word{0, 1, 0, 1, 0});
}

TEST_CASE("mutation is an involution on tracked seeds") {
  for (const auto& s : {fixtures::a2(), fixtures::b2(), fixtures::a3_principal()}) {
    TrackedSeed t = initial_tracked(s);
    const Word w{0, 1, 0, 1};
    t = apply_word(t, w);
    for (std::size_t k : s.unfrozen) {
      const TrackedSeed back = mutate_tracked(mutate_tracked(t, k), k);
      CHECK(back.vars == t.vars);
      CHECK(back.seed == t.seed);
    }
  }
}

TEST_CASE("B2 and A2 periodicity") {
  const TrackedSeed a = initial_tracked(fixtures::a2());
  CHECK(apply_word(a, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1}).vars == a.vars);
  const TrackedSeed b = initial_tracked(fixtures::b2());
  CHECK(apply_word(b, {0, 1, 0, 1, 0, 1}).vars == b.vars);
}

TEST_CASE("expand_monomial and cluster monomials") {
  const QuantumSeed s = fixtures::a2();
  const TrackedSeed t0 = initial_tracked(s);
  CHECK(expand_monomial(t0, ExpVec{2, 1}) == mono({2, 1}));
  const TrackedSeed t1 = mutate_tracked(t0, 0);
  const QTElem m = cluster_monomial(t1, ExpVec{1, 1});
  DominanceOrder ord(s);
  CHECK(bar(m) == m);
  CHECK(degree(ord, m) == t1.degrees[0] + t1.degrees[1]);
  CHECK(m.coeff(*degree(ord, m)) == VCoeff(1));
}

TEST_CASE("exchange graph sizes") {
  struct Case {
    QuantumSeed s;
    std::size_t nodes;
    std::size_t vars;
  };
  for (const auto& c : {Case{fixtures::a2(), 5, 5}, Case{fixtures::b2(), 6, 6},
                        Case{fixtures::a3_principal(), 14, 9}}) {
    const ExchangeGraph g = build_exchange_graph(c.s);
    CHECK_FALSE(g.truncated);
    CHECK(g.violations.empty());
    CHECK(g.size() == c.nodes);
    CHECK(g.cluster_variables().size() == c.vars);
    CHECK(g.edges.size() == c.nodes * c.s.rank());
    for (const auto& node : g.nodes) check_node_invariants(node.ts);
  }
}

TEST_CASE("graph truncation") {
  const ExchangeGraph g = build_exchange_graph(fixtures::a3_principal(), 4);
  CHECK(g.truncated);
  CHECK(g.size() <= 4);
}

TEST_CASE("edges respect the matched permutation") {
  const ExchangeGraph g = build_exchange_graph(fixtures::a3_principal());
  for (const auto& e : g.edges) {
    const TrackedSeed m = mutate_tracked(g.nodes[e.from].ts, e.vertex);
    const TrackedSeed& to = g.nodes[e.to].ts;
    for (std::size_t i = 0; i < m.seed.n; ++i) CHECK(m.vars[i] == to.vars[e.perm[i]]);
    for (std::size_t i = 0; i < m.seed.n; ++i)
      for (std::size_t j = 0; j < m.seed.n; ++j)
        CHECK(m.seed.Lambda(i, j) == to.seed.Lambda(e.perm[i], e.perm[j]));
  }
}

TEST_CASE("rebase") {
  const ExchangeGraph g = build_exchange_graph(fixtures::a2());
  for (std::size_t r = 0; r < g.size(); ++r) {
    const ExchangeGraph h = rebase(g, r);
    REQUIRE(h.size() == g.size());
    CHECK(h.violations.empty());
    CHECK(h.nodes[r].ts.seed == g.nodes[r].ts.seed);
    for (std::size_t i = 0; i < h.nodes[r].ts.seed.n; ++i)
      CHECK(h.nodes[r].ts.vars[i] == QTElem::monomial(ExpVec::unit(2, i), VCoeff(1)));
    for (std::size_t k = 0; k < h.size(); ++k) {
      CHECK(h.nodes[k].ts.seed == g.nodes[k].ts.seed);
      CHECK(apply_word(initial_tracked(h.nodes[r].ts.seed), h.nodes[k].ts.path).vars ==
            h.nodes[k].ts.vars);
    }
  }
}

TEST_CASE("to_dot") {
  const std::string dot = to_dot(build_exchange_graph(fixtures::a2()));
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("label=\"1\"") != std::string::npos);
}

TEST_CASE("probe agrees with the expanded graph") {
  for (const auto& s : {fixtures::a2(), fixtures::b2(), fixtures::a3_principal(), fixtures::a2_principal()}) {
    const auto g = build_exchange_graph(s);
    const auto p = probe_exchange_graph(s);
    REQUIRE(p.size() == g.size());
    CHECK(p.edges == g.edges.size());
    CHECK(p.variables == g.cluster_variables().size());
    CHECK_FALSE(p.truncated);
    for (std::size_t u = 0; u < g.size(); ++u) {
      CHECK(p.seeds[u] == g.nodes[u].ts.seed);
      CHECK(p.degrees[u] == g.nodes[u].ts.degrees);
    }
  }
}

TEST_CASE("probe truncates the Markov quiver") {
  const auto p = probe_exchange_graph(fixtures::markov_principal(), 500);
  CHECK(p.truncated);
  CHECK(p.size() == 500);
}
