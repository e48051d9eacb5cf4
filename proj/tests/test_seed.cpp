#include <functional>

#include "doctest.h"
#include "fixtures.hpp"
#include "qcluster/errors.hpp"
#include "qcluster/seed.hpp"

using namespace qcluster;
using fixtures::f;

namespace {

// Every labeled seed reachable by words of length <= depth (with repeats).
void for_each_reachable(const QuantumSeed& s, int depth,
                        const std::function<void(const QuantumSeed&)>& visit) {
  visit(s);
  if (depth == 0) return;
  for (std::size_t k : s.unfrozen) for_each_reachable(mutate_seed(s, k), depth - 1, visit);
}

void check_seed_invariants(const QuantumSeed& s0, int depth) {
  for_each_reachable(s0, depth, [&](const QuantumSeed& s) {
    CHECK(check_compatible(s).ok);
    CHECK(s.D == s0.D);
    for (std::size_t k : s.unfrozen) {
      CHECK(mutate_seed(mutate_seed(s, k), k) == s);
      CHECK(opposite_seed(mutate_seed(s, k)) == mutate_seed(opposite_seed(s), k));
      const ExpVec pk = p_star(s, f(s.n, k));
      for (std::size_t i = 0; i < s.n; ++i)
        CHECK(lambda(s, f(s.n, i), pk) == (i == k ? -s.D[s.column_of(k)] : 0));
    }
    for (std::size_t i = 0; i < s.rank(); ++i)
      for (std::size_t k = 0; k < s.rank(); ++k)
        CHECK(s.D[i] * s.B(s.unfrozen[i], k) == -s.D[k] * s.B(s.unfrozen[k], i));
  });
}

}  // namespace

TEST_CASE("check_compatible") {
  CHECK(check_compatible(fixtures::a2()).ok);
  CHECK(check_compatible(fixtures::b2()).ok);

  auto zero_lambda = make_seed(2, {0, 1}, IntMatrix{{0, -1}, {1, 0}}, IntMatrix(2, 2), {1, 1});
  auto rep = check_compatible(zero_lambda);
  CHECK_FALSE(rep.ok);
  CHECK(rep.diagnostic.find("(1,1)") != std::string::npos);

  auto wrong_d = make_seed(2, {0, 1}, IntMatrix{{0, -2}, {1, 0}}, IntMatrix{{0, -1}, {1, 0}}, {1, 1});
  CHECK_FALSE(check_compatible(wrong_d).ok);
}

TEST_CASE("mutate_seed on A2") {
  const QuantumSeed s = fixtures::a2();
  const QuantumSeed t = mutate_seed(s, 0);
  CHECK(t.B == IntMatrix{{0, 1}, {-1, 0}});
  CHECK(t.Lambda == IntMatrix{{0, 1}, {-1, 0}});
  CHECK(t.D == std::vector<std::int64_t>{1, 1});
  CHECK(mutate_seed(t, 0) == s);
  CHECK_THROWS_AS(mutate_seed(fixtures::a2_principal(), 3), PreconditionError);
}

TEST_CASE("principal-coefficient A2 stays compatible under mutation") {
  const QuantumSeed s = fixtures::a2_principal();
  REQUIRE(check_compatible(s).ok);
  const QuantumSeed t = mutate_seed(s, 0);
  CHECK(check_compatible(t).ok);
  CHECK(rank(t.B) == 2);
}

TEST_CASE("seed invariants on reachable seeds") {
  check_seed_invariants(fixtures::a2(), 8);
  check_seed_invariants(fixtures::b2(), 8);
  check_seed_invariants(fixtures::a2_principal(), 8);
  check_seed_invariants(fixtures::a3_principal(), 6);
}

TEST_CASE("p_star and Y-variables") {
  const QuantumSeed s = fixtures::a2();
  CHECK(p_star(s, f(2, 1)) == ExpVec{-1, 0});
  CHECK(p_star(s, f(2, 0)) == ExpVec{0, 1});
  CHECK(p_star(s, ExpVec(2)).is_zero());
  CHECK(y_variable(s, f(2, 0)) == fixtures::mono({0, 1}));
  CHECK(y_variable(s, f(2, 1)) == fixtures::mono({-1, 0}));
  CHECK(y_variable(s, ExpVec(2)) == QTElem::one(2));
  CHECK_THROWS_AS(p_star(fixtures::a2_principal(), f(4, 2)), PreconditionError);
}

TEST_CASE("opposite_seed") {
  const QuantumSeed s = fixtures::a2();
  const QuantumSeed op = opposite_seed(s);
  CHECK(op.B == IntMatrix{{0, 1}, {-1, 0}});
  CHECK(op.Lambda == IntMatrix{{0, 1}, {-1, 0}});
  CHECK(opposite_seed(op) == s);
  for (const auto& seed : {fixtures::b2(), fixtures::a3_principal(), fixtures::a2_principal()})
    CHECK(check_compatible(opposite_seed(seed)).ok == check_compatible(seed).ok);
}

TEST_CASE("find_compatible_lambda") {
  auto a2 = find_compatible_lambda(IntMatrix{{0, -1}, {1, 0}}, {0, 1});
  CHECK(a2.Lambda == IntMatrix{{0, -1}, {1, 0}});
  CHECK(a2.D == std::vector<std::int64_t>{1, 1});

  auto b2 = find_compatible_lambda(IntMatrix{{0, -2}, {1, 0}}, {0, 1});
  CHECK(b2.Lambda == IntMatrix{{0, -1}, {1, 0}});
  CHECK(b2.D == std::vector<std::int64_t>{1, 2});

  // Coefficient-free A3 has a singular exchange matrix.
  CHECK_THROWS_AS(find_compatible_lambda(fixtures::a3_exchange(), {0, 1, 2}), PreconditionError);

  auto a3 = fixtures::a3_principal();
  CHECK(check_compatible(a3).ok);
  CHECK(a3.D == std::vector<std::int64_t>{1, 1, 1});
}
