// Level graph: fresh variables, constraint admission in both modes,
// soundness of the extracted assignment, error-path completeness.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uvk/level.hpp"

using namespace uvk;

TEST_CASE("fresh levels are distinct and sequential") {
  LevelGraph g;
  auto a = g.fresh();
  auto b = g.fresh();
  CHECK(a.value == 0);
  CHECK(b.value == 1);
  CHECK(a != b);
  CHECK(g.fresh().value == 2);
}

TEST_CASE("strict mode rejects a reflexive strict edge") {
  LevelGraph g(UniverseMode::Strict);
  auto v0 = g.fresh();
  auto err = g.add_constraint(v0, LevelRel::Lt, v0);
  REQUIRE(err.has_value());
  REQUIRE_FALSE(err->cycle.empty());
  CHECK(err->cycle.front() == v0);
}

TEST_CASE("off mode accepts a reflexive strict edge") {
  LevelGraph g(UniverseMode::Off);
  auto v0 = g.fresh();
  CHECK_FALSE(g.add_constraint(v0, LevelRel::Lt, v0).has_value());
  CHECK_FALSE(g.check_satisfiable().has_value());
}

TEST_CASE("chains through concrete levels are fine") {
  LevelGraph g;
  auto v0 = g.fresh();
  auto v1 = g.fresh();
  CHECK_FALSE(
      g.add_constraint(LevelExpr::concrete(0), LevelRel::Lt, v0).has_value());
  CHECK_FALSE(g.add_constraint(v0, LevelRel::Le, v1).has_value());
  CHECK_FALSE(
      g.add_constraint(LevelExpr::concrete(0), LevelRel::Lt, v1).has_value());
  CHECK_FALSE(g.check_satisfiable().has_value());
}

TEST_CASE("le-only cycles are satisfiable, lt cycles are not") {
  LevelGraph g;
  auto v0 = g.fresh();
  auto v1 = g.fresh();
  REQUIRE_FALSE(g.add_constraint(v0, LevelRel::Le, v1).has_value());
  REQUIRE_FALSE(g.add_constraint(v1, LevelRel::Le, v0).has_value());
  CHECK_FALSE(g.check_satisfiable().has_value());

  LevelGraph h(UniverseMode::Strict);
  auto w0 = h.fresh();
  auto w1 = h.fresh();
  REQUIRE_FALSE(h.add_constraint(w0, LevelRel::Le, w1).has_value());
  auto err = h.add_constraint(w1, LevelRel::Lt, w0);
  REQUIRE(err.has_value());

  LevelGraph off(UniverseMode::Off);
  auto u0 = off.fresh();
  auto u1 = off.fresh();
  REQUIRE_FALSE(off.add_constraint(u0, LevelRel::Le, u1).has_value());
  REQUIRE_FALSE(off.add_constraint(u1, LevelRel::Lt, u0).has_value());
  CHECK_FALSE(off.check_satisfiable().has_value());
}

TEST_CASE("soundness: accepted graphs admit a verifying assignment") {
  // Random DAG-ordered constraints over up to 200 nodes; every edge points
  // from a lower to a higher topological position, so all must be accepted,
  // and the extracted assignment must satisfy each edge numerically.
  std::mt19937_64 rng(20260811);
  for (int round = 0; round < 30; ++round) {
    LevelGraph g(UniverseMode::Strict);
    size_t n = 20 + rng() % 181;
    std::vector<LevelExpr> vars;
    for (size_t i = 0; i < n; ++i) vars.push_back(g.fresh());
    size_t m = n * 2;
    std::vector<LevelConstraint> added;
    for (size_t e = 0; e < m; ++e) {
      size_t i = rng() % (n - 1);
      size_t j = i + 1 + rng() % (n - i - 1);
      LevelRel rel = (rng() & 1) ? LevelRel::Lt : LevelRel::Le;
      auto err = g.add_constraint(vars[i], rel, vars[j]);
      REQUIRE_FALSE(err.has_value());
      added.push_back({vars[i], rel, vars[j], ""});
    }
    auto assign = g.extract_assignment();
    for (auto& c : added) {
      uint64_t a = assign.at(c.lhs.value);
      uint64_t b = assign.at(c.rhs.value);
      if (c.rel == LevelRel::Lt)
        CHECK(a < b);
      else
        CHECK(a <= b);
    }
    CHECK_FALSE(g.check_satisfiable().has_value());
  }
}

TEST_CASE("completeness: a reported cycle replays to a rejection at its "
          "closing edge") {
  std::mt19937_64 rng(1234);
  int reported = 0;
  for (int round = 0; round < 200 && reported < 40; ++round) {
    LevelGraph g(UniverseMode::Strict);
    size_t n = 3 + rng() % 10;
    std::vector<LevelExpr> vars;
    for (size_t i = 0; i < n; ++i) vars.push_back(g.fresh());
    std::optional<UniverseError> err;
    std::vector<LevelConstraint> accepted;
    for (int e = 0; e < 40 && !err; ++e) {
      size_t i = rng() % n, j = rng() % n;
      LevelRel rel = (rng() % 3 == 0) ? LevelRel::Lt : LevelRel::Le;
      err = g.add_constraint(vars[i], rel, vars[j]);
      if (!err) accepted.push_back({vars[i], rel, vars[j], ""});
    }
    if (!err) continue;
    ++reported;
    // the reported path must contain at least one strict edge
    bool has_lt = false;
    for (auto& c : err->edges) has_lt = has_lt || c.rel == LevelRel::Lt;
    CHECK(has_lt);
    // replay: every reported edge is accepted except the last
    LevelGraph h(UniverseMode::Strict);
    for (uint32_t v = 0; v < g.var_count(); ++v) h.fresh();
    REQUIRE_FALSE(err->edges.empty());
    for (size_t k = 0; k + 1 < err->edges.size(); ++k) {
      auto& c = err->edges[k];
      auto r = h.add_constraint(c.lhs, c.rel, c.rhs);
      CHECK_FALSE(r.has_value());
    }
    auto& last = err->edges.back();
    CHECK(h.add_constraint(last.lhs, last.rel, last.rhs).has_value());
  }
  CHECK(reported >= 20);
}

TEST_CASE("mode isolation: off mode never errors") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 20; ++round) {
    LevelGraph g(UniverseMode::Off);
    size_t n = 2 + rng() % 30;
    std::vector<LevelExpr> vars;
    for (size_t i = 0; i < n; ++i) vars.push_back(g.fresh());
    for (int e = 0; e < 100; ++e) {
      LevelExpr a = (rng() & 1) ? vars[rng() % n]
                                : LevelExpr::concrete(rng() % 10);
      LevelExpr b = (rng() & 1) ? vars[rng() % n]
                                : LevelExpr::concrete(rng() % 10);
      LevelRel rel = (rng() & 1) ? LevelRel::Lt : LevelRel::Le;
      CHECK_FALSE(g.add_constraint(a, rel, b).has_value());
    }
    CHECK_FALSE(g.check_satisfiable().has_value());
  }
}

TEST_CASE("impossible concrete constraints are rejected in strict mode") {
  LevelGraph g;
  CHECK(g.add_constraint(LevelExpr::concrete(3), LevelRel::Lt,
                         LevelExpr::concrete(3))
            .has_value());
  CHECK_FALSE(g.add_constraint(LevelExpr::concrete(2), LevelRel::Le,
                               LevelExpr::concrete(2))
                  .has_value());
}

TEST_CASE("rollback restores the constraint set") {
  LevelGraph g;
  auto v0 = g.fresh();
  auto v1 = g.fresh();
  REQUIRE_FALSE(g.add_constraint(v0, LevelRel::Le, v1).has_value());
  auto m = g.mark();
  REQUIRE_FALSE(g.add_constraint(v1, LevelRel::Le, v0).has_value());
  g.rollback(m);
  CHECK(g.constraints().size() == 1);
  auto err = g.add_constraint(v1, LevelRel::Lt, v0);
  CHECK(err.has_value());  // v0 <= v1 still present, so v1 < v0 closes a cycle
}
