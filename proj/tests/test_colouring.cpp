#include "shiftgame/colouring.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"

using namespace shiftgame;

namespace {

// all-interior random graph (cycles allowed), the shape of orbit graphs
PointGraph random_closed_graph(size_t n, uint64_t seed) {
  SplitMix64 rng(seed);
  PointGraph g;
  g.nodes.resize(n);
  for (size_t v = 0; v < n; ++v) {
    g.nodes[v].e_bit = static_cast<int>(rng.next() & 1);
    g.nodes[v].t1 = static_cast<uint32_t>(rng.next() % n);
    g.nodes[v].t2 = static_cast<uint32_t>(rng.next() % n);
  }
  return g;
}

bool brute_force_feasible(const PointGraph& g) {
  size_t n = g.size();
  for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
    bool ok = true;
    for (uint32_t v = 0; v < n && ok; ++v) {
      if (!g.interior(v)) continue;
      int cv = int((bits >> v) & 1);
      int c1 = int((bits >> *g.nodes[v].t1) & 1);
      int c2 = int((bits >> *g.nodes[v].t2) & 1);
      ok = cv == (c1 ^ c2 ^ g.nodes[v].e_bit);
    }
    if (ok) return true;
  }
  return false;
}

PointGraph two_point_graph() {
  PointGraph g;
  g.nodes.resize(2);
  g.nodes[0] = {0, 1u, 0u};  // x: e=0, t1 = y, t2 = x
  g.nodes[1] = {1, 0u, 0u};  // y: e=1, t1 = t2 = x
  return g;
}

}  // namespace

TEST_CASE("pyramid construction") {
  CHECK(build_generic_pyramid(0, uint64_t(1)).size() == 1);
  PointGraph p2 = build_generic_pyramid(2, uint64_t(1));
  CHECK(p2.size() == 7);
  int interior = 0;
  for (uint32_t v = 0; v < p2.size(); ++v)
    if (p2.interior(v)) ++interior;
  CHECK(interior == 3);
  CHECK(build_generic_pyramid(12, uint64_t(1)).size() == 8191);
  CHECK(p2.acyclic());
}

TEST_CASE("graph validation") {
  PointGraph bad;
  bad.nodes.resize(2);
  bad.nodes[0] = {0, 1u, std::nullopt};  // exactly one successor
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PointGraph oob;
  oob.nodes.resize(1);
  oob.nodes[0] = {0, 5u, 5u};
  CHECK_THROWS_AS(oob.validate(), std::invalid_argument);
}

TEST_CASE("closure operator") {
  PointGraph pyr = build_generic_pyramid(3, uint64_t(3));
  CHECK(closure(pyr, {}).empty());

  // the root is the twin over its own two children
  auto with_root = closure(pyr, {1u, 2u});
  CHECK(std::find(with_root.begin(), with_root.end(), 0u) != with_root.end());

  // extensive, monotone, idempotent on random subsets
  SplitMix64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<uint32_t> subset;
    for (int k = 0; k < 5; ++k) subset.insert(static_cast<uint32_t>(rng.next() % pyr.size()));
    std::vector<uint32_t> s(subset.begin(), subset.end());
    auto once = closure(pyr, s);
    for (uint32_t v : s) CHECK(std::find(once.begin(), once.end(), v) != once.end());
    auto twice = closure(pyr, once);
    CHECK(once == twice);
    // monotone: a superset's closure contains the subset's closure
    std::set<uint32_t> bigger(subset.begin(), subset.end());
    bigger.insert(static_cast<uint32_t>(rng.next() % pyr.size()));
    auto super = closure(pyr, std::vector<uint32_t>(bigger.begin(), bigger.end()));
    std::set<uint32_t> super_set(super.begin(), super.end());
    for (uint32_t v : once) CHECK(super_set.count(v) == 1);
  }
}

TEST_CASE("seed colouring") {
  // depth-1 pyramid, root e = 0: T1 leaf red, T2 leaf blue, root = 1^0^0
  PointGraph p1 = build_generic_pyramid(1, std::vector<int>{0, 0, 0});
  Colouring col = seed_colouring(p1);
  CHECK(*col[1] == 1);
  CHECK(*col[2] == 0);
  CHECK(*col[0] == 1);

  PointGraph p1e = build_generic_pyramid(1, std::vector<int>{1, 0, 0});
  CHECK(*seed_colouring(p1e)[0] == 0);

  // swapped seed family
  Colouring swapped = seed_colouring(p1, SeedRule::t1_blue_t2_red);
  CHECK(*swapped[1] == 0);
  CHECK(*swapped[2] == 1);
  CHECK(verify_parity(p1, swapped).empty());

  // every output passes the parity check
  for (int L : {0, 1, 4, 12}) {
    PointGraph pyr = build_generic_pyramid(L, uint64_t(100 + L));
    CHECK(verify_parity(pyr, seed_colouring(pyr)).empty());
  }

  CHECK_THROWS_AS(seed_colouring(two_point_graph()), std::invalid_argument);
}

TEST_CASE("verify_parity localizes a flip") {
  PointGraph pyr = build_generic_pyramid(5, uint64_t(17));
  Colouring col = seed_colouring(pyr);
  uint32_t flip = 3;  // interior node
  col[flip] = 1 - *col[flip];
  auto violated = verify_parity(pyr, col);
  // oracle: re-check every interior node directly
  std::set<uint32_t> expect;
  for (uint32_t v = 0; v < pyr.size(); ++v) {
    if (!pyr.interior(v)) continue;
    int want = *col[*pyr.nodes[v].t1] ^ *col[*pyr.nodes[v].t2] ^ pyr.nodes[v].e_bit;
    if (*col[v] != want) expect.insert(v);
  }
  CHECK(std::set<uint32_t>(violated.begin(), violated.end()) == expect);
  // the flipped node and its parent are exactly the violations in a pyramid
  CHECK(expect.count(flip) == 1);
  CHECK(expect.count((flip - 1) / 2) == 1);
  CHECK(expect.size() == 2);

  // single-node graph passes vacuously
  PointGraph single = build_generic_pyramid(0, uint64_t(4));
  CHECK(verify_parity(single, seed_colouring(single)).empty());
}

TEST_CASE("extend colouring") {
  PointGraph pyr = build_generic_pyramid(3, uint64_t(9));
  // empty fixed domain: extending from the root colours everything
  Colouring empty(pyr.size());
  auto res = extend_colouring(pyr, empty, 0);
  auto* col = std::get_if<Colouring>(&res);
  REQUIRE(col != nullptr);
  CHECK(is_total(*col));
  CHECK(verify_parity(pyr, *col).empty());

  // re-running with its own output is the identity
  auto again = extend_colouring(pyr, *col, 0);
  CHECK(std::get<Colouring>(again) == *col);

  // new root above a coloured sub-pyramid: the fresh successor is the XOR of
  // root colour, hitting-point colour and the root's e bit
  PointGraph g;
  g.nodes.resize(3);
  g.nodes[0] = {1, 1u, 2u};  // new root
  g.nodes[1] = {0, std::nullopt, std::nullopt};  // hitting point (in P)
  g.nodes[2] = {0, std::nullopt, std::nullopt};  // fresh leaf
  Colouring fixed(3);
  fixed[1] = 1;
  auto res2 = extend_colouring(g, fixed, 0);
  auto* col2 = std::get_if<Colouring>(&res2);
  REQUIRE(col2 != nullptr);
  CHECK(*(*col2)[0] == 0);  // deterministic default at the new root
  CHECK(*(*col2)[1] == 1);  // fixed domain untouched
  CHECK(*(*col2)[2] == (0 ^ 1 ^ 1));

  // incompatibly pinned successors surface as a contradiction
  PointGraph g2;
  g2.nodes.resize(3);
  g2.nodes[0] = {0, 1u, 2u};
  g2.nodes[1] = {0, std::nullopt, std::nullopt};
  g2.nodes[2] = {0, std::nullopt, std::nullopt};
  Colouring pinned(3);
  pinned[1] = 0;
  pinned[2] = 1;  // needs 0^0^0 == 0 but 0^1 = 1
  auto res3 = extend_colouring(g2, pinned, 0);
  CHECK(std::holds_alternative<Contradiction>(res3));
}

TEST_CASE("two-point graph: contradiction certificate") {
  PointGraph g = two_point_graph();
  auto res = detect_parity_infeasible(g);
  auto* c = std::get_if<Contradiction>(&res);
  REQUIRE(c != nullptr);
  REQUIRE(c->forced.has_value());
  CHECK(c->forced->first == 1);   // y
  CHECK(c->forced->second == 1);  // forced to colour 1
  REQUIRE(c->conflict_node.has_value());
  CHECK(*c->conflict_node == 0);  // x coloured differently from itself
  CHECK(replay_contradiction(g, *c));
  CHECK_FALSE(brute_force_feasible(g));
}

TEST_CASE("feasible systems") {
  // acyclic graphs always admit a colouring
  for (int L : {1, 3, 6}) {
    PointGraph pyr = build_generic_pyramid(L, uint64_t(40 + L));
    auto res = detect_parity_infeasible(pyr);
    auto* col = std::get_if<Colouring>(&res);
    REQUIRE(col != nullptr);
    CHECK(verify_parity(pyr, *col).empty());
  }

  // self loop with e = 0: the one-variable equation forces colour 0
  PointGraph loop;
  loop.nodes.resize(1);
  loop.nodes[0] = {0, 0u, 0u};
  auto res = detect_parity_infeasible(loop);
  auto* col = std::get_if<Colouring>(&res);
  REQUIRE(col != nullptr);
  CHECK(*(*col)[0] == 0);
}

TEST_CASE("solver agrees with the brute-force oracle up to 12 nodes") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    size_t n = 2 + size_t(seed % 11);  // sizes 2..12
    PointGraph g = random_closed_graph(n, 1000 + seed);
    auto res = detect_parity_infeasible(g);
    bool feasible = std::holds_alternative<Colouring>(res);
    CHECK(feasible == brute_force_feasible(g));
    if (feasible) {
      CHECK(verify_parity(g, std::get<Colouring>(res)).empty());
    } else {
      CHECK(replay_contradiction(g, std::get<Contradiction>(res)));
    }
  }
}

TEST_CASE("induced pure assignment has strict margins") {
  // spot values
  PointGraph g;
  g.nodes.resize(3);
  g.nodes[0] = {0, 1u, 2u};
  g.nodes[1] = {0, std::nullopt, std::nullopt};
  g.nodes[2] = {0, std::nullopt, std::nullopt};
  Colouring col(3);
  col[1] = 0;
  col[2] = 0;
  col[0] = 0;  // 0 ^ 0 ^ 0
  InducedAssignment ind = colouring_to_profile(g, col);
  CHECK(ind.g_gap[0] == Rational(1000));  // 1000 vs 0 under (a0, a0) at e=0
  CHECK(ind.r1_gap[0] == Rational(300));
  CHECK(ind.r2_gap[0] == Rational(100));

  col[1] = 1;
  col[0] = 1;  // 1 ^ 0 ^ 0
  InducedAssignment ind2 = colouring_to_profile(g, col);
  CHECK(ind2.g_gap[0] == Rational(2000));  // b1 pays 2000 vs b0 paying 0 under (a1, a0)
  CHECK(ind2.r1_gap[0] == Rational(100));  // matching b1 at e=0 pays 100 vs 0

  col[1] = 0;
  col[2] = 1;
  col[0] = 1;  // 0 ^ 1 ^ 0
  InducedAssignment ind3 = colouring_to_profile(g, col);
  CHECK(ind3.g_gap[0] == Rational(1000));  // b1 pays 1000 vs b0 paying 0 under (a0, a1)

  // whole pyramid: G margins at least 1000, R margins at least 100
  PointGraph pyr = build_generic_pyramid(8, uint64_t(3));
  InducedAssignment full = colouring_to_profile(pyr, seed_colouring(pyr));
  CHECK(full.min_g_gap >= Rational(1000));
  CHECK(full.min_r_gap >= Rational(100));

  // rejects non-parity colourings
  col[0] = 0;
  CHECK_THROWS_AS(colouring_to_profile(g, col), std::invalid_argument);
}

TEST_CASE("finite game solver") {
  // acyclic graphs recover a pure parity equilibrium
  PointGraph pyr = build_generic_pyramid(4, uint64_t(5));
  FiniteGameSolution sol = solve_finite_game(pyr);
  CHECK(sol.method == "acyclic_pure");
  CHECK(sol.converged);
  CHECK(sol.max_node_regret == Rational(0));
  CHECK_FALSE(sol.some_node_mixes);
  // the pure assignment is a parity colouring
  Colouring col(pyr.size());
  for (uint32_t v = 0; v < pyr.size(); ++v)
    col[v] = sol.mix[v].g == Rational(1) ? 0 : 1;
  CHECK(verify_parity(pyr, col).empty());

  // the two-point graph needs mixing and the solver finds exact zero regret
  PointGraph g = two_point_graph();
  FiniteGameSolution mixed = solve_finite_game(g);
  CHECK(mixed.method == "support_enumeration");
  CHECK(mixed.converged);
  CHECK(mixed.max_node_regret == Rational(0));
  CHECK(mixed.some_node_mixes);

  // an independently derived equilibrium of the same graph re-scores to zero
  std::vector<FiniteGameSolution::NodeMix> hand = {
      {Rational(3, 4), Rational(1), Rational(1, 2)},
      {Rational(0), Rational(0), Rational(0)}};
  CHECK(detail::max_node_regret(g, hand) == Rational(0));

  // self loop solves pure with colour 0
  PointGraph loop;
  loop.nodes.resize(1);
  loop.nodes[0] = {0, 0u, 0u};
  FiniteGameSolution lsol = solve_finite_game(loop);
  CHECK(lsol.converged);
  CHECK(lsol.max_node_regret == Rational(0));
  CHECK(lsol.mix[0].g == Rational(1));  // plays b0, the colour-0 action
}

TEST_CASE("solver never reports a silent wrong answer on cyclic graphs") {
  // regardless of convergence, the reported regret must equal an independent
  // exact re-score of the returned assignment
  SolveOptions opts;
  opts.restarts = 4;
  opts.max_iterations = 20000;
  for (uint64_t seed : {3ull, 4ull, 5ull}) {
    PointGraph g = random_closed_graph(4, 500 + seed);
    if (g.acyclic()) continue;
    FiniteGameSolution sol = solve_finite_game(g, opts);
    CHECK(sol.max_node_regret == detail::max_node_regret(g, sol.mix));
    if (sol.converged) CHECK(sol.max_node_regret <= opts.tolerance);
  }
}
