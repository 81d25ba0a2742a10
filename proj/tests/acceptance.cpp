// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Every tolerance is pinned here; exact checks use rational equality.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "shiftgame/analysis.hpp"
#include "shiftgame/colouring.hpp"
#include "shiftgame/profiles.hpp"

using namespace shiftgame;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
            << std::endl;
  if (!ok) ++failures;
}

unsigned thread_count() {
  if (const char* env = std::getenv("SHIFTGAME_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// 1. Incentive-gap constants, exactly, plus the 80 floor and the grid check.
void criterion1() {
  auto start = std::chrono::steady_clock::now();
  IncentiveGapFloor floor_ = lemma1_min_gap();
  auto cases = lemma1_twin_cases();
  const Rational expected[4][2] = {{Rational(570), Rational(480)},
                                   {Rational(760), Rational(670)},
                                   {Rational(1140), Rational(820)},
                                   {Rational(780), Rational(670)}};
  bool ok = floor_.min_gap == Rational(100) && floor_.argmin_p == Rational(1, 2) &&
            floor_.grid_confirmed && floor_.symmetric_in_e &&
            floor_.payoff_a0_at_argmin == Rational(150) &&
            floor_.payoff_a1_at_argmin == Rational(50);
  for (size_t i = 0; i < cases.size(); ++i) {
    ok = ok && cases[i].preferred_bound == expected[i][0] &&
         cases[i].other_bound == expected[i][1] && cases[i].gap >= Rational(80) &&
         cases[i].sound;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  ok = ok && ms < 1000;
  std::ostringstream what;
  what << "case bounds (570,480) (760,670) (1140,820) (780,670), every gap >= 80, "
          "min-max gap 100 at p = 1/2, grid cross-checked, "
       << ms << " ms";
  report(1, ok, what.str());
}

// 2. Quadratic root certified inside (0.001503, 0.001504), below 16/10000.
void criterion2() {
  auto start = std::chrono::steady_clock::now();
  MixingBound mb = lemma2_bound();
  bool ok = mb.root_lo > Rational(1503, 1000000) && mb.root_hi < Rational(1504, 1000000) &&
            mixing_quadratic(mb.root_lo) > Rational(0) &&
            mixing_quadratic(mb.root_hi) < Rational(0) && mb.below_stated_upper &&
            mb.root_hi < Rational(16, 10000) && mb.chain_ok && mb.sqrt_route_consistent;
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  ok = ok && ms < 1000;
  report(2, ok,
         "root of c^2 - (999/500)c + 3001/10^6 certified in (" + mb.root_lo.to_string() +
             ", " + mb.root_hi.to_string() + ") inside (0.001503, 0.001504), below 16/10000, " +
             std::to_string(ms) + " ms");
}

// 3. Parity-failure component sum, exactly 0.00395 <= 4/1000.
void criterion3() {
  auto start = std::chrono::steady_clock::now();
  Rational total = lemma2_parity_failure_total();
  Rational component = epsilon_measure_bound(Rational(1, 1000), Rational(80));
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  bool ok = component == Rational(1, 4000) && total == Rational(79, 20000) &&
            total == Rational::from_string("0.00395") && total <= Rational(4, 1000) &&
            ms < 1000;
  report(3, ok,
         "2*(16/10000) + 3*(20*eps/r) = " + total.to_string() + " = 0.00395 <= 4/1000, " +
             std::to_string(ms) + " ms");
}

// 4. Base case and iteration arithmetic, exact rationals.
void criterion4() {
  auto start = std::chrono::steady_clock::now();
  Rational base = lemma3_base_case();
  Rational g13 = lemma3_step(Rational(1, 3));
  bool ok = base == Rational(484032, 1000000) && base >= Rational(48, 100) &&
            g13 == Rational(4, 9) - Rational(1, 125) && g13 > Rational(1, 3);
  for (int k = 0; k <= 20 && ok; ++k) {
    Rational q0 = Rational(48, 100) + Rational(k, 1000);
    if (q0 > Rational(1, 2)) break;
    ok = lemma3_iterate(q0, 100).stays_above_third;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  ok = ok && ms < 1000;
  report(4, ok,
         "2*(124/250)^2 - 1/125 = 0.484032 >= 0.48; g(1/3) = " + g13.to_string() +
             " > 1/3; 100-step trajectories from [0.48, 0.5] stay >= 1/3, " +
             std::to_string(ms) + " ms");
}

// 5. XOR minority-mass law against the four-outcome oracle, zero tolerance.
void criterion5() {
  SplitMix64 rng(2024);
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    Rational p(int128(rng.next() % 501), 1000);
    Rational q(int128(rng.next() % 501), 1000);
    // oracle: enumerate the four outcomes, take the minority mass of the XOR
    Rational odd = p * (Rational(1) - q) + q * (Rational(1) - p);
    Rational oracle = min(odd, Rational(1) - odd);
    ok = xor_convolution(p, q) == oracle;
  }
  report(5, ok, "p + q - 2pq equals the four-outcome XOR minority mass on 10^3 rational pairs");
}

// 6. Collapse mechanism: q_k = 0 for pure profiles; strictly positive
//    minimum max-regret over the 64 pure and the 21-grid mixed profiles.
void criterion6() {
  auto start = std::chrono::steady_clock::now();
  bool q_ok = true;
  // all 64 pure depth-0 profiles
  for (uint64_t bits = 0; bits < 64 && q_ok; ++bits) {
    StrategyProfile p;
    p.depth = 0;
    for (int d = 0; d < 6; ++d) {
      Rational v = Rational(int128((bits >> d) & 1));
      (d < 2 ? p.sigma_g : d < 4 ? p.sigma_r1 : p.sigma_r2).push_back(v);
    }
    q_ok = eta_stats(p).levels[0].q == Rational(0);
  }
  // sampled pure profiles at depths 1 and 2
  SplitMix64 rng(99);
  for (int depth = 1; depth <= 2 && q_ok; ++depth) {
    for (int trial = 0; trial < 100 && q_ok; ++trial) {
      StrategyProfile p;
      p.depth = depth;
      size_t n = cylinder_count(depth);
      for (size_t i = 0; i < n; ++i) {
        p.sigma_g.push_back(Rational(int128(rng.next() % 2)));
        p.sigma_r1.push_back(Rational(int128(rng.next() % 2)));
        p.sigma_r2.push_back(Rational(int128(rng.next() % 2)));
      }
      q_ok = eta_stats(p).levels[depth].q == Rational(0);
    }
  }

  SearchOptions pure_opts;
  pure_opts.depth = 0;
  pure_opts.grid = 2;
  SearchResult pure = min_regret_search(pure_opts);

  SearchOptions grid_opts;
  grid_opts.depth = 0;
  grid_opts.grid = 21;
  grid_opts.threads = thread_count();
  SearchResult grid = min_regret_search(grid_opts);

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  // frozen values from the exhaustive oracles
  bool ok = q_ok && pure.max_regret == Rational(150) && grid.max_regret == Rational(575, 16) &&
            grid.max_regret > Rational(0) && pure.max_regret > Rational(0) &&
            grid.max_regret == harsanyi_regret(grid.profile).max_harsanyi() && ms < 600000;
  std::ostringstream what;
  what << "q_k = 0 for pure profiles (64 at depth 0, 200 sampled deeper); pure minimum "
       << pure.max_regret.to_string() << ", 21-grid minimum " << grid.max_regret.to_string()
       << " = " << grid.max_regret.to_double() << ", both strictly positive, " << ms << " ms";
  report(6, ok, what.str());
}

// 7. Sanity profile: exact (1000, 0, 0).
void criterion7() {
  auto p = StrategyProfile::constant(0, Rational(1), Rational(1), Rational(1));
  RegretReport rep = harsanyi_regret(p);
  // independent oracle: 2000 on the four e=1 depth-1 cylinders, 0 elsewhere
  Rational oracle(0);
  for (uint64_t code = 0; code < cylinder_count(1); ++code) {
    Cylinder t(1, code);
    if (t.e_label() == 1) oracle += Rational(2000);
  }
  oracle = oracle * measure(Cylinder(1, 0)).to_rational();
  bool ok = rep.g0.harsanyi == Rational(1000) && rep.g0.harsanyi == oracle &&
            rep.r1.harsanyi == Rational(0) && rep.r2.harsanyi == Rational(0);
  report(7, ok, "constant b0/a0 profile scores G0 = 1000 exactly, R players = 0 exactly");
}

// 8. Depth-12 pyramid: seeded colouring passes the parity check and induces
//    strict best responses everywhere.
void criterion8() {
  auto start = std::chrono::steady_clock::now();
  PointGraph pyramid = build_generic_pyramid(12, uint64_t(2024));
  Colouring col = seed_colouring(pyramid);
  bool parity_ok = verify_parity(pyramid, col).empty();
  InducedAssignment induced = colouring_to_profile(pyramid, col);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  bool ok = pyramid.size() == 8191 && parity_ok && induced.min_g_gap >= Rational(1000) &&
            induced.min_r_gap >= Rational(100) && ms < 1000;
  std::ostringstream what;
  what << "8191-node pyramid colouring passes the parity check; induced strict gaps: G0 >= "
       << induced.min_g_gap.to_string() << ", R >= " << induced.min_r_gap.to_string() << ", "
       << ms << " ms";
  report(8, ok, what.str());
}

// 9. Two-point graph: contradiction certificate, brute-force confirmation,
//    and a mixed equilibrium with per-node regret <= 10^-9.
void criterion9() {
  auto start = std::chrono::steady_clock::now();
  PointGraph g;
  g.nodes.resize(2);
  g.nodes[0] = {0, 1u, 0u};
  g.nodes[1] = {1, 0u, 0u};

  auto res = detect_parity_infeasible(g);
  auto* c = std::get_if<Contradiction>(&res);
  bool certificate_ok = c != nullptr && c->forced.has_value() && c->forced->first == 1 &&
                        c->forced->second == 1 && c->conflict_node.has_value() &&
                        *c->conflict_node == 0 && replay_contradiction(g, *c);

  bool brute_ok = true;
  for (uint64_t bits = 0; bits < 4; ++bits) {
    int cx = int(bits & 1), cy = int((bits >> 1) & 1);
    bool satisfies = cx == (cy ^ cx ^ 0) && cy == (cx ^ cx ^ 1);
    brute_ok = brute_ok && !satisfies;
  }

  FiniteGameSolution sol = solve_finite_game(g);
  bool solve_ok = sol.converged && sol.max_node_regret <= Rational(1, 1000000000) &&
                  sol.some_node_mixes;
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  bool ok = certificate_ok && brute_ok && solve_ok && ms < 5000;
  std::ostringstream what;
  what << "contradiction replay forces colour(y) = 1 then a self-contradiction at x; all 4 "
          "colourings infeasible; equilibrium with max node regret "
       << sol.max_node_regret.to_string() << " and strict mixing, " << ms << " ms";
  report(9, ok, what.str());
}

// 10. Estimator consistency: 20 seeds, >= 19 within 3 standard errors.
void criterion10() {
  auto p = StrategyProfile::constant(0, Rational(1), Rational(1), Rational(1));
  int passing = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    RegretReport est = mc_regret(p, 100000, seed);
    bool within = (est.g0.harsanyi - Rational(1000)).abs().to_double() <=
                      3.0 * est.g0.std_error &&
                  (est.r1.harsanyi - Rational(0)).abs().to_double() <=
                      3.0 * est.r1.std_error + 1e-12 &&
                  (est.r2.harsanyi - Rational(0)).abs().to_double() <=
                      3.0 * est.r2.std_error + 1e-12;
    if (within) ++passing;
  }
  bool ok = passing >= 19;
  report(10, ok,
         "mc estimates on the sanity profile within 3 standard errors for " +
             std::to_string(passing) + "/20 seeds (need >= 19)");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::cout << (failures == 0 ? "acceptance: ALL PASS" : "acceptance: FAILURES") << " ("
            << (10 - failures) << "/10)" << std::endl;
  return failures == 0 ? 0 : 1;
}
