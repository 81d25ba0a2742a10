#pragma once
// Machine checks for the quantitative lemma constants, and the desk-scale
// minimum-regret search over depth-0/1 measurable profiles.
//
// All reported numbers are exact rationals. Floating point appears only
// inside search loops; every search result is re-scored exactly before it is
// returned.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "shiftgame/cylinder.hpp"
#include "shiftgame/payoffs.hpp"
#include "shiftgame/profiles.hpp"
#include "shiftgame/rational.hpp"

namespace shiftgame {

// ---------------------------------------------------------------------------
// Incentive gap floor: min over G0 mixtures of the larger R incentive gap.

struct IncentiveGapFloor {
  Rational min_gap;       // 100
  Rational argmin_p;      // 1/2, P(b0) at the minimiser
  Rational payoff_a0_at_argmin;  // R1's two action payoffs at the minimiser
  Rational payoff_a1_at_argmin;
  bool symmetric_in_e;    // both e bits give the same envelope
  bool grid_confirmed;    // 10^4-point grid never beats the analytic minimum
};

inline IncentiveGapFloor lemma1_min_gap() {
  // max(|400p-100|, |400p-300|) is piecewise linear; its minimum over [0,1]
  // sits at a kink or at the crossing of the two branches.
  const std::array<Rational, 5> candidates = {Rational(0), Rational(1, 4), Rational(1, 2),
                                              Rational(3, 4), Rational(1)};
  IncentiveGapFloor out;
  out.symmetric_in_e = true;
  bool first = true;
  for (int e = 0; e < 2; ++e) {
    Rational best_for_e;
    Rational arg_for_e;
    bool first_cand = true;
    for (const Rational& p : candidates) {
      Mixture m{p};
      Rational envelope = max(incentive_gap_R(RPlayer::R1, e, m),
                              incentive_gap_R(RPlayer::R2, e, m));
      if (first_cand || envelope < best_for_e) {
        best_for_e = envelope;
        arg_for_e = p;
        first_cand = false;
      }
    }
    if (first) {
      out.min_gap = best_for_e;
      out.argmin_p = arg_for_e;
      first = false;
    } else if (best_for_e != out.min_gap) {
      out.symmetric_in_e = false;
      out.min_gap = min(out.min_gap, best_for_e);
    }
  }
  out.payoff_a0_at_argmin = expected_payoff_R(RPlayer::R1, 0, Mixture{out.argmin_p},
                                              Mixture::pure(ActionA::a0));
  out.payoff_a1_at_argmin = expected_payoff_R(RPlayer::R1, 0, Mixture{out.argmin_p},
                                              Mixture::pure(ActionA::a1));

  out.grid_confirmed = true;
  for (int k = 0; k <= 10000 && out.grid_confirmed; ++k) {
    Mixture m{Rational(k, 10000)};
    for (int e = 0; e < 2; ++e) {
      Rational envelope = max(incentive_gap_R(RPlayer::R1, e, m),
                              incentive_gap_R(RPlayer::R2, e, m));
      if (envelope < out.min_gap) out.grid_confirmed = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Twin case table: the four two-sided payoff bounds behind the 80 gap.
//
// In each case one R player's minority action has probability w <= 1/20 and
// the other R player's mixture is confined to one side of 3/5. The reproduced
// bounds are the conservative product bounds of the source argument (each
// monomial evaluated at its own worst corner); the exact extrema of the full
// bilinear payoffs over the same rectangles are computed alongside and must
// confirm the reproduced bounds from the tight side.

struct TwinCase {
  std::string label;
  int e_bit = 0;              // twin at which G0's incentive appears
  ActionB preferred = ActionB::b0;
  Rational preferred_bound;   // reproduced lower bound for the preferred action
  Rational other_bound;       // reproduced upper bound for the other action
  Rational exact_min_preferred;  // corner minimum of the true expected payoff
  Rational exact_max_other;      // corner maximum of the true expected payoff
  Rational gap;               // preferred_bound - other_bound
  bool sound = false;         // exact extrema confirm both reproduced bounds
};

namespace detail {
// Corner extrema of E[payoff_G(e, b, R1, R2)] over a mixture rectangle.
// u ranges over R1's P(a0), and the R2 mixture puts weight w on `minority`.
inline void g_payoff_extrema(int e, ActionB b, const Rational& u_lo, const Rational& u_hi,
                             ActionA minority, const Rational& w_hi, Rational& out_min,
                             Rational& out_max) {
  bool first = true;
  for (const Rational& u : {u_lo, u_hi}) {
    for (const Rational& w : {Rational(0), w_hi}) {
      Mixture r1{u};
      Mixture r2{minority == ActionA::a0 ? w : Rational(1) - w};
      Rational v = expected_payoff_G(e, b, r1, r2);
      if (first || v < out_min) out_min = v;
      if (first || v > out_max) out_max = v;
      first = false;
    }
  }
}
}  // namespace detail

inline std::array<TwinCase, 4> lemma1_twin_cases() {
  const Rational w(1, 20), wc(19, 20);       // minority cap and its complement
  const Rational u(3, 5), uc(2, 5);          // R1 split point and its complement
  std::array<TwinCase, 4> cases;

  // Case 1: R2 plays a0 with w <= 1/20; R1 plays a0 with >= 3/5; twin e = 1.
  cases[0].label = "R2:a0<=1/20, R1:a0>=3/5";
  cases[0].e_bit = 1;
  cases[0].preferred = ActionB::b0;
  cases[0].preferred_bound = Rational(1000) * u * wc;                  // 570
  cases[0].other_bound = Rational(400) * wc + Rational(2000) * w;      // 480
  {
    Rational dmin, dmax;
    detail::g_payoff_extrema(1, ActionB::b0, u, Rational(1), ActionA::a0, w,
                             cases[0].exact_min_preferred, dmax);
    detail::g_payoff_extrema(1, ActionB::b1, u, Rational(1), ActionA::a0, w, dmin,
                             cases[0].exact_max_other);
  }

  // Case 2: R2 plays a0 with w <= 1/20; R1 plays a1 with >= 2/5; twin e = 0.
  cases[1].label = "R2:a0<=1/20, R1:a1>=2/5";
  cases[1].e_bit = 0;
  cases[1].preferred = ActionB::b0;
  cases[1].preferred_bound = Rational(2000) * uc * wc;                 // 760
  cases[1].other_bound = Rational(600) * wc + Rational(2000) * w;      // 670
  {
    Rational dmin, dmax;
    detail::g_payoff_extrema(0, ActionB::b0, Rational(0), u, ActionA::a0, w,
                             cases[1].exact_min_preferred, dmax);
    detail::g_payoff_extrema(0, ActionB::b1, Rational(0), u, ActionA::a0, w, dmin,
                             cases[1].exact_max_other);
  }

  // Case 3: R2 plays a1 with w <= 1/20; R1 plays a0 with >= 3/5; twin e = 1.
  cases[2].label = "R2:a1<=1/20, R1:a0>=3/5";
  cases[2].e_bit = 1;
  cases[2].preferred = ActionB::b1;
  cases[2].preferred_bound = Rational(2000) * u * wc;                  // 1140
  cases[2].other_bound = Rational(2000) * uc + Rational(1000) * uc * w;  // 820
  {
    Rational dmin, dmax;
    detail::g_payoff_extrema(1, ActionB::b1, u, Rational(1), ActionA::a1, w,
                             cases[2].exact_min_preferred, dmax);
    detail::g_payoff_extrema(1, ActionB::b0, u, Rational(1), ActionA::a1, w, dmin,
                             cases[2].exact_max_other);
  }

  // Case 4: R2 plays a1 with w <= 1/20; R1 plays a1 with >= 2/5; twin e = 0.
  cases[3].label = "R2:a1<=1/20, R1:a1>=2/5";
  cases[3].e_bit = 0;
  cases[3].preferred = ActionB::b1;
  cases[3].preferred_bound = uc * (Rational(2000) * wc + Rational(1000) * w);  // 780
  cases[3].other_bound = Rational(600) * wc + Rational(2000) * w;              // 670
  {
    Rational dmin, dmax;
    detail::g_payoff_extrema(0, ActionB::b1, Rational(0), u, ActionA::a1, w,
                             cases[3].exact_min_preferred, dmax);
    detail::g_payoff_extrema(0, ActionB::b0, Rational(0), u, ActionA::a1, w, dmin,
                             cases[3].exact_max_other);
  }

  for (TwinCase& c : cases) {
    c.gap = c.preferred_bound - c.other_bound;
    c.sound = c.exact_min_preferred >= c.preferred_bound &&
              c.exact_max_other <= c.other_bound && c.gap >= Rational(80);
  }
  return cases;
}

// ---------------------------------------------------------------------------
// Mixing-mass bound: the quadratic 0 <= c^2 - (999/500)c + 3001/10^6 and its
// certified smaller root.

inline Rational mixing_quadratic(const Rational& c) {
  return c * c - Rational(999, 500) * c + Rational(3001, 1000000);
}

struct MixingBound {
  Rational root_lo, root_hi;   // quadratic(root_lo) > 0 > quadratic(root_hi)
  Rational sqrt_lo, sqrt_hi;   // two-sided bracket of sqrt(199/200)
  bool below_stated_upper = false;  // root_hi < 16/10000
  bool chain_ok = false;            // substitution chain reproduces the quadratic
  bool sqrt_route_consistent = false;
};

inline MixingBound lemma2_bound() {
  MixingBound out;

  // Bisect for the smaller root: positive side on the left, negative inside.
  Rational lo(0), hi(1, 500);
  if (!(mixing_quadratic(lo) > Rational(0)) || !(mixing_quadratic(hi) < Rational(0)))
    throw std::logic_error("mixing quadratic lost its sign bracket");
  const Rational width(1, 10000000);
  for (int iter = 0; iter < 200 && hi - lo > width; ++iter) {
    Rational mid = (lo + hi) / Rational(2);
    if (mixing_quadratic(mid) > Rational(0))
      lo = mid;
    else
      hi = mid;
  }
  out.root_lo = lo;
  out.root_hi = hi;
  out.below_stated_upper = mixing_quadratic(Rational(16, 10000)) < Rational(0) &&
                           hi < Rational(16, 10000);

  // Independent route: root = 999/1000 - sqrt(199/200), sqrt by bisection.
  Rational s_lo(0), s_hi(1);
  const Rational target(199, 200);
  for (int iter = 0; iter < 200 && s_hi - s_lo > Rational(1, 100000000); ++iter) {
    Rational mid = (s_lo + s_hi) / Rational(2);
    if (mid * mid < target)
      s_lo = mid;
    else
      s_hi = mid;
  }
  out.sqrt_lo = s_lo;
  out.sqrt_hi = s_hi;
  Rational route_lo = Rational(999, 1000) - s_hi;
  Rational route_hi = Rational(999, 1000) - s_lo;
  out.sqrt_route_consistent = mixing_quadratic(route_lo) > Rational(0) &&
                              mixing_quadratic(route_hi) < Rational(0) &&
                              route_lo < out.root_hi && out.root_lo < route_hi;

  // Audit of the inequality chain: substituting a+b <= c + 1/1000 and
  // ab <= (a+b)^2/4 into c <= 1/4000 + ab + (a+b)/2 must reproduce the
  // quadratic's coefficients exactly. 4*(bound(c) - c) has coefficients
  // (1, -999/500*... ) after expansion; compare term by term.
  {
    // bound(c) = 1/4000 + (c + 1/1000)^2 / 4 + (c + 1/1000) / 2
    // 4*(bound(c) - c) = c^2 + c*(2/1000 + 2 - 4) + (1/1000 + 1/10^6 + 2/1000)
    Rational coeff2(1);
    Rational coeff1 = Rational(2, 1000) + Rational(2) - Rational(4);
    Rational coeff0 = Rational(1, 1000) + Rational(1, 1000000) + Rational(2, 1000);
    out.chain_ok = coeff2 == Rational(1) && coeff1 == -Rational(999, 500) &&
                   coeff0 == Rational(3001, 1000000);
  }
  return out;
}

// Components of the parity-failure bound: two mixing masses of at most
// 16/10000 plus three 20*eps/r terms at eps = 1/1000, r = 80.
inline Rational lemma2_parity_failure_total() {
  Rational mixing(16, 10000);
  Rational response = epsilon_measure_bound(Rational(1, 1000), Rational(80));
  return Rational(2) * mixing + Rational(3) * response;
}

// ---------------------------------------------------------------------------
// Minority-mass recursion.

// Minority mass of the XOR of independent two-colourings with minority
// masses p and q: p + q - 2pq. Defined on [0, 1/2]^2 only.
inline Rational xor_convolution(const Rational& p, const Rational& q) {
  if (p < Rational(0) || q < Rational(0) || p > Rational(1, 2) || q > Rational(1, 2))
    throw std::invalid_argument("xor_convolution needs minority masses in [0, 1/2]");
  return p + q - Rational(2) * p * q;
}

// Lower bound for the minority mass of a combined cylinder given the two
// component masses and the three conditional parity-failure masses.
inline Rational lemma3_recursion_lower(const Rational& eta_c, const Rational& eta_d,
                                       const Rational& r_c, const Rational& r_d,
                                       const Rational& r_t) {
  for (const Rational* v : {&eta_c, &eta_d, &r_c, &r_d, &r_t})
    if (*v < Rational(0) || *v > Rational(1))
      throw std::invalid_argument("recursion inputs must lie in [0, 1]");
  if (eta_c > Rational(1, 2) || eta_d > Rational(1, 2))
    throw std::invalid_argument("eta inputs must lie in [0, 1/2]");
  return -r_t + eta_c * (Rational(1) - eta_d - r_d) + eta_d * (Rational(1) - eta_c - r_c);
}

// 2*(124/250)^2 - 1/125, the depth-0 split floor.
inline Rational lemma3_base_case() {
  Rational w(124, 250);
  return Rational(2) * w * w - Rational(1, 125);
}

// One exact step of g(q) = 2q - 2q^2 - 1/125 (clamped below at 0).
inline Rational lemma3_step(const Rational& q) {
  Rational v = Rational(2) * q - Rational(2) * q * q - Rational(1, 125);
  return v < Rational(0) ? Rational(0) : v;
}

struct QTrajectory {
  std::vector<Rational> values;  // values[0] = start, then certified lower bounds
  bool stays_above_third = false;
};

// Iterates g with directed rounding: every value is floored onto the grid
// k/10^9, which keeps denominators bounded while staying a valid lower bound
// for the true trajectory (g is nondecreasing on [0, 1/2]).
inline QTrajectory lemma3_iterate(const Rational& q0, int steps) {
  if (q0 < Rational(0) || q0 > Rational(1, 2))
    throw std::invalid_argument("iteration start must lie in [0, 1/2]");
  const int128 D = 1000000000;
  QTrajectory out;
  out.values.reserve(steps + 1);
  out.values.push_back(q0);
  int128 a = (q0.num() * D) / q0.den();  // floor, q0 >= 0
  for (int i = 0; i < steps; ++i) {
    int128 next = 2 * a * D - 2 * a * a - (D * D) / 125;
    if (next < 0) next = 0;
    a = next / D;  // floor back onto the grid
    out.values.push_back(Rational(a, D));
  }
  const Rational third(1, 3);
  out.stays_above_third = true;
  for (const Rational& v : out.values)
    if (v < third) out.stays_above_third = false;
  return out;
}

// ---------------------------------------------------------------------------
// Desk-scale minimum-regret search over depth-0/1 profiles.

struct SearchOptions {
  int depth = 0;          // 0 or 1
  int grid = 21;          // points per coordinate, k/(grid-1)
  int restarts = 16;      // multi-start count at depth 1
  int refine_rounds = 0;  // local halving rounds after the scan
  uint64_t seed = 0;
  unsigned threads = 1;
  EnumerationLimits limits{};
};

struct SearchResult {
  StrategyProfile profile;
  RegretReport report;     // exact re-evaluation of the winner
  Rational max_regret;     // max of the three Harsanyi regrets
  uint64_t evaluated = 0;  // double evaluations performed
};

namespace detail {

// Fast double-precision evaluation of the max Harsanyi regret for depth-n
// profiles laid out as [sigma_g | sigma_r1 | sigma_r2].
struct FastEvaluator {
  int depth;
  int per_map;                       // cylinder_count(depth)
  std::vector<uint32_t> shift1, shift2, restr;  // index tables at depth+1

  explicit FastEvaluator(int depth_) : depth(depth_) {
    per_map = static_cast<int>(cylinder_count(depth));
    uint64_t count = cylinder_count(depth + 1);
    shift1.resize(count);
    shift2.resize(count);
    restr.resize(count);
    for (uint64_t code = 0; code < count; ++code) {
      Cylinder t(depth + 1, code);
      shift1[code] = static_cast<uint32_t>(shift(t, Gen::T1).code());
      shift2[code] = static_cast<uint32_t>(shift(t, Gen::T2).code());
      restr[code] = static_cast<uint32_t>(restrict_to_depth(t, depth).code());
    }
  }

  double operator()(const double* vars) const {
    const double* g = vars;
    const double* r1 = vars + per_map;
    const double* r2 = vars + 2 * per_map;

    double g_sum = 0.0;
    const size_t count = shift1.size();
    for (size_t code = 0; code < count; ++code) {
      int e = static_cast<int>(code & 1);
      double p1 = r1[shift1[code]];
      double p2 = r2[shift2[code]];
      double q = g[restr[code]];
      double e0 = 0.0, e1 = 0.0;
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          double w = (a1 ? 1.0 - p1 : p1) * (a2 ? 1.0 - p2 : p2);
          e0 += w * shiftgame::detail::kGPayoff[e][0][a1][a2];
          e1 += w * shiftgame::detail::kGPayoff[e][1][a1][a2];
        }
      double best = e0 > e1 ? e0 : e1;
      g_sum += best - (q * e0 + (1.0 - q) * e1);
    }
    double hg = g_sum / double(count);

    double hr1 = 0.0, hr2 = 0.0;
    for (int code = 0; code < per_map; ++code) {
      int e = code & 1;
      double q = g[code];
      for (int pl = 0; pl < 2; ++pl) {
        double e0 = q * shiftgame::detail::kRPayoff[pl][e][0][0];
        double e1 = (1.0 - q) * shiftgame::detail::kRPayoff[pl][e][1][1];
        double best = e0 > e1 ? e0 : e1;
        double own = pl == 0 ? r1[code] : r2[code];
        double gain = best - (own * e0 + (1.0 - own) * e1);
        (pl == 0 ? hr1 : hr2) += gain;
      }
    }
    hr1 /= double(per_map);
    hr2 /= double(per_map);
    return std::max(hg, std::max(hr1, hr2));
  }
};

inline StrategyProfile profile_from_vars(int depth, const std::vector<Rational>& vars) {
  size_t per_map = cylinder_count(depth);
  StrategyProfile p;
  p.depth = depth;
  p.sigma_g.assign(vars.begin(), vars.begin() + per_map);
  p.sigma_r1.assign(vars.begin() + per_map, vars.begin() + 2 * per_map);
  p.sigma_r2.assign(vars.begin() + 2 * per_map, vars.end());
  p.validate();
  return p;
}

inline Rational exact_max_regret(int depth, const std::vector<Rational>& vars,
                                 const EnumerationLimits& limits) {
  RegretReport rep = harsanyi_regret(profile_from_vars(depth, vars), limits);
  return rep.max_harsanyi();
}

}  // namespace detail

// Exhaustive grid scan at depth 0 (grid^6 points) with exact re-scoring of
// the near-optimal set; multi-start coordinate descent at depth 1.
// Deterministic for fixed (options, seed); ties resolve to the
// lexicographically smallest variable vector.
inline SearchResult min_regret_search(const SearchOptions& options) {
  if (options.depth != 0 && options.depth != 1)
    throw std::invalid_argument("search supports depth 0 or 1 only");
  if (options.grid < 2) throw std::invalid_argument("grid needs at least 2 points");

  const int depth = options.depth;
  const int per_map = static_cast<int>(cylinder_count(depth));
  const int dims = 3 * per_map;
  const int denom = options.grid - 1;
  detail::FastEvaluator eval(depth);

  SearchResult result;
  std::vector<std::vector<int>> near_best;  // grid coordinates of candidates

  if (depth == 0) {
    // full scan over grid^6
    const uint64_t total = [&] {
      uint64_t t = 1;
      for (int d = 0; d < dims; ++d) t *= uint64_t(options.grid);
      return t;
    }();
    unsigned thread_count = std::max(1u, options.threads);
    std::vector<double> thread_best(thread_count, 1e18);
    std::vector<std::vector<std::vector<int>>> thread_near(thread_count);
    std::vector<uint64_t> thread_evals(thread_count, 0);

    auto scan_range = [&](unsigned tid, uint64_t begin, uint64_t end) {
      std::array<double, 6> vars{};
      std::array<int, 6> coords{};
      const double tol = 1e-7;
      double best = 1e18;
      std::vector<std::vector<int>>& near = thread_near[tid];
      for (uint64_t idx = begin; idx < end; ++idx) {
        uint64_t rem = idx;
        for (int d = dims - 1; d >= 0; --d) {
          coords[d] = static_cast<int>(rem % options.grid);
          rem /= options.grid;
          vars[d] = double(coords[d]) / double(denom);
        }
        double v = eval(vars.data());
        ++thread_evals[tid];
        if (v < best - tol) {
          best = v;
          near.clear();
        }
        if (v <= best + tol) {
          if (near.size() < 8192)
            near.emplace_back(coords.begin(), coords.begin() + dims);
          if (v < best) best = v;
        }
      }
      thread_best[tid] = best;
    };

    if (thread_count == 1) {
      scan_range(0, 0, total);
    } else {
      std::vector<std::thread> workers;
      uint64_t chunk = (total + thread_count - 1) / thread_count;
      for (unsigned t = 0; t < thread_count; ++t) {
        uint64_t begin = t * chunk;
        uint64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back(scan_range, t, begin, end);
      }
      for (auto& w : workers) w.join();
    }

    double best = 1e18;
    for (unsigned t = 0; t < thread_count; ++t) best = std::min(best, thread_best[t]);
    for (unsigned t = 0; t < thread_count; ++t) {
      for (auto& coords : thread_near[t]) {
        std::array<double, 6> vars{};
        for (int d = 0; d < dims; ++d) vars[d] = double(coords[d]) / double(denom);
        if (eval(vars.data()) <= best + 1e-7) near_best.push_back(coords);
      }
      result.evaluated += thread_evals[t];
    }
  } else {
    // depth 1: seeded multi-start coordinate descent on the 24-dim cube
    SplitMix64 rng(options.seed);
    double best = 1e18;
    std::vector<int> best_coords;
    std::vector<double> vars(dims);
    std::vector<int> coords(dims);
    for (int start = 0; start < std::max(1, options.restarts); ++start) {
      for (int d = 0; d < dims; ++d) {
        coords[d] = static_cast<int>(rng.next() % uint64_t(options.grid));
        vars[d] = double(coords[d]) / double(denom);
      }
      double current = eval(vars.data());
      ++result.evaluated;
      bool improved = true;
      int sweeps = 0;
      while (improved && sweeps < 200) {
        improved = false;
        ++sweeps;
        for (int d = 0; d < dims; ++d) {
          for (int delta : {-1, 1}) {
            int nc = coords[d] + delta;
            if (nc < 0 || nc > denom) continue;
            double saved = vars[d];
            vars[d] = double(nc) / double(denom);
            double v = eval(vars.data());
            ++result.evaluated;
            if (v < current - 1e-12) {
              current = v;
              coords[d] = nc;
              improved = true;
            } else {
              vars[d] = saved;
            }
          }
        }
      }
      if (current < best - 1e-12 ||
          (current < best + 1e-12 && (best_coords.empty() || coords < best_coords))) {
        best = current;
        best_coords = coords;
      }
    }
    near_best.push_back(best_coords);
  }

  // sort candidates lexicographically, then re-score exactly
  std::sort(near_best.begin(), near_best.end());
  near_best.erase(std::unique(near_best.begin(), near_best.end()), near_best.end());

  bool have = false;
  Rational best_exact;
  std::vector<Rational> best_vars;
  for (const auto& coords : near_best) {
    std::vector<Rational> vars;
    vars.reserve(dims);
    for (int d = 0; d < dims; ++d) vars.emplace_back(coords[d], denom);
    Rational v = detail::exact_max_regret(depth, vars, options.limits);
    if (!have || v < best_exact) {
      have = true;
      best_exact = v;
      best_vars = vars;
    }
  }
  if (!have) throw std::logic_error("search produced no candidate");

  // optional local refinement on halved steps; never accepts a worse point
  Rational step(1, denom);
  for (int round = 0; round < options.refine_rounds; ++round) {
    step = step / Rational(2);
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps < 50) {
      improved = false;
      ++sweeps;
      for (int d = 0; d < dims; ++d) {
        for (int sign : {-1, 1}) {
          Rational candidate = best_vars[d] + Rational(sign) * step;
          if (candidate < Rational(0) || candidate > Rational(1)) continue;
          std::vector<Rational> trial = best_vars;
          trial[d] = candidate;
          Rational v = detail::exact_max_regret(depth, trial, options.limits);
          ++result.evaluated;
          if (v < best_exact) {
            best_exact = v;
            best_vars = trial;
            improved = true;
          }
        }
      }
    }
  }

  result.profile = detail::profile_from_vars(depth, best_vars);
  result.report = harsanyi_regret(result.profile, options.limits);
  result.max_regret = result.report.max_harsanyi();
  return result;
}

}  // namespace shiftgame
