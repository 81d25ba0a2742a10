#pragma once
// Depth-n measurable strategy profiles and their exact regret accounting.
//
// A profile fixes, for each depth-n cylinder, G0's P(b0) and each R player's
// P(a0). R players' local payoffs are measurable at depth n; G0's depend on
// the two shift images, so its local payoffs are measurable one level deeper
// and all G0 regrets are evaluated over depth-(n+1) cylinders.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftgame/cylinder.hpp"
#include "shiftgame/payoffs.hpp"
#include "shiftgame/rational.hpp"

namespace shiftgame {

// Raised when an operation would enumerate past the configured depth cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Exact enumeration is cheap through depth 3 (2^15 cylinders); depth 4
// (2^31) must be opted into explicitly. Beyond that, sample with mc_regret.
struct EnumerationLimits {
  int max_depth = 3;
};

inline void require_enumerable(int depth, const EnumerationLimits& limits) {
  if (depth > limits.max_depth) {
    throw CapExceeded("enumeration at depth " + std::to_string(depth) +
                      " exceeds the cap (" + std::to_string(limits.max_depth) +
                      "); raise the cap explicitly or use mc_regret");
  }
  if (depth > 4) {
    throw CapExceeded("enumeration beyond depth 4 is not supported; use mc_regret");
  }
}

enum class MixClass { A0, A1, AM };

inline const char* to_string(MixClass c) {
  switch (c) {
    case MixClass::A0: return "A0";
    case MixClass::A1: return "A1";
    default: return "AM";
  }
}

// A0 iff P(b0) >= 19/20, A1 iff P(b1) >= 19/20 (both inclusive), else AM.
inline MixClass classify(const Mixture& g_mix) {
  static const Rational kThreshold(19, 20);
  if (g_mix.p0 >= kThreshold) return MixClass::A0;
  if (Rational(1) - g_mix.p0 >= kThreshold) return MixClass::A1;
  return MixClass::AM;
}

struct StrategyProfile {
  int depth = 0;
  std::vector<Rational> sigma_g;   // P(b0) per cylinder code
  std::vector<Rational> sigma_r1;  // P(a0) per cylinder code
  std::vector<Rational> sigma_r2;  // P(a0) per cylinder code

  static StrategyProfile constant(int depth, Rational g, Rational r1, Rational r2) {
    StrategyProfile p;
    p.depth = depth;
    size_t n = cylinder_count(depth);
    p.sigma_g.assign(n, g);
    p.sigma_r1.assign(n, r1);
    p.sigma_r2.assign(n, r2);
    p.validate();
    return p;
  }

  void validate() const {
    if (depth < 0 || depth > 3)
      throw std::invalid_argument("profile depth must be between 0 and 3");
    size_t n = cylinder_count(depth);
    if (sigma_g.size() != n || sigma_r1.size() != n || sigma_r2.size() != n)
      throw std::invalid_argument("profile maps must have exactly one entry per cylinder");
    for (const auto* v : {&sigma_g, &sigma_r1, &sigma_r2})
      for (const Rational& p : *v)
        if (p < Rational(0) || p > Rational(1))
          throw std::invalid_argument("profile probabilities must lie in [0, 1]");
  }

  Mixture g_at(const Cylinder& c) const {
    check_depth(c);
    return Mixture(sigma_g[c.code()]);
  }

  Mixture r_at(RPlayer pl, const Cylinder& c) const {
    check_depth(c);
    return Mixture(pl == RPlayer::R1 ? sigma_r1[c.code()] : sigma_r2[c.code()]);
  }

 private:
  void check_depth(const Cylinder& c) const {
    if (c.depth() != depth)
      throw std::invalid_argument("cylinder depth does not match profile depth");
  }
};

// G0's conditional gain at a depth-(n+1) cylinder t: best pure action against
// the R mixtures at the two shift images, minus its own mixture's payoff.
inline Rational bayesian_gain_G(const StrategyProfile& profile, const Cylinder& t) {
  if (t.depth() != profile.depth + 1)
    throw std::invalid_argument("G0 gains are evaluated one level below the profile depth");
  int e = t.e_label();
  Mixture a1 = profile.r_at(RPlayer::R1, shift(t, Gen::T1));
  Mixture a2 = profile.r_at(RPlayer::R2, shift(t, Gen::T2));
  Mixture b = profile.g_at(restrict_to_depth(t, profile.depth));
  Rational e0 = expected_payoff_G(e, ActionB::b0, a1, a2);
  Rational e1 = expected_payoff_G(e, ActionB::b1, a1, a2);
  Rational actual = b.p(0) * e0 + b.p(1) * e1;
  return max(e0, e1) - actual;
}

// R player's conditional gain at a depth-n cylinder c.
inline Rational bayesian_gain_R(RPlayer pl, const StrategyProfile& profile,
                                const Cylinder& c) {
  if (c.depth() != profile.depth)
    throw std::invalid_argument("R gains are evaluated at the profile depth");
  int e = c.e_label();
  Mixture b = profile.g_at(c);
  Rational e0 = expected_payoff_R(pl, e, b, Mixture::pure(ActionA::a0));
  Rational e1 = expected_payoff_R(pl, e, b, Mixture::pure(ActionA::a1));
  Mixture own = profile.r_at(pl, c);
  Rational actual = own.p(0) * e0 + own.p(1) * e1;
  return max(e0, e1) - actual;
}

struct PlayerRegretStats {
  Rational harsanyi;          // measure-weighted mean gain
  Rational sup_bayesian;      // max gain over the enumerated cylinders
  uint64_t witness_code = 0;  // a cylinder attaining the sup
  int witness_depth = 0;
  double std_error = 0.0;     // only meaningful on estimated reports
};

struct RegretReport {
  int profile_depth = 0;
  bool estimated = false;
  uint64_t samples = 0;
  uint64_t seed = 0;
  PlayerRegretStats g0, r1, r2;
  Rational mixing_mass;            // m{ classify(sigma_g) == AM }
  Rational a0_mass, a1_mass;       // the complementary class masses
  Rational parity_violation_mass;  // see parity_violation_mass()
  double mixing_mass_std_error = 0.0;
  double parity_std_error = 0.0;

  Rational max_harsanyi() const {
    return max(g0.harsanyi, max(r1.harsanyi, r2.harsanyi));
  }
};

// A depth-(n+1) cylinder violates the parity rule when any of the three
// involved G0 classes is AM, or the class indices fail
// index(x) == index(T1 x) XOR index(T2 x) XOR x^e.
inline bool violates_parity(const StrategyProfile& profile, const Cylinder& t) {
  MixClass cx = classify(profile.g_at(restrict_to_depth(t, profile.depth)));
  MixClass c1 = classify(profile.g_at(shift(t, Gen::T1)));
  MixClass c2 = classify(profile.g_at(shift(t, Gen::T2)));
  if (cx == MixClass::AM || c1 == MixClass::AM || c2 == MixClass::AM) return true;
  int ix = cx == MixClass::A1 ? 1 : 0;
  int i1 = c1 == MixClass::A1 ? 1 : 0;
  int i2 = c2 == MixClass::A1 ? 1 : 0;
  return ix != (i1 ^ i2 ^ t.e_label());
}

inline Rational parity_violation_mass(const StrategyProfile& profile,
                                      const EnumerationLimits& limits = {}) {
  profile.validate();
  int eval_depth = profile.depth + 1;
  require_enumerable(eval_depth, limits);
  uint64_t count = cylinder_count(eval_depth);
  uint64_t violating = 0;
  for (uint64_t code = 0; code < count; ++code) {
    if (violates_parity(profile, Cylinder(eval_depth, code))) ++violating;
  }
  return Rational(int128(violating)) * measure(Cylinder(eval_depth, 0)).to_rational();
}

namespace detail {
inline void class_masses(const StrategyProfile& profile, Rational& a0, Rational& a1,
                         Rational& am) {
  uint64_t count = cylinder_count(profile.depth);
  uint64_t n0 = 0, n1 = 0, nm = 0;
  for (uint64_t code = 0; code < count; ++code) {
    switch (classify(Mixture(profile.sigma_g[code]))) {
      case MixClass::A0: ++n0; break;
      case MixClass::A1: ++n1; break;
      default: ++nm; break;
    }
  }
  Rational unit = measure(Cylinder(profile.depth, 0)).to_rational();
  a0 = Rational(int128(n0)) * unit;
  a1 = Rational(int128(n1)) * unit;
  am = Rational(int128(nm)) * unit;
}
}  // namespace detail

// Exact regrets by full enumeration: G0 over C_{n+1}, R players over C_n.
inline RegretReport harsanyi_regret(const StrategyProfile& profile,
                                    const EnumerationLimits& limits = {}) {
  profile.validate();
  int g_depth = profile.depth + 1;
  require_enumerable(g_depth, limits);

  RegretReport report;
  report.profile_depth = profile.depth;

  uint64_t g_count = cylinder_count(g_depth);
  Rational g_sum(0);
  for (uint64_t code = 0; code < g_count; ++code) {
    Rational gain = bayesian_gain_G(profile, Cylinder(g_depth, code));
    g_sum += gain;
    if (gain > report.g0.sup_bayesian) {
      report.g0.sup_bayesian = gain;
      report.g0.witness_code = code;
    }
  }
  report.g0.witness_depth = g_depth;
  report.g0.harsanyi = g_sum * measure(Cylinder(g_depth, 0)).to_rational();

  uint64_t r_count = cylinder_count(profile.depth);
  Rational unit = measure(Cylinder(profile.depth, 0)).to_rational();
  for (RPlayer pl : {RPlayer::R1, RPlayer::R2}) {
    PlayerRegretStats& stats = pl == RPlayer::R1 ? report.r1 : report.r2;
    Rational sum(0);
    for (uint64_t code = 0; code < r_count; ++code) {
      Rational gain = bayesian_gain_R(pl, profile, Cylinder(profile.depth, code));
      sum += gain;
      if (gain > stats.sup_bayesian) {
        stats.sup_bayesian = gain;
        stats.witness_code = code;
      }
    }
    stats.witness_depth = profile.depth;
    stats.harsanyi = sum * unit;
  }

  detail::class_masses(profile, report.a0_mass, report.a1_mass, report.mixing_mass);
  report.parity_violation_mass = parity_violation_mass(profile, limits);
  return report;
}

// Unbiased Monte Carlo estimates of the same integrals. Per-sample seeds are
// derived by hashing (seed, index), so any evaluation order is reproducible.
inline RegretReport mc_regret(const StrategyProfile& profile, uint64_t samples,
                              uint64_t seed) {
  profile.validate();
  if (samples == 0) throw std::invalid_argument("mc_regret requires samples >= 1");
  int g_depth = profile.depth + 1;

  RegretReport report;
  report.profile_depth = profile.depth;
  report.estimated = true;
  report.samples = samples;
  report.seed = seed;

  Rational sums[3] = {Rational(0), Rational(0), Rational(0)};
  Rational sq_sums[3] = {Rational(0), Rational(0), Rational(0)};
  uint64_t mixing_hits = 0, a0_hits = 0, a1_hits = 0, parity_hits = 0;
  PlayerRegretStats* stats[3] = {&report.g0, &report.r1, &report.r2};
  report.g0.witness_depth = g_depth;
  report.r1.witness_depth = profile.depth;
  report.r2.witness_depth = profile.depth;

  for (uint64_t k = 0; k < samples; ++k) {
    Cylinder t = sample_cylinder(g_depth, derive_seed(seed, k));
    Cylinder c = restrict_to_depth(t, profile.depth);
    Rational gains[3] = {bayesian_gain_G(profile, t),
                         bayesian_gain_R(RPlayer::R1, profile, c),
                         bayesian_gain_R(RPlayer::R2, profile, c)};
    for (int i = 0; i < 3; ++i) {
      sums[i] += gains[i];
      sq_sums[i] += gains[i] * gains[i];
      if (gains[i] > stats[i]->sup_bayesian) {
        stats[i]->sup_bayesian = gains[i];
        stats[i]->witness_code = i == 0 ? t.code() : c.code();
      }
    }
    switch (classify(profile.g_at(c))) {
      case MixClass::A0: ++a0_hits; break;
      case MixClass::A1: ++a1_hits; break;
      default: ++mixing_hits; break;
    }
    if (violates_parity(profile, t)) ++parity_hits;
  }

  Rational n{int128(samples)};
  for (int i = 0; i < 3; ++i) {
    stats[i]->harsanyi = sums[i] / n;
    if (samples > 1) {
      Rational var = (sq_sums[i] / n - stats[i]->harsanyi * stats[i]->harsanyi) /
                     Rational(int128(samples - 1));
      double v = var.to_double();
      stats[i]->std_error = v > 0 ? std::sqrt(v) : 0.0;
    }
  }
  auto bernoulli = [&](uint64_t hits, Rational& out, double& se) {
    out = Rational(int128(hits)) / n;
    double p = out.to_double();
    se = samples > 1 ? std::sqrt(p * (1.0 - p) / double(samples - 1)) : 0.0;
  };
  double a_se = 0.0;
  bernoulli(mixing_hits, report.mixing_mass, report.mixing_mass_std_error);
  bernoulli(a0_hits, report.a0_mass, a_se);
  bernoulli(a1_hits, report.a1_mass, a_se);
  bernoulli(parity_hits, report.parity_violation_mass, report.parity_std_error);
  return report;
}

struct EtaLevel {
  int level = 0;
  std::vector<Rational> eta;     // min(w0, w1) per cylinder code
  std::vector<Rational> r_cond;  // conditional parity-violation mass per code
  Rational q;                    // average eta over the level
  Rational max_r;
};

struct EtaStats {
  std::vector<EtaLevel> levels;  // levels[i] describes C_i, i <= profile depth
};

// w_j(c) = m(A_j ∩ c) / m(c) with classes read at the finest (profile) depth;
// eta(c) = min(w_0, w_1); q_i averages eta over C_i. r_cond uses the
// depth-(n+1) parity classification.
inline EtaStats eta_stats(const StrategyProfile& profile,
                          const EnumerationLimits& limits = {}) {
  profile.validate();
  int n = profile.depth;
  require_enumerable(n + 1, limits);

  EtaStats stats;
  stats.levels.resize(n + 1);

  uint64_t fine_count = cylinder_count(n);
  uint64_t fine_bits = label_count(n);
  std::vector<std::vector<uint64_t>> count0(n + 1), count1(n + 1);
  for (int i = 0; i <= n; ++i) {
    count0[i].assign(cylinder_count(i), 0);
    count1[i].assign(cylinder_count(i), 0);
  }
  for (uint64_t code = 0; code < fine_count; ++code) {
    MixClass cls = classify(Mixture(profile.sigma_g[code]));
    if (cls == MixClass::AM) continue;
    for (int i = 0; i <= n; ++i) {
      uint64_t bucket = code & ((uint64_t(1) << label_count(i)) - 1);
      (cls == MixClass::A0 ? count0 : count1)[i][bucket]++;
    }
  }

  uint64_t viol_count_total = cylinder_count(n + 1);
  std::vector<std::vector<uint64_t>> viol(n + 1);
  for (int i = 0; i <= n; ++i) viol[i].assign(cylinder_count(i), 0);
  for (uint64_t code = 0; code < viol_count_total; ++code) {
    if (!violates_parity(profile, Cylinder(n + 1, code))) continue;
    for (int i = 0; i <= n; ++i) {
      uint64_t bucket = code & ((uint64_t(1) << label_count(i)) - 1);
      viol[i][bucket]++;
    }
  }

  for (int i = 0; i <= n; ++i) {
    EtaLevel& level = stats.levels[i];
    level.level = i;
    uint64_t buckets = cylinder_count(i);
    level.eta.reserve(buckets);
    level.r_cond.reserve(buckets);
    // refinements of one depth-i cylinder at depth n / n+1
    int128 fine_per_bucket = int128(1) << (fine_bits - label_count(i));
    int128 viol_per_bucket = int128(1) << (label_count(n + 1) - label_count(i));
    Rational q_sum(0);
    for (uint64_t b = 0; b < buckets; ++b) {
      Rational w0(int128(count0[i][b]), fine_per_bucket);
      Rational w1(int128(count1[i][b]), fine_per_bucket);
      Rational eta = min(w0, w1);
      level.eta.push_back(eta);
      q_sum += eta;
      Rational r(int128(viol[i][b]), viol_per_bucket);
      level.r_cond.push_back(r);
      if (r > level.max_r) level.max_r = r;
    }
    level.q = q_sum / Rational(int128(buckets));
  }
  return stats;
}

// The measure bound 20*eps/r on the set where a player tolerates a gap of at
// least r in an eps-equilibrium.
inline Rational epsilon_measure_bound(const Rational& epsilon, const Rational& r) {
  if (r <= Rational(0)) throw std::invalid_argument("gap r must be positive");
  if (epsilon < Rational(0)) throw std::invalid_argument("epsilon must be nonnegative");
  return Rational(20) * epsilon / r;
}

}  // namespace shiftgame
