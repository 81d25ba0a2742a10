#pragma once
// The fixed payoff tables of the three-player game and their bilinear
// extensions to mixtures.
//
// R players are paid on the diagonal only: the matching action earns 300 or
// 100 depending on the e label, the mismatch earns 0, and flipping e swaps
// the two R players' tables. G0's 2x2x2 tables pay 1000 or 2000 when its
// action index equals index(a1) XOR index(a2) XOR e, and 0 otherwise.

#include <array>
#include <stdexcept>
#include <utility>

#include "shiftgame/rational.hpp"

namespace shiftgame {

enum class ActionA : int { a0 = 0, a1 = 1 };
enum class ActionB : int { b0 = 0, b1 = 1 };
enum class RPlayer : int { R1 = 0, R2 = 1 };

inline int index_of(ActionA a) { return static_cast<int>(a); }
inline int index_of(ActionB b) { return static_cast<int>(b); }

// Probability of the index-0 action (a0 or b0), exact in [0, 1].
struct Mixture {
  Rational p0;

  Mixture() : p0(1) {}
  explicit Mixture(Rational p) : p0(std::move(p)) {
    if (p0 < Rational(0) || p0 > Rational(1))
      throw std::invalid_argument("mixture probability outside [0, 1]");
  }

  static Mixture pure(int index0_or_1) {
    return Mixture(index0_or_1 == 0 ? Rational(1) : Rational(0));
  }
  static Mixture pure(ActionA a) { return pure(index_of(a)); }
  static Mixture pure(ActionB b) { return pure(index_of(b)); }

  bool is_pure() const { return p0 == Rational(0) || p0 == Rational(1); }
  Rational p(int action_index) const { return action_index == 0 ? p0 : Rational(1) - p0; }
};

namespace detail {
// r_payoff[player][e][b][a]
inline constexpr int kRPayoff[2][2][2][2] = {
    // R1
    {{{300, 0}, {0, 100}},   // e = 0
     {{100, 0}, {0, 300}}},  // e = 1
    // R2
    {{{100, 0}, {0, 300}},   // e = 0
     {{300, 0}, {0, 100}}},  // e = 1
};

// g_payoff[e][b][a1][a2]
inline constexpr int kGPayoff[2][2][2][2] = {
    // e = 0
    {{{1000, 0}, {0, 2000}},   // b0
     {{0, 1000}, {2000, 0}}},  // b1
    // e = 1
    {{{0, 1000}, {2000, 0}},   // b0
     {{2000, 0}, {0, 1000}}},  // b1
};

inline void check_e_bit(int e) {
  if (e != 0 && e != 1) throw std::invalid_argument("e bit must be 0 or 1");
}
}  // namespace detail

inline Rational payoff_R(RPlayer pl, int e_bit, ActionB b, ActionA a) {
  detail::check_e_bit(e_bit);
  return Rational(detail::kRPayoff[static_cast<int>(pl)][e_bit][index_of(b)][index_of(a)]);
}

inline Rational payoff_G(int e_bit, ActionB b, ActionA a1, ActionA a2) {
  detail::check_e_bit(e_bit);
  return Rational(detail::kGPayoff[e_bit][index_of(b)][index_of(a1)][index_of(a2)]);
}

inline Rational expected_payoff_R(RPlayer pl, int e_bit, const Mixture& b_mix,
                                  const Mixture& a_mix) {
  detail::check_e_bit(e_bit);
  Rational total(0);
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      int v = detail::kRPayoff[static_cast<int>(pl)][e_bit][b][a];
      if (v != 0) total += b_mix.p(b) * a_mix.p(a) * Rational(v);
    }
  return total;
}

inline Rational expected_payoff_G(int e_bit, ActionB b, const Mixture& a1_mix,
                                  const Mixture& a2_mix) {
  detail::check_e_bit(e_bit);
  Rational total(0);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2) {
      int v = detail::kGPayoff[e_bit][index_of(b)][a1][a2];
      if (v != 0) total += a1_mix.p(a1) * a2_mix.p(a2) * Rational(v);
    }
  return total;
}

inline Rational expected_payoff_G(int e_bit, const Mixture& b_mix, const Mixture& a1_mix,
                                  const Mixture& a2_mix) {
  return b_mix.p(0) * expected_payoff_G(e_bit, ActionB::b0, a1_mix, a2_mix) +
         b_mix.p(1) * expected_payoff_G(e_bit, ActionB::b1, a1_mix, a2_mix);
}

// |E(a0) - E(a1)| against the given G0 mixture; the R player's incentive to
// pick one action over the other.
inline Rational incentive_gap_R(RPlayer pl, int e_bit, const Mixture& b_mix) {
  Rational e0 = expected_payoff_R(pl, e_bit, b_mix, Mixture::pure(ActionA::a0));
  Rational e1 = expected_payoff_R(pl, e_bit, b_mix, Mixture::pure(ActionA::a1));
  return (e0 - e1).abs();
}

// Weakly better pure action and the nonnegative payoff difference.
// Ties resolve to the index-0 action.
inline std::pair<ActionA, Rational> best_response_R(RPlayer pl, int e_bit,
                                                    const Mixture& b_mix) {
  Rational e0 = expected_payoff_R(pl, e_bit, b_mix, Mixture::pure(ActionA::a0));
  Rational e1 = expected_payoff_R(pl, e_bit, b_mix, Mixture::pure(ActionA::a1));
  if (e1 > e0) return {ActionA::a1, e1 - e0};
  return {ActionA::a0, e0 - e1};
}

inline std::pair<ActionB, Rational> best_response_G(int e_bit, const Mixture& a1_mix,
                                                    const Mixture& a2_mix) {
  Rational e0 = expected_payoff_G(e_bit, ActionB::b0, a1_mix, a2_mix);
  Rational e1 = expected_payoff_G(e_bit, ActionB::b1, a1_mix, a2_mix);
  if (e1 > e0) return {ActionB::b1, e1 - e0};
  return {ActionB::b0, e0 - e1};
}

}  // namespace shiftgame
