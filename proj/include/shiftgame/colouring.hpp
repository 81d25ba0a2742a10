#pragma once
// Finite point graphs with T1/T2 successor edges and e bits, two-colourings
// under the parity rule c(v) = c(t1 v) XOR c(t2 v) XOR e(v), and the induced
// pure/mixed equilibria.
//
// Nodes either have both successors (interior) or none (leaf); a node with
// exactly one successor is rejected because the parity constraint is ternary.
// Graphs may contain cycles and self-loops through successor identification.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "shiftgame/cylinder.hpp"
#include "shiftgame/payoffs.hpp"
#include "shiftgame/rational.hpp"
#include "shiftgame/words.hpp"

namespace shiftgame {

struct PointGraph {
  struct Node {
    int e_bit = 0;
    std::optional<uint32_t> t1;
    std::optional<uint32_t> t2;
  };

  std::vector<Node> nodes;

  size_t size() const { return nodes.size(); }

  bool interior(uint32_t v) const {
    return nodes[v].t1.has_value() && nodes[v].t2.has_value();
  }

  void validate() const {
    for (size_t v = 0; v < nodes.size(); ++v) {
      const Node& n = nodes[v];
      if (n.e_bit != 0 && n.e_bit != 1)
        throw std::invalid_argument("node " + std::to_string(v) + " has a non-binary e bit");
      if (n.t1.has_value() != n.t2.has_value())
        throw std::invalid_argument("node " + std::to_string(v) +
                                    " has exactly one successor; the parity constraint needs both or none");
      for (const auto& succ : {n.t1, n.t2})
        if (succ && *succ >= nodes.size())
          throw std::invalid_argument("node " + std::to_string(v) +
                                      " points outside the graph");
    }
  }

  // true when no directed successor cycle exists
  bool acyclic() const {
    std::vector<int> state(nodes.size(), 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<uint32_t> stack;
    for (uint32_t root = 0; root < nodes.size(); ++root) {
      if (state[root] != 0) continue;
      stack.push_back(root);
      while (!stack.empty()) {
        uint32_t v = stack.back();
        if (state[v] == 0) {
          state[v] = 1;
          for (const auto& succ : {nodes[v].t1, nodes[v].t2}) {
            if (!succ) continue;
            if (state[*succ] == 1) return false;
            if (state[*succ] == 0) stack.push_back(*succ);
          }
        } else {
          state[v] = 2;
          stack.pop_back();
        }
      }
    }
    return true;
  }
};

// Pyramid over the words of length <= L: node ids are canonical word indices,
// successors append a generator, all nodes distinct. e bits per node are
// either supplied or sampled from the seed.
inline PointGraph build_generic_pyramid(int L, const std::vector<int>& e_bits) {
  if (L < 0 || L > 25) throw std::invalid_argument("pyramid depth out of range");
  uint64_t count = (uint64_t(1) << (L + 1)) - 1;
  if (e_bits.size() != count)
    throw std::invalid_argument("pyramid needs one e bit per node");
  uint64_t inner = (uint64_t(1) << L) - 1;  // words of length < L
  PointGraph g;
  g.nodes.resize(count);
  for (uint64_t v = 0; v < count; ++v) {
    g.nodes[v].e_bit = e_bits[v];
    if (v < inner) {
      g.nodes[v].t1 = static_cast<uint32_t>(append_index(v, Gen::T1));
      g.nodes[v].t2 = static_cast<uint32_t>(append_index(v, Gen::T2));
    }
  }
  return g;
}

inline PointGraph build_generic_pyramid(int L, uint64_t seed) {
  uint64_t count = (uint64_t(1) << (L + 1)) - 1;
  SplitMix64 rng(seed);
  std::vector<int> bits(count);
  for (uint64_t v = 0; v < count; ++v) bits[v] = static_cast<int>(rng.next() & 1);
  return build_generic_pyramid(L, bits);
}

// Least superset closed under twins: whenever u and v are in the set and some
// node z has t1(z) = u and t2(z) = v, z joins. Extensive, monotone,
// idempotent.
inline std::vector<uint32_t> closure(const PointGraph& graph,
                                     const std::vector<uint32_t>& subset) {
  std::vector<char> in(graph.size(), 0);
  std::queue<uint32_t> fresh;
  for (uint32_t v : subset) {
    if (v >= graph.size()) throw std::invalid_argument("subset node outside the graph");
    if (!in[v]) {
      in[v] = 1;
      fresh.push(v);
    }
  }
  // parents indexed by either successor
  std::vector<std::vector<uint32_t>> parents(graph.size());
  for (uint32_t z = 0; z < graph.size(); ++z) {
    if (!graph.interior(z)) continue;
    parents[*graph.nodes[z].t1].push_back(z);
    if (*graph.nodes[z].t2 != *graph.nodes[z].t1) parents[*graph.nodes[z].t2].push_back(z);
  }
  while (!fresh.empty()) {
    uint32_t v = fresh.front();
    fresh.pop();
    for (uint32_t z : parents[v]) {
      if (in[z]) continue;
      if (in[*graph.nodes[z].t1] && in[*graph.nodes[z].t2]) {
        in[z] = 1;
        fresh.push(z);
      }
    }
  }
  std::vector<uint32_t> out;
  for (uint32_t v = 0; v < graph.size(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

// Partial two-colouring: one optional bit per node.
using Colouring = std::vector<std::optional<int>>;

inline bool is_total(const Colouring& c) {
  return std::all_of(c.begin(), c.end(), [](const auto& v) { return v.has_value(); });
}

// Interior nodes whose parity equation fails under a total colouring.
inline std::vector<uint32_t> verify_parity(const PointGraph& graph, const Colouring& col) {
  if (col.size() != graph.size() || !is_total(col))
    throw std::invalid_argument("verify_parity needs a total colouring");
  std::vector<uint32_t> violated;
  for (uint32_t v = 0; v < graph.size(); ++v) {
    if (!graph.interior(v)) continue;
    int want = (*col[*graph.nodes[v].t1] ^ *col[*graph.nodes[v].t2] ^ graph.nodes[v].e_bit);
    if (*col[v] != want) violated.push_back(v);
  }
  return violated;
}

// Which leaf family gets the fixed colour before rule propagation.
enum class SeedRule {
  t1_red_t2_blue,  // leaves whose word starts with T1 -> 1, with T2 -> 0
  t1_blue_t2_red,
};

// Total parity colouring of a generic pyramid: fix leaf colours by the seed
// family of their first letter, then force every interior node bottom-up.
inline Colouring seed_colouring(const PointGraph& pyramid,
                                SeedRule rule = SeedRule::t1_red_t2_blue) {
  // shape check: binary-heap successor layout of build_generic_pyramid
  size_t count = pyramid.size();
  size_t inner = count / 2;
  for (uint32_t v = 0; v < count; ++v) {
    bool want_interior = v < inner;
    if (pyramid.interior(v) != want_interior ||
        (want_interior && (*pyramid.nodes[v].t1 != 2 * v + 1 || *pyramid.nodes[v].t2 != 2 * v + 2)))
      throw std::invalid_argument("seed_colouring expects a generic pyramid");
  }
  Colouring col(count);
  int red = rule == SeedRule::t1_red_t2_blue ? 1 : 0;
  for (uint32_t v = static_cast<uint32_t>(inner); v < count; ++v) {
    if (v == 0) {
      col[v] = 0;  // single-node pyramid: free choice, default blue
      continue;
    }
    uint32_t a = v;
    while ((a - 1) / 2 != 0) a = (a - 1) / 2;
    col[v] = (a == 1) ? red : 1 - red;  // depth-1 ancestor decides the family
  }
  for (uint32_t v = static_cast<uint32_t>(inner); v-- > 0;) {
    col[v] = *col[2 * v + 1] ^ *col[2 * v + 2] ^ pyramid.nodes[v].e_bit;
  }
  return col;
}

// Certificate that the parity system admits no colouring: a set of node
// equations whose XOR is 0 = 1, with the forcing step when two equations pin
// the same node to opposite colours.
struct Contradiction {
  std::vector<uint32_t> equations;  // interior nodes whose equations combine to 0 = 1
  std::optional<std::pair<uint32_t, int>> forced;  // node pinned to a colour first
  std::optional<uint32_t> conflict_node;           // equation that then contradicts it
  std::string note;
};

// Replays the certificate: XOR of the listed equations must cancel every
// variable and leave right-hand side 1.
inline bool replay_contradiction(const PointGraph& graph, const Contradiction& c) {
  std::vector<int> parity(graph.size(), 0);
  int rhs = 0;
  for (uint32_t v : c.equations) {
    if (v >= graph.size() || !graph.interior(v)) return false;
    parity[v] ^= 1;
    parity[*graph.nodes[v].t1] ^= 1;
    parity[*graph.nodes[v].t2] ^= 1;
    rhs ^= graph.nodes[v].e_bit;
  }
  return std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; }) && rhs == 1;
}

namespace detail {
struct XorRow {
  std::vector<uint64_t> vars;       // bitset over nodes
  int rhs = 0;
  std::vector<uint32_t> sources;    // original interior-node equations combined

  bool test(uint32_t v) const { return (vars[v >> 6] >> (v & 63)) & 1; }
  void flip(uint32_t v) { vars[v >> 6] ^= uint64_t(1) << (v & 63); }
  bool empty_vars() const {
    return std::all_of(vars.begin(), vars.end(), [](uint64_t w) { return w == 0; });
  }
  int lowest_var() const {
    for (size_t w = 0; w < vars.size(); ++w)
      if (vars[w]) return static_cast<int>(w * 64 + std::countr_zero(vars[w]));
    return -1;
  }
  void xor_with(const XorRow& other) {
    for (size_t w = 0; w < vars.size(); ++w) vars[w] ^= other.vars[w];
    rhs ^= other.rhs;
    std::vector<uint32_t> merged;
    // symmetric difference keeps provenance minimal
    std::set_symmetric_difference(sources.begin(), sources.end(), other.sources.begin(),
                                  other.sources.end(), std::back_inserter(merged));
    sources = std::move(merged);
  }
};
}  // namespace detail

// Solves the XOR system over GF(2): one equation per interior node,
// c(v) + c(t1 v) + c(t2 v) = e(v) with duplicate incidences cancelling.
// Returns a satisfying total colouring (free nodes default to 0) or a
// replayable contradiction certificate.
inline std::variant<Colouring, Contradiction> detect_parity_infeasible(
    const PointGraph& graph) {
  graph.validate();
  size_t n = graph.size();
  size_t words = (n + 63) / 64;

  std::vector<detail::XorRow> rows;
  for (uint32_t v = 0; v < n; ++v) {
    if (!graph.interior(v)) continue;
    detail::XorRow row;
    row.vars.assign(words, 0);
    row.flip(v);
    row.flip(*graph.nodes[v].t1);
    row.flip(*graph.nodes[v].t2);
    row.rhs = graph.nodes[v].e_bit;
    row.sources = {v};
    rows.push_back(std::move(row));
  }

  std::vector<int> pivot_of_row;
  std::vector<detail::XorRow> reduced;
  std::optional<Contradiction> conflict;
  for (detail::XorRow row : rows) {
    for (size_t i = 0; i < reduced.size(); ++i) {
      if (pivot_of_row[i] >= 0 && row.test(static_cast<uint32_t>(pivot_of_row[i])))
        row.xor_with(reduced[i]);
    }
    if (row.empty_vars()) {
      if (row.rhs == 1) {
        Contradiction c;
        c.equations = row.sources;
        // two-equation conflicts come from a pair of unit facts on one node:
        // surface the forcing to colour 1 first, then the clashing equation
        if (row.sources.size() == 2) {
          for (uint32_t src : row.sources) {
            detail::XorRow unit;
            unit.vars.assign(words, 0);
            unit.flip(src);
            unit.flip(*graph.nodes[src].t1);
            unit.flip(*graph.nodes[src].t2);
            unit.rhs = graph.nodes[src].e_bit;
            int lead = unit.lowest_var();
            bool is_unit = lead >= 0;
            if (is_unit) {
              detail::XorRow probe = unit;
              probe.flip(static_cast<uint32_t>(lead));
              is_unit = probe.empty_vars();
            }
            if (is_unit && unit.rhs == 1) {
              c.forced = {static_cast<uint32_t>(lead), 1};
            } else if (is_unit) {
              c.conflict_node = src;
            }
          }
          if (c.forced && c.conflict_node) {
            c.note = "node " + std::to_string(c.forced->first) +
                     " is forced to colour 1; the equation at node " +
                     std::to_string(*c.conflict_node) +
                     " then forces that node's colour to differ from itself";
          }
        }
        if (c.note.empty()) c.note = "the listed equations XOR to 0 = 1";
        conflict = std::move(c);
        break;
      }
      continue;  // redundant consistent equation
    }
    int pivot = row.lowest_var();
    pivot_of_row.push_back(pivot);
    reduced.push_back(std::move(row));
  }
  if (conflict) return *conflict;

  // back-substitution, free variables default to colour 0
  Colouring col(n, 0);
  // process pivots from the highest to respect dependencies
  std::vector<size_t> order(reduced.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return pivot_of_row[a] > pivot_of_row[b]; });
  for (size_t i : order) {
    const detail::XorRow& row = reduced[i];
    int value = row.rhs;
    uint32_t pivot = static_cast<uint32_t>(pivot_of_row[i]);
    for (uint32_t v = 0; v < n; ++v) {
      if (v != pivot && row.test(v)) value ^= *col[v];
    }
    col[pivot] = value;
  }
  return col;
}

// Extends a parity-consistent partial colouring downward from a new root.
// Hitting points (already-coloured successors) act as XOR constraints; free
// successors take the deterministic default colour 0. Returns a
// contradiction if both successors of a visited node are pinned
// incompatibly, which signals the fixed domain was not closed.
inline std::variant<Colouring, Contradiction> extend_colouring(const PointGraph& graph,
                                                               const Colouring& fixed,
                                                               uint32_t new_root) {
  graph.validate();
  if (fixed.size() != graph.size())
    throw std::invalid_argument("colouring size must match the graph");
  if (new_root >= graph.size()) throw std::invalid_argument("root outside the graph");
  Colouring col = fixed;
  if (col[new_root].has_value()) return col;  // already covered: identity

  col[new_root] = 0;  // free choice, deterministic default
  std::queue<uint32_t> frontier;
  frontier.push(new_root);
  while (!frontier.empty()) {
    uint32_t v = frontier.front();
    frontier.pop();
    if (!graph.interior(v)) continue;
    uint32_t s1 = *graph.nodes[v].t1;
    uint32_t s2 = *graph.nodes[v].t2;
    int need = *col[v] ^ graph.nodes[v].e_bit;  // c(s1) XOR c(s2) must equal this
    bool has1 = col[s1].has_value();
    bool has2 = col[s2].has_value();
    if (has1 && has2) {
      if ((*col[s1] ^ *col[s2]) != need) {
        Contradiction c;
        c.equations = {v};
        c.conflict_node = v;
        c.note = "both successors of node " + std::to_string(v) +
                 " were already pinned incompatibly; the fixed domain is not closed";
        return c;
      }
      continue;
    }
    if (s1 == s2) {
      // identified successors: their colour cancels, need must be 0
      if (need != 0) {
        Contradiction c;
        c.equations = {v};
        c.conflict_node = v;
        c.note = "identified successors force node " + std::to_string(v) +
                 " to differ from itself";
        return c;
      }
      if (!has1) {
        col[s1] = 0;
        frontier.push(s1);
      }
      continue;
    }
    if (has1) {
      col[s2] = *col[s1] ^ need;
      frontier.push(s2);
    } else if (has2) {
      col[s1] = *col[s2] ^ need;
      frontier.push(s1);
    } else {
      col[s1] = 0;  // free successor takes the default
      col[s2] = need;
      frontier.push(s1);
      frontier.push(s2);
    }
  }
  return col;
}

// Pure strategy assignment induced by a parity colouring: G0 plays
// b_{colour}, both R players play a_{colour}. Local payoff checks read only
// the node and its successors, never ancestors.
struct InducedAssignment {
  std::vector<int> colour;
  std::vector<Rational> g_gap;   // strict best-response margin at interior nodes
  std::vector<Rational> r1_gap;  // matching margin at every node
  std::vector<Rational> r2_gap;
  Rational min_g_gap;            // over interior nodes (0 when none exist)
  Rational min_r_gap;
};

inline InducedAssignment colouring_to_profile(const PointGraph& graph, const Colouring& col) {
  if (col.size() != graph.size() || !is_total(col))
    throw std::invalid_argument("colouring_to_profile needs a total colouring");
  if (!verify_parity(graph, col).empty())
    throw std::invalid_argument("colouring_to_profile needs a parity-consistent colouring");
  InducedAssignment out;
  size_t n = graph.size();
  out.colour.resize(n);
  out.g_gap.assign(n, Rational(0));
  out.r1_gap.assign(n, Rational(0));
  out.r2_gap.assign(n, Rational(0));
  bool first_g = true, first_r = true;
  for (uint32_t v = 0; v < n; ++v) {
    int cv = *col[v];
    out.colour[v] = cv;
    int e = graph.nodes[v].e_bit;
    ActionB b = static_cast<ActionB>(cv);
    // R players match G0's action at the same node
    for (RPlayer pl : {RPlayer::R1, RPlayer::R2}) {
      ActionA mine = static_cast<ActionA>(cv);
      ActionA other = static_cast<ActionA>(1 - cv);
      Rational gap = payoff_R(pl, e, b, mine) - payoff_R(pl, e, b, other);
      (pl == RPlayer::R1 ? out.r1_gap : out.r2_gap)[v] = gap;
      if (first_r || gap < out.min_r_gap) out.min_r_gap = gap;
      first_r = false;
    }
    if (!graph.interior(v)) continue;
    ActionA a1 = static_cast<ActionA>(*col[*graph.nodes[v].t1]);
    ActionA a2 = static_cast<ActionA>(*col[*graph.nodes[v].t2]);
    ActionB alt = static_cast<ActionB>(1 - cv);
    Rational gap = payoff_G(e, b, a1, a2) - payoff_G(e, alt, a1, a2);
    out.g_gap[v] = gap;
    if (first_g || gap < out.min_g_gap) out.min_g_gap = gap;
    first_g = false;
  }
  if (first_g) out.min_g_gap = Rational(0);
  if (first_r) out.min_r_gap = Rational(0);
  return out;
}

// ---------------------------------------------------------------------------
// Mixed equilibrium solver for finite closed sub-games.

struct FiniteGameSolution {
  struct NodeMix {
    Rational g;   // P(b0)
    Rational r1;  // P(a0)
    Rational r2;  // P(a0)
  };
  std::vector<NodeMix> mix;
  Rational max_node_regret;
  bool converged = false;
  bool some_node_mixes = false;
  std::string method;
  uint64_t iterations = 0;
};

struct SolveOptions {
  Rational tolerance = Rational(1, 1000000000);
  int restarts = 32;
  uint64_t max_iterations = 200000;
  uint64_t seed = 0;
};

namespace detail {

// Exact per-node regrets of a mixed assignment. G0's payoff at an interior
// node reads the R mixtures at its successors only.
inline Rational max_node_regret(const PointGraph& graph,
                                const std::vector<FiniteGameSolution::NodeMix>& mix) {
  Rational worst(0);
  for (uint32_t v = 0; v < graph.size(); ++v) {
    int e = graph.nodes[v].e_bit;
    Mixture g{mix[v].g};
    for (RPlayer pl : {RPlayer::R1, RPlayer::R2}) {
      Rational e0 = expected_payoff_R(pl, e, g, Mixture::pure(ActionA::a0));
      Rational e1 = expected_payoff_R(pl, e, g, Mixture::pure(ActionA::a1));
      Rational own = pl == RPlayer::R1 ? mix[v].r1 : mix[v].r2;
      Rational gain = max(e0, e1) - (own * e0 + (Rational(1) - own) * e1);
      if (gain > worst) worst = gain;
    }
    if (!graph.interior(v)) continue;
    Mixture a1{mix[*graph.nodes[v].t1].r1};
    Mixture a2{mix[*graph.nodes[v].t2].r2};
    Rational e0 = expected_payoff_G(e, ActionB::b0, a1, a2);
    Rational e1 = expected_payoff_G(e, ActionB::b1, a1, a2);
    Rational gain = max(e0, e1) - (mix[v].g * e0 + (Rational(1) - mix[v].g) * e1);
    if (gain > worst) worst = gain;
  }
  return worst;
}

// G0's indifference threshold pinned by a mixing R player.
inline Rational r_mixing_threshold(RPlayer pl, int e) {
  // P(b0) making the R player indifferent between its actions
  if (pl == RPlayer::R1) return e == 0 ? Rational(1, 4) : Rational(3, 4);
  return e == 0 ? Rational(3, 4) : Rational(1, 4);
}

enum class Support : int { Pure0 = 0, Pure1 = 1, Mix = 2 };

// Support enumeration over (g, r1, r2) per node. G0's indifference at an
// interior node factors as (linear in r1(t1)) * (linear in r2(t2)), so each
// mixing G agent pins one successor mixture to 2/3, 1/2 or 1/3. All
// candidate assignments are rational and verified exactly.
inline std::optional<FiniteGameSolution> solve_by_support_enumeration(
    const PointGraph& graph) {
  size_t n = graph.size();
  size_t agents = 3 * n;
  uint64_t combos = 1;
  for (size_t i = 0; i < agents; ++i) combos *= 3;

  std::vector<Support> support(agents);
  for (uint64_t sc = 0; sc < combos; ++sc) {
    uint64_t rem = sc;
    for (size_t i = 0; i < agents; ++i) {
      support[i] = static_cast<Support>(rem % 3);
      rem /= 3;
    }
    auto g_support = [&](uint32_t v) { return support[v]; };
    auto r_support = [&](RPlayer pl, uint32_t v) {
      return support[n + (pl == RPlayer::R1 ? 0 : n) + v];
    };

    // R mixing pins the node's G value to the indifference threshold.
    std::vector<std::optional<Rational>> g_val(n), r1_val(n), r2_val(n);
    bool feasible = true;
    for (uint32_t v = 0; v < n && feasible; ++v) {
      bool mix1 = r_support(RPlayer::R1, v) == Support::Mix;
      bool mix2 = r_support(RPlayer::R2, v) == Support::Mix;
      if (mix1 && mix2) {
        feasible = false;  // thresholds 1/4 and 3/4 cannot both hold
        break;
      }
      if (r_support(RPlayer::R1, v) == Support::Pure0) r1_val[v] = Rational(1);
      if (r_support(RPlayer::R1, v) == Support::Pure1) r1_val[v] = Rational(0);
      if (r_support(RPlayer::R2, v) == Support::Pure0) r2_val[v] = Rational(1);
      if (r_support(RPlayer::R2, v) == Support::Pure1) r2_val[v] = Rational(0);
      if (g_support(v) == Support::Pure0) g_val[v] = Rational(1);
      if (g_support(v) == Support::Pure1) g_val[v] = Rational(0);
      if (mix1 || mix2) {
        Rational pin = r_mixing_threshold(mix1 ? RPlayer::R1 : RPlayer::R2,
                                          graph.nodes[v].e_bit);
        if (g_support(v) != Support::Mix) {
          feasible = false;  // a pure G cannot sit at an interior threshold
          break;
        }
        g_val[v] = pin;
      }
    }
    if (!feasible) continue;

    // Each mixing G agent at an interior node needs one factor of its
    // indifference product to vanish: enumerate the factor choices.
    std::vector<uint32_t> mixing_g;
    for (uint32_t v = 0; v < n; ++v)
      if (g_support(v) == Support::Mix && graph.interior(v)) mixing_g.push_back(v);
    uint64_t branch_count = uint64_t(1) << mixing_g.size();

    for (uint64_t branch = 0; branch < branch_count; ++branch) {
      std::vector<std::optional<Rational>> r1 = r1_val, r2 = r2_val, g = g_val;
      bool ok = true;
      for (size_t i = 0; i < mixing_g.size() && ok; ++i) {
        uint32_t v = mixing_g[i];
        int e = graph.nodes[v].e_bit;
        bool second_factor = (branch >> i) & 1;
        // e = 0: r2(t2 v) = 1/2  or  r1(t1 v) = 2/3
        // e = 1: r1(t1 v) = 1/2  or  r2(t2 v) = 1/3
        RPlayer pl;
        uint32_t target;
        Rational value;
        if (e == 0) {
          if (!second_factor) {
            pl = RPlayer::R2;
            target = *graph.nodes[v].t2;
            value = Rational(1, 2);
          } else {
            pl = RPlayer::R1;
            target = *graph.nodes[v].t1;
            value = Rational(2, 3);
          }
        } else {
          if (!second_factor) {
            pl = RPlayer::R1;
            target = *graph.nodes[v].t1;
            value = Rational(1, 2);
          } else {
            pl = RPlayer::R2;
            target = *graph.nodes[v].t2;
            value = Rational(1, 3);
          }
        }
        auto& slot = (pl == RPlayer::R1 ? r1 : r2)[target];
        if (r_support(pl, target) != Support::Mix) {
          ok = false;  // pinned value needs a mixing agent
        } else if (slot && *slot != value) {
          ok = false;  // conflicting pins
        } else {
          slot = value;
        }
      }
      if (!ok) continue;

      // remaining mixing agents default to interior canonical values
      for (uint32_t v = 0; v < n && ok; ++v) {
        if (!r1[v]) r1[v] = Rational(1, 2);
        if (!r2[v]) r2[v] = Rational(1, 2);
        if (!g[v]) {
          // G mixes but nothing pins it: pick the midpoint of the band where
          // both (pure) R agents at this node stay weakly best-responding
          Rational lo(0), hi(1);
          int e = graph.nodes[v].e_bit;
          for (RPlayer pl : {RPlayer::R1, RPlayer::R2}) {
            Support s = r_support(pl, v);
            Rational thr = r_mixing_threshold(pl, e);
            if (s == Support::Pure0) lo = max(lo, thr);   // needs P(b0) >= thr
            if (s == Support::Pure1) hi = min(hi, thr);   // needs P(b0) <= thr
          }
          if (lo > hi) {
            ok = false;
            break;
          }
          g[v] = (lo + hi) / Rational(2);
        }
      }
      if (!ok) continue;

      std::vector<FiniteGameSolution::NodeMix> mix(n);
      for (uint32_t v = 0; v < n; ++v) mix[v] = {*g[v], *r1[v], *r2[v]};
      if (max_node_regret(graph, mix) == Rational(0)) {
        FiniteGameSolution sol;
        sol.mix = std::move(mix);
        sol.max_node_regret = Rational(0);
        sol.converged = true;
        sol.method = "support_enumeration";
        for (const auto& m : sol.mix) {
          for (const Rational& p : {m.g, m.r1, m.r2})
            if (p > Rational(0) && p < Rational(1)) sol.some_node_mixes = true;
        }
        return sol;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Equilibrium of the finite sub-game induced by a closed point graph.
// Acyclic graphs get the pure parity construction; small cyclic graphs get
// exact support enumeration; larger ones damped fictitious play with
// restarts, re-scored exactly. Non-convergence is reported explicitly.
inline FiniteGameSolution solve_finite_game(const PointGraph& graph,
                                            const SolveOptions& options = {}) {
  graph.validate();
  size_t n = graph.size();
  if (n == 0) throw std::invalid_argument("empty graph");

  if (graph.acyclic()) {
    // leaves get the default colour, interiors follow best responses upward;
    // the result is exactly a parity colouring's induced pure profile
    std::vector<int> colour(n, -1);
    std::vector<int> order;  // reverse topological
    {
      std::vector<int> state(n, 0);
      std::vector<uint32_t> stack;
      for (uint32_t root = 0; root < n; ++root) {
        if (state[root]) continue;
        stack.push_back(root);
        while (!stack.empty()) {
          uint32_t v = stack.back();
          if (state[v] == 0) {
            state[v] = 1;
            for (const auto& succ : {graph.nodes[v].t1, graph.nodes[v].t2})
              if (succ && state[*succ] == 0) stack.push_back(*succ);
          } else {
            if (state[v] == 1) order.push_back(static_cast<int>(v));
            state[v] = 2;
            stack.pop_back();
          }
        }
      }
    }
    for (int v : order) {
      if (!graph.interior(v)) {
        colour[v] = 0;
      } else {
        colour[v] = colour[*graph.nodes[v].t1] ^ colour[*graph.nodes[v].t2] ^
                    graph.nodes[v].e_bit;
      }
    }
    FiniteGameSolution sol;
    sol.mix.resize(n);
    for (uint32_t v = 0; v < n; ++v) {
      Rational p = colour[v] == 0 ? Rational(1) : Rational(0);
      sol.mix[v] = {p, p, p};
    }
    sol.max_node_regret = detail::max_node_regret(graph, sol.mix);
    sol.converged = sol.max_node_regret == Rational(0);
    sol.method = "acyclic_pure";
    return sol;
  }

  if (n <= 3) {
    if (auto sol = detail::solve_by_support_enumeration(graph)) return *sol;
  }

  // damped fictitious play over the agent form
  SplitMix64 rng(options.seed);
  FiniteGameSolution best;
  best.method = "fictitious_play";
  bool have_best = false;
  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    std::vector<double> g(n), r1(n), r2(n);
    for (size_t v = 0; v < n; ++v) {
      g[v] = double(rng.next() % 1000) / 999.0;
      r1[v] = double(rng.next() % 1000) / 999.0;
      r2[v] = double(rng.next() % 1000) / 999.0;
    }
    uint64_t iters = options.max_iterations / std::max(1, options.restarts);
    for (uint64_t t = 1; t <= iters; ++t) {
      double w = 1.0 / double(t + 1);
      std::vector<double> gb(n), r1b(n), r2b(n);
      for (uint32_t v = 0; v < n; ++v) {
        int e = graph.nodes[v].e_bit;
        const auto& RT = shiftgame::detail::kRPayoff;
        double q = g[v];
        r1b[v] = q * RT[0][e][0][0] >= (1.0 - q) * RT[0][e][1][1] ? 1.0 : 0.0;
        r2b[v] = q * RT[1][e][0][0] >= (1.0 - q) * RT[1][e][1][1] ? 1.0 : 0.0;
        if (graph.interior(v)) {
          double p1 = r1[*graph.nodes[v].t1];
          double p2 = r2[*graph.nodes[v].t2];
          double e0 = 0.0, e1 = 0.0;
          for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2) {
              double weight = (a1 ? 1.0 - p1 : p1) * (a2 ? 1.0 - p2 : p2);
              e0 += weight * shiftgame::detail::kGPayoff[e][0][a1][a2];
              e1 += weight * shiftgame::detail::kGPayoff[e][1][a1][a2];
            }
          gb[v] = e0 >= e1 ? 1.0 : 0.0;
        } else {
          gb[v] = g[v];
        }
      }
      for (size_t v = 0; v < n; ++v) {
        g[v] += w * (gb[v] - g[v]);
        r1[v] += w * (r1b[v] - r1[v]);
        r2[v] += w * (r2b[v] - r2[v]);
      }
      best.iterations++;
    }
    // exact re-score of the double assignment
    std::vector<FiniteGameSolution::NodeMix> mix(n);
    auto to_rational = [](double x) {
      const int128 D = 1000000000;
      if (x < 0) x = 0;
      if (x > 1) x = 1;
      return Rational(int128(x * double(D) + 0.5), D);
    };
    for (size_t v = 0; v < n; ++v) mix[v] = {to_rational(g[v]), to_rational(r1[v]), to_rational(r2[v])};
    Rational regret = detail::max_node_regret(graph, mix);
    if (!have_best || regret < best.max_node_regret) {
      best.mix = std::move(mix);
      best.max_node_regret = regret;
      have_best = true;
    }
    if (have_best && best.max_node_regret <= options.tolerance) break;
  }
  best.converged = have_best && best.max_node_regret <= options.tolerance;
  for (const auto& m : best.mix) {
    for (const Rational& p : {m.g, m.r1, m.r2})
      if (p > Rational(0) && p < Rational(1)) best.some_node_mixes = true;
  }
  return best;
}

}  // namespace shiftgame
