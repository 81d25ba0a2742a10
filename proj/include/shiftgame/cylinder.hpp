#pragma once
// Depth-n cylinders of the product space {0,1}^(words): one label bit per
// word of length <= n, packed into a 64-bit code at canonical word indices.
// Because word indices sort by length first, restricting to a smaller depth
// is a prefix mask of the code.
//
// All measures are exact dyadic numbers: m(c) = 2^-(2^(n+1)-1) at depth n.

#include <cstdint>
#include <stdexcept>

#include "shiftgame/rational.hpp"
#include "shiftgame/words.hpp"

namespace shiftgame {

// Codes must fit in 64 bits: 2^(depth+1)-1 <= 63.
inline constexpr int kMaxCylinderDepth = 5;

inline uint64_t label_count(int depth) {
  if (depth < 0 || depth > kMaxCylinderDepth)
    throw std::invalid_argument("cylinder depth out of range");
  return (uint64_t(1) << (depth + 1)) - 1;
}

// |C_n| = 2^(2^(n+1)-1). Reported as an error, never wrapped, past depth 5.
inline uint64_t cylinder_count(int depth) {
  if (depth < 0) throw std::invalid_argument("cylinder depth out of range");
  if (depth > kMaxCylinderDepth)
    throw std::overflow_error("cylinder count exceeds 64-bit range beyond depth 5");
  return uint64_t(1) << label_count(depth);
}

struct DyadicMass {
  uint64_t numerator = 0;
  int log2_denominator = 0;  // value = numerator / 2^log2_denominator

  Rational to_rational() const {
    if (log2_denominator < 0 || log2_denominator > 126)
      throw std::overflow_error("dyadic mass denominator exceeds 128-bit range");
    return Rational(int128(numerator), int128(1) << log2_denominator);
  }

  friend bool operator==(const DyadicMass& a, const DyadicMass& b) {
    return a.to_rational() == b.to_rational();
  }
};

class Cylinder {
 public:
  Cylinder(int depth, uint64_t code) : depth_(depth), code_(code) {
    uint64_t bits = label_count(depth);  // validates depth
    if (bits < 64 && (code >> bits) != 0)
      throw std::invalid_argument("cylinder code has bits beyond its depth");
  }

  int depth() const { return depth_; }
  uint64_t code() const { return code_; }

  int label(uint64_t word_idx) const {
    if (word_idx >= label_count(depth_))
      throw std::out_of_range("word index beyond cylinder depth");
    return static_cast<int>((code_ >> word_idx) & 1);
  }

  int e_label() const { return static_cast<int>(code_ & 1); }

  friend bool operator==(const Cylinder& a, const Cylinder& b) {
    return a.depth_ == b.depth_ && a.code_ == b.code_;
  }

 private:
  int depth_;
  uint64_t code_;
};

inline DyadicMass measure(const Cylinder& c) {
  return DyadicMass{1, static_cast<int>(label_count(c.depth()))};
}

// Label of shift(c, i) at word V is c's label at Ti·V.
inline Cylinder shift(const Cylinder& c, Gen g) {
  if (c.depth() < 1)
    throw std::invalid_argument("cannot shift a depth-0 cylinder");
  uint64_t out = 0;
  uint64_t n = label_count(c.depth() - 1);
  for (uint64_t k = 0; k < n; ++k) {
    out |= uint64_t(c.label(prepend_index(g, k))) << k;
  }
  return Cylinder(c.depth() - 1, out);
}

// The twin over (c1, c2) with the given e label: shift(result, T1) = c1,
// shift(result, T2) = c2. Bijection {0,1} x C_n x C_n -> C_{n+1}.
inline Cylinder compose(int e_bit, const Cylinder& c1, const Cylinder& c2) {
  if (c1.depth() != c2.depth())
    throw std::invalid_argument("compose requires cylinders of equal depth");
  if (e_bit != 0 && e_bit != 1)
    throw std::invalid_argument("e bit must be 0 or 1");
  int depth = c1.depth() + 1;
  uint64_t out = uint64_t(e_bit);
  uint64_t n = label_count(c1.depth());
  for (uint64_t k = 0; k < n; ++k) {
    out |= uint64_t(c1.label(k)) << prepend_index(Gen::T1, k);
    out |= uint64_t(c2.label(k)) << prepend_index(Gen::T2, k);
  }
  return Cylinder(depth, out);
}

inline Cylinder restrict_to_depth(const Cylinder& c, int depth) {
  if (depth > c.depth())
    throw std::invalid_argument("restriction cannot increase depth");
  uint64_t bits = label_count(depth);
  uint64_t mask = bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << bits) - 1;
  return Cylinder(depth, c.code() & mask);
}

// Deterministic 64-bit stream; used everywhere randomness is needed so that
// seeded runs are reproducible across platforms.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
  SplitMix64 s(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  return s.next();
}

// Uniform labels, one independent fair bit per word position.
inline Cylinder sample_cylinder(int depth, uint64_t seed) {
  uint64_t bits = label_count(depth);
  SplitMix64 rng(seed);
  uint64_t mask = bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << bits) - 1;
  return Cylinder(depth, rng.next() & mask);
}

}  // namespace shiftgame
