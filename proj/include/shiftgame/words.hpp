#pragma once
// Words over the two shift generators and their canonical index:
// ordered by length, then lexicographically with T1 < T2.
//
//   index(e) = 0, index(T1) = 1, index(T2) = 2, index(T1T1) = 3, ...
//
// A length-l word with letter bits b1..bl (T1 -> 0, T2 -> 1, b1 leftmost)
// sits at (2^l - 1) + sum_k b_k 2^(l-k). The l low "slots" are exactly the
// binary-heap numbering shifted by one, which keeps prefix masks cheap.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftgame {

enum class Gen : uint8_t { T1 = 0, T2 = 1 };

inline int word_length_of_index(uint64_t idx) {
  return std::bit_width(idx + 1) - 1;
}

// Index of Ti·w given index of w (the coordinate a shift reads from).
inline uint64_t prepend_index(Gen g, uint64_t idx) {
  int len = word_length_of_index(idx);
  uint64_t offset = idx + 1 - (uint64_t(1) << len);
  return ((uint64_t(1) << (len + 1)) - 1) + (uint64_t(static_cast<uint8_t>(g)) << len) + offset;
}

// Index of w·Ti given index of w (the successor along Ti in an orbit).
inline uint64_t append_index(uint64_t idx, Gen g) {
  return 2 * idx + 1 + static_cast<uint64_t>(static_cast<uint8_t>(g));
}

struct Word {
  std::vector<Gen> letters;

  Word() = default;
  explicit Word(std::vector<Gen> ls) : letters(std::move(ls)) {}

  size_t length() const { return letters.size(); }
  bool is_identity() const { return letters.empty(); }

  uint64_t index() const {
    uint64_t idx = 0;
    for (Gen g : letters) idx = append_index(idx, g);
    return idx;
  }

  static Word from_index(uint64_t idx) {
    int len = word_length_of_index(idx);
    uint64_t offset = idx + 1 - (uint64_t(1) << len);
    Word w;
    w.letters.resize(len);
    for (int k = 0; k < len; ++k) {
      w.letters[k] = static_cast<Gen>((offset >> (len - 1 - k)) & 1);
    }
    return w;
  }

  Word appended(Gen g) const {
    Word w = *this;
    w.letters.push_back(g);
    return w;
  }

  Word prepended(Gen g) const {
    Word w;
    w.letters.reserve(letters.size() + 1);
    w.letters.push_back(g);
    w.letters.insert(w.letters.end(), letters.begin(), letters.end());
    return w;
  }

  Gen first() const {
    if (letters.empty()) throw std::logic_error("identity word has no first letter");
    return letters.front();
  }

  std::string to_string() const {
    if (letters.empty()) return "e";
    std::string s;
    for (Gen g : letters) s += (g == Gen::T1 ? "T1" : "T2");
    return s;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
};

inline uint64_t word_index(const Word& w) { return w.index(); }

}  // namespace shiftgame
