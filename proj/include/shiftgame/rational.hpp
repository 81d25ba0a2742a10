#pragma once
// Exact rational arithmetic on 128-bit integers.
//
// Every quantity that feeds a decision (class thresholds, regret sums,
// certified bound intervals) stays exact. Intermediate overflow raises
// std::overflow_error instead of wrapping.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace shiftgame {

using int128 = __int128;
using uint128 = unsigned __int128;

[[noreturn]] inline void throw_overflow(const char* where) {
  throw std::overflow_error(std::string("exact arithmetic overflow in ") + where);
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw_overflow("add");
  return r;
}

inline int128 checked_sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw_overflow("sub");
  return r;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw_overflow("mul");
  return r;
}

inline uint128 uabs128(int128 v) {
  return v < 0 ? uint128(0) - uint128(v) : uint128(v);
}

inline uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  uint128 u = uabs128(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

// Canonical form: den > 0, gcd(|num|, den) == 1, 0 is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  template <typename T,
            typename = std::enable_if_t<std::is_integral_v<T> || std::is_same_v<T, int128> ||
                                        std::is_same_v<T, uint128>>>
  Rational(T v) : num_(static_cast<int128>(v)), den_(1) {}  // NOLINT: implicit by design
  Rational(int128 num, int128 den) { assign(num, den); }

  static Rational from_string(std::string_view s);

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    uint128 g = gcd128(uint128(a.den_), uint128(b.den_));
    int128 bd = b.den_ / int128(g);
    int128 ad = a.den_ / int128(g);
    int128 num = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, ad));
    int128 den = checked_mul(a.den_, bd);
    return Rational(num, den);
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    uint128 g1 = gcd128(uabs128(a.num_), uint128(b.den_));
    uint128 g2 = gcd128(uabs128(b.num_), uint128(a.den_));
    int128 num = checked_mul(a.num_ / int128(g1), b.num_ / int128(g2));
    int128 den = checked_mul(a.den_ / int128(g2), b.den_ / int128(g1));
    return Rational(num, den);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return (a - b).num_ < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }

  // "p" when the denominator is 1, else "p/q".
  std::string to_string() const {
    if (den_ == 1) return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void assign(int128 num, int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = checked_sub(0, num);
      den = checked_sub(0, den);
    }
    uint128 g = gcd128(uabs128(num), uint128(den));
    if (g > 1) {
      num /= int128(g);
      den /= int128(g);
    }
    num_ = num;
    den_ = den;
  }

  int128 num_;
  int128 den_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Accepts "p", "p/q" and plain decimal strings like "0.45" or "-.25".
inline Rational Rational::from_string(std::string_view s) {
  auto fail = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(s) + "'"); };
  if (s.empty()) fail();
  size_t slash = s.find('/');
  auto parse_int = [&](std::string_view t) -> int128 {
    if (t.empty()) fail();
    bool neg = false;
    size_t i = 0;
    if (t[0] == '+' || t[0] == '-') {
      neg = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) fail();
    int128 v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') fail();
      v = checked_add(checked_mul(v, 10), t[i] - '0');
    }
    return neg ? -v : v;
  };
  if (slash != std::string_view::npos) {
    int128 num = parse_int(s.substr(0, slash));
    int128 den = parse_int(s.substr(slash + 1));
    return Rational(num, den);
  }
  size_t dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(s), 1);
  std::string_view head = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  int128 whole = (head.empty() || head == "-" || head == "+") ? 0 : parse_int(head);
  int128 den = 1;
  int128 fnum = 0;
  for (char c : frac) {
    if (c < '0' || c > '9') fail();
    fnum = checked_add(checked_mul(fnum, 10), c - '0');
    den = checked_mul(den, 10);
  }
  Rational whole_part(whole, 1);
  Rational frac_part(fnum, den);
  return neg ? whole_part - frac_part : whole_part + frac_part;
}

}  // namespace shiftgame
