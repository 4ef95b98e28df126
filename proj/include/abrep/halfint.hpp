#ifndef ABREP_HALFINT_HPP
#define ABREP_HALFINT_HPP

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace abrep {

/// Exact half-integer, stored as twice its value. Covers spin labels
/// (A, B, C, D, j, K) and the phase factors (-1)^{2A}, (-1)^{j-sigma}, ...
/// with no floating point anywhere.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

  static constexpr HalfInt from_twice(int t) { return HalfInt(t); }
  static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }

  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice); }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice + o.twice); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice - o.twice); }
  constexpr HalfInt operator-() const { return HalfInt(-twice); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

constexpr HalfInt half_min(HalfInt a, HalfInt b) { return a < b ? a : b; }
constexpr HalfInt half_max(HalfInt a, HalfInt b) { return a < b ? b : a; }
constexpr HalfInt half_abs(HalfInt a) { return a.twice < 0 ? -a : a; }

/// (-1)^{2h}; defined for every half-integer h since 2h is an integer.
constexpr int phase_two(HalfInt h) { return (h.twice % 2 == 0) ? 1 : -1; }

/// (-1)^h; requires h integer.
inline int phase_int(HalfInt h) {
  if (!h.is_integer()) throw std::invalid_argument("phase_int: exponent " + h.str() + " is not an integer");
  return ((h.twice / 2) % 2 == 0) ? 1 : -1;
}

/// Parses "3/2", "1.5", "2", or "twice:3". The twice-value is recovered
/// exactly; floating point is never consulted.
inline HalfInt parse_half_int(const std::string& s) {
  auto fail = [&]() -> HalfInt {
    throw std::invalid_argument("cannot parse half-integer: '" + s + "'");
  };
  if (s.empty()) return fail();
  if (s.rfind("twice:", 0) == 0) {
    std::size_t pos = 0;
    int t = std::stoi(s.substr(6), &pos);
    if (pos != s.size() - 6) return fail();
    return HalfInt::from_twice(t);
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::size_t pn = 0, pd = 0;
    int num = std::stoi(s.substr(0, slash), &pn);
    int den = std::stoi(s.substr(slash + 1), &pd);
    if (pn != slash || pd != s.size() - slash - 1) return fail();
    if (den == 1) return HalfInt::from_int(num);
    if (den == 2) return HalfInt::from_twice(num);
    return fail();
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    std::size_t pi = 0;
    int whole = std::stoi(s.substr(0, dot), &pi);
    if (pi != dot) return fail();
    bool neg = s[0] == '-';
    if (frac == "0" || frac == "00") return HalfInt::from_int(whole);
    if (frac == "5" || frac == "50") return HalfInt::from_twice(2 * whole + (neg ? -1 : 1));
    return fail();
  }
  std::size_t pos = 0;
  int n = std::stoi(s, &pos);
  if (pos != s.size()) return fail();
  return HalfInt::from_int(n);
}

}  // namespace abrep

#endif
