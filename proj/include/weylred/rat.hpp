#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

#include "weylred/errors.hpp"

namespace weylred {

// Exact fraction over int64. Always reduced, denominator > 0. Intermediate
// products run through __int128 and narrowing is checked, so overflow throws
// instead of wrapping. Everything in this project is desk-scale, but the
// check costs nothing and keeps results trustworthy.
class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rat operator-() const { return Rat(-num_, den_, already_reduced{}); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.num_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0)
      throw internal_error("Rat: division by zero");
    __int128 n = (__int128)a.num_ * b.den_;
    __int128 d = (__int128)a.den_ * b.num_;
    return from_wide(n, d);
  }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  // Representative in [0,1) of the class mod Z.
  Rat mod1() const { return *this - Rat(floor()); }

  bool is_integral() const { return den_ == 1; }

  // "p/q" with q omitted when 1. Canonical, used verbatim in reports.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p" or "p/q"; rejects everything else.
  static Rat parse(const std::string& s) {
    auto bad = [&] { throw validation_error("cannot parse rational '" + s + "'"); };
    if (s.empty()) bad();
    std::size_t slash = s.find('/');
    try {
      std::size_t used = 0;
      long long n = std::stoll(s.substr(0, slash), &used);
      if (used != (slash == std::string::npos ? s.size() : slash)) bad();
      if (slash == std::string::npos) return Rat(n);
      long long d = std::stoll(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) bad();
      if (d == 0) bad();
      return Rat(n, d);
    } catch (const std::invalid_argument&) {
      bad();
    } catch (const std::out_of_range&) {
      bad();
    }
    return Rat(); // unreachable
  }

private:
  struct already_reduced {};
  Rat(long long n, long long d, already_reduced) : num_(n), den_(d) {}

  static Rat from_wide(__int128 n, __int128 d) {
    if (d == 0) throw internal_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd_wide(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw internal_error("Rat: overflow past int64");
    return Rat((long long)n, (long long)d, already_reduced{});
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ == 0) throw internal_error("Rat: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (den_ == 0) den_ = 1;
  }

  long long num_;
  long long den_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

} // namespace weylred

template <>
struct std::hash<weylred::Rat> {
  std::size_t operator()(const weylred::Rat& r) const noexcept {
    std::size_t h = std::hash<long long>{}(r.num());
    h ^= std::hash<long long>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
