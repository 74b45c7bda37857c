#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "congruo/errors.hpp"

namespace congruo {

using Int = mpz_class;

// Exact rational number. Always reduced, denominator always positive; the
// arithmetic operators never expose an unreduced value.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int v) : q_(v) {}
  Rat(long v) : q_(v) {}
  Rat(const Int& v) : q_(v) {}
  Rat(const Int& num, const Int& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }

  Int num() const { return Int(q_.get_num()); }
  Int den() const { return Int(q_.get_den()); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  // Text form "p/q", or "p" when the denominator is 1.
  std::string str() const { return q_.get_str(); }

  // Accepts exactly the text form: optional leading '-', digits, optionally
  // followed by '/' and a positive integer. Rejects a zero denominator.
  static Rat parse(std::string_view s);

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.q_ + b.q_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.q_ - b.q_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.q_ * b.q_); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
  }
  Rat operator-() const { return Rat(mpq_class(-q_)); }

  Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
  Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }
  Rat& operator*=(const Rat& b) { q_ *= b.q_; return *this; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.q_;
  }

 private:
  explicit Rat(const mpq_class& q) : q_(q) {}
  mpq_class q_;
};

inline Rat sq(const Rat& x) { return x * x; }
inline Int sq(const Int& x) { return Int(x * x); }
inline Rat abs(const Rat& x) { return x.sign() < 0 ? -x : x; }

inline Rat Rat::parse(std::string_view s) {
  auto is_digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view numpart = s, denpart;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    numpart = s.substr(0, slash);
    denpart = s.substr(slash + 1);
    if (!is_digits(denpart))
      throw parse_error("Rat: malformed denominator in '" + std::string(s) + "'");
  }
  bool neg = !numpart.empty() && numpart.front() == '-';
  if (!is_digits(neg ? numpart.substr(1) : numpart))
    throw parse_error("Rat: malformed rational '" + std::string(s) + "'");
  Int num(std::string(numpart), 10);
  Int den = denpart.empty() ? Int(1) : Int(std::string(denpart), 10);
  if (den == 0) throw parse_error("Rat: zero denominator in '" + std::string(s) + "'");
  return Rat(num, den);
}

// Floor of the integer square root; the input must be nonnegative.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Exact integer square root, or nothing when the input is not a perfect
// square (negative inputs are never squares).
inline std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  return isqrt(n);
}

// Exact nonnegative square root of a rational, or nothing when the input is
// not a square in Q. A negative input is a domain error, not a "no".
inline std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q.sign() < 0) throw std::domain_error("rational_sqrt: negative input");
  auto n = exact_sqrt(q.num());
  if (!n) return std::nullopt;
  auto d = exact_sqrt(q.den());
  if (!d) return std::nullopt;
  return Rat(*n, *d);
}

}  // namespace congruo
