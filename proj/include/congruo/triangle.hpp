#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "congruo/errors.hpp"
#include "congruo/rational.hpp"

namespace congruo {

// Rational right triangle: legs x, y and hypotenuse z, all positive, with
// x^2 + y^2 = z^2 exactly.
class Triangle {
 public:
  Triangle(Rat x, Rat y, Rat z)
      : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
    if (x_.sign() <= 0 || y_.sign() <= 0 || z_.sign() <= 0)
      throw std::domain_error("Triangle: sides must be positive");
    if (sq(x_) + sq(y_) != sq(z_))
      throw std::domain_error("Triangle: not a right triangle");
  }

  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }
  const Rat& z() const { return z_; }
  Rat area() const { return x_ * y_ / 2; }

  // Text form "X,Y,Z".
  static Triangle parse(std::string_view s);

  friend bool operator==(const Triangle& a, const Triangle& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Triangle& t) {
    return os << t.x_ << ',' << t.y_ << ',' << t.z_;
  }

 private:
  Rat x_, y_, z_;
};

inline Triangle Triangle::parse(std::string_view s) {
  auto c1 = s.find(',');
  auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
  if (c2 == std::string_view::npos || s.find(',', c2 + 1) != std::string_view::npos)
    throw parse_error("Triangle: expected 'X,Y,Z' in '" + std::string(s) + "'");
  return Triangle(Rat::parse(s.substr(0, c1)),
                  Rat::parse(s.substr(c1 + 1, c2 - c1 - 1)),
                  Rat::parse(s.substr(c2 + 1)));
}

// Primitive triangle parameter t = m/n: 0 < m < n, coprime, m + n odd. The
// hypotenuse-1 triangle of t has legs (1-t^2)/(1+t^2) and 2t/(1+t^2); the
// primitive integer triangle is (n^2-m^2, 2mn, n^2+m^2).
class Param {
 public:
  Param(Int m, Int n) : m_(std::move(m)), n_(std::move(n)) {
    if (m_ <= 0 || n_ <= m_)
      throw std::domain_error("Param: requires 0 < m < n");
    Int g;
    mpz_gcd(g.get_mpz_t(), m_.get_mpz_t(), n_.get_mpz_t());
    if (g != 1) throw std::domain_error("Param: m, n must be coprime");
    if (mpz_even_p(Int(m_ + n_).get_mpz_t()))
      throw std::domain_error("Param: m, n must have opposite parity");
  }

  const Int& m() const { return m_; }
  const Int& n() const { return n_; }
  Rat value() const { return Rat(m_, n_); }

  friend bool operator==(const Param& a, const Param& b) {
    return a.m_ == b.m_ && a.n_ == b.n_;
  }
  friend bool operator<(const Param& a, const Param& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.m_ < b.m_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Param& p) {
    return os << p.m_ << '/' << p.n_;
  }

 private:
  Int m_, n_;
};

// A parameter or the identity of the triangle calculus (written "0").
class ParamOrIdentity {
 public:
  ParamOrIdentity() = default;
  ParamOrIdentity(const Param& p) : p_(p) {}

  static ParamOrIdentity identity() { return {}; }
  bool is_identity() const { return !p_.has_value(); }
  const Param& param() const {
    if (!p_) throw std::logic_error("ParamOrIdentity: identity has no parameter");
    return *p_;
  }

  friend bool operator==(const ParamOrIdentity& a, const ParamOrIdentity& b) {
    return a.p_ == b.p_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ParamOrIdentity& p) {
    if (p.is_identity()) return os << '0';
    return os << *p.p_;
  }

 private:
  std::optional<Param> p_;
};

// The associate parameter (1-t)/(1+t); swaps the triangle's legs. Involution
// on (0,1).
inline Rat associate(const Rat& t) {
  if (t.sign() <= 0 || t >= 1)
    throw std::domain_error("associate: requires 0 < t < 1");
  return (1 - t) / (1 + t);
}

// Of the pair {t, associate(t)} exactly one member has numerator and
// denominator of opposite parity; returns that one as a Param.
inline Param primitive_normalize(const Rat& t) {
  if (t.sign() <= 0 || t >= 1)
    throw std::domain_error("primitive_normalize: requires 0 < t < 1");
  if (mpz_odd_p(Int(t.num() + t.den()).get_mpz_t()))
    return Param(t.num(), t.den());
  Rat a = associate(t);
  if (mpz_even_p(Int(a.num() + a.den()).get_mpz_t()))
    throw std::logic_error("primitive_normalize: associate pair has no primitive member");
  return Param(a.num(), a.den());
}

// Parameter of a rational right triangle: t = Y/(X+Z) in lowest terms,
// normalized to the parity-primitive member of its associate pair. Swapping
// the legs lands on the associate, so the result is labeling-invariant.
inline Param param_from_triangle(const Triangle& tri) {
  return primitive_normalize(tri.y() / (tri.x() + tri.z()));
}

// The primitive integer triangle of a parameter: (n^2-m^2, 2mn, n^2+m^2).
inline Triangle triangle_from_param(const Param& p) {
  Int m2 = sq(p.m()), n2 = sq(p.n());
  return Triangle(Rat(Int(n2 - m2)), Rat(Int(2 * p.m() * p.n())),
                  Rat(Int(n2 + m2)));
}

// Parameter t certified to yield a rational right triangle of area `area`
// (up to square similarity factors): t(1 - t^2) = area * cert^2, cert > 0.
struct CongruentParam {
  Param t;
  Rat area;
  Rat cert;

  CongruentParam(Param t_, Rat area_, Rat cert_)
      : t(std::move(t_)), area(std::move(area_)), cert(std::move(cert_)) {
    if (area.sign() <= 0)
      throw std::domain_error("CongruentParam: area must be positive");
    if (cert.sign() <= 0)
      throw std::domain_error("CongruentParam: certificate must be positive");
    Rat tv = t.value();
    if (tv * (1 - sq(tv)) != area * sq(cert))
      throw std::domain_error("CongruentParam: certificate does not match");
  }

  friend bool operator==(const CongruentParam& a, const CongruentParam& b) {
    return a.t == b.t && a.area == b.area && a.cert == b.cert;
  }
};

// Membership of t in the area family: t(1 - t^2) = area * r^2 for rational
// r. Returns the certified, parity-primitive form, or nothing. The associate
// of a member is a member, with certificate scaled by 2/(1+t)^2.
inline std::optional<CongruentParam> membership(const Rat& t, const Rat& area) {
  if (area.sign() <= 0) throw std::domain_error("membership: area must be positive");
  if (t.sign() <= 0 || t >= 1)
    throw std::domain_error("membership: requires 0 < t < 1");
  auto r = rational_sqrt(t * (1 - sq(t)) / area);
  if (!r) return std::nullopt;
  Param p = primitive_normalize(t);
  Rat cert = p.value() == t ? *r : 2 * *r / sq(1 + t);
  return CongruentParam(p, area, cert);
}

// Certificate for a parameter that closure guarantees lies in the family;
// failure here is an internal error, not a caller mistake.
inline CongruentParam certify(const Param& t, const Rat& area) {
  auto c = membership(t.value(), area);
  if (!c)
    throw std::logic_error("certify: " + t.value().str() +
                           " unexpectedly outside the area-" + area.str() +
                           " family");
  return *c;
}

}  // namespace congruo
