#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "congruo/curve.hpp"
#include "congruo/errors.hpp"
#include "congruo/square_class.hpp"

namespace congruo {

// Element a + b*sqrt(d) of Q(sqrt(d)), d squarefree and neither 0 nor 1. A
// non-squarefree radicand k^2 d' is normalized to d' with b scaled by k.
// Elements interoperate only within one field: mixing radicands is an error.
class QuadRat {
 public:
  QuadRat(Rat a, Rat b, const Int& d) : a_(std::move(a)), b_(std::move(b)) {
    if (d == 0) throw std::domain_error("QuadRat: radicand must be nonzero");
    Int ad = d < 0 ? Int(-d) : d;
    Int sf = squarefree_part(ad);
    Int k = isqrt(Int(ad / sf));
    d_ = d < 0 ? Int(-sf) : sf;
    b_ = b_ * Rat(k);
    if (d_ == 1)
      throw std::domain_error("QuadRat: radicand is a perfect square; the value is rational");
  }

  const Rat& rational_part() const { return a_; }
  const Rat& surd_part() const { return b_; }
  const Int& radicand() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  QuadRat conj() const { return QuadRat(a_, -b_, d_, 0); }
  Rat norm() const { return sq(a_) - Rat(d_) * sq(b_); }
  Rat trace() const { return 2 * a_; }

  // Sign under the real embedding sqrt(d) > 0; requires d > 0.
  bool is_positive() const {
    if (d_ < 0)
      throw std::domain_error("QuadRat: no real ordering for negative radicand");
    int sa = a_.sign(), sb = b_.sign();
    if (sa >= 0 && sb >= 0) return sa > 0 || sb > 0;
    if (sa <= 0 && sb <= 0) return false;
    return (sq(a_) > Rat(d_) * sq(b_)) == (sa > 0);
  }

  friend QuadRat operator+(const QuadRat& x, const QuadRat& y) {
    return QuadRat(x.a_ + y.a_, x.b_ + y.b_, same(x, y), 0);
  }
  friend QuadRat operator-(const QuadRat& x, const QuadRat& y) {
    return QuadRat(x.a_ - y.a_, x.b_ - y.b_, same(x, y), 0);
  }
  friend QuadRat operator*(const QuadRat& x, const QuadRat& y) {
    const Int& d = same(x, y);
    return QuadRat(x.a_ * y.a_ + Rat(d) * x.b_ * y.b_,
                   x.a_ * y.b_ + x.b_ * y.a_, d, 0);
  }
  friend QuadRat operator/(const QuadRat& x, const QuadRat& y) {
    if (y.is_zero()) throw std::domain_error("QuadRat: division by zero");
    return x * y.conj() * QuadRat(1 / y.norm(), 0, y.d_, 0);
  }
  QuadRat operator-() const { return QuadRat(-a_, -b_, d_, 0); }

  friend bool operator==(const QuadRat& x, const QuadRat& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  // Text form "a+b*sqrt(d)" with zero parts omitted and unit coefficients
  // contracted ("sqrt(6)", "-sqrt(6)", "2", "1/2*sqrt(6)", "2-sqrt(6)").
  friend std::ostream& operator<<(std::ostream& os, const QuadRat& q) {
    if (q.b_.is_zero()) return os << q.a_;
    if (!q.a_.is_zero()) {
      os << q.a_ << (q.b_.sign() > 0 ? "+" : "-");
      Rat c = abs(q.b_);
      if (c != 1) os << c << '*';
    } else if (q.b_ == -1) {
      os << '-';
    } else if (q.b_ != 1) {
      os << q.b_ << '*';
    }
    return os << "sqrt(" << q.d_ << ')';
  }

  // Parses the text form; `d` fixes the field, and a radicand spelled in the
  // text must normalize to it.
  static QuadRat parse(std::string_view s, const Int& d);

 private:
  // Trusted fast path: d already squarefree-normalized.
  QuadRat(Rat a, Rat b, Int d, int) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  static const Int& same(const QuadRat& x, const QuadRat& y) {
    if (x.d_ != y.d_)
      throw std::domain_error("QuadRat: mixed radicands " + x.d_.get_str() +
                              " and " + y.d_.get_str());
    return x.d_;
  }

  Rat a_, b_;
  Int d_;
};

inline QuadRat QuadRat::parse(std::string_view s, const Int& d) {
  QuadRat field_check(0, 1, d);  // validates d itself
  const Int& dn = field_check.radicand();
  auto pos = s.find("sqrt(");
  if (pos == std::string_view::npos) return QuadRat(Rat::parse(s), 0, dn);
  if (s.back() != ')')
    throw parse_error("QuadRat: missing ')' in '" + std::string(s) + "'");
  std::string rad_text(s.substr(pos + 5, s.size() - pos - 6));
  Rat rad = Rat::parse(rad_text);
  if (!rad.is_integer())
    throw parse_error("QuadRat: radicand must be an integer in '" + std::string(s) + "'");
  std::string_view before = s.substr(0, pos);
  Rat a = 0, b = 1;
  if (before.empty()) {
    // sqrt(D)
  } else if (before == "-") {
    b = -1;
  } else if (before.back() == '+' || before.back() == '-') {
    a = Rat::parse(before.substr(0, before.size() - 1));
    if (before.back() == '-') b = -1;
  } else if (before.back() == '*') {
    std::string_view body = before.substr(0, before.size() - 1);
    auto split = body.find_last_of("+-");
    if (split == std::string_view::npos || split == 0) {
      b = Rat::parse(body);
    } else {
      a = Rat::parse(body.substr(0, split));
      b = Rat::parse(body.substr(split + 1));
      if (body[split] == '-') b = -b;
    }
  } else {
    throw parse_error("QuadRat: malformed '" + std::string(s) + "'");
  }
  QuadRat out(a, b, rad.num());
  if (!out.surd_part().is_zero() && out.radicand() != dn)
    throw parse_error("QuadRat: radicand " + rad_text + " does not match field sqrt(" +
                      dn.get_str() + ")");
  if (out.surd_part().is_zero()) return QuadRat(out.rational_part(), 0, dn);
  return out;
}

using QuadPoint = CurvePointT<QuadRat>;

inline QuadPoint conj_point(const QuadPoint& p) {
  if (p.is_infinity()) return p;
  return QuadPoint(p.area().conj(), p.x().conj(), p.y().conj());
}

// Right triangle with sides in Q(sqrt(d)), all positive under the embedding
// sqrt(d) > 0, satisfying X^2 + Y^2 = Z^2 exactly.
class QuadTriangle {
 public:
  QuadTriangle(QuadRat x, QuadRat y, QuadRat z)
      : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
    if (!x_.is_positive() || !y_.is_positive() || !z_.is_positive())
      throw std::domain_error("QuadTriangle: sides must be positive");
    if (x_ * x_ + y_ * y_ != z_ * z_)
      throw std::domain_error("QuadTriangle: not a right triangle");
  }

  const QuadRat& x() const { return x_; }
  const QuadRat& y() const { return y_; }
  const QuadRat& z() const { return z_; }
  const Int& radicand() const { return x_.radicand(); }
  QuadRat area() const { return x_ * y_ / QuadRat(2, 0, radicand()); }

  // Text form "X,Y,Z" of three field elements.
  static QuadTriangle parse(std::string_view s, const Int& d);

  friend std::ostream& operator<<(std::ostream& os, const QuadTriangle& t) {
    return os << t.x_ << ',' << t.y_ << ',' << t.z_;
  }

 private:
  QuadRat x_, y_, z_;
};

inline QuadTriangle QuadTriangle::parse(std::string_view s, const Int& d) {
  auto c1 = s.find(',');
  auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
  if (c2 == std::string_view::npos || s.find(',', c2 + 1) != std::string_view::npos)
    throw parse_error("QuadTriangle: expected 'X,Y,Z' in '" + std::string(s) + "'");
  return QuadTriangle(QuadRat::parse(s.substr(0, c1), d),
                      QuadRat::parse(s.substr(c1 + 1, c2 - c1 - 1), d),
                      QuadRat::parse(s.substr(c2 + 1), d));
}

// Parameter map over Q(sqrt(d)): t = Y/(X+Z) with closed-form certificate
// 2/(X+Z), giving P = (A/t, cert A^2/t^2) on the curve of area A.
inline QuadPoint quad_point_from_triangle(const QuadTriangle& tri, const Rat& area) {
  const Int& d = tri.radicand();
  QuadRat a(area, 0, d);
  QuadRat t = tri.y() / (tri.x() + tri.z());
  QuadRat cert = QuadRat(2, 0, d) / (tri.x() + tri.z());
  return QuadPoint(a, a / t, cert * a * a / (t * t));
}

namespace detail {

inline void check_quad_area(const QuadTriangle& tri, const Rat& area) {
  QuadRat a = tri.area();
  if (!a.is_rational())
    throw hypothesis_violated("conjugate construction: the triangle's area is irrational");
  if (a.rational_part() != area)
    throw hypothesis_violated("conjugate construction: the triangle's area is " +
                              a.rational_part().str() + ", not " + area.str());
}

}  // namespace detail

// P + conj(P) is fixed by conjugation, hence a rational point of the same
// curve; the rationality of its coordinates is asserted, not assumed.
inline CurvePoint conj_sum_point(const QuadPoint& p) {
  if (!p.area().is_rational())
    throw hypothesis_violated("conjugate sum: curve area must be rational");
  Rat area = p.area().rational_part();
  QuadPoint s = point_add(p, conj_point(p));
  if (s.is_infinity()) return CurvePoint::infinity(area);
  if (!s.x().is_rational() || !s.y().is_rational())
    throw std::logic_error("conjugate sum: result not fixed by conjugation");
  return CurvePoint(area, s.x().rational_part(), s.y().rational_part());
}

// P - conj(P) is negated by conjugation, so it is (x, w sqrt(d)) with x, w
// rational; (d x, d^2 w) then lies on the curve of area A d, which the
// transport identity (dx)^3 - (Ad)^2 (dx) = (d^2 w)^2 re-checks exactly.
inline CurvePoint conj_diff_point(const QuadPoint& p) {
  if (!p.area().is_rational())
    throw hypothesis_violated("conjugate difference: curve area must be rational");
  Rat area = p.area().rational_part();
  Rat d(p.area().radicand());
  QuadPoint diff = point_sub(p, conj_point(p));
  if (diff.is_infinity()) return CurvePoint::infinity(area * d);
  if (!diff.x().is_rational() || !diff.y().rational_part().is_zero())
    throw std::logic_error("conjugate difference: result not negated by conjugation");
  Rat x = diff.x().rational_part();
  Rat w = diff.y().surd_part();
  if (sq(sq(d) * w) != (d * x) * (sq(d * x) - sq(area * d)))
    throw std::logic_error("conjugate difference: transport identity failed");
  return CurvePoint(area * d, d * x, sq(d) * w);
}

// Conjugate-sum construction: a triangle over Q(sqrt(d)) of rational area A
// whose hypotenuse has nonzero rational part yields a rational triangle of
// the same area A. A vanishing sum (the point is negated by conjugation) is
// degenerate before any hypotenuse hypothesis applies, since pure-surd sides
// force exactly that case.
inline Triangle conj_sum_triangle(const QuadTriangle& tri, const Rat& area) {
  detail::check_quad_area(tri, area);
  CurvePoint s = conj_sum_point(quad_point_from_triangle(tri, area));
  if (s.is_infinity())
    throw degenerate_result("conjugate sum: point cancels its conjugate, no triangle");
  if (tri.z().rational_part().is_zero())
    throw hypothesis_violated(
        "conjugate sum: hypotenuse must have nonzero rational part");
  if (s.is_two_torsion())
    throw degenerate_result("conjugate sum: result is torsion, no triangle");
  return triangle_from_point(s);
}

// Conjugate-difference construction: a triangle over Q(sqrt(d)) of rational
// area A with irrational hypotenuse yields a rational triangle of area A d.
// A vanishing difference (conjugation-fixed point, e.g. any rational-sided
// input) is degenerate before the hypotenuse hypothesis applies.
inline Triangle conj_diff_triangle(const QuadTriangle& tri, const Rat& area) {
  detail::check_quad_area(tri, area);
  CurvePoint diff = conj_diff_point(quad_point_from_triangle(tri, area));
  if (diff.is_infinity())
    throw degenerate_result(
        "conjugate difference: point is fixed by conjugation, no triangle");
  if (tri.z().surd_part().is_zero())
    throw hypothesis_violated("conjugate difference: hypotenuse must be irrational");
  if (diff.is_two_torsion())
    throw degenerate_result("conjugate difference: result is torsion, no triangle");
  return triangle_from_point(diff);
}

}  // namespace congruo
