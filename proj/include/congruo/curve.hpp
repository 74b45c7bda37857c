#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "congruo/errors.hpp"
#include "congruo/triangle.hpp"

namespace congruo {

// Point on y^2 = x^3 - A^2 x over the field K, where A is the (rational)
// area embedded in K. Every constructed affine point is checked to satisfy
// the equation exactly.
template <class K>
class CurvePointT {
 public:
  CurvePointT(K area, K x, K y)
      : area_(std::move(area)), coords_(std::in_place, std::move(x), std::move(y)) {
    const K& px = coords_->first;
    const K& py = coords_->second;
    if (py * py != px * px * px - area_ * area_ * px)
      throw std::domain_error("CurvePoint: not on the curve");
  }

  static CurvePointT infinity(K area) { return CurvePointT(std::move(area)); }

  bool is_infinity() const { return !coords_.has_value(); }
  bool is_two_torsion() const { return is_infinity() || y().is_zero(); }
  const K& area() const { return area_; }
  const K& x() const { return require().first; }
  const K& y() const { return require().second; }

  friend bool operator==(const CurvePointT& a, const CurvePointT& b) {
    return a.area_ == b.area_ && a.coords_ == b.coords_;
  }
  friend std::ostream& operator<<(std::ostream& os, const CurvePointT& p) {
    if (p.is_infinity()) return os << 'O';
    return os << p.x() << ',' << p.y();
  }

 private:
  explicit CurvePointT(K area) : area_(std::move(area)) {}
  const std::pair<K, K>& require() const {
    if (!coords_) throw std::logic_error("CurvePoint: infinity has no coordinates");
    return *coords_;
  }

  K area_;
  std::optional<std::pair<K, K>> coords_;
};

template <class K>
CurvePointT<K> point_negate(const CurvePointT<K>& p) {
  if (p.is_infinity()) return p;
  return CurvePointT<K>(p.area(), p.x(), -p.y());
}

// Chord-and-tangent addition.
template <class K>
CurvePointT<K> point_add(const CurvePointT<K>& p, const CurvePointT<K>& q) {
  if (p.area() != q.area())
    throw std::domain_error("point_add: points on different curves");
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const K &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  K m = x1;  // slope, assigned below
  if (x1 == x2) {
    if (y1 == -y2) return CurvePointT<K>::infinity(p.area());
    if (y1 != y2) throw std::logic_error("point_add: inconsistent points");
    K x1sq = x1 * x1;
    m = (x1sq + x1sq + x1sq - p.area() * p.area()) / (y1 + y1);
  } else {
    m = (y2 - y1) / (x2 - x1);
  }
  K x3 = m * m - x1 - x2;
  K y3 = m * (x1 - x3) - y1;
  return CurvePointT<K>(p.area(), std::move(x3), std::move(y3));
}

template <class K>
CurvePointT<K> point_double(const CurvePointT<K>& p) {
  return point_add(p, p);
}

template <class K>
CurvePointT<K> point_sub(const CurvePointT<K>& p, const CurvePointT<K>& q) {
  return point_add(p, point_negate(q));
}

template <class K>
CurvePointT<K> point_mul(unsigned long n, const CurvePointT<K>& p) {
  auto acc = CurvePointT<K>::infinity(p.area());
  auto base = p;
  while (n != 0) {
    if (n & 1) acc = point_add(acc, base);
    n >>= 1;
    if (n != 0) base = point_double(base);
  }
  return acc;
}

using CurvePoint = CurvePointT<Rat>;

// Parameter-to-point map: t |-> (A/t, cert A^2/t^2). On the curve exactly
// because t(1-t^2) = A cert^2.
inline CurvePoint phi(const CongruentParam& p) {
  Rat t = p.t.value();
  return CurvePoint(p.area, p.area / t, p.cert * sq(p.area) / sq(t));
}

// Inverse of phi on x-coordinates. x > A gives t = A/x in (0,1); for
// -A < x < 0 the value A/x lies below -1 and is identified with -x/A in
// (0,1). Infinity and two-torsion map to the identity. No other x region is
// possible on the real curve.
inline ParamOrIdentity phi_inv(const CurvePoint& pt) {
  if (pt.is_two_torsion()) return ParamOrIdentity::identity();
  const Rat& area = pt.area();
  const Rat& x = pt.x();
  if (x > area) return primitive_normalize(area / x);
  if (x.sign() < 0 && -x < area) return primitive_normalize(-x / area);
  throw std::logic_error("phi_inv: x-coordinate region impossible on the real curve");
}

// Triangle-to-point map: (X,Y,Z) |-> (r^2, rs) with r = Z/2,
// s = (X^2 - Y^2)/4, on the curve of the triangle's own area.
inline CurvePoint psi_map(const Triangle& tri) {
  Rat r = tri.z() / 2;
  Rat s = (sq(tri.x()) - sq(tri.y())) / 4;
  return CurvePoint(tri.area(), sq(r), r * s);
}

// Degree-2 self-isogeny (x,y) |-> (A(x+A)/(x-A), 2y (A/(x-A))^2). The pole
// x = A and infinity map to infinity. On parameters it realizes the
// associate map: isogeny(phi(t)) has the x-coordinate of phi at
// associate(t).
inline CurvePoint isogeny(const CurvePoint& pt) {
  if (pt.is_infinity()) return pt;
  const Rat& area = pt.area();
  if (pt.x() == area) return CurvePoint::infinity(area);
  Rat w = area / (pt.x() - area);
  return CurvePoint(area, (pt.x() + area) * w, 2 * pt.y() * sq(w));
}

// Triangle of a non-torsion point:
// (|x^2-A^2|/|y|, |2Ax/y|, (x^2+A^2)/|y|); its area is exactly A.
inline Triangle triangle_from_point(const CurvePoint& pt) {
  if (pt.is_two_torsion())
    throw std::domain_error("triangle_from_point: torsion point yields no triangle");
  const Rat& area = pt.area();
  Rat ay = abs(pt.y());
  return Triangle(abs(sq(pt.x()) - sq(area)) / ay, abs(2 * area * pt.x()) / ay,
                  (sq(pt.x()) + sq(area)) / ay);
}

// Text form "x,y", or "O" for infinity.
inline CurvePoint parse_point(std::string_view s, const Rat& area) {
  if (s == "O") return CurvePoint::infinity(area);
  auto comma = s.find(',');
  if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos)
    throw parse_error("CurvePoint: expected 'x,y' or 'O' in '" + std::string(s) + "'");
  return CurvePoint(area, Rat::parse(s.substr(0, comma)),
                    Rat::parse(s.substr(comma + 1)));
}

}  // namespace congruo
