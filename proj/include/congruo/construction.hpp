#pragma once

#include <optional>
#include <vector>

#include "congruo/errors.hpp"
#include "congruo/triangle.hpp"

namespace congruo {

// Identity-aware element of the fixed-area calculus; an empty optional is
// the identity.
using MemberOrIdentity = std::optional<CongruentParam>;

// Parameter of the triangle built on the doubled angle:
// T = 4t(1-t^2)/(1+t^2)^2. For t = m/n the result is 4mn(n^2-m^2)/(m^2+n^2)^2
// in lowest terms, already parity-primitive.
inline CongruentParam double_param(const CongruentParam& p) {
  Rat t = p.t.value();
  Rat d = 4 * t * (1 - sq(t)) / sq(1 + sq(t));
  return certify(primitive_normalize(d), p.area);
}

// Integer form of the doubling construction: legs (X^2-Y^2)^2 and 4XYZ^2.
// The input must be a primitive integer triangle; the output is the
// primitive triangle of the doubled parameter.
inline Triangle double_int_triangle(const Triangle& tri) {
  if (!tri.x().is_integer() || !tri.y().is_integer() || !tri.z().is_integer())
    throw std::domain_error("double_int_triangle: sides must be integers");
  Int x = tri.x().num(), y = tri.y().num(), z = tri.z().num();
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  if (g != 1)
    throw std::domain_error("double_int_triangle: triangle must be primitive");
  Int d = x * x - y * y;
  if (d < 0) d = -d;
  return Triangle(Rat(sq(d)), Rat(Int(4 * x * y * z * z)),
                  Rat(Int(sq(Int(z * z)) + sq(Int(2 * x * y)))));
}

namespace detail {

// Shared core of addition and subtraction:
//   t = (t2(1-t1^2) + t1(1-t2^2) +- 2g) / (1 + t1 t2)^2,
// where g is the exact square root of t1 t2 (1-t1^2)(1-t2^2). The root
// always exists for members and equals area * cert1 * cert2.
inline MemberOrIdentity combine_params(const CongruentParam& p1,
                                       const CongruentParam& p2,
                                       bool subtract) {
  if (p1.area != p2.area)
    throw std::domain_error("add/sub: operands belong to different areas");
  const Rat& area = p1.area;
  Rat t1 = p1.t.value(), t2 = p2.t.value();
  Rat a = t2 * (1 - sq(t1));
  Rat b = t1 * (1 - sq(t2));
  auto g = rational_sqrt(t1 * t2 * (1 - sq(t1)) * (1 - sq(t2)));
  if (!g) throw std::logic_error("add/sub: member product has no exact root");
  if (*g != area * p1.cert * p2.cert)
    throw std::logic_error("add/sub: root disagrees with certificate product");
  Rat t = (a + b + (subtract ? -(2 * *g) : 2 * *g)) / sq(1 + t1 * t2);
  if (t.is_zero()) return std::nullopt;
  if (t == 1)
    throw degenerate_result("add/sub: result parameter 1 is degenerate");
  if (t.sign() < 0 || t > 1)
    throw std::logic_error("add/sub: result parameter left (0,1)");
  return certify(primitive_normalize(t), area);
}

}  // namespace detail

// Sum in the triangle calculus; the nonnegative branch of the shared square
// root is always taken, so the result is deterministic.
inline MemberOrIdentity add_params(const MemberOrIdentity& a,
                                   const MemberOrIdentity& b) {
  if (!a) return b;
  if (!b) return a;
  return detail::combine_params(*a, *b, false);
}

// Difference in the triangle calculus. Identity operands pass the other
// operand through (parameters are only determined up to sign by their
// triangle class).
inline MemberOrIdentity sub_params(const MemberOrIdentity& a,
                                   const MemberOrIdentity& b) {
  if (!a) return b;
  if (!b) return a;
  return detail::combine_params(*a, *b, true);
}

// One halving: legs u, v of the hypotenuse-1 triangle whose doubled
// parameter is T, and its primitive parameter.
struct Halving {
  Rat u, v;
  Param t;
};

// Inverts the doubling construction. Exists exactly when 1-T and 1+T are
// both rational squares (with nonnegative roots r, s): then u = (r+s)/2,
// v = (s-r)/2 and 2uv = T. Nothing signals the descent obstruction, not a
// failure.
inline std::optional<Halving> halve_param(const CongruentParam& p) {
  Rat T = p.t.value();
  auto r = rational_sqrt(1 - T);
  if (!r) return std::nullopt;
  auto s = rational_sqrt(1 + T);
  if (!s) return std::nullopt;
  Rat u = (*r + *s) / 2, v = (*s - *r) / 2;
  if (2 * u * v != T) throw std::logic_error("halve_param: leg product mismatch");
  return Halving{u, v, param_from_triangle(Triangle(u, v, 1))};
}

// The doubling chain [t, 2t, 4t, ...] with k entries, input included.
inline std::vector<CongruentParam> iterate_double(const CongruentParam& p,
                                                  unsigned k) {
  std::vector<CongruentParam> out;
  out.reserve(k);
  if (k == 0) return out;
  out.push_back(p);
  while (out.size() < k) out.push_back(double_param(out.back()));
  return out;
}

}  // namespace congruo
