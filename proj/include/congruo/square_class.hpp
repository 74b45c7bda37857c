#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "congruo/errors.hpp"
#include "congruo/rational.hpp"

namespace congruo {

// Default trial-division bound used when certifying square classes.
inline constexpr unsigned long kDefaultFactorBound = 1'000'000;

// Class of a nonzero rational modulo nonzero rational squares, represented by
// its sign and the positive squarefree part.
struct SquareClass {
  int sign = 1;
  Int sf = 1;

  bool is_identity() const { return sign > 0 && sf == 1; }

  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.sign == b.sign && a.sf == b.sf;
  }
  friend bool operator<(const SquareClass& a, const SquareClass& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    return a.sf < b.sf;
  }
  friend std::ostream& operator<<(std::ostream& os, const SquareClass& c) {
    if (c.sign < 0) os << '-';
    return os << c.sf;
  }
};

namespace detail {

// Primes up to `bound`, cached per bound behind a mutex so concurrent callers
// never observe a vector being grown.
inline std::shared_ptr<const std::vector<unsigned long>> primes_up_to(
    unsigned long bound) {
  static std::mutex mu;
  static std::map<unsigned long,
                  std::shared_ptr<const std::vector<unsigned long>>>
      cache;
  std::scoped_lock lk(mu);
  if (auto it = cache.find(bound); it != cache.end()) return it->second;
  std::vector<bool> composite(bound + 1, false);
  auto primes = std::make_shared<std::vector<unsigned long>>();
  for (unsigned long p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    primes->push_back(p);
    for (unsigned long q = p * p; q <= bound; q += p) composite[q] = true;
  }
  cache.emplace(bound, primes);
  return primes;
}

}  // namespace detail

// Positive squarefree part of a positive integer: the product of the primes
// dividing n to an odd power. Trial division up to `bound`; the remaining
// cofactor must then be 1, a perfect square, or certifiably prime, otherwise
// the class cannot be certified and incomplete_factorization is raised.
inline Int squarefree_part(const Int& n,
                           unsigned long bound = kDefaultFactorBound) {
  if (n <= 0) throw std::domain_error("squarefree_part: input must be positive");
  if (bound < 2) throw std::domain_error("squarefree_part: bound too small");
  Int result = 1;
  Int c = n;
  auto primes = detail::primes_up_to(bound);
  for (unsigned long p : *primes) {
    if (Int(p) * p > c) break;
    if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
    unsigned long e = 0;
    do {
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
      ++e;
    } while (mpz_divisible_ui_p(c.get_mpz_t(), p));
    if (e % 2 == 1) result *= p;
  }
  if (c == 1) return result;
  // No prime factor of c is <= min(bound, sqrt(c)) at this point.
  if (mpz_perfect_square_p(c.get_mpz_t())) return result;
  if (Int(bound) * bound > c || mpz_probab_prime_p(c.get_mpz_t(), 40) > 0)
    return result * c;
  throw incomplete_factorization(
      "squarefree_part: cofactor " + c.get_str() +
      " is neither prime nor square within bound " + std::to_string(bound));
}

// Square class of a nonzero rational. Numerator and denominator are coprime,
// so their squarefree parts multiply without overlap.
inline SquareClass squarefree_class(const Rat& q,
                                    unsigned long bound = kDefaultFactorBound) {
  if (q.is_zero())
    throw std::domain_error("squarefree_class: zero has no square class");
  Int num = q.num();
  if (num < 0) num = -num;
  return SquareClass{q.sign(),
                     Int(squarefree_part(num, bound) *
                         squarefree_part(q.den(), bound))};
}

// Product in the class group. Both inputs are squarefree, so the squarefree
// part of the product is ab / gcd(a,b)^2; no factorization is needed.
inline SquareClass class_mul(const SquareClass& a, const SquareClass& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.sf.get_mpz_t(), b.sf.get_mpz_t());
  return SquareClass{a.sign * b.sign, Int((a.sf / g) * (b.sf / g))};
}

}  // namespace congruo
