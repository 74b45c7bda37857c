#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "congruo/construction.hpp"
#include "congruo/errors.hpp"
#include "congruo/square_class.hpp"

namespace congruo {

// Image of a parameter under t |-> (class(1-t), class(1+t)), a homomorphism
// from the triangle calculus into the square-class group squared. Doubles
// land on the identity image.
struct WImage {
  SquareClass c1, c2;

  bool is_identity() const { return c1.is_identity() && c2.is_identity(); }
  static WImage identity() { return {}; }

  friend bool operator==(const WImage& a, const WImage& b) {
    return a.c1 == b.c1 && a.c2 == b.c2;
  }
  friend bool operator<(const WImage& a, const WImage& b) {
    if (!(a.c1 == b.c1)) return a.c1 < b.c1;
    return a.c2 < b.c2;
  }
  friend std::ostream& operator<<(std::ostream& os, const WImage& w) {
    return os << '(' << w.c1 << ',' << w.c2 << ')';
  }
};

inline WImage class_mul(const WImage& a, const WImage& b) {
  return {class_mul(a.c1, b.c1), class_mul(a.c2, b.c2)};
}

inline WImage w_map(const Rat& t, unsigned long bound = kDefaultFactorBound) {
  if (t.sign() <= 0 || t >= 1)
    throw std::domain_error("w_map: requires 0 < t < 1");
  return {squarefree_class(1 - t, bound), squarefree_class(1 + t, bound)};
}

inline WImage w_map(const ParamOrIdentity& p,
                    unsigned long bound = kDefaultFactorBound) {
  if (p.is_identity()) return WImage::identity();
  return w_map(p.param().value(), bound);
}

namespace detail {

// Distinct prime factors; cofactors beyond the trial bound are accepted when
// they are certifiably prime or perfect powers of discoverable primes.
inline void distinct_primes(const Int& n, unsigned long bound,
                            std::set<Int>& out) {
  Int c = n;
  auto primes = primes_up_to(bound);
  for (unsigned long p : *primes) {
    if (Int(p) * p > c) break;
    if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
    out.insert(Int(p));
    do mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
    while (mpz_divisible_ui_p(c.get_mpz_t(), p));
  }
  if (c == 1) return;
  if (Int(bound) * bound > c || mpz_probab_prime_p(c.get_mpz_t(), 40) > 0) {
    out.insert(c);
    return;
  }
  if (mpz_perfect_square_p(c.get_mpz_t())) {
    distinct_primes(isqrt(c), bound, out);
    return;
  }
  throw incomplete_factorization("distinct_primes: cannot factor cofactor " +
                                 c.get_str() + " within bound " +
                                 std::to_string(bound));
}

}  // namespace detail

// Candidate class images for members of the area-A family: pairs
// (class(bd), class(bc)) over squarefree pairwise-coprime positive b, c, d
// with bcd | A. Every realized image lies among these. Sorted, no
// duplicates.
inline std::vector<WImage> coset_candidates(
    const Int& area, unsigned long bound = kDefaultFactorBound) {
  if (area <= 0)
    throw std::domain_error("coset_candidates: area must be a positive integer");
  std::set<Int> primes;
  detail::distinct_primes(area, bound, primes);
  std::vector<Int> ps(primes.begin(), primes.end());
  std::set<WImage> images;
  // Assign each prime of A to exactly one of b, c, d, or none.
  std::vector<int> assign(ps.size(), 0);
  while (true) {
    Int b = 1, c = 1, d = 1;
    for (size_t i = 0; i < ps.size(); ++i) {
      if (assign[i] == 1) b *= ps[i];
      else if (assign[i] == 2) c *= ps[i];
      else if (assign[i] == 3) d *= ps[i];
    }
    images.insert(WImage{SquareClass{1, Int(b * d)}, SquareClass{1, Int(b * c)}});
    size_t i = 0;
    for (; i < ps.size(); ++i) {
      if (++assign[i] < 4) break;
      assign[i] = 0;
    }
    if (i == ps.size()) break;
  }
  return std::vector<WImage>(images.begin(), images.end());
}

// All family members with denominator at most denom_bound, in ascending
// (denominator, numerator) order. Candidates are filtered by an integer
// perfect-square test before certificates are extracted.
inline std::vector<CongruentParam> search_params(const Rat& area,
                                                 const Int& denom_bound) {
  if (area.sign() <= 0)
    throw std::domain_error("search_params: area must be positive");
  std::vector<CongruentParam> out;
  for (Int n = 2; n <= denom_bound; n += 1) {
    for (Int m = 1; m < n; m += 1) {
      if (mpz_even_p(Int(m + n).get_mpz_t())) continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
      if (g != 1) continue;
      // t(1-t^2)/A is a square iff m(n^2-m^2) n A_num A_den is.
      Int probe = m * (n - m) * (n + m) * n * area.num() * area.den();
      if (!mpz_perfect_square_p(probe.get_mpz_t())) continue;
      auto member = membership(Rat(m, n), area);
      if (!member) throw std::logic_error("search_params: probe disagreed with membership");
      out.push_back(*member);
    }
  }
  return out;
}

// The identity plus certified members with pairwise distinct class images;
// coset representatives for the reduction.
class RepresentativeSet {
 public:
  RepresentativeSet(Rat area, std::vector<CongruentParam> members,
                    unsigned long bound = kDefaultFactorBound)
      : area_(std::move(area)) {
    if (area_.sign() <= 0)
      throw std::domain_error("RepresentativeSet: area must be positive");
    for (auto& m : members) {
      if (m.area != area_)
        throw std::domain_error("RepresentativeSet: member of a different area");
      WImage img = w_map(m.t.value(), bound);
      if (img.is_identity())
        throw std::domain_error(
            "RepresentativeSet: member duplicates the identity's class image");
      for (const auto& [other, oimg] : members_)
        if (oimg == img)
          throw std::domain_error("RepresentativeSet: duplicate class image");
      members_.emplace_back(std::move(m), img);
    }
  }

  // Builds representatives from a search: the first (smallest-denominator)
  // member of each nonidentity class image found below the bound.
  static RepresentativeSet from_search(const Rat& area, const Int& denom_bound,
                                       unsigned long bound = kDefaultFactorBound) {
    std::vector<CongruentParam> keep;
    std::set<WImage> seen;
    for (auto& m : search_params(area, denom_bound)) {
      WImage img = w_map(m.t.value(), bound);
      if (img.is_identity() || !seen.insert(img).second) continue;
      keep.push_back(std::move(m));
    }
    return RepresentativeSet(area, std::move(keep), bound);
  }

  const Rat& area() const { return area_; }

  std::vector<CongruentParam> members() const {
    std::vector<CongruentParam> out;
    for (const auto& [m, img] : members_) out.push_back(m);
    return out;
  }

  // Largest denominator appearing in the set (the identity counts as 1).
  Int max_denominator() const {
    Int c = 1;
    for (const auto& [m, img] : members_)
      if (m.t.n() > c) c = m.t.n();
    return c;
  }

  // Representative whose class image equals img: the identity for the
  // identity image, a member otherwise; nothing when no member matches.
  std::optional<MemberOrIdentity> match(const WImage& img) const {
    if (img.is_identity()) return MemberOrIdentity{};
    for (const auto& [m, mimg] : members_)
      if (mimg == img) return MemberOrIdentity{m};
    return std::nullopt;
  }

 private:
  Rat area_;
  std::vector<std::pair<CongruentParam, WImage>> members_;
};

// One reduction step: adding `rep` to the running parameter produced a
// doubled parameter whose half is `halved`.
struct ReductionStep {
  MemberOrIdentity rep;
  CongruentParam halved;
};

// Witness that target = 2^K * reduced + sum of 2^j * rep_j in the calculus:
// replaying add_params against each step's representative and halving
// reproduces the chain.
struct Decomposition {
  CongruentParam target;
  std::vector<ReductionStep> chain;
  CongruentParam reduced;
};

// Repeatedly add the matching representative and halve until the denominator
// drops below twice the set's largest denominator. Each step strictly
// decreases the denominator, so this terminates.
inline Decomposition reduce(const CongruentParam& target,
                            const RepresentativeSet& reps,
                            unsigned long bound = kDefaultFactorBound) {
  if (target.area != reps.area())
    throw std::domain_error("reduce: target and representatives disagree on area");
  const Int limit = 2 * reps.max_denominator();
  Decomposition out{target, {}, target};
  CongruentParam cur = target;
  while (cur.t.n() >= limit) {
    WImage img = w_map(cur.t.value(), bound);
    auto rep = reps.match(img);
    if (!rep) {
      std::ostringstream msg;
      msg << "reduce: no representative for class image " << img;
      throw missing_coset(msg.str());
    }
    MemberOrIdentity sum = add_params(cur, *rep);
    if (!sum)
      throw std::logic_error("reduce: sum with representative collapsed to identity");
    auto half = halve_param(*sum);
    if (!half)
      throw std::logic_error(
          "reduce: halving failed although the class image was matched");
    CongruentParam next = certify(half->t, target.area);
    if (next.t.n() >= cur.t.n())
      throw std::logic_error("reduce: denominator failed to decrease");
    out.chain.push_back(ReductionStep{*rep, next});
    cur = std::move(next);
  }
  out.reduced = cur;
  return out;
}

// Finite generation: with representatives of every realized class image in
// hand, every member reduces to one with denominator below twice the set's
// largest; those members generate, and this returns all of them.
inline std::vector<CongruentParam> generators(const Rat& area,
                                              const RepresentativeSet& reps) {
  return search_params(area, Int(2 * reps.max_denominator() - 1));
}

}  // namespace congruo
