#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "congruo/congruo.hpp"
#include "support.hpp"

using namespace congruo;
using testsupport::member;
using testsupport::shared_mixed_pool;
using testsupport::shared_pool;

namespace {

WImage wi(long c1, long c2) {
  return WImage{SquareClass{1, Int(c1)}, SquareClass{1, Int(c2)}};
}

std::string printed(const WImage& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

// Class image of an identity-aware calculus element.
WImage wimg(const MemberOrIdentity& m) {
  if (!m) return WImage::identity();
  return w_map(m->t.value());
}

// Union of the shared pools, the sampling base for the property suites.
std::vector<CongruentParam> pooled_members() {
  std::vector<CongruentParam> out = shared_mixed_pool();
  for (int a : {6, 34})
    for (const auto& m : shared_pool(a)) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("square classes: squarefree parts, classes, and products", "[descent]") {
  REQUIRE(squarefree_part(Int(1)) == 1);
  REQUIRE(squarefree_part(Int(4)) == 1);
  REQUIRE(squarefree_part(Int(12)) == 3);
  REQUIRE(squarefree_part(Int(49)) == 1);
  REQUIRE(squarefree_part(Int(720)) == 5);
  REQUIRE(squarefree_part(Int(2209)) == 1);   // 47^2
  REQUIRE(squarefree_part(Int(2738)) == 2);   // 2 * 37^2
  REQUIRE(squarefree_part(Int(3267)) == 3);   // 3 * 33^2
  // A cofactor above the trial bound is accepted when certifiably prime.
  REQUIRE(squarefree_part(Int(1000003), 1000) == 1000003);
  // ... or a perfect square.
  REQUIRE(squarefree_part(Int(Int(1000003) * 1000003), 1000) == 1);
  // A composite non-square cofactor beyond the bound cannot be certified.
  REQUIRE_THROWS_AS(squarefree_part(Int(101 * 103), 100), incomplete_factorization);
  REQUIRE(squarefree_part(Int(101 * 103)) == 101 * 103);
  REQUIRE_THROWS_AS(squarefree_part(Int(0)), std::domain_error);
  REQUIRE_THROWS_AS(squarefree_part(Int(-5)), std::domain_error);
  REQUIRE_THROWS_AS(squarefree_part(Int(6), 1), std::domain_error);

  REQUIRE(squarefree_class(Rat(8, 9)) == SquareClass{1, Int(2)});
  REQUIRE(squarefree_class(Rat(-8, 9)) == SquareClass{-1, Int(2)});
  REQUIRE(squarefree_class(Rat(49, 25)).is_identity());
  REQUIRE(squarefree_class(Rat(3, 2)) == SquareClass{1, Int(6)});
  REQUIRE_THROWS_AS(squarefree_class(Rat(0)), std::domain_error);

  // Squarefree representatives multiply with the shared square stripped out.
  REQUIRE(class_mul(SquareClass{1, Int(2)}, SquareClass{1, Int(6)}) ==
          SquareClass{1, Int(3)});
  REQUIRE(class_mul(SquareClass{-1, Int(2)}, SquareClass{-1, Int(2)}).is_identity());
  REQUIRE(class_mul(SquareClass{1, Int(15)}, SquareClass{1, Int(21)}) ==
          SquareClass{1, Int(35)});

  std::ostringstream os;
  os << SquareClass{-1, Int(2)};
  REQUIRE(os.str() == "-2");
  REQUIRE(printed(wi(2, 6)) == "(2,6)");
  REQUIRE(printed(WImage::identity()) == "(1,1)");
}

TEST_CASE("parameter class images pinned values", "[descent]") {
  REQUIRE(w_map(Rat(1, 2)) == wi(2, 6));
  REQUIRE(w_map(Rat(24, 25)) == WImage::identity());
  REQUIRE(w_map(Rat(4, 5)) == wi(5, 5));
  REQUIRE(w_map(Rat(8, 9)) == wi(1, 17));
  REQUIRE(w_map(Rat(8, 17)) == wi(17, 17));
  REQUIRE(w_map(Rat(32, 49)) == wi(17, 1));
  REQUIRE(w_map(Rat(9, 16)) == wi(7, 1));
  REQUIRE(w_map(Rat(1, 8)) == wi(14, 2));
  REQUIRE(w_map(Rat(1, 4)) == wi(3, 5));
  REQUIRE(w_map(Rat(3, 4)) == wi(1, 7));
  // The difference member of the worked area-6 chain sits in the same coset
  // as 1/2, which is exactly why reduction matches them.
  REQUIRE(w_map(Rat(529, 2738)) == w_map(Rat(1, 2)));

  REQUIRE(w_map(ParamOrIdentity::identity()) == WImage::identity());
  REQUIRE(w_map(ParamOrIdentity(Param(1, 2))) == wi(2, 6));

  REQUIRE_THROWS_AS(w_map(Rat(0)), std::domain_error);
  REQUIRE_THROWS_AS(w_map(Rat(1)), std::domain_error);
  REQUIRE_THROWS_AS(w_map(Rat(7, 5)), std::domain_error);
  REQUIRE_THROWS_AS(w_map(Rat(-1, 2)), std::domain_error);

  // Images multiply componentwise.
  REQUIRE(class_mul(wi(2, 6), wi(2, 6)) == WImage::identity());
  REQUIRE(class_mul(wi(2, 6), wi(1, 17)) == wi(2, 102));
  REQUIRE(class_mul(wi(17, 17), wi(17, 1)) == wi(1, 17));
}

TEST_CASE("candidate class images for small areas", "[descent]") {
  std::vector<WImage> c6 = coset_candidates(Int(6));
  REQUIRE(c6.size() == 16);
  REQUIRE(std::is_sorted(c6.begin(), c6.end()));
  REQUIRE(std::adjacent_find(c6.begin(), c6.end()) == c6.end());
  auto contains = [](const std::vector<WImage>& v, const WImage& w) {
    return std::find(v.begin(), v.end(), w) != v.end();
  };
  REQUIRE(contains(c6, WImage::identity()));
  REQUIRE(contains(c6, wi(2, 6)));
  REQUIRE(contains(c6, wi(3, 6)));
  REQUIRE(contains(c6, wi(6, 3)));

  std::vector<WImage> c34 = coset_candidates(Int(34));
  REQUIRE(c34.size() == 16);
  REQUIRE(contains(c34, WImage::identity()));
  REQUIRE(contains(c34, wi(1, 17)));
  REQUIRE(contains(c34, wi(17, 17)));
  REQUIRE(contains(c34, wi(17, 1)));

  REQUIRE(coset_candidates(Int(1)) == std::vector<WImage>{WImage::identity()});
  REQUIRE(coset_candidates(Int(2)) ==
          std::vector<WImage>({wi(1, 1), wi(1, 2), wi(2, 1), wi(2, 2)}));

  // A perfect-power area reduces to the classes of its radical.
  REQUIRE(coset_candidates(Int(49), 3) ==
          std::vector<WImage>({wi(1, 1), wi(1, 7), wi(7, 1), wi(7, 7)}));

  // Four primes give 4^4 distinct assignments.
  REQUIRE(coset_candidates(Int(210)).size() == 256);

  REQUIRE_THROWS_AS(coset_candidates(Int(0)), std::domain_error);
  REQUIRE_THROWS_AS(coset_candidates(Int(-4)), std::domain_error);
  REQUIRE_THROWS_AS(coset_candidates(Int(101 * 103), 100), incomplete_factorization);
}

TEST_CASE("parameter search pinned results", "[descent]") {
  std::vector<CongruentParam> s6 = search_params(Rat(6), Int(100));
  REQUIRE(s6.size() == 2);
  REQUIRE(s6[0].t == Param(1, 2));
  REQUIRE(s6[0].cert == Rat(1, 4));
  REQUIRE(s6[1].t == Param(24, 25));
  REQUIRE(s6[1].cert == Rat(14, 125));

  std::vector<CongruentParam> s34 = search_params(Rat(34), Int(100));
  REQUIRE(s34.size() == 3);
  REQUIRE(s34[0].t == Param(8, 9));
  REQUIRE(s34[0].cert == Rat(2, 27));
  REQUIRE(s34[1].t == Param(8, 17));
  REQUIRE(s34[1].cert == Rat(30, 289));
  REQUIRE(s34[2].t == Param(32, 49));
  REQUIRE(s34[2].cert == Rat(36, 343));

  std::vector<CongruentParam> s5 = search_params(Rat(5), Int(100));
  REQUIRE(s5.size() == 1);
  REQUIRE(s5[0].t == Param(4, 5));
  REQUIRE(s5[0].cert == Rat(6, 25));

  // Square-similar areas define the same family with rescaled certificates.
  std::vector<CongruentParam> sq6 = search_params(Rat(6, 25), Int(100));
  REQUIRE(sq6.size() == 2);
  REQUIRE(sq6[0].t == Param(1, 2));
  REQUIRE(sq6[0].cert == Rat(5, 4));
  REQUIRE(sq6[1].t == Param(24, 25));
  REQUIRE(sq6[1].cert == Rat(14, 25));

  // Non-congruent areas have no members at all.
  REQUIRE(search_params(Rat(1), Int(200)).empty());
  REQUIRE(search_params(Rat(2), Int(200)).empty());
  REQUIRE(search_params(Rat(3), Int(200)).empty());

  REQUIRE(search_params(Rat(6), Int(1)).empty());
  REQUIRE_THROWS_AS(search_params(Rat(0), Int(10)), std::domain_error);
  REQUIRE_THROWS_AS(search_params(Rat(-6), Int(10)), std::domain_error);
}

TEST_CASE("representative sets pinned behaviour", "[descent]") {
  RepresentativeSet r6 = RepresentativeSet::from_search(Rat(6), Int(100));
  REQUIRE(r6.area() == Rat(6));
  REQUIRE(r6.members().size() == 1);
  REQUIRE(r6.members()[0].t == Param(1, 2));
  REQUIRE(r6.max_denominator() == 2);
  // The identity image matches the identity element ...
  auto id_match = r6.match(WImage::identity());
  REQUIRE(id_match.has_value());
  REQUIRE_FALSE(id_match->has_value());
  // ... a represented image matches its member ...
  auto rep_match = r6.match(wi(2, 6));
  REQUIRE(rep_match.has_value());
  REQUIRE((*rep_match)->t == Param(1, 2));
  // ... and an unrepresented image matches nothing.
  REQUIRE_FALSE(r6.match(wi(17, 1)).has_value());

  RepresentativeSet r34 = RepresentativeSet::from_search(Rat(34), Int(100));
  REQUIRE(r34.members().size() == 3);
  REQUIRE(r34.max_denominator() == 49);
  auto m = r34.match(wi(17, 1));
  REQUIRE(m.has_value());
  REQUIRE((*m)->t == Param(32, 49));

  RepresentativeSet r5 = RepresentativeSet::from_search(Rat(5), Int(100));
  REQUIRE(r5.members().size() == 1);
  REQUIRE(r5.max_denominator() == 5);

  // An empty set is legal and matches only the identity image.
  RepresentativeSet empty(Rat(1), {});
  REQUIRE(empty.members().empty());
  REQUIRE(empty.max_denominator() == 1);
  REQUIRE(empty.match(WImage::identity()).has_value());
  REQUIRE_FALSE(empty.match(wi(1, 2)).has_value());

  // Members in the same coset cannot both be representatives.
  REQUIRE_THROWS_AS(
      RepresentativeSet(Rat(6), {member("1/2", "6"), member("529/2738", "6")}),
      std::domain_error);
  // Identity-image members are excluded: they reduce by plain halving.
  REQUIRE_THROWS_AS(RepresentativeSet(Rat(6), {member("24/25", "6")}),
                    std::domain_error);
  REQUIRE_THROWS_AS(RepresentativeSet(Rat(6), {member("4/5", "5")}),
                    std::domain_error);
  REQUIRE_THROWS_AS(RepresentativeSet(Rat(0), {}), std::domain_error);
}

TEST_CASE("reduction pinned chains", "[descent]") {
  RepresentativeSet reps = RepresentativeSet::from_search(Rat(6), Int(100));

  // Already below the bound: nothing to do.
  Decomposition d0 = reduce(member("1/2", "6"), reps);
  REQUIRE(d0.chain.empty());
  REQUIRE(d0.reduced.t == Param(1, 2));

  // One halving step, no representative needed.
  Decomposition d1 = reduce(member("24/25", "6"), reps);
  REQUIRE(d1.chain.size() == 1);
  REQUIRE_FALSE(d1.chain[0].rep.has_value());
  REQUIRE(d1.chain[0].halved.t == Param(1, 2));
  REQUIRE(d1.reduced.t == Param(1, 2));

  // Two plain halvings from the twice-doubled parameter.
  Decomposition d2 = reduce(member("117600/1442401", "6"), reps);
  REQUIRE(d2.chain.size() == 2);
  REQUIRE_FALSE(d2.chain[0].rep.has_value());
  REQUIRE(d2.chain[0].halved.t == Param(24, 25));
  REQUIRE_FALSE(d2.chain[1].rep.has_value());
  REQUIRE(d2.chain[1].halved.t == Param(1, 2));
  REQUIRE(d2.reduced.t == Param(1, 2));

  // The worked difference member needs its coset representative first.
  Decomposition d3 = reduce(member("529/2738", "6"), reps);
  REQUIRE_FALSE(d3.chain.empty());
  REQUIRE(d3.chain[0].rep.has_value());
  REQUIRE((*d3.chain[0].rep).t == Param(1, 2));
  REQUIRE(d3.reduced.t == Param(1, 2));
  // Replay: each step's halved parameter doubles back to the recorded sum.
  CongruentParam cur = d3.target;
  for (const ReductionStep& step : d3.chain) {
    MemberOrIdentity sum = add_params(MemberOrIdentity(cur), step.rep);
    REQUIRE(sum.has_value());
    REQUIRE(double_param(step.halved).t == sum->t);
    REQUIRE(step.halved.t.n() < cur.t.n());
    cur = step.halved;
  }
  REQUIRE(cur.t == d3.reduced.t);

  REQUIRE_THROWS_AS(reduce(member("4/5", "5"), reps), std::domain_error);

  // A representative set missing the required coset reports exactly that.
  RepresentativeSet partial(Rat(34), {member("8/9", "34"), member("8/17", "34")});
  REQUIRE_THROWS_AS(reduce(member("32/49", "34"), partial), missing_coset);
}

TEST_CASE("generators pinned results", "[descent]") {
  RepresentativeSet r6 = RepresentativeSet::from_search(Rat(6), Int(100));
  std::vector<CongruentParam> g6 = generators(Rat(6), r6);
  REQUIRE(g6.size() == 1);
  REQUIRE(g6[0].t == Param(1, 2));

  RepresentativeSet r34 = RepresentativeSet::from_search(Rat(34), Int(100));
  std::vector<CongruentParam> g34 = generators(Rat(34), r34);
  REQUIRE(g34.size() == 3);
  REQUIRE(g34[0].t == Param(8, 9));
  REQUIRE(g34[1].t == Param(8, 17));
  REQUIRE(g34[2].t == Param(32, 49));
  // Everything reduces below twice the largest representative denominator.
  for (const auto& g : g34) REQUIRE(g.t.n() < 2 * r34.max_denominator());

  RepresentativeSet r5 = RepresentativeSet::from_search(Rat(5), Int(100));
  std::vector<CongruentParam> g5 = generators(Rat(5), r5);
  REQUIRE(g5.size() == 1);
  REQUIRE(g5[0].t == Param(4, 5));

  // A non-congruent area generates nothing.
  REQUIRE(generators(Rat(1), RepresentativeSet(Rat(1), {})).empty());
}

TEST_CASE("property: the class-image map is a homomorphism on the calculus",
          "[descent][property]") {
  auto run_pairs = [](const std::vector<CongruentParam>& pool, std::size_t cap,
                      int& cases) {
    std::size_t n = pool.size() < cap ? pool.size() : cap;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        WImage w1 = w_map(pool[i].t.value());
        WImage w2 = w_map(pool[j].t.value());
        WImage both = class_mul(w1, w2);
        REQUIRE(wimg(add_params(pool[i], pool[j])) == both);
        // Every class is its own inverse, so differences land there too.
        REQUIRE(wimg(sub_params(pool[i], pool[j])) == both);
        ++cases;
      }
    }
  };

  int cases = 0;
  run_pairs(shared_pool(6), 20, cases);
  run_pairs(shared_pool(34), 8, cases);
  REQUIRE(cases >= 200);

  // Identity operands are absorbed.
  const CongruentParam& p = shared_pool(6).front();
  REQUIRE(wimg(add_params(MemberOrIdentity{}, MemberOrIdentity(p))) ==
          w_map(p.t.value()));
}

TEST_CASE("property: identity class image exactly marks halvability",
          "[descent][property]") {
  int cases = 0, halvable = 0, obstructed = 0;
  for (const CongruentParam& cp : pooled_members()) {
    bool kernel = w_map(cp.t.value()).is_identity();
    bool halves = halve_param(cp).has_value();
    REQUIRE(kernel == halves);
    (halves ? halvable : obstructed) += 1;
    ++cases;
  }
  REQUIRE(cases >= 200);
  // Both sides of the equivalence were exercised.
  REQUIRE(halvable > 0);
  REQUIRE(obstructed > 0);
}

TEST_CASE("property: doubled parameters land on the identity class",
          "[descent][property]") {
  int cases = 0;
  for (const CongruentParam& cp : pooled_members()) {
    CongruentParam d = double_param(cp);
    REQUIRE(w_map(d.t.value()).is_identity());
    REQUIRE(halve_param(d).has_value());
    ++cases;
  }
  REQUIRE(cases >= 200);
}

TEST_CASE("property: realized class images lie among candidates and form a group",
          "[descent][property]") {
  std::map<int, std::set<WImage>> candidates;
  for (int a : {5, 6, 7, 14, 15, 21, 34}) {
    auto v = coset_candidates(Int(a));
    candidates[a] = std::set<WImage>(v.begin(), v.end());
  }

  int cases = 0;
  std::map<int, std::set<WImage>> realized;
  for (const CongruentParam& cp : pooled_members()) {
    REQUIRE(cp.area.is_integer());
    int a = static_cast<int>(cp.area.num().get_si());
    WImage w = w_map(cp.t.value());
    REQUIRE(candidates.at(a).count(w) == 1);
    realized[a].insert(w);
    ++cases;
  }
  REQUIRE(cases >= 200);

  for (auto& [a, images] : realized) {
    images.insert(WImage::identity());
    // Closed under multiplication, hence a subgroup of the candidate box.
    for (const WImage& x : images)
      for (const WImage& y : images) REQUIRE(images.count(class_mul(x, y)) == 1);
    REQUIRE(std::has_single_bit(images.size()));
  }
  // The pools realize the full known subgroups of the worked areas.
  REQUIRE(realized.at(6).size() == 2);
  REQUIRE(realized.at(34).size() == 4);

  // At a search bound that separates the representatives, the realized set is
  // momentarily not closed: completeness of the subgroup depends on the bound.
  std::set<WImage> truncated{WImage::identity()};
  for (const auto& m : search_params(Rat(34), Int(20)))
    truncated.insert(w_map(m.t.value()));
  REQUIRE(truncated.size() == 3);
  REQUIRE(truncated.count(class_mul(wi(1, 17), wi(17, 17))) == 0);
}

TEST_CASE("property: reduction terminates below the bound and replays exactly",
          "[descent][property]") {
  std::map<int, RepresentativeSet> reps;
  reps.emplace(6, RepresentativeSet::from_search(Rat(6), Int(100)));
  reps.emplace(34, RepresentativeSet::from_search(Rat(34), Int(100)));

  int step_cases = 0;
  for (int a : {6, 34}) {
    const RepresentativeSet& r = reps.at(a);
    const Int limit = 2 * r.max_denominator();
    for (const CongruentParam& cp : shared_pool(a)) {
      Decomposition d = reduce(cp, r);
      REQUIRE(d.target.t == cp.t);
      REQUIRE(d.reduced.t.n() < limit);
      CongruentParam cur = d.target;
      for (const ReductionStep& step : d.chain) {
        MemberOrIdentity sum = add_params(MemberOrIdentity(cur), step.rep);
        REQUIRE(sum.has_value());
        REQUIRE(double_param(step.halved).t == sum->t);
        // Strict denominator descent is what forces termination.
        REQUIRE(step.halved.t.n() < cur.t.n());
        cur = step.halved;
        ++step_cases;
      }
      REQUIRE(cur.t == d.reduced.t);
    }
  }
  REQUIRE(step_cases >= 200);
}
