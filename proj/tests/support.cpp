#include "support.hpp"

#include <map>
#include <set>

namespace testsupport {

CongruentParam member(const char* t, const char* area) {
  auto got = membership(Rat::parse(t), Rat::parse(area));
  if (!got) throw std::logic_error("test fixture value is not a member");
  return *got;
}

std::vector<CongruentParam> member_pool(const Rat& area, std::size_t want,
                                        const Int& seed_bound,
                                        std::size_t digit_cap) {
  std::vector<CongruentParam> pool;
  std::set<Param> seen;
  auto push = [&](const CongruentParam& p) {
    if (mpz_sizeinbase(p.t.n().get_mpz_t(), 10) > digit_cap) return;
    if (!seen.insert(p.t).second) return;
    pool.push_back(p);
  };
  for (const auto& s : search_params(area, seed_bound)) push(s);
  // Breadth-first closure walk; degenerate pairs are skipped, not errors.
  for (std::size_t i = 0; i < pool.size() && pool.size() < want; ++i) {
    push(double_param(pool[i]));
    for (std::size_t j = 0; j <= i && pool.size() < want; ++j) {
      for (bool subtract : {false, true}) {
        try {
          auto r = subtract ? sub_params(pool[i], pool[j])
                            : add_params(pool[i], pool[j]);
          if (r) push(*r);
        } catch (const degenerate_result&) {
        }
      }
    }
  }
  return pool;
}

std::vector<CongruentParam> mixed_pool(std::size_t want_per_area) {
  std::vector<CongruentParam> out;
  for (int a : {5, 6, 7, 14, 15, 21, 34}) {
    auto part = member_pool(Rat(a), want_per_area);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

const std::vector<CongruentParam>& shared_pool(int area) {
  static std::map<int, std::vector<CongruentParam>> pools;
  auto it = pools.find(area);
  if (it == pools.end())
    it = pools.emplace(area, member_pool(Rat(area), 120)).first;
  return it->second;
}

const std::vector<CongruentParam>& shared_mixed_pool() {
  static const std::vector<CongruentParam> pool = mixed_pool(32);
  return pool;
}

bool same_triangle(const Triangle& a, const Triangle& b) {
  if (a.z() != b.z()) return false;
  if (a.x() == b.x() && a.y() == b.y()) return true;
  return a.x() == b.y() && a.y() == b.x();
}

}  // namespace testsupport
