#pragma once

#include <cstddef>
#include <vector>

#include "congruo/congruo.hpp"

namespace testsupport {

using namespace congruo;

// Certified member from text, for pinned-value tests.
CongruentParam member(const char* t, const char* area);

// Deterministic pool of distinct family members: search seeds below
// seed_bound expanded by double/add/sub with a denominator digit cap.
std::vector<CongruentParam> member_pool(const Rat& area, std::size_t want,
                                        const Int& seed_bound = Int(600),
                                        std::size_t digit_cap = 160);

// Concatenated pools over a fixed list of small congruent areas.
std::vector<CongruentParam> mixed_pool(std::size_t want_per_area);

// Process-lifetime cached pools, shared across test cases.
const std::vector<CongruentParam>& shared_pool(int area);
const std::vector<CongruentParam>& shared_mixed_pool();

// Triangle equality up to the order of the two legs.
bool same_triangle(const Triangle& a, const Triangle& b);

}  // namespace testsupport
