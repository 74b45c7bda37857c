#pragma once

#include <stdexcept>

namespace congruo {

// Malformed textual input (distinct from semantic domain errors so that
// callers can report usage problems separately).
struct parse_error : std::domain_error {
  using std::domain_error::domain_error;
};

// The trial-division bound was exhausted before the square class of a value
// could be certified; raised instead of returning a possibly wrong class.
struct incomplete_factorization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A reduction step found no representative whose class image matches the
// target's; the representative set does not cover the required coset.
struct missing_coset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The result collapsed to a torsion/degenerate configuration that yields no
// triangle.
struct degenerate_result : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The input fails a hypothesis the operation requires.
struct hypothesis_violated : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace congruo
