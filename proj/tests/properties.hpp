#pragma once

#include <cstdint>
#include <string>

namespace lw::props {

struct Outcome {
  int cases = 0;
  int failures = 0;
  std::string first;  // description of the first failing case
  bool ok() const { return failures == 0 && cases > 0; }
};

// associativity, commutativity, distributivity, inverse and square root on random truncated series
Outcome ring_laws(int cases, std::uint32_t seed);
// [x^>]f + [x^0]f + [x^<]f = f, and the non-negative and <= -m parts
Outcome partition_identity(int cases, std::uint32_t seed);
// simple, value-at and double pole parts against direct geometric expansion
Outcome pole_part_identities(int cases, std::uint32_t seed);
// antisymmetric and symmetric splits recompose exactly
Outcome multiplicative_split_recomposition(int cases, std::uint32_t seed);

}  // namespace lw::props
