#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "d4tuples/integer.hpp"
#include "d4tuples/real.hpp"

namespace d4 {

/// Certified continued-fraction expansion of an enclosed real. Partial
/// quotients are exact: each one is the common floor of both interval
/// endpoints, so recomputation at any higher precision yields the same
/// prefix. Convergents (p_k, q_k) follow the standard recurrence
/// p_k = a_k p_{k-1} + p_{k-2}.
struct ContinuedFraction {
  std::vector<Integer> partial_quotients;
  std::vector<std::pair<Integer, Integer>> convergents;
};

/// Expands as many quotients as the enclosure certifies, up to max_depth.
/// Never throws for depth reasons; the result may be shorter than max_depth.
ContinuedFraction continued_fraction_prefix(const CertifiedReal& x,
                                            std::size_t max_depth);

/// Exactly `depth` certified quotients. Throws PrecisionError naming the
/// first index that could not be certified at the input's precision.
ContinuedFraction continued_fraction_of(const CertifiedReal& x,
                                        std::size_t depth);

}  // namespace d4
