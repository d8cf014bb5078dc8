#pragma once

#include <cstdint>
#include <random>

#include "brdkit/casefile.hpp"

namespace oracle {

struct RandomCaseOptions {
  /// Bound on base atoms plus label atoms, so the brute-force table stays small.
  int max_total_atoms = 12;
  /// Allow suspended-set entries that remove default labels.
  bool allow_unsuspended_labels = true;
};

/// A random case that passes validate_case. Deterministic in the seed.
brdkit::CaseModel random_case(std::uint64_t seed, const RandomCaseOptions& options = {});

}  // namespace oracle
