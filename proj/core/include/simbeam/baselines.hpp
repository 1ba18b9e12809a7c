// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "simbeam/solver.hpp"

namespace simbeam {

/// One gradient_ascent run on the phases with every user held at budget / K. From the same
/// initial phases this is exactly the first round of alternating_optimize.
SolveResult uniform_power_scheme(const PropagationStack& stack, const ChannelSet& channels,
                                 double budget_mw, const OptimizerParams& params,
                                 const PhaseState& initial);

/// Random-codebook search: `size` complete SIM configurations, each drawn uniformly from its
/// own seeded stream and paired with damped water-filling powers.
struct CodebookSpec {
  int size = 1;
  std::uint64_t seed = 0;
};

struct CodebookResult {
  SolveResult best;
  int best_index = 0;
  std::vector<double> candidate_rates;
};

/// Highest sum rate wins; ties go to the lowest candidate index.
CodebookResult codebook_scheme(const PropagationStack& stack, const ChannelSet& channels,
                               double budget_mw, const OptimizerParams& params,
                               const CodebookSpec& spec);

/// Candidate `index` of the codebook described by `spec`.
PhaseState codebook_candidate(const PropagationStack& stack, const CodebookSpec& spec, int index);

}  // namespace simbeam
