#pragma once

#include "jobmatch/core.hpp"
#include "jobmatch/daa.hpp"

namespace jobmatch {

struct MmdaaConfig {
    int max_rounds = 5;  // must be >= 1
};

/// Iterated deferred acceptance: each round runs the DAA on the residual
/// tables, then removes every matched pair from both sides (symmetrically);
/// unmatched entries persist into later rounds. Rounds stop at max_rounds or
/// as soon as no mutually-listed residual pair remains (after which no round
/// could produce a match).
///
/// Every agent participates in round 1. From round 2 on, an agent whose
/// residual row emptied is departed: its match row simply ends, and it is
/// excluded from later participant counts. An agent that participates but
/// receives no partner holds a kNone cell (a withholding). All cells carry
/// provenance Stated.
MultiMatching normal_mmdaa(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                           const MmdaaConfig& cfg);

}  // namespace jobmatch
