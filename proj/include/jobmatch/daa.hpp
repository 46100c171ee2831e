#pragma once

#include <utility>
#include <vector>

#include "jobmatch/core.hpp"

namespace jobmatch {

struct DaaConfig {
    /// Safety bound on total proposals. 0 derives the McVitie-Wilson bound
    /// automatically: the sum of candidate row lengths, since each candidate
    /// proposes to each listed employer at most once.
    long long proposal_cap = 0;
};

/// Candidate-proposing deferred acceptance over sparse, unequal preference
/// sets. A pair may form only under mutual acceptability: an employer rejects
/// any proposal from a candidate absent from its own row. The result is
/// one-to-one, blocking-pair-free, and candidate-optimal among stable
/// matchings restricted to mutually acceptable pairs.
///
/// Free candidates are processed in ascending agent index; the outcome is
/// order-independent but intermediate traces are not.
Matching deferred_acceptance(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                             const DaaConfig& cfg = {});

/// Exactly the pairs (c, e) where each lists the other and each is either
/// unmatched or strictly prefers the other to its assigned partner.
/// Sorted by (candidate, employer).
std::vector<std::pair<int, int>> find_blocking_pairs(const Matching& matching,
                                                     const PreferenceTable& cand_prefs,
                                                     const PreferenceTable& emp_prefs);

}  // namespace jobmatch
