#pragma once

#include <unordered_set>
#include <vector>

#include "jobmatch/core.hpp"

namespace jobmatch {

/// Per-round set of counterpart IDs already assigned on the side being
/// filled. A counterpart may appear at most once per round.
class RoundOccupancy {
public:
    explicit RoundOccupancy(int round_count) : taken_(round_count) {}

    int round_count() const { return static_cast<int>(taken_.size()); }
    bool taken(int round, int counterpart) const {
        return taken_[round].contains(counterpart);
    }
    void insert(int round, int counterpart);  // throws on a duplicate

private:
    std::vector<std::unordered_set<int>> taken_;
};

/// Replaces each withheld (kNone) cell of one agent's Normal match sequence
/// with the earliest LMF match that (a) does not already appear anywhere in
/// the agent's partially-filled sequence and (b) is not taken by another
/// agent in that round. Filled cells carry provenance Inferred and are
/// recorded in `occ`; a cell with no legal substitute stays kNone. Departed
/// rounds (positions past the end of the Normal sequence) are never filled.
std::vector<MatchCell> fill_no_matches(const std::vector<MatchCell>& normal_row,
                                       const std::vector<MatchCell>& lmf_row,
                                       RoundOccupancy& occ);

/// Overlays the Normal MMDAA output with LMF-MMDAA substitutes, filling the
/// candidate side and then the employer side independently, agents in
/// ascending index order. Each side's occupancy is seeded with that side's
/// Normal assignments. The two output tables need not describe one mutually
/// consistent bipartite matching; each is one-to-one per round on its own
/// side.
MultiMatching mixed_mmdaa(const MatchTable& normal_cand, const MatchTable& lmf_cand,
                          const MatchTable& normal_emp, const MatchTable& lmf_emp);

}  // namespace jobmatch
