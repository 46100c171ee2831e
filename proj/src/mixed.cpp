#include "jobmatch/mixed.hpp"

#include <stdexcept>
#include <string>

namespace jobmatch {

void RoundOccupancy::insert(int round, int counterpart) {
    if (!taken_[round].insert(counterpart).second) {
        throw std::invalid_argument("RoundOccupancy: counterpart " +
                                    std::to_string(counterpart + 1) +
                                    " already taken in round " + std::to_string(round + 1));
    }
}

std::vector<MatchCell> fill_no_matches(const std::vector<MatchCell>& normal_row,
                                       const std::vector<MatchCell>& lmf_row,
                                       RoundOccupancy& occ) {
    std::vector<MatchCell> filled = normal_row;
    std::unordered_set<int> own;
    for (const MatchCell& cell : filled) {
        if (cell.counterpart != kNone) own.insert(cell.counterpart);
    }
    for (std::size_t round = 0; round < filled.size(); ++round) {
        if (filled[round].counterpart != kNone) continue;
        for (const MatchCell& substitute : lmf_row) {
            int candidate = substitute.counterpart;
            if (candidate == kNone) continue;
            if (own.contains(candidate)) continue;
            if (occ.taken(static_cast<int>(round), candidate)) continue;
            filled[round] = {candidate, Provenance::Inferred};
            own.insert(candidate);
            occ.insert(static_cast<int>(round), candidate);
            break;
        }
    }
    return filled;
}

namespace {

MatchTable fill_side(const MatchTable& normal, const MatchTable& lmf) {
    if (normal.agent_count() != lmf.agent_count() ||
        normal.counterpart_count() != lmf.counterpart_count()) {
        throw std::invalid_argument("mixed_mmdaa: Normal and LMF tables describe different instances");
    }
    RoundOccupancy occ(normal.round_count());
    for (int round = 0; round < normal.round_count(); ++round) {
        for (int agent = 0; agent < normal.agent_count(); ++agent) {
            const MatchCell* cell = normal.cell(agent, round);
            if (cell != nullptr && cell->counterpart != kNone) occ.insert(round, cell->counterpart);
        }
    }
    std::vector<std::vector<MatchCell>> rows(normal.agent_count());
    for (int agent = 0; agent < normal.agent_count(); ++agent) {
        rows[agent] = fill_no_matches(normal.agent_row(agent), lmf.agent_row(agent), occ);
    }
    return MatchTable(normal.side(), normal.counterpart_count(), normal.round_count(),
                      std::move(rows));
}

}  // namespace

MultiMatching mixed_mmdaa(const MatchTable& normal_cand, const MatchTable& lmf_cand,
                          const MatchTable& normal_emp, const MatchTable& lmf_emp) {
    if (normal_cand.agent_count() != normal_emp.counterpart_count() ||
        normal_emp.agent_count() != normal_cand.counterpart_count()) {
        throw std::invalid_argument("mixed_mmdaa: candidate and employer tables disagree on sizes");
    }
    return MultiMatching{fill_side(normal_cand, lmf_cand), fill_side(normal_emp, lmf_emp)};
}

}  // namespace jobmatch
