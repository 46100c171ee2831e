#include "jobmatch/daa.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace jobmatch {

namespace {

constexpr int kUnranked = std::numeric_limits<int>::max();

// rank_of[e][c] = position of c in employer e's row, or kUnranked.
std::vector<std::vector<int>> build_rank_lookup(const PreferenceTable& table,
                                                int counterpart_count) {
    std::vector<std::vector<int>> ranks(table.agent_count(),
                                        std::vector<int>(counterpart_count, kUnranked));
    for (int agent = 0; agent < table.agent_count(); ++agent) {
        const auto& row = table.row(agent);
        for (int pos = 0; pos < static_cast<int>(row.size()); ++pos) {
            ranks[agent][row[pos]] = pos;
        }
    }
    return ranks;
}

}  // namespace

Matching deferred_acceptance(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                             const DaaConfig& cfg) {
    if (cand_prefs.side() != Side::Candidate || emp_prefs.side() != Side::Employer) {
        throw std::invalid_argument("deferred_acceptance: tables must be candidate- and employer-side");
    }
    const int n = cand_prefs.agent_count();
    const int m = emp_prefs.agent_count();
    require_valid(cand_prefs, m, "deferred_acceptance");
    require_valid(emp_prefs, n, "deferred_acceptance");

    const long long cap = cfg.proposal_cap > 0
                              ? cfg.proposal_cap
                              : static_cast<long long>(cand_prefs.total_entries());

    std::vector<std::vector<int>> emp_rank = build_rank_lookup(emp_prefs, n);
    std::vector<int> next_proposal(n, 0);
    std::vector<int> engaged_to(n, kNone);   // candidate -> employer
    std::vector<int> engaged_from(m, kNone); // employer -> candidate

    // Free candidates that still have employers to propose to, smallest index first.
    std::priority_queue<int, std::vector<int>, std::greater<>> free_candidates;
    for (int c = 0; c < n; ++c) {
        if (!cand_prefs.row(c).empty()) free_candidates.push(c);
    }

    long long proposals = 0;
    while (!free_candidates.empty()) {
        int c = free_candidates.top();
        free_candidates.pop();
        const auto& row = cand_prefs.row(c);
        if (next_proposal[c] >= static_cast<int>(row.size())) continue;  // exhausted

        int e = row[next_proposal[c]++];
        if (++proposals > cap) {
            throw std::runtime_error("deferred_acceptance: proposal cap " + std::to_string(cap) +
                                     " exceeded");
        }

        const bool has_more = next_proposal[c] < static_cast<int>(row.size());
        if (emp_rank[e][c] == kUnranked) {
            // e does not list c; mutual acceptability rejects the proposal.
            if (has_more) free_candidates.push(c);
            continue;
        }
        int incumbent = engaged_from[e];
        if (incumbent == kNone) {
            engaged_from[e] = c;
            engaged_to[c] = e;
        } else if (emp_rank[e][c] < emp_rank[e][incumbent]) {
            engaged_from[e] = c;
            engaged_to[c] = e;
            engaged_to[incumbent] = kNone;
            if (next_proposal[incumbent] < static_cast<int>(cand_prefs.row(incumbent).size())) {
                free_candidates.push(incumbent);
            }
        } else {
            if (has_more) free_candidates.push(c);
        }
    }

    Matching result(n, m);
    for (int c = 0; c < n; ++c) {
        if (engaged_to[c] != kNone) result.add(c, engaged_to[c]);
    }
    return result;
}

std::vector<std::pair<int, int>> find_blocking_pairs(const Matching& matching,
                                                     const PreferenceTable& cand_prefs,
                                                     const PreferenceTable& emp_prefs) {
    const int n = cand_prefs.agent_count();
    const int m = emp_prefs.agent_count();
    std::vector<std::vector<int>> cand_rank = build_rank_lookup(cand_prefs, m);
    std::vector<std::vector<int>> emp_rank = build_rank_lookup(emp_prefs, n);

    std::vector<std::pair<int, int>> blocking;
    for (int c = 0; c < n; ++c) {
        int partner = matching.employer_of(c);
        int partner_rank = partner == kNone ? kUnranked : cand_rank[c][partner];
        const auto& row = cand_prefs.row(c);
        for (int pos = 0; pos < static_cast<int>(row.size()) && pos < partner_rank; ++pos) {
            int e = row[pos];
            if (emp_rank[e][c] == kUnranked) continue;  // not mutual
            int e_partner = matching.candidate_of(e);
            int e_partner_rank = e_partner == kNone ? kUnranked : emp_rank[e][e_partner];
            if (emp_rank[e][c] < e_partner_rank) blocking.emplace_back(c, e);
        }
    }
    return blocking;
}

}  // namespace jobmatch
