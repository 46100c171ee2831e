#include "jobmatch/mmdaa.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace jobmatch {

namespace {

// True when some candidate still lists an employer that lists it back; only
// such pairs can ever match, so their absence means no further progress.
bool mutual_pair_remains(const std::vector<std::vector<int>>& cand_rows,
                         const std::vector<std::vector<int>>& emp_rows) {
    std::vector<std::unordered_set<int>> emp_sets(emp_rows.size());
    for (std::size_t e = 0; e < emp_rows.size(); ++e) {
        emp_sets[e].insert(emp_rows[e].begin(), emp_rows[e].end());
    }
    for (std::size_t c = 0; c < cand_rows.size(); ++c) {
        for (int e : cand_rows[c]) {
            if (emp_sets[e].contains(static_cast<int>(c))) return true;
        }
    }
    return false;
}

void erase_entry(std::vector<int>& row, int value) {
    row.erase(std::remove(row.begin(), row.end(), value), row.end());
}

}  // namespace

MultiMatching normal_mmdaa(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                           const MmdaaConfig& cfg) {
    if (cfg.max_rounds < 1) throw std::invalid_argument("normal_mmdaa: max_rounds must be >= 1");
    const int n = cand_prefs.agent_count();
    const int m = emp_prefs.agent_count();
    require_valid(cand_prefs, m, "normal_mmdaa");
    require_valid(emp_prefs, n, "normal_mmdaa");

    std::vector<std::vector<int>> cand_rows = cand_prefs.rows();
    std::vector<std::vector<int>> emp_rows = emp_prefs.rows();

    std::vector<std::vector<MatchCell>> cand_cells(n);
    std::vector<std::vector<MatchCell>> emp_cells(m);
    // Departure is evaluated after a round: everyone participates in round 1,
    // and an agent whose row is empty once a round ends sits out from the next
    // round on.
    std::vector<bool> cand_active(n, true);
    std::vector<bool> emp_active(m, true);

    const auto any_entries = [](const std::vector<std::vector<int>>& rows) {
        return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.empty(); });
    };

    int rounds = 0;
    while (rounds < cfg.max_rounds) {
        if (!any_entries(cand_rows) && !any_entries(emp_rows)) break;
        // Round 1 always runs on non-empty input; afterwards stop as soon as
        // no match can ever form again.
        if (rounds > 0 && !mutual_pair_remains(cand_rows, emp_rows)) break;
        Matching matched = deferred_acceptance(PreferenceTable(Side::Candidate, cand_rows),
                                               PreferenceTable(Side::Employer, emp_rows));
        for (int c = 0; c < n; ++c) {
            if (!cand_active[c]) continue;
            int e = matched.employer_of(c);
            cand_cells[c].push_back({e, Provenance::Stated});
        }
        for (int e = 0; e < m; ++e) {
            if (!emp_active[e]) continue;
            int c = matched.candidate_of(e);
            emp_cells[e].push_back({c, Provenance::Stated});
        }
        for (auto [c, e] : matched.pairs()) {
            erase_entry(cand_rows[c], e);
            erase_entry(emp_rows[e], c);
        }
        for (int c = 0; c < n; ++c) {
            if (cand_rows[c].empty()) cand_active[c] = false;
        }
        for (int e = 0; e < m; ++e) {
            if (emp_rows[e].empty()) emp_active[e] = false;
        }
        ++rounds;
    }

    return MultiMatching{MatchTable(Side::Candidate, m, rounds, std::move(cand_cells)),
                         MatchTable(Side::Employer, n, rounds, std::move(emp_cells))};
}

}  // namespace jobmatch
