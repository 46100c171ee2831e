#include "jobmatch/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace jobmatch {

Side opposite(Side side) {
    return side == Side::Candidate ? Side::Employer : Side::Candidate;
}

char side_code(Side side) { return side == Side::Candidate ? 'C' : 'E'; }

std::optional<Side> side_from_code(char c) {
    if (c == 'C' || c == 'c') return Side::Candidate;
    if (c == 'E' || c == 'e') return Side::Employer;
    return std::nullopt;
}

std::string side_name(Side side) {
    return side == Side::Candidate ? "candidate" : "employer";
}

std::size_t PreferenceTable::total_entries() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

ValidationReport validate_preference_table(const PreferenceTable& table, int counterpart_count) {
    ValidationReport report;
    for (int agent = 0; agent < table.agent_count(); ++agent) {
        std::unordered_set<int> seen;
        for (int counterpart : table.row(agent)) {
            if (counterpart < 0 || counterpart >= counterpart_count) {
                report.issues.push_back(
                    {AgentId{table.side(), agent},
                     "out of range counterpart " + std::to_string(counterpart + 1)});
                continue;
            }
            if (!seen.insert(counterpart).second) {
                report.issues.push_back(
                    {AgentId{table.side(), agent},
                     "duplicate counterpart " + std::to_string(counterpart + 1)});
            }
        }
    }
    report.ok = report.issues.empty();
    return report;
}

void require_valid(const PreferenceTable& table, int counterpart_count, const char* what) {
    ValidationReport report = validate_preference_table(table, counterpart_count);
    if (report.ok) return;
    std::string msg = std::string(what) + ": invalid " + side_name(table.side()) + " table";
    std::size_t shown = 0;
    for (const auto& issue : report.issues) {
        if (shown++ == 4) {
            msg += "; ... (" + std::to_string(report.issues.size()) + " issues total)";
            break;
        }
        msg += "; " + side_name(issue.agent.side) + " " + std::to_string(issue.agent.index + 1) +
               ": " + issue.description;
    }
    throw std::invalid_argument(msg);
}

Matching::Matching(int candidate_count, int employer_count)
    : employer_of_(candidate_count, kNone), candidate_of_(employer_count, kNone) {}

Matching Matching::from_pairs(int candidate_count, int employer_count,
                              const std::vector<std::pair<int, int>>& pairs) {
    Matching m(candidate_count, employer_count);
    for (auto [c, e] : pairs) m.add(c, e);
    return m;
}

void Matching::add(int candidate, int employer) {
    if (candidate < 0 || candidate >= candidate_count() || employer < 0 ||
        employer >= employer_count()) {
        throw std::invalid_argument("match pair out of range: (" + std::to_string(candidate + 1) +
                                    "," + std::to_string(employer + 1) + ")");
    }
    if (employer_of_[candidate] != kNone || candidate_of_[employer] != kNone) {
        throw std::invalid_argument("match pair violates one-to-one: (" +
                                    std::to_string(candidate + 1) + "," +
                                    std::to_string(employer + 1) + ")");
    }
    employer_of_[candidate] = employer;
    candidate_of_[employer] = candidate;
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{candidate, employer});
    pairs_.insert(it, {candidate, employer});
}

MatchTable::MatchTable(Side side, int counterpart_count, int round_count,
                       std::vector<std::vector<MatchCell>> rows)
    : side_(side),
      counterpart_count_(counterpart_count),
      round_count_(round_count),
      rows_(std::move(rows)) {
    for (const auto& row : rows_) {
        if (static_cast<int>(row.size()) > round_count_) {
            throw std::invalid_argument("match row longer than round count");
        }
    }
}

std::vector<int> MatchTable::participant_counts() const {
    std::vector<int> counts(round_count_, 0);
    for (const auto& row : rows_) {
        for (std::size_t r = 0; r < row.size(); ++r) ++counts[r];
    }
    return counts;
}

std::vector<std::string> check_match_table(const MatchTable& table) {
    std::vector<std::string> violations;
    const std::string who = side_name(table.side());
    // one-to-one within each round
    for (int round = 0; round < table.round_count(); ++round) {
        std::unordered_set<int> used;
        for (int agent = 0; agent < table.agent_count(); ++agent) {
            const MatchCell* cell = table.cell(agent, round);
            if (cell == nullptr || cell->counterpart == kNone) continue;
            if (cell->counterpart < 0 || cell->counterpart >= table.counterpart_count()) {
                violations.push_back(who + " " + std::to_string(agent + 1) + " round " +
                                     std::to_string(round + 1) + ": counterpart out of range");
                continue;
            }
            if (!used.insert(cell->counterpart).second) {
                violations.push_back(who + " table round " + std::to_string(round + 1) +
                                     ": counterpart " + std::to_string(cell->counterpart + 1) +
                                     " assigned twice");
            }
        }
    }
    // no agent repeats a counterpart across rounds
    for (int agent = 0; agent < table.agent_count(); ++agent) {
        std::unordered_set<int> seen;
        for (const MatchCell& cell : table.agent_row(agent)) {
            if (cell.counterpart == kNone) continue;
            if (!seen.insert(cell.counterpart).second) {
                violations.push_back(who + " " + std::to_string(agent + 1) + ": counterpart " +
                                     std::to_string(cell.counterpart + 1) +
                                     " assigned in two rounds");
            }
        }
    }
    return violations;
}

MatchTable truncate_rounds(const MatchTable& table, int max_rounds) {
    if (table.round_count() <= max_rounds) return table;
    std::vector<std::vector<MatchCell>> rows = table.rows();
    for (auto& row : rows) {
        if (static_cast<int>(row.size()) > max_rounds) row.resize(max_rounds);
    }
    return MatchTable(table.side(), table.counterpart_count(), max_rounds, std::move(rows));
}

std::vector<std::string> check_mutually_consistent(const MultiMatching& mm) {
    std::vector<std::string> violations = check_match_table(mm.candidates);
    auto emp = check_match_table(mm.employers);
    violations.insert(violations.end(), emp.begin(), emp.end());
    if (mm.candidates.round_count() != mm.employers.round_count()) {
        violations.push_back("round counts differ between sides");
        return violations;
    }
    if (mm.candidates.counterpart_count() != mm.employers.agent_count() ||
        mm.employers.counterpart_count() != mm.candidates.agent_count()) {
        violations.push_back("side dimensions are not transposes of each other");
        return violations;
    }
    for (int round = 0; round < mm.candidates.round_count(); ++round) {
        for (int c = 0; c < mm.candidates.agent_count(); ++c) {
            const MatchCell* cell = mm.candidates.cell(c, round);
            int e = (cell != nullptr) ? cell->counterpart : kNone;
            if (e == kNone) continue;
            const MatchCell* back = mm.employers.cell(e, round);
            if (back == nullptr || back->counterpart != c) {
                violations.push_back("round " + std::to_string(round + 1) + ": candidate " +
                                     std::to_string(c + 1) + " matched to employer " +
                                     std::to_string(e + 1) + " without the reverse assignment");
            }
        }
        for (int e = 0; e < mm.employers.agent_count(); ++e) {
            const MatchCell* cell = mm.employers.cell(e, round);
            int c = (cell != nullptr) ? cell->counterpart : kNone;
            if (c == kNone) continue;
            const MatchCell* back = mm.candidates.cell(c, round);
            if (back == nullptr || back->counterpart != e) {
                violations.push_back("round " + std::to_string(round + 1) + ": employer " +
                                     std::to_string(e + 1) + " matched to candidate " +
                                     std::to_string(c + 1) + " without the reverse assignment");
            }
        }
    }
    return violations;
}

}  // namespace jobmatch
