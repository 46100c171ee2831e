#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jobmatch {

/// Sentinel for "no counterpart" (a withheld round, an unmatched agent).
/// Serializes as -1 in file formats.
inline constexpr int kNone = -1;

enum class Side { Candidate, Employer };

Side opposite(Side side);
char side_code(Side side);                    // 'C' / 'E'
std::optional<Side> side_from_code(char c);
std::string side_name(Side side);             // "candidate" / "employer"

struct AgentId {
    Side side;
    int index = 0;  // 0-based internally; file formats are 1-based
    auto operator<=>(const AgentId&) const = default;
};

/// One side's ordered partial rankings of the opposite side.
/// Row i lists agent i's counterparts, most preferred first; the rank of an
/// entry is its 0-based position in the row. Rows may be empty and may have
/// different lengths. Immutable after construction.
class PreferenceTable {
public:
    PreferenceTable(Side side, std::vector<std::vector<int>> rows)
        : side_(side), rows_(std::move(rows)) {}

    Side side() const { return side_; }
    int agent_count() const { return static_cast<int>(rows_.size()); }
    const std::vector<int>& row(int agent) const { return rows_[agent]; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    std::size_t total_entries() const;

    bool operator==(const PreferenceTable&) const = default;

private:
    Side side_;
    std::vector<std::vector<int>> rows_;
};

struct ValidationIssue {
    AgentId agent;
    std::string description;
    bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

/// Reports every duplicate counterpart and every out-of-range counterpart ID.
/// ok iff no issue found. Pure; the table is never modified.
ValidationReport validate_preference_table(const PreferenceTable& table, int counterpart_count);

/// Throws std::invalid_argument summarizing the report when it is not ok.
void require_valid(const PreferenceTable& table, int counterpart_count, const char* what);

/// A one-to-one set of (candidate, employer) pairs. Unmatched agents are
/// simply absent; there is no sentinel inside the pair set.
class Matching {
public:
    Matching(int candidate_count, int employer_count);
    static Matching from_pairs(int candidate_count, int employer_count,
                               const std::vector<std::pair<int, int>>& pairs);

    int candidate_count() const { return static_cast<int>(employer_of_.size()); }
    int employer_count() const { return static_cast<int>(candidate_of_.size()); }
    int employer_of(int candidate) const { return employer_of_[candidate]; }
    int candidate_of(int employer) const { return candidate_of_[employer]; }
    bool candidate_matched(int candidate) const { return employer_of_[candidate] != kNone; }
    bool employer_matched(int employer) const { return candidate_of_[employer] != kNone; }
    int size() const { return static_cast<int>(pairs_.size()); }

    /// Pairs sorted by candidate index.
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

    void add(int candidate, int employer);  // throws if either is taken

    bool operator==(const Matching&) const = default;

private:
    std::vector<int> employer_of_;
    std::vector<int> candidate_of_;
    std::vector<std::pair<int, int>> pairs_;
};

enum class Provenance { Stated, Inferred };

struct MatchCell {
    int counterpart = kNone;  // kNone = withheld this round
    Provenance provenance = Provenance::Stated;
    bool operator==(const MatchCell&) const = default;
};

/// One side of a multi-round matching: per agent, the sequence of match cells
/// for the rounds the agent participated in. A row shorter than round_count
/// means the agent departed (exhausted its preferences) after its last cell;
/// departure is always terminal.
class MatchTable {
public:
    MatchTable(Side side, int counterpart_count, int round_count,
               std::vector<std::vector<MatchCell>> rows);

    Side side() const { return side_; }
    int agent_count() const { return static_cast<int>(rows_.size()); }
    int counterpart_count() const { return counterpart_count_; }
    int round_count() const { return round_count_; }

    bool participates(int agent, int round) const {
        return round < static_cast<int>(rows_[agent].size());
    }
    /// nullptr when the agent departed before this round.
    const MatchCell* cell(int agent, int round) const {
        return participates(agent, round) ? &rows_[agent][round] : nullptr;
    }
    const std::vector<MatchCell>& agent_row(int agent) const { return rows_[agent]; }
    const std::vector<std::vector<MatchCell>>& rows() const { return rows_; }

    /// Number of non-departed agents per round.
    std::vector<int> participant_counts() const;

    bool operator==(const MatchTable&) const = default;

private:
    Side side_;
    int counterpart_count_;
    int round_count_;
    std::vector<std::vector<MatchCell>> rows_;
};

struct MultiMatching {
    MatchTable candidates;
    MatchTable employers;
};

/// Structural checks used by algorithms and tests. Each returns human-readable
/// violations; empty means the invariant holds.
std::vector<std::string> check_match_table(const MatchTable& table);
std::vector<std::string> check_mutually_consistent(const MultiMatching& mm);

/// The first max_rounds rounds of a table. Rounds are computed sequentially,
/// so a prefix equals a run with the smaller cap.
MatchTable truncate_rounds(const MatchTable& table, int max_rounds);

}  // namespace jobmatch
