#pragma once

#include <optional>
#include <vector>

#include "jobmatch/core.hpp"

namespace jobmatch {

/// One round of an averaged metric, kept as an exact integer fraction.
/// The average is absent when no agent contributed that round.
struct RoundMetric {
    long long total = 0;
    int participants = 0;

    std::optional<double> average() const {
        if (participants == 0) return std::nullopt;
        return static_cast<double>(total) / participants;
    }
    bool operator==(const RoundMetric&) const = default;
};

struct MetricSeries {
    std::vector<RoundMetric> rounds;
};

struct PenaltyOptions {
    bool apply = false;
    /// true: every withheld round adds one full penalty to the next match;
    /// false: a drought of any length adds a single penalty.
    bool per_round = true;
    /// Penalty units per agent; empty uses the stated table's row lengths.
    /// The harness overrides this for LMF runs, where positions come from the
    /// densified table but penalties keep modelling forfeited stated options.
    std::vector<int> unit_lengths;
};

/// Per round, the average 0-based position of each matched agent's partner in
/// the consulted row: the stated row for Stated cells, the dense row for
/// Inferred cells (dense must be provided when any Inferred cell exists).
/// Withheld and departed agents are excluded from numerator and denominator;
/// with penalties enabled, each withheld round charges the agent's penalty
/// unit onto its next received match, and departed agents never accrue.
/// Throws when a matched counterpart is missing from the consulted row.
MetricSeries displacement(const MatchTable& matches, const PreferenceTable& stated,
                          const PreferenceTable* dense = nullptr,
                          const PenaltyOptions& penalty = {});

/// Per round, withheld participants / remaining participants.
MetricSeries withholdings(const MatchTable& matches);
MetricSeries withholdings(const MatchTable& matches,
                          const std::vector<int>& participants_per_round);

/// Per round, the fraction of matched participants whose partner appears in
/// their stated row.
MetricSeries retention(const MatchTable& matches, const PreferenceTable& stated);

}  // namespace jobmatch
