#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jobmatch/core.hpp"
#include "jobmatch/lmf.hpp"
#include "jobmatch/metrics.hpp"
#include "jobmatch/simulator.hpp"

namespace jobmatch {

/// File formats use 1-based IDs and rounds; kNone serializes as -1.

/// Long-form preference CSV: `side,agent,rank,counterpart` with side C/E and
/// rank the 1-based position. Rows for one agent are contiguous and
/// rank-ascending. Candidate rows come first.
void write_preferences_csv(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                           std::ostream& out);

struct PreferencePair {
    PreferenceTable candidates;
    PreferenceTable employers;
};

/// Parses the long-form CSV. Population sizes fall back to the largest ID
/// seen on each side (agents with empty rows need the explicit counts).
PreferencePair parse_preferences_csv(std::istream& in,
                                     std::optional<int> candidate_count = std::nullopt,
                                     std::optional<int> employer_count = std::nullopt);

/// MultiMatching CSV: `side,agent,round,counterpart,provenance` with
/// provenance stated/inferred. Departed rounds simply have no row, so every
/// agent's rounds form a 1..k prefix.
void write_multimatching_csv(const MultiMatching& mm, std::ostream& out);
MultiMatching parse_multimatching_csv(std::istream& in,
                                      std::optional<int> candidate_count = std::nullopt,
                                      std::optional<int> employer_count = std::nullopt);

/// Metric CSV: `metric,algorithm,side,round,total,participants,average`;
/// the average field is empty when the round had no participants.
void write_metric_csv_header(std::ostream& out);
void write_metric_csv_rows(const MetricSeries& series, const std::string& metric,
                           const std::string& algorithm, Side side, std::ostream& out);

/// Vacancy CSV: `mode,algorithm,round,employer_vacancy,candidate_vacancy`.
void write_vacancy_csv_header(std::ostream& out);
void write_vacancy_csv_rows(const VacancyReport& report, const std::string& mode,
                            const std::string& algorithm, std::ostream& out);

/// Acceptance log CSV: `round,employer,candidate` (1-based IDs).
void write_acceptance_csv(const VacancyReport& report, std::ostream& out);

/// Factor dump for debugging: `side,row,factor_index,value` listing the
/// agent-side (left) factor rows.
void write_factor_csv(const FactorPair& factors, Side side, std::ostream& out);

/// Locale-independent shortest-ish float formatting used by every writer.
std::string format_double(double value);

}  // namespace jobmatch
