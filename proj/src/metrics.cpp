#include "jobmatch/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace jobmatch {

namespace {

int position_in(const std::vector<int>& row, int counterpart) {
    auto it = std::find(row.begin(), row.end(), counterpart);
    if (it == row.end()) return kNone;
    return static_cast<int>(it - row.begin());
}

}  // namespace

MetricSeries displacement(const MatchTable& matches, const PreferenceTable& stated,
                          const PreferenceTable* dense, const PenaltyOptions& penalty) {
    if (stated.agent_count() != matches.agent_count()) {
        throw std::invalid_argument("displacement: stated table does not match agent count");
    }
    if (!penalty.unit_lengths.empty() &&
        static_cast<int>(penalty.unit_lengths.size()) != matches.agent_count()) {
        throw std::invalid_argument("displacement: penalty unit lengths do not match agent count");
    }

    MetricSeries series;
    series.rounds.assign(matches.round_count(), {});
    std::vector<int> withheld_rounds(matches.agent_count(), 0);

    for (int round = 0; round < matches.round_count(); ++round) {
        RoundMetric& metric = series.rounds[round];
        for (int agent = 0; agent < matches.agent_count(); ++agent) {
            const MatchCell* cell = matches.cell(agent, round);
            if (cell == nullptr) continue;  // departed: no count, no penalty accrual
            if (cell->counterpart == kNone) {
                ++withheld_rounds[agent];
                continue;
            }
            const std::vector<int>* consulted = &stated.row(agent);
            if (cell->provenance == Provenance::Inferred) {
                if (dense == nullptr) {
                    throw std::invalid_argument(
                        "displacement: Inferred cell present but no dense table given");
                }
                consulted = &dense->row(agent);
            }
            int pos = position_in(*consulted, cell->counterpart);
            if (pos == kNone) {
                throw std::runtime_error(
                    "displacement: " + side_name(matches.side()) + " " + std::to_string(agent + 1) +
                    " round " + std::to_string(round + 1) + ": matched counterpart " +
                    std::to_string(cell->counterpart + 1) + " absent from the consulted row");
            }
            long long value = pos;
            if (penalty.apply && withheld_rounds[agent] > 0) {
                long long unit = penalty.unit_lengths.empty()
                                     ? static_cast<long long>(stated.row(agent).size())
                                     : penalty.unit_lengths[agent];
                long long times = penalty.per_round ? withheld_rounds[agent] : 1;
                value += unit * times;
            }
            withheld_rounds[agent] = 0;
            metric.total += value;
            ++metric.participants;
        }
    }
    return series;
}

MetricSeries withholdings(const MatchTable& matches) {
    return withholdings(matches, matches.participant_counts());
}

MetricSeries withholdings(const MatchTable& matches,
                          const std::vector<int>& participants_per_round) {
    if (static_cast<int>(participants_per_round.size()) != matches.round_count()) {
        throw std::invalid_argument("withholdings: participant counts do not match round count");
    }
    MetricSeries series;
    series.rounds.assign(matches.round_count(), {});
    for (int round = 0; round < matches.round_count(); ++round) {
        RoundMetric& metric = series.rounds[round];
        metric.participants = participants_per_round[round];
        for (int agent = 0; agent < matches.agent_count(); ++agent) {
            const MatchCell* cell = matches.cell(agent, round);
            if (cell != nullptr && cell->counterpart == kNone) ++metric.total;
        }
    }
    return series;
}

MetricSeries retention(const MatchTable& matches, const PreferenceTable& stated) {
    if (stated.agent_count() != matches.agent_count()) {
        throw std::invalid_argument("retention: stated table does not match agent count");
    }
    MetricSeries series;
    series.rounds.assign(matches.round_count(), {});
    for (int round = 0; round < matches.round_count(); ++round) {
        RoundMetric& metric = series.rounds[round];
        for (int agent = 0; agent < matches.agent_count(); ++agent) {
            const MatchCell* cell = matches.cell(agent, round);
            if (cell == nullptr || cell->counterpart == kNone) continue;
            ++metric.participants;
            if (position_in(stated.row(agent), cell->counterpart) != kNone) ++metric.total;
        }
    }
    return series;
}

}  // namespace jobmatch
