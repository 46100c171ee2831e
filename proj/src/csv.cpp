#include "jobmatch/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace jobmatch {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

int parse_int(const std::string& field, const char* what, int line_no) {
    try {
        std::size_t used = 0;
        int value = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + what + " '" +
                                 field + "'");
    }
}

void expect_header(std::istream& in, const std::string& expected, const char* format) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(std::string(format) + ": empty input");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) {
        throw std::runtime_error(std::string(format) + ": expected header '" + expected +
                                 "', got '" + line + "'");
    }
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

void write_preferences_csv(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                           std::ostream& out) {
    out << "side,agent,rank,counterpart\n";
    for (const PreferenceTable* table : {&cand_prefs, &emp_prefs}) {
        for (int agent = 0; agent < table->agent_count(); ++agent) {
            const auto& row = table->row(agent);
            for (int pos = 0; pos < static_cast<int>(row.size()); ++pos) {
                out << side_code(table->side()) << ',' << agent + 1 << ',' << pos + 1 << ','
                    << row[pos] + 1 << '\n';
            }
        }
    }
}

PreferencePair parse_preferences_csv(std::istream& in, std::optional<int> candidate_count,
                                     std::optional<int> employer_count) {
    expect_header(in, "side,agent,rank,counterpart", "preference CSV");

    struct SideState {
        std::vector<std::vector<int>> rows;
        int max_counterpart = 0;
    };
    SideState state[2];
    int previous_side = -1;
    int previous_agent = -1;

    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (fields.size() != 4) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 4 fields, got " + std::to_string(fields.size()));
        }
        auto side = fields[0].size() == 1 ? side_from_code(fields[0][0]) : std::nullopt;
        if (!side) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad side '" +
                                     fields[0] + "'");
        }
        int agent = parse_int(fields[1], "agent", line_no) - 1;
        int rank = parse_int(fields[2], "rank", line_no);
        int counterpart = parse_int(fields[3], "counterpart", line_no) - 1;
        if (agent < 0 || counterpart < 0) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": IDs must be >= 1");
        }

        SideState& s = state[static_cast<int>(*side)];
        if (static_cast<int>(s.rows.size()) <= agent) s.rows.resize(agent + 1);
        int side_index = static_cast<int>(*side);
        if ((previous_side != side_index || previous_agent != agent) && !s.rows[agent].empty()) {
            // A block for this agent already ended earlier in the file.
            throw std::runtime_error("line " + std::to_string(line_no) + ": rows for " +
                                     side_name(*side) + " " + std::to_string(agent + 1) +
                                     " are not contiguous");
        }
        if (rank != static_cast<int>(s.rows[agent].size()) + 1) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": rank " +
                                     std::to_string(rank) + " is not ascending from 1");
        }
        s.rows[agent].push_back(counterpart);
        s.max_counterpart = std::max(s.max_counterpart, counterpart + 1);
        previous_side = side_index;
        previous_agent = agent;
    }

    SideState& cands = state[static_cast<int>(Side::Candidate)];
    SideState& emps = state[static_cast<int>(Side::Employer)];
    int n = std::max({candidate_count.value_or(0), static_cast<int>(cands.rows.size()),
                      emps.max_counterpart});
    int m = std::max({employer_count.value_or(0), static_cast<int>(emps.rows.size()),
                      cands.max_counterpart});
    cands.rows.resize(n);
    emps.rows.resize(m);

    PreferencePair pair{PreferenceTable(Side::Candidate, std::move(cands.rows)),
                        PreferenceTable(Side::Employer, std::move(emps.rows))};
    require_valid(pair.candidates, m, "preference CSV");
    require_valid(pair.employers, n, "preference CSV");
    return pair;
}

void write_multimatching_csv(const MultiMatching& mm, std::ostream& out) {
    out << "side,agent,round,counterpart,provenance\n";
    for (const MatchTable* table : {&mm.candidates, &mm.employers}) {
        for (int agent = 0; agent < table->agent_count(); ++agent) {
            const auto& row = table->agent_row(agent);
            for (int round = 0; round < static_cast<int>(row.size()); ++round) {
                int counterpart = row[round].counterpart;
                out << side_code(table->side()) << ',' << agent + 1 << ',' << round + 1 << ','
                    << (counterpart == kNone ? -1 : counterpart + 1) << ','
                    << (row[round].provenance == Provenance::Stated ? "stated" : "inferred")
                    << '\n';
            }
        }
    }
}

MultiMatching parse_multimatching_csv(std::istream& in, std::optional<int> candidate_count,
                                      std::optional<int> employer_count) {
    expect_header(in, "side,agent,round,counterpart,provenance", "multimatching CSV");

    struct SideState {
        std::map<std::pair<int, int>, MatchCell> cells;  // (agent, round) -> cell
        int max_agent = 0;
        int max_round = 0;
        int max_counterpart = 0;
    };
    SideState state[2];

    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (fields.size() != 5) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 5 fields, got " + std::to_string(fields.size()));
        }
        auto side = fields[0].size() == 1 ? side_from_code(fields[0][0]) : std::nullopt;
        if (!side) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad side '" +
                                     fields[0] + "'");
        }
        int agent = parse_int(fields[1], "agent", line_no) - 1;
        int round = parse_int(fields[2], "round", line_no) - 1;
        int raw = parse_int(fields[3], "counterpart", line_no);
        int counterpart = raw == -1 ? kNone : raw - 1;
        if (agent < 0 || round < 0 || (raw != -1 && raw < 1)) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad IDs");
        }
        Provenance provenance;
        if (fields[4] == "stated") {
            provenance = Provenance::Stated;
        } else if (fields[4] == "inferred") {
            provenance = Provenance::Inferred;
        } else {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad provenance '" +
                                     fields[4] + "'");
        }

        SideState& s = state[static_cast<int>(*side)];
        if (!s.cells.emplace(std::pair{agent, round}, MatchCell{counterpart, provenance}).second) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": duplicate cell for " +
                                     side_name(*side) + " " + std::to_string(agent + 1) +
                                     " round " + std::to_string(round + 1));
        }
        s.max_agent = std::max(s.max_agent, agent + 1);
        s.max_round = std::max(s.max_round, round + 1);
        if (counterpart != kNone) s.max_counterpart = std::max(s.max_counterpart, counterpart + 1);
    }

    SideState& cands = state[static_cast<int>(Side::Candidate)];
    SideState& emps = state[static_cast<int>(Side::Employer)];
    int n = std::max({candidate_count.value_or(0), cands.max_agent, emps.max_counterpart});
    int m = std::max({employer_count.value_or(0), emps.max_agent, cands.max_counterpart});
    int rounds = std::max(cands.max_round, emps.max_round);

    auto build = [rounds](SideState& s, Side side, int agents, int counterparts) {
        std::vector<std::vector<MatchCell>> rows(agents);
        for (const auto& [key, cell] : s.cells) {
            auto [agent, round] = key;
            auto& row = rows[agent];
            if (static_cast<int>(row.size()) != round) {
                throw std::runtime_error(side_name(side) + " " + std::to_string(agent + 1) +
                                         ": rounds do not form a 1..k prefix");
            }
            row.push_back(cell);
        }
        return MatchTable(side, counterparts, rounds, std::move(rows));
    };

    return MultiMatching{build(cands, Side::Candidate, n, m), build(emps, Side::Employer, m, n)};
}

void write_metric_csv_header(std::ostream& out) {
    out << "metric,algorithm,side,round,total,participants,average\n";
}

void write_metric_csv_rows(const MetricSeries& series, const std::string& metric,
                           const std::string& algorithm, Side side, std::ostream& out) {
    for (int round = 0; round < static_cast<int>(series.rounds.size()); ++round) {
        const RoundMetric& r = series.rounds[round];
        out << metric << ',' << algorithm << ',' << side_code(side) << ',' << round + 1 << ','
            << r.total << ',' << r.participants << ',';
        if (auto avg = r.average()) out << format_double(*avg);
        out << '\n';
    }
}

void write_vacancy_csv_header(std::ostream& out) {
    out << "mode,algorithm,round,employer_vacancy,candidate_vacancy\n";
}

void write_vacancy_csv_rows(const VacancyReport& report, const std::string& mode,
                            const std::string& algorithm, std::ostream& out) {
    for (int round = 0; round < static_cast<int>(report.employer_vacancy.size()); ++round) {
        out << mode << ',' << algorithm << ',' << round + 1 << ','
            << format_double(report.employer_vacancy[round]) << ','
            << format_double(report.candidate_vacancy[round]) << '\n';
    }
}

void write_acceptance_csv(const VacancyReport& report, std::ostream& out) {
    out << "round,employer,candidate\n";
    for (const Acceptance& a : report.acceptances) {
        out << a.round << ',' << a.employer + 1 << ',' << a.candidate + 1 << '\n';
    }
}

void write_factor_csv(const FactorPair& factors, Side side, std::ostream& out) {
    out << "side,row,factor_index,value\n";
    for (int r = 0; r < factors.rows; ++r) {
        for (int k = 0; k < factors.rank; ++k) {
            out << side_code(side) << ',' << r + 1 << ',' << k + 1 << ','
                << format_double(factors.left[static_cast<std::size_t>(r) * factors.rank + k])
                << '\n';
        }
    }
}

}  // namespace jobmatch
