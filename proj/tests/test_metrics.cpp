#include "doctest.h"
#include "jobmatch/experiment.hpp"
#include "jobmatch/metrics.hpp"
#include "jobmatch/mmdaa.hpp"
#include "support/oracles.hpp"

using namespace jobmatch;

namespace {

std::vector<MatchCell> stated(const std::vector<int>& counterparts) {
    std::vector<MatchCell> cells;
    for (int c : counterparts) cells.push_back({c, Provenance::Stated});
    return cells;
}

}  // namespace

TEST_CASE("dense three-candidate displacement lands on exact thirds") {
    auto ex = fixtures::dense_displacement_example();
    MetricSeries series = displacement(ex.matches, ex.prefs);
    REQUIRE(series.rounds.size() == 3);
    CHECK(series.rounds[0] == RoundMetric{2, 3});  // 2/3
    CHECK(series.rounds[1] == RoundMetric{3, 3});  // 1
    CHECK(series.rounds[2] == RoundMetric{4, 3});  // 4/3
}

TEST_CASE("mixed-provenance displacement consults the right table per cell") {
    auto ex = fixtures::mixed_overlay_example();
    MetricSeries series =
        displacement(ex.expected_mixed_cands, ex.stated_cands, &ex.dense_cands);
    REQUIRE(series.rounds.size() == 3);
    CHECK(series.rounds[0] == RoundMetric{0, 3});  // 0
    CHECK(series.rounds[1] == RoundMetric{1, 2});  // 1/2 with two participants
    CHECK(series.rounds[2] == RoundMetric{3, 2});  // 3/2
}

TEST_CASE("all first choices give zero displacement") {
    PreferenceTable prefs(Side::Candidate, {{0, 1}, {1, 0}, {2, 1}});
    MatchTable matches(Side::Candidate, 3, 1, {stated({0}), stated({1}), stated({2})});
    MetricSeries series = displacement(matches, prefs);
    REQUIRE(series.rounds.size() == 1);
    CHECK(series.rounds[0] == RoundMetric{0, 3});
    CHECK(series.rounds[0].average() == 0.0);
}

TEST_CASE("an inferred cell without a dense table is a contract violation") {
    PreferenceTable prefs(Side::Candidate, {{0}});
    MatchTable matches(Side::Candidate, 2, 1, {{{1, Provenance::Inferred}}});
    CHECK_THROWS_AS(displacement(matches, prefs), std::invalid_argument);
}

TEST_CASE("a matched counterpart missing from the consulted row aborts") {
    PreferenceTable prefs(Side::Candidate, {{0}});
    MatchTable matches(Side::Candidate, 2, 1, {{{1, Provenance::Stated}}});
    CHECK_THROWS_AS(displacement(matches, prefs), std::runtime_error);
}

TEST_CASE("withholding penalties stack per round and reset on a match") {
    // One candidate with three stated preferences: matched in round 1,
    // withheld twice, matched again in round 4.
    PreferenceTable prefs(Side::Candidate, {{0, 1, 2}});
    MatchTable matches(Side::Candidate, 3, 4,
                       {stated({0, kNone, kNone, 1})});

    SUBCASE("no penalties: position only") {
        MetricSeries series = displacement(matches, prefs);
        CHECK(series.rounds[3] == RoundMetric{1, 1});
    }
    SUBCASE("stacked: two withheld rounds, three stated preferences each") {
        PenaltyOptions penalty;
        penalty.apply = true;
        MetricSeries series = displacement(matches, prefs, nullptr, penalty);
        CHECK(series.rounds[0] == RoundMetric{0, 1});
        CHECK(series.rounds[1] == RoundMetric{0, 0});  // withheld: excluded
        CHECK(series.rounds[3] == RoundMetric{1 + 2 * 3, 1});
    }
    SUBCASE("single-shot penalty under per_round = false") {
        PenaltyOptions penalty;
        penalty.apply = true;
        penalty.per_round = false;
        MetricSeries series = displacement(matches, prefs, nullptr, penalty);
        CHECK(series.rounds[3] == RoundMetric{1 + 3, 1});
    }
    SUBCASE("unit override replaces the stated row length") {
        PenaltyOptions penalty;
        penalty.apply = true;
        penalty.unit_lengths = {10};
        MetricSeries series = displacement(matches, prefs, nullptr, penalty);
        CHECK(series.rounds[3] == RoundMetric{1 + 2 * 10, 1});
    }
}

TEST_CASE("departed agents never accrue penalties") {
    // Agent 2 departs after round 1; agent 1 plays all three rounds.
    PreferenceTable prefs(Side::Candidate, {{0, 1, 2}, {2}});
    MatchTable matches(Side::Candidate, 3, 3,
                       {stated({0, kNone, 1}), stated({2})});
    PenaltyOptions penalty;
    penalty.apply = true;
    MetricSeries series = displacement(matches, prefs, nullptr, penalty);
    // round 3 has only agent 1, carrying one withheld round of penalty 3
    CHECK(series.rounds[2] == RoundMetric{1 + 3, 1});
}

TEST_CASE("withholdings divide by the remaining participants") {
    MatchTable matches(Side::Candidate, 5, 2,
                       {stated({0, kNone}), stated({1, 2}), stated({kNone})});
    MetricSeries series = withholdings(matches);
    REQUIRE(series.rounds.size() == 2);
    CHECK(series.rounds[0] == RoundMetric{1, 3});
    CHECK(series.rounds[1] == RoundMetric{1, 2});  // agent 3 departed

    SUBCASE("explicit participation counts are honoured") {
        MetricSeries forced = withholdings(matches, {3, 3});
        CHECK(forced.rounds[1] == RoundMetric{1, 3});
    }
}

TEST_CASE("a balanced total-order instance never withholds") {
    oracle::Instance inst{{{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}};
    MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{2});
    for (const RoundMetric& r : withholdings(mm.candidates).rounds) CHECK(r.total == 0);
    for (const RoundMetric& r : withholdings(mm.employers).rounds) CHECK(r.total == 0);
}

TEST_CASE("normal MMDAA withholdings end at zero once everything is matched") {
    // Applicant-pool construction: listings are mutual and every candidate
    // holds at least one preference, so the run consumes every entry and the
    // candidate series must close at zero.
    Rng rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + rng.index(6);
        int m = 1 + rng.index(6);
        oracle::Instance inst;
        inst.cand_rows.resize(n);
        inst.emp_rows.resize(m);
        for (int c = 0; c < n; ++c) {
            inst.cand_rows[c] = rng.sample_without_replacement(m, 1 + rng.index(m));
            for (int e : inst.cand_rows[c]) inst.emp_rows[e].push_back(c);
        }
        MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{64});
        MetricSeries series = withholdings(mm.candidates);
        REQUIRE(!series.rounds.empty());
        CHECK(series.rounds.back().total == 0);
    }
}

TEST_CASE("retention is total for normal runs and absent for empty rounds") {
    PreferenceTable prefs(Side::Candidate, {{0, 1}, {1}});
    MatchTable matches(Side::Candidate, 2, 2, {stated({0, kNone}), stated({1, kNone})});
    MetricSeries series = retention(matches, prefs);
    CHECK(series.rounds[0] == RoundMetric{2, 2});
    CHECK(series.rounds[1] == RoundMetric{0, 0});
    CHECK(!series.rounds[1].average().has_value());
    CHECK(series.rounds[0].average() == 1.0);
}

TEST_CASE("retention counts only matches inside the stated rows") {
    PreferenceTable prefs(Side::Candidate, {{0}, {0}});
    MatchTable matches(Side::Candidate, 2, 1,
                       {{{0, Provenance::Stated}}, {{1, Provenance::Inferred}}});
    MetricSeries series = retention(matches, prefs);
    CHECK(series.rounds[0] == RoundMetric{1, 2});
}

TEST_CASE("metric series are pure functions of their inputs") {
    auto ex = fixtures::dense_displacement_example();
    MetricSeries a = displacement(ex.matches, ex.prefs);
    MetricSeries b = displacement(ex.matches, ex.prefs);
    CHECK(a.rounds == b.rounds);
}
