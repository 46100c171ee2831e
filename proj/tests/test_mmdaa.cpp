#include <set>

#include "doctest.h"
#include "jobmatch/mmdaa.hpp"
#include "support/oracles.hpp"

using namespace jobmatch;

namespace {

// Residual tables before a given round, recomputed from the output by
// re-applying the symmetric removal rule; deliberately separate from the
// algorithm's own bookkeeping.
oracle::Instance residual_before(const oracle::Instance& original, const MultiMatching& mm,
                                 int round) {
    oracle::Instance residual = original;
    for (int r = 0; r < round; ++r) {
        for (int c = 0; c < mm.candidates.agent_count(); ++c) {
            const MatchCell* cell = mm.candidates.cell(c, r);
            if (cell == nullptr || cell->counterpart == kNone) continue;
            int e = cell->counterpart;
            std::erase(residual.cand_rows[c], e);
            std::erase(residual.emp_rows[e], c);
        }
    }
    return residual;
}

Matching round_matching(const MultiMatching& mm, int round) {
    Matching m(mm.candidates.agent_count(), mm.employers.agent_count());
    for (int c = 0; c < mm.candidates.agent_count(); ++c) {
        const MatchCell* cell = mm.candidates.cell(c, round);
        if (cell != nullptr && cell->counterpart != kNone) m.add(c, cell->counterpart);
    }
    return m;
}

}  // namespace

TEST_CASE("one round reduces to plain deferred acceptance") {
    Rng rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        oracle::Instance inst = oracle::random_instance(rng);
        MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{1});
        Matching direct = deferred_acceptance(inst.cand_table(), inst.emp_table());
        REQUIRE(mm.candidates.round_count() == 1);
        CHECK(round_matching(mm, 0) == direct);
    }
}

TEST_CASE("two-round alternation on the 2x2 instance") {
    // Round 1 must be the unique stable matching; round 2 the leftover pairs.
    oracle::Instance inst{{{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}};
    auto stable = oracle::all_stable_matchings(inst);
    REQUIRE(stable.size() == 1);
    REQUIRE(stable[0] == oracle::Assignment{0, 1});

    oracle::Instance round2{{{1}, {0}}, {{1}, {0}}};
    auto stable2 = oracle::all_stable_matchings(round2);
    REQUIRE(stable2.size() == 1);
    REQUIRE(stable2[0] == oracle::Assignment{1, 0});

    MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{2});
    REQUIRE(mm.candidates.round_count() == 2);
    CHECK(mm.candidates.agent_row(0) ==
          std::vector<MatchCell>{{0, Provenance::Stated}, {1, Provenance::Stated}});
    CHECK(mm.candidates.agent_row(1) ==
          std::vector<MatchCell>{{1, Provenance::Stated}, {0, Provenance::Stated}});
}

TEST_CASE("withholding then a late match, with departures recorded") {
    // c1: e2>e1>e3, c2: e3>e1, c3: e1; e1: c1>c2>c3, e2: c1, e3: c2>c1.
    oracle::Instance inst{{{1, 0, 2}, {2, 0}, {0}}, {{0, 1, 2}, {0}, {1, 0}}};
    MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{3});

    REQUIRE(mm.candidates.round_count() == 3);
    CHECK(mm.candidates.agent_row(0) ==
          std::vector<MatchCell>{
              {1, Provenance::Stated}, {0, Provenance::Stated}, {2, Provenance::Stated}});
    // c2 is withheld in round 2 and only then reaches e1.
    CHECK(mm.candidates.agent_row(1) ==
          std::vector<MatchCell>{
              {2, Provenance::Stated}, {kNone, Provenance::Stated}, {0, Provenance::Stated}});
    // c3's only preference is consumed in round 1; it departs afterwards.
    CHECK(mm.candidates.agent_row(2) == std::vector<MatchCell>{{0, Provenance::Stated}});

    CHECK(mm.employers.agent_row(0) ==
          std::vector<MatchCell>{
              {2, Provenance::Stated}, {0, Provenance::Stated}, {1, Provenance::Stated}});
    CHECK(mm.employers.agent_row(1) == std::vector<MatchCell>{{0, Provenance::Stated}});
    CHECK(mm.employers.agent_row(2) ==
          std::vector<MatchCell>{
              {1, Provenance::Stated}, {kNone, Provenance::Stated}, {0, Provenance::Stated}});
}

TEST_CASE("per-round matchings are stable against recomputed residual tables") {
    Rng rng(0xBEEF);
    for (int trial = 0; trial < 60; ++trial) {
        oracle::Instance inst = oracle::random_instance(rng);
        MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{10});
        for (int round = 0; round < mm.candidates.round_count(); ++round) {
            oracle::Instance residual = residual_before(inst, mm, round);
            oracle::Assignment emp_of(inst.candidates(), kNone);
            for (int c = 0; c < inst.candidates(); ++c) {
                const MatchCell* cell = mm.candidates.cell(c, round);
                if (cell != nullptr) emp_of[c] = cell->counterpart;
            }
            CHECK(oracle::blocking_pairs(residual, emp_of).empty());
        }
    }
}

TEST_CASE("structural invariants over random instances") {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        oracle::Instance inst = oracle::random_instance(rng);
        MultiMatching mm = normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{12});

        CHECK(check_mutually_consistent(mm).empty());

        // Entry conservation: each preference entry is consumed at most once.
        std::size_t matched_pairs = 0;
        for (int round = 0; round < mm.candidates.round_count(); ++round) {
            matched_pairs += round_matching(mm, round).pairs().size();
        }
        std::size_t cand_entries = inst.cand_table().total_entries();
        std::size_t emp_entries = inst.emp_table().total_entries();
        CHECK(matched_pairs <= std::min(cand_entries, emp_entries));

        // Monotone departure is structural (rows are prefixes); participation
        // after a departure is impossible by construction, so check the rows
        // only shrink toward the end.
        for (int c = 0; c < mm.candidates.agent_count(); ++c) {
            CHECK(mm.candidates.agent_row(c).size() <=
                  static_cast<std::size_t>(mm.candidates.round_count()));
        }

        // Departed agents really had exhausted rows: re-derive residuals.
        oracle::Instance residual =
            residual_before(inst, mm, mm.candidates.round_count());
        for (int c = 0; c < mm.candidates.agent_count(); ++c) {
            if (static_cast<int>(mm.candidates.agent_row(c).size()) <
                mm.candidates.round_count()) {
                oracle::Instance at_departure = residual_before(
                    inst, mm, static_cast<int>(mm.candidates.agent_row(c).size()));
                CHECK(at_departure.cand_rows[c].empty());
            }
        }
    }
}

TEST_CASE("rejects an invalid round cap and invalid tables") {
    oracle::Instance inst{{{0}}, {{0}}};
    CHECK_THROWS_AS(normal_mmdaa(inst.cand_table(), inst.emp_table(), MmdaaConfig{0}),
                    std::invalid_argument);
    PreferenceTable dup(Side::Candidate, {{0, 0}});
    CHECK_THROWS_AS(normal_mmdaa(dup, inst.emp_table(), MmdaaConfig{1}), std::invalid_argument);
}
