#include <sstream>

#include "jobmatch/experiment.hpp"

namespace jobmatch::fixtures {

namespace {

std::vector<MatchCell> stated_cells(const std::vector<int>& counterparts) {
    std::vector<MatchCell> cells;
    cells.reserve(counterparts.size());
    for (int c : counterparts) cells.push_back({c, Provenance::Stated});
    return cells;
}

}  // namespace

DenseDisplacementExample dense_displacement_example() {
    DenseDisplacementExample ex{
        PreferenceTable(Side::Candidate,
                        {{1, 0, 2},    // cand 1: emp2 emp1 emp3
                         {1, 0, 2},    // cand 2: emp2 emp1 emp3
                         {1, 2, 0}}),  // cand 3: emp2 emp3 emp1
        MatchTable(Side::Candidate, 3, 3,
                   {stated_cells({1, 0, 2}),    // cand 1: emp2 emp1 emp3
                    stated_cells({0, 2, 1}),    // cand 2: emp1 emp3 emp2
                    stated_cells({2, 1, 0})}),  // cand 3: emp3 emp2 emp1
        {{2, 3}, {3, 3}, {4, 3}},
    };
    return ex;
}

MixedOverlayExample mixed_overlay_example() {
    MixedOverlayExample ex{
        // stated: cand1 emp2>emp1>emp3, cand2 emp3>emp1, cand3 emp1
        PreferenceTable(Side::Candidate, {{1, 0, 2}, {2, 0}, {0}}),
        // dense counterpart rows
        PreferenceTable(Side::Candidate, {{1, 0, 2}, {1, 0, 2}, {1, 2, 0}}),
        // Normal candidate matches: cand2 withheld in round 2, cand3 departs after round 1
        MatchTable(Side::Candidate, 3, 3,
                   {stated_cells({1, 0, 2}), stated_cells({2, kNone, 0}), stated_cells({0})}),
        // LMF candidate matches
        MatchTable(Side::Candidate, 3, 3,
                   {stated_cells({1, 0, 2}), stated_cells({0, 2, 1}), stated_cells({2, 1, 0})}),
        // Normal employer matches: emp2 departs after round 1, emp3 withheld in round 2
        MatchTable(Side::Employer, 3, 3,
                   {stated_cells({2, 0, 1}), stated_cells({0}), stated_cells({1, kNone, 0})}),
        // LMF employer matches
        MatchTable(Side::Employer, 3, 3,
                   {stated_cells({1, 0, 2}), stated_cells({0, 2, 1}), stated_cells({2, 1, 0})}),
        // expected filled candidate table: cand2's withheld round takes emp2
        MatchTable(Side::Candidate, 3, 3,
                   {stated_cells({1, 0, 2}),
                    {{2, Provenance::Stated}, {1, Provenance::Inferred}, {0, Provenance::Stated}},
                    stated_cells({0})}),
        {{0, 3}, {1, 2}, {3, 2}},
    };
    return ex;
}

OfferMarketExample offer_market_example() {
    // 10 employers x 14 candidates; employers 1-3 offer from the top of their
    // row, 4-6 skip the first third, 7-10 skip the first two thirds.
    auto row = [](std::vector<int> one_based) {
        for (int& v : one_based) --v;
        return one_based;
    };
    OfferMarketExample ex{
        PreferenceTable(Side::Employer,
                        {
                            row({2, 7, 13, 11, 14, 1, 3, 6, 5, 8, 4, 9}),
                            row({3, 12, 1, 2, 5, 7, 13}),
                            row({12, 8, 2, 6, 1, 3, 11}),
                            row({14, 10, 13, 2, 8, 9, 12, 6, 3, 1, 5}),
                            row({6, 11, 5, 14, 7, 10, 4, 9, 1, 2, 3, 8}),
                            row({9, 2, 13, 5, 10, 4, 14, 6, 12, 1, 11, 3}),
                            row({13, 11, 12, 8, 1, 6, 4, 10, 7, 2, 5, 3, 9, 14}),
                            row({1, 5, 12, 2, 4, 8, 14, 13, 3, 10, 11, 6, 7, 9}),
                            row({14, 7, 8, 11, 2, 4, 5, 3, 6, 1, 10, 9, 12}),
                            row({11, 3, 13, 2, 4, 1, 7, 5, 14, 10, 12, 6}),
                        }),
        14,
        {0.30, 0.00, 0.00},
        {{1, 0, 1}, {1, 5, 9}},  // candidate 2 accepts employer 1; candidate 10 accepts employer 6
    };
    return ex;
}

}  // namespace jobmatch::fixtures
