#pragma once

#include <string>
#include <vector>

#include "jobmatch/core.hpp"

namespace jobmatch {

enum class EmployerClass { High, Medium, Low };

/// First floor(m/3) employers High, next floor(m/3) Medium, remainder Low.
std::vector<EmployerClass> assign_classes(int employer_count);

/// The suffix of the row an employer of the given class offers from:
/// High keeps the whole row, Medium skips the first floor(L/3) entries,
/// Low skips the first floor(2L/3).
std::vector<int> class_offer_sequence(const std::vector<int>& pref_row, EmployerClass cls);

/// An employer's ordered offer list with a cursor that only advances.
struct OfferPlan {
    std::vector<int> offers;
    int cursor = 0;

    bool exhausted() const { return cursor >= static_cast<int>(offers.size()); }
};

enum class OfferSource { RealWorld, FromMatches };
std::string offer_source_name(OfferSource source);

/// RealWorld plans: each employer offers down the class-skipped suffix of its
/// own preference row.
std::vector<OfferPlan> build_plans(const PreferenceTable& emp_prefs,
                                   const std::vector<EmployerClass>& classes);

/// FromMatches plans: each employer offers down its match row with withheld
/// rounds removed; classes play no role because the matches already encode
/// both sides' preferences.
std::vector<OfferPlan> build_plans(const MatchTable& emp_matches);

struct Acceptance {
    int round;      // 1-based offer round
    int employer;   // 0-based
    int candidate;  // 0-based
    bool operator==(const Acceptance&) const = default;
};

struct VacancyReport {
    std::vector<double> employer_vacancy;   // after each offer round
    std::vector<double> candidate_vacancy;
    std::vector<Acceptance> acceptances;
};

/// Runs the offer rounds: each round every unfilled employer, in ascending
/// index order, offers to the candidate at its cursor and advances it. A
/// jobless candidate accepts the first offer processed that reaches it and
/// declines everything afterwards; filled employers stop offering.
VacancyReport simulate_market(std::vector<OfferPlan> plans, int candidate_count, int rounds = 3);

}  // namespace jobmatch
