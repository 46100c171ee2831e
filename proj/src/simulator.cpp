#include "jobmatch/simulator.hpp"

#include <stdexcept>

namespace jobmatch {

std::vector<EmployerClass> assign_classes(int employer_count) {
    std::vector<EmployerClass> classes(employer_count, EmployerClass::Low);
    int third = employer_count / 3;
    for (int e = 0; e < employer_count; ++e) {
        if (e < third) {
            classes[e] = EmployerClass::High;
        } else if (e < 2 * third) {
            classes[e] = EmployerClass::Medium;
        }
    }
    return classes;
}

std::vector<int> class_offer_sequence(const std::vector<int>& pref_row, EmployerClass cls) {
    const int len = static_cast<int>(pref_row.size());
    int start = 0;
    if (cls == EmployerClass::Medium) start = len / 3;
    if (cls == EmployerClass::Low) start = 2 * len / 3;
    return {pref_row.begin() + start, pref_row.end()};
}

std::string offer_source_name(OfferSource source) {
    return source == OfferSource::RealWorld ? "realworld" : "matches";
}

std::vector<OfferPlan> build_plans(const PreferenceTable& emp_prefs,
                                   const std::vector<EmployerClass>& classes) {
    if (emp_prefs.side() != Side::Employer) {
        throw std::invalid_argument("build_plans: expected the employer-side table");
    }
    if (static_cast<int>(classes.size()) != emp_prefs.agent_count()) {
        throw std::invalid_argument("build_plans: class list does not match employer count");
    }
    std::vector<OfferPlan> plans(emp_prefs.agent_count());
    for (int e = 0; e < emp_prefs.agent_count(); ++e) {
        plans[e].offers = class_offer_sequence(emp_prefs.row(e), classes[e]);
    }
    return plans;
}

std::vector<OfferPlan> build_plans(const MatchTable& emp_matches) {
    if (emp_matches.side() != Side::Employer) {
        throw std::invalid_argument("build_plans: expected the employer-side table");
    }
    std::vector<OfferPlan> plans(emp_matches.agent_count());
    for (int e = 0; e < emp_matches.agent_count(); ++e) {
        for (const MatchCell& cell : emp_matches.agent_row(e)) {
            if (cell.counterpart != kNone) plans[e].offers.push_back(cell.counterpart);
        }
    }
    return plans;
}

VacancyReport simulate_market(std::vector<OfferPlan> plans, int candidate_count, int rounds) {
    if (rounds < 1) throw std::invalid_argument("simulate_market: rounds must be >= 1");
    const int m = static_cast<int>(plans.size());
    for (const OfferPlan& plan : plans) {
        for (int c : plan.offers) {
            if (c < 0 || c >= candidate_count) {
                throw std::invalid_argument("simulate_market: offer to candidate out of range");
            }
        }
    }

    std::vector<bool> employer_filled(m, false);
    std::vector<bool> candidate_employed(candidate_count, false);
    int filled = 0;
    int employed = 0;

    VacancyReport report;
    for (int round = 1; round <= rounds; ++round) {
        for (int e = 0; e < m; ++e) {
            if (employer_filled[e] || plans[e].exhausted()) continue;
            int c = plans[e].offers[plans[e].cursor++];
            if (candidate_employed[c]) continue;  // declined
            candidate_employed[c] = true;
            employer_filled[e] = true;
            ++filled;
            ++employed;
            report.acceptances.push_back({round, e, c});
        }
        report.employer_vacancy.push_back(m == 0 ? 0.0
                                                 : static_cast<double>(m - filled) / m);
        report.candidate_vacancy.push_back(
            candidate_count == 0 ? 0.0
                                 : static_cast<double>(candidate_count - employed) / candidate_count);
    }
    return report;
}

}  // namespace jobmatch
