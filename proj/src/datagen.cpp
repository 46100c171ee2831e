#include "jobmatch/datagen.hpp"

#include <algorithm>
#include <stdexcept>

namespace jobmatch {

AgentProfile sample_profile(Rng& rng) {
    AgentProfile profile;
    profile.attr1 = rng.gaussian();
    profile.attr2 = rng.gaussian();
    profile.type = rng.coin() ? AgentType::Type2 : AgentType::Type1;
    return profile;
}

double utility(const AgentProfile& evaluator, const AgentProfile& target) {
    if (evaluator.type == AgentType::Type1) return 2.0 * target.attr1 + target.attr2;
    return target.attr1 + 2.0 * target.attr2;
}

Market generate_market(const MarketSpec& spec) {
    if (spec.candidates < 1 || spec.employers < 1) {
        throw std::invalid_argument("generate_market: need at least one agent per side");
    }
    if (spec.prefs_per_candidate < 1) {
        throw std::invalid_argument("generate_market: prefs_per_candidate must be >= 1");
    }

    Rng rng(spec.seed);
    std::vector<AgentProfile> candidates(spec.candidates);
    std::vector<AgentProfile> employers(spec.employers);
    for (auto& p : candidates) p = sample_profile(rng);
    for (auto& p : employers) p = sample_profile(rng);

    const int applications = std::min(spec.prefs_per_candidate, spec.employers);
    std::vector<std::vector<int>> cand_rows(spec.candidates);
    std::vector<std::vector<int>> applicant_pools(spec.employers);
    for (int c = 0; c < spec.candidates; ++c) {
        std::vector<int> pool = rng.sample_without_replacement(spec.employers, applications);
        std::sort(pool.begin(), pool.end(), [&](int a, int b) {
            double ua = utility(candidates[c], employers[a]);
            double ub = utility(candidates[c], employers[b]);
            if (ua != ub) return ua > ub;
            return a < b;
        });
        cand_rows[c] = pool;
        for (int e : pool) applicant_pools[e].push_back(c);
    }

    std::vector<std::vector<int>> emp_rows(spec.employers);
    for (int e = 0; e < spec.employers; ++e) {
        std::vector<int>& pool = applicant_pools[e];
        std::sort(pool.begin(), pool.end(), [&](int a, int b) {
            double ua = utility(employers[e], candidates[a]);
            double ub = utility(employers[e], candidates[b]);
            if (ua != ub) return ua > ub;
            return a < b;
        });
        emp_rows[e] = std::move(pool);
    }

    return Market{spec, std::move(candidates), std::move(employers),
                  PreferenceTable(Side::Candidate, std::move(cand_rows)),
                  PreferenceTable(Side::Employer, std::move(emp_rows))};
}

}  // namespace jobmatch
