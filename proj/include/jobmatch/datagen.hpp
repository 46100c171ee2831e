#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jobmatch/core.hpp"
#include "jobmatch/rng.hpp"

namespace jobmatch {

enum class AgentType { Type1, Type2 };

struct AgentProfile {
    double attr1 = 0.0;
    double attr2 = 0.0;
    AgentType type = AgentType::Type1;
};

struct MarketSpec {
    int candidates = 0;
    int employers = 0;
    int prefs_per_candidate = 10;
    std::uint64_t seed = 0;

    bool operator==(const MarketSpec&) const = default;
};

/// Two N(0,1) attributes and a fair-coin type.
AgentProfile sample_profile(Rng& rng);

/// Type1 evaluators weight the first attribute twice as much as the second;
/// Type2 the reverse.
double utility(const AgentProfile& evaluator, const AgentProfile& target);

struct Market {
    MarketSpec spec;
    std::vector<AgentProfile> candidate_profiles;
    std::vector<AgentProfile> employer_profiles;
    PreferenceTable candidate_prefs;
    PreferenceTable employer_prefs;
};

/// Each candidate applies to min(prefs_per_candidate, m) employers drawn
/// uniformly without replacement and ranks them by descending utility; each
/// employer ranks exactly its applicants by descending utility. Utility ties
/// break by ascending index. Employers with no applicants keep an explicit
/// empty row. Deterministic given spec.seed.
Market generate_market(const MarketSpec& spec);

}  // namespace jobmatch
