#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jobmatch/datagen.hpp"
#include "jobmatch/lmf.hpp"
#include "jobmatch/metrics.hpp"
#include "jobmatch/mixed.hpp"
#include "jobmatch/simulator.hpp"

namespace jobmatch {

enum class Algorithm { Normal, Lmf, Mixed };

std::string algorithm_name(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

/// "NxM" -> MarketSpec with default prefs-per-candidate and seed.
MarketSpec parse_spec_string(const std::string& text);

struct ExperimentConfig {
    std::vector<MarketSpec> specs;  // default: 10x100 .. 150x100 sweep
    std::vector<Algorithm> algorithms{Algorithm::Normal, Algorithm::Lmf, Algorithm::Mixed};
    int retention_round_cap = 19;
    int runtime_round_cap = 10;
    LmfConfig lmf;
    bool apply_penalties = true;
    bool penalty_per_round = true;
    bool include_surplus_proxy = false;  // adds a 75x24, 3-prefs-per-candidate market
    bool dump_factors = false;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";
};

/// The five-dataset sweep with per-spec seeds derived from `seed`.
ExperimentConfig default_experiment_config(std::uint64_t seed = 1);

/// Loads an ExperimentConfig from a JSON file; absent keys keep defaults.
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

/// All three algorithms on one market. Normal runs to its natural stop
/// (convergence_rounds); LMF and Mixed use the same horizon so the algorithms
/// compare round by round.
struct AlgorithmOutputs {
    MultiMatching normal;
    LmfRun lmf;
    MultiMatching mixed;
    int convergence_rounds = 0;
};
AlgorithmOutputs run_algorithms(const Market& market, const LmfConfig& lcfg);

/// Displacement wiring per algorithm: Normal consults stated rows; LMF
/// consults the densified rows for every cell but keeps penalty units at the
/// stated row lengths; Mixed consults stated rows for Stated cells and
/// densified rows for Inferred ones.
MetricSeries algorithm_displacement(Algorithm algorithm, const MatchTable& matches,
                                    const PreferenceTable& stated, const PreferenceTable& dense,
                                    bool apply_penalties, bool penalty_per_round);

struct ExperimentResult {
    std::vector<std::filesystem::path> written;
};

/// Per market spec, writes into out_dir/<N>x<M>/: the generated dataset
/// (preferences.csv, metadata.json), one match CSV per algorithm,
/// displacement.csv / withholdings.csv / retention.csv, vacancy.csv with the
/// decentralized baseline, acceptance_log.csv, and runtimes.csv measured at
/// the runtime round cap. Deterministic given the config (runtimes aside).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct FixtureOutcome {
    std::string name;
    bool passed = false;
    std::string detail;  // empty when passed
};

/// Executes the repository's worked-example fixtures and compares against
/// their stored expected outputs exactly.
std::vector<FixtureOutcome> run_fixture_suite();

namespace fixtures {

/// Three candidates with dense preferences and three rounds of matches; the
/// per-round average displacements are exact fractions.
struct DenseDisplacementExample {
    PreferenceTable prefs;
    MatchTable matches;
    std::vector<RoundMetric> expected;
};
DenseDisplacementExample dense_displacement_example();

/// Three-candidate overlay: sparse stated preferences plus a dense
/// counterpart, the per-side Normal and LMF match tables, the expected filled
/// candidate table, and its exact displacement series.
struct MixedOverlayExample {
    PreferenceTable stated_cands;
    PreferenceTable dense_cands;
    MatchTable normal_cands;
    MatchTable lmf_cands;
    MatchTable normal_emps;
    MatchTable lmf_emps;
    MatchTable expected_mixed_cands;
    std::vector<RoundMetric> expected_displacement;
};
MixedOverlayExample mixed_overlay_example();

/// Ten employers offering to fourteen candidates under the class-skip rule.
struct OfferMarketExample {
    PreferenceTable employer_prefs;
    int candidate_count = 0;
    std::vector<double> expected_employer_vacancy;
    std::vector<Acceptance> required_acceptances;
};
OfferMarketExample offer_market_example();

}  // namespace fixtures

}  // namespace jobmatch
