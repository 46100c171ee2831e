// Command-line front end: dataset generation, matching, metrics, market
// simulation, the full experiment sweep, and the worked-example fixtures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "jobmatch/csv.hpp"
#include "jobmatch/experiment.hpp"
#include "jobmatch/mmdaa.hpp"

namespace fs = std::filesystem;
using namespace jobmatch;

namespace {

std::ofstream must_open(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

PreferencePair load_preferences(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::optional<int> candidates;
    std::optional<int> employers;
    fs::path meta = file.parent_path() / "metadata.json";
    if (fs::exists(meta)) {
        std::ifstream min(meta);
        nlohmann::json j = nlohmann::json::parse(min);
        if (j.contains("candidates")) candidates = j.at("candidates").get<int>();
        if (j.contains("employers")) employers = j.at("employers").get<int>();
    }
    return parse_preferences_csv(in, candidates, employers);
}

MultiMatching load_matches(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    return parse_multimatching_csv(in);
}

int run_gen(const std::string& spec_text, int prefs_per_candidate, std::uint64_t seed,
            const fs::path& out_dir) {
    MarketSpec spec = parse_spec_string(spec_text);
    spec.prefs_per_candidate = prefs_per_candidate;
    spec.seed = seed;
    Market market = generate_market(spec);
    fs::create_directories(out_dir);
    auto prefs = must_open(out_dir / "preferences.csv");
    write_preferences_csv(market.candidate_prefs, market.employer_prefs, prefs);
    auto meta = must_open(out_dir / "metadata.json");
    meta << nlohmann::json{{"candidates", spec.candidates},
                           {"employers", spec.employers},
                           {"prefs_per_candidate", spec.prefs_per_candidate},
                           {"seed", spec.seed}}
                .dump(2)
         << '\n';
    std::cout << "wrote " << (out_dir / "preferences.csv").string() << " ("
              << market.candidate_prefs.total_entries() << " applications)\n";
    return 0;
}

int run_match(const fs::path& prefs_file, const std::string& algo_name, int rounds,
              const LmfConfig& lcfg, const fs::path& out_dir) {
    auto algorithm = algorithm_from_name(algo_name);
    if (!algorithm) {
        std::cerr << "unknown algorithm '" << algo_name << "' (use normal|lmf|mixed)\n";
        return 2;
    }
    PreferencePair prefs = load_preferences(prefs_file);
    fs::create_directories(out_dir);

    int horizon = rounds;
    if (horizon <= 0) {
        MmdaaConfig converge{static_cast<int>(prefs.candidates.total_entries()) + 1};
        horizon = std::max(
            normal_mmdaa(prefs.candidates, prefs.employers, converge).candidates.round_count(),
            1);
    }

    if (*algorithm == Algorithm::Normal) {
        auto out = must_open(out_dir / "matches_normal.csv");
        write_multimatching_csv(normal_mmdaa(prefs.candidates, prefs.employers,
                                             MmdaaConfig{horizon}),
                                out);
    } else {
        LmfRun lmf = lmf_mmdaa_run(prefs.candidates, prefs.employers, MmdaaConfig{horizon}, lcfg);
        auto lmf_out = must_open(out_dir / "matches_lmf.csv");
        write_multimatching_csv(lmf.matches, lmf_out);
        auto dense = must_open(out_dir / "dense_preferences.csv");
        write_preferences_csv(lmf.dense_candidates, lmf.dense_employers, dense);
        if (*algorithm == Algorithm::Mixed) {
            MultiMatching normal =
                normal_mmdaa(prefs.candidates, prefs.employers, MmdaaConfig{horizon});
            auto normal_out = must_open(out_dir / "matches_normal.csv");
            write_multimatching_csv(normal, normal_out);
            auto mixed_out = must_open(out_dir / "matches_mixed.csv");
            write_multimatching_csv(mixed_mmdaa(normal.candidates, lmf.matches.candidates,
                                                normal.employers, lmf.matches.employers),
                                    mixed_out);
        }
    }
    std::cout << "wrote match tables to " << out_dir.string() << " (" << horizon << " rounds)\n";
    return 0;
}

int run_metrics(const fs::path& prefs_file, const fs::path& matches_file,
                const std::optional<fs::path>& dense_file, const std::string& algo_name,
                bool penalties, bool penalty_per_round, int retention_cap,
                const fs::path& out_dir) {
    auto algorithm = algorithm_from_name(algo_name);
    if (!algorithm) {
        std::cerr << "unknown algorithm '" << algo_name << "' (use normal|lmf|mixed)\n";
        return 2;
    }
    PreferencePair prefs = load_preferences(prefs_file);
    MultiMatching matches = load_matches(matches_file);
    std::optional<PreferencePair> dense;
    if (dense_file) dense = load_preferences(*dense_file);
    if (*algorithm != Algorithm::Normal && !dense) {
        std::cerr << "--dense FILE is required for lmf/mixed metrics\n";
        return 2;
    }

    fs::create_directories(out_dir);
    auto disp = must_open(out_dir / "displacement.csv");
    auto withh = must_open(out_dir / "withholdings.csv");
    auto reten = must_open(out_dir / "retention.csv");
    write_metric_csv_header(disp);
    write_metric_csv_header(withh);
    write_metric_csv_header(reten);
    const struct {
        const MatchTable& matches;
        const PreferenceTable& stated;
        const PreferenceTable* dense;
        Side side;
    } views[2] = {
        {matches.candidates, prefs.candidates, dense ? &dense->candidates : nullptr,
         Side::Candidate},
        {matches.employers, prefs.employers, dense ? &dense->employers : nullptr, Side::Employer},
    };
    for (const auto& view : views) {
        MetricSeries series =
            algorithm_displacement(*algorithm, view.matches, view.stated,
                                   view.dense ? *view.dense : view.stated, penalties,
                                   penalty_per_round);
        write_metric_csv_rows(series, "displacement", algo_name, view.side, disp);
        write_metric_csv_rows(withholdings(view.matches), "withholdings", algo_name, view.side,
                              withh);
        MetricSeries kept = retention(view.matches, view.stated);
        if (static_cast<int>(kept.rounds.size()) > retention_cap) kept.rounds.resize(retention_cap);
        write_metric_csv_rows(kept, "retention", algo_name, view.side, reten);
    }
    std::cout << "wrote metric CSVs to " << out_dir.string() << '\n';
    return 0;
}

int run_simulate(const std::string& mode, const std::optional<fs::path>& prefs_file,
                 const std::optional<fs::path>& matches_file, int candidates, int rounds,
                 const std::string& algo_label, const fs::path& out_dir) {
    VacancyReport report;
    std::string algorithm = algo_label;
    if (mode == "realworld") {
        if (!prefs_file) {
            std::cerr << "--prefs FILE is required for --mode realworld\n";
            return 2;
        }
        PreferencePair prefs = load_preferences(*prefs_file);
        int candidate_count = candidates > 0 ? candidates : prefs.candidates.agent_count();
        report = simulate_market(
            build_plans(prefs.employers, assign_classes(prefs.employers.agent_count())),
            candidate_count, rounds);
        if (algorithm.empty()) algorithm = "none";
    } else if (mode == "matches") {
        if (!matches_file) {
            std::cerr << "--matches FILE is required for --mode matches\n";
            return 2;
        }
        MultiMatching matches = load_matches(*matches_file);
        int candidate_count = candidates > 0 ? candidates : matches.candidates.agent_count();
        report = simulate_market(build_plans(matches.employers), candidate_count, rounds);
        if (algorithm.empty()) algorithm = "matches";
    } else {
        std::cerr << "unknown mode '" << mode << "' (use realworld|matches)\n";
        return 2;
    }

    fs::create_directories(out_dir);
    auto vacancy = must_open(out_dir / "vacancy.csv");
    write_vacancy_csv_header(vacancy);
    write_vacancy_csv_rows(report, mode, algorithm, vacancy);
    auto log = must_open(out_dir / "acceptance_log.csv");
    write_acceptance_csv(report, log);
    std::cout << "wrote vacancy CSV to " << out_dir.string() << '\n';
    return 0;
}

int run_fixtures() {
    int failures = 0;
    for (const FixtureOutcome& outcome : run_fixture_suite()) {
        std::cout << (outcome.passed ? "[PASS] " : "[FAIL] ") << outcome.name;
        if (!outcome.passed) {
            std::cout << " — " << outcome.detail;
            ++failures;
        }
        std::cout << '\n';
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable multi-round matching engine and experiment harness"};
    app.require_subcommand(1);

    std::string spec_text = "100x100";
    std::string algo_name = "normal";
    std::string mode = "realworld";
    std::string algo_label;
    std::uint64_t seed = 1;
    int prefs_per_candidate = 10;
    int rounds = 0;
    int sim_rounds = 3;
    int candidates = 0;
    int retention_cap = 19;
    bool penalties = true;
    bool penalty_per_round = true;
    bool surplus_proxy = false;
    bool dump_factors = false;
    LmfConfig lcfg;
    fs::path out_dir = "out";
    fs::path prefs_file;
    fs::path matches_file;
    fs::path dense_file;
    fs::path config_file;

    auto* gen = app.add_subcommand("gen", "Generate a synthetic market");
    gen->add_option("--spec", spec_text, "Market size NxM (candidates x employers)");
    gen->add_option("--prefs-per-candidate", prefs_per_candidate, "Applications per candidate");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out_dir, "Output directory");

    auto* match = app.add_subcommand("match", "Run a matching algorithm on a preference CSV");
    match->add_option("--prefs", prefs_file, "Preference CSV")->required();
    match->add_option("--algo", algo_name, "normal|lmf|mixed");
    match->add_option("--rounds", rounds, "Round cap (0 = run Normal MMDAA to convergence)");
    match->add_option("--seed", lcfg.seed, "Factorization seed");
    match->add_option("--lmf-rank", lcfg.rank, "Factorization rank (0 = auto)");
    match->add_option("--lmf-iterations", lcfg.max_iterations, "Factorization iteration cap");
    match->add_option("--out", out_dir, "Output directory");

    auto* metrics = app.add_subcommand("metrics", "Compute metric CSVs for a match table");
    metrics->add_option("--prefs", prefs_file, "Stated preference CSV")->required();
    metrics->add_option("--matches", matches_file, "MultiMatching CSV")->required();
    metrics->add_option("--dense", dense_file, "Densified preference CSV (lmf/mixed)");
    metrics->add_option("--algo", algo_name, "normal|lmf|mixed (metric wiring)");
    metrics->add_option("--penalties", penalties, "Apply withholding penalties");
    metrics->add_option("--penalty-per-round", penalty_per_round,
                        "Stack one penalty per withheld round");
    metrics->add_option("--retention-cap", retention_cap, "Retention round cap");
    metrics->add_option("--out", out_dir, "Output directory");

    auto* simulate = app.add_subcommand("simulate", "Run the job-offer market simulation");
    simulate->add_option("--mode", mode, "realworld|matches");
    simulate->add_option("--prefs", prefs_file, "Preference CSV (realworld mode)");
    simulate->add_option("--matches", matches_file, "MultiMatching CSV (matches mode)");
    simulate->add_option("--candidates", candidates, "Candidate count override");
    simulate->add_option("--rounds", sim_rounds, "Offer rounds");
    simulate->add_option("--algo", algo_label, "Algorithm label for the CSV");
    simulate->add_option("--out", out_dir, "Output directory");

    auto* experiment = app.add_subcommand("experiment", "Run the full dataset sweep");
    experiment->add_option("--config", config_file, "JSON config (flags override)");
    experiment->add_option("--spec", spec_text, "Single market NxM instead of the default sweep");
    std::vector<std::string> algo_names;
    experiment->add_option("--algo", algo_names, "Algorithms to run (repeatable)");
    experiment->add_option("--rounds", rounds, "Runtime measurement round cap");
    experiment->add_option("--seed", seed, "Base seed");
    experiment->add_option("--lmf-rank", lcfg.rank, "Factorization rank (0 = auto)");
    experiment->add_option("--penalty-per-round", penalty_per_round,
                           "Stack one penalty per withheld round");
    experiment->add_flag("--surplus-proxy", surplus_proxy,
                         "Add the 75x24 surplus-candidate market");
    experiment->add_flag("--dump-factors", dump_factors, "Write factor CSVs");
    experiment->add_option("--out", out_dir, "Output directory");

    auto* fixtures = app.add_subcommand("fixtures", "Run the worked-example fixtures");
    (void)fixtures;

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(spec_text, prefs_per_candidate, seed, out_dir);
        if (match->parsed()) return run_match(prefs_file, algo_name, rounds, lcfg, out_dir);
        if (metrics->parsed()) {
            return run_metrics(prefs_file, matches_file,
                               dense_file.empty() ? std::nullopt
                                                  : std::optional<fs::path>(dense_file),
                               algo_name, penalties, penalty_per_round, retention_cap, out_dir);
        }
        if (simulate->parsed()) {
            return run_simulate(mode,
                                prefs_file.empty() ? std::nullopt
                                                   : std::optional<fs::path>(prefs_file),
                                matches_file.empty() ? std::nullopt
                                                     : std::optional<fs::path>(matches_file),
                                candidates, sim_rounds, algo_label, out_dir);
        }
        if (experiment->parsed()) {
            ExperimentConfig cfg = config_file.empty() ? default_experiment_config(seed)
                                                       : load_experiment_config(config_file);
            if (!config_file.empty() && experiment->count("--seed") != 0) cfg.seed = seed;
            if (experiment->count("--spec") != 0) {
                MarketSpec one = parse_spec_string(spec_text);
                one.seed = cfg.seed;
                cfg.specs = {one};
            }
            if (!algo_names.empty()) {
                cfg.algorithms.clear();
                for (const std::string& name : algo_names) {
                    auto algorithm = algorithm_from_name(name);
                    if (!algorithm) {
                        std::cerr << "unknown algorithm '" << name << "'\n";
                        return 2;
                    }
                    cfg.algorithms.push_back(*algorithm);
                }
            }
            if (experiment->count("--rounds") != 0) cfg.runtime_round_cap = rounds;
            if (experiment->count("--lmf-rank") != 0) cfg.lmf.rank = lcfg.rank;
            if (experiment->count("--penalty-per-round") != 0) {
                cfg.penalty_per_round = penalty_per_round;
            }
            if (surplus_proxy) cfg.include_surplus_proxy = true;
            if (dump_factors) cfg.dump_factors = true;
            if (experiment->count("--out") != 0) cfg.out_dir = out_dir;
            ExperimentResult result = run_experiment(cfg);
            std::cout << "wrote " << result.written.size() << " files under "
                      << cfg.out_dir.string() << '\n';
            return 0;
        }
        if (fixtures->parsed()) return run_fixtures();
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 2;
}
