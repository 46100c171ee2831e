#include "jobmatch/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "jobmatch/csv.hpp"
#include "jobmatch/mmdaa.hpp"

namespace jobmatch {

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Normal: return "normal";
        case Algorithm::Lmf: return "lmf";
        case Algorithm::Mixed: return "mixed";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
    if (name == "normal") return Algorithm::Normal;
    if (name == "lmf") return Algorithm::Lmf;
    if (name == "mixed") return Algorithm::Mixed;
    return std::nullopt;
}

MarketSpec parse_spec_string(const std::string& text) {
    auto x = text.find('x');
    if (x == std::string::npos) x = text.find('X');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size()) {
        throw std::invalid_argument("market spec must look like 110x100, got '" + text + "'");
    }
    MarketSpec spec;
    try {
        spec.candidates = std::stoi(text.substr(0, x));
        spec.employers = std::stoi(text.substr(x + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("market spec must look like 110x100, got '" + text + "'");
    }
    return spec;
}

ExperimentConfig default_experiment_config(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    int index = 0;
    for (int candidates : {10, 50, 100, 110, 150}) {
        MarketSpec spec;
        spec.candidates = candidates;
        spec.employers = 100;
        spec.seed = seed + static_cast<std::uint64_t>(index++);
        cfg.specs.push_back(spec);
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config file " + file.string());
    nlohmann::json j = nlohmann::json::parse(in);

    ExperimentConfig cfg = default_experiment_config(j.value("seed", std::uint64_t{1}));
    if (j.contains("specs")) {
        cfg.specs.clear();
        for (const auto& s : j.at("specs")) {
            MarketSpec spec;
            if (s.is_string()) {
                spec = parse_spec_string(s.get<std::string>());
                spec.seed = cfg.seed + cfg.specs.size();
            } else {
                spec.candidates = s.at("candidates").get<int>();
                spec.employers = s.at("employers").get<int>();
                spec.prefs_per_candidate = s.value("prefs_per_candidate", 10);
                spec.seed = s.value("seed", cfg.seed + cfg.specs.size());
            }
            cfg.specs.push_back(spec);
        }
    }
    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& a : j.at("algorithms")) {
            auto algorithm = algorithm_from_name(a.get<std::string>());
            if (!algorithm) {
                throw std::runtime_error("unknown algorithm '" + a.get<std::string>() +
                                         "' in config");
            }
            cfg.algorithms.push_back(*algorithm);
        }
    }
    if (j.contains("lmf")) {
        const auto& l = j.at("lmf");
        cfg.lmf.rank = l.value("rank", cfg.lmf.rank);
        cfg.lmf.max_iterations = l.value("max_iterations", cfg.lmf.max_iterations);
        cfg.lmf.tolerance = l.value("tolerance", cfg.lmf.tolerance);
        cfg.lmf.regularization = l.value("regularization", cfg.lmf.regularization);
        cfg.lmf.seed = l.value("seed", cfg.lmf.seed);
        if (l.contains("reconciliation")) {
            std::string mode = l.at("reconciliation").get<std::string>();
            if (mode == "learned-order") {
                cfg.lmf.reconciliation = Reconciliation::LearnedOrder;
            } else if (mode == "stated-relative-order") {
                cfg.lmf.reconciliation = Reconciliation::StatedRelativeOrder;
            } else if (mode == "stated-first") {
                cfg.lmf.reconciliation = Reconciliation::StatedFirst;
            } else {
                throw std::runtime_error("unknown reconciliation mode '" + mode + "' in config");
            }
        }
    }
    cfg.retention_round_cap = j.value("retention_round_cap", cfg.retention_round_cap);
    cfg.runtime_round_cap = j.value("runtime_round_cap", cfg.runtime_round_cap);
    cfg.apply_penalties = j.value("apply_penalties", cfg.apply_penalties);
    cfg.penalty_per_round = j.value("penalty_per_round", cfg.penalty_per_round);
    cfg.include_surplus_proxy = j.value("include_surplus_proxy", cfg.include_surplus_proxy);
    cfg.dump_factors = j.value("dump_factors", cfg.dump_factors);
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    return cfg;
}

AlgorithmOutputs run_algorithms(const Market& market, const LmfConfig& lcfg) {
    // Normal MMDAA runs until it can make no further match; the bound can
    // never bind because every executed round consumes at least one entry.
    MmdaaConfig converge{static_cast<int>(market.candidate_prefs.total_entries()) + 1};
    MultiMatching normal = normal_mmdaa(market.candidate_prefs, market.employer_prefs, converge);
    int rounds = std::max(normal.candidates.round_count(), 1);

    // The dense run goes to its own convergence: the overlay may substitute
    // from any LMF round, including those past the Normal horizon. The
    // published LMF output is the prefix at the Normal horizon so the
    // algorithms stay comparable round by round.
    int dense_bound = market.candidate_prefs.agent_count() *
                          market.employer_prefs.agent_count() + 1;
    LmfRun lmf = lmf_mmdaa_run(market.candidate_prefs, market.employer_prefs,
                               MmdaaConfig{dense_bound}, lcfg);
    MultiMatching mixed = mixed_mmdaa(normal.candidates, lmf.matches.candidates,
                                      normal.employers, lmf.matches.employers);
    lmf.matches.candidates = truncate_rounds(lmf.matches.candidates, rounds);
    lmf.matches.employers = truncate_rounds(lmf.matches.employers, rounds);
    return AlgorithmOutputs{std::move(normal), std::move(lmf), std::move(mixed), rounds};
}

MetricSeries algorithm_displacement(Algorithm algorithm, const MatchTable& matches,
                                    const PreferenceTable& stated, const PreferenceTable& dense,
                                    bool apply_penalties, bool penalty_per_round) {
    PenaltyOptions penalty;
    penalty.apply = apply_penalties;
    penalty.per_round = penalty_per_round;
    if (algorithm == Algorithm::Lmf) {
        // Positions come from the densified rows for every cell; penalties
        // keep charging the forfeited stated options.
        penalty.unit_lengths.reserve(stated.agent_count());
        for (int agent = 0; agent < stated.agent_count(); ++agent) {
            penalty.unit_lengths.push_back(static_cast<int>(stated.row(agent).size()));
        }
        return displacement(matches, dense, &dense, penalty);
    }
    if (algorithm == Algorithm::Mixed) return displacement(matches, stated, &dense, penalty);
    return displacement(matches, stated, nullptr, penalty);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::ofstream open_out(const std::filesystem::path& path,
                       std::vector<std::filesystem::path>& written) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
    return out;
}

MetricSeries truncated(MetricSeries series, int cap) {
    if (static_cast<int>(series.rounds.size()) > cap) series.rounds.resize(cap);
    return series;
}

void run_spec(const ExperimentConfig& cfg, const MarketSpec& spec,
              const std::filesystem::path& dir, std::vector<std::filesystem::path>& written) {
    std::filesystem::create_directories(dir);
    Market market = generate_market(spec);

    LmfConfig lcfg = cfg.lmf;
    lcfg.seed = cfg.lmf.seed + spec.seed;
    AlgorithmOutputs outs = run_algorithms(market, lcfg);

    {
        auto out = open_out(dir / "preferences.csv", written);
        write_preferences_csv(market.candidate_prefs, market.employer_prefs, out);
    }
    {
        auto out = open_out(dir / "metadata.json", written);
        nlohmann::json meta{{"candidates", spec.candidates},
                            {"employers", spec.employers},
                            {"prefs_per_candidate", spec.prefs_per_candidate},
                            {"seed", spec.seed},
                            {"lmf_seed", lcfg.seed},
                            {"convergence_rounds", outs.convergence_rounds}};
        out << meta.dump(2) << '\n';
    }

    auto table_for = [&](Algorithm algorithm) -> const MultiMatching& {
        switch (algorithm) {
            case Algorithm::Normal: return outs.normal;
            case Algorithm::Lmf: return outs.lmf.matches;
            default: return outs.mixed;
        }
    };

    for (Algorithm algorithm : cfg.algorithms) {
        auto out = open_out(dir / ("matches_" + algorithm_name(algorithm) + ".csv"), written);
        write_multimatching_csv(table_for(algorithm), out);
    }
    {
        auto out = open_out(dir / "dense_preferences.csv", written);
        write_preferences_csv(outs.lmf.dense_candidates, outs.lmf.dense_employers, out);
    }
    if (cfg.dump_factors) {
        auto cand = open_out(dir / "factors_candidates.csv", written);
        write_factor_csv(outs.lmf.candidate_factors, Side::Candidate, cand);
        auto emp = open_out(dir / "factors_employers.csv", written);
        write_factor_csv(outs.lmf.employer_factors, Side::Employer, emp);
    }

    auto disp = open_out(dir / "displacement.csv", written);
    auto withh = open_out(dir / "withholdings.csv", written);
    auto reten = open_out(dir / "retention.csv", written);
    write_metric_csv_header(disp);
    write_metric_csv_header(withh);
    write_metric_csv_header(reten);
    for (Algorithm algorithm : cfg.algorithms) {
        const MultiMatching& mm = table_for(algorithm);
        const std::string name = algorithm_name(algorithm);
        struct SideView {
            const MatchTable& matches;
            const PreferenceTable& stated;
            const PreferenceTable& dense;
            Side side;
        };
        const SideView views[2] = {
            {mm.candidates, market.candidate_prefs, outs.lmf.dense_candidates, Side::Candidate},
            {mm.employers, market.employer_prefs, outs.lmf.dense_employers, Side::Employer},
        };
        for (const SideView& view : views) {
            write_metric_csv_rows(
                algorithm_displacement(algorithm, view.matches, view.stated, view.dense,
                                       cfg.apply_penalties, cfg.penalty_per_round),
                "displacement", name, view.side, disp);
            write_metric_csv_rows(withholdings(view.matches), "withholdings", name, view.side,
                                  withh);
            write_metric_csv_rows(
                truncated(retention(view.matches, view.stated), cfg.retention_round_cap),
                "retention", name, view.side, reten);
        }
    }

    auto vacancy = open_out(dir / "vacancy.csv", written);
    auto log = open_out(dir / "acceptance_log.csv", written);
    write_vacancy_csv_header(vacancy);
    log << "mode,algorithm,round,employer,candidate\n";
    auto record = [&](const VacancyReport& report, const std::string& mode,
                      const std::string& name) {
        write_vacancy_csv_rows(report, mode, name, vacancy);
        for (const Acceptance& a : report.acceptances) {
            log << mode << ',' << name << ',' << a.round << ',' << a.employer + 1 << ','
                << a.candidate + 1 << '\n';
        }
    };
    record(simulate_market(build_plans(market.employer_prefs, assign_classes(spec.employers)),
                           spec.candidates),
           offer_source_name(OfferSource::RealWorld), "none");
    for (Algorithm algorithm : cfg.algorithms) {
        record(simulate_market(build_plans(table_for(algorithm).employers), spec.candidates),
               offer_source_name(OfferSource::FromMatches), algorithm_name(algorithm));
    }

    // Wall-clock comparison at a common round cap; the LMF time includes
    // factorization end to end.
    auto runtimes = open_out(dir / "runtimes.csv", written);
    runtimes << "algorithm,rounds_cap,milliseconds\n";
    MmdaaConfig capped{cfg.runtime_round_cap};
    auto start = Clock::now();
    MultiMatching normal10 = normal_mmdaa(market.candidate_prefs, market.employer_prefs, capped);
    double normal_ms = elapsed_ms(start);
    start = Clock::now();
    LmfRun lmf10 = lmf_mmdaa_run(market.candidate_prefs, market.employer_prefs, capped, lcfg);
    double lmf_ms = elapsed_ms(start);
    start = Clock::now();
    MultiMatching mixed10 = mixed_mmdaa(normal10.candidates, lmf10.matches.candidates,
                                        normal10.employers, lmf10.matches.employers);
    double mixed_ms = elapsed_ms(start);
    (void)mixed10;
    runtimes << "normal," << cfg.runtime_round_cap << ',' << format_double(normal_ms) << '\n';
    runtimes << "lmf," << cfg.runtime_round_cap << ',' << format_double(lmf_ms) << '\n';
    runtimes << "mixed," << cfg.runtime_round_cap << ',' << format_double(mixed_ms) << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.algorithms.empty()) throw std::invalid_argument("run_experiment: no algorithms");
    if (cfg.retention_round_cap < 1 || cfg.runtime_round_cap < 1) {
        throw std::invalid_argument("run_experiment: round caps must be >= 1");
    }
    std::vector<MarketSpec> specs = cfg.specs;
    if (cfg.include_surplus_proxy) {
        // Surplus-candidate market with mostly-disjoint applicant pools.
        MarketSpec proxy;
        proxy.candidates = 75;
        proxy.employers = 24;
        proxy.prefs_per_candidate = 3;
        proxy.seed = cfg.seed + 1000;
        specs.push_back(proxy);
    }
    if (specs.empty()) throw std::invalid_argument("run_experiment: no market specs");

    ExperimentResult result;
    std::vector<std::string> used_names;
    for (const MarketSpec& spec : specs) {
        std::string name =
            std::to_string(spec.candidates) + "x" + std::to_string(spec.employers);
        int suffix = 2;
        while (std::find(used_names.begin(), used_names.end(), name) != used_names.end()) {
            name = std::to_string(spec.candidates) + "x" + std::to_string(spec.employers) + "_" +
                   std::to_string(suffix++);
        }
        used_names.push_back(name);
        run_spec(cfg, spec, cfg.out_dir / name, result.written);
    }
    return result;
}

std::vector<FixtureOutcome> run_fixture_suite() {
    std::vector<FixtureOutcome> outcomes;

    {
        FixtureOutcome outcome{"dense-displacement", true, ""};
        auto ex = fixtures::dense_displacement_example();
        MetricSeries series = displacement(ex.matches, ex.prefs);
        std::ostringstream detail;
        if (series.rounds.size() != ex.expected.size()) {
            outcome.passed = false;
            detail << "round count " << series.rounds.size() << " != " << ex.expected.size();
        } else {
            for (std::size_t r = 0; r < ex.expected.size(); ++r) {
                // exact fraction comparison: total/participants
                if (series.rounds[r].total * ex.expected[r].participants !=
                        ex.expected[r].total * series.rounds[r].participants ||
                    series.rounds[r].participants != ex.expected[r].participants) {
                    outcome.passed = false;
                    detail << "round " << r + 1 << ": got " << series.rounds[r].total << "/"
                           << series.rounds[r].participants << ", expected "
                           << ex.expected[r].total << "/" << ex.expected[r].participants << "; ";
                }
            }
        }
        outcome.detail = detail.str();
        outcomes.push_back(outcome);
    }

    {
        FixtureOutcome outcome{"mixed-overlay", true, ""};
        auto ex = fixtures::mixed_overlay_example();
        std::ostringstream detail;
        MultiMatching mixed =
            mixed_mmdaa(ex.normal_cands, ex.lmf_cands, ex.normal_emps, ex.lmf_emps);
        if (!(mixed.candidates == ex.expected_mixed_cands)) {
            outcome.passed = false;
            detail << "filled candidate table differs from the worked example; ";
        }
        MetricSeries series = displacement(mixed.candidates, ex.stated_cands, &ex.dense_cands);
        for (std::size_t r = 0; r < ex.expected_displacement.size(); ++r) {
            if (r >= series.rounds.size() ||
                !(series.rounds[r] == ex.expected_displacement[r])) {
                outcome.passed = false;
                detail << "displacement round " << r + 1 << " differs; ";
            }
        }
        outcome.detail = detail.str();
        outcomes.push_back(outcome);
    }

    {
        FixtureOutcome outcome{"offer-market", true, ""};
        auto ex = fixtures::offer_market_example();
        std::ostringstream detail;
        VacancyReport report =
            simulate_market(build_plans(ex.employer_prefs,
                                        assign_classes(ex.employer_prefs.agent_count())),
                            ex.candidate_count);
        for (std::size_t r = 0; r < ex.expected_employer_vacancy.size(); ++r) {
            if (r >= report.employer_vacancy.size() ||
                report.employer_vacancy[r] != ex.expected_employer_vacancy[r]) {
                outcome.passed = false;
                detail << "employer vacancy round " << r + 1 << " differs; ";
            }
        }
        for (const Acceptance& required : ex.required_acceptances) {
            if (std::find(report.acceptances.begin(), report.acceptances.end(), required) ==
                report.acceptances.end()) {
                outcome.passed = false;
                detail << "missing acceptance: round " << required.round << " employer "
                       << required.employer + 1 << " candidate " << required.candidate + 1
                       << "; ";
            }
        }
        outcome.detail = detail.str();
        outcomes.push_back(outcome);
    }

    return outcomes;
}

}  // namespace jobmatch
