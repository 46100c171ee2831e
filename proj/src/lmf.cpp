#include "jobmatch/lmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "jobmatch/rng.hpp"

namespace jobmatch {

std::size_t ScoreMatrix::observed_count() const {
    std::size_t n = 0;
    for (auto b : mask) n += b;
    return n;
}

ScoreMatrix make_score_matrix(int rows, int cols) {
    ScoreMatrix s;
    s.rows = rows;
    s.cols = cols;
    s.values.assign(static_cast<std::size_t>(rows) * cols, 0.0);
    s.mask.assign(static_cast<std::size_t>(rows) * cols, 0);
    return s;
}

ScoreMatrix ranks_to_scores(const PreferenceTable& table, int counterpart_count) {
    require_valid(table, counterpart_count, "ranks_to_scores");
    std::size_t rmax = 0;
    for (const auto& row : table.rows()) rmax = std::max(rmax, row.size());
    if (rmax == 0) throw std::invalid_argument("ranks_to_scores: nothing to factorize");

    ScoreMatrix scores = make_score_matrix(table.agent_count(), counterpart_count);
    for (int agent = 0; agent < table.agent_count(); ++agent) {
        const auto& row = table.row(agent);
        for (int pos = 0; pos < static_cast<int>(row.size()); ++pos) {
            scores.set(agent, row[pos], static_cast<double>(rmax) - pos);
        }
    }
    return scores;
}

namespace {

struct Observation {
    int row;
    int col;
    double value;
};

struct PgState {
    int n, m, f;
    double lambda;
    std::vector<Observation> obs;

    double loss(const std::vector<double>& w, const std::vector<double>& h) const {
        double acc = 0.0;
        for (const auto& o : obs) {
            double r = dot(w, h, o.row, o.col) - o.value;
            acc += r * r;
        }
        double reg = 0.0;
        for (double x : w) reg += x * x;
        for (double x : h) reg += x * x;
        return acc + lambda * reg;
    }

    double dot(const std::vector<double>& w, const std::vector<double>& h, int r, int c) const {
        double acc = 0.0;
        const double* wr = w.data() + static_cast<std::size_t>(r) * f;
        for (int k = 0; k < f; ++k) acc += wr[k] * h[static_cast<std::size_t>(k) * m + c];
        return acc;
    }

    // Gradients of the masked loss w.r.t. both factors.
    void gradients(const std::vector<double>& w, const std::vector<double>& h,
                   std::vector<double>& gw, std::vector<double>& gh) const {
        gw.assign(w.size(), 0.0);
        gh.assign(h.size(), 0.0);
        for (const auto& o : obs) {
            double r = 2.0 * (dot(w, h, o.row, o.col) - o.value);
            double* gwr = gw.data() + static_cast<std::size_t>(o.row) * f;
            const double* wr = w.data() + static_cast<std::size_t>(o.row) * f;
            for (int k = 0; k < f; ++k) {
                gwr[k] += r * h[static_cast<std::size_t>(k) * m + o.col];
                gh[static_cast<std::size_t>(k) * m + o.col] += r * wr[k];
            }
        }
        for (std::size_t i = 0; i < w.size(); ++i) gw[i] += 2.0 * lambda * w[i];
        for (std::size_t i = 0; i < h.size(); ++i) gh[i] += 2.0 * lambda * h[i];
    }
};

// One projected-gradient step with Armijo backtracking on `target`. Returns
// the accepted loss; leaves `target` unchanged (and returns `current_loss`)
// when no acceptable step exists, so the loss never increases.
double pg_step(PgState& state, std::vector<double>& target, const std::vector<double>& gradient,
               const std::vector<double>& w, const std::vector<double>& h, bool target_is_left,
               double current_loss, double& step) {
    constexpr double kSigma = 0.01;
    constexpr double kShrink = 0.5;
    constexpr int kMaxTrials = 24;

    std::vector<double> trial(target.size());
    for (int attempt = 0; attempt < kMaxTrials; ++attempt) {
        double descent = 0.0;
        for (std::size_t i = 0; i < target.size(); ++i) {
            trial[i] = std::max(0.0, target[i] - step * gradient[i]);
            descent += gradient[i] * (trial[i] - target[i]);
        }
        double trial_loss =
            target_is_left ? state.loss(trial, h) : state.loss(w, trial);
        if (!std::isfinite(trial_loss)) {
            throw std::runtime_error("nnmf: non-finite loss during line search (step " +
                                     std::to_string(step) + ")");
        }
        if (trial_loss - current_loss <= kSigma * descent) {
            target.swap(trial);
            // Allow the next step to grow again after an easy acceptance.
            if (attempt == 0) step /= kShrink;
            return trial_loss;
        }
        step *= kShrink;
        if (step < 1e-18) break;
    }
    return current_loss;
}

}  // namespace

FactorPair nnmf(const ScoreMatrix& matrix, const LmfConfig& cfg, NnmfTrace* trace) {
    const int n = matrix.rows;
    const int m = matrix.cols;
    if (n == 0 || m == 0 || matrix.observed_count() == 0) {
        throw std::invalid_argument("nnmf: no observed cells");
    }
    int f = cfg.rank > 0 ? cfg.rank : std::min(10, std::min(n, m));
    if (f > std::min(n, m)) {
        throw std::invalid_argument("nnmf: rank " + std::to_string(f) +
                                    " exceeds min(rows, cols)");
    }
    if (cfg.tolerance <= 0.0) throw std::invalid_argument("nnmf: tolerance must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("nnmf: max_iterations must be >= 1");

    PgState state;
    state.n = n;
    state.m = m;
    state.f = f;
    state.lambda = cfg.regularization;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < m; ++c) {
            if (matrix.observed(r, c)) state.obs.push_back({r, c, matrix.value(r, c)});
        }
    }

    Rng rng(cfg.seed);
    std::vector<double> w(static_cast<std::size_t>(n) * f);
    std::vector<double> h(static_cast<std::size_t>(f) * m);
    for (auto& x : w) x = rng.uniform();
    for (auto& x : h) x = rng.uniform();

    std::vector<double> gw, gh;
    double loss = state.loss(w, h);
    if (trace) {
        trace->losses.clear();
        trace->losses.push_back(loss);
        trace->iterations = 0;
    }

    double step_w = 1.0;
    double step_h = 1.0;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        state.gradients(w, h, gw, gh);
        double after_w = pg_step(state, w, gw, w, h, /*target_is_left=*/true, loss, step_w);
        state.gradients(w, h, gw, gh);
        double after_h = pg_step(state, h, gh, w, h, /*target_is_left=*/false, after_w, step_h);
        if (!std::isfinite(after_h)) {
            throw std::runtime_error("nnmf: non-finite loss at iteration " + std::to_string(iter));
        }
        double previous = loss;
        loss = after_h;
        if (trace) {
            trace->losses.push_back(loss);
            trace->iterations = iter + 1;
        }
        double denom = std::max(previous, 1e-12);
        if ((previous - loss) / denom < cfg.tolerance) break;
    }

    FactorPair factors;
    factors.rows = n;
    factors.cols = m;
    factors.rank = f;
    factors.left = std::move(w);
    factors.right = std::move(h);
    return factors;
}

PreferenceTable densify(const PreferenceTable& original, const FactorPair& factors,
                        Reconciliation mode) {
    if (factors.rows != original.agent_count()) {
        throw std::invalid_argument("densify: factor rows do not match agent count");
    }
    const int m = factors.cols;
    require_valid(original, m, "densify");

    std::vector<std::vector<int>> dense_rows(original.agent_count());
    std::vector<double> scores(m);
    std::vector<int> order(m);
    for (int agent = 0; agent < original.agent_count(); ++agent) {
        for (int c = 0; c < m; ++c) scores[c] = factors.reconstruct(agent, c);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (scores[a] != scores[b]) return scores[a] > scores[b];
            return a < b;
        });

        const auto& stated = original.row(agent);
        if (mode == Reconciliation::LearnedOrder || stated.empty()) {
            dense_rows[agent] = order;
            continue;
        }
        std::unordered_set<int> stated_set(stated.begin(), stated.end());
        if (mode == Reconciliation::StatedFirst) {
            std::vector<int> row(stated);
            for (int c : order) {
                if (!stated_set.contains(c)) row.push_back(c);
            }
            dense_rows[agent] = std::move(row);
            continue;
        }
        // StatedRelativeOrder: stated items are reassigned into the list
        // positions they occupy, in their originally stated order; inferred
        // items keep their learned positions.
        std::vector<int> row = order;
        std::size_t next_stated = 0;
        for (int pos = 0; pos < m; ++pos) {
            if (stated_set.contains(order[pos])) row[pos] = stated[next_stated++];
        }
        dense_rows[agent] = std::move(row);
    }
    return PreferenceTable(original.side(), std::move(dense_rows));
}

LmfRun lmf_mmdaa_run(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                     const MmdaaConfig& mcfg, const LmfConfig& lcfg) {
    const int n = cand_prefs.agent_count();
    const int m = emp_prefs.agent_count();
    require_valid(cand_prefs, m, "lmf_mmdaa");
    require_valid(emp_prefs, n, "lmf_mmdaa");

    LmfConfig cand_cfg = lcfg;
    LmfConfig emp_cfg = lcfg;
    emp_cfg.seed = lcfg.seed + 1;

    FactorPair cand_factors = nnmf(ranks_to_scores(cand_prefs, m), cand_cfg);
    FactorPair emp_factors = nnmf(ranks_to_scores(emp_prefs, n), emp_cfg);
    PreferenceTable dense_cands = densify(cand_prefs, cand_factors, lcfg.reconciliation);
    PreferenceTable dense_emps = densify(emp_prefs, emp_factors, lcfg.reconciliation);

    MultiMatching matches = normal_mmdaa(dense_cands, dense_emps, mcfg);

    // Provenance: Stated iff the matched counterpart was in the agent's
    // original (sparse) row.
    auto tag = [](MatchTable table, const PreferenceTable& original) {
        std::vector<std::vector<MatchCell>> rows = table.rows();
        for (int agent = 0; agent < table.agent_count(); ++agent) {
            const auto& stated = original.row(agent);
            std::unordered_set<int> stated_set(stated.begin(), stated.end());
            for (MatchCell& cell : rows[agent]) {
                if (cell.counterpart == kNone) continue;
                cell.provenance = stated_set.contains(cell.counterpart) ? Provenance::Stated
                                                                        : Provenance::Inferred;
            }
        }
        return MatchTable(table.side(), table.counterpart_count(), table.round_count(),
                          std::move(rows));
    };

    return LmfRun{MultiMatching{tag(std::move(matches.candidates), cand_prefs),
                                tag(std::move(matches.employers), emp_prefs)},
                  std::move(dense_cands), std::move(dense_emps), std::move(cand_factors),
                  std::move(emp_factors)};
}

MultiMatching lmf_mmdaa(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                        const MmdaaConfig& mcfg, const LmfConfig& lcfg) {
    return lmf_mmdaa_run(cand_prefs, emp_prefs, mcfg, lcfg).matches;
}

}  // namespace jobmatch
