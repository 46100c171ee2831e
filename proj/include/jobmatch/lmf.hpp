#pragma once

#include <cstdint>
#include <vector>

#include "jobmatch/core.hpp"
#include "jobmatch/mmdaa.hpp"

namespace jobmatch {

/// Masked non-negative score matrix. Unobserved cells hold 0 and are ignored
/// by the factorization loss.
struct ScoreMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;        // row-major, rows * cols
    std::vector<std::uint8_t> mask;    // 1 = observed

    double value(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
    bool observed(int r, int c) const { return mask[static_cast<std::size_t>(r) * cols + c] != 0; }
    void set(int r, int c, double v) {
        values[static_cast<std::size_t>(r) * cols + c] = v;
        mask[static_cast<std::size_t>(r) * cols + c] = 1;
    }
    std::size_t observed_count() const;
};

ScoreMatrix make_score_matrix(int rows, int cols);

/// Non-negative factors: left is rows x rank, right is rank x cols.
struct FactorPair {
    int rows = 0;
    int cols = 0;
    int rank = 0;
    std::vector<double> left;   // row-major
    std::vector<double> right;  // row-major

    double reconstruct(int r, int c) const {
        double acc = 0.0;
        for (int k = 0; k < rank; ++k) {
            acc += left[static_cast<std::size_t>(r) * rank + k] *
                   right[static_cast<std::size_t>(k) * cols + c];
        }
        return acc;
    }
};

/// How densified rows reconcile learned scores with the stated ranking.
enum class Reconciliation {
    LearnedOrder,         // use the factorization's order as is
    StatedRelativeOrder,  // stated items keep their relative order, inferred items interleave
    StatedFirst,          // stated items first, learned order only for the rest
};

struct LmfConfig {
    int rank = 0;                 // 0 = auto: min(10, min(n, m))
    int max_iterations = 500;
    double tolerance = 1e-4;      // stop when relative loss decrease falls below
    double regularization = 0.01; // lambda on squared factor norms
    std::uint64_t seed = 0;
    Reconciliation reconciliation = Reconciliation::StatedRelativeOrder;
};

/// Positional ranks to scores: an entry at 0-based position r scores
/// Rmax - r, where Rmax is the longest row in the table, so every observed
/// score is positive and ordinal spacing is preserved. Throws when the table
/// has no stated entries anywhere ("nothing to factorize").
ScoreMatrix ranks_to_scores(const PreferenceTable& table, int counterpart_count);

struct NnmfTrace {
    std::vector<double> losses;  // loss after each iteration (index 0 = initial)
    int iterations = 0;
};

/// Alternating projected-gradient NNMF on the observed cells:
/// minimize sum_observed (v - left*right)^2 + lambda(|left|^2 + |right|^2)
/// with backtracking step sizes and projection onto the non-negative orthant.
/// Factors initialize uniform on (0,1) from cfg.seed; deterministic.
FactorPair nnmf(const ScoreMatrix& matrix, const LmfConfig& cfg, NnmfTrace* trace = nullptr);

/// Completes every row into a total order over all counterparts. Inferred
/// items are placed by descending reconstructed score (ties by ascending
/// index); under StatedRelativeOrder the stated items are then reassigned
/// into the list positions they occupy, in their originally stated order.
PreferenceTable densify(const PreferenceTable& original, const FactorPair& factors,
                        Reconciliation mode = Reconciliation::StatedRelativeOrder);

struct LmfRun {
    MultiMatching matches;
    PreferenceTable dense_candidates;
    PreferenceTable dense_employers;
    FactorPair candidate_factors;
    FactorPair employer_factors;
};

/// Factorizes each side independently (employer side uses cfg.seed + 1),
/// densifies both tables, and runs the normal MMDAA on the dense tables.
/// Cells whose counterpart appears in the agent's original row carry
/// provenance Stated, all others Inferred.
LmfRun lmf_mmdaa_run(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                     const MmdaaConfig& mcfg, const LmfConfig& lcfg);

MultiMatching lmf_mmdaa(const PreferenceTable& cand_prefs, const PreferenceTable& emp_prefs,
                        const MmdaaConfig& mcfg, const LmfConfig& lcfg);

}  // namespace jobmatch
