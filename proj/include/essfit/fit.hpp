#ifndef ESSFIT_FIT_HPP
#define ESSFIT_FIT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "essfit/ess.hpp"
#include "essfit/scales.hpp"

namespace essfit {

/// Ordinary least-squares line summary in log coordinates.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;   // 0 for exact fits and for n_points == 2
    double residual_rms = 0.0;   // sqrt(rss / n_points)
    std::size_t n_points = 0;
};

/**
 * Least-squares line through (x, y) pairs.
 *
 * Requires at least 2 points with non-degenerate x (throws DomainError
 * otherwise). slope_stderr is the usual residual-variance estimate
 * sqrt(rss / (n - 2) / Sxx), defined as 0 when n == 2.
 */
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/**
 * Shared-slope / free-intercept regression over point groups.
 *
 * All groups share one slope; each group gets its own intercept. The
 * returned LineFit carries the shared slope, the mean of the group
 * intercepts, residual_rms = sqrt(rss / N) over all N points, and
 * slope_stderr with N - groups - 1 residual degrees of freedom. With a
 * single group this reduces exactly to fit_line.
 */
LineFit fit_shared_slope(const std::vector<std::vector<EssPoint>>& groups);

/// Sum of squared residuals of a shared-slope fit (the quantity rss_shared).
double shared_slope_rss(const std::vector<std::vector<EssPoint>>& groups);

/// ESS slope fit of one experiment's inertial segment.
struct PerReFit {
    double re = 0.0;
    LineFit line;
    std::string label;
    std::optional<FlowParameters> flow;  // enables constant recovery downstream
};

/// A set skipped by fit_per_re, with the reason.
struct ExcludedSet {
    std::string label;
    std::string reason;
};

/// fit_per_re output: usable fits sorted by Re plus exclusion notes.
struct PerReFits {
    std::vector<PerReFit> fits;       // ascending in re
    std::vector<ExcludedSet> excluded;
};

/**
 * Fit a line to each experiment's inertial segment (points from
 * split_index onward; a set that never went through the splitter counts
 * as all-inertial).
 *
 * Sets missing re_tag throw ContractError. Sets with fewer than 2
 * inertial points are excluded with a note rather than failing the batch.
 */
PerReFits fit_per_re(const std::vector<EssPointSet>& sets);

/// Verdict of the shared-exponent versus Re-dependent-exponent comparison.
enum class PreferredModel { Shared, ReDependent };

struct HypothesisComparison {
    double rss_shared = 0.0;
    double rss_per_re = 0.0;
    PreferredModel preferred = PreferredModel::Shared;
    bool monotone_decreasing = false;  // per-Re slopes strictly decrease with Re
    LineFit shared_slope_fit;
};

struct CompareOptions {
    double margin = 0.05;  // prefer re_dependent when rss_per_re < rss_shared * (1 - margin)
};

/**
 * Compare the pooled shared-slope model against independent per-Re slopes
 * on the inertial segments. Requires at least 2 usable experiments with
 * distinct Re (throws DomainError otherwise).
 */
HypothesisComparison compare_hypotheses(const std::vector<EssPointSet>& sets,
                                        const CompareOptions& options = {});

/// Options for fit_incomplete_similarity's constant-recovery stage.
struct SimilarityOptions {
    bool with_constants = false;      // run stage 2
    std::optional<double> b3;         // third-order coefficient; required for stage 2
};

/// Joint similarity fit across Reynolds numbers.
struct SimilarityFit {
    std::vector<PerReFit> per_re;          // ascending in re
    double alpha1_hat = 0.0;
    std::optional<double> c0_hat;          // present only after constant recovery
    std::optional<double> c1_hat;
    double slope_model_residual_rms = 0.0; // rms of slope_j - (2/3 + alpha1_hat / ln re_j)
    std::optional<LineFit> shared_slope_fit;
    std::optional<HypothesisComparison> comparison;
};

/**
 * Two-stage incomplete-similarity fit.
 *
 * Stage 1 regresses slope_j - 2/3 on 1/ln(re_j) through the origin with
 * weights 1/slope_stderr_j^2 (uniform when any stderr is 0), yielding
 * alpha1_hat. Stage 2 (with_constants) inverts each intercept through
 * intercept = log10[C * eps^(2/3) * lambda_K^(-(slope - 2/3)) * (|b3| eps)^(-slope)]
 * and fits C(re) = c0 + c1/ln(re) by least squares; it requires b3 and a
 * flow on every entry (ContractError otherwise).
 *
 * Requires >= 2 distinct Re values, each > e (DomainError otherwise).
 */
SimilarityFit fit_incomplete_similarity(std::vector<PerReFit> per_re,
                                        const SimilarityOptions& options = {});

/**
 * Diagnostic regression of slope_j on 1/ln(re_j) with a free intercept;
 * the intercept's distance from 2/3 gauges the fixed-zero-order-term
 * assumption. Unweighted.
 */
LineFit fit_exponent_diagnostic(const std::vector<PerReFit>& per_re);

}  // namespace essfit

#endif
