#ifndef ESSFIT_ANALYSIS_HPP
#define ESSFIT_ANALYSIS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "essfit/ess.hpp"
#include "essfit/fit.hpp"
#include "essfit/io.hpp"
#include "essfit/scales.hpp"

namespace essfit {

/// Knobs shared by the fit / compare / report pipelines.
struct AnalysisConfig {
    SplitOptions split;
    CompareOptions compare;
    bool with_constants = false;      // recover c0, c1 (needs b3, eps, lambda_t)
    double b3 = 1.0;
    double eps = 1.0;                 // flow parameters assumed when rebuilding flows from re
    double lambda_t = 1.0;
    bool require_similarity = true;   // error out when < 2 Re-tagged experiments
};

/// Point sets plus optional per-set flow and provenance, aligned by index.
struct AnalysisInput {
    std::vector<EssPointSet> sets;
    std::vector<std::optional<FlowParameters>> flows;  // empty or sets.size()
    std::vector<std::string> provenances;              // empty or sets.size()
};

/// Everything the fit / compare / report commands derive from the input.
struct AnalysisResult {
    std::vector<EssPointSet> sets;          // with split_index engaged
    std::vector<SlopeProfile> profiles;     // anchored, parallel to sets
    std::vector<std::string> provenances;   // parallel to sets
    PerReFits per_re;
    std::optional<SimilarityFit> similarity;
    std::optional<HypothesisComparison> comparison;
};

/**
 * Adapt CSV records to pipeline input. When config.with_constants is set,
 * a flow is reconstructed for every Re-tagged record from (re, eps,
 * lambda_t); otherwise flows stay empty.
 */
AnalysisInput input_from_records(const std::vector<ExperimentRecord>& records,
                                 const AnalysisConfig& config);

/**
 * Run the full chain: split each set, take anchored slope profiles, fit
 * per-Re lines (untagged sets are excluded with a note), fit the
 * incomplete-similarity model, and compare the shared-slope hypothesis.
 *
 * Requires >= 2 usable Re-tagged experiments (DomainError: "need >= 2
 * Reynolds numbers" otherwise). flows, when given, must align with sets
 * (ContractError otherwise).
 */
AnalysisResult run_analysis(const AnalysisInput& input, const AnalysisConfig& config);

/**
 * Assemble the serializable report: experiment summaries with profile
 * endpoints, per-Re fits, similarity and comparison outcomes, the given
 * configuration echo and input digests, the library version, and a UTC
 * timestamp unless suppressed.
 */
AnalysisReport make_report(const AnalysisResult& result,
                           const std::map<std::string, std::string>& config_echo,
                           const std::map<std::string, std::string>& digests,
                           bool with_timestamp);

}  // namespace essfit

#endif
