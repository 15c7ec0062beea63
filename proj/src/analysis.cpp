#include "essfit/analysis.hpp"

#include <ctime>

#include "essfit/error.hpp"
#include "essfit/version.hpp"

namespace essfit {

AnalysisInput input_from_records(const std::vector<ExperimentRecord>& records,
                                 const AnalysisConfig& config) {
    AnalysisInput input;
    input.sets.reserve(records.size());
    input.provenances.reserve(records.size());
    if (config.with_constants) {
        input.flows.reserve(records.size());
    }
    for (const ExperimentRecord& record : records) {
        input.sets.push_back(record.points);
        input.provenances.push_back(record.provenance);
        if (config.with_constants) {
            if (record.re) {
                input.flows.emplace_back(
                    flow_for_reynolds(*record.re, config.eps, config.lambda_t));
            } else {
                input.flows.emplace_back(std::nullopt);
            }
        }
    }
    return input;
}

AnalysisResult run_analysis(const AnalysisInput& input, const AnalysisConfig& config) {
    if (!input.flows.empty() && input.flows.size() != input.sets.size()) {
        throw ContractError("flows must be empty or match the set count");
    }
    if (!input.provenances.empty() && input.provenances.size() != input.sets.size()) {
        throw ContractError("provenances must be empty or match the set count");
    }

    AnalysisResult result;
    result.sets.reserve(input.sets.size());
    result.profiles.reserve(input.sets.size());
    result.provenances.reserve(input.sets.size());
    for (std::size_t i = 0; i < input.sets.size(); ++i) {
        const std::optional<FlowParameters> flow =
            input.flows.empty() ? std::nullopt : input.flows[i];
        result.sets.push_back(split_dissipation_range(input.sets[i], flow, config.split));
        result.profiles.push_back(anchored_local_slopes(result.sets[i]));
        result.provenances.push_back(input.provenances.empty() ? "" : input.provenances[i]);
    }

    std::vector<EssPointSet> tagged;
    std::vector<std::optional<FlowParameters>> tagged_flows;
    for (std::size_t i = 0; i < result.sets.size(); ++i) {
        if (result.sets[i].re_tag) {
            tagged.push_back(result.sets[i]);
            tagged_flows.push_back(input.flows.empty() ? std::nullopt : input.flows[i]);
        }
    }

    result.per_re = fit_per_re(tagged);
    for (const EssPointSet& set : result.sets) {
        if (!set.re_tag) {
            result.per_re.excluded.push_back(
                {set.label, "no Reynolds number tag, excluded from similarity fit"});
        }
    }

    // reattach flows: fits are sorted by re, so match each to the first
    // unconsumed tagged set with the same label and re
    std::vector<bool> consumed(tagged.size(), false);
    for (PerReFit& fit : result.per_re.fits) {
        for (std::size_t i = 0; i < tagged.size(); ++i) {
            if (!consumed[i] && tagged[i].label == fit.label && *tagged[i].re_tag == fit.re) {
                fit.flow = tagged_flows[i];
                consumed[i] = true;
                break;
            }
        }
    }

    if (result.per_re.fits.size() >= 2) {
        SimilarityOptions options;
        options.with_constants = config.with_constants;
        if (config.with_constants) {
            options.b3 = config.b3;
        }
        result.similarity = fit_incomplete_similarity(result.per_re.fits, options);
        result.comparison = compare_hypotheses(tagged, config.compare);
        result.similarity->shared_slope_fit = result.comparison->shared_slope_fit;
        result.similarity->comparison = result.comparison;
    } else if (config.require_similarity) {
        std::string what = "need >= 2 Reynolds numbers";
        for (const ExcludedSet& excluded : result.per_re.excluded) {
            what += "; excluded " + excluded.label + ": " + excluded.reason;
        }
        throw DomainError(what);
    }
    return result;
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buf;
}

}  // namespace

AnalysisReport make_report(const AnalysisResult& result,
                           const std::map<std::string, std::string>& config_echo,
                           const std::map<std::string, std::string>& digests,
                           bool with_timestamp) {
    AnalysisReport report;
    report.version = ESSFIT_VERSION;
    if (with_timestamp) {
        report.timestamp = utc_timestamp();
    }

    for (std::size_t i = 0; i < result.sets.size(); ++i) {
        const EssPointSet& set = result.sets[i];
        ExperimentSummary summary;
        summary.label = set.label;
        summary.re = set.re_tag;
        summary.n_points = set.points.size();
        summary.split_index = set.split_index;
        if (!result.profiles[i].entries.empty()) {
            summary.anchored_slope_first = result.profiles[i].entries.front().slope;
            summary.anchored_slope_last = result.profiles[i].entries.back().slope;
        }
        summary.provenance = result.provenances[i];
        report.experiments.push_back(std::move(summary));
    }

    report.per_re_fits = result.per_re.fits;
    report.excluded = result.per_re.excluded;
    if (result.similarity) {
        SimilaritySummary summary;
        summary.alpha1_hat = result.similarity->alpha1_hat;
        summary.c0_hat = result.similarity->c0_hat;
        summary.c1_hat = result.similarity->c1_hat;
        summary.slope_model_residual_rms = result.similarity->slope_model_residual_rms;
        report.similarity_fit = summary;
    }
    report.comparison = result.comparison;
    report.config = config_echo;
    report.digests = digests;
    return report;
}

}  // namespace essfit
