#include "essfit/c_api.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "essfit/analysis.hpp"
#include "essfit/error.hpp"
#include "essfit/ess.hpp"
#include "essfit/estimator.hpp"
#include "essfit/fit.hpp"
#include "essfit/io.hpp"
#include "essfit/scales.hpp"
#include "essfit/signal.hpp"
#include "essfit/synth.hpp"
#include "essfit/version.hpp"

struct essfit_dataset {
    std::vector<essfit::EssPointSet> sets;
    std::vector<std::optional<essfit::FlowParameters>> flows;  // empty or sets.size()
    std::vector<std::string> provenances;                      // sets.size()
};

struct essfit_signal {
    essfit::VelocitySignal signal;
};

struct essfit_curve {
    essfit::StructureFunctionCurve curve;
};

struct essfit_result {
    essfit::AnalysisResult result;
};

namespace {

thread_local std::string t_last_error;

void remember(const char* what) {
    t_last_error = what;
}

template <typename Fn>
essfit_status guarded(Fn&& fn) {
    try {
        fn();
        return ESSFIT_OK;
    } catch (const essfit::DomainError& e) {
        remember(e.what());
        return ESSFIT_ERROR_DOMAIN;
    } catch (const essfit::ContractError& e) {
        remember(e.what());
        return ESSFIT_ERROR_CONTRACT;
    } catch (const essfit::DegenerateInputError& e) {
        remember(e.what());
        return ESSFIT_ERROR_DEGENERATE;
    } catch (const essfit::IoError& e) {
        remember(e.what());
        return ESSFIT_ERROR_IO;
    } catch (const std::exception& e) {
        remember(e.what());
        return ESSFIT_ERROR_INTERNAL;
    } catch (...) {
        remember("unknown failure");
        return ESSFIT_ERROR_INTERNAL;
    }
}

essfit_status null_argument(const char* name) {
    t_last_error = std::string(name) + " must not be NULL";
    return ESSFIT_ERROR_NULL;
}

essfit::MomentKind to_moment_kind(essfit_moment_kind kind) {
    return kind == ESSFIT_MOMENT_SIGNED ? essfit::MomentKind::Signed
                                        : essfit::MomentKind::Absolute;
}

constexpr int kDefaultPointsPerDecade = 8;

}  // namespace

extern "C" {

const char* essfit_version(void) {
    return ESSFIT_VERSION;
}

const char* essfit_last_error(void) {
    return t_last_error.c_str();
}

void essfit_synth_params_init(essfit_synth_params* params) {
    if (params == nullptr) {
        return;
    }
    params->re = nullptr;
    params->n_re = 0;
    params->alpha1 = 0.29;
    params->c0 = 1.5;
    params->c1 = 2.0;
    params->b3 = 1.0;
    params->eps = 1.0;
    params->lambda_t = 1.0;
    params->sharpness = 1.0;
    params->noise_sigma = 0.0;
    params->seed = 0;
    params->r_min = 0.02;
    params->r_max = 0.5;
    params->n_points = 48;
}

essfit_status essfit_dataset_synthesize(const essfit_synth_params* params, essfit_dataset** out) {
    if (params == nullptr) return null_argument("params");
    if (out == nullptr) return null_argument("out");
    if (params->re == nullptr || params->n_re == 0) return null_argument("params->re");
    return guarded([&] {
        essfit::SyntheticSpec spec;
        spec.model.alpha1 = params->alpha1;
        spec.model.c0 = params->c0;
        spec.model.c1 = params->c1;
        spec.model.b3 = params->b3;
        spec.crossover_sharpness = params->sharpness;
        spec.noise_sigma = params->noise_sigma;
        spec.seed = params->seed;
        spec.r_grid = essfit::log_spaced_grid(params->r_min, params->r_max, params->n_points);
        spec.flows.reserve(params->n_re);
        for (size_t i = 0; i < params->n_re; ++i) {
            spec.flows.push_back(
                essfit::flow_for_reynolds(params->re[i], params->eps, params->lambda_t));
        }

        auto dataset = std::make_unique<essfit_dataset>();
        dataset->sets = essfit::synth_ess_dataset(spec);
        dataset->flows.assign(spec.flows.begin(), spec.flows.end());
        dataset->provenances.assign(dataset->sets.size(), "synthetic");
        *out = dataset.release();
    });
}

essfit_status essfit_dataset_from_csv(const char* path, essfit_dataset** out) {
    if (path == nullptr) return null_argument("path");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        auto dataset = std::make_unique<essfit_dataset>();
        for (essfit::ExperimentRecord& record : essfit::read_ess_csv(path)) {
            dataset->sets.push_back(std::move(record.points));
            dataset->provenances.push_back(record.provenance);
        }
        *out = dataset.release();
    });
}

essfit_status essfit_dataset_from_signal(const essfit_signal* signal, essfit_moment_kind kind,
                                         int points_per_decade, const char* label, double re,
                                         essfit_dataset** out) {
    if (signal == nullptr) return null_argument("signal");
    if (label == nullptr) return null_argument("label");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        const int ppd = points_per_decade <= 0 ? kDefaultPointsPerDecade : points_per_decade;
        const std::vector<std::size_t> lags =
            essfit::default_lag_grid(signal->signal.samples.size(), ppd);
        const essfit::StructureFunctionCurve d2 =
            essfit::structure_function(signal->signal, 2, lags, to_moment_kind(kind));
        const essfit::StructureFunctionCurve d3 =
            essfit::structure_function(signal->signal, 3, lags, to_moment_kind(kind));
        essfit::BuildEssResult built = essfit::build_ess(d2, d3);
        built.set.label = label;
        if (!std::isnan(re)) {
            if (!(re > 1.0)) {
                throw essfit::DomainError("Reynolds number must exceed 1");
            }
            built.set.re_tag = re;
        }

        auto dataset = std::make_unique<essfit_dataset>();
        dataset->sets.push_back(std::move(built.set));
        dataset->provenances.push_back(signal->signal.label.empty() ? "signal"
                                                                    : signal->signal.label);
        *out = dataset.release();
    });
}

essfit_status essfit_dataset_write_csv(const essfit_dataset* dataset, const char* path,
                                       const char* comment) {
    if (dataset == nullptr) return null_argument("dataset");
    if (path == nullptr) return null_argument("path");
    return guarded([&] {
        essfit::write_ess_csv(dataset->sets, path, comment == nullptr ? "" : comment);
    });
}

size_t essfit_dataset_count(const essfit_dataset* dataset) {
    return dataset == nullptr ? 0 : dataset->sets.size();
}

const char* essfit_dataset_label(const essfit_dataset* dataset, size_t index) {
    if (dataset == nullptr || index >= dataset->sets.size()) {
        remember("dataset index out of range");
        return nullptr;
    }
    return dataset->sets[index].label.c_str();
}

int essfit_dataset_re(const essfit_dataset* dataset, size_t index, double* re) {
    if (dataset == nullptr || index >= dataset->sets.size() ||
        !dataset->sets[index].re_tag.has_value()) {
        return 0;
    }
    if (re != nullptr) {
        *re = *dataset->sets[index].re_tag;
    }
    return 1;
}

size_t essfit_dataset_point_count(const essfit_dataset* dataset, size_t index) {
    if (dataset == nullptr || index >= dataset->sets.size()) {
        return 0;
    }
    return dataset->sets[index].points.size();
}

void essfit_dataset_free(essfit_dataset* dataset) {
    delete dataset;
}

essfit_status essfit_signal_synthesize(size_t n, double spectrum_exponent, double spacing,
                                       uint64_t seed, essfit_signal** out) {
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        auto handle = std::make_unique<essfit_signal>();
        handle->signal = essfit::synth_velocity_signal(n, spectrum_exponent, spacing, seed);
        *out = handle.release();
    });
}

essfit_status essfit_signal_read(const char* path, essfit_signal** out) {
    if (path == nullptr) return null_argument("path");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        auto handle = std::make_unique<essfit_signal>();
        handle->signal = essfit::read_signal(path);
        handle->signal.label = path;
        *out = handle.release();
    });
}

essfit_status essfit_signal_write(const essfit_signal* signal, const char* path) {
    if (signal == nullptr) return null_argument("signal");
    if (path == nullptr) return null_argument("path");
    return guarded([&] { essfit::write_signal(signal->signal, path); });
}

size_t essfit_signal_length(const essfit_signal* signal) {
    return signal == nullptr ? 0 : signal->signal.samples.size();
}

double essfit_signal_spacing(const essfit_signal* signal) {
    return signal == nullptr ? 0.0 : signal->signal.spacing;
}

void essfit_signal_free(essfit_signal* signal) {
    delete signal;
}

essfit_status essfit_signal_structure_function(const essfit_signal* signal, int order,
                                               essfit_moment_kind kind, int points_per_decade,
                                               essfit_curve** out) {
    if (signal == nullptr) return null_argument("signal");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        const int ppd = points_per_decade <= 0 ? kDefaultPointsPerDecade : points_per_decade;
        const std::vector<std::size_t> lags =
            essfit::default_lag_grid(signal->signal.samples.size(), ppd);
        auto handle = std::make_unique<essfit_curve>();
        handle->curve =
            essfit::structure_function(signal->signal, order, lags, to_moment_kind(kind));
        *out = handle.release();
    });
}

size_t essfit_curve_length(const essfit_curve* curve) {
    return curve == nullptr ? 0 : curve->curve.separations.size();
}

size_t essfit_curve_copy(const essfit_curve* curve, double* separations, double* values,
                         uint64_t* sample_counts, size_t capacity) {
    if (curve == nullptr) {
        return 0;
    }
    const size_t count = std::min(capacity, curve->curve.separations.size());
    for (size_t i = 0; i < count; ++i) {
        if (separations != nullptr) separations[i] = curve->curve.separations[i];
        if (values != nullptr) values[i] = curve->curve.values[i];
        if (sample_counts != nullptr) {
            sample_counts[i] = static_cast<uint64_t>(curve->curve.sample_counts[i]);
        }
    }
    return count;
}

essfit_status essfit_curve_write_csv(const essfit_curve* curve, const char* path) {
    if (curve == nullptr) return null_argument("curve");
    if (path == nullptr) return null_argument("path");
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw essfit::IoError(std::string("cannot write '") + path + "'");
        }
        out << "# order=" << curve->curve.order << " kind="
            << (curve->curve.kind == essfit::MomentKind::Signed ? "signed" : "absolute") << "\n";
        out << "r,value,count\n";
        for (size_t i = 0; i < curve->curve.separations.size(); ++i) {
            out << essfit::format_double(curve->curve.separations[i]) << ","
                << essfit::format_double(curve->curve.values[i]) << ","
                << curve->curve.sample_counts[i] << "\n";
        }
        if (!out) {
            throw essfit::IoError(std::string("write failed for '") + path + "'");
        }
    });
}

void essfit_curve_free(essfit_curve* curve) {
    delete curve;
}

void essfit_analysis_config_init(essfit_analysis_config* config) {
    if (config == nullptr) {
        return;
    }
    config->k_threshold = 10.0;
    config->slope_tol = 0.01;
    config->margin = 0.05;
    config->with_constants = 0;
    config->b3 = 1.0;
    config->eps = 1.0;
    config->lambda_t = 1.0;
    config->require_similarity = 1;
}

essfit_status essfit_analyze(const essfit_dataset* dataset, const essfit_analysis_config* config,
                             essfit_result** out) {
    if (dataset == nullptr) return null_argument("dataset");
    if (config == nullptr) return null_argument("config");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        essfit::AnalysisConfig cxx_config;
        cxx_config.split.k_threshold = config->k_threshold;
        cxx_config.split.slope_tol = config->slope_tol;
        cxx_config.compare.margin = config->margin;
        cxx_config.with_constants = config->with_constants != 0;
        cxx_config.b3 = config->b3;
        cxx_config.eps = config->eps;
        cxx_config.lambda_t = config->lambda_t;
        cxx_config.require_similarity = config->require_similarity != 0;

        essfit::AnalysisInput input;
        input.sets = dataset->sets;
        input.provenances = dataset->provenances;
        if (!dataset->flows.empty()) {
            input.flows = dataset->flows;
        } else if (cxx_config.with_constants) {
            input.flows.reserve(dataset->sets.size());
            for (const essfit::EssPointSet& set : dataset->sets) {
                if (set.re_tag) {
                    input.flows.emplace_back(essfit::flow_for_reynolds(
                        *set.re_tag, cxx_config.eps, cxx_config.lambda_t));
                } else {
                    input.flows.emplace_back(std::nullopt);
                }
            }
        }

        auto handle = std::make_unique<essfit_result>();
        handle->result = essfit::run_analysis(input, cxx_config);
        *out = handle.release();
    });
}

size_t essfit_result_fit_count(const essfit_result* result) {
    return result == nullptr ? 0 : result->result.per_re.fits.size();
}

essfit_status essfit_result_fit(const essfit_result* result, size_t index, double* re,
                                essfit_line_fit* fit) {
    if (result == nullptr) return null_argument("result");
    if (index >= result->result.per_re.fits.size()) {
        remember("fit index out of range");
        return ESSFIT_ERROR_CONTRACT;
    }
    const essfit::PerReFit& entry = result->result.per_re.fits[index];
    if (re != nullptr) {
        *re = entry.re;
    }
    if (fit != nullptr) {
        fit->slope = entry.line.slope;
        fit->intercept = entry.line.intercept;
        fit->slope_stderr = entry.line.slope_stderr;
        fit->residual_rms = entry.line.residual_rms;
        fit->n_points = entry.line.n_points;
    }
    return ESSFIT_OK;
}

const char* essfit_result_fit_label(const essfit_result* result, size_t index) {
    if (result == nullptr || index >= result->result.per_re.fits.size()) {
        remember("fit index out of range");
        return nullptr;
    }
    return result->result.per_re.fits[index].label.c_str();
}

essfit_status essfit_result_alpha1(const essfit_result* result, double* alpha1_hat) {
    if (result == nullptr) return null_argument("result");
    if (alpha1_hat == nullptr) return null_argument("alpha1_hat");
    if (!result->result.similarity) {
        remember("no similarity fit in this result");
        return ESSFIT_ERROR_DEGENERATE;
    }
    *alpha1_hat = result->result.similarity->alpha1_hat;
    return ESSFIT_OK;
}

int essfit_result_constants(const essfit_result* result, double* c0_hat, double* c1_hat) {
    if (result == nullptr || !result->result.similarity ||
        !result->result.similarity->c0_hat.has_value()) {
        return 0;
    }
    if (c0_hat != nullptr) {
        *c0_hat = *result->result.similarity->c0_hat;
    }
    if (c1_hat != nullptr) {
        *c1_hat = *result->result.similarity->c1_hat;
    }
    return 1;
}

essfit_status essfit_result_comparison(const essfit_result* result, double* rss_shared,
                                       double* rss_per_re, essfit_preferred* preferred,
                                       int* monotone_decreasing) {
    if (result == nullptr) return null_argument("result");
    if (!result->result.comparison) {
        remember("no hypothesis comparison in this result");
        return ESSFIT_ERROR_DEGENERATE;
    }
    const essfit::HypothesisComparison& c = *result->result.comparison;
    if (rss_shared != nullptr) *rss_shared = c.rss_shared;
    if (rss_per_re != nullptr) *rss_per_re = c.rss_per_re;
    if (preferred != nullptr) {
        *preferred = c.preferred == essfit::PreferredModel::ReDependent
                         ? ESSFIT_PREFER_RE_DEPENDENT
                         : ESSFIT_PREFER_SHARED;
    }
    if (monotone_decreasing != nullptr) *monotone_decreasing = c.monotone_decreasing ? 1 : 0;
    return ESSFIT_OK;
}

size_t essfit_result_excluded_count(const essfit_result* result) {
    return result == nullptr ? 0 : result->result.per_re.excluded.size();
}

const char* essfit_result_excluded_reason(const essfit_result* result, size_t index) {
    if (result == nullptr || index >= result->result.per_re.excluded.size()) {
        remember("exclusion index out of range");
        return nullptr;
    }
    return result->result.per_re.excluded[index].reason.c_str();
}

size_t essfit_result_slope_profile(const essfit_result* result, size_t set_index, double* x,
                                   double* slope, size_t capacity) {
    if (result == nullptr || set_index >= result->result.profiles.size()) {
        return 0;
    }
    const essfit::SlopeProfile& profile = result->result.profiles[set_index];
    const size_t count = std::min(capacity, profile.entries.size());
    for (size_t i = 0; i < count; ++i) {
        if (x != nullptr) x[i] = profile.entries[i].x;
        if (slope != nullptr) slope[i] = profile.entries[i].slope;
    }
    return count;
}

essfit_status essfit_result_split_index(const essfit_result* result, size_t set_index,
                                        size_t* split_index) {
    if (result == nullptr) return null_argument("result");
    if (split_index == nullptr) return null_argument("split_index");
    if (set_index >= result->result.sets.size()) {
        remember("set index out of range");
        return ESSFIT_ERROR_CONTRACT;
    }
    *split_index = result->result.sets[set_index].split_index.value_or(0);
    return ESSFIT_OK;
}

essfit_status essfit_result_write_report(const essfit_result* result, const char* path,
                                         const essfit_report_options* options) {
    if (result == nullptr) return null_argument("result");
    if (path == nullptr) return null_argument("path");
    return guarded([&] {
        std::map<std::string, std::string> config_echo;
        std::map<std::string, std::string> digests;
        bool with_timestamp = true;
        if (options != nullptr) {
            if (options->n_config > 0 &&
                (options->config_keys == nullptr || options->config_values == nullptr)) {
                throw essfit::ContractError("config arrays must be set when n_config > 0");
            }
            for (size_t i = 0; i < options->n_config; ++i) {
                config_echo[options->config_keys[i]] = options->config_values[i];
            }
            if (options->n_digest_paths > 0 && options->digest_paths == nullptr) {
                throw essfit::ContractError("digest_paths must be set when n_digest_paths > 0");
            }
            for (size_t i = 0; i < options->n_digest_paths; ++i) {
                digests[options->digest_paths[i]] =
                    essfit::file_digest_hex(options->digest_paths[i]);
            }
            with_timestamp = options->no_timestamp == 0;
        }
        essfit::write_report(
            essfit::make_report(result->result, config_echo, digests, with_timestamp), path);
    });
}

essfit_status essfit_result_emit_plots(const essfit_result* result, const char* prefix,
                                       unsigned parts, double a1, double a2) {
    if (result == nullptr) return null_argument("result");
    if (prefix == nullptr) return null_argument("prefix");
    return guarded([&] {
        essfit::PlotOptions options;
        options.points = (parts & ESSFIT_PLOT_POINTS) != 0;
        options.slopes = (parts & ESSFIT_PLOT_SLOPES) != 0;
        options.overlay = (parts & ESSFIT_PLOT_OVERLAY) != 0;
        if (!std::isnan(a1)) options.a1 = a1;
        if (!std::isnan(a2)) options.a2 = a2;
        essfit::emit_plot_data(result->result.sets, result->result.profiles, prefix, options);
    });
}

void essfit_result_free(essfit_result* result) {
    delete result;
}

}  // extern "C"
