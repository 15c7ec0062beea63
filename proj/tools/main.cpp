// essfit command line: synthesize data, estimate structure functions, build
// ESS graphs, and run the scaling analysis. All numerical work goes through
// the shared library's C interface.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "essfit/c_api.h"

namespace {

int runtime_failure() {
    std::fprintf(stderr, "error: %s\n", essfit_last_error());
    return 1;
}

using DatasetPtr = std::unique_ptr<essfit_dataset, decltype(&essfit_dataset_free)>;
using SignalPtr = std::unique_ptr<essfit_signal, decltype(&essfit_signal_free)>;
using CurvePtr = std::unique_ptr<essfit_curve, decltype(&essfit_curve_free)>;
using ResultPtr = std::unique_ptr<essfit_result, decltype(&essfit_result_free)>;

std::string format_value(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

essfit_moment_kind parse_kind(const std::string& name) {
    return name == "signed" ? ESSFIT_MOMENT_SIGNED : ESSFIT_MOMENT_ABSOLUTE;
}

std::string strip(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& text) {
    if (text.size() >= 2 && ((text.front() == '"' && text.back() == '"') ||
                             (text.front() == '\'' && text.back() == '\''))) {
        return text.substr(1, text.size() - 2);
    }
    return text;
}

// Expands --config <file> before parsing: each key=value line becomes a
// --key=value token right after the subcommand. Keys already given on the
// command line win, and keys the subcommand does not define are ignored so
// one file can serve several subcommands.
bool expand_config(const CLI::App& app, std::vector<std::string>& args, std::string& error) {
    std::size_t sub_index = args.size();
    const CLI::App* sub = nullptr;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-') {
            sub = app.get_subcommand_no_throw(args[i]);
            sub_index = i;
            break;
        }
    }
    if (sub == nullptr) {
        return true;  // no or unknown subcommand; the parser reports that
    }

    std::string path;
    for (std::size_t i = sub_index + 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return true;
    }

    std::ifstream file(path);
    if (!file) {
        error = "cannot read config file " + path;
        return false;
    }

    std::vector<std::string> extra;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const std::string text = strip(line);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        const auto eq = text.find('=');
        const std::string key = eq == std::string::npos ? std::string() : strip(text.substr(0, eq));
        if (key.empty()) {
            error = path + ":" + std::to_string(line_no) + ": expected key=value";
            return false;
        }
        if (key == "config") {
            continue;
        }
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) {
            continue;  // meant for another subcommand
        }
        bool on_command_line = false;
        for (std::size_t i = sub_index + 1; i < args.size(); ++i) {
            if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) {
                on_command_line = true;
                break;
            }
        }
        if (on_command_line) {
            continue;
        }
        extra.push_back(flag + "=" + unquote(strip(text.substr(eq + 1))));
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_index) + 1, extra.begin(),
                extra.end());
    return true;
}

struct AnalysisFlags {
    double k_threshold = 10.0;
    double slope_tol = 0.01;
    double margin = 0.05;
    bool with_constants = false;
    double b3 = 1.0;
    double eps = 1.0;
    double lambda_t = 1.0;
};

void add_analysis_flags(CLI::App* sub, AnalysisFlags& flags) {
    sub->add_option("--k-threshold", flags.k_threshold,
                    "Dissipation split: r > k-threshold * Kolmogorov scale")
        ->capture_default_str();
    sub->add_option("--slope-tol", flags.slope_tol,
                    "Slope-rule departure tolerance from 2/3")
        ->capture_default_str();
    sub->add_option("--margin", flags.margin, "RSS margin for preferring the Re-dependent model")
        ->capture_default_str();
    sub->add_flag("--with-constants", flags.with_constants,
                  "Recover the prefactor constants c0, c1 (uses --b3, --eps, --lambda-t)");
    sub->add_option("--b3", flags.b3, "Third-order coefficient for constant recovery")
        ->capture_default_str();
    sub->add_option("--eps", flags.eps, "Mean dissipation rate assumed for constant recovery")
        ->capture_default_str();
    sub->add_option("--lambda-t", flags.lambda_t,
                    "External length scale assumed for constant recovery")
        ->capture_default_str();
}

essfit_analysis_config make_config(const AnalysisFlags& flags, bool require_similarity) {
    essfit_analysis_config config;
    essfit_analysis_config_init(&config);
    config.k_threshold = flags.k_threshold;
    config.slope_tol = flags.slope_tol;
    config.margin = flags.margin;
    config.with_constants = flags.with_constants ? 1 : 0;
    config.b3 = flags.b3;
    config.eps = flags.eps;
    config.lambda_t = flags.lambda_t;
    config.require_similarity = require_similarity ? 1 : 0;
    return config;
}

void append_flag_echo(const AnalysisFlags& flags, std::vector<std::string>& keys,
                      std::vector<std::string>& values) {
    keys.emplace_back("k-threshold");
    values.push_back(format_value(flags.k_threshold));
    keys.emplace_back("slope-tol");
    values.push_back(format_value(flags.slope_tol));
    keys.emplace_back("margin");
    values.push_back(format_value(flags.margin));
    keys.emplace_back("with-constants");
    values.emplace_back(flags.with_constants ? "true" : "false");
    if (flags.with_constants) {
        keys.emplace_back("b3");
        values.push_back(format_value(flags.b3));
        keys.emplace_back("eps");
        values.push_back(format_value(flags.eps));
        keys.emplace_back("lambda-t");
        values.push_back(format_value(flags.lambda_t));
    }
}

int write_report_for(const essfit_result* result, const std::string& out_path,
                     const std::string& input_path, const AnalysisFlags& flags,
                     bool no_timestamp) {
    std::vector<std::string> keys;
    std::vector<std::string> values;
    append_flag_echo(flags, keys, values);

    std::vector<const char*> key_ptrs;
    std::vector<const char*> value_ptrs;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        key_ptrs.push_back(keys[i].c_str());
        value_ptrs.push_back(values[i].c_str());
    }
    const char* digest_paths[] = {input_path.c_str()};

    essfit_report_options options;
    options.config_keys = key_ptrs.data();
    options.config_values = value_ptrs.data();
    options.n_config = key_ptrs.size();
    options.digest_paths = digest_paths;
    options.n_digest_paths = 1;
    options.no_timestamp = no_timestamp ? 1 : 0;
    if (essfit_result_write_report(result, out_path.c_str(), &options) != ESSFIT_OK) {
        return runtime_failure();
    }
    std::printf("wrote report %s\n", out_path.c_str());
    return 0;
}

int print_fit_summary(const essfit_result* result) {
    const size_t n_fits = essfit_result_fit_count(result);
    for (size_t i = 0; i < n_fits; ++i) {
        double re = 0.0;
        essfit_line_fit fit;
        if (essfit_result_fit(result, i, &re, &fit) != ESSFIT_OK) {
            return runtime_failure();
        }
        std::printf("%-12s Re %-10.6g slope %.6f +/- %.6f (intercept %.6f, %zu points)\n",
                    essfit_result_fit_label(result, i), re, fit.slope, fit.slope_stderr,
                    fit.intercept, fit.n_points);
    }
    double alpha1 = 0.0;
    if (essfit_result_alpha1(result, &alpha1) == ESSFIT_OK) {
        std::printf("alpha1_hat %.6f (exponent 2/3 + alpha1/ln Re)\n", alpha1);
    }
    double c0 = 0.0;
    double c1 = 0.0;
    if (essfit_result_constants(result, &c0, &c1) == 1) {
        std::printf("c0_hat %.6f c1_hat %.6f (prefactor c0 + c1/ln Re)\n", c0, c1);
    }
    const size_t n_excluded = essfit_result_excluded_count(result);
    for (size_t i = 0; i < n_excluded; ++i) {
        std::printf("excluded: %s\n", essfit_result_excluded_reason(result, i));
    }
    return 0;
}

int print_comparison(const essfit_result* result) {
    double rss_shared = 0.0;
    double rss_per_re = 0.0;
    essfit_preferred preferred = ESSFIT_PREFER_SHARED;
    int monotone = 0;
    if (essfit_result_comparison(result, &rss_shared, &rss_per_re, &preferred, &monotone) !=
        ESSFIT_OK) {
        return runtime_failure();
    }
    std::printf("rss_shared %.8g\nrss_per_re %.8g\npreferred %s\nmonotone_decreasing %s\n",
                rss_shared, rss_per_re,
                preferred == ESSFIT_PREFER_RE_DEPENDENT ? "re_dependent" : "shared",
                monotone ? "true" : "false");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turbulence scaling analysis: structure functions, ESS graphs, and "
                 "incomplete-similarity fits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", essfit_version());
    std::string config_file;
    const std::string config_help = "Key=value config file; command-line flags override it";

    // synth ---------------------------------------------------------------
    auto* synth = app.add_subcommand(
        "synth", "Generate synthetic ESS datasets and/or velocity signals");
    std::vector<double> synth_re;
    std::uint64_t synth_seed = 0;
    double synth_alpha1 = 0.29, synth_c0 = 1.5, synth_c1 = 2.0, synth_b3 = 1.0;
    double synth_eps = 1.0, synth_lambda_t = 1.0, synth_sharpness = 1.0, synth_noise = 0.0;
    double synth_r_min = 0.02, synth_r_max = 0.5;
    std::size_t synth_points = 48;
    std::string synth_out;
    std::string signal_out;
    std::size_t signal_n = 65536;
    double signal_exponent = 5.0 / 3.0;
    double signal_spacing = 0.001;
    synth->add_option("--config", config_file, config_help);
    synth->add_option("--re", synth_re, "Reynolds numbers, one experiment each")->delimiter(',');
    synth->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
    synth->add_option("--alpha1", synth_alpha1, "Exponent constant alpha1")->capture_default_str();
    synth->add_option("--c0", synth_c0, "Prefactor constant c0")->capture_default_str();
    synth->add_option("--c1", synth_c1, "Prefactor constant c1")->capture_default_str();
    synth->add_option("--b3", synth_b3, "Third-order coefficient b3")->capture_default_str();
    synth->add_option("--eps", synth_eps, "Mean dissipation rate")->capture_default_str();
    synth->add_option("--lambda-t", synth_lambda_t, "External length scale")
        ->capture_default_str();
    synth->add_option("--sharpness", synth_sharpness, "Dissipation crossover sharpness (>= 1)")
        ->capture_default_str();
    synth->add_option("--noise", synth_noise, "Gaussian noise sigma in log10 units")
        ->capture_default_str();
    synth->add_option("--r-min", synth_r_min, "Smallest separation")->capture_default_str();
    synth->add_option("--r-max", synth_r_max, "Largest separation")->capture_default_str();
    synth->add_option("--points", synth_points, "Separation grid size")->capture_default_str();
    synth->add_option("--out", synth_out, "ESS CSV output path");
    synth->add_option("--signal-out", signal_out, "Velocity signal output path");
    synth->add_option("--signal-n", signal_n, "Signal length (power of two)")
        ->capture_default_str();
    synth->add_option("--spectrum-exponent", signal_exponent, "Spectral slope in (1, 3)")
        ->capture_default_str();
    synth->add_option("--spacing", signal_spacing, "Signal sample spacing")
        ->capture_default_str();

    // sf --------------------------------------------------------------------
    auto* sf = app.add_subcommand("sf", "Estimate a structure function from a velocity signal");
    std::string sf_signal, sf_out;
    int sf_order = 2;
    std::string sf_kind = "absolute";
    int sf_ppd = 8;
    sf->add_option("--config", config_file, config_help);
    sf->add_option("--signal", sf_signal, "Velocity signal file")->required();
    sf->add_option("--order", sf_order, "Moment order")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    sf->add_option("--moment-kind", sf_kind, "signed or absolute moments")
        ->check(CLI::IsMember({"signed", "absolute"}))
        ->capture_default_str();
    sf->add_option("--points-per-decade", sf_ppd, "Lag grid density")->capture_default_str();
    sf->add_option("--out", sf_out, "Curve CSV output path")->required();

    // ess ---------------------------------------------------------------------
    auto* ess = app.add_subcommand("ess", "Build an ESS point set from a velocity signal");
    std::string ess_signal, ess_out, ess_label = "signal";
    std::string ess_kind = "absolute";
    int ess_ppd = 8;
    double ess_re = std::nan("");
    ess->add_option("--config", config_file, config_help);
    ess->add_option("--signal", ess_signal, "Velocity signal file")->required();
    ess->add_option("--label", ess_label, "Experiment label")->capture_default_str();
    ess->add_option("--re", ess_re, "Reynolds number tag (omit for untagged)");
    ess->add_option("--moment-kind", ess_kind, "signed or absolute moments")
        ->check(CLI::IsMember({"signed", "absolute"}))
        ->capture_default_str();
    ess->add_option("--points-per-decade", ess_ppd, "Lag grid density")->capture_default_str();
    ess->add_option("--out", ess_out, "ESS CSV output path")->required();

    // slopes -----------------------------------------------------------------
    auto* slopes =
        app.add_subcommand("slopes", "Emit anchored local slope profiles per experiment");
    std::string slopes_in, slopes_prefix;
    AnalysisFlags slopes_flags;
    slopes->add_option("--config", config_file, config_help);
    slopes->add_option("--in", slopes_in, "ESS CSV input")->required();
    slopes->add_option("--out-prefix", slopes_prefix, "Output path prefix")->required();
    add_analysis_flags(slopes, slopes_flags);

    // fit ------------------------------------------------------------------
    auto* fit = app.add_subcommand(
        "fit", "Fit per-Re slopes and the incomplete-similarity exponent model");
    std::string fit_in, fit_out;
    AnalysisFlags fit_flags;
    bool fit_no_timestamp = false;
    fit->add_option("--config", config_file, config_help);
    fit->add_option("--in", fit_in, "ESS CSV input")->required();
    fit->add_option("--out", fit_out, "Report JSON output path");
    fit->add_flag("--no-timestamp", fit_no_timestamp, "Omit the report timestamp");
    add_analysis_flags(fit, fit_flags);

    // compare ---------------------------------------------------------------
    auto* compare = app.add_subcommand(
        "compare", "Compare shared-exponent vs Re-dependent-exponent hypotheses");
    std::string compare_in, compare_out;
    AnalysisFlags compare_flags;
    bool compare_no_timestamp = false;
    compare->add_option("--config", config_file, config_help);
    compare->add_option("--in", compare_in, "ESS CSV input")->required();
    compare->add_option("--out", compare_out, "Report JSON output path");
    compare->add_flag("--no-timestamp", compare_no_timestamp, "Omit the report timestamp");
    add_analysis_flags(compare, compare_flags);

    // report ------------------------------------------------------------------
    auto* report = app.add_subcommand(
        "report", "Run the full pipeline and write the analysis report");
    std::string report_in, report_out, report_plot_prefix;
    AnalysisFlags report_flags;
    bool report_no_timestamp = false;
    double report_a1 = std::nan("");
    double report_a2 = std::nan("");
    report->add_option("--config", config_file, config_help);
    report->add_option("--in", report_in, "ESS CSV input")->required();
    report->add_option("--out", report_out, "Report JSON output path")->required();
    report->add_option("--plot-prefix", report_plot_prefix,
                       "Also emit plot CSVs under this prefix");
    report->add_option("--a1", report_a1, "Overlay intercept for the slope-2/3 line");
    report->add_option("--a2", report_a2, "Overlay intercept for the slope-0.7 line");
    report->add_flag("--no-timestamp", report_no_timestamp, "Omit the report timestamp");
    add_analysis_flags(report, report_flags);

    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_error;
    if (!expand_config(app, args, config_error)) {
        std::fprintf(stderr, "error: %s\n", config_error.c_str());
        return 2;
    }
    std::vector<const char*> arg_ptrs;
    arg_ptrs.reserve(args.size() + 1);
    arg_ptrs.push_back(argv[0]);
    for (const std::string& arg : args) {
        arg_ptrs.push_back(arg.c_str());
    }

    try {
        app.parse(static_cast<int>(arg_ptrs.size()), arg_ptrs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*synth) {
        if (synth_out.empty() && signal_out.empty()) {
            std::fprintf(stderr, "synth: need --out and/or --signal-out\n");
            return 2;
        }
        if (!synth_out.empty()) {
            if (synth_re.empty()) {
                std::fprintf(stderr, "synth: --out needs at least one --re value\n");
                return 2;
            }
            essfit_synth_params params;
            essfit_synth_params_init(&params);
            params.re = synth_re.data();
            params.n_re = synth_re.size();
            params.alpha1 = synth_alpha1;
            params.c0 = synth_c0;
            params.c1 = synth_c1;
            params.b3 = synth_b3;
            params.eps = synth_eps;
            params.lambda_t = synth_lambda_t;
            params.sharpness = synth_sharpness;
            params.noise_sigma = synth_noise;
            params.seed = synth_seed;
            params.r_min = synth_r_min;
            params.r_max = synth_r_max;
            params.n_points = synth_points;

            essfit_dataset* raw = nullptr;
            if (essfit_dataset_synthesize(&params, &raw) != ESSFIT_OK) {
                return runtime_failure();
            }
            DatasetPtr dataset(raw, essfit_dataset_free);
            const std::string comment =
                "synthetic ESS dataset: seed=" + std::to_string(synth_seed) +
                " alpha1=" + format_value(synth_alpha1) + " c0=" + format_value(synth_c0) +
                " c1=" + format_value(synth_c1) + " b3=" + format_value(synth_b3) +
                " noise=" + format_value(synth_noise);
            if (essfit_dataset_write_csv(dataset.get(), synth_out.c_str(), comment.c_str()) !=
                ESSFIT_OK) {
                return runtime_failure();
            }
            std::printf("wrote %zu experiments to %s\n", essfit_dataset_count(dataset.get()),
                        synth_out.c_str());
        }
        if (!signal_out.empty()) {
            essfit_signal* raw = nullptr;
            if (essfit_signal_synthesize(signal_n, signal_exponent, signal_spacing, synth_seed,
                                         &raw) != ESSFIT_OK) {
                return runtime_failure();
            }
            SignalPtr signal(raw, essfit_signal_free);
            if (essfit_signal_write(signal.get(), signal_out.c_str()) != ESSFIT_OK) {
                return runtime_failure();
            }
            std::printf("wrote %zu samples to %s\n", essfit_signal_length(signal.get()),
                        signal_out.c_str());
        }
        return 0;
    }

    if (*sf) {
        essfit_signal* raw_signal = nullptr;
        if (essfit_signal_read(sf_signal.c_str(), &raw_signal) != ESSFIT_OK) {
            return runtime_failure();
        }
        SignalPtr signal(raw_signal, essfit_signal_free);
        essfit_curve* raw_curve = nullptr;
        if (essfit_signal_structure_function(signal.get(), sf_order, parse_kind(sf_kind), sf_ppd,
                                             &raw_curve) != ESSFIT_OK) {
            return runtime_failure();
        }
        CurvePtr curve(raw_curve, essfit_curve_free);
        if (essfit_curve_write_csv(curve.get(), sf_out.c_str()) != ESSFIT_OK) {
            return runtime_failure();
        }
        std::printf("wrote %zu separations to %s\n", essfit_curve_length(curve.get()),
                    sf_out.c_str());
        return 0;
    }

    if (*ess) {
        essfit_signal* raw_signal = nullptr;
        if (essfit_signal_read(ess_signal.c_str(), &raw_signal) != ESSFIT_OK) {
            return runtime_failure();
        }
        SignalPtr signal(raw_signal, essfit_signal_free);
        essfit_dataset* raw_dataset = nullptr;
        if (essfit_dataset_from_signal(signal.get(), parse_kind(ess_kind), ess_ppd,
                                       ess_label.c_str(), ess_re, &raw_dataset) != ESSFIT_OK) {
            return runtime_failure();
        }
        DatasetPtr dataset(raw_dataset, essfit_dataset_free);
        if (essfit_dataset_write_csv(dataset.get(), ess_out.c_str(),
                                     ("built from signal " + ess_signal).c_str()) != ESSFIT_OK) {
            return runtime_failure();
        }
        std::printf("wrote %zu points to %s\n", essfit_dataset_point_count(dataset.get(), 0),
                    ess_out.c_str());
        return 0;
    }

    if (*slopes) {
        essfit_dataset* raw_dataset = nullptr;
        if (essfit_dataset_from_csv(slopes_in.c_str(), &raw_dataset) != ESSFIT_OK) {
            return runtime_failure();
        }
        DatasetPtr dataset(raw_dataset, essfit_dataset_free);
        const essfit_analysis_config config = make_config(slopes_flags, false);
        essfit_result* raw_result = nullptr;
        if (essfit_analyze(dataset.get(), &config, &raw_result) != ESSFIT_OK) {
            return runtime_failure();
        }
        ResultPtr result(raw_result, essfit_result_free);
        if (essfit_result_emit_plots(result.get(), slopes_prefix.c_str(), ESSFIT_PLOT_SLOPES,
                                     std::nan(""), std::nan("")) != ESSFIT_OK) {
            return runtime_failure();
        }
        std::printf("wrote slope profiles for %zu experiments under %s\n",
                    essfit_dataset_count(dataset.get()), slopes_prefix.c_str());
        return 0;
    }

    if (*fit || *compare) {
        const bool is_fit = static_cast<bool>(*fit);
        const std::string& in_path = is_fit ? fit_in : compare_in;
        const std::string& out_path = is_fit ? fit_out : compare_out;
        const AnalysisFlags& flags = is_fit ? fit_flags : compare_flags;
        const bool no_timestamp = is_fit ? fit_no_timestamp : compare_no_timestamp;

        essfit_dataset* raw_dataset = nullptr;
        if (essfit_dataset_from_csv(in_path.c_str(), &raw_dataset) != ESSFIT_OK) {
            return runtime_failure();
        }
        DatasetPtr dataset(raw_dataset, essfit_dataset_free);
        const essfit_analysis_config config = make_config(flags, true);
        essfit_result* raw_result = nullptr;
        if (essfit_analyze(dataset.get(), &config, &raw_result) != ESSFIT_OK) {
            return runtime_failure();
        }
        ResultPtr result(raw_result, essfit_result_free);

        int status = is_fit ? print_fit_summary(result.get()) : print_comparison(result.get());
        if (status != 0) {
            return status;
        }
        if (!out_path.empty()) {
            status = write_report_for(result.get(), out_path, in_path, flags, no_timestamp);
        }
        return status;
    }

    if (*report) {
        essfit_dataset* raw_dataset = nullptr;
        if (essfit_dataset_from_csv(report_in.c_str(), &raw_dataset) != ESSFIT_OK) {
            return runtime_failure();
        }
        DatasetPtr dataset(raw_dataset, essfit_dataset_free);
        const essfit_analysis_config config = make_config(report_flags, true);
        essfit_result* raw_result = nullptr;
        if (essfit_analyze(dataset.get(), &config, &raw_result) != ESSFIT_OK) {
            return runtime_failure();
        }
        ResultPtr result(raw_result, essfit_result_free);
        const int status = write_report_for(result.get(), report_out, report_in, report_flags,
                                            report_no_timestamp);
        if (status != 0) {
            return status;
        }
        if (!report_plot_prefix.empty()) {
            if (essfit_result_emit_plots(result.get(), report_plot_prefix.c_str(),
                                         ESSFIT_PLOT_ALL, report_a1, report_a2) != ESSFIT_OK) {
                return runtime_failure();
            }
            std::printf("wrote plot data under %s\n", report_plot_prefix.c_str());
        }
        return 0;
    }

    return 0;
}
