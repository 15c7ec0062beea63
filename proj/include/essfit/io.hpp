#ifndef ESSFIT_IO_HPP
#define ESSFIT_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "essfit/ess.hpp"
#include "essfit/fit.hpp"
#include "essfit/signal.hpp"

namespace essfit {

/// One experiment as read from (or written to) an ESS CSV file.
struct ExperimentRecord {
    std::string label;
    std::optional<double> re;
    EssPointSet points;
    std::string provenance;  // source path, or "synthetic"
};

/**
 * Read digitized ESS data.
 *
 * Format: header `label,re,x,y`, one point per row, `re` may be empty,
 * lines starting with `#` are comments. Returns one record per distinct
 * label, in first-appearance order, points sorted by x. Malformed or
 * non-finite rows raise IoError naming the line; an empty file (no data
 * rows) raises IoError.
 */
std::vector<ExperimentRecord> read_ess_csv(const std::string& path);

/**
 * Write point sets as ESS CSV (inverse of read_ess_csv). Values are
 * serialized with 17 significant digits so round trips are bit exact.
 * A non-empty comment is emitted as leading `#` lines.
 */
void write_ess_csv(const std::vector<EssPointSet>& sets, const std::string& path,
                   const std::string& comment = "");

/**
 * Read a velocity record. Format: first line `# spacing=<decimal>`, then
 * one sample per line. Missing header, non-positive spacing, fewer than 2
 * samples, or non-numeric content raise IoError.
 */
VelocitySignal read_signal(const std::string& path);

/// Write a velocity record (inverse of read_signal), 17 significant digits.
void write_signal(const VelocitySignal& signal, const std::string& path);

/// Per-experiment summary row of an analysis report.
struct ExperimentSummary {
    std::string label;
    std::optional<double> re;
    std::size_t n_points = 0;
    std::optional<std::size_t> split_index;
    std::optional<double> anchored_slope_first;  // slope profile endpoints
    std::optional<double> anchored_slope_last;
    std::string provenance;
};

/// Scalar outcome of the incomplete-similarity fit, as reported.
struct SimilaritySummary {
    double alpha1_hat = 0.0;
    std::optional<double> c0_hat;
    std::optional<double> c1_hat;
    double slope_model_residual_rms = 0.0;
};

/// Full analysis result in serializable form.
struct AnalysisReport {
    std::string version;                    // tool version string
    std::optional<std::string> timestamp;   // UTC, absent when suppressed
    std::vector<ExperimentSummary> experiments;
    std::vector<PerReFit> per_re_fits;      // flow field is not serialized
    std::vector<ExcludedSet> excluded;
    std::optional<SimilaritySummary> similarity_fit;
    std::optional<HypothesisComparison> comparison;
    std::map<std::string, std::string> config;   // flat key=value echo
    std::map<std::string, std::string> digests;  // input path -> FNV-1a hex
};

/**
 * Write the report as a JSON document with keys experiments[],
 * per_re_fits[], similarity_fit{}, comparison{}, config{}, digests{}.
 * Numeric fields survive a write/read cycle at full binary precision.
 */
void write_report(const AnalysisReport& report, const std::string& path);

/// Parse a document produced by write_report.
AnalysisReport read_report(const std::string& path);

/// Overlay-line intercepts and part selection for plot emission.
struct PlotOptions {
    std::optional<double> a1;  // intercept of the slope-2/3 overlay
    std::optional<double> a2;  // intercept of the slope-0.7 overlay
    bool points = true;
    bool slopes = true;
    bool overlay = true;
};

/**
 * Emit plot data: per experiment `<prefix><label>_points.csv` (x, y) and
 * `<prefix><label>_slopes.csv` (x, anchored local slope), plus one
 * `<prefix>overlay.csv` holding the lines y = (2/3)x + a1 and
 * y = 0.7x + a2 over the pooled x range. Unset intercepts default to
 * values that pass each line through the pooled centroid. profiles must
 * parallel sets; an empty set list raises DomainError before any write.
 * Returns the written paths.
 */
std::vector<std::string> emit_plot_data(const std::vector<EssPointSet>& sets,
                                        const std::vector<SlopeProfile>& profiles,
                                        const std::string& prefix, const PlotOptions& options = {});

/// 64-bit FNV-1a digest of a file's bytes, as 16 lowercase hex digits.
std::string file_digest_hex(const std::string& path);

/// Decimal form of x with 17 significant digits; parses back to exactly x.
std::string format_double(double x);

}  // namespace essfit

#endif
