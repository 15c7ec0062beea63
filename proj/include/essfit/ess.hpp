#ifndef ESSFIT_ESS_HPP
#define ESSFIT_ESS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "essfit/estimator.hpp"
#include "essfit/scales.hpp"

namespace essfit {

struct EssPoint {
    double x = 0.0;  // log10 of the third-order moment (abscissa)
    double y = 0.0;  // log10 of the second-order moment (ordinate)
};

/**
 * Per-experiment points in the (log10 D3, log10 D2) plane, sorted by x.
 *
 * Points with coincident abscissae are merged at construction by averaging
 * their ordinates, so x is strictly increasing. `separations`, when known,
 * records the physical r each point came from and enables the
 * scale-threshold split rule.
 */
struct EssPointSet {
    std::vector<EssPoint> points;
    std::string label;
    std::optional<double> re_tag;
    std::optional<std::size_t> split_index;  // [0, split) dissipation, [split, end) inertial
    std::vector<double> separations;         // optional provenance, same length as points
};

/// Sort by x, merge duplicate abscissae (averaging y and provenance),
/// reject non-finite coordinates.
EssPointSet make_ess_point_set(std::vector<EssPoint> points, std::string label,
                               std::optional<double> re_tag = std::nullopt,
                               std::vector<double> separations = {});

struct BuildEssResult {
    EssPointSet set;
    std::size_t dropped = 0;  // non-positive pairs removed before taking logs
};

/**
 * Pair a second- and third-order curve on the same separation grid into an
 * ESS point set. Signed third-order values enter through their absolute
 * value; pairs that are not strictly positive are dropped and counted.
 */
BuildEssResult build_ess(const StructureFunctionCurve& d2, const StructureFunctionCurve& d3);

struct SlopeEntry {
    double x = 0.0;
    double slope = 0.0;
};

/// Local slopes of an ESS graph. Anchored profiles measure every slope from
/// the leftmost point; successive profiles difference neighbours.
struct SlopeProfile {
    EssPoint anchor;
    std::vector<SlopeEntry> entries;  // ordered by x ascending
    std::string label;
    std::optional<double> re_tag;
};

/// s_i = (y_i - y_1) / (x_i - x_1) for every point after the leftmost one.
SlopeProfile anchored_local_slopes(const EssPointSet& set);

/// s_i = (y_i - y_{i-1}) / (x_i - x_{i-1}), attached at the midpoint x.
/// Noisier than the anchored profile; kept as a diagnostic.
SlopeProfile successive_slopes(const EssPointSet& set);

struct SplitOptions {
    double k_threshold = 10.0;  // r > k_threshold * lambda_K counts as inertial
    double slope_tol = 0.01;    // departure tolerance for the slope rule
};

/**
 * Locate the dissipation/inertial boundary and record it as split_index.
 *
 * When flow parameters and per-point separations are available, the split
 * falls at the first r above k_threshold * lambda_K. Otherwise it falls
 * where the anchored local slope departs from 2/3 by more than slope_tol
 * and stays departed; an isolated noisy return to the 2/3 band counts as
 * departed unless the slopes up to it also sit in the band on median.
 * split_index == points.size() means no inertial points were found.
 */
EssPointSet split_dissipation_range(EssPointSet set,
                                    const std::optional<FlowParameters>& flow = std::nullopt,
                                    const SplitOptions& options = {});

}  // namespace essfit

#endif
