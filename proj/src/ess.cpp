#include "essfit/ess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "essfit/error.hpp"

namespace essfit {

EssPointSet make_ess_point_set(std::vector<EssPoint> points, std::string label,
                               std::optional<double> re_tag, std::vector<double> separations) {
    if (!separations.empty() && separations.size() != points.size()) {
        throw ContractError("separations must be empty or match the point count");
    }
    for (const EssPoint& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw DomainError("ESS point with non-finite coordinate");
        }
    }

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&points](std::size_t a, std::size_t b) { return points[a].x < points[b].x; });

    EssPointSet set;
    set.label = std::move(label);
    set.re_tag = re_tag;
    set.points.reserve(points.size());
    if (!separations.empty()) {
        set.separations.reserve(points.size());
    }
    // merge runs of equal x by averaging y (and r provenance)
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        double y_sum = 0.0;
        double r_sum = 0.0;
        while (j < order.size() && points[order[j]].x == points[order[i]].x) {
            y_sum += points[order[j]].y;
            if (!separations.empty()) {
                r_sum += separations[order[j]];
            }
            ++j;
        }
        const auto run = static_cast<double>(j - i);
        set.points.push_back({points[order[i]].x, y_sum / run});
        if (!separations.empty()) {
            set.separations.push_back(r_sum / run);
        }
        i = j;
    }
    return set;
}

BuildEssResult build_ess(const StructureFunctionCurve& d2, const StructureFunctionCurve& d3) {
    if (d2.order != 2 || d3.order != 3) {
        throw ContractError("build_ess expects curves of order 2 and 3");
    }
    if (d2.separations != d3.separations) {
        throw ContractError("curves must share one separation grid");
    }
    if (d2.values.size() != d2.separations.size() || d3.values.size() != d3.separations.size()) {
        throw ContractError("curve values and separations differ in length");
    }

    std::vector<EssPoint> points;
    std::vector<double> separations;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < d2.values.size(); ++i) {
        const double v2 = d2.values[i];
        const double v3 = std::fabs(d3.values[i]);
        if (v2 > 0.0 && v3 > 0.0 && std::isfinite(v2) && std::isfinite(v3)) {
            points.push_back({std::log10(v3), std::log10(v2)});
            separations.push_back(d2.separations[i]);
        } else {
            ++dropped;
        }
    }
    if (points.size() < 2) {
        throw DegenerateInputError("fewer than 2 usable ESS points after dropping");
    }

    const std::string& label = d2.label.empty() ? d3.label : d2.label;
    const std::optional<double> re_tag = d2.re_tag ? d2.re_tag : d3.re_tag;
    return {make_ess_point_set(std::move(points), label, re_tag, std::move(separations)), dropped};
}

namespace {

void require_two_points(const EssPointSet& set) {
    if (set.points.size() < 2) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "point set '%s' needs at least 2 points",
                      set.label.c_str());
        throw DegenerateInputError(msg);
    }
}

}  // namespace

SlopeProfile anchored_local_slopes(const EssPointSet& set) {
    require_two_points(set);
    SlopeProfile profile;
    profile.anchor = set.points.front();
    profile.label = set.label;
    profile.re_tag = set.re_tag;
    profile.entries.reserve(set.points.size() - 1);
    for (std::size_t i = 1; i < set.points.size(); ++i) {
        const EssPoint& p = set.points[i];
        profile.entries.push_back(
            {p.x, (p.y - profile.anchor.y) / (p.x - profile.anchor.x)});
    }
    return profile;
}

SlopeProfile successive_slopes(const EssPointSet& set) {
    require_two_points(set);
    SlopeProfile profile;
    profile.anchor = set.points.front();
    profile.label = set.label;
    profile.re_tag = set.re_tag;
    profile.entries.reserve(set.points.size() - 1);
    for (std::size_t i = 1; i < set.points.size(); ++i) {
        const EssPoint& a = set.points[i - 1];
        const EssPoint& b = set.points[i];
        profile.entries.push_back({0.5 * (a.x + b.x), (b.y - a.y) / (b.x - a.x)});
    }
    return profile;
}

EssPointSet split_dissipation_range(EssPointSet set, const std::optional<FlowParameters>& flow,
                                    const SplitOptions& options) {
    if (!(options.k_threshold > 0.0)) {
        throw DomainError("k_threshold must be positive");
    }
    if (!(options.slope_tol > 0.0)) {
        throw DomainError("slope_tol must be positive");
    }
    require_two_points(set);

    const std::size_t n = set.points.size();
    if (flow && set.separations.size() == n) {
        const double r_min = options.k_threshold * flow->kolmogorov_scale();
        std::size_t split = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (set.separations[i] > r_min) {
                split = i;
                break;
            }
        }
        set.split_index = split;
        return set;
    }

    // Slope rule: the dissipation range is a prefix whose anchored slopes
    // sit near 2/3, so the split falls after the last in-band entry whose
    // prefix median is also in band. The median guard keeps an isolated
    // noisy return to the band inside the inertial run from dragging the
    // split to the right. With every slope departed the whole set, anchor
    // included, counts as inertial.
    const SlopeProfile profile = anchored_local_slopes(set);
    const double target = 2.0 / 3.0;
    std::size_t split = 0;
    std::vector<double> prefix;
    for (std::size_t j = profile.entries.size(); j-- > 0;) {
        if (std::fabs(profile.entries[j].slope - target) > options.slope_tol) {
            continue;
        }
        prefix.clear();
        for (std::size_t i = 0; i <= j; ++i) {
            prefix.push_back(profile.entries[i].slope);
        }
        const std::size_t mid = prefix.size() / 2;
        std::nth_element(prefix.begin(), prefix.begin() + mid, prefix.end());
        double median = prefix[mid];
        if (prefix.size() % 2 == 0) {
            median = 0.5 * (median + *std::max_element(prefix.begin(), prefix.begin() + mid));
        }
        if (std::fabs(median - target) <= options.slope_tol) {
            split = j + 2;  // entry j belongs to point j + 1
            break;
        }
    }
    set.split_index = split;
    return set;
}

}  // namespace essfit
