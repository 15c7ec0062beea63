#include "essfit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "essfit/error.hpp"

namespace essfit {

namespace {

struct GroupMoments {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
};

GroupMoments group_moments(const std::vector<EssPoint>& points) {
    GroupMoments m;
    const auto n = static_cast<double>(points.size());
    for (const EssPoint& p : points) {
        m.mean_x += p.x;
        m.mean_y += p.y;
    }
    m.mean_x /= n;
    m.mean_y /= n;
    for (const EssPoint& p : points) {
        m.sxx += (p.x - m.mean_x) * (p.x - m.mean_x);
        m.sxy += (p.x - m.mean_x) * (p.y - m.mean_y);
    }
    return m;
}

double group_rss(const std::vector<EssPoint>& points, double slope, double intercept) {
    double rss = 0.0;
    for (const EssPoint& p : points) {
        const double res = p.y - (intercept + slope * p.x);
        rss += res * res;
    }
    return rss;
}

// shared computation behind fit_shared_slope and shared_slope_rss
struct SharedFit {
    LineFit line;
    double rss = 0.0;
};

SharedFit shared_slope_fit_impl(const std::vector<std::vector<EssPoint>>& groups) {
    if (groups.empty()) {
        throw DegenerateInputError("no point groups to fit");
    }
    std::size_t total = 0;
    double sxx = 0.0;
    double sxy = 0.0;
    std::vector<GroupMoments> moments;
    moments.reserve(groups.size());
    for (const auto& group : groups) {
        if (group.size() < 2) {
            throw DegenerateInputError("every group needs at least 2 points");
        }
        moments.push_back(group_moments(group));
        sxx += moments.back().sxx;
        sxy += moments.back().sxy;
        total += group.size();
    }
    if (sxx == 0.0) {
        throw DomainError("degenerate x values: shared slope undefined");
    }

    SharedFit result;
    const double slope = sxy / sxx;
    double intercept_sum = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double intercept = moments[g].mean_y - slope * moments[g].mean_x;
        intercept_sum += intercept;
        result.rss += group_rss(groups[g], slope, intercept);
    }

    result.line.slope = slope;
    result.line.intercept = intercept_sum / static_cast<double>(groups.size());
    result.line.n_points = total;
    result.line.residual_rms = std::sqrt(result.rss / static_cast<double>(total));
    const std::size_t dof = total - groups.size() - 1;
    result.line.slope_stderr =
        dof > 0 ? std::sqrt(result.rss / static_cast<double>(dof) / sxx) : 0.0;
    return result;
}

}  // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw ContractError("x and y differ in length");
    }
    if (x.size() < 2) {
        throw DegenerateInputError("need at least 2 points to fit a line");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw DomainError("non-finite fit input");
        }
    }
    std::vector<EssPoint> points(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        points[i] = {x[i], y[i]};
    }
    const GroupMoments m = group_moments(points);
    if (m.sxx == 0.0) {
        throw DomainError("degenerate x values: slope undefined");
    }
    LineFit fit;
    fit.slope = m.sxy / m.sxx;
    fit.intercept = m.mean_y - fit.slope * m.mean_x;
    fit.n_points = x.size();
    const double rss = group_rss(points, fit.slope, fit.intercept);
    fit.residual_rms = std::sqrt(rss / static_cast<double>(x.size()));
    fit.slope_stderr =
        x.size() > 2 ? std::sqrt(rss / static_cast<double>(x.size() - 2) / m.sxx) : 0.0;
    return fit;
}

LineFit fit_shared_slope(const std::vector<std::vector<EssPoint>>& groups) {
    return shared_slope_fit_impl(groups).line;
}

double shared_slope_rss(const std::vector<std::vector<EssPoint>>& groups) {
    return shared_slope_fit_impl(groups).rss;
}

namespace {

// one experiment's inertial segment, ready for fitting
struct InertialSegment {
    double re = 0.0;
    std::string label;
    std::vector<EssPoint> points;
};

struct SegmentedSets {
    std::vector<InertialSegment> segments;  // ascending in re
    std::vector<ExcludedSet> excluded;
};

SegmentedSets inertial_segments(const std::vector<EssPointSet>& sets) {
    SegmentedSets out;
    for (const EssPointSet& set : sets) {
        if (!set.re_tag) {
            char msg[128];
            std::snprintf(msg, sizeof msg, "point set '%s' carries no Reynolds number tag",
                          set.label.c_str());
            throw ContractError(msg);
        }
        const std::size_t split = set.split_index.value_or(0);
        if (split > set.points.size()) {
            throw ContractError("split_index exceeds point count");
        }
        if (set.points.size() - split < 2) {
            out.excluded.push_back({set.label, "fewer than 2 inertial-range points"});
            continue;
        }
        InertialSegment seg;
        seg.re = *set.re_tag;
        seg.label = set.label;
        seg.points.assign(set.points.begin() + static_cast<std::ptrdiff_t>(split),
                          set.points.end());
        out.segments.push_back(std::move(seg));
    }
    std::stable_sort(out.segments.begin(), out.segments.end(),
                     [](const InertialSegment& a, const InertialSegment& b) { return a.re < b.re; });
    return out;
}

LineFit fit_segment(const InertialSegment& seg) {
    std::vector<double> x(seg.points.size());
    std::vector<double> y(seg.points.size());
    for (std::size_t i = 0; i < seg.points.size(); ++i) {
        x[i] = seg.points[i].x;
        y[i] = seg.points[i].y;
    }
    return fit_line(x, y);
}

void require_two_distinct_re(const std::vector<InertialSegment>& segments) {
    std::set<double> distinct;
    for (const InertialSegment& seg : segments) {
        distinct.insert(seg.re);
    }
    if (distinct.size() < 2) {
        throw DomainError("need >= 2 Reynolds numbers");
    }
}

}  // namespace

PerReFits fit_per_re(const std::vector<EssPointSet>& sets) {
    SegmentedSets segmented = inertial_segments(sets);
    PerReFits out;
    out.excluded = std::move(segmented.excluded);
    out.fits.reserve(segmented.segments.size());
    for (const InertialSegment& seg : segmented.segments) {
        out.fits.push_back({seg.re, fit_segment(seg), seg.label, std::nullopt});
    }
    return out;
}

HypothesisComparison compare_hypotheses(const std::vector<EssPointSet>& sets,
                                        const CompareOptions& options) {
    if (!(options.margin >= 0.0) || !(options.margin < 1.0)) {
        throw DomainError("margin must lie in [0, 1)");
    }
    const SegmentedSets segmented = inertial_segments(sets);
    require_two_distinct_re(segmented.segments);

    std::vector<std::vector<EssPoint>> groups;
    groups.reserve(segmented.segments.size());
    double rss_per_re = 0.0;
    bool monotone = true;
    double prev_slope = 0.0;
    for (std::size_t j = 0; j < segmented.segments.size(); ++j) {
        const InertialSegment& seg = segmented.segments[j];
        const LineFit line = fit_segment(seg);
        rss_per_re += group_rss(seg.points, line.slope, line.intercept);
        if (j > 0 && !(line.slope < prev_slope)) {
            monotone = false;
        }
        prev_slope = line.slope;
        groups.push_back(seg.points);
    }

    const SharedFit shared = shared_slope_fit_impl(groups);
    HypothesisComparison comparison;
    comparison.rss_shared = shared.rss;
    comparison.rss_per_re = rss_per_re;
    comparison.preferred = rss_per_re < shared.rss * (1.0 - options.margin)
                               ? PreferredModel::ReDependent
                               : PreferredModel::Shared;
    comparison.monotone_decreasing = monotone;
    comparison.shared_slope_fit = shared.line;
    return comparison;
}

SimilarityFit fit_incomplete_similarity(std::vector<PerReFit> per_re,
                                        const SimilarityOptions& options) {
    if (per_re.size() < 2) {
        throw DomainError("need >= 2 Reynolds numbers");
    }
    std::stable_sort(per_re.begin(), per_re.end(),
                     [](const PerReFit& a, const PerReFit& b) { return a.re < b.re; });
    std::set<double> distinct;
    for (const PerReFit& entry : per_re) {
        if (!(entry.re > M_E)) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "Reynolds number %g must exceed e", entry.re);
            throw DomainError(msg);
        }
        distinct.insert(entry.re);
    }
    if (distinct.size() < 2) {
        throw DomainError("need >= 2 distinct Reynolds numbers");
    }

    bool uniform_weights = false;
    for (const PerReFit& entry : per_re) {
        if (entry.line.slope_stderr == 0.0) {
            uniform_weights = true;
            break;
        }
    }

    // stage 1: slope(Re) - 2/3 regressed on 1/ln(Re) through the origin
    double num = 0.0;
    double den = 0.0;
    for (const PerReFit& entry : per_re) {
        const double t = 1.0 / std::log(entry.re);
        const double w =
            uniform_weights ? 1.0 : 1.0 / (entry.line.slope_stderr * entry.line.slope_stderr);
        num += w * t * (entry.line.slope - 2.0 / 3.0);
        den += w * t * t;
    }

    SimilarityFit fit;
    fit.alpha1_hat = num / den;
    double rss = 0.0;
    for (const PerReFit& entry : per_re) {
        const double res =
            entry.line.slope - (2.0 / 3.0 + fit.alpha1_hat / std::log(entry.re));
        rss += res * res;
    }
    fit.slope_model_residual_rms = std::sqrt(rss / static_cast<double>(per_re.size()));

    if (options.with_constants) {
        if (!options.b3) {
            throw ContractError("constant recovery needs the third-order coefficient b3");
        }
        if (*options.b3 == 0.0 || !std::isfinite(*options.b3)) {
            throw DomainError("b3 must be nonzero");
        }
        // stage 2: invert each intercept for C(Re), then fit C = c0 + c1/ln(Re)
        std::vector<double> t(per_re.size());
        std::vector<double> c(per_re.size());
        for (std::size_t j = 0; j < per_re.size(); ++j) {
            const PerReFit& entry = per_re[j];
            if (!entry.flow) {
                char msg[128];
                std::snprintf(msg, sizeof msg,
                              "constant recovery needs flow parameters for '%s'",
                              entry.label.c_str());
                throw ContractError(msg);
            }
            const double eps = entry.flow->eps_mean();
            const double lambda_k = entry.flow->kolmogorov_scale();
            const double alpha_re = entry.line.slope - 2.0 / 3.0;
            const double log_c = entry.line.intercept - (2.0 / 3.0) * std::log10(eps) +
                                 alpha_re * std::log10(lambda_k) +
                                 entry.line.slope * std::log10(std::fabs(*options.b3) * eps);
            t[j] = 1.0 / std::log(entry.re);
            c[j] = std::pow(10.0, log_c);
        }
        const LineFit constants = fit_line(t, c);
        fit.c0_hat = constants.intercept;
        fit.c1_hat = constants.slope;
    }

    fit.per_re = std::move(per_re);
    return fit;
}

LineFit fit_exponent_diagnostic(const std::vector<PerReFit>& per_re) {
    std::vector<double> t;
    std::vector<double> s;
    t.reserve(per_re.size());
    s.reserve(per_re.size());
    for (const PerReFit& entry : per_re) {
        if (!(entry.re > 1.0)) {
            throw DomainError("Reynolds number must exceed 1");
        }
        t.push_back(1.0 / std::log(entry.re));
        s.push_back(entry.line.slope);
    }
    return fit_line(t, s);
}

}  // namespace essfit
