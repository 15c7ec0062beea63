#include "essfit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "essfit/error.hpp"

namespace essfit {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& path, std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << path << ":" << line << ": " << what;
    throw IoError(msg.str());
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool is_comment_or_blank(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

double parse_double(const std::string& field, const std::string& path, std::size_t line) {
    const std::string t = trim(field);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || t.empty()) {
        fail_at(path, line, "expected a number, got '" + field + "'");
    }
    return value;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    return out;
}

void require_clean_label(const std::string& label) {
    if (label.empty()) {
        throw ContractError("experiment label must be non-empty");
    }
    if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos) {
        throw ContractError("experiment label must not contain ',' or newline");
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<ExperimentRecord> read_ess_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }

    struct Partial {
        std::optional<double> re;
        std::vector<EssPoint> points;
        std::size_t first_line = 0;
    };
    std::vector<std::string> order;
    std::map<std::string, Partial> partials;

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        if (!header_seen) {
            std::string header = trim(line);
            header.erase(std::remove_if(header.begin(), header.end(),
                                        [](char c) { return c == ' ' || c == '\t'; }),
                         header.end());
            if (header != "label,re,x,y") {
                fail_at(path, line_no, "expected header label,re,x,y");
            }
            header_seen = true;
            continue;
        }

        const std::vector<std::string> fields = split_csv_row(line);
        if (fields.size() != 4) {
            fail_at(path, line_no, "expected 4 fields label,re,x,y");
        }
        const std::string label = trim(fields[0]);
        if (label.empty()) {
            fail_at(path, line_no, "empty label");
        }
        std::optional<double> re;
        if (!trim(fields[1]).empty()) {
            const double value = parse_double(fields[1], path, line_no);
            if (!std::isfinite(value) || value <= 1.0) {
                fail_at(path, line_no, "re must be finite and > 1");
            }
            re = value;
        }
        const double x = parse_double(fields[2], path, line_no);
        const double y = parse_double(fields[3], path, line_no);
        if (!std::isfinite(x) || !std::isfinite(y)) {
            fail_at(path, line_no, "non-finite coordinate");
        }

        auto [it, inserted] = partials.try_emplace(label);
        if (inserted) {
            order.push_back(label);
            it->second.re = re;
            it->second.first_line = line_no;
        } else if (it->second.re != re) {
            fail_at(path, line_no, "conflicting re for label '" + label + "'");
        }
        it->second.points.push_back({x, y});
    }

    if (!header_seen || order.empty()) {
        throw IoError(path + ": no data rows");
    }

    std::vector<ExperimentRecord> records;
    records.reserve(order.size());
    for (const std::string& label : order) {
        Partial& partial = partials[label];
        if (partial.points.size() < 2) {
            std::ostringstream msg;
            msg << path << ": experiment '" << label << "' has fewer than 2 points";
            throw IoError(msg.str());
        }
        ExperimentRecord record;
        record.label = label;
        record.re = partial.re;
        record.points = make_ess_point_set(std::move(partial.points), label, partial.re);
        record.provenance = path;
        records.push_back(std::move(record));
    }
    return records;
}

void write_ess_csv(const std::vector<EssPointSet>& sets, const std::string& path,
                   const std::string& comment) {
    for (const EssPointSet& set : sets) {
        require_clean_label(set.label);
    }
    std::ofstream out = open_for_write(path);
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line)) {
            out << "# " << line << "\n";
        }
    }
    out << "label,re,x,y\n";
    for (const EssPointSet& set : sets) {
        const std::string re = set.re_tag ? format_double(*set.re_tag) : "";
        for (const EssPoint& p : set.points) {
            out << set.label << "," << re << "," << format_double(p.x) << ","
                << format_double(p.y) << "\n";
        }
    }
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

VelocitySignal read_signal(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path + ": empty file");
    }
    const std::string header = trim(line);
    const std::string prefix = "# spacing=";
    if (header.rfind(prefix, 0) != 0) {
        fail_at(path, 1, "expected header '# spacing=<decimal>'");
    }
    const double spacing = parse_double(header.substr(prefix.size()), path, 1);
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        fail_at(path, 1, "spacing must be positive");
    }

    VelocitySignal signal;
    signal.spacing = spacing;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        const double value = parse_double(line, path, line_no);
        if (!std::isfinite(value)) {
            fail_at(path, line_no, "non-finite sample");
        }
        signal.samples.push_back(value);
    }
    if (signal.samples.size() < 2) {
        throw IoError(path + ": fewer than 2 samples");
    }
    return signal;
}

void write_signal(const VelocitySignal& signal, const std::string& path) {
    validate(signal);
    std::ofstream out = open_for_write(path);
    out << "# spacing=" << format_double(signal.spacing) << "\n";
    for (double v : signal.samples) {
        out << format_double(v) << "\n";
    }
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

namespace {

json line_fit_to_json(const LineFit& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"slope_stderr", fit.slope_stderr},
                {"residual_rms", fit.residual_rms},
                {"n_points", fit.n_points}};
}

LineFit line_fit_from_json(const json& j) {
    LineFit fit;
    fit.slope = j.at("slope").get<double>();
    fit.intercept = j.at("intercept").get<double>();
    fit.slope_stderr = j.at("slope_stderr").get<double>();
    fit.residual_rms = j.at("residual_rms").get<double>();
    fit.n_points = j.at("n_points").get<std::size_t>();
    return fit;
}

template <typename T>
json opt_to_json(const std::optional<T>& value) {
    if (value) {
        return json(*value);
    }
    return json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<T>();
}

}  // namespace

void write_report(const AnalysisReport& report, const std::string& path) {
    json j;
    j["version"] = report.version;
    if (report.timestamp) {
        j["timestamp"] = *report.timestamp;
    }

    j["experiments"] = json::array();
    for (const ExperimentSummary& e : report.experiments) {
        j["experiments"].push_back(json{{"label", e.label},
                                        {"re", opt_to_json(e.re)},
                                        {"n_points", e.n_points},
                                        {"split_index", opt_to_json(e.split_index)},
                                        {"anchored_slope_first", opt_to_json(e.anchored_slope_first)},
                                        {"anchored_slope_last", opt_to_json(e.anchored_slope_last)},
                                        {"provenance", e.provenance}});
    }

    j["per_re_fits"] = json::array();
    for (const PerReFit& f : report.per_re_fits) {
        json entry = line_fit_to_json(f.line);
        entry["label"] = f.label;
        entry["re"] = f.re;
        j["per_re_fits"].push_back(std::move(entry));
    }

    j["excluded"] = json::array();
    for (const ExcludedSet& e : report.excluded) {
        j["excluded"].push_back(json{{"label", e.label}, {"reason", e.reason}});
    }

    if (report.similarity_fit) {
        const SimilaritySummary& s = *report.similarity_fit;
        j["similarity_fit"] = json{{"alpha1_hat", s.alpha1_hat},
                                   {"c0_hat", opt_to_json(s.c0_hat)},
                                   {"c1_hat", opt_to_json(s.c1_hat)},
                                   {"slope_model_residual_rms", s.slope_model_residual_rms}};
    } else {
        j["similarity_fit"] = json(nullptr);
    }

    if (report.comparison) {
        const HypothesisComparison& c = *report.comparison;
        j["comparison"] =
            json{{"rss_shared", c.rss_shared},
                 {"rss_per_re", c.rss_per_re},
                 {"preferred",
                  c.preferred == PreferredModel::ReDependent ? "re_dependent" : "shared"},
                 {"monotone_decreasing", c.monotone_decreasing},
                 {"shared_slope_fit", line_fit_to_json(c.shared_slope_fit)}};
    } else {
        j["comparison"] = json(nullptr);
    }

    j["config"] = json::object();
    for (const auto& [key, value] : report.config) {
        j["config"][key] = value;
    }
    j["digests"] = json::object();
    for (const auto& [key, value] : report.digests) {
        j["digests"][key] = value;
    }

    std::ofstream out = open_for_write(path);
    out << j.dump(2) << "\n";
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

AnalysisReport read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }

    try {
        AnalysisReport report;
        report.version = j.at("version").get<std::string>();
        if (j.contains("timestamp")) {
            report.timestamp = j.at("timestamp").get<std::string>();
        }
        for (const json& e : j.at("experiments")) {
            ExperimentSummary summary;
            summary.label = e.at("label").get<std::string>();
            summary.re = opt_from_json<double>(e.at("re"));
            summary.n_points = e.at("n_points").get<std::size_t>();
            summary.split_index = opt_from_json<std::size_t>(e.at("split_index"));
            summary.anchored_slope_first = opt_from_json<double>(e.at("anchored_slope_first"));
            summary.anchored_slope_last = opt_from_json<double>(e.at("anchored_slope_last"));
            summary.provenance = e.at("provenance").get<std::string>();
            report.experiments.push_back(std::move(summary));
        }
        for (const json& f : j.at("per_re_fits")) {
            PerReFit fit;
            fit.label = f.at("label").get<std::string>();
            fit.re = f.at("re").get<double>();
            fit.line = line_fit_from_json(f);
            report.per_re_fits.push_back(std::move(fit));
        }
        for (const json& e : j.at("excluded")) {
            report.excluded.push_back(
                {e.at("label").get<std::string>(), e.at("reason").get<std::string>()});
        }
        if (!j.at("similarity_fit").is_null()) {
            const json& s = j.at("similarity_fit");
            SimilaritySummary summary;
            summary.alpha1_hat = s.at("alpha1_hat").get<double>();
            summary.c0_hat = opt_from_json<double>(s.at("c0_hat"));
            summary.c1_hat = opt_from_json<double>(s.at("c1_hat"));
            summary.slope_model_residual_rms = s.at("slope_model_residual_rms").get<double>();
            report.similarity_fit = summary;
        }
        if (!j.at("comparison").is_null()) {
            const json& c = j.at("comparison");
            HypothesisComparison comparison;
            comparison.rss_shared = c.at("rss_shared").get<double>();
            comparison.rss_per_re = c.at("rss_per_re").get<double>();
            comparison.preferred = c.at("preferred").get<std::string>() == "re_dependent"
                                       ? PreferredModel::ReDependent
                                       : PreferredModel::Shared;
            comparison.monotone_decreasing = c.at("monotone_decreasing").get<bool>();
            comparison.shared_slope_fit = line_fit_from_json(c.at("shared_slope_fit"));
            report.comparison = comparison;
        }
        for (const auto& [key, value] : j.at("config").items()) {
            report.config[key] = value.get<std::string>();
        }
        for (const auto& [key, value] : j.at("digests").items()) {
            report.digests[key] = value.get<std::string>();
        }
        return report;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

namespace {

std::string file_stem(const std::string& label) {
    std::string stem = label;
    for (char& c : stem) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
        if (!keep) {
            c = '_';
        }
    }
    return stem;
}

}  // namespace

std::vector<std::string> emit_plot_data(const std::vector<EssPointSet>& sets,
                                        const std::vector<SlopeProfile>& profiles,
                                        const std::string& prefix, const PlotOptions& options) {
    if (sets.empty()) {
        throw DomainError("no experiments to plot");
    }
    if (options.slopes && profiles.size() != sets.size()) {
        throw ContractError("profiles must parallel sets");
    }

    double sum_x = 0.0;
    double sum_y = 0.0;
    double min_x = sets.front().points.front().x;
    double max_x = min_x;
    std::size_t total = 0;
    for (const EssPointSet& set : sets) {
        for (const EssPoint& p : set.points) {
            sum_x += p.x;
            sum_y += p.y;
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            ++total;
        }
    }
    if (total == 0) {
        throw DegenerateInputError("no points to plot");
    }
    const double mean_x = sum_x / static_cast<double>(total);
    const double mean_y = sum_y / static_cast<double>(total);
    const double a1 = options.a1.value_or(mean_y - (2.0 / 3.0) * mean_x);
    const double a2 = options.a2.value_or(mean_y - 0.7 * mean_x);

    std::vector<std::string> written;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const std::string stem = file_stem(sets[i].label);
        if (options.points) {
            const std::string path = prefix + stem + "_points.csv";
            std::ofstream out = open_for_write(path);
            out << "x,y\n";
            for (const EssPoint& p : sets[i].points) {
                out << format_double(p.x) << "," << format_double(p.y) << "\n";
            }
            if (!out) {
                throw IoError("write failed for '" + path + "'");
            }
            written.push_back(path);
        }
        if (options.slopes) {
            const std::string path = prefix + stem + "_slopes.csv";
            std::ofstream out = open_for_write(path);
            out << "x,slope\n";
            for (const SlopeEntry& e : profiles[i].entries) {
                out << format_double(e.x) << "," << format_double(e.slope) << "\n";
            }
            if (!out) {
                throw IoError("write failed for '" + path + "'");
            }
            written.push_back(path);
        }
    }

    if (options.overlay) {
        const std::string path = prefix + "overlay.csv";
        std::ofstream out = open_for_write(path);
        out << "x,y_two_thirds,y_seven_tenths\n";
        for (double x : {min_x, max_x}) {
            out << format_double(x) << "," << format_double((2.0 / 3.0) * x + a1) << ","
                << format_double(0.7 * x + a2) << "\n";
        }
        if (!out) {
            throw IoError("write failed for '" + path + "'");
        }
        written.push_back(path);
    }
    return written;
}

std::string file_digest_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for digesting");
    }
    std::uint64_t hash = 14695981039346656037ULL;
    char buffer[65536];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

}  // namespace essfit
