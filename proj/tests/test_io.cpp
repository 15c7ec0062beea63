#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "essfit/error.hpp"
#include "essfit/ess.hpp"
#include "essfit/io.hpp"
#include "essfit/synth.hpp"
#include "helpers.hpp"

using namespace essfit;
using testutil::Gen;

namespace {

namespace fs = std::filesystem;

// Fresh scratch directory per test case; removed on destruction.
struct Scratch {
    fs::path dir;

    explicit Scratch(const std::string& name) : dir(fs::path("scratch_io") / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string path(const std::string& leaf) const { return (dir / leaf).string(); }

    std::string write(const std::string& leaf, const std::string& content) const {
        const std::string p = path(leaf);
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

template <typename Fn>
std::string error_message(Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("read_ess_csv: single experiment with two rows") {
    const Scratch scratch("single");
    const auto path = scratch.write("one.csv",
                                    "label,re,x,y\n"
                                    "C6,6000,0.5,1.25\n"
                                    "C6,6000,1.5,2.0\n");
    const auto records = read_ess_csv(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].label == "C6");
    REQUIRE(records[0].re.has_value());
    CHECK(*records[0].re == 6000.0);
    REQUIRE(records[0].points.points.size() == 2);
    CHECK(records[0].points.points[0].x == 0.5);
    CHECK(records[0].points.points[1].y == 2.0);
}

TEST_CASE("read_ess_csv: four experiments, grid without Re") {
    const Scratch scratch("roster");
    const auto path = scratch.write("roster.csv",
                                    "label,re,x,y\n"
                                    "# digitized points\n"
                                    "C6,6000,0.0,0.1\n"
                                    "C6,6000,1.0,0.8\n"
                                    "C18,18000,0.0,0.2\n"
                                    "C18,18000,1.0,0.9\n"
                                    "J,300000,0.0,0.3\n"
                                    "J,300000,1.0,1.0\n"
                                    "grid,,0.0,0.4\n"
                                    "grid,,1.0,1.1\n");
    const auto records = read_ess_csv(path);
    REQUIRE(records.size() == 4);
    CHECK(records[0].label == "C6");
    CHECK(records[1].label == "C18");
    CHECK(records[2].label == "J");
    CHECK(records[3].label == "grid");
    CHECK(!records[3].re.has_value());
    CHECK(*records[2].re == 300000.0);
}

TEST_CASE("read_ess_csv error cases name the line") {
    const Scratch scratch("errors");

    const auto bad_number = scratch.write("text.csv",
                                          "label,re,x,y\n"
                                          "C6,6000,0.0,0.1\n"
                                          "C6,6000,oops,0.2\n");
    const std::string msg = error_message([&] { read_ess_csv(bad_number); });
    CHECK(contains(msg, ":3:"));
    CHECK(contains(msg, "oops"));

    const auto short_row = scratch.write("short.csv",
                                         "label,re,x,y\n"
                                         "C6,6000,0.0\n");
    CHECK(contains(error_message([&] { read_ess_csv(short_row); }), ":2:"));

    const auto non_finite = scratch.write("inf.csv",
                                          "label,re,x,y\n"
                                          "C6,6000,inf,0.1\n");
    CHECK(contains(error_message([&] { read_ess_csv(non_finite); }), ":2:"));

    const auto empty = scratch.write("empty.csv", "");
    CHECK_THROWS_AS(read_ess_csv(empty), IoError);

    const auto header_only = scratch.write("header.csv", "label,re,x,y\n");
    CHECK_THROWS_AS(read_ess_csv(header_only), IoError);

    const auto wrong_header = scratch.write("wrong.csv", "a,b,c,d\n1,2,3,4\n");
    CHECK_THROWS_AS(read_ess_csv(wrong_header), IoError);

    CHECK_THROWS_AS(read_ess_csv(scratch.path("missing.csv")), IoError);

    const auto conflicting = scratch.write("conflict.csv",
                                           "label,re,x,y\n"
                                           "C6,6000,0.0,0.1\n"
                                           "C6,9000,1.0,0.2\n");
    CHECK_THROWS_AS(read_ess_csv(conflicting), IoError);

    const auto lonely_point = scratch.write("lonely.csv",
                                            "label,re,x,y\n"
                                            "C6,6000,0.0,0.1\n");
    CHECK_THROWS_AS(read_ess_csv(lonely_point), IoError);
}

TEST_CASE("ESS CSV round-trip is bit exact") {
    const Scratch scratch("roundtrip");
    Gen gen(314);
    std::vector<EssPointSet> sets;
    for (int s = 0; s < 3; ++s) {
        std::vector<EssPoint> points;
        double x = gen.uniform(-4.0, -2.0);
        for (int i = 0; i < 10; ++i) {
            points.push_back({x, gen.uniform(-3.0, 3.0)});
            x += gen.uniform(0.05, 0.8);
        }
        sets.push_back(make_ess_point_set(points, "exp" + std::to_string(s),
                                          s == 0 ? std::optional<double>()
                                                 : std::optional<double>(6000.0 * s)));
    }

    const auto path = scratch.path("sets.csv");
    write_ess_csv(sets, path, "synthetic sample");
    const auto records = read_ess_csv(path);
    REQUIRE(records.size() == sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        CHECK(records[s].label == sets[s].label);
        CHECK(records[s].re == sets[s].re_tag);
        REQUIRE(records[s].points.points.size() == sets[s].points.size());
        for (std::size_t i = 0; i < sets[s].points.size(); ++i) {
            CHECK(records[s].points.points[i].x == sets[s].points[i].x);
            CHECK(records[s].points.points[i].y == sets[s].points[i].y);
        }
    }

    // comment lines made it out as comments
    std::ifstream in(path);
    std::string first_line;
    std::getline(in, first_line);
    CHECK(contains(first_line, "synthetic sample"));
    CHECK(first_line.front() == '#');
}

TEST_CASE("write_ess_csv rejects unserializable labels") {
    const Scratch scratch("labels");
    const auto set = make_ess_point_set({{0.0, 0.0}, {1.0, 1.0}}, "a,b");
    CHECK_THROWS_AS(write_ess_csv({set}, scratch.path("bad.csv")), ContractError);
}

TEST_CASE("read_signal examples") {
    const Scratch scratch("signal");
    const auto path = scratch.write("sig.txt",
                                    "# spacing=0.001\n"
                                    "0.5\n-0.25\n0.125\n2.0\n");
    const auto signal = read_signal(path);
    CHECK(signal.spacing == 0.001);
    REQUIRE(signal.samples.size() == 4);
    CHECK(signal.samples[1] == -0.25);

    const auto zero_spacing = scratch.write("zero.txt", "# spacing=0\n0.5\n1.0\n");
    CHECK_THROWS_AS(read_signal(zero_spacing), IoError);

    const auto no_header = scratch.write("nohead.txt", "0.5\n1.0\n");
    CHECK_THROWS_AS(read_signal(no_header), IoError);

    const auto too_short = scratch.write("short.txt", "# spacing=0.001\n0.5\n");
    CHECK_THROWS_AS(read_signal(too_short), IoError);
}

TEST_CASE("large generated signal round-trips bit exactly") {
    const Scratch scratch("bigsignal");
    const auto signal = synth_velocity_signal(1 << 20, 5.0 / 3.0, 0.001, 77);
    const auto path = scratch.path("signal.txt");
    write_signal(signal, path);
    const auto back = read_signal(path);
    CHECK(back.spacing == signal.spacing);
    REQUIRE(back.samples.size() == signal.samples.size());
    bool identical = true;
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        identical = identical && back.samples[i] == signal.samples[i];
    }
    CHECK(identical);
}

TEST_CASE("report round-trip preserves every numeric field") {
    const Scratch scratch("report");
    AnalysisReport report;
    report.version = "0.1.0";
    report.timestamp = "2026-01-02T03:04:05Z";

    ExperimentSummary summary;
    summary.label = "C6";
    summary.re = 6000.0;
    summary.n_points = 17;
    summary.split_index = 3;
    summary.anchored_slope_first = 2.0 / 3.0;
    summary.anchored_slope_last = 0.70001;
    summary.provenance = "from test";
    report.experiments.push_back(summary);

    ExperimentSummary bare;
    bare.label = "grid";
    bare.n_points = 5;
    report.experiments.push_back(bare);

    PerReFit fit;
    fit.re = 6000.0;
    fit.label = "C6";
    fit.line.slope = 0.1 + 0.2;  // deliberately not representable exactly
    fit.line.intercept = -1.0 / 3.0;
    fit.line.slope_stderr = 1e-300;
    fit.line.residual_rms = 6.02214076e23;
    fit.line.n_points = 17;
    report.per_re_fits.push_back(fit);

    report.excluded.push_back({"grid", "no Reynolds number tag"});

    SimilaritySummary similarity;
    similarity.alpha1_hat = 0.29;
    similarity.c0_hat = 1.5;
    similarity.slope_model_residual_rms = 1.0 / 7.0;
    report.similarity_fit = similarity;

    HypothesisComparison comparison;
    comparison.rss_shared = 0.25;
    comparison.rss_per_re = 0.125;
    comparison.preferred = PreferredModel::ReDependent;
    comparison.monotone_decreasing = true;
    comparison.shared_slope_fit.slope = 0.7;
    comparison.shared_slope_fit.n_points = 34;
    report.comparison = comparison;

    report.config["margin"] = "0.05";
    report.digests["input.csv"] = "0123456789abcdef";

    const auto path = scratch.path("report.json");
    write_report(report, path);
    const AnalysisReport back = read_report(path);

    CHECK(back.version == report.version);
    CHECK(back.timestamp == report.timestamp);
    REQUIRE(back.experiments.size() == 2);
    CHECK(back.experiments[0].re == summary.re);
    CHECK(back.experiments[0].split_index == summary.split_index);
    CHECK(back.experiments[0].anchored_slope_first == summary.anchored_slope_first);
    CHECK(!back.experiments[1].re.has_value());
    REQUIRE(back.per_re_fits.size() == 1);
    CHECK(back.per_re_fits[0].line.slope == fit.line.slope);
    CHECK(back.per_re_fits[0].line.slope_stderr == fit.line.slope_stderr);
    CHECK(back.per_re_fits[0].line.residual_rms == fit.line.residual_rms);
    REQUIRE(back.similarity_fit.has_value());
    CHECK(back.similarity_fit->alpha1_hat == similarity.alpha1_hat);
    CHECK(back.similarity_fit->c0_hat == similarity.c0_hat);
    CHECK(!back.similarity_fit->c1_hat.has_value());
    REQUIRE(back.comparison.has_value());
    CHECK(back.comparison->rss_per_re == comparison.rss_per_re);
    CHECK(back.comparison->preferred == PreferredModel::ReDependent);
    CHECK(back.comparison->monotone_decreasing);
    CHECK(back.config.at("margin") == "0.05");
    CHECK(back.digests.at("input.csv") == "0123456789abcdef");
}

TEST_CASE("report without timestamp serializes and reads back") {
    const Scratch scratch("notime");
    AnalysisReport report;
    report.version = "0.1.0";
    const auto path = scratch.path("r.json");
    write_report(report, path);
    const AnalysisReport back = read_report(path);
    CHECK(!back.timestamp.has_value());
}

TEST_CASE("emit_plot_data writes 2 files per experiment plus the overlay") {
    const Scratch scratch("plots");
    std::vector<EssPointSet> sets;
    std::vector<SlopeProfile> profiles;
    for (int s = 0; s < 4; ++s) {
        std::vector<EssPoint> points;
        for (double x : {0.0, 1.0, 2.0}) {
            points.push_back({x + s, 0.7 * x});
        }
        sets.push_back(make_ess_point_set(points, "exp" + std::to_string(s)));
        profiles.push_back(anchored_local_slopes(sets.back()));
    }
    const auto written =
        emit_plot_data(sets, profiles, (scratch.dir / "plot_").string(), PlotOptions{});
    CHECK(written.size() == 9);
    for (const auto& path : written) {
        CHECK(fs::exists(path));
    }
    CHECK(fs::exists(scratch.dir / "plot_exp0_points.csv"));
    CHECK(fs::exists(scratch.dir / "plot_exp3_slopes.csv"));
    CHECK(fs::exists(scratch.dir / "plot_overlay.csv"));
}

TEST_CASE("emit_plot_data refuses empty input before writing") {
    const Scratch scratch("noplots");
    CHECK_THROWS_AS(emit_plot_data({}, {}, (scratch.dir / "p_").string(), PlotOptions{}),
                    DomainError);
    CHECK(fs::is_empty(scratch.dir));

    const auto set = make_ess_point_set({{0.0, 0.0}, {1.0, 1.0}}, "a");
    CHECK_THROWS_AS(emit_plot_data({set}, {}, (scratch.dir / "p_").string(), PlotOptions{}),
                    ContractError);
}

TEST_CASE("file_digest_hex matches the frozen FNV-1a reference") {
    const Scratch scratch("digest");
    const auto path = scratch.write("abc.txt", "abc");
    CHECK(file_digest_hex(path) == "e71fa2190541574b");
    CHECK(file_digest_hex(path) == file_digest_hex(path));
    CHECK_THROWS_AS(file_digest_hex(scratch.path("nope.txt")), IoError);
}

TEST_CASE("format_double round-trips tricky values") {
    for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0, -1e-300, 6.02214076e23, 0.0, -0.25,
                     3.141592653589793}) {
        const std::string text = format_double(v);
        CHECK(std::stod(text) == v);
    }
}
