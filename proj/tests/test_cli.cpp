#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

const std::string cli = ESSFIT_CLI_PATH;

struct Scratch {
    fs::path dir;

    explicit Scratch(const std::string& name) : dir(fs::path("scratch_cli") / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string path(const std::string& leaf) const { return (dir / leaf).string(); }
};

int run(const std::string& args) {
    const int status = std::system((cli + " " + args).c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    REQUIRE(out.good());
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("version flag exits cleanly") {
    const Scratch scratch("version");
    const std::string out = scratch.path("out.txt");
    CHECK(run("--version > " + out) == 0);
    CHECK(contains(read_file(out), "0.1.0"));
}

TEST_CASE("usage errors exit with 2") {
    const Scratch scratch("usage");
    const std::string sink = " > " + scratch.path("out.txt") + " 2>&1";
    CHECK(run(sink) == 2);                                 // no subcommand
    CHECK(run("frobnicate" + sink) == 2);                  // unknown subcommand
    CHECK(run("synth --bogus-flag 1" + sink) == 2);        // unknown flag
    CHECK(run("sf --out x.csv" + sink) == 2);              // missing required --signal
    CHECK(run("synth --re 6000" + sink) == 2);             // no output requested
}

TEST_CASE("runtime errors exit with 1 and explain on stderr") {
    const Scratch scratch("runtime");
    const std::string out = scratch.path("out.txt");
    const std::string err = scratch.path("err.txt");

    CHECK(run("fit --in " + scratch.path("missing.csv") + " > " + out + " 2> " + err) == 1);
    CHECK(contains(read_file(err), "error:"));

    const std::string single = scratch.path("single.csv");
    REQUIRE(run("synth --re 6000 --seed 1 --out " + single + " > " + out) == 0);
    CHECK(run("fit --in " + single + " > " + out + " 2> " + err) == 1);
    CHECK(contains(read_file(err), "need >= 2 Reynolds numbers"));
}

TEST_CASE("synth is deterministic for a fixed seed") {
    const Scratch scratch("determinism");
    const std::string a = scratch.path("a.csv");
    const std::string b = scratch.path("b.csv");
    const std::string c = scratch.path("c.csv");
    const std::string args = "synth --re 6000,18000 --noise 0.01 --out ";
    REQUIRE(run(args + a + " --seed 4 > /dev/null") == 0);
    REQUIRE(run(args + b + " --seed 4 > /dev/null") == 0);
    REQUIRE(run(args + c + " --seed 5 > /dev/null") == 0);
    const std::string bytes_a = read_file(a);
    CHECK(!bytes_a.empty());
    CHECK(bytes_a == read_file(b));
    CHECK(bytes_a != read_file(c));
}

TEST_CASE("synth, fit, compare and report form a pipeline") {
    const Scratch scratch("pipeline");
    const std::string data = scratch.path("data.csv");
    const std::string out = scratch.path("out.txt");
    // three decades of inertial separations give the hypothesis comparison
    // enough leverage to resolve the slope differences at this noise level
    REQUIRE(run("synth --re 6000,18000,300000 --r-min 0.044 --r-max 44 --points 96"
                " --noise 0.005 --seed 11 --out " +
                data + " > /dev/null") == 0);

    SUBCASE("fit prints per-Re slopes and the exponent constant") {
        const std::string report = scratch.path("report.json");
        REQUIRE(run("fit --in " + data + " --out " + report + " > " + out) == 0);
        const std::string text = read_file(out);
        CHECK(contains(text, "Re6000"));
        CHECK(contains(text, "alpha1_hat"));
        const std::string json = read_file(report);
        CHECK(contains(json, "alpha1_hat"));
        CHECK(contains(json, "per_re_fits"));
    }

    SUBCASE("compare prints the hypothesis comparison") {
        REQUIRE(run("compare --in " + data + " > " + out) == 0);
        const std::string text = read_file(out);
        CHECK(contains(text, "rss_shared"));
        CHECK(contains(text, "preferred re_dependent"));
        CHECK(contains(text, "monotone_decreasing true"));
    }

    SUBCASE("report emits plots and an identical rerun") {
        const std::string report1 = scratch.path("r1.json");
        const std::string report2 = scratch.path("r2.json");
        const std::string prefix = scratch.path("plot_");
        REQUIRE(run("report --in " + data + " --out " + report1 + " --no-timestamp" +
                    " --plot-prefix " + prefix + " > " + out) == 0);
        REQUIRE(run("report --in " + data + " --out " + report2 + " --no-timestamp > " + out) ==
                0);
        const std::string json = read_file(report1);
        CHECK(json == read_file(report2));
        CHECK(!contains(json, "timestamp"));
        CHECK(fs::exists(scratch.path("plot_Re6000_points.csv")));
        CHECK(fs::exists(scratch.path("plot_Re300000_slopes.csv")));
        CHECK(fs::exists(scratch.path("plot_overlay.csv")));
    }

    SUBCASE("slopes writes one profile per experiment") {
        const std::string prefix = scratch.path("sl_");
        REQUIRE(run("slopes --in " + data + " --out-prefix " + prefix + " > " + out) == 0);
        CHECK(fs::exists(scratch.path("sl_Re6000_slopes.csv")));
        CHECK(fs::exists(scratch.path("sl_Re18000_slopes.csv")));
        CHECK(fs::exists(scratch.path("sl_Re300000_slopes.csv")));
    }
}

TEST_CASE("signal synthesis feeds sf and ess") {
    const Scratch scratch("signal");
    const std::string signal = scratch.path("sig.txt");
    REQUIRE(run("synth --signal-out " + signal + " --signal-n 4096 --seed 3 > /dev/null") == 0);

    const std::string curve = scratch.path("curve.csv");
    REQUIRE(run("sf --signal " + signal + " --order 2 --out " + curve + " > /dev/null") == 0);
    CHECK(contains(read_file(curve), "r,value,count"));

    const std::string ess = scratch.path("ess.csv");
    REQUIRE(run("ess --signal " + signal + " --label probe --re 6000 --out " + ess +
                " > /dev/null") == 0);
    const std::string text = read_file(ess);
    CHECK(contains(text, "label,re,x,y"));
    CHECK(contains(text, "probe"));
}

TEST_CASE("config file supplies defaults and the command line overrides them") {
    const Scratch scratch("config");
    const std::string config = scratch.path("run.cfg");
    write_file(config,
               "# synthesis settings\n"
               "seed = 5\n"
               "noise = 0.02\n"
               "in = unused_elsewhere.csv\n");

    const std::string from_config = scratch.path("a.csv");
    const std::string direct = scratch.path("b.csv");
    REQUIRE(run("synth --config " + config + " --re 6000 --out " + from_config +
                " > /dev/null") == 0);
    REQUIRE(run("synth --seed 5 --noise 0.02 --re 6000 --out " + direct + " > /dev/null") == 0);
    CHECK(read_file(from_config) == read_file(direct));

    const std::string overridden = scratch.path("c.csv");
    const std::string direct9 = scratch.path("d.csv");
    REQUIRE(run("synth --config " + config + " --seed 9 --re 6000 --out " + overridden +
                " > /dev/null") == 0);
    REQUIRE(run("synth --seed 9 --noise 0.02 --re 6000 --out " + direct9 + " > /dev/null") == 0);
    CHECK(read_file(overridden) == read_file(direct9));
    CHECK(read_file(overridden) != read_file(from_config));

    const std::string sink = " > " + scratch.path("out.txt") + " 2>&1";
    CHECK(run("synth --config " + scratch.path("missing.cfg") + " --re 6000 --out x.csv" + sink) ==
          2);
    const std::string bad = scratch.path("bad.cfg");
    write_file(bad, "this line has no equals sign\n");
    CHECK(run("synth --config " + bad + " --re 6000 --out x.csv" + sink) == 2);
}
