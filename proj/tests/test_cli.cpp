#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>

#include "dualsolver/cli.hpp"
#include "dualsolver/params_io.hpp"
#include "dualsolver/report.hpp"

using namespace dualsolver;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("dualsolve_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("bad flags exit with usage error") {
    CHECK(run_command({"sample", "--no-such-flag"}) == 2);
    CHECK(run_command({}) == 2);
    CHECK(run_command({"sample", "--solver", "nope"}) == 2);
}

TEST_CASE("sample writes the expected grid and is byte-deterministic") {
    TempDir tmp;
    const std::string dir = tmp.file("run");
    const std::vector<std::string> args = {
        "sample", "--solver", "ddim",     "--nfe",  "4",  "--schedule", "ot",
        "--batch", "2",       "--seed",   "7",      "--backbone", "gauss1d",
        "--out-dir", dir};

    setenv("DUALSOLVE_THREADS", "1", 1);
    REQUIRE(run_command(args) == 0);
    const std::string first = read_file(dir + "/samples.csv");

    setenv("DUALSOLVE_THREADS", "4", 1);
    REQUIRE(run_command(args) == 0);
    const std::string second = read_file(dir + "/samples.csv");
    unsetenv("DUALSOLVE_THREADS");

    CHECK(first == second);

    // uniform softmax grid: t = 1-1e-5, 0.75.., 0.50.., 0.25.., 1e-3
    CHECK(first.find("sample_id,step,t,x0") == 0);
    CHECK(first.find("0,0,0.99999,") != std::string::npos);
    CHECK(first.find(",0.001,") != std::string::npos);
    CHECK(fs::exists(dir + "/summary.json"));
}

TEST_CASE("verify passes on a clean build") {
    TempDir tmp;
    const std::string report = tmp.file("report.json");
    CHECK(run_command({"verify", "--schedule", "ot", "--seed", "7", "--out", report}) == 0);
    const std::string text = read_file(report);
    CHECK(text.find("\"all_pass\": true") != std::string::npos);
    // at least 6 suites in the report
    std::size_t count = 0, from = 0;
    while ((from = text.find("\"name\"", from)) != std::string::npos) {
        ++count;
        ++from;
    }
    CHECK(count >= 6);
}

TEST_CASE("interp carries the worked example") {
    TempDir tmp;
    ParamsFile a;
    a.schedule = ScheduleSpec::make(ScheduleKind::Ot);
    a.params = SolverParams::ddim_init(3);
    a.params.pred.gamma = {0.0, 1.0, 2.0};
    ParamsFile b;
    b.schedule = a.schedule;
    b.params = SolverParams::ddim_init(5);
    b.params.pred.gamma = {0.0, 1.0, 2.0, 3.0, 4.0};
    save_params(a, tmp.file("a.json"));
    save_params(b, tmp.file("b.json"));

    const std::string out = tmp.file("c.json");
    REQUIRE(run_command({"interp", tmp.file("a.json"), tmp.file("b.json"), "--nfe", "4",
                         "--out", out}) == 0);
    const ParamsFile c = load_params(out);
    REQUIRE(c.params.steps() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(c.params.pred.gamma[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-12));
    }
}

TEST_CASE("order-check writes csv and svg") {
    TempDir tmp;
    const std::string csv = tmp.file("order.csv");
    const std::string svg = tmp.file("order.svg");
    REQUIRE(run_command({"order-check", "--kind", "p1", "--schedule", "vp-cosine", "--out",
                         csv, "--svg", svg}) == 0);
    const std::string text = read_file(csv);
    CHECK(text.find("kind,h,error,slope") == 0);
    CHECK(read_file(svg).find("<svg") == 0);
}

TEST_CASE("compare writes an error table") {
    TempDir tmp;
    const std::string csv = tmp.file("compare.csv");
    REQUIRE(run_command({"compare", "--schedule", "ot", "--backbone", "gauss1d", "--m-list",
                         "4", "8", "--batch", "2", "--out", csv}) == 0);
    const std::string text = read_file(csv);
    CHECK(text.find("M,solver,mean_abs_error") == 0);
    CHECK(text.find("ddim") != std::string::npos);
    CHECK(text.find("dpmpp2m") != std::string::npos);
    CHECK(text.find("dual-p1c2") != std::string::npos);
}

TEST_CASE("plot-params renders learned curves") {
    TempDir tmp;
    ParamsFile file;
    file.schedule = ScheduleSpec::make(ScheduleKind::Ot);
    file.params = SolverParams::ddim_init(5);
    save_params(file, tmp.file("p.json"));
    const std::string svg = tmp.file("p.svg");
    REQUIRE(run_command({"plot-params", tmp.file("p.json"), "--out", svg}) == 0);
    CHECK(read_file(svg).find("pred.gamma") != std::string::npos);
}

TEST_CASE("learn smoke run produces params and trace") {
    TempDir tmp;
    const std::string params = tmp.file("learned.json");
    const std::string trace = tmp.file("trace.csv");
    REQUIRE(run_command({"learn", "--loss", "hard_label", "--nfe", "2", "--iters", "2",
                         "--batch", "8", "--seed", "1", "--backbone", "mix2", "--out",
                         params, "--trace", trace}) == 0);
    const ParamsFile file = load_params(params);
    CHECK(file.params.steps() == 2);
    CHECK(file.provenance.loss_kind == "hard_label");
    CHECK(file.provenance.iterations == 2);
    const std::string text = read_file(trace);
    CHECK(text.find("iteration,loss,lr") == 0);
}

TEST_CASE("runtime failures exit 1") {
    CHECK(run_command({"interp", "/nonexistent/a.json", "/nonexistent/b.json", "--nfe",
                       "4"}) == 1);
    CHECK(run_command({"sample", "--backbone", "/nonexistent/model.json"}) == 1);
}
