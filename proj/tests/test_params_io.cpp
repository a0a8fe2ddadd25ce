#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dualsolver/params_io.hpp"
#include "dualsolver/rng.hpp"

using namespace dualsolver;

namespace {

ParamsFile random_file(std::uint64_t seed, std::size_t M) {
    Rng rng(seed);
    ParamsFile file;
    file.schedule = ScheduleSpec::make(ScheduleKind::VpCosine);
    std::vector<double> theta(SolverParams::flat_size(M));
    for (double& v : theta) v = rng.normal() * 3.0;
    file.params = SolverParams::unflatten(theta, M);
    file.provenance.seed = rng.next_u64();
    file.provenance.loss_kind = "hard_label";
    file.provenance.iterations = 2000;
    return file;
}

}  // namespace

TEST_CASE("roundtrip is bit-exact") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const ParamsFile file = random_file(seed, 2 + seed);
        const ParamsFile back = decode_params(encode_params(file));
        CHECK(back.params.flatten() == file.params.flatten());
        CHECK(back.schedule.kind == file.schedule.kind);
        CHECK(back.schedule.t_min == file.schedule.t_min);
        CHECK(back.provenance.seed == file.provenance.seed);
        CHECK(back.provenance.loss_kind == file.provenance.loss_kind);
        CHECK(back.provenance.iterations == file.provenance.iterations);
    }
}

TEST_CASE("length mismatches name the group") {
    ParamsFile file = random_file(4, 3);
    std::string text = encode_params(file);
    // corrupt: make corr arrays length M by re-encoding a off-by-one document
    ParamsFile bad = file;
    bad.params.corr.gamma.push_back(0.0);
    bad.params.corr.tau_u_raw.push_back(0.0);
    bad.params.corr.tau_v_raw.push_back(0.0);
    bad.params.corr.kappa_u.push_back(0.0);
    bad.params.corr.kappa_v.push_back(0.0);
    CHECK_THROWS_AS(encode_params(bad), std::invalid_argument);

    // hand-edit the document instead: swap corr block for a longer one
    const std::string needle = "\"M\": 3";
    REQUIRE(text.find(needle) != std::string::npos);
    std::string longer = text;
    longer.replace(longer.find(needle), needle.size(), "\"M\": 4");
    CHECK_THROWS_WITH_AS(decode_params(longer), doctest::Contains("pred"),
                         std::invalid_argument);
}

TEST_CASE("unsupported version is rejected") {
    ParamsFile file = random_file(5, 3);
    std::string text = encode_params(file);
    const std::string needle = "\"format_version\": 1";
    REQUIRE(text.find(needle) != std::string::npos);
    text.replace(text.find(needle), needle.size(), "\"format_version\": 2");
    CHECK_THROWS_WITH_AS(decode_params(text), doctest::Contains("format_version"),
                         std::invalid_argument);
}

TEST_CASE("unknown fields are rejected") {
    ParamsFile file = random_file(6, 2);
    std::string text = encode_params(file);
    text.insert(text.find("\"M\""), "\"mystery\": 1,\n  ");
    CHECK_THROWS_WITH_AS(decode_params(text), doctest::Contains("unknown field"),
                         std::invalid_argument);
}

TEST_CASE("non-finite values cannot be encoded") {
    ParamsFile file = random_file(7, 2);
    file.params.pred.kappa_u[0] = std::nan("");
    CHECK_THROWS_WITH_AS(encode_params(file), doctest::Contains("non-finite"),
                         std::invalid_argument);
}

TEST_CASE("malformed documents raise distinct errors") {
    CHECK_THROWS_WITH_AS(decode_params("not json at all"), doctest::Contains("malformed"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(decode_params("{}"), doctest::Contains("format_version"),
                         std::invalid_argument);
}

TEST_CASE("save/load through the filesystem") {
    const ParamsFile file = random_file(8, 4);
    const std::string path = "test_params_io_roundtrip.json";
    save_params(file, path);
    const ParamsFile back = load_params(path);
    CHECK(back.params.flatten() == file.params.flatten());
    std::remove(path.c_str());
}
