// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sra/baselines.hpp"
#include "sra/config.hpp"
#include "sra/experiment.hpp"

namespace {

std::string small_config_json(const std::string& extra = "") {
    return R"({
  "array": { "tentacles": 2, "elements_per_tentacle": 2 },
  "channel": { "users": 2, "clusters": 2, "paths_per_cluster": 3 },
  "sweep": { "axis": "snr", "values": [10, 20] },
  "architectures": ["fixed", "sra"],
  "realizations": 4,
  "seed": 9,
  "sca": { "max_iterations": 6, "starts": 1 })" +
           extra + "\n}";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p) : path(p) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("default configuration parses and validates") {
    const auto cfg = sra::parse_config(sra::default_config_json());
    CHECK(cfg.array.tentacles == 8);
    CHECK(cfg.array.elements_per_tentacle == 4);
    CHECK(cfg.channel.users == 2);
    CHECK(cfg.channel.clusters == 3);
    CHECK(cfg.channel.paths_per_cluster == 10);
    CHECK(cfg.channel.directivity.kappa == 2.0);
    CHECK(cfg.realizations == 50);
    // 1.2 GHz carrier.
    CHECK(cfg.array.wavelength == doctest::Approx(0.2498).epsilon(1e-3));
    CHECK(cfg.array.effective_arc_length() ==
          doctest::Approx(2.0 * cfg.array.wavelength).epsilon(1e-12));
    CHECK(cfg.power_budget_for(20.0) == doctest::Approx(100.0));
}

TEST_CASE("config parser rejects malformed input") {
    CHECK_THROWS_AS(sra::parse_config("not json"), sra::config_error);
    CHECK_THROWS_AS(sra::parse_config("[1,2]"), sra::config_error);
    CHECK_THROWS_AS(sra::parse_config(R"({"unknown_key": 1})"),
                    sra::config_error);
    CHECK_THROWS_AS(sra::parse_config(R"({"array": {"bogus": 1}})"),
                    sra::config_error);
    CHECK_THROWS_AS(sra::parse_config(R"({"channel": {"users": 0}})"),
                    sra::config_error);
    CHECK_THROWS_AS(
        sra::parse_config(R"({"channel": {"directivity": 0.5}})"),
        sra::config_error);
    CHECK_THROWS_AS(
        sra::parse_config(R"({"sweep": {"axis": "sideways", "values": [1]}})"),
        sra::config_error);
    CHECK_THROWS_AS(
        sra::parse_config(
            R"({"array": {"tentacles": 2, "elements_per_tentacle": 2},
                "sweep": {"axis": "users", "values": [5]}})"),
        sra::config_error);
    CHECK_THROWS_AS(
        sra::parse_config(R"({"architectures": ["warp-drive"]})"),
        sra::config_error);
    CHECK_THROWS_AS(sra::parse_config(R"({"realizations": 0})"),
                    sra::config_error);
}

TEST_CASE("directivity accepts the omni literal") {
    const auto cfg = sra::parse_config(R"({"channel": {"directivity": "omni"}})");
    CHECK(cfg.channel.directivity.omnidirectional);
}

TEST_CASE("single fixed-architecture sweep equals the direct evaluation") {
    auto cfg = sra::parse_config(R"({
      "array": { "tentacles": 2, "elements_per_tentacle": 2 },
      "channel": { "users": 2, "clusters": 2, "paths_per_cluster": 3 },
      "sweep": { "axis": "snr", "values": [17] },
      "architectures": ["fixed"],
      "realizations": 1,
      "seed": 12
    })");
    const auto result = sra::run_sweep(cfg);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].realization_count == 1);
    CHECK(result.rows[0].failures == 0);
    CHECK(result.rows[0].std_rate == 0.0);

    sra::ChannelConfig channel = cfg.channel;
    channel.seed = cfg.base_seed ^ 0ULL;
    const auto paths = sra::draw_paths(channel);
    const double direct =
        sra::fixed_ccaa_rate(paths, cfg.array, channel,
                             cfg.power_budget_for(17.0), cfg.noise_power)
            .sum_rate;
    CHECK(result.rows[0].mean_rate == direct);
}

TEST_CASE("paired sweep keeps the optimizer above the fixed baseline") {
    const auto cfg = sra::parse_config(small_config_json());
    const auto result = sra::run_sweep(cfg);
    REQUIRE(result.rows.size() == 4);  // 2 architectures x 2 values
    // Rows are grouped architecture-major in config order.
    for (int vi = 0; vi < 2; ++vi) {
        const auto& fixed = result.rows[vi];
        const auto& sra_row = result.rows[2 + vi];
        CHECK(fixed.architecture == sra::Architecture::fixed);
        CHECK(sra_row.architecture == sra::Architecture::sra);
        CHECK(fixed.sweep_value == sra_row.sweep_value);
        CHECK(sra_row.mean_rate >= fixed.mean_rate);
    }
}

TEST_CASE("sweeps are deterministic") {
    const auto cfg = sra::parse_config(small_config_json());
    const auto a = sra::run_sweep(cfg);
    const auto b = sra::run_sweep(cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean_rate == b.rows[i].mean_rate);
        CHECK(a.rows[i].std_rate == b.rows[i].std_rate);
    }
}

TEST_CASE("users axis resizes the user population") {
    auto cfg = sra::parse_config(R"({
      "array": { "tentacles": 2, "elements_per_tentacle": 2 },
      "channel": { "users": 2, "clusters": 1, "paths_per_cluster": 2 },
      "sweep": { "axis": "users", "values": [1, 3] },
      "architectures": ["fixed"],
      "realizations": 2,
      "seed": 3
    })");
    const auto result = sra::run_sweep(cfg);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].sweep_value == 1.0);
    CHECK(result.rows[1].sweep_value == 3.0);
    CHECK(result.rows[0].mean_rate > 0.0);
    CHECK(result.rows[1].mean_rate > 0.0);
}

TEST_CASE("CSV output round-trips") {
    sra::SweepResult result;
    result.sweep_axis = sra::SweepAxis::snr;

    SUBCASE("empty result is a header-only file") {
        TempFile tmp("test_empty.csv");
        sra::emit_csv(result, tmp.path);
        const std::string text = read_file(tmp.path);
        CHECK(text ==
              "architecture,sweep_axis,sweep_value,mean_rate,std_rate,n,failures\n");
    }
    SUBCASE("one row means exactly two lines") {
        result.rows.push_back({sra::Architecture::sra, sra::SweepAxis::snr,
                               20.0, 12.345678, 1.23456789, 50, 2});
        TempFile tmp("test_single.csv");
        sra::emit_csv(result, tmp.path);
        const std::string text = read_file(tmp.path);
        CHECK(text ==
              "architecture,sweep_axis,sweep_value,mean_rate,std_rate,n,failures\n"
              "sra,snr,20,12.3457,1.23457,50,2\n");
    }
    SUBCASE("parse-back reproduces the numbers to format precision") {
        result.rows.push_back({sra::Architecture::fixed, sra::SweepAxis::snr,
                               7.5, 3.14159265, 0.271828182, 10, 0});
        TempFile tmp("test_roundtrip.csv");
        sra::emit_csv(result, tmp.path);
        std::ifstream in(tmp.path);
        std::string header, line;
        std::getline(in, header);
        std::getline(in, line);
        std::string arch, axis;
        double value, mean, stddev;
        int n, failures;
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, arch, ',');
        std::getline(ss, axis, ',');
        std::getline(ss, field, ',');
        value = std::stod(field);
        std::getline(ss, field, ',');
        mean = std::stod(field);
        std::getline(ss, field, ',');
        stddev = std::stod(field);
        std::getline(ss, field, ',');
        n = std::stoi(field);
        std::getline(ss, field, ',');
        failures = std::stoi(field);
        CHECK(arch == "fixed");
        CHECK(axis == "snr");
        CHECK(value == doctest::Approx(7.5).epsilon(1e-9));
        CHECK(mean == doctest::Approx(3.14159265).epsilon(1e-5));
        CHECK(stddev == doctest::Approx(0.271828182).epsilon(1e-5));
        CHECK(n == 10);
        CHECK(failures == 0);
    }
    SUBCASE("unwritable path raises with context") {
        CHECK_THROWS_WITH_AS(sra::emit_csv(result, "/nonexistent-dir/x.csv"),
                             doctest::Contains("/nonexistent-dir/x.csv"),
                             std::runtime_error);
    }
}

TEST_CASE("trace runs are deterministic and exportable") {
    auto cfg = sra::parse_config(small_config_json());
    const auto a = sra::run_trace(cfg, 1);
    const auto b = sra::run_trace(cfg, 1);
    CHECK(a.sum_rate == b.sum_rate);
    REQUIRE(a.trace.entries.size() == b.trace.entries.size());

    TempFile tmp("test_trace.csv");
    sra::emit_trace_csv(a.trace, tmp.path);
    const std::string text = read_file(tmp.path);
    CHECK(text.find("iteration,sum_rate,grad_norm,step_norm,accepted\n") == 0);
    size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == a.trace.entries.size() + 1);
}

TEST_CASE("channel dump matches the direct assembly") {
    auto cfg = sra::parse_config(small_config_json());
    const auto H =
        sra::channel_for_realization(cfg, 2, sra::DeformationState());
    sra::ChannelConfig channel = cfg.channel;
    channel.seed = cfg.base_seed ^ 2ULL;
    const auto layout = sra::element_positions(
        sra::DeformationState::zero(cfg.array.tentacles), cfg.array);
    const auto expected =
        sra::assemble_channel(layout, sra::draw_paths(channel), channel);
    CHECK(H == expected);
}
