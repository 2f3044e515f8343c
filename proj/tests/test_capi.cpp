// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Exercises the shared-library C interface and the CLI binary built on it.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sra.h"
#include "sra/config.hpp"
#include "sra/geometry.hpp"

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p) : path(p) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const char* kTinyConfig = R"({
  "array": { "tentacles": 2, "elements_per_tentacle": 2 },
  "channel": { "users": 2, "clusters": 2, "paths_per_cluster": 3 },
  "sweep": { "axis": "snr", "values": [10] },
  "architectures": ["fixed", "sra"],
  "realizations": 2,
  "seed": 5,
  "output": "capi_out.csv",
  "sca": { "max_iterations": 5 }
})";

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SRA_CLI_BINARY) + " " + args +
                            " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("version and status strings") {
    CHECK(std::strlen(sra_version()) > 0);
    CHECK(std::string(sra_status_message(SRA_OK)) == "ok");
    CHECK(std::strlen(sra_status_message(SRA_ERROR_RANK_DEFICIENT)) > 0);
}

TEST_CASE("config handles") {
    SUBCASE("default config text parses") {
        sra_config* cfg = nullptr;
        REQUIRE(sra_config_parse_string(sra_default_config(), &cfg) == SRA_OK);
        CHECK(std::string(sra_config_output_path(cfg)) == "results.csv");
        CHECK(sra_config_set_base_seed(cfg, 42) == SRA_OK);
        CHECK(sra_config_set_output_path(cfg, "elsewhere.csv") == SRA_OK);
        CHECK(std::string(sra_config_output_path(cfg)) == "elsewhere.csv");
        sra_config_free(cfg);
    }
    SUBCASE("parse failure reports a message") {
        sra_config* cfg = nullptr;
        CHECK(sra_config_parse_string("{ nope", &cfg) == SRA_ERROR_PARSE);
        CHECK(cfg == nullptr);
        CHECK(std::strlen(sra_last_error()) > 0);
    }
    SUBCASE("null arguments are rejected") {
        CHECK(sra_config_parse_string(nullptr, nullptr) ==
              SRA_ERROR_INVALID_ARGUMENT);
        sra_config* cfg = nullptr;
        CHECK(sra_config_parse_file("does-not-exist.json", &cfg) ==
              SRA_ERROR_IO);
    }
}

TEST_CASE("sweep through the C interface") {
    sra_config* cfg = nullptr;
    REQUIRE(sra_config_parse_string(kTinyConfig, &cfg) == SRA_OK);
    sra_sweep_result* result = nullptr;
    REQUIRE(sra_sweep_run(cfg, &result) == SRA_OK);
    REQUIRE(sra_sweep_row_count(result) == 2);  // 2 architectures x 1 value

    sra_sweep_row row;
    REQUIRE(sra_sweep_row_get(result, 0, &row) == SRA_OK);
    CHECK(std::string(row.architecture) == "fixed");
    CHECK(std::string(row.sweep_axis) == "snr");
    CHECK(row.sweep_value == 10.0);
    CHECK(row.realizations == 2);
    CHECK(row.failures == 0);
    const double fixed_mean = row.mean_rate;
    REQUIRE(sra_sweep_row_get(result, 1, &row) == SRA_OK);
    CHECK(std::string(row.architecture) == "sra");
    CHECK(row.mean_rate >= fixed_mean);

    CHECK(sra_sweep_row_get(result, 7, &row) == SRA_ERROR_INVALID_ARGUMENT);

    TempFile tmp("capi_sweep.csv");
    CHECK(sra_sweep_write_csv(result, tmp.path.c_str()) == SRA_OK);
    CHECK(read_file(tmp.path).rfind("architecture,", 0) == 0);
    sra_sweep_result_free(result);
    sra_config_free(cfg);
}

TEST_CASE("trace through the C interface") {
    sra_config* cfg = nullptr;
    REQUIRE(sra_config_parse_string(kTinyConfig, &cfg) == SRA_OK);
    sra_trace* trace = nullptr;
    REQUIRE(sra_trace_run(cfg, 0, &trace) == SRA_OK);
    REQUIRE(sra_trace_row_count(trace) >= 1);
    sra_trace_row row;
    REQUIRE(sra_trace_row_get(trace, 0, &row) == SRA_OK);
    CHECK(row.iteration == 0);
    CHECK(row.accepted == 1);
    CHECK(sra_trace_final_rate(trace) >= row.sum_rate - 1e-12);
    sra_trace_free(trace);
    sra_config_free(cfg);
}

TEST_CASE("layout computation matches the core library") {
    sra_array_params params{2, 2, 0.5, 0.2, 5.0, 0.25, 0.0};
    const double amplitudes[2] = {0.1, 0.2};
    const double freqs[2] = {2.0, 5.0};
    sra_layout* layout = nullptr;
    REQUIRE(sra_layout_compute(&params, amplitudes, freqs, &layout) == SRA_OK);
    REQUIRE(sra_layout_element_count(layout) == 4);
    double xyz[12];
    REQUIRE(sra_layout_positions(layout, xyz) == SRA_OK);

    sra::ArrayConstants consts;
    consts.tentacles = 2;
    consts.elements_per_tentacle = 2;
    consts.arc_length = 0.5;
    consts.wavelength = 0.25;
    sra::DeformationState state;
    state.amplitudes = Eigen::Vector2d(0.1, 0.2);
    state.spatial_freqs = Eigen::Vector2d(2.0, 5.0);
    const auto expected = sra::element_positions(state, consts);
    for (int e = 0; e < 4; ++e) {
        CHECK(xyz[3 * e + 0] == expected.positions[e].x());
        CHECK(xyz[3 * e + 1] == expected.positions[e].y());
        CHECK(xyz[3 * e + 2] == expected.positions[e].z());
    }

    TempFile tmp("capi_layout.csv");
    CHECK(sra_layout_write_csv(layout, tmp.path.c_str()) == SRA_OK);
    CHECK(read_file(tmp.path).rfind("m,n,x,y,z\n", 0) == 0);
    sra_layout_free(layout);

    // Infeasible deformation is a domain error.
    const double bad[2] = {0.5, 0.5};
    sra_layout* rejected = nullptr;
    CHECK(sra_layout_compute(&params, bad, freqs, &rejected) ==
          SRA_ERROR_DOMAIN);
    CHECK(rejected == nullptr);
}

TEST_CASE("channel dump through the C interface") {
    sra_config* cfg = nullptr;
    REQUIRE(sra_config_parse_string(kTinyConfig, &cfg) == SRA_OK);
    sra_channel* channel = nullptr;
    REQUIRE(sra_channel_compute(cfg, 0, nullptr, nullptr, &channel) == SRA_OK);
    int users = 0, elements = 0;
    REQUIRE(sra_channel_dims(channel, &users, &elements) == SRA_OK);
    CHECK(users == 2);
    CHECK(elements == 4);
    double re = 0.0, im = 0.0;
    REQUIRE(sra_channel_entry(channel, 1, 1, &re, &im) == SRA_OK);
    CHECK((re != 0.0 || im != 0.0));
    CHECK(sra_channel_entry(channel, 0, 1, &re, &im) ==
          SRA_ERROR_INVALID_ARGUMENT);
    TempFile tmp("capi_channel.csv");
    CHECK(sra_channel_write_csv(channel, tmp.path.c_str()) == SRA_OK);
    CHECK(read_file(tmp.path).rfind("k,element,re,im\n", 0) == 0);
    sra_channel_free(channel);
    sra_config_free(cfg);
}

TEST_CASE("CLI exit codes and determinism") {
    TempFile cfg_file("cli_test_config.json");
    write_file(cfg_file.path, kTinyConfig);

    SUBCASE("validate accepts a good config") {
        CHECK(run_cli("validate --config " + cfg_file.path) == 0);
    }
    SUBCASE("validate rejects a bad config") {
        TempFile bad("cli_bad_config.json");
        write_file(bad.path, "{\"realizations\": 0}");
        CHECK(run_cli("validate --config " + bad.path) == 1);
        CHECK(run_cli("validate --config no-such-file.json") == 1);
    }
    SUBCASE("unknown flags exit with usage error") {
        CHECK(run_cli("run --bogus-flag 3") == 1);
        CHECK(run_cli("frobnicate") == 1);
    }
    SUBCASE("run is byte deterministic and honors --seed and --out") {
        CHECK(run_cli("run --config " + cfg_file.path + " --out .") == 0);
        const std::string first = read_file("capi_out.csv");
        CHECK(run_cli("run --config " + cfg_file.path + " --out .") == 0);
        CHECK(read_file("capi_out.csv") == first);
        CHECK(first.rfind("architecture,", 0) == 0);

        CHECK(run_cli("run --config " + cfg_file.path + " --seed 123 --out .") ==
              0);
        CHECK(read_file("capi_out.csv") != first);
        std::remove("capi_out.csv");
    }
    SUBCASE("trace and geometry subcommands write their files") {
        TempFile trace_csv("cli_trace.csv");
        CHECK(run_cli("trace --config " + cfg_file.path +
                      " --realization 1 --out " + trace_csv.path) == 0);
        CHECK(read_file(trace_csv.path)
                  .rfind("iteration,sum_rate,grad_norm,step_norm,accepted\n",
                         0) == 0);

        TempFile layout_csv("cli_layout.csv");
        CHECK(run_cli("geometry --A 0.1 --v 2.0 --tentacles 2 --elements 2 "
                      "--out " +
                      layout_csv.path) == 0);
        CHECK(read_file(layout_csv.path).rfind("m,n,x,y,z\n", 0) == 0);
        CHECK(run_cli("geometry --A 0.5,0.5 --v 9,9 --tentacles 2 "
                      "--elements 2 --out " +
                      layout_csv.path) == 1);  // infeasible

        TempFile channel_csv("cli_channel.csv");
        CHECK(run_cli("channel --config " + cfg_file.path +
                      " --realization 0 --out " + channel_csv.path) == 0);
        CHECK(read_file(channel_csv.path).rfind("k,element,re,im\n", 0) == 0);
    }
}
