#pragma once

#include <cstdint>
#include <string>

#include "wfda/simlab.hpp"

namespace wfda::cli {

/// Flat key=value study config ('#' comments allowed). Keys mirror
/// StudyConfig; list values are comma separated.
StudyConfig parse_study_config(const std::string& path);

/// CSV ingestion: header row required, timestamp column strictly increasing
/// with constant spacing (a gap is an error), truncation to the FIRST
/// 2^k rows. Throws on malformed input.
Signal read_series_csv(const std::string& path, std::size_t truncate_to);

struct SimulateOptions {
    std::string config_path;
    std::string out_dir;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

struct FitOptions {
    std::string input_path;
    std::string out_path = "fhat.csv";
    std::string basis = "db6";
    std::string loop_regime = "term";   // linear|term
    std::string final_regime = "block";  // term|block
    int starts = 5;
    std::uint64_t seed = 0x77fda5eedULL;
    std::size_t truncate_to = 0;  // required power of two
};

struct TestOptions {
    std::string input_path;
    std::string reference_path;
    double alpha = 0.05;
    std::string branch = "p12";  // p2|p12|adaptive
    double eta = 0.0;            // 0 = estimate
    std::string basis = "db6";
    std::size_t truncate_to = 0;  // 0 = largest power of two available
};

/// Exit codes: 0 success, 2 usage/data error.
int cmd_simulate(const SimulateOptions& opt, std::ostream& log);
int cmd_fit(const FitOptions& opt, std::ostream& out);
int cmd_test(const TestOptions& opt, std::ostream& out);

}  // namespace wfda::cli
