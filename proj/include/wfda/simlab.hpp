#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "wfda/cochrane_orcutt.hpp"
#include "wfda/signal.hpp"

namespace wfda {

enum class TestFunctionName {
    DOPPLER,
    HEAVISINE,
    BUMPS,
    BLOCKS,
    SPIKES,
    BLIP,
    CORNER,
    WAVE,
    ANGLES,
    PARABOLAS,
    TIME_SHIFTED_SINE,
    CUSP,
};

TestFunctionName test_function_from_string(const std::string& name);
std::string to_string(TestFunctionName name);

/// Samples at midpoints t_k = (k + 1/2)/n.
Signal make_test_function(TestFunctionName name, std::size_t n);

/// Rescale so that sd(out)/sigma_p = target_snr.
Signal scale_to_snr(const Signal& f, double sigma_p, double target_snr);

/// (1/n) sum (f_hat - f)^2.
double imse(const Signal& f_hat, const Signal& f);

struct StudyConfig {
    std::vector<TestFunctionName> functions = {TestFunctionName::DOPPLER};
    std::vector<std::size_t> ns = {512};
    std::vector<double> snrs = {7.0};
    std::vector<double> rhos = {0.99};
    std::vector<BasisName> bases = {BasisName::DB6};
    int replications = 100;
    int n_starts = 50;
    std::uint64_t master_seed = 0;
    double tol = 1e-15;
    int max_iter = 250;
    bool rank_study = false;  // fixed-rho competitor ranking (expensive)
};

/// One (cell, replication, regime) record.
struct StudyRecord {
    TestFunctionName function;
    std::size_t n;
    double snr;
    double rho;
    BasisName basis;
    std::string regime;  // "L", "NT", "NB"
    int replication;
    double rho_hat;
    double imse_f;
    int iterations;
    bool converged;
};

struct RankSummary {
    std::string competitor;  // "rho=-0.9", ..., "adaptive"
    double mean_rank;        // 12 = best (smallest IMSE)
    double median_rank;
};

struct StudyResult {
    std::vector<StudyRecord> records;
    std::vector<RankSummary> ranks;
};

/// Full factorial over the config. jobs > 1 runs replications on OpenMP
/// threads; the output is invariant to jobs (per-replication seed streams).
StudyResult run_study(const StudyConfig& cfg, int jobs = 1);

/// Summary CSV emission (schemas: rho_summary.csv, imse_summary.csv, ranks.csv).
void write_rho_summary(const StudyResult& result, std::ostream& os);
void write_imse_summary(const StudyResult& result, std::ostream& os);
void write_rank_summary(const StudyResult& result, std::ostream& os);
void write_records(const StudyResult& result, std::ostream& os);

}  // namespace wfda
