// Benchmark: serial reference path vs OpenMP replication-parallel path of
// run_study, verifying that both produce identical records.
#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "wfda/simlab.hpp"

using namespace wfda;

namespace {

double time_study(const StudyConfig& cfg, int jobs, StudyResult& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = run_study(cfg, jobs);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"run_study serial vs parallel benchmark"};
    int jobs = 8;
    int replications = 24;
    std::size_t n = 1024;
    app.add_option("--jobs", jobs, "Thread count for the parallel run");
    app.add_option("--replications", replications, "Replications per cell");
    app.add_option("--n", n, "Series length (power of two)");
    CLI11_PARSE(app, argc, argv);

    StudyConfig cfg;
    cfg.functions = {TestFunctionName::DOPPLER};
    cfg.ns = {n};
    cfg.snrs = {7.0};
    cfg.rhos = {0.99};
    cfg.bases = {BasisName::DB6};
    cfg.replications = replications;
    cfg.n_starts = 5;
    cfg.master_seed = 2024;
    cfg.tol = 1e-10;
    cfg.max_iter = 60;

    StudyResult serial, parallel;
    double ts = time_study(cfg, 1, serial);
    double tp = time_study(cfg, jobs, parallel);

    std::ostringstream a, b;
    write_records(serial, a);
    write_records(parallel, b);
    bool identical = a.str() == b.str();

    std::printf("replications: %d  n: %zu  starts: %d\n", replications, n,
                cfg.n_starts);
    std::printf("serial (jobs=1):   %8.3f s\n", ts);
    std::printf("parallel (jobs=%d): %8.3f s  speedup %.2fx\n", jobs, tp, ts / tp);
    std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
