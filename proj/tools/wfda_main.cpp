#include <CLI11.hpp>
#include <iostream>

#include "wfda/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Wavelet FANOVA estimation and testing under CAR(1) errors"};
    app.require_subcommand(1);

    wfda::cli::SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo study");
    simulate->add_option("--config", sim.config_path, "Study config (key=value)")
        ->required();
    simulate->add_option("--out", sim.out_dir, "Output directory")->required();
    simulate->add_option("--jobs", sim.jobs, "Worker threads");
    auto* seed_opt = simulate->add_option("--seed", sim.seed, "Master seed");

    wfda::cli::FitOptions fit;
    auto* fitcmd = app.add_subcommand("fit", "Fit rho and f on one series");
    fitcmd->add_option("--input", fit.input_path, "Input CSV")->required();
    fitcmd->add_option("--basis", fit.basis, "db3|db6|sym8");
    fitcmd->add_option("--loop", fit.loop_regime, "linear|term");
    fitcmd->add_option("--final", fit.final_regime, "term|block");
    fitcmd->add_option("--starts", fit.starts, "Number of initial rho values");
    fitcmd->add_option("--seed", fit.seed, "Seed for the initial values");
    fitcmd->add_option("--n", fit.truncate_to, "Truncate to first 2^k rows")
        ->required();
    fitcmd->add_option("--out", fit.out_path, "Where to write f_hat CSV");

    wfda::cli::TestOptions tst;
    auto* testcmd = app.add_subcommand("test", "Constant-difference hypothesis test");
    testcmd->add_option("--input", tst.input_path, "Input CSV")->required();
    testcmd->add_option("--reference", tst.reference_path, "Reference CSV")
        ->required();
    testcmd->add_option("--alpha", tst.alpha, "Significance level");
    testcmd->add_option("--branch", tst.branch, "p2|p12|adaptive");
    testcmd->add_option("--eta", tst.eta, "Known noise level (0 = estimate)");
    testcmd->add_option("--basis", tst.basis, "db3|db6|sym8");
    testcmd->add_option("--n", tst.truncate_to, "Truncate to first 2^k rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            sim.seed_given = seed_opt->count() > 0;
            return wfda::cli::cmd_simulate(sim, std::cout);
        }
        if (fitcmd->parsed()) return wfda::cli::cmd_fit(fit, std::cout);
        if (testcmd->parsed()) return wfda::cli::cmd_test(tst, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
