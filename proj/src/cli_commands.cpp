#include "wfda/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wfda/car1.hpp"
#include "wfda/fanova.hpp"
#include "wfda/rng.hpp"

namespace wfda::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

StudyConfig parse_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    StudyConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad config line (want key=value): " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "functions") {
            cfg.functions.clear();
            for (const auto& v : split(value, ','))
                cfg.functions.push_back(test_function_from_string(v));
        } else if (key == "ns") {
            cfg.ns.clear();
            for (const auto& v : split(value, ',')) cfg.ns.push_back(std::stoul(v));
        } else if (key == "snrs") {
            cfg.snrs.clear();
            for (const auto& v : split(value, ',')) cfg.snrs.push_back(std::stod(v));
        } else if (key == "rhos") {
            cfg.rhos.clear();
            for (const auto& v : split(value, ',')) cfg.rhos.push_back(std::stod(v));
        } else if (key == "bases") {
            cfg.bases.clear();
            for (const auto& v : split(value, ','))
                cfg.bases.push_back(basis_from_string(v));
        } else if (key == "replications") {
            cfg.replications = std::stoi(value);
        } else if (key == "n_starts") {
            cfg.n_starts = std::stoi(value);
        } else if (key == "master_seed") {
            cfg.master_seed = std::stoull(value);
        } else if (key == "tol") {
            cfg.tol = std::stod(value);
        } else if (key == "max_iter") {
            cfg.max_iter = std::stoi(value);
        } else if (key == "rank_study") {
            cfg.rank_study = (value == "1" || value == "true");
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    return cfg;
}

Signal read_series_csv(const std::string& path, std::size_t truncate_to) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("InsufficientData: empty file " + path);
    // header row required; locate timestamp/value columns by name, else 0/1
    auto header = split(line, ',');
    int ts_col = 0, val_col = 1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string h = header[i];
        std::transform(h.begin(), h.end(), h.begin(), ::tolower);
        if (h == "timestamp" || h == "time" || h == "t") ts_col = static_cast<int>(i);
        if (h == "value" || h == "y") val_col = static_cast<int>(i);
    }
    if (header.size() < 2)
        throw std::invalid_argument("need at least timestamp and value columns");

    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cols = split(line, ',');
        if (static_cast<int>(cols.size()) <= std::max(ts_col, val_col))
            throw std::invalid_argument("short row in " + path);
        double ts, v;
        try {
            ts = std::stod(cols[ts_col]);
            v = std::stod(cols[val_col]);
        } catch (const std::exception&) {
            throw std::invalid_argument("unparseable row in " + path + ": " + line);
        }
        if (!std::isfinite(ts) || !std::isfinite(v))
            throw std::invalid_argument("non-finite entry in " + path);
        times.push_back(ts);
        values.push_back(v);
    }
    if (truncate_to == 0) {
        std::size_t p = 1;
        while (p * 2 <= values.size()) p *= 2;
        truncate_to = p;
    }
    if (!is_dyadic(truncate_to))
        throw std::invalid_argument("truncation length must be a power of two");
    if (values.size() < truncate_to)
        throw std::invalid_argument("InsufficientData: " + std::to_string(values.size()) +
                                    " rows, need " + std::to_string(truncate_to));
    times.resize(truncate_to);
    values.resize(truncate_to);

    // strictly increasing, equally spaced; gaps are an error (the model
    // assumes equal spacing, interpolation would corrupt rho)
    double dt = 1.0;
    if (truncate_to >= 2) {
        dt = times[1] - times[0];
        if (!(dt > 0.0))
            throw std::invalid_argument("timestamps must be strictly increasing");
        for (std::size_t t = 1; t < truncate_to; ++t) {
            double step = times[t] - times[t - 1];
            if (!(step > 0.0))
                throw std::invalid_argument("timestamps must be strictly increasing");
            if (std::abs(step - dt) > 1e-6 * std::max(1.0, std::abs(dt)))
                throw std::invalid_argument("gap in timestamps at row " +
                                            std::to_string(t));
        }
    }
    return Signal(std::move(values), times.empty() ? 0.0 : times[0], dt);
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
    StudyConfig cfg = parse_study_config(opt.config_path);
    if (opt.seed_given) cfg.master_seed = opt.seed;
    else if (cfg.master_seed == 0)
        throw std::invalid_argument("simulate requires --seed (or master_seed in config)");

    std::filesystem::create_directories(opt.out_dir);
    StudyResult result = run_study(cfg, opt.jobs);

    auto write = [&](const std::string& name, auto writer) {
        std::ofstream os(opt.out_dir + "/" + name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + opt.out_dir + "/" + name);
        writer(result, os);
    };
    write("rho_summary.csv", write_rho_summary);
    write("imse_summary.csv", write_imse_summary);
    write("records.csv", write_records);
    if (cfg.rank_study) write("ranks.csv", write_rank_summary);
    log << "wrote " << (cfg.rank_study ? 4 : 3) << " reports to " << opt.out_dir
        << " (" << result.records.size() << " records)\n";
    return 0;
}

namespace {

Regime regime_from_string(const std::string& s) {
    if (s == "linear") return Regime::LINEAR_PROJECTION;
    if (s == "term") return Regime::TERM_BY_TERM;
    if (s == "block") return Regime::BLOCK;
    throw std::invalid_argument("unknown regime: " + s);
}

}  // namespace

int cmd_fit(const FitOptions& opt, std::ostream& out) {
    if (opt.truncate_to == 0)
        throw std::invalid_argument("fit requires --n <power of two>");
    Signal y = read_series_csv(opt.input_path, opt.truncate_to);

    FitConfig cfg = default_fit_config(y.size(), basis_from_string(opt.basis),
                                       regime_from_string(opt.loop_regime),
                                       regime_from_string(opt.final_regime));
    cfg.initial_rhos.clear();
    rng::Stream gen(rng::stream(opt.seed, 0, 0));
    for (int s = 0; s < opt.starts; ++s)
        cfg.initial_rhos.push_back(gen.uniform(-1.0, 1.0));

    FitResult res = fit(y, cfg);

    out << std::fixed << std::setprecision(4);
    out << "rho_hat: " << res.rho_hat << "\n";
    out << std::defaultfloat << std::setprecision(6);
    out << "sigma_u_hat: " << res.sigma_u_hat << "\n";
    out << "iterations: " << res.iterations << "\n";
    out << "converged: " << (res.converged ? "yes" : "no") << "\n";
    out << "start,initial_rho,final_rho\n";
    out << std::fixed << std::setprecision(6);
    for (std::size_t s = 0; s < res.per_start_rhos.size(); ++s)
        out << s << ',' << cfg.initial_rhos[s] << ',' << res.per_start_rhos[s]
            << "\n";
    out << std::defaultfloat;

    std::ofstream fs(opt.out_path, std::ios::binary);
    if (!fs) throw std::runtime_error("cannot write " + opt.out_path);
    fs << "t,fhat\n" << std::setprecision(10);
    for (std::size_t t = 0; t < res.f_hat.size(); ++t)
        fs << res.f_hat.origin_time + static_cast<double>(t) * res.f_hat.dt << ','
           << res.f_hat[t] << '\n';
    return 0;
}

int cmd_test(const TestOptions& opt, std::ostream& out) {
    Signal y = read_series_csv(opt.input_path, opt.truncate_to);
    Signal ref = read_series_csv(opt.reference_path, opt.truncate_to);
    if (y.size() != ref.size())
        throw std::invalid_argument("input and reference lengths differ after truncation");

    // fit rho on the input, prewhiten both with the same rho
    FitConfig cfg = default_fit_config(y.size(), basis_from_string(opt.basis),
                                       Regime::TERM_BY_TERM, Regime::TERM_BY_TERM);
    cfg.initial_rhos = {0.0, 0.5, 0.9};
    cfg.tol = 1e-10;
    cfg.max_iter = 100;
    FitResult res = fit(y, cfg);

    Signal z = prewhiten(y, res.rho_hat);
    Signal g = prewhiten(ref, res.rho_hat);

    TestConfig tcfg;
    tcfg.alpha = opt.alpha;
    tcfg.eta = opt.eta;
    tcfg.basis = basis_from_string(opt.basis);
    if (opt.branch == "p2") tcfg.branch = TestBranch::P_GE_2;
    else if (opt.branch == "p12") tcfg.branch = TestBranch::P_IN_1_2;
    else if (opt.branch == "adaptive") tcfg.branch = TestBranch::ADAPTIVE_GENERAL;
    else throw std::invalid_argument("unknown branch: " + opt.branch);

    TestOutcome outcome = test_constant_difference(z, g, tcfg);

    out << "rho_hat: " << std::fixed << std::setprecision(4) << res.rho_hat << "\n"
        << std::defaultfloat << std::setprecision(6);
    const std::string j = std::to_string(outcome.j_used);
    if (tcfg.branch == TestBranch::P_GE_2) {
        out << "T(j(" << j << ")),"
            << outcome.statistic << "\n"
            << "v0(j(" << j << "))z," << outcome.critical_value << "\n";
    } else {
        out << "T(j(" << j << "))+Q(j(" << j << ")),"
            << outcome.statistic << "\n"
            << "sqrt(v0^2(" << j << ")+w0^2(" << j << "))z," << outcome.critical_value
            << "\n";
    }
    out << "decision," << (outcome.reject ? "reject" : "accept") << "\n";
    return 0;
}

}  // namespace wfda::cli
