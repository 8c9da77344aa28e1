#include "wfda/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "wfda/car1.hpp"
#include "wfda/rng.hpp"

namespace wfda {

namespace {

using std::numbers::pi;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double doppler(double t) {
    return std::sqrt(t * (1.0 - t)) * std::sin(2.0 * pi * 1.05 / (t + 0.05));
}

double heavisine(double t) {
    return 4.0 * std::sin(4.0 * pi * t) - sgn(t - 0.3) - sgn(0.72 - t);
}

double bumps(double t) {
    static const double pos[] = {0.1, 0.13, 0.15, 0.23, 0.25, 0.40,
                                 0.44, 0.65, 0.76, 0.78, 0.81};
    static const double hgt[] = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                 2.1, 4.3, 3.1, 5.1, 4.2};
    static const double wth[] = {0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                                 0.01, 0.01, 0.005, 0.008, 0.005};
    double v = 0.0;
    for (int j = 0; j < 11; ++j)
        v += hgt[j] * std::pow(1.0 + std::abs((t - pos[j]) / wth[j]), -4.0);
    return v;
}

double blocks(double t) {
    static const double pos[] = {0.1, 0.13, 0.15, 0.23, 0.25, 0.40,
                                 0.44, 0.65, 0.76, 0.78, 0.81};
    static const double hgt[] = {4.0, -5.0, 3.0, -4.0, 5.0, -4.2,
                                 2.1, 4.3, -3.1, 2.1, -4.2};
    double v = 0.0;
    for (int j = 0; j < 11; ++j) v += hgt[j] * (1.0 + sgn(t - pos[j])) / 2.0;
    return v;
}

double spikes(double t) {
    return std::exp(-500.0 * (t - 0.23) * (t - 0.23)) +
           2.0 * std::exp(-2000.0 * (t - 0.33) * (t - 0.33)) +
           4.0 * std::exp(-8000.0 * (t - 0.47) * (t - 0.47)) +
           3.0 * std::exp(-16000.0 * (t - 0.69) * (t - 0.69)) +
           std::exp(-32000.0 * (t - 0.83) * (t - 0.83));
}

double blip(double t) {
    if (t <= 0.8)
        return 0.32 + 0.6 * t + 0.3 * std::exp(-100.0 * (t - 0.3) * (t - 0.3));
    return -0.28 + 0.6 * t + 0.3 * std::exp(-100.0 * (t - 1.3) * (t - 1.3));
}

double corner(double t) {
    if (t <= 0.5) return 623.87 * t * t * t * (1.0 - 2.0 * t);
    if (t <= 0.8) return 187.161 * (0.125 - t * t * t) * t * t * t * t;
    return 3708.470441 * (t - 1.0) * (t - 1.0) * (t - 1.0);
}

double wave(double t) {
    return 0.5 + 0.2 * std::cos(4.0 * pi * t) + 0.1 * std::cos(24.0 * pi * t);
}

double angles(double t) {
    if (t <= 0.15) return 2.0 * t + 0.5;
    if (t <= 0.2) return -12.0 * (t - 0.15) + 0.8;
    if (t <= 0.5) return 0.2;
    if (t <= 0.6) return 6.0 * (t - 0.5) + 0.2;
    if (t <= 0.65) return -10.0 * (t - 0.6) + 0.8;
    if (t <= 0.85) return -0.5 * (t - 0.65) + 0.3;
    return 2.0 * (t - 0.85) + 0.2;
}

double parabolas(double t) {
    auto r = [t](double a) {
        double d = t - a;
        return d > 0.0 ? d * d : 0.0;
    };
    return 0.8 - 30.0 * r(0.1) + 60.0 * r(0.2) - 30.0 * r(0.3) + 500.0 * r(0.35) -
           1000.0 * r(0.37) + 1000.0 * r(0.41) - 500.0 * r(0.43) + 7.5 * r(0.5) -
           15.0 * r(0.7) + 7.5 * r(0.9);
}

double time_shifted_sine(double t) {
    auto g = [](double u) { return (1.0 - std::cos(pi * u)) / 2.0; };
    return 0.3 * std::sin(3.0 * pi * (g(g(g(t))) + t));
}

double cusp(double t) { return std::sqrt(std::abs(t - 0.37)); }

double sample_sd(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

TestFunctionName test_function_from_string(const std::string& name) {
    static const std::map<std::string, TestFunctionName> table = {
        {"doppler", TestFunctionName::DOPPLER},
        {"heavisine", TestFunctionName::HEAVISINE},
        {"bumps", TestFunctionName::BUMPS},
        {"blocks", TestFunctionName::BLOCKS},
        {"spikes", TestFunctionName::SPIKES},
        {"blip", TestFunctionName::BLIP},
        {"corner", TestFunctionName::CORNER},
        {"wave", TestFunctionName::WAVE},
        {"angles", TestFunctionName::ANGLES},
        {"parabolas", TestFunctionName::PARABOLAS},
        {"tssine", TestFunctionName::TIME_SHIFTED_SINE},
        {"cusp", TestFunctionName::CUSP},
    };
    auto it = table.find(name);
    if (it == table.end())
        throw std::invalid_argument("unknown test function: " + name);
    return it->second;
}

std::string to_string(TestFunctionName name) {
    switch (name) {
        case TestFunctionName::DOPPLER: return "doppler";
        case TestFunctionName::HEAVISINE: return "heavisine";
        case TestFunctionName::BUMPS: return "bumps";
        case TestFunctionName::BLOCKS: return "blocks";
        case TestFunctionName::SPIKES: return "spikes";
        case TestFunctionName::BLIP: return "blip";
        case TestFunctionName::CORNER: return "corner";
        case TestFunctionName::WAVE: return "wave";
        case TestFunctionName::ANGLES: return "angles";
        case TestFunctionName::PARABOLAS: return "parabolas";
        case TestFunctionName::TIME_SHIFTED_SINE: return "tssine";
        case TestFunctionName::CUSP: return "cusp";
    }
    throw std::logic_error("unreachable");
}

Signal make_test_function(TestFunctionName name, std::size_t n) {
    dyadic_log2(n);
    double (*fn)(double) = nullptr;
    switch (name) {
        case TestFunctionName::DOPPLER: fn = doppler; break;
        case TestFunctionName::HEAVISINE: fn = heavisine; break;
        case TestFunctionName::BUMPS: fn = bumps; break;
        case TestFunctionName::BLOCKS: fn = blocks; break;
        case TestFunctionName::SPIKES: fn = spikes; break;
        case TestFunctionName::BLIP: fn = blip; break;
        case TestFunctionName::CORNER: fn = corner; break;
        case TestFunctionName::WAVE: fn = wave; break;
        case TestFunctionName::ANGLES: fn = angles; break;
        case TestFunctionName::PARABOLAS: fn = parabolas; break;
        case TestFunctionName::TIME_SHIFTED_SINE: fn = time_shifted_sine; break;
        case TestFunctionName::CUSP: fn = cusp; break;
    }
    std::vector<double> samples(n);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
        samples[k] = fn((static_cast<double>(k) + 0.5) / dn);  // midpoint grid
    return Signal(std::move(samples), 0.0, 1.0 / dn);
}

Signal scale_to_snr(const Signal& f, double sigma_p, double target_snr) {
    if (!(sigma_p > 0.0)) throw std::invalid_argument("scale_to_snr: sigma_p <= 0");
    const double sd = sample_sd(f.samples);
    if (!(sd > 0.0)) throw std::invalid_argument("ZeroVariance: constant signal");
    const double factor = target_snr * sigma_p / sd;
    Signal out = f;
    for (double& v : out.samples) v *= factor;
    return out;
}

double imse(const Signal& f_hat, const Signal& f) {
    if (f_hat.size() != f.size())
        throw std::invalid_argument("imse: length mismatch");
    double ss = 0.0;
    for (std::size_t t = 0; t < f.size(); ++t) {
        double d = f_hat[t] - f[t];
        ss += d * d;
    }
    return ss / static_cast<double>(f.size());
}

namespace {

struct Cell {
    TestFunctionName function;
    std::size_t n;
    double snr;
    double rho;
    BasisName basis;
    std::size_t index;  // position in enumeration order
};

constexpr double kFixedRhos[] = {-0.9, -0.7, -0.5, -0.3, -0.1, 0.0,
                                 0.1,  0.3,  0.5,  0.7,  0.9};
constexpr int kCompetitors = 12;  // 11 fixed + adaptive

struct ReplicationOutput {
    // per regime L, NT, NB
    double rho_hat[3];
    double imse_f[3];
    int iterations[3];
    bool converged[3];
    int ranks[kCompetitors];  // valid only when rank_study
};

ReplicationOutput run_replication(const Cell& cell, const StudyConfig& cfg, int rep) {
    const Car1Params params = derive_params(cell.rho, 1.0, static_cast<int>(cell.n));
    const double sigma_p = std::sqrt(params.sigma_p2);
    const Signal f = scale_to_snr(make_test_function(cell.function, cell.n),
                                  sigma_p, cell.snr);
    const std::uint64_t cell_seed = rng::stream(cfg.master_seed, cell.index);
    const Signal y = simulate_model(f, params, rng::stream(cell_seed, rep, 0));

    std::vector<double> starts(cfg.n_starts);
    rng::Stream start_gen(rng::stream(cell_seed, rep, 1));
    for (double& r : starts) r = start_gen.uniform(-1.0, 1.0);

    const std::pair<Regime, Regime> regimes[3] = {
        {Regime::LINEAR_PROJECTION, Regime::LINEAR_PROJECTION},
        {Regime::TERM_BY_TERM, Regime::TERM_BY_TERM},
        {Regime::TERM_BY_TERM, Regime::BLOCK},
    };

    ReplicationOutput out{};
    FitResult nt_fit;  // shared by the NB refit and the rank study
    for (int g = 0; g < 3; ++g) {
        FitConfig fit_cfg = default_fit_config(cell.n, cell.basis, regimes[g].first,
                                               regimes[g].second);
        fit_cfg.initial_rhos = starts;
        fit_cfg.tol = cfg.tol;
        fit_cfg.max_iter = cfg.max_iter;
        FitResult res;
        if (g == 2) {
            // NB shares the NT loop; only the final pass differs
            res = nt_fit;
            res.f_hat = estimate_with_rho(y, res.rho_hat, cell.basis,
                                          fit_cfg.final_shrinkage, &res.sigma_u_hat);
        } else {
            res = fit(y, fit_cfg);
            if (g == 1) nt_fit = res;
        }
        out.rho_hat[g] = res.rho_hat;
        out.imse_f[g] = imse(res.f_hat, f);
        out.iterations[g] = res.iterations;
        out.converged[g] = res.converged;
    }

    if (cfg.rank_study) {
        const ShrinkageSpec final_spec = default_spec(Regime::TERM_BY_TERM, cell.n);
        double imses[kCompetitors];
        for (int c = 0; c < 11; ++c)
            imses[c] = imse(estimate_with_rho(y, kFixedRhos[c], cell.basis, final_spec),
                            f);
        imses[11] = out.imse_f[1];  // adaptive = iterated NT pipeline
        int order[kCompetitors];
        for (int c = 0; c < kCompetitors; ++c) order[c] = c;
        std::sort(order, order + kCompetitors, [&](int a, int b) {
            if (imses[a] != imses[b]) return imses[a] < imses[b];
            return a < b;  // ties broken by competitor index
        });
        for (int pos = 0; pos < kCompetitors; ++pos)
            out.ranks[order[pos]] = kCompetitors - pos;  // 12 = best
    }
    return out;
}

const char* kRegimeNames[3] = {"L", "NT", "NB"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

StudyResult run_study(const StudyConfig& cfg, int jobs) {
    if (cfg.replications < 1)
        throw std::invalid_argument("StudyConfig: replications must be >= 1");
    if (cfg.n_starts < 1)
        throw std::invalid_argument("StudyConfig: n_starts must be >= 1");

    std::vector<Cell> cells;
    for (auto fn : cfg.functions)
        for (auto n : cfg.ns)
            for (double snr : cfg.snrs)
                for (double rho : cfg.rhos)
                    for (auto basis : cfg.bases)
                        cells.push_back({fn, n, snr, rho, basis, cells.size()});

    struct Job {
        std::size_t cell;
        int rep;
    };
    std::vector<Job> jobs_list;
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (int r = 0; r < cfg.replications; ++r) jobs_list.push_back({c, r});

    std::vector<ReplicationOutput> outputs(jobs_list.size());
    const long total = static_cast<long>(jobs_list.size());
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (long i = 0; i < total; ++i)
            outputs[i] = run_replication(cells[jobs_list[i].cell], cfg,
                                         jobs_list[i].rep);
    } else {
        // serial reference path; must produce identical results
        for (long i = 0; i < total; ++i)
            outputs[i] = run_replication(cells[jobs_list[i].cell], cfg,
                                         jobs_list[i].rep);
    }

    StudyResult result;
    result.records.reserve(outputs.size() * 3);
    for (std::size_t i = 0; i < jobs_list.size(); ++i) {
        const Cell& cell = cells[jobs_list[i].cell];
        for (int g = 0; g < 3; ++g) {
            StudyRecord rec;
            rec.function = cell.function;
            rec.n = cell.n;
            rec.snr = cell.snr;
            rec.rho = cell.rho;
            rec.basis = cell.basis;
            rec.regime = kRegimeNames[g];
            rec.replication = jobs_list[i].rep;
            rec.rho_hat = outputs[i].rho_hat[g];
            rec.imse_f = outputs[i].imse_f[g];
            rec.iterations = outputs[i].iterations[g];
            rec.converged = outputs[i].converged[g];
            result.records.push_back(std::move(rec));
        }
    }

    if (cfg.rank_study) {
        std::vector<std::vector<int>> per_comp(kCompetitors);
        for (const auto& o : outputs)
            for (int c = 0; c < kCompetitors; ++c) per_comp[c].push_back(o.ranks[c]);
        for (int c = 0; c < kCompetitors; ++c) {
            RankSummary rs;
            rs.competitor = c < 11 ? "rho=" + fmt(kFixedRhos[c]) : "adaptive";
            auto& v = per_comp[c];
            double sum = 0.0;
            for (int x : v) sum += x;
            rs.mean_rank = sum / static_cast<double>(v.size());
            std::sort(v.begin(), v.end());
            rs.median_rank = v.size() % 2 == 1
                                 ? v[v.size() / 2]
                                 : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
            result.ranks.push_back(std::move(rs));
        }
    }
    return result;
}

namespace {

struct CellKey {
    std::string function;
    std::size_t n;
    double snr;
    double rho;
    std::string basis;
    std::string regime;
    bool operator<(const CellKey& o) const {
        return std::tie(function, n, snr, rho, basis, regime) <
               std::tie(o.function, o.n, o.snr, o.rho, o.basis, o.regime);
    }
};

struct CellAgg {
    std::vector<double> rho_hats;
    std::vector<double> imses;
    double iter_sum = 0.0;
    double conv_sum = 0.0;
    double true_rho = 0.0;
};

std::map<CellKey, CellAgg> aggregate(const StudyResult& result) {
    std::map<CellKey, CellAgg> agg;
    for (const auto& r : result.records) {
        CellKey key{to_string(r.function), r.n, r.snr, r.rho, to_string(r.basis),
                    r.regime};
        auto& a = agg[key];
        a.rho_hats.push_back(r.rho_hat);
        a.imses.push_back(r.imse_f);
        a.iter_sum += r.iterations;
        a.conv_sum += r.converged ? 1.0 : 0.0;
        a.true_rho = r.rho;
    }
    return agg;
}

}  // namespace

void write_rho_summary(const StudyResult& result, std::ostream& os) {
    os << "function,n,snr,rho,basis,regime,bias,mse,mean_iters,frac_converged\n";
    for (const auto& [key, a] : aggregate(result)) {
        const double m = static_cast<double>(a.rho_hats.size());
        double bias = 0.0, mse = 0.0;
        for (double rh : a.rho_hats) {
            bias += rh - a.true_rho;
            mse += (rh - a.true_rho) * (rh - a.true_rho);
        }
        os << key.function << ',' << key.n << ',' << fmt(key.snr) << ','
           << fmt(key.rho) << ',' << key.basis << ',' << key.regime << ','
           << fmt(bias / m) << ',' << fmt(mse / m) << ',' << fmt(a.iter_sum / m)
           << ',' << fmt(a.conv_sum / m) << '\n';
    }
}

void write_imse_summary(const StudyResult& result, std::ostream& os) {
    os << "function,n,snr,rho,basis,regime,mean_imse\n";
    for (const auto& [key, a] : aggregate(result)) {
        double sum = 0.0;
        for (double v : a.imses) sum += v;
        os << key.function << ',' << key.n << ',' << fmt(key.snr) << ','
           << fmt(key.rho) << ',' << key.basis << ',' << key.regime << ','
           << fmt(sum / static_cast<double>(a.imses.size())) << '\n';
    }
}

void write_rank_summary(const StudyResult& result, std::ostream& os) {
    os << "competitor,mean_rank,median_rank\n";
    for (const auto& rs : result.ranks)
        os << rs.competitor << ',' << fmt(rs.mean_rank) << ','
           << fmt(rs.median_rank) << '\n';
}

void write_records(const StudyResult& result, std::ostream& os) {
    os << "function,n,snr,rho,basis,regime,replication,rho_hat,imse_f,iterations,"
          "converged\n";
    for (const auto& r : result.records) {
        os << to_string(r.function) << ',' << r.n << ',' << fmt(r.snr) << ','
           << fmt(r.rho) << ',' << to_string(r.basis) << ',' << r.regime << ','
           << r.replication << ',' << fmt(r.rho_hat) << ',' << fmt(r.imse_f) << ','
           << r.iterations << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

}  // namespace wfda
