#include "wfda/dwt.hpp"

#include <stdexcept>

namespace wfda {

namespace {

// Golden filter values, 16 significant digits, derived by spectral
// factorization of the Daubechies product polynomial and validated by the
// FilterPair invariants in the test suite. db3/db6 take the extremal-phase
// root set, sym8 the least-asymmetric one.
const std::vector<double> kDb3 = {
    0.3326705529500826,  0.8068915093110926,  0.4598775021184916,
    -0.1350110200102546, -0.0854412738820267, 0.0352262918857095,
};

const std::vector<double> kDb6 = {
    0.1115407433501095,  0.4946238903984533,   0.7511339080210954,
    0.3152503517091976,  -0.2262646939654398,  -0.1297668675672619,
    0.0975016055873230,  0.0275228655303057,   -0.0315820393174860,
    0.0005538422011615,  0.0047772575109455,   -0.0010773010853085,
};

const std::vector<double> kSym8 = {
    -0.0033824159510050, -0.0005421323318000, 0.0316950878115260,
    0.0076074873249766,  -0.1432942383512727, -0.0612733590678111,
    0.4813596512590534,  0.7771857516996280,  0.3644418948361789,
    -0.0519458381078818, -0.0272190299171035, 0.0491371796737303,
    0.0038087520138945,  -0.0149522583370622, -0.0003029205147241,
    0.0018899503327677,
};

}  // namespace

BasisName basis_from_string(const std::string& name) {
    if (name == "db3") return BasisName::DB3;
    if (name == "db6") return BasisName::DB6;
    if (name == "sym8") return BasisName::SYM8;
    throw std::invalid_argument("unknown wavelet basis: " + name);
}

std::string to_string(BasisName basis) {
    switch (basis) {
        case BasisName::DB3: return "db3";
        case BasisName::DB6: return "db6";
        case BasisName::SYM8: return "sym8";
    }
    throw std::logic_error("unreachable");
}

FilterPair wavelet_filters(BasisName basis) {
    FilterPair fp;
    switch (basis) {
        case BasisName::DB3: fp.lowpass = kDb3; break;
        case BasisName::DB6: fp.lowpass = kDb6; break;
        case BasisName::SYM8: fp.lowpass = kSym8; break;
    }
    const std::size_t n = fp.lowpass.size();
    fp.highpass.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double v = fp.lowpass[n - 1 - k];
        fp.highpass[k] = (k % 2 == 0) ? v : -v;
    }
    return fp;
}

std::size_t WaveletCoefficients::total_size() const {
    std::size_t total = scaling.size();
    for (const auto& d : details) total += d.size();
    return total;
}

void WaveletCoefficients::validate() const {
    if (coarse_level < 0 || coarse_level >= max_level)
        throw std::invalid_argument("MalformedPyramid: bad level range");
    if (scaling.size() != (std::size_t{1} << coarse_level))
        throw std::invalid_argument("MalformedPyramid: scaling length mismatch");
    if (details.size() != static_cast<std::size_t>(max_level - coarse_level))
        throw std::invalid_argument("MalformedPyramid: missing detail levels");
    for (int j = coarse_level; j < max_level; ++j) {
        if (details[j - coarse_level].size() != (std::size_t{1} << j))
            throw std::invalid_argument("MalformedPyramid: detail level " +
                                        std::to_string(j) + " length mismatch");
    }
}

WaveletCoefficients forward_dwt(const Signal& x, BasisName basis, int j0) {
    const int J = dyadic_log2(x.size());
    if (j0 < 0 || j0 >= J)
        throw std::invalid_argument("BadLevelRange: need 0 <= j0 < J");

    const FilterPair fp = wavelet_filters(basis);
    const std::size_t L = fp.lowpass.size();

    WaveletCoefficients c;
    c.coarse_level = j0;
    c.max_level = J;
    c.details.resize(J - j0);

    std::vector<double> approx = x.samples;
    for (int j = J - 1; j >= j0; --j) {
        const std::size_t len = approx.size();
        const std::size_t half = len / 2;
        std::vector<double> a(half, 0.0), d(half, 0.0);
        for (std::size_t k = 0; k < half; ++k) {
            double sa = 0.0, sd = 0.0;
            for (std::size_t m = 0; m < L; ++m) {
                double v = approx[(2 * k + m) % len];
                sa += fp.lowpass[m] * v;
                sd += fp.highpass[m] * v;
            }
            a[k] = sa;
            d[k] = sd;
        }
        c.details[j - j0] = std::move(d);
        approx = std::move(a);
    }
    c.scaling = std::move(approx);
    return c;
}

Signal inverse_dwt(const WaveletCoefficients& c, BasisName basis) {
    c.validate();
    const FilterPair fp = wavelet_filters(basis);
    const std::size_t L = fp.lowpass.size();

    std::vector<double> approx = c.scaling;
    for (int j = c.coarse_level; j < c.max_level; ++j) {
        const auto& d = c.details[j - c.coarse_level];
        const std::size_t half = approx.size();
        const std::size_t len = 2 * half;
        std::vector<double> up(len, 0.0);
        for (std::size_t k = 0; k < half; ++k) {
            for (std::size_t m = 0; m < L; ++m) {
                std::size_t t = (2 * k + m) % len;
                up[t] += fp.lowpass[m] * approx[k] + fp.highpass[m] * d[k];
            }
        }
        approx = std::move(up);
    }
    return Signal(std::move(approx));
}

}  // namespace wfda
