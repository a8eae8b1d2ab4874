// truth.cpp — benchmark densities (exact Fourier coefficients, samplers,
// moments) and exact oracle quantities for risk benchmarking.
#include "meyerdens/truth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "meyerdens/fft.hpp"

namespace meyerdens {

namespace {

constexpr double kPi = std::numbers::pi;

std::atomic<std::uint64_t> g_mixtgauss_clamps{0};

double gauss_pdf(double x, double mu, double sigma) {
    const double t = (x - mu) / sigma;
    return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * kPi));
}

double gauss_cdf(double x, double mu, double sigma) {
    return 0.5 * (1.0 + std::erf((x - mu) / (sigma * std::sqrt(2.0))));
}

} // namespace

std::uint64_t mixtgauss_clamp_count() { return g_mixtgauss_clamps.load(); }

Density density_from_name(const std::string& name) {
    if (name == "uniform") return Density::uniform;
    if (name == "exponential") return Density::exponential;
    if (name == "laplace") return Density::laplace;
    if (name == "mixtgauss") return Density::mixtgauss;
    throw ConfigError("unknown density '" + name +
                      "' (expected uniform|exponential|laplace|mixtgauss)");
}

const char* density_name(Density d) {
    switch (d) {
        case Density::uniform: return "uniform";
        case Density::exponential: return "exponential";
        case Density::laplace: return "laplace";
        case Density::mixtgauss: return "mixtgauss";
    }
    return "?";
}

TruthModel TruthModel::make(Density kind) { return TruthModel(kind); }

TruthModel::TruthModel(Density kind) : kind_(kind) {
    if (kind_ != Density::mixtgauss) return;
    // Composite-rectangle Fourier coefficients of the mixture on a 2^16 grid:
    // the rule equals the grid DFT, and both the aliasing error of the rapidly
    // decaying Gaussian transform and the boundary truncation sit far below
    // 1e-12.
    const std::size_t m = std::size_t{1} << 16;
    std::vector<std::complex<double>> grid(m);
    for (std::size_t g = 0; g < m; ++g) {
        const double v = pdf(static_cast<double>(g) / static_cast<double>(m));
        grid[g] = v;
        mg_sup_ = std::max(mg_sup_, v);
    }
    fft::forward(grid.data(), m);
    mg_half_ = static_cast<long>(m / 2) - 1;
    mg_cache_.resize(static_cast<std::size_t>(2 * mg_half_ + 1));
    for (long l = -mg_half_; l <= mg_half_; ++l) {
        const std::size_t bin = static_cast<std::size_t>((l + static_cast<long>(m)) %
                                                         static_cast<long>(m));
        mg_cache_[static_cast<std::size_t>(l + mg_half_)] =
            grid[bin] / static_cast<double>(m);
    }
}

std::complex<double> TruthModel::fourier(long l) const {
    const double ld = static_cast<double>(l);
    switch (kind_) {
        case Density::uniform: {
            if (l == 0) return {1.0, 0.0};
            const double par = (l % 2 == 0) ? 1.0 : -1.0;
            return {par * 5.0 * std::sin(0.2 * kPi * ld) / (kPi * ld), 0.0};
        }
        case Density::exponential: {
            const std::complex<double> a{10.0, 2.0 * kPi * ld};
            return 10.0 * (std::polar(1.0, -0.4 * kPi * ld) - std::exp(-8.0)) / a;
        }
        case Density::laplace: {
            const double par = (l % 2 == 0) ? 1.0 : -1.0;
            return {par * (1.0 - par * std::exp(-10.0)) * 100.0 /
                        (100.0 + kPi * kPi * ld * ld),
                    0.0};
        }
        case Density::mixtgauss: {
            if (std::abs(l) <= mg_half_)
                return mg_cache_[static_cast<std::size_t>(l + mg_half_)];
            // beyond the cache the characteristic-function form differs from
            // the [0,1]-restricted integral only by the ~1e-14 boundary mass
            const double decay = std::exp(-2.0 * kPi * kPi * ld * ld * 0.05 * 0.05);
            return decay * (0.4 * std::polar(1.0, -2.0 * kPi * ld * 0.4) +
                            0.6 * std::polar(1.0, -2.0 * kPi * ld * 0.6));
        }
    }
    return {0.0, 0.0};
}

double TruthModel::pdf(double x) const {
    switch (kind_) {
        case Density::uniform:
            return (x >= 0.4 && x <= 0.6) ? 5.0 : 0.0;
        case Density::exponential:
            return (x >= 0.2) ? 10.0 * std::exp(-10.0 * (x - 0.2)) : 0.0;
        case Density::laplace:
            return 10.0 * std::exp(-20.0 * std::abs(x - 0.5));
        case Density::mixtgauss:
            return 0.4 * gauss_pdf(x, 0.4, 0.05) + 0.6 * gauss_pdf(x, 0.6, 0.05);
    }
    return 0.0;
}

double TruthModel::cdf(double x) const {
    switch (kind_) {
        case Density::uniform:
            if (x < 0.4) return 0.0;
            if (x > 0.6) return 1.0;
            return 5.0 * (x - 0.4);
        case Density::exponential:
            return (x >= 0.2) ? 1.0 - std::exp(-10.0 * (x - 0.2)) : 0.0;
        case Density::laplace:
            return (x <= 0.5) ? 0.5 * std::exp(20.0 * (x - 0.5))
                              : 1.0 - 0.5 * std::exp(-20.0 * (x - 0.5));
        case Density::mixtgauss:
            return 0.4 * gauss_cdf(x, 0.4, 0.05) + 0.6 * gauss_cdf(x, 0.6, 0.05);
    }
    return 0.0;
}

double TruthModel::sample(Rng& rng) const {
    switch (kind_) {
        case Density::uniform:
            return 0.4 + 0.2 * rng.u01();
        case Density::exponential:
            // inverse CDF; exceeding 1 (probability e^{-8}) is the true tail
            return 0.2 - std::log(1.0 - rng.u01()) / 10.0;
        case Density::laplace: {
            double u = rng.u01();
            if (u == 0.0) u = 0x1.0p-53;  // avoid the -inf quantile
            const double w = u - 0.5;
            const double sgn = (w < 0.0) ? -1.0 : 1.0;
            return 0.5 - sgn * std::log1p(-2.0 * std::abs(w)) / 20.0;
        }
        case Density::mixtgauss: {
            const double mu = (rng.u01() < 0.4) ? 0.4 : 0.6;
            double u2 = rng.u01();
            if (u2 == 0.0) u2 = 0x1.0p-53;
            const double u3 = rng.u01();
            const double z = std::sqrt(-2.0 * std::log(u2)) * std::cos(2.0 * kPi * u3);
            const double x = mu + 0.05 * z;
            if (x < 0.0 || x > 1.0) {
                g_mixtgauss_clamps.fetch_add(1, std::memory_order_relaxed);
                return std::clamp(x, 0.0, 1.0);
            }
            return x;
        }
    }
    return 0.0;
}

double TruthModel::variance() const {
    switch (kind_) {
        case Density::uniform:
            return 0.2 * 0.2 / 12.0;
        case Density::exponential:
            return 1.0 / 100.0;
        case Density::laplace:
            return 2.0 / 400.0;
        case Density::mixtgauss:
            return 0.4 * (0.16 + 0.0025) + 0.6 * (0.36 + 0.0025) - 0.52 * 0.52;
    }
    return 0.0;
}

double TruthModel::sup_norm() const {
    switch (kind_) {
        case Density::uniform: return 5.0;
        case Density::exponential: return 10.0;
        case Density::laplace: return 10.0;
        case Density::mixtgauss: return mg_sup_;
    }
    return 0.0;
}

CoeffSet TruthModel::true_coeffs(const BandTable& table) const {
    const WeightedBands plain = WeightedBands::build(table, NoiseModel::identity());
    return forward_reference(FourierFn([this](long l) { return fourier(l); }), plain);
}

bool OracleQuantities::keep(int j, long k) const {
    if (j < spec.j0 || j > jcap) throw SpecError("keep mask queried outside [j0, jcap]");
    const std::size_t lev = static_cast<std::size_t>(j - spec.j0);
    const double b = beta[lev].at(static_cast<std::size_t>(k));
    return b * b >= sigma2[lev].at(static_cast<std::size_t>(k));
}

OracleQuantities::RiskSplit OracleQuantities::oracle_risk_split(int j1) const {
    if (j1 < spec.j0 || j1 > jcap)
        throw SpecError("oracle risk needs j0 <= j1 <= jcap");
    RiskSplit out{0.0, 0.0, 0.0};
    for (const double s : scaling_sigma2) out.scaling += s;
    for (int j = spec.j0; j <= j1; ++j) {
        const std::size_t lev = static_cast<std::size_t>(j - spec.j0);
        for (std::size_t k = 0; k < beta[lev].size(); ++k)
            out.min_term += std::min(beta[lev][k] * beta[lev][k], sigma2[lev][k]);
    }
    for (int j = j1 + 1; j < spec.J; ++j) {
        const std::size_t lev = static_cast<std::size_t>(j - spec.j0);
        for (const double b : beta[lev]) out.tail += b * b;
    }
    return out;
}

double OracleQuantities::oracle_risk(int j1) const {
    const RiskSplit s = oracle_risk_split(j1);
    return s.scaling + s.min_term + s.tail;
}

namespace {

/// All V_{j,k} of one band at once: fold the weight autocorrelation against
/// f^Y over frequency differences, then one inverse DFT over k.
std::vector<double> exact_v_level(const LevelBand& band,
                                  std::span<const std::complex<double>> w,
                                  const TruthModel& truth, const NoiseModel& noise,
                                  std::size_t n) {
    const long m = 1L << band.j;
    const long dmax = 2 * band.lmax;
    std::vector<std::complex<double>> fy(static_cast<std::size_t>(2 * dmax + 1));
    for (long d = -dmax; d <= dmax; ++d)
        fy[static_cast<std::size_t>(d + dmax)] = truth.fourier(d) * noise.fourier(d);

    std::vector<std::complex<double>> corr(static_cast<std::size_t>(2 * dmax + 1),
                                           {0.0, 0.0});
    for (std::size_t i = 0; i < band.size(); ++i)
        for (std::size_t i2 = 0; i2 < band.size(); ++i2)
            corr[static_cast<std::size_t>(band.freqs[i] - band.freqs[i2] + dmax)] +=
                std::conj(w[i]) * w[i2];

    std::vector<std::complex<double>> work(static_cast<std::size_t>(m), {0.0, 0.0});
    for (long d = -dmax; d <= dmax; ++d) {
        long r = d % m;
        if (r < 0) r += m;
        work[static_cast<std::size_t>(r)] += corr[static_cast<std::size_t>(d + dmax)] *
                                             fy[static_cast<std::size_t>(d + dmax)];
    }
    fft::inverse(work.data(), work.size());

    std::vector<double> v(static_cast<std::size_t>(m));
    constexpr double tol = 1e-9;
    for (long k = 0; k < m; ++k) {
        const std::complex<double> z = work[static_cast<std::size_t>(k)];
        if (std::abs(z.imag()) > tol * (1.0 + std::abs(z.real())))
            throw Error("imaginary residue on an exact variance value");
        v[static_cast<std::size_t>(k)] = z.real() / static_cast<double>(n);
    }
    return v;
}

} // namespace

OracleQuantities exact_oracle(const TruthModel& truth, const WeightedBands& weights,
                              std::size_t n, int jcap) {
    const BandTable& table = weights.table();
    const BasisSpec& spec = table.spec();
    if (n == 0) throw DomainError("exact oracle requires n >= 1");
    if (jcap < spec.j0 || jcap >= spec.J)
        throw SpecError("oracle level cap must lie in [j0, J)");

    OracleQuantities out;
    out.spec = spec;
    out.n = n;
    out.jcap = jcap;

    // exact targets are coefficients of f through the plain basis
    const CoeffSet truth_coeffs = truth.true_coeffs(table);
    out.scaling_beta = truth_coeffs.scaling;
    out.beta = truth_coeffs.wavelet;

    const double nd = static_cast<double>(n);
    const std::vector<double> vsca = exact_v_level(
        table.scaling_band(), weights.scaling_weights(), truth, weights.noise(), n);
    out.scaling_sigma2.resize(vsca.size());
    for (std::size_t k = 0; k < vsca.size(); ++k)
        out.scaling_sigma2[k] =
            std::max(vsca[k] - out.scaling_beta[k] * out.scaling_beta[k] / nd, 0.0);

    const std::size_t capped = static_cast<std::size_t>(jcap - spec.j0 + 1);
    out.V.resize(capped);
    out.sigma2.resize(capped);
    for (int j = spec.j0; j <= jcap; ++j) {
        const std::size_t lev = static_cast<std::size_t>(j - spec.j0);
        out.V[lev] = exact_v_level(table.wavelet_band(j), weights.level_weights(j),
                                   truth, weights.noise(), n);
        out.sigma2[lev].resize(out.V[lev].size());
        for (std::size_t k = 0; k < out.V[lev].size(); ++k)
            out.sigma2[lev][k] = std::max(
                out.V[lev][k] - out.beta[lev][k] * out.beta[lev][k] / nd, 0.0);
    }
    return out;
}

CoeffSet oracle_estimator(const CoeffSet& empirical, const OracleQuantities& oq, int j1) {
    if (empirical.spec.j0 != oq.spec.j0 || empirical.spec.J != oq.spec.J)
        throw SpecError("coefficient set does not match the oracle table");
    if (j1 < oq.spec.j0 || j1 > oq.jcap)
        throw SpecError("oracle estimator needs j0 <= j1 <= jcap");
    CoeffSet out = empirical;
    for (int j = out.spec.j0; j < out.spec.J; ++j) {
        auto dst = out.level(j);
        for (std::size_t k = 0; k < dst.size(); ++k)
            if (j > j1 || !oq.keep(j, static_cast<long>(k))) dst[k] = 0.0;
    }
    return out;
}

} // namespace meyerdens
