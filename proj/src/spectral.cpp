// spectral.cpp — empirical Fourier sums, noise models, deconvolution weights.
#include "meyerdens/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "meyerdens/rng.hpp"

namespace meyerdens {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

EmpiricalFourier EmpiricalFourier::evaluate(std::span<const double> samples, long half) {
    if (samples.empty()) throw DomainError("empirical Fourier: empty sample list");
    if (half < 0) throw DomainError("empirical Fourier: negative half-width");

    EmpiricalFourier out;
    out.half_ = half;
    out.n_ = samples.size();
    out.values_.assign(static_cast<std::size_t>(2 * half + 1), {0.0, 0.0});

    const double inv_n = 1.0 / static_cast<double>(samples.size());
    // compute ℓ ≥ 0 exactly, mirror by conjugation so symmetry is structural
    for (long l = 0; l <= half; ++l) {
        std::complex<double> acc{0.0, 0.0};
        const double w = -2.0 * kPi * static_cast<double>(l);
        for (const double y : samples) acc += std::polar(1.0, w * y);
        acc *= inv_n;
        out.values_[static_cast<std::size_t>(half + l)] = acc;
        if (l > 0) out.values_[static_cast<std::size_t>(half - l)] = std::conj(acc);
    }
    // ℓ = 0 sums n exact ones; force the exact value against rounding pedantry
    out.values_[static_cast<std::size_t>(half)] = {1.0, 0.0};
    return out;
}

EmpiricalFourier EmpiricalFourier::from_samples(std::span<const double> samples,
                                                long half) {
    for (const double y : samples)
        if (!(y >= 0.0 && y <= 1.0))
            throw DomainError(
                "empirical Fourier: samples outside [0,1] (rescale first)");
    return evaluate(samples, half);
}

EmpiricalFourier EmpiricalFourier::from_samples_wrapped(std::span<const double> samples,
                                                        long half) {
    return evaluate(samples, half);
}

std::complex<double> EmpiricalFourier::value(long l) const {
    if (l < -half_ || l > half_)
        throw GridError("empirical Fourier: frequency " + std::to_string(l) +
                        " outside grid half-width " + std::to_string(half_));
    return values_[static_cast<std::size_t>(l + half_)];
}

NoiseModel NoiseModel::identity() {
    NoiseModel m;
    m.kind_ = Kind::identity;
    m.nu_ = 0.0;
    return m;
}

NoiseModel NoiseModel::laplace(double sigma_eps) {
    if (!(sigma_eps > 0.0))
        throw ConfigError("Laplace noise requires sigma_eps > 0");
    NoiseModel m;
    m.kind_ = Kind::laplace;
    m.sigma_eps_ = sigma_eps;
    m.nu_ = 2.0;
    return m;
}

NoiseModel NoiseModel::custom(std::function<std::complex<double>(long)> h, double nu) {
    if (!h) throw ConfigError("custom noise requires a coefficient function");
    if (std::abs(h(0) - std::complex<double>{1.0, 0.0}) > 1e-12)
        throw ConfigError("noise coefficients must satisfy h(0) = 1");
    if (nu < 0.0) throw ConfigError("ill-posedness degree must be nonnegative");
    NoiseModel m;
    m.kind_ = Kind::custom;
    m.nu_ = nu;
    m.custom_ = std::move(h);
    return m;
}

std::complex<double> NoiseModel::fourier(long l) const {
    switch (kind_) {
        case Kind::identity:
            return {1.0, 0.0};
        case Kind::laplace: {
            const double ld = static_cast<double>(l);
            return {1.0 / (1.0 + 2.0 * sigma_eps_ * sigma_eps_ * kPi * kPi * ld * ld),
                    0.0};
        }
        case Kind::custom:
            return custom_(l);
    }
    return {1.0, 0.0};
}

double NoiseModel::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::identity:
            return 0.0;
        case Kind::laplace: {
            // inverse CDF of the centered Laplace with std dev σ_ε (scale σ/√2)
            double u = rng.u01();
            if (u == 0.0) u = 0x1.0p-53;  // avoid the -inf quantile
            const double v = u - 0.5;
            const double sgn = (v < 0.0) ? -1.0 : 1.0;
            return -(sigma_eps_ / std::sqrt(2.0)) * sgn * std::log1p(-2.0 * std::abs(v));
        }
        case Kind::custom:
            throw Error("sampling is not available for custom noise models");
    }
    return 0.0;
}

WeightedBands WeightedBands::build(const BandTable& table, const NoiseModel& noise,
                                   double floor) {
    WeightedBands out;
    out.table_ = &table;
    out.noise_ = noise;

    const bool identity = noise.kind() == NoiseModel::Kind::identity;
    auto weigh = [&](const LevelBand& band, std::vector<std::complex<double>>& dst,
                     double& eta) {
        dst.resize(band.size());
        eta = 0.0;
        for (std::size_t i = 0; i < band.size(); ++i) {
            if (identity) {
                dst[i] = band.coef[i];  // bit-identical to the basis table
            } else {
                const std::complex<double> h = noise.fourier(band.freqs[i]);
                if (std::abs(h) < floor)
                    throw IllPosedBand(
                        "noise coefficient below floor at level " +
                        std::to_string(band.j) + ", frequency " +
                        std::to_string(band.freqs[i]));
                dst[i] = band.coef[i] / h;
            }
            eta += std::abs(dst[i]);
        }
    };

    weigh(table.scaling_band(), out.scaling_w_, out.eta_scaling_);
    const int levels = table.level_count();
    out.wavelet_w_.resize(static_cast<std::size_t>(levels));
    out.eta_.resize(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i)
        weigh(table.wavelet_band(table.spec().j0 + i), out.wavelet_w_[i], out.eta_[i]);
    return out;
}

std::span<const std::complex<double>> WeightedBands::level_weights(int j) const {
    const int j0 = table_->spec().j0;
    return wavelet_w_.at(static_cast<std::size_t>(j - j0));
}

double WeightedBands::eta(int j) const {
    const int j0 = table_->spec().j0;
    return eta_.at(static_cast<std::size_t>(j - j0));
}

} // namespace meyerdens
