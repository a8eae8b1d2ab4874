// transform.cpp — coefficient estimation (reference + folded-DFT fast path),
// per-sample variance estimation, and spectral reconstruction.
#include "meyerdens/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "meyerdens/fft.hpp"

namespace meyerdens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidueTol = 1e-9;

/// Drops the imaginary residue of a nominally real value; a residue above
/// tolerance means a convention bug upstream, not data noise.
double take_real(std::complex<double> z) {
    if (std::abs(z.imag()) > kResidueTol * (1.0 + std::abs(z.real())))
        throw Error("imaginary residue " + std::to_string(z.imag()) +
                    " on a nominally real coefficient");
    return z.real();
}

/// Nonnegative frequency residue r = ℓ mod 2^j.
std::size_t fold_index(long l, long m) {
    long r = l % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
}

CoeffSet make_empty(const BasisSpec& spec) {
    CoeffSet out;
    out.spec = spec;
    out.scaling.assign(std::size_t{1} << spec.j0, 0.0);
    out.wavelet.resize(static_cast<std::size_t>(spec.J - spec.j0));
    for (int j = spec.j0; j < spec.J; ++j)
        out.wavelet[static_cast<std::size_t>(j - spec.j0)].assign(std::size_t{1} << j, 0.0);
    return out;
}

/// Direct summation β̂_k = Σ_ℓ conj(w_ℓ e^{-2πiℓk/2^j}) f(ℓ) for every k.
template <typename Fourier>
void reference_level(const LevelBand& band,
                     std::span<const std::complex<double>> w, const Fourier& f,
                     std::span<double> out) {
    const double m = static_cast<double>(1L << band.j);
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < band.size(); ++i) {
            const double ang =
                2.0 * kPi * static_cast<double>(band.freqs[i]) * static_cast<double>(k) / m;
            acc += std::conj(w[i]) * std::polar(1.0, ang) * f(band.freqs[i]);
        }
        out[k] = take_real(acc);
    }
}

template <typename Fourier>
CoeffSet reference_impl(const Fourier& f, const WeightedBands& weights) {
    const BandTable& table = weights.table();
    CoeffSet out = make_empty(table.spec());
    reference_level(table.scaling_band(), weights.scaling_weights(), f, out.scaling);
    for (int j = table.spec().j0; j < table.spec().J; ++j)
        reference_level(table.wavelet_band(j), weights.level_weights(j), f, out.level(j));
    return out;
}

/// Folded-DFT evaluation of one level: fold t_ℓ = conj(w_ℓ) f(ℓ) modulo 2^j,
/// then one unnormalized inverse DFT yields Σ_r W_r e^{+2πirk/2^j} for all k.
template <typename Fourier>
void fast_level(const LevelBand& band, std::span<const std::complex<double>> w,
                const Fourier& f, std::vector<std::complex<double>>& work,
                std::span<double> out) {
    const long m = 1L << band.j;
    work.assign(static_cast<std::size_t>(m), {0.0, 0.0});
    for (std::size_t i = 0; i < band.size(); ++i)
        work[fold_index(band.freqs[i], m)] += std::conj(w[i]) * f(band.freqs[i]);
    fft::inverse(work.data(), work.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = take_real(work[k]);
}

template <typename Fourier>
CoeffSet fast_impl(const Fourier& f, const WeightedBands& weights) {
    const BandTable& table = weights.table();
    CoeffSet out = make_empty(table.spec());
    std::vector<std::complex<double>> work;
    fast_level(table.scaling_band(), weights.scaling_weights(), f, work, out.scaling);
    for (int j = table.spec().j0; j < table.spec().J; ++j)
        fast_level(table.wavelet_band(j), weights.level_weights(j), f, work, out.level(j));
    return out;
}

void require_coverage(long half, const WeightedBands& weights) {
    if (half < weights.table().max_abs_freq())
        throw GridError("Fourier data half-width " + std::to_string(half) +
                        " does not cover band support " +
                        std::to_string(weights.table().max_abs_freq()));
}

} // namespace

double CoeffSet::squared_distance(const CoeffSet& other) const {
    if (spec.j0 != other.spec.j0 || spec.J != other.spec.J)
        throw SpecError("coefficient sets built from different basis specs");
    double acc = 0.0;
    for (std::size_t k = 0; k < scaling.size(); ++k) {
        const double d = scaling[k] - other.scaling[k];
        acc += d * d;
    }
    for (std::size_t lev = 0; lev < wavelet.size(); ++lev)
        for (std::size_t k = 0; k < wavelet[lev].size(); ++k) {
            const double d = wavelet[lev][k] - other.wavelet[lev][k];
            acc += d * d;
        }
    return acc;
}

CoeffSet forward_reference(const EmpiricalFourier& fourier, const WeightedBands& weights) {
    require_coverage(fourier.half(), weights);
    return reference_impl([&](long l) { return fourier.value(l); }, weights);
}

CoeffSet forward_reference(const FourierFn& fourier, const WeightedBands& weights) {
    return reference_impl(fourier, weights);
}

CoeffSet forward_reference(std::span<const std::complex<double>> values, long half,
                           const WeightedBands& weights) {
    require_coverage(half, weights);
    return reference_impl(
        [&](long l) { return values[static_cast<std::size_t>(l + half)]; }, weights);
}

CoeffSet forward_fast(const EmpiricalFourier& fourier, const WeightedBands& weights) {
    require_coverage(fourier.half(), weights);
    return fast_impl([&](long l) { return fourier.value(l); }, weights);
}

CoeffSet forward_fast(std::span<const std::complex<double>> values, long half,
                      const WeightedBands& weights) {
    require_coverage(half, weights);
    return fast_impl(
        [&](long l) { return values[static_cast<std::size_t>(l + half)]; }, weights);
}

Analysis analyze(std::span<const double> samples, const WeightedBands& weights,
                 bool validate_domain) {
    if (samples.empty()) throw DomainError("analysis requires at least one sample");
    if (validate_domain)
        for (const double y : samples)
            if (!(y >= 0.0 && y <= 1.0))
                throw DomainError("analysis: samples outside [0,1] (rescale first)");

    const BandTable& table = weights.table();
    const BasisSpec& spec = table.spec();
    const std::size_t n = samples.size();
    const long half = table.max_abs_freq();

    // One accumulator pair per coefficient: the complex sum of the per-sample
    // inner values and the sum of their squared magnitudes.
    const std::size_t levels = static_cast<std::size_t>(spec.J - spec.j0);
    std::vector<std::complex<double>> sca_sum(std::size_t{1} << spec.j0, {0.0, 0.0});
    std::vector<double> sca_sq(std::size_t{1} << spec.j0, 0.0);
    std::vector<std::vector<std::complex<double>>> wav_sum(levels);
    std::vector<std::vector<double>> wav_sq(levels);
    for (std::size_t lev = 0; lev < levels; ++lev) {
        wav_sum[lev].assign(std::size_t{1} << (spec.j0 + static_cast<int>(lev)), {0.0, 0.0});
        wav_sq[lev].assign(wav_sum[lev].size(), 0.0);
    }

    std::vector<std::complex<double>> unit(static_cast<std::size_t>(2 * half + 1));
    std::vector<std::complex<double>> work;
    auto accumulate_level = [&](const LevelBand& band,
                                std::span<const std::complex<double>> w,
                                std::vector<std::complex<double>>& sums,
                                std::vector<double>& sq) {
        const long m = 1L << band.j;
        work.assign(static_cast<std::size_t>(m), {0.0, 0.0});
        for (std::size_t i = 0; i < band.size(); ++i)
            work[fold_index(band.freqs[i], m)] +=
                std::conj(w[i]) * unit[static_cast<std::size_t>(band.freqs[i] + half)];
        fft::inverse(work.data(), work.size());
        for (std::size_t k = 0; k < sums.size(); ++k) {
            sums[k] += work[k];
            sq[k] += std::norm(work[k]);
        }
    };

    for (const double y : samples) {
        // e^{-2πiℓy} over the full tabulated range, mirrored by conjugation
        for (long l = 0; l <= half; ++l) {
            const std::complex<double> v = std::polar(1.0, -2.0 * kPi * static_cast<double>(l) * y);
            unit[static_cast<std::size_t>(half + l)] = v;
            unit[static_cast<std::size_t>(half - l)] = std::conj(v);
        }
        accumulate_level(table.scaling_band(), weights.scaling_weights(), sca_sum, sca_sq);
        for (std::size_t lev = 0; lev < levels; ++lev)
            accumulate_level(table.wavelet_band(spec.j0 + static_cast<int>(lev)),
                             weights.level_weights(spec.j0 + static_cast<int>(lev)),
                             wav_sum[lev], wav_sq[lev]);
    }

    Analysis out;
    out.coeffs = make_empty(spec);
    out.variance.spec = spec;
    out.variance.n = n;
    out.variance.scaling_vhat.assign(sca_sum.size(), 0.0);
    out.variance.scaling_sigma2.assign(sca_sum.size(), 0.0);
    out.variance.vhat.resize(levels);
    out.variance.sigma2.resize(levels);
    out.variance.eta.resize(levels);

    const double nd = static_cast<double>(n);
    auto finish = [&](std::span<const std::complex<double>> sums,
                      std::span<const double> sq, std::span<double> coef,
                      std::span<double> vhat, std::span<double> sigma2) {
        for (std::size_t k = 0; k < sums.size(); ++k) {
            const std::complex<double> mean = sums[k] / nd;
            coef[k] = take_real(mean);
            vhat[k] = sq[k] / (nd * nd);
            // exact cancellation at n = 1: V̂ and |mean|²/n are the same bits
            sigma2[k] = std::max(vhat[k] - std::norm(mean) / nd, 0.0);
        }
    };

    finish(sca_sum, sca_sq, out.coeffs.scaling, out.variance.scaling_vhat,
           out.variance.scaling_sigma2);
    for (std::size_t lev = 0; lev < levels; ++lev) {
        const int j = spec.j0 + static_cast<int>(lev);
        out.variance.vhat[lev].assign(wav_sum[lev].size(), 0.0);
        out.variance.sigma2[lev].assign(wav_sum[lev].size(), 0.0);
        finish(wav_sum[lev], wav_sq[lev], out.coeffs.level(j), out.variance.vhat[lev],
               out.variance.sigma2[lev]);
        out.variance.eta[lev] = weights.eta(j);
    }
    return out;
}

std::vector<double> reconstruct(const BandTable& table, const CoeffSet& coeffs, long grid) {
    if (grid <= 0 || (grid & (grid - 1)) != 0)
        throw GridError("reconstruction grid must be a power of two");
    const BasisSpec& spec = table.spec();
    if (spec.j0 != coeffs.spec.j0 || spec.J != coeffs.spec.J)
        throw SpecError("coefficient set does not match the band table");

    auto has_nonzero = [](std::span<const double> v) {
        return std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
    };

    std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(grid), {0.0, 0.0});
    std::vector<std::complex<double>> work;
    auto add_level = [&](const LevelBand& band, std::span<const double> coef) {
        if (!has_nonzero(coef)) return;
        if (band.lmax > grid / 2)
            throw GridError("grid smaller than band support at level " +
                            std::to_string(band.j));
        const long m = 1L << band.j;
        // B_r = Σ_k c_k e^{-2πirk/2^j}; then ĝ_ℓ += ψ^{j,0}_ℓ B_{ℓ mod 2^j}
        work.assign(static_cast<std::size_t>(m), {0.0, 0.0});
        for (std::size_t k = 0; k < coef.size(); ++k) work[k] = coef[k];
        fft::forward(work.data(), work.size());
        for (std::size_t i = 0; i < band.size(); ++i)
            spectrum[fold_index(band.freqs[i], grid)] +=
                band.coef[i] * work[fold_index(band.freqs[i], m)];
    };

    add_level(table.scaling_band(), coeffs.scaling);
    for (int j = spec.j0; j < spec.J; ++j)
        add_level(table.wavelet_band(j), coeffs.level(j));

    // x_g = Σ_ℓ ĝ_ℓ e^{+2πiℓg/G}: one unnormalized inverse FFT of the binned spectrum
    fft::inverse(spectrum.data(), spectrum.size());
    std::vector<double> out(static_cast<std::size_t>(grid));
    for (std::size_t g = 0; g < out.size(); ++g) out[g] = take_real(spectrum[g]);
    return out;
}

} // namespace meyerdens
