// meyer_basis.cpp — Meyer profiles and periodized coefficient tables.
#include "meyerdens/meyer_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace meyerdens {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kThird = 2.0 * std::numbers::pi / 3.0;  // 2π/3, inner band edge
} // namespace

double aux_ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

double scaling_profile(double omega) {
    const double aw = std::abs(omega);
    if (aw <= kThird) return 1.0;
    if (aw >= 2.0 * kThird) return 0.0;
    return std::cos(kPi / 2.0 * aux_ramp(aw / kThird - 1.0));
}

std::complex<double> wavelet_profile(double omega) {
    const double aw = std::abs(omega);
    double magnitude = 0.0;
    if (aw >= kThird && aw <= 2.0 * kThird)
        magnitude = std::sin(kPi / 2.0 * aux_ramp(aw / kThird - 1.0));
    else if (aw > 2.0 * kThird && aw <= 4.0 * kThird)
        magnitude = std::cos(kPi / 2.0 * aux_ramp(aw / (2.0 * kThird) - 1.0));
    else
        return {0.0, 0.0};
    return std::polar(1.0, omega / 2.0) * magnitude;
}

void BasisSpec::validate() const {
    if (j0 < 0 || j0 > j1 || j1 >= J)
        throw SpecError("invalid resolution levels: need 0 <= j0 <= j1 < J, got j0=" +
                        std::to_string(j0) + " j1=" + std::to_string(j1) +
                        " J=" + std::to_string(J));
    if (J > 24)
        throw SpecError("transform depth J=" + std::to_string(J) +
                        " too large (max 24)");
}

std::complex<double> LevelBand::modulate(std::size_t idx, long k) const {
    const double twoj = static_cast<double>(1L << j);
    const double phase = -2.0 * kPi * static_cast<double>(freqs[idx]) *
                         static_cast<double>(k) / twoj;
    return std::polar(1.0, phase) * coef[idx];
}

double LevelBand::abs_sum() const {
    double acc = 0.0;
    for (const auto& c : coef) acc += std::abs(c);
    return acc;
}

std::pair<long, long> wavelet_band_bounds(int j) {
    // integers with 2^j/3 < ℓ < 2^{j+2}/3 (support edges carry zero weight)
    const long twoj = 1L << j;
    const long lmin = twoj / 3 + 1;                 // ⌊2^j/3⌋ + 1
    const long lmax = (4 * twoj + 2) / 3 - 1;       // ⌈2^{j+2}/3⌉ - 1
    return {lmin, lmax};
}

long scaling_band_halfwidth(int j0) {
    // largest |ℓ| with |2πℓ/2^{j0}| < 4π/3, i.e. ℓ < 2^{j0+1}/3
    const long twoj = 1L << j0;
    return (2 * twoj + 2) / 3 - 1;                  // ⌈2^{j0+1}/3⌉ - 1
}

namespace {

LevelBand build_wavelet_level(int j) {
    LevelBand band;
    band.j = j;
    band.is_scaling = false;
    auto [lmin, lmax] = wavelet_band_bounds(j);
    band.lmin = lmin;
    band.lmax = lmax;
    const double twoj = static_cast<double>(1L << j);
    const double amp = std::pow(2.0, -0.5 * j);
    band.freqs.reserve(static_cast<std::size_t>(2 * (lmax - lmin + 1)));
    band.coef.reserve(band.freqs.capacity());
    for (long l = -lmax; l <= lmax; ++l) {
        if (l > -lmin && l < lmin) continue;
        band.freqs.push_back(l);
        band.coef.push_back(amp * wavelet_profile(2.0 * kPi * l / twoj));
    }
    return band;
}

LevelBand build_scaling_level(int j0) {
    LevelBand band;
    band.j = j0;
    band.is_scaling = true;
    band.lmin = 0;
    band.lmax = scaling_band_halfwidth(j0);
    const double twoj = static_cast<double>(1L << j0);
    const double amp = std::pow(2.0, -0.5 * j0);
    band.freqs.reserve(static_cast<std::size_t>(2 * band.lmax + 1));
    band.coef.reserve(band.freqs.capacity());
    for (long l = -band.lmax; l <= band.lmax; ++l) {
        band.freqs.push_back(l);
        band.coef.push_back({amp * scaling_profile(2.0 * kPi * l / twoj), 0.0});
    }
    return band;
}

} // namespace

BandTable BandTable::build(const BasisSpec& spec) {
    spec.validate();
    BandTable table;
    table.spec_ = spec;
    table.scaling_ = build_scaling_level(spec.j0);
    table.max_abs_freq_ = table.scaling_.lmax;
    table.wavelet_.reserve(static_cast<std::size_t>(spec.J - spec.j0));
    for (int j = spec.j0; j < spec.J; ++j) {
        table.wavelet_.push_back(build_wavelet_level(j));
        table.max_abs_freq_ = std::max(table.max_abs_freq_, table.wavelet_.back().lmax);
    }
    // every band fits the doubled grid: max |ℓ| = ⌊2^{J+1}/3⌋ ≤ 2^J
    if (table.max_abs_freq_ > spec.grid_size())
        throw SpecError("band support exceeds the doubled Fourier grid");
    return table;
}

const LevelBand& BandTable::wavelet_band(int j) const {
    if (j < spec_.j0 || j >= spec_.J)
        throw SpecError("level " + std::to_string(j) + " outside tabulated range [" +
                        std::to_string(spec_.j0) + ", " + std::to_string(spec_.J - 1) +
                        "]");
    return wavelet_[static_cast<std::size_t>(j - spec_.j0)];
}

} // namespace meyerdens
