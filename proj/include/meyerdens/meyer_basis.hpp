// meyer_basis.hpp — periodized Meyer wavelet basis of L²([0,1]), built and
// stored entirely in the Fourier domain.
//
// Conventions (used consistently across the library):
//   * Fourier coefficients of f on [0,1]:  f_ℓ = ∫₀¹ f(u) e^{-2πiℓu} du.
//   * Continuous Fourier transform:        ĝ(ω) = ∫ g(x) e^{-iωx} dx, so the
//     scaling profile has ĝ(0) = 1 (∫φ* = 1).
//   * Periodization identity: the ℓ-th Fourier coefficient of the [0,1]-
//     periodized, L²-normalized wavelet 2^{j/2}ψ*(2^j·x - k) is
//         ψ^{j,k}_ℓ = 2^{-j/2} e^{-2πiℓk/2^j} ψ̂*(2πℓ/2^j),
//     and likewise for the scaling function with φ̂*. Each level therefore
//     lives on a finite integer band C_j, and every inner product in the
//     library is a finite Fourier-side sum.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "meyerdens/errors.hpp"

namespace meyerdens {

/// Smooth ramp ν̃(t) = 3t² - 2t³ clamped to [0,1] outside the unit interval:
/// the unique cubic with ν̃(0)=0, ν̃(1)=1 and the symmetry ν̃(t)+ν̃(1-t)=1
/// required for orthonormality of the resulting basis.
double aux_ramp(double t);

/// Continuous Fourier profile of the Meyer scaling function φ*: real, even,
/// equal to 1 on |ω| ≤ 2π/3, a cosine ramp on 2π/3 ≤ |ω| ≤ 4π/3, and 0 beyond.
double scaling_profile(double omega);

/// Continuous Fourier profile of the Meyer wavelet ψ*: supported on
/// 2π/3 ≤ |ω| ≤ 8π/3, sine ramp on the inner octave, cosine ramp on the outer,
/// with the e^{iω/2} half-shift phase.
std::complex<double> wavelet_profile(double omega);

/// Resolution bookkeeping: coarse level j0, finest thresholded level j1,
/// transform depth J (levels j0..J-1 are tabulated), nominal grid N = 2^J.
struct BasisSpec {
    int j0 = 3;
    int j1 = 4;
    int J = 8;

    long grid_size() const { return 1L << J; }

    /// Throws SpecError unless 0 ≤ j0 ≤ j1 < J and J is small enough that
    /// band indices fit comfortably in long arithmetic.
    void validate() const;
};

/// One tabulated level: the integer band and the k = 0 Fourier coefficients.
/// Coefficients for general k follow by phase modulation (see `modulate`),
/// so per-(j,k) tables are never materialized.
struct LevelBand {
    int j = 0;           ///< resolution level
    bool is_scaling = false;
    long lmin = 0;       ///< positive-side band start (0 for the scaling level)
    long lmax = 0;       ///< band end (inclusive)
    std::vector<long> freqs;                      ///< all band frequencies, ascending
    std::vector<std::complex<double>> coef;       ///< k = 0 values, aligned with freqs

    std::size_t size() const { return freqs.size(); }

    /// ψ^{j,k}_ℓ (or φ^{j,k}_ℓ) for the band entry at `idx`.
    std::complex<double> modulate(std::size_t idx, long k) const;

    /// Sum of coefficient magnitudes Σ_ℓ |ψ^{j,0}_ℓ| (k-independent).
    double abs_sum() const;
};

/// Immutable per-level coefficient tables for levels j0..J-1 plus the scaling
/// level at j0. Safe for concurrent reads after construction.
class BandTable {
public:
    /// Tabulates every level at full band support. The top band C_{J-1}
    /// reaches |ℓ| ≤ ⌊2^{J+1}/3⌋ ≤ 2^J = N, so Fourier data supplied to the
    /// transforms must extend to `max_abs_freq()` (see min_fourier_half()).
    static BandTable build(const BasisSpec& spec);

    const BasisSpec& spec() const { return spec_; }
    const LevelBand& scaling_band() const { return scaling_; }

    /// Wavelet band at level j, j0 ≤ j ≤ J-1.
    const LevelBand& wavelet_band(int j) const;

    int level_count() const { return static_cast<int>(wavelet_.size()); }

    /// Largest |ℓ| used by any tabulated level.
    long max_abs_freq() const { return max_abs_freq_; }

    /// Smallest half-width H such that Fourier data on {-H..H} covers every
    /// band (equals max_abs_freq()).
    long min_fourier_half() const { return max_abs_freq_; }

private:
    BasisSpec spec_;
    LevelBand scaling_;
    std::vector<LevelBand> wavelet_;   // index j - j0
    long max_abs_freq_ = 0;
};

/// Positive-side wavelet band bounds at level j: integers ℓ with
/// 2^j/3 < ℓ < 2^{j+2}/3 (both signs belong to the band).
/// Returned as {lmin, lmax} inclusive.
std::pair<long, long> wavelet_band_bounds(int j);

/// Scaling band half-width at level j0: largest |ℓ| with |ℓ| < 2^{j0+1}/3.
long scaling_band_halfwidth(int j0);

} // namespace meyerdens
