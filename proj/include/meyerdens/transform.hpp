// transform.hpp — forward coefficient estimation (direct summation reference
// and a fast per-scale folded-DFT path), per-sample variance estimates, and
// grid reconstruction.
//
// Coefficient convention: β̂_{j,k} = Σ_ℓ conj(ψ̃^{j,k}_ℓ) · f̂_ℓ, i.e. the
// inner product ⟨f̂, ψ̃_{j,k}⟩ in Fourier series form, so real densities give
// real coefficients. Because the basis functions are real, this matches the
// unconjugated sum after ℓ ↔ -ℓ reindexing over the symmetric band.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "meyerdens/meyer_basis.hpp"
#include "meyerdens/spectral.hpp"

namespace meyerdens {

/// Scaling and wavelet coefficients for levels j0..J-1. Arrays have exactly
/// 2^{j0} and 2^j entries; values are real (imaginary residue is asserted
/// ≤ 1e-9·(1+|Re|) and dropped at build time).
struct CoeffSet {
    BasisSpec spec;
    std::vector<double> scaling;                  ///< ĉ_{j0,k}
    std::vector<std::vector<double>> wavelet;     ///< [j - j0][k] = β̂_{j,k}

    std::span<const double> level(int j) const { return wavelet.at(j - spec.j0); }
    std::span<double> level(int j) { return wavelet.at(j - spec.j0); }

    /// Σ of squared differences against another set with equal spec
    /// (scaling + all wavelet levels).
    double squared_distance(const CoeffSet& other) const;
};

/// Estimated variance bounds per coefficient:
///   V̂_{j,k}  = (1/n²) Σ_m |Σ_ℓ conj(ψ̃^{j,k}_ℓ) e^{-2πiℓY_m}|²   (≥ 0)
///   σ̂²_{j,k} = max(V̂ - β̂²/n, 0)
/// plus η_j per level (needed by the random thresholds).
struct VarianceTable {
    BasisSpec spec;
    std::size_t n = 0;
    std::vector<double> scaling_vhat;
    std::vector<double> scaling_sigma2;
    std::vector<std::vector<double>> vhat;        ///< [j - j0][k]
    std::vector<std::vector<double>> sigma2;      ///< [j - j0][k]
    std::vector<double> eta;                      ///< [j - j0]
};

/// Generic Fourier data source for the slow reference path.
using FourierFn = std::function<std::complex<double>(long)>;

/// Direct per-coefficient summation over each band (the reference oracle for
/// the fast path). Throws GridError if the data half-width does not cover the
/// table's bands.
CoeffSet forward_reference(const EmpiricalFourier& fourier, const WeightedBands& weights);

/// Reference path from arbitrary Fourier values (used for true coefficients).
CoeffSet forward_reference(const FourierFn& fourier, const WeightedBands& weights);

/// Per-scale fast transform: for each level, weight the band values
/// w_ℓ = conj(ψ̃^{j,0}_ℓ)·f̂_ℓ, fold frequencies modulo 2^j, and recover all k
/// at once through a single length-2^j inverse DFT. O(N log N) per call.
CoeffSet forward_fast(const EmpiricalFourier& fourier, const WeightedBands& weights);

/// Fast path from a dense conjugate-symmetric Fourier vector indexed by
/// ℓ + half (for property tests and synthetic inputs).
CoeffSet forward_fast(std::span<const std::complex<double>> values, long half,
                      const WeightedBands& weights);
CoeffSet forward_reference(std::span<const std::complex<double>> values, long half,
                           const WeightedBands& weights);

/// Coefficients plus their estimated variances from one pass over samples.
struct Analysis {
    CoeffSet coeffs;
    VarianceTable variance;
};

/// Computes β̂ and V̂ together from raw samples via the per-sample inner sums
/// (same folded-DFT kernel per sample). `validate_domain` enforces the
/// [0,1] sample contract; deconvolution passes false (wrapped evaluation).
Analysis analyze(std::span<const double> samples, const WeightedBands& weights,
                 bool validate_domain = true);

/// Synthesizes ĝ_ℓ = Σ_k ĉ_k φ^{j0,k}_ℓ + Σ_{j,k} β̂_{j,k} ψ^{j,k}_ℓ by
/// per-scale forward DFTs (mirror of forward_fast) and inverts one length-G
/// FFT. Returns G real density values on {0, 1/G, ..., (G-1)/G}.
/// G must be a power of two; throws GridError if a level with any nonzero
/// coefficient has band support beyond G/2 (all-zero levels are free).
std::vector<double> reconstruct(const BandTable& table, const CoeffSet& coeffs, long grid);

} // namespace meyerdens
