// spectral.hpp — empirical Fourier coefficients of samples, noise models for
// deconvolution, and the noise-weighted coefficient tables ψ̃^{j,k}_ℓ = ψ^{j,k}_ℓ / h_ℓ.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "meyerdens/errors.hpp"
#include "meyerdens/meyer_basis.hpp"

namespace meyerdens {

/// Empirical Fourier coefficients (1/n) Σ_m e^{-2πiℓX_m} on ℓ ∈ {-H..H}.
/// Invariants: value(0) = 1 exactly, value(-ℓ) = conj(value(ℓ)), |value(ℓ)| ≤ 1.
class EmpiricalFourier {
public:
    /// Exact direct evaluation; rejects empty input and samples outside [0,1]
    /// (rescale first — see the estimator pipeline).
    static EmpiricalFourier from_samples(std::span<const double> samples, long half);

    /// Same sums without the domain check: e^{-2πiℓy} only sees y mod 1, so
    /// this is the empirical Fourier of the samples wrapped onto [0,1].
    /// Used for noisy observations Y = X + ε, which may leave the interval.
    static EmpiricalFourier from_samples_wrapped(std::span<const double> samples, long half);

    long half() const { return half_; }
    std::size_t sample_count() const { return n_; }

    /// Value at integer frequency ℓ, |ℓ| ≤ half().
    std::complex<double> value(long l) const;

    /// Contiguous storage, index ℓ + half().
    std::span<const std::complex<double>> raw() const { return values_; }

private:
    static EmpiricalFourier evaluate(std::span<const double> samples, long half);

    long half_ = 0;
    std::size_t n_ = 0;
    std::vector<std::complex<double>> values_;
};

/// Fourier coefficients h_ℓ of the error density plus its degree of
/// ill-posedness ν (|h_ℓ| ≍ |ℓ|^{-ν} for the ordinary smooth class).
class NoiseModel {
public:
    enum class Kind { identity, laplace, custom };

    /// No measurement error: h_ℓ = 1 for all ℓ, ν = 0.
    static NoiseModel identity();

    /// Centered Laplace noise with standard deviation σ_ε:
    /// h_ℓ = 1 / (1 + 2σ_ε²π²ℓ²), ν = 2.
    static NoiseModel laplace(double sigma_eps);

    /// User-supplied coefficients with declared ν; h(0) must equal 1.
    static NoiseModel custom(std::function<std::complex<double>(long)> h, double nu);

    Kind kind() const { return kind_; }
    double nu() const { return nu_; }
    double sigma_eps() const { return sigma_eps_; }

    /// h_ℓ.
    std::complex<double> fourier(long l) const;

    /// Draw one noise variate (identity → 0; Laplace → inverse-CDF sample).
    double sample(class Rng& rng) const;

private:
    Kind kind_ = Kind::identity;
    double sigma_eps_ = 0.0;
    double nu_ = 0.0;
    std::function<std::complex<double>(long)> custom_;
};

/// Per-level deconvolution weights w^{j,0}_ℓ = ψ^{j,0}_ℓ / h_ℓ over a
/// BandTable, with η_j = Σ_ℓ |w^{j,0}_ℓ| per level. With identity noise the
/// stored weights are bit-identical to the basis coefficients.
class WeightedBands {
public:
    /// Throws IllPosedBand if |h_ℓ| < floor anywhere on a tabulated band.
    static WeightedBands build(const BandTable& table, const NoiseModel& noise,
                               double floor = 1e-12);

    const BandTable& table() const { return *table_; }
    const NoiseModel& noise() const { return noise_; }

    /// Weighted k = 0 coefficients at wavelet level j (aligned with the
    /// band's frequency list).
    std::span<const std::complex<double>> level_weights(int j) const;

    /// Weighted k = 0 scaling coefficients.
    std::span<const std::complex<double>> scaling_weights() const { return scaling_w_; }

    /// η_j = Σ_{ℓ∈C_j} |w^{j,0}_ℓ| (independent of k).
    double eta(int j) const;

    double eta_scaling() const { return eta_scaling_; }

private:
    const BandTable* table_ = nullptr;
    NoiseModel noise_;
    std::vector<std::vector<std::complex<double>>> wavelet_w_;  // index j - j0
    std::vector<std::complex<double>> scaling_w_;
    std::vector<double> eta_;
    double eta_scaling_ = 0.0;
};

} // namespace meyerdens
