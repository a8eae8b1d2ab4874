// threshold.hpp — data-driven random thresholds, hard thresholding, the
// level-dependent comparison rule, and hyperparameter selectors.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "meyerdens/transform.hpp"

namespace meyerdens {

/// Fixed constant κ = 4/3 + √(5/3) of the random-threshold formula
/// (never configurable).
inline const double kThresholdKappa = 4.0 / 3.0 + std::sqrt(5.0 / 3.0);

/// Convenience wrapper: estimate V̂/σ̂² tables for samples (see analyze()).
VarianceTable estimate_variance(std::span<const double> samples,
                                const WeightedBands& weights,
                                bool validate_domain = true);

/// Per-(j,k) random thresholds
///   τ_{j,k} = sqrt(2δ·ln n·(V̂ + sqrt(2δ·ln n·V̂·η_j²/n²) + δ·ln n·κ·η_j²/n²))
///           + (δ·ln n/(3n))·η_j
/// with natural logarithms. Layout matches VarianceTable::vhat.
std::vector<std::vector<double>> random_threshold(const VarianceTable& vt, double delta);

/// Level-dependent comparison rule δ·√(j/n).
double level_threshold(double delta, int j, std::size_t n);

/// Keeps β̂_{j,k} iff |β̂_{j,k}| ≥ τ_{j,k} for j0 ≤ j ≤ j1 (boundary kept),
/// zeroes every level above j1, leaves scaling coefficients untouched.
CoeffSet hard_threshold(const CoeffSet& coeffs,
                        const std::vector<std::vector<double>>& tau, int j1);

/// Same with the level rule τ_j = δ√(j/n) applied uniformly within a level.
CoeffSet hard_threshold_level(const CoeffSet& coeffs, double delta,
                              std::size_t n, int j1);

/// Selected hyperparameters plus any advisory notes produced on the way.
struct Hyper {
    int j0 = 0;
    int j1 = 0;
    double delta = 0.0;
    std::vector<std::string> warnings;
};

/// Direct-estimation selector:
///   j0 = ⌊log₂(ln n)⌋ + 1, j1 = ⌊½·log₂ n⌋ + 1,
///   δ  = (j1 - 1 - α·log₂(ln n)) / log₂ n      (α = 0 gives (j1-1)/log₂ n).
/// Warns if j1 < j0. Requires n ≥ 3.
Hyper select_direct(std::size_t n, double alpha = 0.0);

/// Deconvolution selector:
///   j1 = j0 = ⌊log₂(ln n)⌋ + 1,
///   δ  = (2ν+1)·(j1 - 1 - α·log₂(ln n)) / log₂ n.
/// Warns if δ ≤ 0 (large α, small n). Requires n ≥ 3.
Hyper select_deconv(std::size_t n, double nu, double alpha);

/// Smallest δ admitted by the oracle-inequality theory for a user-chosen j1:
/// η = (j1 - 1 - α·log₂(ln n))/log₂ n for direct estimation and
/// η·(1 + ν/(ν+1)) for deconvolution. Values at or below the floor are legal
/// (the simulation study sweeps δ ∈ [0,5]) but worth a warning upstream.
double theorem_delta_floor(std::size_t n, int j1, double alpha, double nu, bool deconv);

} // namespace meyerdens
