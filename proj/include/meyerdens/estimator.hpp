// estimator.hpp — end-user pipeline: rescale samples into [0,1], select
// hyperparameters, run the transform → variance → threshold → reconstruct
// chain, and map the density estimate back to original units.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meyerdens/spectral.hpp"
#include "meyerdens/threshold.hpp"
#include "meyerdens/transform.hpp"

namespace meyerdens {

/// Affine map x ↦ (x - a)/b onto [0,1]; density values transform by 1/b.
struct RescaleMap {
    double a = 0.0;
    double b = 1.0;

    static RescaleMap identity() { return {0.0, 1.0}; }

    /// Default data-driven map: a = min - margin·range, b = (1+2·margin)·range
    /// (margin 0.05 keeps boundary mass away from the periodization seam).
    static RescaleMap fit(std::span<const double> samples, double margin = 0.05);

    double to_unit(double x) const { return (x - a) / b; }
    double from_unit(double u) const { return a + b * u; }
};

enum class PostPolicy { raw, clip, clip_renormalize };

PostPolicy post_policy_from_name(const std::string& name);

/// raw = identity; clip = max(·,0); clip_renormalize additionally divides by
/// the Riemann sum (error if the clipped estimate is identically zero).
std::vector<double> postprocess(std::span<const double> grid_density, PostPolicy policy);

enum class ThresholdRule { random, level };

struct FitOptions {
    bool deconvolve = false;
    NoiseModel noise = NoiseModel::identity();
    std::optional<int> j0;            ///< override selector
    std::optional<int> j1;
    std::optional<double> delta;
    double alpha = 0.0;
    ThresholdRule rule = ThresholdRule::random;
    long grid = 512;                  ///< reconstruction grid (power of two)
    bool rescale = true;              ///< false: samples must already be in [0,1]
    double margin = 0.05;
    PostPolicy post = PostPolicy::raw;
};

struct FitResult {
    RescaleMap map;
    Hyper hyper;                      ///< the (j0, j1, δ) actually used
    BasisSpec spec;
    CoeffSet raw_coeffs;              ///< before thresholding ([0,1] domain)
    CoeffSet kept_coeffs;             ///< after thresholding
    VarianceTable variance;
    std::vector<double> grid_x;       ///< abscissae in original units
    std::vector<double> density;      ///< estimate in original units (post-processed)
    std::vector<std::string> warnings;
};

/// Full pipeline. Requires n ≥ 3 and nondegenerate samples. A noise model
/// takes effect only in deconvolve mode; its σ_ε is interpreted in original
/// data units and rescaled along with the samples. Deconvolve mode with
/// identity noise reduces exactly to direct estimation.
FitResult fit(std::span<const double> samples, const FitOptions& options);

} // namespace meyerdens
