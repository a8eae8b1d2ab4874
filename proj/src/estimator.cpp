// estimator.cpp — the end-user fit pipeline and its pre/post-processing.
#include "meyerdens/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace meyerdens {

RescaleMap RescaleMap::fit(std::span<const double> samples, double margin) {
    if (samples.empty()) throw DomainError("rescale map needs samples");
    if (!(margin >= 0.0)) throw ConfigError("rescale margin must be >= 0");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const double x : samples) {
        if (!std::isfinite(x)) throw DomainError("non-finite sample value");
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double range = hi - lo;
    if (!(range > 0.0)) throw DomainError("degenerate samples: zero range");
    return {lo - margin * range, (1.0 + 2.0 * margin) * range};
}

PostPolicy post_policy_from_name(const std::string& name) {
    if (name == "raw") return PostPolicy::raw;
    if (name == "clip") return PostPolicy::clip;
    if (name == "clip-renormalize") return PostPolicy::clip_renormalize;
    throw ConfigError("unknown post-processing policy '" + name +
                      "' (expected raw|clip|clip-renormalize)");
}

std::vector<double> postprocess(std::span<const double> grid_density, PostPolicy policy) {
    std::vector<double> out(grid_density.begin(), grid_density.end());
    if (policy == PostPolicy::raw) return out;
    for (double& x : out) x = std::max(x, 0.0);
    if (policy == PostPolicy::clip) return out;
    // renormalize the unit-interval Riemann sum to 1
    double mean = 0.0;
    for (const double x : out) mean += x;
    mean /= static_cast<double>(out.size());
    if (mean == 0.0)
        throw DomainError("cannot renormalize: clipped estimate is identically zero");
    for (double& x : out) x /= mean;
    return out;
}

FitResult fit(std::span<const double> samples, const FitOptions& options) {
    if (samples.size() < 3) throw DomainError("fitting requires at least 3 samples");
    if (!options.deconvolve && options.noise.kind() != NoiseModel::Kind::identity)
        throw ConfigError("a noise model was given but deconvolve is off");
    if (options.rescale && options.noise.kind() == NoiseModel::Kind::custom)
        throw ConfigError("custom noise coefficients cannot be rescaled; "
                          "use rescale=false");

    FitResult out;
    out.map = options.rescale ? RescaleMap::fit(samples, options.margin)
                              : RescaleMap::identity();

    std::vector<double> unit(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        unit[i] = out.map.to_unit(samples[i]);

    // σ_ε lives in data units; the unit-interval model sees σ_ε / b
    NoiseModel noise = options.noise;
    if (options.deconvolve && noise.kind() == NoiseModel::Kind::laplace &&
        options.rescale)
        noise = NoiseModel::laplace(noise.sigma_eps() / out.map.b);

    out.hyper = options.deconvolve
                    ? select_deconv(samples.size(), noise.nu(), options.alpha)
                    : select_direct(samples.size(), options.alpha);
    if (options.j0) out.hyper.j0 = *options.j0;
    if (options.j1) out.hyper.j1 = *options.j1;
    if (options.delta) out.hyper.delta = *options.delta;
    if (out.hyper.j0 < 0 || out.hyper.j1 < out.hyper.j0)
        throw ConfigError("invalid levels: need 0 <= j0 <= j1");
    if (out.hyper.delta < 0.0)
        throw ConfigError("threshold multiplier delta must be >= 0");

    const double floor = theorem_delta_floor(samples.size(), out.hyper.j1,
                                             options.alpha, noise.nu(),
                                             options.deconvolve);
    if (out.hyper.delta <= floor)
        out.hyper.warnings.push_back(
            "delta " + std::to_string(out.hyper.delta) +
            " is at or below the oracle-inequality floor " + std::to_string(floor));

    out.spec = BasisSpec{out.hyper.j0, out.hyper.j1, std::max(8, out.hyper.j1 + 1)};
    const BandTable table = BandTable::build(out.spec);
    const WeightedBands weights = WeightedBands::build(table, noise);

    // noisy observations are analyzed through the wrapped empirical sums
    const Analysis analysis = analyze(unit, weights, !options.deconvolve);
    out.raw_coeffs = analysis.coeffs;
    out.variance = analysis.variance;

    if (options.rule == ThresholdRule::random) {
        const auto tau = random_threshold(out.variance, out.hyper.delta);
        out.kept_coeffs = hard_threshold(out.raw_coeffs, tau, out.hyper.j1);
    } else {
        out.kept_coeffs = hard_threshold_level(out.raw_coeffs, out.hyper.delta,
                                               samples.size(), out.hyper.j1);
    }

    const std::vector<double> unit_density = reconstruct(table, out.kept_coeffs,
                                                         options.grid);
    const std::vector<double> shaped = postprocess(unit_density, options.post);

    out.grid_x.resize(shaped.size());
    out.density.resize(shaped.size());
    const double g = static_cast<double>(shaped.size());
    for (std::size_t i = 0; i < shaped.size(); ++i) {
        out.grid_x[i] = out.map.from_unit(static_cast<double>(i) / g);
        out.density[i] = shaped[i] / out.map.b;
    }
    out.warnings = out.hyper.warnings;
    return out;
}

} // namespace meyerdens
