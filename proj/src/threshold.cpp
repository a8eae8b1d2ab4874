// threshold.cpp — random thresholds, hard thresholding, selectors.
#include "meyerdens/threshold.hpp"

#include <cmath>
#include <string>

namespace meyerdens {

VarianceTable estimate_variance(std::span<const double> samples,
                                const WeightedBands& weights, bool validate_domain) {
    return analyze(samples, weights, validate_domain).variance;
}

std::vector<std::vector<double>> random_threshold(const VarianceTable& vt, double delta) {
    if (delta < 0.0) throw ConfigError("threshold multiplier delta must be >= 0");
    if (vt.n == 0) throw DomainError("variance table has no samples");

    const double n = static_cast<double>(vt.n);
    const double dln = delta * std::log(n);
    std::vector<std::vector<double>> tau(vt.vhat.size());
    for (std::size_t lev = 0; lev < vt.vhat.size(); ++lev) {
        const double eta = vt.eta[lev];
        const double eta2n2 = eta * eta / (n * n);
        tau[lev].resize(vt.vhat[lev].size());
        for (std::size_t k = 0; k < vt.vhat[lev].size(); ++k) {
            const double v = vt.vhat[lev][k];
            const double inner =
                v + std::sqrt(2.0 * dln * v * eta2n2) + dln * kThresholdKappa * eta2n2;
            tau[lev][k] = std::sqrt(2.0 * dln * inner) + (dln / (3.0 * n)) * eta;
        }
    }
    return tau;
}

double level_threshold(double delta, int j, std::size_t n) {
    if (delta < 0.0) throw ConfigError("threshold multiplier delta must be >= 0");
    if (j < 0 || n == 0) throw DomainError("level threshold needs j >= 0 and n >= 1");
    return delta * std::sqrt(static_cast<double>(j) / static_cast<double>(n));
}

namespace {

/// Shared keep/zero pass: `tau_of(lev, k)` supplies the per-coefficient cut.
template <typename Tau>
CoeffSet apply_threshold(const CoeffSet& coeffs, int j1, const Tau& tau_of) {
    if (j1 < coeffs.spec.j0 || j1 >= coeffs.spec.J)
        throw SpecError("threshold cutoff level j1 outside [j0, J)");
    CoeffSet out = coeffs;
    for (int j = coeffs.spec.j0; j < coeffs.spec.J; ++j) {
        auto dst = out.level(j);
        if (j > j1) {
            for (double& x : dst) x = 0.0;
            continue;
        }
        const std::size_t lev = static_cast<std::size_t>(j - coeffs.spec.j0);
        for (std::size_t k = 0; k < dst.size(); ++k)
            if (std::abs(dst[k]) < tau_of(lev, k)) dst[k] = 0.0;
    }
    return out;
}

} // namespace

CoeffSet hard_threshold(const CoeffSet& coeffs,
                        const std::vector<std::vector<double>>& tau, int j1) {
    if (tau.size() != coeffs.wavelet.size())
        throw SpecError("threshold table does not match the coefficient levels");
    for (std::size_t lev = 0; lev < tau.size(); ++lev)
        if (tau[lev].size() != coeffs.wavelet[lev].size())
            throw SpecError("threshold table does not match the coefficient levels");
    return apply_threshold(coeffs, j1,
                           [&](std::size_t lev, std::size_t k) { return tau[lev][k]; });
}

CoeffSet hard_threshold_level(const CoeffSet& coeffs, double delta, std::size_t n,
                              int j1) {
    return apply_threshold(coeffs, j1, [&](std::size_t lev, std::size_t) {
        return level_threshold(delta, coeffs.spec.j0 + static_cast<int>(lev), n);
    });
}

namespace {

void require_min_n(std::size_t n) {
    if (n < 3) throw ConfigError("hyperparameter selection requires n >= 3 samples");
}

} // namespace

Hyper select_direct(std::size_t n, double alpha) {
    require_min_n(n);
    if (alpha < 0.0) throw ConfigError("selector exponent alpha must be >= 0");
    const double nd = static_cast<double>(n);
    const double log2n = std::log2(nd);
    const double log2ln = std::log2(std::log(nd));

    Hyper h;
    h.j0 = static_cast<int>(std::floor(log2ln)) + 1;
    h.j1 = static_cast<int>(std::floor(0.5 * log2n)) + 1;
    h.delta = (static_cast<double>(h.j1) - 1.0 - alpha * log2ln) / log2n;
    if (h.j1 < h.j0)
        h.warnings.push_back("selected j1 < j0; coarse level dominates");
    if (h.delta <= 0.0)
        h.warnings.push_back("selected delta <= 0; thresholds vanish (alpha too large)");
    return h;
}

Hyper select_deconv(std::size_t n, double nu, double alpha) {
    require_min_n(n);
    if (alpha < 0.0) throw ConfigError("selector exponent alpha must be >= 0");
    if (nu < 0.0) throw ConfigError("ill-posedness degree must be nonnegative");
    const double nd = static_cast<double>(n);
    const double log2n = std::log2(nd);
    const double log2ln = std::log2(std::log(nd));

    Hyper h;
    h.j0 = static_cast<int>(std::floor(log2ln)) + 1;
    h.j1 = h.j0;
    h.delta =
        (2.0 * nu + 1.0) * (static_cast<double>(h.j1) - 1.0 - alpha * log2ln) / log2n;
    if (h.delta <= 0.0)
        h.warnings.push_back("selected delta <= 0; thresholds vanish (alpha too large)");
    return h;
}

double theorem_delta_floor(std::size_t n, int j1, double alpha, double nu, bool deconv) {
    require_min_n(n);
    const double nd = static_cast<double>(n);
    const double eta =
        (static_cast<double>(j1) - 1.0 - alpha * std::log2(std::log(nd))) / std::log2(nd);
    return deconv ? eta * (1.0 + nu / (nu + 1.0)) : eta;
}

} // namespace meyerdens
