// truth.hpp — ground-truth machinery for benchmarking: the four test
// densities (samplers, exact Fourier coefficients, exact wavelet
// coefficients), exact coefficient variances under a noise model, and the
// oracle estimator with its risk decomposition.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "meyerdens/rng.hpp"
#include "meyerdens/spectral.hpp"
#include "meyerdens/transform.hpp"

namespace meyerdens {

enum class Density { uniform, exponential, laplace, mixtgauss };

Density density_from_name(const std::string& name);
const char* density_name(Density d);

/// One of the four benchmark densities on [0,1]:
///   uniform      5·1_{[0.4,0.6]}
///   exponential  10·e^{-10(x-0.2)}·1_{x ≥ 0.2}   (mass e^{-8} ≈ 3.4e-4 lies
///                beyond x = 1; Fourier coefficients are the [0,1]-restricted
///                integrals, the documented normalization defect)
///   laplace      10·e^{-20|x-0.5|}
///   mixtgauss    0.4·N(0.4, 0.05²) + 0.6·N(0.6, 0.05²)
/// Immutable after construction; samplers take an explicit generator.
class TruthModel {
public:
    static TruthModel make(Density kind);

    Density kind() const { return kind_; }

    /// Exact Fourier coefficient f_ℓ (closed form; mixtgauss by a cached
    /// 2^16-point composite quadrature, error far below 1e-10).
    std::complex<double> fourier(long l) const;

    /// Density and CDF values (for histogram/KS diagnostics).
    double pdf(double x) const;
    double cdf(double x) const;

    /// One draw. Exponential may exceed 1 (its true tail); mixtgauss samples
    /// are clamped to [0,1] — at 8σ from the support edge the clamp fires with
    /// probability ~1e-15 — with an internal counter exposed for diagnostics.
    double sample(Rng& rng) const;

    /// Exact variance of one observation X ~ f.
    double variance() const;

    /// sup-norm of the density (diagnostics).
    double sup_norm() const;

    /// True coefficients c_{j0,k}, β_{j,k} through the plain (unweighted)
    /// basis, from the exact Fourier coefficients.
    CoeffSet true_coeffs(const BandTable& table) const;

private:
    explicit TruthModel(Density kind);

    Density kind_;
    std::vector<std::complex<double>> mg_cache_;   // mixtgauss f_ℓ, index ℓ+half
    long mg_half_ = 0;
    double mg_sup_ = 0.0;
};

/// How many mixtgauss draws were clamped to [0,1] so far (process-wide).
std::uint64_t mixtgauss_clamp_count();

/// Exact second-order quantities under sampling Y = X + ε at sample size n:
///   V_{j,k}  = (1/n) Σ_{ℓ,ℓ'} conj(ψ̃^{j,k}_ℓ) ψ̃^{j,k}_{ℓ'} f^Y_{ℓ-ℓ'},
///   σ²_{j,k} = V_{j,k} - β²_{j,k}/n,
/// where f^Y_d = f_d·h_d. Levels j0..Jcap carry V/σ²; β is exact everywhere
/// up to J-1 so tail sums are available.
struct OracleQuantities {
    BasisSpec spec;
    std::size_t n = 0;
    int jcap = 0;                                  ///< highest level with V/σ²
    std::vector<double> scaling_beta;              ///< exact c_{j0,k}
    std::vector<double> scaling_sigma2;            ///< exact σ² of ĉ_{j0,k}
    std::vector<std::vector<double>> beta;         ///< [j - j0][k], up to J-1
    std::vector<std::vector<double>> V;            ///< [j - j0][k], up to jcap
    std::vector<std::vector<double>> sigma2;       ///< [j - j0][k], up to jcap

    /// Keep-mask 𝟙{β² ≥ σ²} at (j,k), j ≤ jcap.
    bool keep(int j, long k) const;

    /// Oracle risk for a given j1 ≤ jcap:
    ///   Σ_k σ²_{j0,k} + Σ_{j=j0}^{j1} Σ_k min(β², σ²) + Σ_{j=j1+1}^{J-1} Σ_k β².
    double oracle_risk(int j1) const;

    /// The three terms of oracle_risk separately (scaling, min, tail).
    struct RiskSplit { double scaling, min_term, tail; };
    RiskSplit oracle_risk_split(int j1) const;
};

/// Builds exact oracle quantities for `truth` observed through `weights`
/// (noise taken from the weights) at sample size n. V/σ² are computed for
/// levels j0..jcap; exact β for all tabulated levels.
OracleQuantities exact_oracle(const TruthModel& truth, const WeightedBands& weights,
                              std::size_t n, int jcap);

/// Applies the ideal rule to empirical coefficients: keeps β̂_{j,k} exactly
/// where β²_{j,k} ≥ σ²_{j,k} and j ≤ j1, zero elsewhere (scaling kept).
CoeffSet oracle_estimator(const CoeffSet& empirical, const OracleQuantities& oq, int j1);

} // namespace meyerdens
