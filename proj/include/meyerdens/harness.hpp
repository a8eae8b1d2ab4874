// harness.hpp — Monte Carlo experiment driver: paired-sample risk-ratio
// curves R(j1, δ) for the random-threshold and level-threshold rules against
// the exact oracle risk, with deterministic per-replicate RNG streams.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "meyerdens/spectral.hpp"
#include "meyerdens/truth.hpp"

namespace meyerdens {

struct ExperimentConfig {
    Density density = Density::mixtgauss;
    bool deconvolve = false;
    std::size_t n = 200;
    std::size_t reps = 100;             ///< M
    double delta_start = 0.0;
    double delta_step = 0.1;
    double delta_stop = 5.0;
    std::vector<int> j1_list = {4};
    double sigma_eps = 0.0;             ///< deconvolve: exactly one of σ_ε / s2n
    double s2n = 0.0;
    std::uint64_t seed = 0;
    int threads = 0;                    ///< 0 = MEYERDENS_THREADS env or hardware
    bool keep_raw = false;              ///< retain per-rep numerators in the report

    /// Derived: σ_ε from s2n via the exact density variance when needed.
    double resolved_sigma_eps() const;

    /// Transform depth: J = max(8, ⌈log₂ n⌉), at least j1+1.
    int depth() const;

    std::vector<double> delta_grid() const;

    /// Throws ConfigError on violations (M ≥ 1, grid nonempty/nonnegative,
    /// noise settings consistent with the mode, j1 ≥ 1...).
    void validate() const;

    /// Parse from flat key=value text (comments with '#'). Unknown keys are
    /// rejected. Keys: density, mode, n, reps, delta (start:step:stop),
    /// j1 (comma list), sigma-eps, s2n, seed, threads.
    static ExperimentConfig from_key_values(const std::map<std::string, std::string>& kv);
};

/// One grid point of the report.
struct RiskPoint {
    int j1 = 0;
    double delta = 0.0;
    double mean_rn = 0.0;   ///< mean over reps of R_n(j1, δ)   (random rule)
    double se_rn = 0.0;
    double mean_rt = 0.0;   ///< mean of R̃_n(j1, δ)            (level rule)
    double se_rt = 0.0;
    double oracle_risk = 0.0;
};

struct RiskReport {
    ExperimentConfig cfg;
    int J = 0;
    std::vector<RiskPoint> points;                 ///< j1-major, δ-minor order
    std::vector<std::vector<double>> raw_rn;       ///< [point][rep] iff keep_raw
    std::vector<std::vector<double>> raw_rt;
};

/// Runs the experiment: per replicate draws one sample (adding noise in
/// deconvolve mode), computes empirical coefficients and variances once, and
/// evaluates the thresholded squared-error numerator for every (j1, δ, rule)
/// against the exact oracle denominator. Replicates are distributed over a
/// worker pool; per-rep results land in preallocated slots and are reduced
/// serially, so the report is bit-identical for any thread count.
RiskReport run_experiment(const ExperimentConfig& cfg);

/// CSV emission, one row per (j1, δ):
///   density,mode,n,j1,delta,mean_Rn,se_Rn,mean_Rtilde,se_Rtilde,oracle_risk,seed,M
/// `header` lines are written first, '#'-prefixed. Numbers carry 17
/// significant digits so parsing them back is exact.
void write_report_csv(const RiskReport& report, std::ostream& out,
                      const std::vector<std::string>& header);

/// JSON mirror of the CSV schema.
void write_report_json(const RiskReport& report, std::ostream& out,
                       const std::vector<std::string>& header);

/// Plot-ready companion per j1: delta,mean_Rn,mean_Rtilde rows.
void write_plot_companion(const RiskReport& report, int j1, std::ostream& out,
                          const std::vector<std::string>& header);

/// Parses rows written by write_report_csv (numeric fields only; used by the
/// round-trip tests and downstream tooling).
std::vector<RiskPoint> read_report_csv(std::istream& in);

/// Parses the JSON written by write_report_json.
std::vector<RiskPoint> read_report_json(std::istream& in);

/// Worker-pool size resolution: explicit > MEYERDENS_THREADS > hardware.
int resolve_thread_count(int requested);

} // namespace meyerdens
