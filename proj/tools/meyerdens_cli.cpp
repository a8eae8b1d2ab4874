// meyerdens_cli.cpp — command-line front end: estimate / deconvolve /
// simulate / oracle / basis. All output is deterministic (headers carry the
// invocation, seed, and version; never timestamps).
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "meyerdens/estimator.hpp"
#include "meyerdens/harness.hpp"
#include "meyerdens/threshold.hpp"
#include "meyerdens/truth.hpp"
#include "meyerdens/version.hpp"

namespace {

using namespace meyerdens;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join_invocation(int argc, char** argv) {
    std::string out;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) out += ' ';
        out += argv[i];
    }
    return out;
}

/// One numeric per line; '#' starts a comment; blank lines are ignored.
std::vector<double> read_samples(std::istream& in, const std::string& name) {
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const auto b = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(a, b - a + 1);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw IoError(name + ":" + std::to_string(lineno) +
                          ": expected one numeric value, got '" + tok + "'");
        }
        if (pos != tok.size())
            throw IoError(name + ":" + std::to_string(lineno) +
                          ": trailing characters after number in '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw IoError(name + ": no samples found");
    return out;
}

std::vector<double> load_samples(const std::string& path) {
    if (path == "-") return read_samples(std::cin, "<stdin>");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file '" + path + "'");
    return read_samples(in, path);
}

/// Flat key=value lines; '#' starts a comment; blank lines are ignored.
std::map<std::string, std::string> read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    const auto trim = [](const std::string& s) -> std::string {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return {};
        return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": expected key=value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty())
            throw IoError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = trim(stripped.substr(eq + 1));
    }
    return kv;
}

/// stdout by default, a file when --output is given.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw IoError("cannot open output file '" + path + "'");
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string input;
    std::string output;
    long grid = 512;
    int j0 = -1;                    // -1 = auto
    int j1 = -1;
    double delta = -1.0;            // <0 = auto
    double alpha = 0.0;
    std::string rule = "random";
    std::string post = "raw";
    double margin = 0.05;
    bool no_rescale = false;
    // deconvolve only:
    std::string noise = "laplace";  // none|laplace
    double sigma_eps = 0.0;
    double s2n = 0.0;
};

void add_estimate_options(CLI::App* cmd, EstimateArgs& a, bool deconv) {
    cmd->add_option("--input", a.input, "sample file, one value per line ('-' = stdin)")
        ->required();
    cmd->add_option("--output", a.output, "output file (default: stdout)");
    cmd->add_option("--grid", a.grid, "reconstruction grid size (power of two)")
        ->capture_default_str();
    cmd->add_option("--j0", a.j0, "coarse level (default: auto)");
    cmd->add_option("--j1", a.j1, "finest kept level (default: auto)");
    cmd->add_option("--delta", a.delta, "threshold multiplier (default: auto)");
    cmd->add_option("--alpha", a.alpha, "selector exponent alpha")
        ->capture_default_str();
    cmd->add_option("--rule", a.rule, "threshold rule")
        ->check(CLI::IsMember({"random", "level"}))
        ->capture_default_str();
    cmd->add_option("--post", a.post, "post-processing of the density values")
        ->check(CLI::IsMember({"raw", "clip", "clip-renormalize"}))
        ->capture_default_str();
    cmd->add_option("--margin", a.margin, "rescale margin")->capture_default_str();
    cmd->add_flag("--no-rescale", a.no_rescale,
                  "skip the affine rescale; samples must lie in [0,1]");
    if (deconv) {
        cmd->add_option("--noise", a.noise, "error model")
            ->check(CLI::IsMember({"none", "laplace"}))
            ->capture_default_str();
        cmd->add_option("--sigma-eps", a.sigma_eps, "noise standard deviation");
        cmd->add_option("--s2n", a.s2n,
                        "signal-to-noise ratio sd(X)/sd(eps); sd(X) is inferred "
                        "from the observed variance");
    }
}

void run_estimate(const EstimateArgs& a, bool deconv, const std::string& invocation) {
    const std::vector<double> samples = load_samples(a.input);

    FitOptions opt;
    opt.deconvolve = deconv;
    opt.grid = a.grid;
    opt.alpha = a.alpha;
    opt.rule = (a.rule == "level") ? ThresholdRule::level : ThresholdRule::random;
    opt.post = post_policy_from_name(a.post);
    opt.rescale = !a.no_rescale;
    opt.margin = a.margin;
    if (a.j0 >= 0) opt.j0 = a.j0;
    if (a.j1 >= 0) opt.j1 = a.j1;
    if (a.delta >= 0.0) opt.delta = a.delta;

    if (deconv && a.noise == "laplace") {
        const bool has_sigma = a.sigma_eps > 0.0;
        const bool has_s2n = a.s2n > 0.0;
        if (has_sigma == has_s2n)
            throw ConfigError("deconvolve needs exactly one of --sigma-eps and --s2n");
        double sigma = a.sigma_eps;
        if (has_s2n) {
            // var(Y) = var(X)(1 + 1/s2n²) and σ_ε = sd(X)/s2n
            double mean = 0.0;
            for (const double y : samples) mean += y;
            mean /= static_cast<double>(samples.size());
            double var = 0.0;
            for (const double y : samples) var += (y - mean) * (y - mean);
            var /= static_cast<double>(samples.size() - 1);
            const double var_x = var / (1.0 + 1.0 / (a.s2n * a.s2n));
            sigma = std::sqrt(var_x) / a.s2n;
        }
        opt.noise = NoiseModel::laplace(sigma);
    }

    const FitResult fit_result = fit(samples, opt);

    Output out(a.output);
    std::ostream& os = out.os();
    os << "# meyerdens " << kVersion << "\n";
    os << "# invocation: " << invocation << "\n";
    os << "# n: " << samples.size() << "\n";
    os << "# j0: " << fit_result.hyper.j0 << "\n";
    os << "# j1: " << fit_result.hyper.j1 << "\n";
    os << "# delta: " << fmt17(fit_result.hyper.delta) << "\n";
    os << "# rescale: a=" << fmt17(fit_result.map.a)
       << " b=" << fmt17(fit_result.map.b) << "\n";
    if (deconv)
        os << "# noise: " << a.noise
           << " sigma-eps=" << fmt17(opt.noise.sigma_eps()) << "\n";
    for (const auto& w : fit_result.warnings) os << "# warning: " << w << "\n";
    os << "x,density\n";
    for (std::size_t i = 0; i < fit_result.density.size(); ++i)
        os << fmt17(fit_result.grid_x[i]) << ',' << fmt17(fit_result.density[i])
           << "\n";
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string density = "mixtgauss";
    std::string mode = "direct";
    std::size_t n = 200;
    std::size_t reps = 100;
    std::string delta = "0:0.1:5";
    std::string j1 = "4";
    double sigma_eps = 0.0;
    double s2n = 0.0;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string format = "csv";
    int plot_j1 = -1;
    std::string output;
    std::string config;
};

void add_simulate_options(CLI::App* cmd, SimulateArgs& a) {
    cmd->add_option("--density", a.density, "benchmark density")
        ->check(CLI::IsMember({"uniform", "exponential", "laplace", "mixtgauss"}))
        ->capture_default_str();
    cmd->add_option("--mode", a.mode, "observation scheme")
        ->check(CLI::IsMember({"direct", "deconvolve"}))
        ->capture_default_str();
    cmd->add_option("--n", a.n, "sample size per replicate")->capture_default_str();
    cmd->add_option("--reps", a.reps, "Monte Carlo replicates")->capture_default_str();
    cmd->add_option("--delta", a.delta, "threshold grid start:step:stop")
        ->capture_default_str();
    cmd->add_option("--j1", a.j1, "comma-separated list of j1 levels")
        ->capture_default_str();
    cmd->add_option("--sigma-eps", a.sigma_eps, "noise standard deviation");
    cmd->add_option("--s2n", a.s2n, "signal-to-noise ratio sd(X)/sd(eps)");
    cmd->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--threads", a.threads,
                    "worker threads (0 = MEYERDENS_THREADS or hardware)")
        ->capture_default_str();
    cmd->add_option("--format", a.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--plot-j1", a.plot_j1,
                    "emit the delta,mean_Rn,mean_Rtilde companion for this j1");
    cmd->add_option("--output", a.output, "output file (default: stdout)");
    cmd->add_option("--config", a.config,
                    "flat key=value experiment configuration file; explicit "
                    "flags override it");
}

void run_simulate(const SimulateArgs& a, const CLI::App& cmd,
                  const std::string& invocation) {
    // config file first, then every flag the user actually typed on top,
    // then built-in defaults for whatever is still missing
    std::map<std::string, std::string> kv;
    if (!a.config.empty()) kv = read_key_values(a.config);
    const auto put = [&](const char* key, const char* flag, std::string value) {
        if (cmd.count(flag) > 0 || kv.find(key) == kv.end()) kv[key] = std::move(value);
    };
    put("density", "--density", a.density);
    put("mode", "--mode", a.mode);
    put("n", "--n", std::to_string(a.n));
    put("reps", "--reps", std::to_string(a.reps));
    put("delta", "--delta", a.delta);
    put("j1", "--j1", a.j1);
    put("seed", "--seed", std::to_string(a.seed));
    put("threads", "--threads", std::to_string(a.threads));
    if (cmd.count("--sigma-eps") > 0) kv["sigma-eps"] = fmt17(a.sigma_eps);
    if (cmd.count("--s2n") > 0) kv["s2n"] = fmt17(a.s2n);
    const ExperimentConfig cfg = ExperimentConfig::from_key_values(kv);

    const RiskReport report = run_experiment(cfg);

    const std::vector<std::string> header = {
        std::string("meyerdens ") + kVersion,
        "invocation: " + invocation,
        "seed: " + std::to_string(cfg.seed),
    };
    Output out(a.output);
    if (a.plot_j1 >= 0)
        write_plot_companion(report, a.plot_j1, out.os(), header);
    else if (a.format == "json")
        write_report_json(report, out.os(), header);
    else
        write_report_csv(report, out.os(), header);
}

// ------------------------------------------------------------------ oracle

struct OracleArgs {
    std::string density = "mixtgauss";
    std::size_t n = 200;
    int j1 = -1;
    std::string noise = "none";
    double sigma_eps = 0.0;
    double s2n = 0.0;
    std::string output;
};

void add_oracle_options(CLI::App* cmd, OracleArgs& a) {
    cmd->add_option("--density", a.density, "benchmark density")
        ->check(CLI::IsMember({"uniform", "exponential", "laplace", "mixtgauss"}))
        ->capture_default_str();
    cmd->add_option("--n", a.n, "sample size")->capture_default_str();
    cmd->add_option("--j1", a.j1, "finest level (default: auto)");
    cmd->add_option("--noise", a.noise, "error model")
        ->check(CLI::IsMember({"none", "laplace"}))
        ->capture_default_str();
    cmd->add_option("--sigma-eps", a.sigma_eps, "noise standard deviation");
    cmd->add_option("--s2n", a.s2n, "signal-to-noise ratio sd(X)/sd(eps)");
    cmd->add_option("--output", a.output, "output file (default: stdout)");
}

void run_oracle(const OracleArgs& a, const std::string& invocation) {
    const TruthModel truth = TruthModel::make(density_from_name(a.density));
    const bool deconv = a.noise == "laplace";
    NoiseModel noise = NoiseModel::identity();
    if (deconv) {
        const bool has_sigma = a.sigma_eps > 0.0;
        const bool has_s2n = a.s2n > 0.0;
        if (has_sigma == has_s2n)
            throw ConfigError("laplace noise needs exactly one of --sigma-eps and --s2n");
        noise = NoiseModel::laplace(has_sigma ? a.sigma_eps
                                              : std::sqrt(truth.variance()) / a.s2n);
    }

    const Hyper hyper = deconv ? select_deconv(a.n, noise.nu(), 0.0)
                               : select_direct(a.n);
    const int j1 = (a.j1 >= 0) ? a.j1 : hyper.j1;
    if (j1 < hyper.j0) throw ConfigError("--j1 below the coarse level j0");

    int J = std::max(8, j1 + 1);
    while ((std::size_t{1} << J) < a.n) ++J;
    const BasisSpec spec{hyper.j0, j1, J};
    const BandTable table = BandTable::build(spec);
    const WeightedBands weights = WeightedBands::build(table, noise);
    const OracleQuantities oq = exact_oracle(truth, weights, a.n, j1);

    Output out(a.output);
    std::ostream& os = out.os();
    os << "# meyerdens " << kVersion << "\n";
    os << "# invocation: " << invocation << "\n";
    os << "# density: " << a.density << " n: " << a.n << " j0: " << hyper.j0
       << " j1: " << j1 << "\n";
    os << "# oracle risk: " << fmt17(oq.oracle_risk(j1)) << "\n";
    os << "j,k,abs_beta,sigma,keep\n";
    for (int j = spec.j0; j <= j1; ++j) {
        const std::size_t lev = static_cast<std::size_t>(j - spec.j0);
        for (std::size_t k = 0; k < oq.beta[lev].size(); ++k)
            os << j << ',' << k << ',' << fmt17(std::abs(oq.beta[lev][k])) << ','
               << fmt17(std::sqrt(oq.sigma2[lev][k])) << ','
               << (oq.keep(j, static_cast<long>(k)) ? 1 : 0) << "\n";
    }
}

// ------------------------------------------------------------------- basis

struct BasisArgs {
    int j = 4;
    bool scaling = false;
    std::string output;
};

void add_basis_options(CLI::App* cmd, BasisArgs& a) {
    cmd->add_option("--j", a.j, "resolution level to dump")->required();
    cmd->add_flag("--scaling", a.scaling, "dump the scaling band instead");
    cmd->add_option("--output", a.output, "output file (default: stdout)");
}

void run_basis(const BasisArgs& a, const std::string& invocation) {
    if (a.j < 0) throw ConfigError("--j must be nonnegative");
    const BasisSpec spec{a.j, a.j, a.j + 1};
    const BandTable table = BandTable::build(spec);
    const LevelBand& band = a.scaling ? table.scaling_band() : table.wavelet_band(a.j);

    Output out(a.output);
    std::ostream& os = out.os();
    os << "# meyerdens " << kVersion << "\n";
    os << "# invocation: " << invocation << "\n";
    os << "# level: " << a.j << (a.scaling ? " (scaling)" : " (wavelet)")
       << " entries: " << band.size() << "\n";
    os << "l,real,imag\n";
    for (std::size_t i = 0; i < band.size(); ++i)
        os << band.freqs[i] << ',' << fmt17(band.coef[i].real()) << ','
           << fmt17(band.coef[i].imag()) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density estimation and deconvolution by thresholded "
                 "band-limited wavelet coefficients"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    EstimateArgs est;
    CLI::App* c_est = app.add_subcommand("estimate", "estimate a density from samples");
    add_estimate_options(c_est, est, false);

    EstimateArgs dec;
    CLI::App* c_dec = app.add_subcommand(
        "deconvolve", "estimate a density from noisy samples Y = X + eps");
    add_estimate_options(c_dec, dec, true);

    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand(
        "simulate", "Monte Carlo risk-ratio curves against the oracle risk");
    add_simulate_options(c_sim, sim);

    OracleArgs ora;
    CLI::App* c_ora = app.add_subcommand(
        "oracle", "exact coefficient/variance table for a benchmark density");
    add_oracle_options(c_ora, ora);

    BasisArgs bas;
    CLI::App* c_bas = app.add_subcommand("basis", "dump tabulated band coefficients");
    add_basis_options(c_bas, bas);

    try {
        app.parse(argc, argv);
        const std::string invocation = join_invocation(argc, argv);
        if (c_est->parsed()) run_estimate(est, false, invocation);
        if (c_dec->parsed()) run_estimate(dec, true, invocation);
        if (c_sim->parsed()) run_simulate(sim, *c_sim, invocation);
        if (c_ora->parsed()) run_oracle(ora, invocation);
        if (c_bas->parsed()) run_basis(bas, invocation);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
