// harness.cpp — Monte Carlo risk-curve experiments with deterministic
// per-replicate streams and exact oracle denominators.
#include "meyerdens/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "meyerdens/threshold.hpp"

namespace meyerdens {

namespace {

/// Fixed-width emission with enough digits for an exact strtod round trip.
std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

long parse_long(const std::string& s, const std::string& key) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse integer '" + s + "'");
    }
    if (pos != s.size())
        throw ConfigError("key '" + key + "': trailing junk in '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + s + "'");
    }
    if (pos != s.size())
        throw ConfigError("key '" + key + "': trailing junk in '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

} // namespace

double ExperimentConfig::resolved_sigma_eps() const {
    if (!deconvolve) return 0.0;
    if (sigma_eps > 0.0) return sigma_eps;
    return std::sqrt(TruthModel::make(density).variance()) / s2n;
}

int ExperimentConfig::depth() const {
    int J = 8;
    while ((std::size_t{1} << J) < n) ++J;
    for (const int j1 : j1_list) J = std::max(J, j1 + 1);
    return J;
}

std::vector<double> ExperimentConfig::delta_grid() const {
    if (delta_step == 0.0) return {delta_start};
    const auto count = static_cast<std::size_t>(
        std::floor((delta_stop - delta_start) / delta_step + 1e-9));
    std::vector<double> grid(count + 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = delta_start + static_cast<double>(i) * delta_step;
    return grid;
}

void ExperimentConfig::validate() const {
    if (n < 3) throw ConfigError("experiment needs n >= 3");
    if (reps < 1) throw ConfigError("experiment needs reps >= 1");
    if (delta_start < 0.0 || delta_step < 0.0 || delta_stop < delta_start)
        throw ConfigError("delta grid needs 0 <= start <= stop and step >= 0");
    if (j1_list.empty()) throw ConfigError("experiment needs at least one j1");
    const int j0 = select_direct(n).j0;
    for (const int j1 : j1_list) {
        if (j1 < j0)
            throw ConfigError("j1 = " + std::to_string(j1) +
                              " below the coarse level j0 = " + std::to_string(j0));
        if (j1 > 20) throw ConfigError("j1 too large");
    }
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (deconvolve) {
        const bool has_sigma = sigma_eps > 0.0;
        const bool has_s2n = s2n > 0.0;
        if (has_sigma == has_s2n)
            throw ConfigError(
                "deconvolve mode needs exactly one of sigma-eps and s2n");
    } else if (sigma_eps != 0.0 || s2n != 0.0) {
        throw ConfigError("noise settings are only valid in deconvolve mode");
    }
}

ExperimentConfig ExperimentConfig::from_key_values(
    const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "density") {
            cfg.density = density_from_name(value);
        } else if (key == "mode") {
            if (value == "direct") cfg.deconvolve = false;
            else if (value == "deconvolve") cfg.deconvolve = true;
            else throw ConfigError("mode must be direct or deconvolve, got '" + value + "'");
        } else if (key == "n") {
            cfg.n = static_cast<std::size_t>(parse_long(value, key));
        } else if (key == "reps") {
            cfg.reps = static_cast<std::size_t>(parse_long(value, key));
        } else if (key == "delta") {
            const auto parts = split(value, ':');
            if (parts.size() != 3)
                throw ConfigError("delta expects start:step:stop, got '" + value + "'");
            cfg.delta_start = parse_double(parts[0], key);
            cfg.delta_step = parse_double(parts[1], key);
            cfg.delta_stop = parse_double(parts[2], key);
        } else if (key == "j1") {
            cfg.j1_list.clear();
            for (const auto& part : split(value, ','))
                cfg.j1_list.push_back(static_cast<int>(parse_long(part, key)));
            if (cfg.j1_list.empty()) throw ConfigError("empty j1 list");
        } else if (key == "sigma-eps") {
            cfg.sigma_eps = parse_double(value, key);
        } else if (key == "s2n") {
            cfg.s2n = parse_double(value, key);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_long(value, key));
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_long(value, key));
        } else {
            throw ConfigError("unknown experiment key '" + key + "'");
        }
    }
    return cfg;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MEYERDENS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

RiskReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const TruthModel truth = TruthModel::make(cfg.density);
    const NoiseModel noise = cfg.deconvolve
                                 ? NoiseModel::laplace(cfg.resolved_sigma_eps())
                                 : NoiseModel::identity();

    const int j0 = select_direct(cfg.n).j0;
    const int jmax = *std::max_element(cfg.j1_list.begin(), cfg.j1_list.end());
    const BasisSpec spec{j0, jmax, cfg.depth()};
    const BandTable table = BandTable::build(spec);
    const WeightedBands weights = WeightedBands::build(table, noise);

    const OracleQuantities oq = exact_oracle(truth, weights, cfg.n, jmax);
    const CoeffSet truth_coeffs = truth.true_coeffs(table);

    std::vector<double> denom(cfg.j1_list.size());
    for (std::size_t i = 0; i < cfg.j1_list.size(); ++i) {
        denom[i] = oq.oracle_risk(cfg.j1_list[i]);
        if (!(denom[i] > 0.0))
            throw Error("oracle risk is not positive at j1 = " +
                        std::to_string(cfg.j1_list[i]));
    }

    const std::vector<double> deltas = cfg.delta_grid();
    const std::size_t npts = cfg.j1_list.size() * deltas.size();

    RiskReport report;
    report.cfg = cfg;
    report.J = spec.J;
    report.raw_rn.assign(npts, std::vector<double>(cfg.reps, 0.0));
    report.raw_rt.assign(npts, std::vector<double>(cfg.reps, 0.0));

    // each replicate owns its RNG stream and result slots, so the report is
    // independent of how replicates are distributed over workers
    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        try {
            std::vector<double> samples(cfg.n);
            for (;;) {
                const std::size_t rep = next.fetch_add(1);
                if (rep >= cfg.reps) return;
                Rng rng = Rng::stream(cfg.seed, rep);
                for (std::size_t i = 0; i < cfg.n; ++i) {
                    double y = truth.sample(rng);
                    if (cfg.deconvolve) y += noise.sample(rng);
                    samples[i] = y;
                }
                const Analysis analysis = analyze(samples, weights, false);
                for (std::size_t di = 0; di < deltas.size(); ++di) {
                    const auto tau = random_threshold(analysis.variance, deltas[di]);
                    for (std::size_t ji = 0; ji < cfg.j1_list.size(); ++ji) {
                        const int j1 = cfg.j1_list[ji];
                        const std::size_t pt = ji * deltas.size() + di;
                        const CoeffSet kept =
                            hard_threshold(analysis.coeffs, tau, j1);
                        report.raw_rn[pt][rep] =
                            kept.squared_distance(truth_coeffs) / denom[ji];
                        const CoeffSet kept_level = hard_threshold_level(
                            analysis.coeffs, deltas[di], cfg.n, j1);
                        report.raw_rt[pt][rep] =
                            kept_level.squared_distance(truth_coeffs) / denom[ji];
                    }
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(fail_mutex);
            if (!failure) failure = std::current_exception();
            next.store(cfg.reps);
        }
    };

    const int nthreads = std::min<int>(resolve_thread_count(cfg.threads),
                                       static_cast<int>(cfg.reps));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    // serial reduction in replicate order
    const double m = static_cast<double>(cfg.reps);
    report.points.resize(npts);
    auto reduce = [&](const std::vector<double>& raw, double& mean, double& se) {
        double acc = 0.0;
        for (const double x : raw) acc += x;
        mean = acc / m;
        if (cfg.reps < 2) {
            se = 0.0;
            return;
        }
        double ss = 0.0;
        for (const double x : raw) ss += (x - mean) * (x - mean);
        se = std::sqrt(ss / (m - 1.0)) / std::sqrt(m);
    };
    for (std::size_t ji = 0; ji < cfg.j1_list.size(); ++ji)
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const std::size_t pt = ji * deltas.size() + di;
            RiskPoint& p = report.points[pt];
            p.j1 = cfg.j1_list[ji];
            p.delta = deltas[di];
            p.oracle_risk = denom[ji];
            reduce(report.raw_rn[pt], p.mean_rn, p.se_rn);
            reduce(report.raw_rt[pt], p.mean_rt, p.se_rt);
        }

    if (!cfg.keep_raw) {
        report.raw_rn.clear();
        report.raw_rt.clear();
    }
    return report;
}

namespace {

const char* mode_name(const ExperimentConfig& cfg) {
    return cfg.deconvolve ? "deconvolve" : "direct";
}

} // namespace

void write_report_csv(const RiskReport& report, std::ostream& out,
                      const std::vector<std::string>& header) {
    for (const auto& line : header) out << "# " << line << "\n";
    out << "density,mode,n,j1,delta,mean_Rn,se_Rn,mean_Rtilde,se_Rtilde,"
           "oracle_risk,seed,M\n";
    for (const RiskPoint& p : report.points)
        out << density_name(report.cfg.density) << ',' << mode_name(report.cfg)
            << ',' << report.cfg.n << ',' << p.j1 << ',' << num17(p.delta) << ','
            << num17(p.mean_rn) << ',' << num17(p.se_rn) << ',' << num17(p.mean_rt)
            << ',' << num17(p.se_rt) << ',' << num17(p.oracle_risk) << ','
            << report.cfg.seed << ',' << report.cfg.reps << "\n";
}

void write_report_json(const RiskReport& report, std::ostream& out,
                       const std::vector<std::string>& header) {
    nlohmann::json doc;
    doc["header"] = header;
    doc["density"] = density_name(report.cfg.density);
    doc["mode"] = mode_name(report.cfg);
    doc["n"] = report.cfg.n;
    doc["seed"] = report.cfg.seed;
    doc["M"] = report.cfg.reps;
    doc["J"] = report.J;
    nlohmann::json rows = nlohmann::json::array();
    for (const RiskPoint& p : report.points) {
        nlohmann::json row;
        row["j1"] = p.j1;
        row["delta"] = p.delta;
        row["mean_Rn"] = p.mean_rn;
        row["se_Rn"] = p.se_rn;
        row["mean_Rtilde"] = p.mean_rt;
        row["se_Rtilde"] = p.se_rt;
        row["oracle_risk"] = p.oracle_risk;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

void write_plot_companion(const RiskReport& report, int j1, std::ostream& out,
                          const std::vector<std::string>& header) {
    bool found = false;
    for (const RiskPoint& p : report.points)
        if (p.j1 == j1) found = true;
    if (!found)
        throw ConfigError("j1 = " + std::to_string(j1) + " is not in the report");
    for (const auto& line : header) out << "# " << line << "\n";
    out << "delta,mean_Rn,mean_Rtilde\n";
    for (const RiskPoint& p : report.points)
        if (p.j1 == j1)
            out << num17(p.delta) << ',' << num17(p.mean_rn) << ','
                << num17(p.mean_rt) << "\n";
}

std::vector<RiskPoint> read_report_csv(std::istream& in) {
    std::vector<RiskPoint> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("density,", 0) == 0) continue;  // column header
        const auto fields = split(line, ',');
        if (fields.size() != 12)
            throw IoError("report row with " + std::to_string(fields.size()) +
                          " fields (expected 12)");
        RiskPoint p;
        p.j1 = static_cast<int>(parse_long(fields[3], "j1"));
        p.delta = parse_double(fields[4], "delta");
        p.mean_rn = parse_double(fields[5], "mean_Rn");
        p.se_rn = parse_double(fields[6], "se_Rn");
        p.mean_rt = parse_double(fields[7], "mean_Rtilde");
        p.se_rt = parse_double(fields[8], "se_Rtilde");
        p.oracle_risk = parse_double(fields[9], "oracle_risk");
        out.push_back(p);
    }
    return out;
}

std::vector<RiskPoint> read_report_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("cannot parse report JSON: ") + e.what());
    }
    std::vector<RiskPoint> out;
    for (const auto& row : doc.at("rows")) {
        RiskPoint p;
        p.j1 = row.at("j1").get<int>();
        p.delta = row.at("delta").get<double>();
        p.mean_rn = row.at("mean_Rn").get<double>();
        p.se_rn = row.at("se_Rn").get<double>();
        p.mean_rt = row.at("mean_Rtilde").get<double>();
        p.se_rt = row.at("se_Rtilde").get<double>();
        p.oracle_risk = row.at("oracle_risk").get<double>();
        out.push_back(p);
    }
    return out;
}

} // namespace meyerdens
