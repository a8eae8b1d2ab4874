// End-to-end tests of the command-line tool via subprocess invocations.
// MEYERDENS_CLI_PATH is injected by the build system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "meyerdens/rng.hpp"
#include "meyerdens/truth.hpp"
#include "meyerdens/version.hpp"

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

/// Runs the CLI with `args` (shell-interpreted), capturing stdout+stderr.
CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd =
        env_prefix + (env_prefix.empty() ? "" : " ") + MEYERDENS_CLI_PATH + " " +
        args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes n mixture draws, with a comment and a blank line sprinkled in.
std::string make_sample_file(const std::string& path, std::size_t n,
                             std::uint64_t seed) {
    using namespace meyerdens;
    const TruthModel truth = TruthModel::make(Density::mixtgauss);
    Rng rng(seed);
    std::ostringstream ss;
    ss << std::setprecision(17);
    ss << "# synthetic mixture sample\n\n";
    for (std::size_t i = 0; i < n; ++i) ss << truth.sample(rng) << "\n";
    write_file(path, ss.str());
    return path;
}

/// Everything from the column header onward (skips invocation-bearing lines).
std::string data_section(const std::string& text, const std::string& marker) {
    const auto pos = text.find(marker);
    REQUIRE(pos != std::string::npos);
    return text.substr(pos);
}

std::size_t count_data_rows(const std::string& text, const std::string& marker) {
    std::istringstream in(data_section(text, marker));
    std::string line;
    std::size_t rows = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {  // the marker line itself
            first = false;
            continue;
        }
        if (!line.empty() && line[0] != '#') ++rows;
    }
    return rows;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(line);
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

} // namespace

TEST_CASE("--version prints the tool version") {
    const CmdResult res = run_cli("--version");
    CHECK(res.status == 0);
    CHECK(res.out.find(meyerdens::kVersion) != std::string::npos);
}

TEST_CASE("a subcommand is required and unknown flags are rejected") {
    CHECK(run_cli("").status != 0);
    CHECK(run_cli("estimate --bogus 1").status != 0);
}

TEST_CASE("estimate runs end to end on a sample file") {
    const std::string path = make_sample_file("cli_test_est.txt", 200, 12);
    const CmdResult res = run_cli("estimate --input " + path);
    CHECK(res.status == 0);
    CHECK(res.out.find("# n: 200\n") != std::string::npos);
    CHECK(res.out.find("# j0: 3\n") != std::string::npos);
    CHECK(res.out.find("# j1: 4\n") != std::string::npos);
    CHECK(res.out.find("floor") != std::string::npos);  // default δ warning
    CHECK(count_data_rows(res.out, "x,density\n") == 512);

    std::istringstream data(data_section(res.out, "x,density\n"));
    std::string line;
    std::getline(data, line);  // header
    std::getline(data, line);
    const auto fields = split_csv(line);
    REQUIRE(fields.size() == 2);
    CHECK(std::stod(fields[0]) < 1.0);  // abscissa in data units
}

TEST_CASE("estimate output is byte-identical across runs") {
    const std::string path = make_sample_file("cli_test_det.txt", 120, 44);
    const CmdResult a = run_cli("estimate --input " + path + " --grid 256");
    const CmdResult b = run_cli("estimate --input " + path + " --grid 256");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("malformed and empty inputs are reported with context") {
    write_file("cli_test_bad.txt", "0.5\nbananas\n");
    const CmdResult bad = run_cli("estimate --input cli_test_bad.txt");
    CHECK(bad.status == 1);
    CHECK(bad.out.find("error:") != std::string::npos);
    CHECK(bad.out.find(":2:") != std::string::npos);
    CHECK(bad.out.find("bananas") != std::string::npos);

    write_file("cli_test_empty.txt", "# nothing here\n");
    const CmdResult empty = run_cli("estimate --input cli_test_empty.txt");
    CHECK(empty.status == 1);
    CHECK(empty.out.find("no samples found") != std::string::npos);

    const CmdResult missing = run_cli("estimate --input cli_test_nonexistent.txt");
    CHECK(missing.status == 1);
    CHECK(missing.out.find("cannot open") != std::string::npos);
}

TEST_CASE("config files feed simulate and the command line overrides them") {
    write_file("cli_test_cfg.ini",
               "density=uniform\nn=50\nreps=4\ndelta=0:0.5:1\nj1=3\nseed=3\n");
    const CmdResult res =
        run_cli("simulate --config cli_test_cfg.ini --reps 2");
    CHECK(res.status == 0);
    const std::string marker = "density,mode,n,j1,delta,";
    CHECK(count_data_rows(res.out, marker) == 3);

    std::istringstream data(data_section(res.out, marker));
    std::string line;
    std::getline(data, line);  // column header
    while (std::getline(data, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv(line);
        REQUIRE(fields.size() == 12);
        CHECK(fields[0] == "uniform");
        CHECK(fields[2] == "50");
        CHECK(fields[11] == "2");  // --reps wins over the config file
    }
}

TEST_CASE("simulate output is byte-identical across thread counts") {
    const std::string args =
        "simulate --density uniform --n 40 --reps 6 --delta 0:0.5:1 --j1 3 --seed 5";
    const CmdResult one = run_cli(args, "MEYERDENS_THREADS=1");
    const CmdResult four = run_cli(args, "MEYERDENS_THREADS=4");
    const CmdResult again = run_cli(args, "MEYERDENS_THREADS=1");
    CHECK(one.status == 0);
    CHECK(one.out == four.out);
    CHECK(one.out == again.out);
    CHECK(one.out.find("# seed: 5\n") != std::string::npos);
}

TEST_CASE("simulate emits JSON and the plot companion on request") {
    const std::string base =
        "simulate --density uniform --n 40 --reps 2 --delta 0:0.5:1 --j1 3 --seed 5";
    const CmdResult json = run_cli(base + " --format json");
    CHECK(json.status == 0);
    CHECK(json.out.find("\"rows\"") != std::string::npos);

    const CmdResult plot = run_cli(base + " --plot-j1 3");
    CHECK(plot.status == 0);
    CHECK(count_data_rows(plot.out, "delta,mean_Rn,mean_Rtilde\n") == 3);

    const CmdResult wrong = run_cli(base + " --plot-j1 9");
    CHECK(wrong.status == 1);
    CHECK(wrong.out.find("not in the report") != std::string::npos);
}

TEST_CASE("the oracle table lists every coefficient up to j1") {
    const CmdResult res = run_cli("oracle --density mixtgauss --n 200");
    CHECK(res.status == 0);
    CHECK(res.out.find("# oracle risk: ") != std::string::npos);
    CHECK(count_data_rows(res.out, "j,k,abs_beta,sigma,keep\n") == 24);  // 8 + 16

    std::istringstream data(data_section(res.out, "j,k,abs_beta,sigma,keep\n"));
    std::string line;
    std::getline(data, line);
    while (std::getline(data, line)) {
        const auto fields = split_csv(line);
        REQUIRE(fields.size() == 5);
        CHECK((fields[4] == "0" || fields[4] == "1"));
        CHECK(std::stod(fields[3]) >= 0.0);
    }

    const CmdResult noisy =
        run_cli("oracle --density mixtgauss --n 200 --noise laplace --s2n 3");
    CHECK(noisy.status == 0);
    const CmdResult conflicted = run_cli(
        "oracle --density mixtgauss --n 200 --noise laplace --s2n 3 --sigma-eps 0.1");
    CHECK(conflicted.status == 1);
}

TEST_CASE("basis dumps the tabulated bands") {
    const CmdResult wav = run_cli("basis --j 3");
    CHECK(wav.status == 0);
    CHECK(count_data_rows(wav.out, "l,real,imag\n") == 16);

    const CmdResult sca = run_cli("basis --j 3 --scaling");
    CHECK(sca.status == 0);
    CHECK(count_data_rows(sca.out, "l,real,imag\n") == 11);

    // the l = 0 scaling entry is 2^{-3/2}
    std::istringstream data(data_section(sca.out, "l,real,imag\n"));
    std::string line;
    std::getline(data, line);
    bool found = false;
    while (std::getline(data, line)) {
        const auto fields = split_csv(line);
        REQUIRE(fields.size() == 3);
        if (fields[0] == "0") {
            found = true;
            CHECK(std::stod(fields[1]) == doctest::Approx(0.35355339059327373).epsilon(1e-15));
            CHECK(std::stod(fields[2]) == 0.0);
        }
    }
    CHECK(found);
}

TEST_CASE("deconvolve with no noise equals direct estimation at pinned levels") {
    const std::string path = make_sample_file("cli_test_eq.txt", 150, 8);
    const std::string pin = " --no-rescale --j0 3 --j1 4 --delta 0.5 --grid 256";
    const CmdResult direct = run_cli("estimate --input " + path + pin);
    const CmdResult deconv =
        run_cli("deconvolve --input " + path + " --noise none" + pin);
    CHECK(direct.status == 0);
    CHECK(deconv.status == 0);
    CHECK(data_section(direct.out, "x,density\n") ==
          data_section(deconv.out, "x,density\n"));
}

TEST_CASE("deconvolve infers the noise level from a signal-to-noise ratio") {
    using namespace meyerdens;
    const TruthModel truth = TruthModel::make(Density::mixtgauss);
    const NoiseModel noise = NoiseModel::laplace(0.03);
    Rng rng(77);
    std::ostringstream ss;
    ss << std::setprecision(17);
    for (int i = 0; i < 200; ++i)
        ss << truth.sample(rng) + noise.sample(rng) << "\n";
    write_file("cli_test_noisy.txt", ss.str());

    const CmdResult res = run_cli("deconvolve --input cli_test_noisy.txt --s2n 3");
    CHECK(res.status == 0);
    CHECK(res.out.find("# noise: laplace sigma-eps=") != std::string::npos);
    CHECK(count_data_rows(res.out, "x,density\n") == 512);

    const CmdResult neither = run_cli("deconvolve --input cli_test_noisy.txt");
    CHECK(neither.status == 1);
    CHECK(neither.out.find("exactly one of") != std::string::npos);
}

TEST_CASE("--output redirects the table into a file") {
    const std::string path = make_sample_file("cli_test_out.txt", 80, 21);
    const CmdResult res = run_cli("estimate --input " + path +
                                  " --output cli_test_out.csv --grid 128");
    CHECK(res.status == 0);
    CHECK(res.out.empty());
    const std::string written = slurp("cli_test_out.csv");
    CHECK(count_data_rows(written, "x,density\n") == 128);
}
