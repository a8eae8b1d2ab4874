// Unit tests for empirical Fourier sums, noise models, and weighted bands.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "meyerdens/rng.hpp"
#include "meyerdens/spectral.hpp"
#include "oracle_kit.hpp"

using namespace meyerdens;
using oracle::cplx;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("empirical Fourier values match the direct definition") {
    Rng rng(123);
    std::vector<double> samples(37);
    for (double& y : samples) y = rng.u01();

    const auto ef = EmpiricalFourier::from_samples(samples, 40);
    REQUIRE(ef.half() == 40);
    REQUIRE(ef.sample_count() == samples.size());
    for (long l = -40; l <= 40; ++l) {
        cplx naive{0.0, 0.0};
        for (const double y : samples)
            naive += std::polar(1.0, -2.0 * kPi * static_cast<double>(l) * y);
        naive /= static_cast<double>(samples.size());
        CHECK(std::abs(ef.value(l) - naive) < 1e-13);
    }
}

TEST_CASE("empirical Fourier invariants hold structurally") {
    Rng rng(7);
    std::vector<double> samples(101);
    for (double& y : samples) y = rng.u01();
    const auto ef = EmpiricalFourier::from_samples(samples, 64);

    // exact unit mass at l = 0
    CHECK(ef.value(0).real() == 1.0);
    CHECK(ef.value(0).imag() == 0.0);
    for (long l = 1; l <= 64; ++l) {
        // mirrored bins are conjugates bit for bit
        CHECK(ef.value(-l).real() == ef.value(l).real());
        CHECK(ef.value(-l).imag() == -ef.value(l).imag());
    }
    for (long l = -64; l <= 64; ++l) CHECK(std::abs(ef.value(l)) <= 1.0 + 1e-12);
}

TEST_CASE("tiny sample sets land where the geometry says") {
    const std::vector<double> quarter{0.25};
    const auto a = EmpiricalFourier::from_samples(quarter, 2);
    CHECK(std::abs(a.value(1) - cplx{0.0, -1.0}) < 1e-15);

    const std::vector<double> split{0.0, 0.5};
    const auto b = EmpiricalFourier::from_samples(split, 2);
    CHECK(std::abs(b.value(1)) < 1e-15);          // opposite phases cancel
    CHECK(std::abs(b.value(2) - 1.0) < 1e-15);    // and realign at l = 2
}

TEST_CASE("domain validation and the wrapped entry point") {
    CHECK_THROWS_AS(EmpiricalFourier::from_samples(std::vector<double>{0.5, 1.5}, 4),
                    DomainError);
    CHECK_THROWS_AS(EmpiricalFourier::from_samples(std::vector<double>{-0.1}, 4),
                    DomainError);
    CHECK_THROWS_AS(EmpiricalFourier::from_samples(std::vector<double>{}, 4),
                    DomainError);

    // e^{-2πily} only sees y mod 1, so wrapped evaluation equals shifting
    const std::vector<double> outside{1.37, -0.25, 2.0};
    std::vector<double> inside(outside.size());
    for (std::size_t i = 0; i < outside.size(); ++i)
        inside[i] = outside[i] - std::floor(outside[i]);
    const auto w = EmpiricalFourier::from_samples_wrapped(outside, 8);
    const auto v = EmpiricalFourier::from_samples(inside, 8);
    for (long l = -8; l <= 8; ++l) CHECK(std::abs(w.value(l) - v.value(l)) < 1e-12);

    CHECK_THROWS_AS(v.value(9), GridError);
    CHECK_THROWS_AS(v.value(-9), GridError);
}

TEST_CASE("identity noise is the trivial model") {
    const auto id = NoiseModel::identity();
    CHECK(id.kind() == NoiseModel::Kind::identity);
    CHECK(id.nu() == 0.0);
    for (long l : {-17L, 0L, 1L, 100L}) {
        CHECK(id.fourier(l).real() == 1.0);
        CHECK(id.fourier(l).imag() == 0.0);
    }
    Rng rng(1);
    for (int i = 0; i < 10; ++i) CHECK(id.sample(rng) == 0.0);
}

TEST_CASE("centered double-exponential noise coefficients") {
    const auto nm = NoiseModel::laplace(0.1);
    CHECK(nm.nu() == 2.0);
    CHECK(nm.sigma_eps() == 0.1);
    CHECK(nm.fourier(0).real() == 1.0);
    CHECK(nm.fourier(1).real() == doctest::Approx(0.8351483277729863).epsilon(1e-14));
    CHECK(nm.fourier(1).imag() == 0.0);
    for (long l = 1; l <= 20; ++l) {
        CHECK(nm.fourier(-l).real() == nm.fourier(l).real());
        CHECK(nm.fourier(l).real() > nm.fourier(l + 1).real());  // strict decay
    }
    const auto nm2 = NoiseModel::laplace(0.05);
    CHECK(nm2.fourier(3).real() == doctest::Approx(0.6924573812224184).epsilon(1e-14));
    CHECK_THROWS_AS(NoiseModel::laplace(0.0), ConfigError);
    CHECK_THROWS_AS(NoiseModel::laplace(-1.0), ConfigError);
}

TEST_CASE("double-exponential sampler has the right first two moments") {
    const double sigma = 0.2;
    const auto nm = NoiseModel::laplace(sigma);
    Rng rng(20240817);
    const std::size_t n = 200000;
    std::vector<double> draws(n);
    for (double& x : draws) x = nm.sample(rng);

    const double mean = oracle::mean(draws);
    const double var = oracle::sample_variance(draws);
    const double se_mean = sigma / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean) < 4.0 * se_mean);
    CHECK(std::abs(var - sigma * sigma) < 4.0 * oracle::variance_se(draws));

    // symmetry: both halves populated
    std::size_t pos = 0;
    for (const double x : draws) pos += (x > 0.0);
    CHECK(std::abs(static_cast<double>(pos) / static_cast<double>(n) - 0.5) < 0.01);
}

TEST_CASE("custom noise models are validated") {
    CHECK_THROWS_AS(NoiseModel::custom([](long) { return cplx{0.9, 0.0}; }, 1.0),
                    ConfigError);
    CHECK_THROWS_AS(NoiseModel::custom(nullptr, 1.0), ConfigError);
    CHECK_THROWS_AS(
        NoiseModel::custom([](long) { return cplx{1.0, 0.0}; }, -1.0), ConfigError);

    const auto nm = NoiseModel::custom(
        [](long l) { return cplx{1.0 / (1.0 + std::abs(static_cast<double>(l))), 0.0}; },
        1.0);
    CHECK(nm.nu() == 1.0);
    CHECK(nm.fourier(3).real() == doctest::Approx(0.25));
    Rng rng(1);
    CHECK_THROWS_AS(nm.sample(rng), Error);
}

TEST_CASE("identity weights reproduce the basis tables bit for bit") {
    const BandTable table = BandTable::build(BasisSpec{3, 4, 8});
    const WeightedBands wb = WeightedBands::build(table, NoiseModel::identity());
    CHECK(&wb.table() == &table);

    const auto& sband = table.scaling_band();
    const auto sw = wb.scaling_weights();
    REQUIRE(sw.size() == sband.size());
    for (std::size_t i = 0; i < sw.size(); ++i) {
        CHECK(sw[i].real() == sband.coef[i].real());
        CHECK(sw[i].imag() == sband.coef[i].imag());
    }
    double eta_ref = 0.0;
    for (const auto& c : sband.coef) eta_ref += std::abs(c);
    CHECK(wb.eta_scaling() == eta_ref);

    for (int j = 3; j < 8; ++j) {
        const auto& band = table.wavelet_band(j);
        const auto w = wb.level_weights(j);
        REQUIRE(w.size() == band.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(w[i].real() == band.coef[i].real());
            CHECK(w[i].imag() == band.coef[i].imag());
        }
        double eta = 0.0;
        for (const auto& c : band.coef) eta += std::abs(c);
        CHECK(wb.eta(j) == eta);
    }
}

TEST_CASE("noise weights divide the band coefficients pointwise") {
    const BandTable table = BandTable::build(BasisSpec{3, 4, 8});
    const auto nm = NoiseModel::laplace(0.05);
    const WeightedBands wb = WeightedBands::build(table, nm);

    for (int j = 3; j < 8; ++j) {
        const auto& band = table.wavelet_band(j);
        const auto w = wb.level_weights(j);
        double eta = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const cplx expect = band.coef[i] / nm.fourier(band.freqs[i]);
            CHECK(std::abs(w[i] - expect) < 1e-15);
            eta += std::abs(expect);
        }
        CHECK(wb.eta(j) == doctest::Approx(eta).epsilon(1e-13));
        // inverting a |h| < 1 filter can only grow the weights
        CHECK(wb.eta(j) > band.abs_sum());
    }
}

TEST_CASE("vanishing noise coefficients are rejected as ill-posed") {
    const BandTable table = BandTable::build(BasisSpec{3, 4, 8});
    const auto bad = NoiseModel::custom(
        [](long l) {
            return (std::abs(l) == 7) ? cplx{1e-15, 0.0} : cplx{1.0, 0.0};
        },
        2.0);
    CHECK_THROWS_AS(WeightedBands::build(table, bad), IllPosedBand);
    // an explicit lower floor admits the same model
    CHECK_NOTHROW(WeightedBands::build(table, bad, 1e-16));
}
