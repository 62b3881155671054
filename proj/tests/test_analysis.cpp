#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ncarea/analysis.hpp"
#include "ncarea/errors.hpp"

using namespace ncarea;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}
}  // namespace

TEST_CASE("vacuum moments from the tomogram") {
    const FockExpansion vac = expand(Fock{0});
    for (double theta : {0.0, 1.3, 2.8}) {
        CHECK(std::abs(moment_from_tomogram(vac, 1, theta)) < 1e-10);
        CHECK(moment_from_tomogram(vac, 2, theta) == doctest::Approx(0.5).epsilon(1e-9));
    }
    CHECK_THROWS_AS(moment_from_tomogram(vac, 3, 0.0), Error);
}

TEST_CASE("squeezed vacuum second moment at the squeezed angle") {
    // r = 0.5, delta = 0 at theta = 0: <X^2> = e^{-2r}/2 = e^{-1}/2.
    const FockExpansion e = expand(SqueezedVacuum{0.5, 0.0}, 1e-12);
    CHECK(moment_from_tomogram(e, 2, 0.0) ==
          doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-8));
    CHECK(std::abs(moment_from_tomogram(e, 1, 0.0)) < 1e-10);
}

TEST_CASE("profiles of coherent and fock states are flat") {
    const FockExpansion coh = expand(Coherent{Complex(2.0, 1.0)}, 1e-12);
    const QuadratureProfile p = std_profile(coh, linspace(0.0, 2 * kPi, 33),
                                            ProfileMethod::analytic);
    for (double s : p.std)
        CHECK(s == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-9));

    const FockExpansion f4 = expand(Fock{4});
    const QuadratureProfile pf = std_profile(f4, linspace(0.0, 2 * kPi, 21),
                                             ProfileMethod::analytic);
    for (double s : pf.std) CHECK(s == doctest::Approx(std::sqrt(4.5)).epsilon(1e-12));
}

TEST_CASE("squeezed fock profile matches the closed form") {
    const int n = 1;
    const double r = 0.3, delta = kPi / 2;
    const FockExpansion e = expand(SqueezedFock{n, r, delta}, 1e-12);
    const auto grid = linspace(0.0, 2 * kPi, 29);
    const QuadratureProfile p = std_profile(e, grid, ProfileMethod::analytic);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double want =
            std::sqrt(1.5) * std::sqrt(std::cosh(0.6) -
                                       std::sinh(0.6) * std::cos(delta - 2 * grid[k]));
        CHECK(std::abs(p.std[k] - want) < 1e-9);
    }
}

TEST_CASE("tomographic and analytic profiles agree across families") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<StateSpec> specs = {
        Fock{7},
        Coherent{std::polar(2.0 * u(rng), 2 * kPi * u(rng))},
        SqueezedVacuum{0.05 + u(rng), 2 * kPi * u(rng)},
        SqueezedFock{3, 0.05 + 0.8 * u(rng), 2 * kPi * u(rng)},
        PhotonAddedCoherent{std::polar(1.0 + u(rng), 2 * kPi * u(rng)), 4},
        EvenOddCoherent{std::polar(1.0 + u(rng), 2 * kPi * u(rng)), 0},
    };
    const auto grid = linspace(0.0, 2 * kPi, 9);
    for (const auto& spec : specs) {
        const FockExpansion e = expand(spec);
        const QuadratureProfile ana = std_profile(e, grid, ProfileMethod::analytic);
        const QuadratureProfile tomo = std_profile(e, grid, ProfileMethod::tomographic);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK(std::abs(ana.std[k] - tomo.std[k]) < 1e-7);
            CHECK(std::abs(ana.mean[k] - tomo.mean[k]) < 1e-7);
        }
    }
}

TEST_CASE("profile method tag and validation") {
    const FockExpansion vac = expand(Fock{0});
    const QuadratureProfile p =
        std_profile(vac, linspace(0.0, kPi, 5), ProfileMethod::analytic);
    CHECK(p.method == ProfileMethod::analytic);
    CHECK_THROWS_AS(std_profile(vac, {}, ProfileMethod::analytic), Error);
    CHECK_THROWS_AS(std_profile(vac, {0.0, 7.0}, ProfileMethod::analytic), Error);
    CHECK_THROWS_AS(std_profile(vac, {1.0, 0.5}, ProfileMethod::analytic), Error);
    CHECK_THROWS_AS(std_profile(vac, {0.0, 1.0}, ProfileMethod::sampled), Error);
}

TEST_CASE("uncertainty floor holds on conjugate pairs") {
    const std::vector<StateSpec> specs = {
        Fock{0}, Fock{5}, Coherent{Complex(1.2, -0.4)}, SqueezedVacuum{1.0, 1.0},
        EvenOddCoherent{Complex(1.8, 0.0), 1}};
    for (const auto& spec : specs) {
        const LadderMoments mom = ladder_moments(expand(spec));
        double min_pair = 1e300;
        for (int k = 0; k < 720; ++k) {
            const double theta = kPi * k / 720.0;
            min_pair = std::min(min_pair,
                                quadrature_stats_analytic(mom, theta).std +
                                    quadrature_stats_analytic(mom, theta + kPi / 2).std);
        }
        CHECK(min_pair >= std::numbers::sqrt2 - 1e-9);
        // Products of conjugate pairs respect Heisenberg as well.
        for (double theta : {0.0, 0.7, 1.9}) {
            const double prod = quadrature_stats_analytic(mom, theta).std *
                                quadrature_stats_analytic(mom, theta + kPi / 2).std;
            CHECK(prod >= 0.5 - 1e-9);
        }
    }
}

TEST_CASE("std profile is pi-periodic") {
    const FockExpansion e = expand(PhotonAddedCoherent{Complex(1.6, 1.1), 2});
    const LadderMoments mom = ladder_moments(e);
    for (double theta = 0.0; theta < kPi; theta += 0.13) {
        CHECK(std::abs(quadrature_stats_analytic(mom, theta).std -
                       quadrature_stats_analytic(mom, theta + kPi).std) < 1e-10);
        CHECK(std::abs(quadrature_stats_analytic(mom, theta).mean +
                       quadrature_stats_analytic(mom, theta + kPi).mean) < 1e-10);
    }
}

TEST_CASE("nonconvergence surfaces as an error") {
    const FockExpansion e = expand(Fock{12});
    MomentOptions opts;
    opts.tolerance = 1e-16;  // unreachable
    opts.initial_panels = 1;
    opts.max_panels = 2;
    CHECK_THROWS_AS(tomographic_stats(e, 0.3, opts), Error);
    try {
        tomographic_stats(e, 0.3, opts);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::nonconvergence);
    }
}

TEST_CASE("profile exports") {
    const FockExpansion vac = expand(Fock{0});
    const QuadratureProfile p =
        std_profile(vac, linspace(0.0, 2 * kPi, 5), ProfileMethod::analytic);
    const std::string csv = profile_csv(p);
    CHECK(csv.rfind("theta,mean,std\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    const std::string json = profile_json(p, "fock:n=0");
    CHECK(json.find("\"method\": \"analytic\"") != std::string::npos);
}
