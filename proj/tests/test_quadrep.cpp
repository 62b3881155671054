#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ncarea/errors.hpp"
#include "ncarea/quadrep.hpp"

using namespace ncarea;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form quadrature representation of a coherent state,
//   pi^{-1/4} exp[-x^2/2 - alpha^2 e^{-2 i theta}/2 - |alpha|^2/2
//               + sqrt(2) alpha x e^{-i theta}],
// used as an independent oracle for the Fock-sum amplitude.
Complex coherent_amplitude_direct(const Complex& alpha, double x, double theta) {
    const Complex rot = std::polar(1.0, -theta);
    const Complex exponent = -0.5 * x * x - 0.5 * alpha * alpha * rot * rot -
                             0.5 * std::norm(alpha) +
                             std::numbers::sqrt2 * alpha * x * rot;
    return std::pow(kPi, -0.25) * std::exp(exponent);
}

// Even/odd coherent tomogram via the 2x2 cross-term sum over +-alpha.
double cat_tomogram_direct(const Complex& alpha, int h, double x, double theta) {
    const double a2 = std::norm(alpha);
    const double nh2 = 1.0 / (2.0 * (1.0 + (h == 0 ? 1.0 : -1.0) * std::exp(-2.0 * a2)));
    Complex total(0.0, 0.0);
    for (int r = 0; r < 2; ++r) {
        for (int rp = 0; rp < 2; ++rp) {
            const Complex a_r = (r == 0) ? alpha : -alpha;
            const Complex a_rp = (rp == 0) ? alpha : -alpha;
            const double sign = ((r - rp) * h) % 2 == 0 ? 1.0 : -1.0;
            total += sign * coherent_amplitude_direct(a_r, x, theta) *
                     std::conj(coherent_amplitude_direct(a_rp, x, theta));
        }
    }
    return nh2 * total.real();
}

}  // namespace

TEST_CASE("vacuum amplitude at the origin") {
    const FockExpansion vac = expand(Fock{0});
    for (double theta : {0.0, 1.2, 4.0})
        CHECK(std::abs(quadrature_amplitude(vac, 0.0, theta) -
                       Complex(std::pow(kPi, -0.25), 0.0)) < 1e-14);
}

TEST_CASE("coherent amplitude matches the closed form") {
    const Complex alpha(1.3, 0.8);
    const FockExpansion exp_a = expand(Coherent{alpha}, 1e-12);
    for (double x : {-2.5, -0.4, 0.0, 1.7, 3.2}) {
        for (double theta : {0.0, 0.9, 2.0, 4.7}) {
            const Complex got = quadrature_amplitude(exp_a, x, theta);
            const Complex want = coherent_amplitude_direct(alpha, x, theta);
            CHECK(std::abs(got - want) < 1e-9);
        }
    }
}

TEST_CASE("fock amplitude magnitude obeys the mirror symmetry") {
    const FockExpansion f3 = expand(Fock{3});
    for (double x : {-1.8, 0.3, 2.2}) {
        for (double theta : {0.1, 1.0, 2.9}) {
            CHECK(std::abs(std::abs(quadrature_amplitude(f3, x, theta + kPi)) -
                           std::abs(quadrature_amplitude(f3, -x, theta))) < 1e-12);
        }
    }
}

TEST_CASE("vacuum tomogram is the unit Gaussian") {
    const FockExpansion vac = expand(Fock{0});
    for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
        for (double theta : {0.0, 2.2}) {
            CHECK(tomogram_value(vac, x, theta) ==
                  doctest::Approx(std::exp(-x * x) / std::sqrt(kPi)).epsilon(1e-12));
        }
    }
}

TEST_CASE("coherent tomogram is a displaced Gaussian") {
    const double mag = 1.9, eta = 0.7;
    const Complex alpha = std::polar(mag, eta);
    const FockExpansion exp_a = expand(Coherent{alpha}, 1e-12);
    for (double x : {-1.0, 0.8, 2.4, 3.9}) {
        for (double theta : {0.0, 1.1, 3.3, 5.2}) {
            const double center = std::numbers::sqrt2 * mag * std::cos(eta - theta);
            const double want = std::exp(-(x - center) * (x - center)) / std::sqrt(kPi);
            CHECK(std::abs(tomogram_value(exp_a, x, theta) - want) < 1e-9);
        }
    }
}

TEST_CASE("even and odd cat tomograms match the cross-term closed form") {
    for (int h : {0, 1}) {
        for (double phase : {0.0, kPi / 4}) {
            const Complex alpha = std::polar(1.6, phase);
            const FockExpansion cat = expand(EvenOddCoherent{alpha, h}, 1e-12);
            for (double x : {-2.8, -0.9, 0.4, 2.1}) {
                for (double theta : {0.0, 0.8, 2.5, 4.9}) {
                    const double got = tomogram_value(cat, x, theta);
                    const double want = cat_tomogram_direct(alpha, h, x, theta);
                    CHECK(std::abs(got - want) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("tomogram symmetry omega(x, theta+pi) = omega(-x, theta)") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> xd(-4.0, 4.0);
    std::uniform_real_distribution<double> td(0.0, kPi);
    const std::vector<StateSpec> specs = {
        Fock{6}, Coherent{Complex(1.0, -1.4)}, SqueezedVacuum{0.9, 2.0},
        PhotonAddedCoherent{Complex(1.2, 0.3), 3}, EvenOddCoherent{Complex(1.4, 0.6), 1}};
    for (const auto& spec : specs) {
        const FockExpansion e = expand(spec);
        for (int k = 0; k < 40; ++k) {
            const double x = xd(rng);
            const double theta = td(rng);
            CHECK(std::abs(tomogram_value(e, x, theta + kPi) -
                           tomogram_value(e, -x, theta)) < 1e-10);
        }
    }
}

TEST_CASE("grid rows integrate to one") {
    const FockExpansion vac = expand(Fock{0});
    const std::vector<double> thetas{0.0, kPi / 2, kPi, 1.5 * kPi};
    const TomogramGrid grid = tomogram_grid(vac, thetas, Window{-6.0, 6.0}, 801, 1e-8);
    for (std::size_t row = 0; row < thetas.size(); ++row)
        CHECK(std::abs(row_integral(grid, row) - 1.0) < 1e-8);

    const FockExpansion f10 = expand(Fock{10});
    const TomogramGrid g10 = tomogram_grid(f10, thetas, kDefaultXPoints, 1e-8);
    for (std::size_t row = 0; row < thetas.size(); ++row)
        CHECK(std::abs(row_integral(g10, row) - 1.0) < 1e-8);
}

TEST_CASE("grid rows at theta and theta+pi are mirror images") {
    const FockExpansion e = expand(PhotonAddedCoherent{Complex(1.5, 0.9), 2});
    const std::vector<double> thetas{0.4, 0.4 + kPi};
    const TomogramGrid grid = tomogram_grid(e, thetas, 901, 1e-6);
    const int last = static_cast<int>(grid.x_values.size()) - 1;
    for (int i = 0; i <= last; ++i)
        CHECK(std::abs(grid.density[1][i] - grid.density[0][last - i]) < 1e-10);
}

TEST_CASE("undersized windows are rejected") {
    const FockExpansion e = expand(Coherent{Complex(2.0, 0.0)});
    CHECK_THROWS_AS(tomogram_grid(e, {0.0, 1.0}, Window{-1.0, 1.0}, 101, 1e-6), Error);
    try {
        tomogram_grid(e, {0.0, 1.0}, Window{-1.0, 1.0}, 101, 1e-6);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::window_too_small);
    }
}

TEST_CASE("automatic window covers the displaced support") {
    const FockExpansion e = expand(Coherent{Complex(3.0, 0.0)}, 1e-12);
    const Window w = auto_window(e);
    // <X^2>_max = |alpha^2| + |alpha|^2 + 1/2 = 18.5 here.
    CHECK(w.hi == doctest::Approx(std::numbers::sqrt2 * std::sqrt(18.5) * 6.0)
                      .epsilon(1e-6));
    CHECK(w.lo == -w.hi);
}

TEST_CASE("tomogram exports carry the grid") {
    const FockExpansion vac = expand(Fock{0});
    const TomogramGrid grid =
        tomogram_grid(vac, {0.0, kPi}, Window{-6.0, 6.0}, 101, 1e-6, "fock:n=0");
    const std::string csv = tomogram_csv(grid);
    CHECK(csv.rfind("theta,x,omega\n", 0) == 0);
    // header + 2 rows x 101 points
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 101);
    const std::string json = tomogram_json(grid);
    CHECK(json.find("\"spec\": \"fock:n=0\"") != std::string::npos);
    CHECK(json.find("\"truncation_order\": 0") != std::string::npos);
}
