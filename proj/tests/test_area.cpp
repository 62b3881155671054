#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "ncarea/area.hpp"
#include "ncarea/errors.hpp"

using namespace ncarea;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite-Simpson integration of the closed-form squeezed-vacuum std over
// [0, 2pi]; an oracle independent of both library routes.
double sqvac_sigma_simpson(double r, double delta) {
    const auto f = [&](double theta) {
        return std::sqrt(
            (std::cosh(2 * r) - std::sinh(2 * r) * std::cos(delta - 2 * theta)) / 2.0);
    };
    double prev = 0.0;
    for (int n = 128; n <= (1 << 22); n *= 2) {
        const double h = 2.0 * kPi / n;
        double sum = f(0.0) + f(2.0 * kPi);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
        const double value = sum * h / 3.0;
        if (n > 128 && std::abs(value - prev) < 1e-11) return value;
        prev = value;
    }
    return prev;
}

}  // namespace

TEST_CASE("coherent states sit exactly on the classical floor") {
    for (const Complex alpha : {Complex(0.0, 0.0), Complex(1.0, 0.0),
                                Complex(2.5, 0.0), Complex(1.0, 2.0)}) {
        const AreaResult r = sigma_numeric(StateSpec(Coherent{alpha}));
        CHECK(std::abs(r.sigma - kSqrt2Pi) < 1e-8);
        CHECK(std::abs(r.nonclassical_area) < 1e-8);
        CHECK(r.method == AreaMethod::numeric);
    }
}

TEST_CASE("fock sigma is sqrt(2(2n+1)) pi") {
    const AreaResult f1 = sigma_numeric(StateSpec(Fock{1}));
    CHECK(std::abs(f1.sigma - std::sqrt(6.0) * kPi) < 1e-8);
    CHECK(f1.sigma == doctest::Approx(7.695298980971185).epsilon(1e-12));
    for (int n : {0, 2, 7, 19, 30}) {
        const AreaResult r = sigma_numeric(StateSpec(Fock{n}));
        CHECK(std::abs(r.sigma - std::sqrt(2.0 * (2.0 * n + 1.0)) * kPi) < 1e-8);
    }
}

TEST_CASE("squeezed vacuum numeric, analytic, and Simpson oracle agree") {
    for (double r : {0.25, 0.5, 1.0}) {
        for (double delta : {0.0, kPi / 3, 1.5 * kPi}) {
            const AreaResult numeric =
                sigma_numeric(StateSpec(SqueezedVacuum{r, delta}));
            const AreaResult exact = sigma_analytic(SqueezedVacuum{r, delta});
            const double oracle = sqvac_sigma_simpson(r, delta);
            CHECK(std::abs(numeric.sigma - exact.sigma) < 1e-7 * exact.sigma);
            CHECK(std::abs(exact.sigma - oracle) < 1e-8);
        }
    }
    // Frozen r = 0.5, delta = 0 value: e^{-1/2}/sqrt(2) E(2pi | 1 - e^2).
    CHECK(sigma_analytic(SqueezedVacuum{0.5, 0.0}).sigma ==
          doctest::Approx(5.281157882559285).epsilon(1e-11));
}

TEST_CASE("analytic sigma is independent of delta") {
    for (double r : {0.1, 0.7, 1.5}) {
        const double base = sigma_analytic(SqueezedVacuum{r, 0.0}).sigma;
        for (double delta : {kPi / 3, kPi, 1.5 * kPi}) {
            CHECK(std::abs(sigma_analytic(SqueezedVacuum{r, delta}).sigma - base) <
                  1e-9 * base);
        }
    }
}

TEST_CASE("squeezed limits recover the unsqueezed constants") {
    CHECK(sigma_analytic(Fock{0}).sigma == doctest::Approx(kSqrt2Pi).epsilon(1e-12));
    CHECK(sigma_analytic(SqueezedVacuum{0.0, 0.0}).sigma ==
          doctest::Approx(kSqrt2Pi).epsilon(1e-10));
    for (int n : {1, 5, 10}) {
        CHECK(sigma_analytic(SqueezedFock{n, 0.0, 0.0}).sigma ==
              doctest::Approx(std::sqrt(2.0 * (2.0 * n + 1.0)) * kPi).epsilon(1e-10));
    }
}

TEST_CASE("product relation") {
    // n = 0 collapses to the squeezed vacuum.
    const ProductRelation p0 = product_relation_check(0, 0.8, 1.1);
    CHECK(p0.lhs == doctest::Approx(sigma_analytic(SqueezedVacuum{0.8, 1.1}).sigma)
                        .epsilon(1e-12));
    CHECK(std::abs(p0.lhs - p0.rhs) < 1e-9 * p0.rhs);

    const ProductRelation p5 = product_relation_check(5, 1.0, 0.0);
    CHECK(std::abs(p5.lhs - p5.rhs) < 1e-9 * p5.rhs);

    // n = 10, r = 0: both sides are sqrt(42) pi.
    const ProductRelation p10 = product_relation_check(10, 0.0, 0.0);
    CHECK(p10.lhs == doctest::Approx(std::sqrt(42.0) * kPi).epsilon(1e-10));
    CHECK(p10.rhs == doctest::Approx(std::sqrt(42.0) * kPi).epsilon(1e-10));
}

TEST_CASE("displacement leaves sigma unchanged") {
    for (const Complex alpha : {Complex(1.0, 0.0), Complex(0.0, 2.0)}) {
        for (int n : {0, 2}) {
            const AreaResult displaced =
                sigma_numeric(StateSpec(DisplacedSqueezedFock{alpha, n, 0.7, 0.9}));
            const AreaResult plain =
                sigma_numeric(StateSpec(SqueezedFock{n, 0.7, 0.9}));
            CHECK(std::abs(displaced.sigma - plain.sigma) < 1e-7 * plain.sigma);
        }
    }
}

TEST_CASE("pacs approaches the fock value at vanishing intensity") {
    for (int m : {1, 5}) {
        const AreaResult pacs = sigma_numeric(
            StateSpec(PhotonAddedCoherent{Complex(1e-3, 0.0), m}));
        const double fock = std::sqrt(2.0 * (2.0 * m + 1.0)) * kPi;
        CHECK(std::abs(pacs.sigma - fock) < 1e-4);
    }
}

TEST_CASE("pacs monotonicity in m and intensity") {
    double prev = 0.0;
    for (int m : {1, 2, 3}) {
        const AreaResult r = sigma_numeric(
            StateSpec(PhotonAddedCoherent{Complex(std::sqrt(5.0), 0.0), m}));
        CHECK(r.nonclassical_area > prev);
        prev = r.nonclassical_area;
    }
    double prev_area = 1e300;
    for (double a2 : {0.5, 2.0, 5.0}) {
        const AreaResult r = sigma_numeric(
            StateSpec(PhotonAddedCoherent{Complex(std::sqrt(a2), 0.0), 2}));
        CHECK(r.nonclassical_area < prev_area);
        prev_area = r.nonclassical_area;
    }
}

TEST_CASE("cat areas depend only on |alpha| and merge at high intensity") {
    const double a2 = 4.0;
    const AreaResult base = sigma_numeric(
        StateSpec(EvenOddCoherent{Complex(std::sqrt(a2), 0.0), 0}));
    for (double phase : {kPi / 4, kPi / 2}) {
        const AreaResult rotated = sigma_numeric(
            StateSpec(EvenOddCoherent{std::polar(std::sqrt(a2), phase), 0}));
        CHECK(std::abs(rotated.nonclassical_area - base.nonclassical_area) < 1e-8);
    }
    const AreaResult odd = sigma_numeric(
        StateSpec(EvenOddCoherent{Complex(std::sqrt(a2), 0.0), 1}));
    CHECK(std::abs(base.nonclassical_area - odd.nonclassical_area) <
          0.01 * base.nonclassical_area);
}

TEST_CASE("no closed form for pacs, cat, and custom states") {
    for (const StateSpec spec :
         {StateSpec(PhotonAddedCoherent{Complex(1.0, 0.0), 2}),
          StateSpec(EvenOddCoherent{Complex(1.0, 0.0), 0}),
          StateSpec(CustomFock{{Complex(1.0, 0.0)}})}) {
        try {
            sigma_analytic(spec);
            FAIL("expected no_closed_form");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::no_closed_form);
        }
    }
}

TEST_CASE("numeric sigma reports route metadata and a sane error estimate") {
    const AreaResult r = sigma_numeric(StateSpec(SqueezedVacuum{0.5, 0.0}));
    CHECK(r.notes.find("[0, pi]") != std::string::npos);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.error_estimate < 1e-6);
    CHECK(r.nonclassical_area >= -r.error_estimate - 1e-12);

    const AreaResult tomo = sigma_numeric(
        StateSpec(SqueezedVacuum{0.5, 0.0}),
        SigmaOptions{.tolerance = 1e-8, .route = SigmaRoute::tomographic});
    CHECK(std::abs(tomo.sigma - r.sigma) < 1e-6);
}

TEST_CASE("sigma from a stored profile") {
    const FockExpansion e = expand(SqueezedVacuum{0.4, 0.7});
    std::vector<double> half(201), full(401);
    for (int i = 0; i < 201; ++i) half[i] = kPi * i / 200.0;
    for (int i = 0; i < 401; ++i) full[i] = 2.0 * kPi * i / 400.0;
    const AreaResult from_half =
        sigma_from_profile(std_profile(e, half, ProfileMethod::analytic));
    const AreaResult from_full =
        sigma_from_profile(std_profile(e, full, ProfileMethod::analytic));
    const AreaResult direct = sigma_numeric(e);
    CHECK(std::abs(from_half.sigma - direct.sigma) < 1e-4);
    CHECK(std::abs(from_full.sigma - direct.sigma) < 1e-4);
    CHECK(std::abs(from_half.sigma - from_full.sigma) <
          from_half.error_estimate + from_full.error_estimate + 1e-9);

    const FockExpansion vac = expand(Fock{0});
    std::vector<double> bad{0.0, 0.4, 1.0};
    CHECK_THROWS_AS(sigma_from_profile(std_profile(vac, bad, ProfileMethod::analytic)),
                    Error);
}

TEST_CASE("sweeps carry per-figure curves") {
    const auto fock_rows = sweep_fock_n(0, 4);
    CHECK(fock_rows.size() == 5);
    CHECK(fock_rows.front().result.nonclassical_area ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    for (std::size_t k = 1; k < fock_rows.size(); ++k)
        CHECK(fock_rows[k].result.nonclassical_area >
              fock_rows[k - 1].result.nonclassical_area);
    for (const auto& row : fock_rows) CHECK(row.analytic_delta < 1e-9);

    const auto cat_rows = sweep_cat_intensity({1.0, 3.0});
    CHECK(cat_rows.size() == 4);
    CHECK(std::isnan(cat_rows.front().analytic_delta));

    const std::string csv = sweep_csv(fock_rows);
    CHECK(csv.rfind("curve,param,sigma,nonclassical_area,method,error_estimate,"
                    "analytic_delta\n",
                    0) == 0);
}
