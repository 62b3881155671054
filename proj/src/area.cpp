#include "ncarea/area.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ncarea/errors.hpp"
#include "ncarea/io.hpp"
#include "ncarea/quadrature.hpp"
#include "ncarea/specialfn.hpp"

namespace ncarea {

std::string to_string(AreaMethod method) {
    switch (method) {
        case AreaMethod::numeric: return "numeric";
        case AreaMethod::analytic: return "analytic";
        case AreaMethod::sampled: return "sampled";
    }
    return "unknown";
}

namespace {

AreaResult make_result(double sigma, AreaMethod method, double error,
                       std::string notes) {
    AreaResult r;
    r.sigma = sigma;
    r.nonclassical_area = sigma - kSqrt2Pi;
    r.method = method;
    r.error_estimate = error;
    r.notes = std::move(notes);
    return r;
}

// Doubles [0, pi] panels until successive sigma estimates agree.
AreaResult integrate_half_period(const std::function<double(double)>& std_at,
                                 const SigmaOptions& options,
                                 const std::string& route_name) {
    const GaussLegendreRule& rule = cached_gauss_legendre(options.gl_order);
    double prev = 0.0;
    bool have_prev = false;
    for (int panels = options.initial_panels; panels <= options.max_panels;
         panels *= 2) {
        const double half =
            composite_gauss_legendre(std_at, 0.0, std::numbers::pi, panels, rule);
        const double sigma = 2.0 * half;
        if (have_prev && std::abs(sigma - prev) < options.tolerance * std::max(1.0, sigma)) {
            return make_result(
                sigma, AreaMethod::numeric, std::abs(sigma - prev),
                route_name + "; pi-periodic std integrated over [0, pi] and doubled; "
                             "Gauss-Legendre order " + std::to_string(options.gl_order) +
                    ", " + std::to_string(panels) + " panels");
        }
        prev = sigma;
        have_prev = true;
    }
    fail(ErrorCode::nonconvergence,
         "sigma quadrature did not stabilize within " +
             std::to_string(options.max_panels) + " panels");
}

}  // namespace

AreaResult sigma_numeric(const FockExpansion& exp, const SigmaOptions& options) {
    if (options.route == SigmaRoute::analytic_moments) {
        const LadderMoments mom = ladder_moments(exp);
        return integrate_half_period(
            [&](double theta) { return quadrature_stats_analytic(mom, theta).std; },
            options, "ladder-moment route");
    }
    return integrate_half_period(
        [&](double theta) {
            return tomographic_stats(exp, theta, options.moment_options).std;
        },
        options, "tomographic route");
}

AreaResult sigma_numeric(const StateSpec& spec, const SigmaOptions& options) {
    AreaResult r = sigma_numeric(expand(spec, options.tail_tolerance), options);
    r.notes = to_string(spec) + "; " + r.notes;
    return r;
}

AreaResult sigma_from_profile(const QuadratureProfile& profile) {
    const auto& th = profile.theta_values;
    const auto& s = profile.std;
    if (th.size() < 3)
        fail(ErrorCode::invalid_parameter, "profile too sparse for integration");
    const double span = th.back() - th.front();
    const bool half_span = std::abs(span - std::numbers::pi) < 1e-9;
    const bool full_span = std::abs(span - 2.0 * std::numbers::pi) < 1e-9;
    if (!half_span && !full_span)
        fail(ErrorCode::invalid_parameter,
             "profile must cover [0, pi] or [0, 2pi] for sigma integration");
    const auto trapezoid = [&](std::size_t stride) {
        double acc = 0.0;
        std::size_t i = 0;
        while (i + stride < th.size()) {
            const std::size_t j = std::min(i + stride, th.size() - 1);
            acc += 0.5 * (s[i] + s[j]) * (th[j] - th[i]);
            i = j;
        }
        return acc;
    };
    double sigma = trapezoid(1);
    double coarse = trapezoid(2);
    if (half_span) {
        sigma *= 2.0;
        coarse *= 2.0;
    }
    const double err = std::abs(sigma - coarse) / 3.0 + 1e-12;
    AreaResult r = make_result(sigma, AreaMethod::numeric, err,
                               std::string("trapezoid over stored profile (") +
                                   to_string(profile.method) + ")");
    if (profile.method == ProfileMethod::sampled) r.method = AreaMethod::sampled;
    return r;
}

namespace {

// sigma of the squeezed family: prefactor * e^{-r} [E(2pi - delta/2 | m) +
// E(delta/2 | m)] with m = 1 - e^{4r}. The squeezed vacuum carries 1/sqrt(2),
// |n, xi> carries sqrt(n + 1/2).
double squeezed_sigma(double prefactor, double r, double delta) {
    if (!(r >= 0.0)) fail(ErrorCode::invalid_parameter, "squeezing r must be >= 0");
    const double m = 1.0 - std::exp(4.0 * r);
    const double lobe = elliptic_e_incomplete(2.0 * std::numbers::pi - 0.5 * delta, m) +
                        elliptic_e_incomplete(0.5 * delta, m);
    return prefactor * std::exp(-r) * lobe;
}

constexpr double kClosedFormTolerance = 1e-11;

}  // namespace

AreaResult sigma_analytic(const StateSpec& spec) {
    return std::visit(
        [&](const auto& s) -> AreaResult {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Coherent>) {
                return make_result(kSqrt2Pi, AreaMethod::analytic, 0.0,
                                   "coherent closed form sqrt(2) pi");
            } else if constexpr (std::is_same_v<T, Fock>) {
                if (s.n < 0) fail(ErrorCode::invalid_parameter, "n must be >= 0");
                const double sigma =
                    std::sqrt(2.0 * (2.0 * s.n + 1.0)) * std::numbers::pi;
                return make_result(sigma, AreaMethod::analytic, 0.0,
                                   "Fock closed form sqrt(2(2n+1)) pi");
            } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
                const double sigma =
                    squeezed_sigma(1.0 / std::numbers::sqrt2, s.r, s.delta);
                return make_result(sigma, AreaMethod::analytic, kClosedFormTolerance,
                                   "squeezed-vacuum incomplete-elliptic form");
            } else if constexpr (std::is_same_v<T, SqueezedFock>) {
                if (s.n < 0) fail(ErrorCode::invalid_parameter, "n must be >= 0");
                const double sigma = squeezed_sigma(std::sqrt(s.n + 0.5), s.r, s.delta);
                return make_result(sigma, AreaMethod::analytic, kClosedFormTolerance,
                                   "squeezed-Fock incomplete-elliptic form");
            } else if constexpr (std::is_same_v<T, DisplacedSqueezedFock>) {
                AreaResult r = sigma_analytic(SqueezedFock{s.n, s.r, s.delta});
                r.notes += "; displacement leaves sigma unchanged";
                return r;
            } else {
                fail(ErrorCode::no_closed_form,
                     "no closed form for family '" + state_family(spec) + "'");
            }
        },
        spec);
}

ProductRelation product_relation_check(int n, double r, double delta) {
    const double lhs = sigma_analytic(SqueezedFock{n, r, delta}).sigma;
    const double fock = sigma_analytic(Fock{n}).sigma;
    const double sqvac = sigma_analytic(SqueezedVacuum{r, delta}).sigma;
    return {lhs, fock * sqvac / kSqrt2Pi};
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

SweepRow sweep_point(const std::string& curve, double param, const StateSpec& spec) {
    SweepRow row;
    row.curve = curve;
    row.param = param;
    row.result = sigma_numeric(spec);
    row.analytic_delta = std::numeric_limits<double>::quiet_NaN();
    try {
        const AreaResult exact = sigma_analytic(spec);
        row.analytic_delta =
            std::abs(row.result.sigma - exact.sigma) / exact.sigma;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_closed_form) throw;
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep_fock_n(int n_min, int n_max) {
    if (n_min < 0 || n_max < n_min)
        fail(ErrorCode::invalid_parameter, "need 0 <= n_min <= n_max");
    std::vector<SweepRow> rows;
    for (int n = n_min; n <= n_max; ++n)
        rows.push_back(sweep_point("fock", n, Fock{n}));
    return rows;
}

std::vector<SweepRow> sweep_squeezed_r(const std::vector<int>& ns,
                                       const std::vector<double>& rs, double delta) {
    std::vector<SweepRow> rows;
    for (int n : ns) {
        const std::string curve = "n=" + std::to_string(n);
        for (double r : rs) {
            const StateSpec spec = (n == 0)
                                       ? StateSpec(SqueezedVacuum{r, delta})
                                       : StateSpec(SqueezedFock{n, r, delta});
            rows.push_back(sweep_point(curve, r, spec));
        }
    }
    return rows;
}

std::vector<SweepRow> sweep_pacs_m(double intensity, int m_min, int m_max) {
    if (m_min < 0 || m_max < m_min)
        fail(ErrorCode::invalid_parameter, "need 0 <= m_min <= m_max");
    std::vector<SweepRow> rows;
    const Complex alpha(std::sqrt(intensity), 0.0);
    for (int m = m_min; m <= m_max; ++m)
        rows.push_back(sweep_point("pacs", m, PhotonAddedCoherent{alpha, m}));
    return rows;
}

std::vector<SweepRow> sweep_pacs_intensity(const std::vector<int>& ms,
                                           const std::vector<double>& intensities) {
    std::vector<SweepRow> rows;
    for (int m : ms) {
        const std::string curve = "m=" + std::to_string(m);
        for (double intensity : intensities)
            rows.push_back(sweep_point(
                curve, intensity,
                PhotonAddedCoherent{Complex(std::sqrt(intensity), 0.0), m}));
    }
    return rows;
}

std::vector<SweepRow> sweep_cat_intensity(const std::vector<double>& intensities) {
    std::vector<SweepRow> rows;
    for (int h : {0, 1}) {
        const std::string curve = (h == 0) ? "even" : "odd";
        for (double intensity : intensities)
            rows.push_back(sweep_point(
                curve, intensity,
                EvenOddCoherent{Complex(std::sqrt(intensity), 0.0), h}));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "curve,param,sigma,nonclassical_area,method,error_estimate,analytic_delta\n";
    for (const auto& row : rows) {
        out += row.curve + "," + format_double17(row.param) + "," +
               format_double17(row.result.sigma) + "," +
               format_double17(row.result.nonclassical_area) + "," +
               to_string(row.result.method) + "," +
               format_double17(row.result.error_estimate) + ",";
        out += std::isnan(row.analytic_delta) ? "" : format_double17(row.analytic_delta);
        out += "\n";
    }
    return out;
}

}  // namespace ncarea
