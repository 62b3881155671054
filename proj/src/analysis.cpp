#include "ncarea/analysis.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ncarea/errors.hpp"
#include "ncarea/io.hpp"
#include "ncarea/quadrature.hpp"
#include "ncarea/quadrep.hpp"
#include "ncarea/specialfn.hpp"

namespace ncarea {

std::string to_string(ProfileMethod method) {
    switch (method) {
        case ProfileMethod::analytic: return "analytic";
        case ProfileMethod::tomographic: return "tomographic";
        case ProfileMethod::sampled: return "sampled";
    }
    return "unknown";
}

namespace {

struct RawMoments {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

// One composite pass accumulating (1, x, x^2) against omega(x, theta).
RawMoments raw_moments(const FockExpansion& exp, double theta,
                       const Window& window, int panels,
                       const GaussLegendreRule& rule) {
    RawMoments acc;
    const int n_max = exp.truncation_order();
    std::vector<double> psi;
    const double h = window.width() / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = window.lo + p * h;
        const double mid = a + 0.5 * h;
        for (int i = 0; i < rule.order(); ++i) {
            const double x = mid + 0.5 * h * rule.nodes[i];
            const double w = 0.5 * h * rule.weights[i];
            hermite_function_table(n_max, x, psi);
            const Complex step = std::polar(1.0, -theta);
            Complex rot(1.0, 0.0);
            Complex amp(0.0, 0.0);
            for (int j = 0; j <= n_max; ++j) {
                amp += exp.coefficients[j] * psi[j] * rot;
                rot *= step;
            }
            const double omega = std::norm(amp);
            acc.m0 += w * omega;
            acc.m1 += w * x * omega;
            acc.m2 += w * x * x * omega;
        }
    }
    return acc;
}

struct Refined {
    RawMoments moments;
    double std = 0.0;
    double mean = 0.0;
    double error = 0.0;
};

Refined refine_moments(const FockExpansion& exp, double theta,
                       const MomentOptions& options) {
    const Window window = auto_window(exp);
    const GaussLegendreRule& rule = cached_gauss_legendre(options.gl_order);
    Refined best;
    bool have_prev = false;
    double prev_std = 0.0;
    for (int panels = options.initial_panels; panels <= options.max_panels;
         panels *= 2) {
        const RawMoments m = raw_moments(exp, theta, window, panels, rule);
        if (m.m0 <= 0.0)
            fail(ErrorCode::nonconvergence, "tomogram mass vanished during refinement");
        const double mean = m.m1 / m.m0;
        const double variance = m.m2 / m.m0 - mean * mean;
        if (variance < -1e-12)
            fail(ErrorCode::negative_variance,
                 "tomographic variance below the roundoff floor");
        const double stddev = std::sqrt(variance < 0.0 ? 0.0 : variance);
        if (have_prev && std::abs(stddev - prev_std) < options.tolerance) {
            best.moments = m;
            best.std = stddev;
            best.mean = mean;
            best.error = std::abs(stddev - prev_std);
            return best;
        }
        prev_std = stddev;
        have_prev = true;
        best.moments = m;
        best.std = stddev;
        best.mean = mean;
    }
    fail(ErrorCode::nonconvergence,
         "moment quadrature did not stabilize within " +
             std::to_string(options.max_panels) + " panels");
}

}  // namespace

double moment_from_tomogram(const FockExpansion& exp, int n, double theta,
                            const MomentOptions& options) {
    if (n != 1 && n != 2)
        fail(ErrorCode::invalid_parameter, "tomogram moments support n in {1, 2}");
    const Refined r = refine_moments(exp, theta, options);
    return n == 1 ? r.moments.m1 : r.moments.m2;
}

TomographicStats tomographic_stats(const FockExpansion& exp, double theta,
                                   const MomentOptions& options) {
    const Refined r = refine_moments(exp, theta, options);
    return {r.mean, r.std, r.error};
}

QuadratureProfile std_profile(const FockExpansion& exp,
                              const std::vector<double>& theta_values,
                              ProfileMethod method, const MomentOptions& options) {
    if (theta_values.empty())
        fail(ErrorCode::invalid_parameter, "theta grid must be nonempty");
    for (std::size_t k = 0; k < theta_values.size(); ++k) {
        if (theta_values[k] < -1e-12 || theta_values[k] > 2.0 * std::numbers::pi + 1e-12)
            fail(ErrorCode::invalid_parameter, "theta grid must lie in [0, 2pi]");
        if (k > 0 && theta_values[k] <= theta_values[k - 1])
            fail(ErrorCode::invalid_parameter, "theta grid must be strictly increasing");
    }
    QuadratureProfile profile;
    profile.theta_values = theta_values;
    profile.method = method;
    profile.mean.resize(theta_values.size());
    profile.std.resize(theta_values.size());

    if (method == ProfileMethod::analytic) {
        const LadderMoments mom = ladder_moments(exp);
        for (std::size_t k = 0; k < theta_values.size(); ++k) {
            const QuadratureStats st = quadrature_stats_analytic(mom, theta_values[k]);
            profile.mean[k] = st.mean;
            profile.std[k] = st.std;
        }
        return profile;
    }
    if (method == ProfileMethod::tomographic) {
        for (std::size_t k = 0; k < theta_values.size(); ++k) {
            const TomographicStats st = tomographic_stats(exp, theta_values[k], options);
            profile.mean[k] = st.mean;
            profile.std[k] = st.std;
        }
        return profile;
    }
    fail(ErrorCode::invalid_parameter,
         "sampled profiles come from homodyne datasets, not expansions");
}

std::string profile_csv(const QuadratureProfile& profile) {
    std::string out = "theta,mean,std\n";
    for (std::size_t k = 0; k < profile.theta_values.size(); ++k)
        out += format_double17(profile.theta_values[k]) + "," +
               format_double17(profile.mean[k]) + "," +
               format_double17(profile.std[k]) + "\n";
    return out;
}

std::string profile_json(const QuadratureProfile& profile,
                         const std::string& spec_label) {
    nlohmann::json j;
    j["spec"] = spec_label;
    j["method"] = to_string(profile.method);
    j["theta_values"] = profile.theta_values;
    j["mean"] = profile.mean;
    j["std"] = profile.std;
    return j.dump(2);
}

}  // namespace ncarea
