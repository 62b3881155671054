#include "ncarea/quadrep.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ncarea/detail/parallel.hpp"
#include "ncarea/errors.hpp"
#include "ncarea/io.hpp"
#include "ncarea/specialfn.hpp"

namespace ncarea {

namespace {

// Scratch for the Hermite table; thread-confined, results do not depend on it.
thread_local std::vector<double> tl_psi;

Complex amplitude_with_table(const FockExpansion& exp, double theta,
                             const std::vector<double>& psi) {
    const Complex step = std::polar(1.0, -theta);
    Complex rot(1.0, 0.0);
    Complex acc(0.0, 0.0);
    const int n_max = exp.truncation_order();
    for (int j = 0; j <= n_max; ++j) {
        acc += exp.coefficients[j] * psi[j] * rot;
        rot *= step;
    }
    return acc;
}

}  // namespace

Complex quadrature_amplitude(const FockExpansion& exp, double x, double theta) {
    if (!std::isfinite(x)) fail(ErrorCode::domain_error, "quadrature value must be finite");
    hermite_function_table(exp.truncation_order(), x, tl_psi);
    return amplitude_with_table(exp, theta, tl_psi);
}

double tomogram_value(const FockExpansion& exp, double x, double theta) {
    return std::norm(quadrature_amplitude(exp, x, theta));
}

Window auto_window(const LadderMoments& mom) {
    const double radius =
        std::numbers::sqrt2 * std::sqrt(max_x_second_moment(mom)) * kWindowSafetyFactor;
    return {-radius, radius};
}

Window auto_window(const FockExpansion& exp) {
    return auto_window(ladder_moments(exp));
}

TomogramGrid tomogram_grid(const FockExpansion& exp,
                           const std::vector<double>& theta_values,
                           const Window& window, int x_points,
                           double grid_tolerance, const std::string& spec_label) {
    if (x_points < 9) fail(ErrorCode::invalid_parameter, "x_points must be >= 9");
    if (theta_values.empty())
        fail(ErrorCode::invalid_parameter, "theta grid must be nonempty");
    if (!(window.hi > window.lo))
        fail(ErrorCode::invalid_parameter, "window must have positive width");

    TomogramGrid grid;
    grid.theta_values = theta_values;
    grid.window = window;
    grid.truncation_order = exp.truncation_order();
    grid.spec_label = spec_label;
    grid.x_values.resize(x_points);
    const double h = window.width() / (x_points - 1);
    for (int i = 0; i < x_points; ++i) grid.x_values[i] = window.lo + i * h;

    grid.density.assign(theta_values.size(), std::vector<double>(x_points, 0.0));
    detail::parallel_for(theta_values.size(), [&](std::size_t t) {
        std::vector<double> psi;
        auto& row = grid.density[t];
        for (int i = 0; i < x_points; ++i) {
            hermite_function_table(grid.truncation_order, grid.x_values[i], psi);
            row[i] = std::norm(amplitude_with_table(exp, theta_values[t], psi));
        }
        // Row integrals accumulate left to right; the evaluation order is part
        // of the reproducibility contract.
        const double integral = row_integral(grid, t);
        if (std::abs(integral - 1.0) > grid_tolerance + exp.tail_mass)
            fail(ErrorCode::window_too_small,
                 "tomogram row at theta=" + format_double(theta_values[t]) +
                     " integrates to " + format_double(integral) +
                     "; window or resolution insufficient");
    });
    return grid;
}

TomogramGrid tomogram_grid(const FockExpansion& exp,
                           const std::vector<double>& theta_values, int x_points,
                           double grid_tolerance, const std::string& spec_label) {
    return tomogram_grid(exp, theta_values, auto_window(exp), x_points,
                         grid_tolerance, spec_label);
}

double row_integral(const TomogramGrid& grid, std::size_t row) {
    const auto& f = grid.density.at(row);
    const auto& x = grid.x_values;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        sum += 0.5 * (f[i] + f[i + 1]) * (x[i + 1] - x[i]);
    return sum;
}

std::vector<double> uniform_theta_grid(int count) {
    if (count < 2) fail(ErrorCode::invalid_parameter, "theta grid needs >= 2 points");
    std::vector<double> thetas(count);
    const double h = 2.0 * std::numbers::pi / (count - 1);
    for (int i = 0; i < count; ++i) thetas[i] = i * h;
    return thetas;
}

std::string tomogram_csv(const TomogramGrid& grid) {
    std::string out = "theta,x,omega\n";
    for (std::size_t t = 0; t < grid.theta_values.size(); ++t)
        for (std::size_t i = 0; i < grid.x_values.size(); ++i)
            out += format_double17(grid.theta_values[t]) + "," +
                   format_double17(grid.x_values[i]) + "," +
                   format_double17(grid.density[t][i]) + "\n";
    return out;
}

std::string tomogram_json(const TomogramGrid& grid) {
    nlohmann::json j;
    j["spec"] = grid.spec_label;
    j["truncation_order"] = grid.truncation_order;
    j["window"] = {grid.window.lo, grid.window.hi};
    j["theta_values"] = grid.theta_values;
    j["x_values"] = grid.x_values;
    j["density"] = grid.density;
    return j.dump(2);
}

}  // namespace ncarea
