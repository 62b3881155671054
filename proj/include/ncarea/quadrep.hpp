#pragma once

#include <string>
#include <vector>

#include "ncarea/states.hpp"

namespace ncarea {

/// <X_theta, theta | psi> = sum_j c_j psi_j(x) e^{-i j theta}.
Complex quadrature_amplitude(const FockExpansion& exp, double x, double theta);

/// omega(x, theta) = |<X_theta, theta | psi>|^2.
double tomogram_value(const FockExpansion& exp, double x, double theta);

struct Window {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
};

inline constexpr double kWindowSafetyFactor = 6.0;

/// Symmetric window [-R, R] with R = sqrt(2) * sqrt(max_theta <X_theta^2>) * 6,
/// wide enough that the clipped mass is far below 1e-10 for every family.
Window auto_window(const LadderMoments& mom);
Window auto_window(const FockExpansion& exp);

inline constexpr int kDefaultXPoints = 1001;
inline constexpr double kDefaultGridTolerance = 1e-6;
inline constexpr double kInternalGridTolerance = 1e-8;

struct TomogramGrid {
    std::vector<double> theta_values;
    std::vector<double> x_values;
    std::vector<std::vector<double>> density;  // density[theta][x]
    Window window;
    int truncation_order = 0;
    std::string spec_label;
};

/// Samples omega on theta x x. Every row must integrate (trapezoid) to 1
/// within grid_tolerance, else window_too_small is raised.
TomogramGrid tomogram_grid(const FockExpansion& exp,
                           const std::vector<double>& theta_values,
                           const Window& window, int x_points,
                           double grid_tolerance = kDefaultGridTolerance,
                           const std::string& spec_label = "");

/// Same with the automatic window.
TomogramGrid tomogram_grid(const FockExpansion& exp,
                           const std::vector<double>& theta_values,
                           int x_points = kDefaultXPoints,
                           double grid_tolerance = kDefaultGridTolerance,
                           const std::string& spec_label = "");

/// Trapezoid integral of one density row over x_values.
double row_integral(const TomogramGrid& grid, std::size_t row);

/// K points uniform on [0, 2pi] inclusive of both ends.
std::vector<double> uniform_theta_grid(int count);

std::string tomogram_csv(const TomogramGrid& grid);
std::string tomogram_json(const TomogramGrid& grid);

}  // namespace ncarea
