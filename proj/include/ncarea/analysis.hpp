#pragma once

#include <string>
#include <vector>

#include "ncarea/states.hpp"

namespace ncarea {

enum class ProfileMethod { analytic, tomographic, sampled };

std::string to_string(ProfileMethod method);

struct QuadratureProfile {
    std::vector<double> theta_values;
    std::vector<double> mean;
    std::vector<double> std;
    ProfileMethod method = ProfileMethod::analytic;
};

struct MomentOptions {
    double tolerance = 1e-10;  // stop when successive std estimates agree
    int gl_order = 16;
    int initial_panels = 8;
    int max_panels = 1 << 14;
};

/// <X_theta^n> = integral x^n omega(x, theta) dx over the automatic window,
/// composite Gauss-Legendre with panel doubling. n in {1, 2}.
double moment_from_tomogram(const FockExpansion& exp, int n, double theta,
                            const MomentOptions& options = {});

struct TomographicStats {
    double mean = 0.0;
    double std = 0.0;
    double error = 0.0;  // last refinement difference
};

/// Mean and standard deviation of X_theta computed from the tomogram row,
/// normalized by the row mass so window clipping cancels.
TomographicStats tomographic_stats(const FockExpansion& exp, double theta,
                                   const MomentOptions& options = {});

/// Standard-deviation profile over a sorted theta grid in [0, 2pi].
QuadratureProfile std_profile(const FockExpansion& exp,
                              const std::vector<double>& theta_values,
                              ProfileMethod method,
                              const MomentOptions& options = {});

std::string profile_csv(const QuadratureProfile& profile);
std::string profile_json(const QuadratureProfile& profile,
                         const std::string& spec_label);

}  // namespace ncarea
