#pragma once

#include <string>
#include <vector>

#include "ncarea/analysis.hpp"
#include "ncarea/states.hpp"

namespace ncarea {

/// sqrt(2) pi, the effective area shared by every pure classical state.
inline constexpr double kSqrt2Pi = 4.442882938158366;

enum class AreaMethod { numeric, analytic, sampled };

std::string to_string(AreaMethod method);

struct AreaResult {
    double sigma = 0.0;             // integral of DeltaX_theta over [0, 2pi]
    double nonclassical_area = 0.0; // sigma - sqrt(2) pi
    AreaMethod method = AreaMethod::numeric;
    double error_estimate = 0.0;
    std::string notes;
};

enum class SigmaRoute { analytic_moments, tomographic };

struct SigmaOptions {
    double tolerance = 1e-9;
    SigmaRoute route = SigmaRoute::analytic_moments;
    int gl_order = 16;
    int initial_panels = 4;
    int max_panels = 1 << 12;
    double tail_tolerance = kDefaultTailTolerance;
    MomentOptions moment_options;
};

/// sigma by theta-quadrature of the standard-deviation profile. The profile
/// is pi-periodic, so the integral runs over [0, pi] and is doubled; composite
/// Gauss-Legendre panels double until successive estimates agree.
AreaResult sigma_numeric(const FockExpansion& exp, const SigmaOptions& options = {});
AreaResult sigma_numeric(const StateSpec& spec, const SigmaOptions& options = {});

/// Trapezoid sigma over a stored profile covering [0, pi] or [0, 2pi].
AreaResult sigma_from_profile(const QuadratureProfile& profile);

/// Closed forms: coherent and Fock constants, squeezed vacuum/Fock through
/// the incomplete elliptic integral of the second kind, displaced variants
/// equal to their undisplaced counterparts. Other families raise
/// invalid_parameter (no closed form is known).
AreaResult sigma_analytic(const StateSpec& spec);

struct ProductRelation {
    double lhs = 0.0;  // sigma(|n, xi>)
    double rhs = 0.0;  // sigma(|n>) sigma(|xi>) / (sqrt(2) pi)
};

ProductRelation product_relation_check(int n, double r, double delta);

// ---------------------------------------------------------------------------
// Figure sweeps.
// ---------------------------------------------------------------------------

struct SweepRow {
    std::string curve;      // label of the curve the point belongs to
    double param = 0.0;     // x-axis value
    AreaResult result;      // numeric-route result
    double analytic_delta;  // |numeric - analytic| / analytic, NaN if no closed form
};

std::vector<SweepRow> sweep_fock_n(int n_min, int n_max);
std::vector<SweepRow> sweep_squeezed_r(const std::vector<int>& ns,
                                       const std::vector<double>& rs, double delta);
std::vector<SweepRow> sweep_pacs_m(double intensity, int m_min, int m_max);
std::vector<SweepRow> sweep_pacs_intensity(const std::vector<int>& ms,
                                           const std::vector<double>& intensities);
std::vector<SweepRow> sweep_cat_intensity(const std::vector<double>& intensities);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ncarea
