#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace ncarea {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// State families. alpha = |alpha| e^{i eta} is a complex amplitude, the
// squeezing parameter is xi = r e^{i delta} with r >= 0, delta in [0, 2pi).
// hbar = 1 throughout.
// ---------------------------------------------------------------------------

struct Fock {
    int n = 0;
};

struct Coherent {
    Complex alpha;
};

struct SqueezedVacuum {
    double r = 0.0;
    double delta = 0.0;
};

struct SqueezedFock {
    int n = 0;
    double r = 0.0;
    double delta = 0.0;
};

struct DisplacedSqueezedFock {
    Complex alpha;
    int n = 0;
    double r = 0.0;
    double delta = 0.0;
};

struct PhotonAddedCoherent {
    Complex alpha;
    int m = 0;
};

struct EvenOddCoherent {
    Complex alpha;
    int h = 0;  // 0 = even superposition, 1 = odd
};

struct CustomFock {
    std::vector<Complex> coefficients;
};

using StateSpec = std::variant<Fock, Coherent, SqueezedVacuum, SqueezedFock,
                               DisplacedSqueezedFock, PhotonAddedCoherent,
                               EvenOddCoherent, CustomFock>;

/// Family keyword used in spec strings ("fock", "coherent", ...).
std::string state_family(const StateSpec& spec);

/// Canonical textual form, e.g. "sqvac:r=0.5,delta=0". Round-trips through
/// parse_state_spec.
std::string to_string(const StateSpec& spec);

/// Parses "family:key=value,key=value". Complex values accept "a+bi" and
/// "mag@phase" forms. Throws parse_error / invalid_parameter.
StateSpec parse_state_spec(const std::string& text);

// ---------------------------------------------------------------------------
// Truncated photon-number expansion.
// ---------------------------------------------------------------------------

inline constexpr double kDefaultTailTolerance = 1e-10;
inline constexpr double kMaxTailTolerance = 1e-4;

struct FockExpansion {
    std::vector<Complex> coefficients;  // c_0 .. c_N
    double tail_mass = 0.0;             // probability weight above N

    int truncation_order() const { return static_cast<int>(coefficients.size()) - 1; }
    double norm_squared() const;
};

/// Builds the truncated expansion of a state, growing the cutoff until the
/// tail mass drops below tail_tolerance (must lie in (0, 1e-4]).
FockExpansion expand(const StateSpec& spec,
                     double tail_tolerance = kDefaultTailTolerance);

// ---------------------------------------------------------------------------
// Exact ladder-operator moments of the truncated state.
// ---------------------------------------------------------------------------

struct LadderMoments {
    Complex mean_a;   // <a>
    Complex mean_a2;  // <a^2>
    double mean_n;    // <a^dag a>
};

LadderMoments ladder_moments(const FockExpansion& exp);

struct QuadratureStats {
    double mean;
    double std;
};

/// Mean and standard deviation of the rotated quadrature
/// X_theta = (a e^{-i theta} + a^dag e^{i theta})/sqrt(2):
///   <X>   = sqrt(2) Re(<a> e^{-i theta})
///   <X^2> = Re(<a^2> e^{-2i theta}) + <n> + 1/2
/// Variance below -1e-12 raises negative_variance; tiny negatives clamp to 0.
QuadratureStats quadrature_stats_analytic(const LadderMoments& mom, double theta);

/// Largest second moment over theta, |<a^2>| + <n> + 1/2. Used for windows.
double max_x_second_moment(const LadderMoments& mom);

}  // namespace ncarea
