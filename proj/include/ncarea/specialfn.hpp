#pragma once

#include <vector>

namespace ncarea {

/// Highest Hermite-function order supported by the recurrence tables.
inline constexpr int kMaxHermiteOrder = 512;

/// log(n!) from a precomputed table (n <= kMaxHermiteOrder + 2).
double log_factorial(int n);

/// Normalized harmonic-oscillator eigenfunction
///   psi_n(x) = e^{-x^2/2} H_n(x) / (pi^{1/4} 2^{n/2} sqrt(n!)),
/// evaluated by the normalized three-term recurrence. Bounded by ~0.76
/// for all n and x; never forms raw Hermite polynomials.
double hermite_function(int n, double x);

/// Fills out[0..n_max] with psi_0(x) .. psi_{n_max}(x) in one recurrence pass.
void hermite_function_table(int n_max, double x, std::vector<double>& out);

struct HermiteZero {
    int sign;        // -1, 0, +1
    double log_abs;  // log |H_n(0)|; -inf when sign == 0
};

/// Sign and log-magnitude of the Hermite polynomial at the origin:
/// H_{2k}(0) = (-1)^k (2k)!/k!, odd orders vanish.
HermiteZero hermite_at_zero_loglike(int n);

/// Laguerre polynomial L_m(x) by the stable three-term recurrence.
/// For x <= 0 every term is nonnegative and the result is >= 1.
double laguerre(int m, double x);

/// Associated Laguerre polynomial L_n^{(k)}(x), k >= 0 integer.
double laguerre_assoc(int n, int k, double x);

/// Incomplete elliptic integral of the second kind,
///   E(phi | m) = integral_0^phi sqrt(1 - m sin^2 lambda) dlambda,
/// for any parameter m <= 1 (negative m allowed) and any real phi.
///
/// Arguments beyond [0, pi/2] reduce through the half-period identity
/// E(k pi + rho | m) = 2 k E(pi/2 | m) + E(rho | m) and the reflection
/// E(rho | m) = 2 E(pi/2 | m) - E(pi - rho | m) for rho in (pi/2, pi],
/// with E(-phi | m) = -E(phi | m); the core is evaluated by adaptive
/// Gauss-Kronrod quadrature of the defining integral.
double elliptic_e_incomplete(double phi, double m);

}  // namespace ncarea
