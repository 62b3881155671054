#include "ncarea/specialfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ncarea/errors.hpp"
#include "ncarea/quadrature.hpp"

namespace ncarea {

namespace {

constexpr int kFactTableSize = kMaxHermiteOrder + 3;

const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kFactTableSize, 0.0);
        long double acc = 0.0L;
        for (int n = 1; n < kFactTableSize; ++n) {
            acc += std::log(static_cast<long double>(n));
            t[n] = static_cast<double>(acc);
        }
        return t;
    }();
    return table;
}

// Recurrence factors sqrt(2/(k+1)) and sqrt(k/(k+1)) for k < kMaxHermiteOrder.
struct HermiteFactors {
    std::vector<double> up;    // sqrt(2/(k+1))
    std::vector<double> down;  // sqrt(k/(k+1))
};

const HermiteFactors& hermite_factors() {
    static const HermiteFactors f = [] {
        HermiteFactors hf;
        hf.up.resize(kMaxHermiteOrder);
        hf.down.resize(kMaxHermiteOrder);
        for (int k = 0; k < kMaxHermiteOrder; ++k) {
            hf.up[k] = std::sqrt(2.0 / (k + 1));
            hf.down[k] = std::sqrt(static_cast<double>(k) / (k + 1));
        }
        return hf;
    }();
    return f;
}

void check_order(int n, const char* what) {
    if (n < 0) fail(ErrorCode::invalid_parameter, std::string(what) + " order must be >= 0");
    if (n > kMaxHermiteOrder)
        fail(ErrorCode::order_exceeded, std::string(what) + " order " + std::to_string(n) +
                                            " exceeds max " + std::to_string(kMaxHermiteOrder));
}

}  // namespace

double log_factorial(int n) {
    if (n < 0) fail(ErrorCode::invalid_parameter, "log_factorial of negative argument");
    if (n >= kFactTableSize)
        fail(ErrorCode::order_exceeded, "log_factorial beyond table size");
    return log_factorial_table()[n];
}

double hermite_function(int n, double x) {
    check_order(n, "Hermite");
    if (!std::isfinite(x)) fail(ErrorCode::domain_error, "hermite_function at non-finite x");
    const double psi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return psi0;
    const auto& f = hermite_factors();
    double prev = psi0;
    double cur = std::numbers::sqrt2 * x * psi0;
    for (int k = 1; k < n; ++k) {
        const double next = x * f.up[k] * cur - f.down[k] * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_function_table(int n_max, double x, std::vector<double>& out) {
    check_order(n_max, "Hermite");
    out.resize(n_max + 1);
    const double psi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    out[0] = psi0;
    if (n_max == 0) return;
    out[1] = std::numbers::sqrt2 * x * psi0;
    const auto& f = hermite_factors();
    for (int k = 1; k < n_max; ++k)
        out[k + 1] = x * f.up[k] * out[k] - f.down[k] * out[k - 1];
}

HermiteZero hermite_at_zero_loglike(int n) {
    if (n < 0) fail(ErrorCode::invalid_parameter, "Hermite order must be >= 0");
    if (n % 2 == 1) return {0, -std::numeric_limits<double>::infinity()};
    const int k = n / 2;
    const int sign = (k % 2 == 0) ? +1 : -1;
    return {sign, log_factorial(n) - log_factorial(k)};
}

double laguerre(int m, double x) {
    check_order(m, "Laguerre");
    if (!std::isfinite(x)) fail(ErrorCode::domain_error, "laguerre at non-finite x");
    double prev = 1.0;
    if (m == 0) return prev;
    double cur = 1.0 - x;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_assoc(int n, int k, double x) {
    check_order(n, "associated Laguerre");
    if (k < 0) fail(ErrorCode::invalid_parameter, "associated Laguerre needs k >= 0");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + k - x;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// E over [0, x] for x in [0, pi/2] by adaptive quadrature of the integrand.
double elliptic_core(double x, double m) {
    if (x == 0.0) return 0.0;
    const auto integrand = [m](double lam) {
        const double s = std::sin(lam);
        return std::sqrt(1.0 - m * s * s);
    };
    const AdaptiveResult res =
        adaptive_gauss_kronrod(integrand, 0.0, x, 1e-14, 1e-13);
    if (!res.converged)
        fail(ErrorCode::nonconvergence, "elliptic integral quadrature did not converge");
    return res.value;
}

}  // namespace

double elliptic_e_incomplete(double phi, double m) {
    if (!(m <= 1.0)) fail(ErrorCode::domain_error, "elliptic parameter must satisfy m <= 1");
    if (!std::isfinite(phi)) fail(ErrorCode::domain_error, "elliptic amplitude must be finite");
    if (phi < 0.0) return -elliptic_e_incomplete(-phi, m);
    if (phi == 0.0) return 0.0;

    const double quarter = elliptic_core(0.5 * std::numbers::pi, m);
    const double k = std::floor(phi / std::numbers::pi);
    double rho = phi - k * std::numbers::pi;
    // Guard against rho == pi from floating-point division.
    if (rho >= std::numbers::pi) rho = std::numbers::pi;

    double partial;
    if (rho <= 0.5 * std::numbers::pi)
        partial = elliptic_core(rho, m);
    else
        partial = 2.0 * quarter - elliptic_core(std::numbers::pi - rho, m);
    return 2.0 * k * quarter + partial;
}

}  // namespace ncarea
