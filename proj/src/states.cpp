#include "ncarea/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ncarea/errors.hpp"
#include "ncarea/specialfn.hpp"

namespace ncarea {

namespace {

void check_tail_tolerance(double tol) {
    if (!(tol > 0.0) || tol > kMaxTailTolerance)
        fail(ErrorCode::invalid_parameter,
             "tail_tolerance must lie in (0, 1e-4]");
}

void check_nonneg(int v, const char* name) {
    if (v < 0) fail(ErrorCode::invalid_parameter, std::string(name) + " must be >= 0");
}

void check_squeeze(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        fail(ErrorCode::invalid_parameter, "squeezing magnitude r must be >= 0");
}

void check_finite(const Complex& z, const char* name) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorCode::invalid_parameter, std::string(name) + " must be finite");
}

double partial_norm(const std::vector<Complex>& c, int upto) {
    double s = 0.0;
    for (int j = 0; j <= upto; ++j) s += std::norm(c[j]);
    return s;
}

// Coefficients below this magnitude are numerically irrelevant for amplitudes
// (they contribute < 1e-11 pointwise) and mark where the expansion may stop.
constexpr double kCoefficientFloor = 1e-12;

// Grows the cutoff by doubling until the tail-mass bound holds, keeps growing
// until trailing coefficients fall below the significance floor, then trims
// the sub-floor tail.
FockExpansion scan_truncation(const std::function<Complex(int)>& coeff,
                              int initial_order, double tail_tolerance) {
    int order = std::min(std::max(initial_order, 15), kMaxHermiteOrder);
    std::vector<Complex> c;
    for (;;) {
        c.resize(order + 1);
        for (int j = 0; j <= order; ++j) c[j] = coeff(j);
        const double tail = 1.0 - partial_norm(c, order);
        if (tail <= tail_tolerance) break;
        if (order >= kMaxHermiteOrder)
            fail(ErrorCode::truncation_failure,
                 "Fock tail cannot be bounded within the max order " +
                     std::to_string(kMaxHermiteOrder));
        order = std::min(2 * order, kMaxHermiteOrder);
    }
    const auto trailing_small = [&](int upto) {
        if (upto < 3) return false;
        for (int j = upto - 3; j <= upto; ++j)
            if (std::abs(c[j]) > kCoefficientFloor) return false;
        return true;
    };
    while (!trailing_small(order) && order < kMaxHermiteOrder) {
        const int grown = std::min(order + 32, kMaxHermiteOrder);
        c.resize(grown + 1);
        for (int j = order + 1; j <= grown; ++j) c[j] = coeff(j);
        order = grown;
    }
    int keep = order;
    while (keep > 0 && std::abs(c[keep]) <= kCoefficientFloor) --keep;
    double mass = partial_norm(c, keep);
    while (keep < order && mass < 1.0 - tail_tolerance) {
        ++keep;
        mass += std::norm(c[keep]);
    }
    if (mass > 1.0 + 1e-9)
        fail(ErrorCode::invalid_parameter,
             "coefficient norm exceeds 1; normalization inconsistent");
    c.resize(keep + 1);
    // Renormalize so the truncated vector is itself a unit state; downstream
    // invariants (uncertainty floor, row normalization) then hold exactly.
    // tail_mass records the deficit before rescaling.
    const double scale = 1.0 / std::sqrt(mass);
    for (auto& v : c) v *= scale;
    FockExpansion out;
    out.tail_mass = std::max(0.0, 1.0 - mass);
    out.coefficients = std::move(c);
    return out;
}

FockExpansion basis_state(int n) {
    if (n > kMaxHermiteOrder)
        fail(ErrorCode::truncation_failure, "Fock index exceeds max order");
    FockExpansion out;
    out.coefficients.assign(n + 1, Complex(0.0, 0.0));
    out.coefficients[n] = 1.0;
    out.tail_mass = 0.0;
    return out;
}

FockExpansion expand_coherent(const Complex& alpha, double tail_tol) {
    check_finite(alpha, "alpha");
    const double a2 = std::norm(alpha);
    if (a2 == 0.0) return basis_state(0);
    const double log_abs_alpha = std::log(std::abs(alpha));
    const double arg_alpha = std::arg(alpha);
    const auto coeff = [&](int j) {
        const double lm = -0.5 * a2 + j * log_abs_alpha - 0.5 * log_factorial(j);
        return std::polar(std::exp(lm), j * arg_alpha);
    };
    const int guess = static_cast<int>(a2 + 12.0 * std::sqrt(a2 + 1.0)) + 16;
    return scan_truncation(coeff, guess, tail_tol);
}

FockExpansion expand_squeezed_vacuum(double r, double delta, double tail_tol) {
    check_squeeze(r);
    if (r == 0.0) return basis_state(0);
    const double tanh_r = std::tanh(r);
    const Complex ratio_base = -std::polar(tanh_r, delta);
    // c_{2(t+1)} = c_{2t} * ratio_base * sqrt(2t+1)/sqrt(2t+2)
    const auto build = [&](int order) {
        std::vector<Complex> c(order + 1, Complex(0.0, 0.0));
        Complex cur = Complex(1.0 / std::sqrt(std::cosh(r)), 0.0);
        c[0] = cur;
        for (int t = 0; 2 * (t + 1) <= order; ++t) {
            cur *= ratio_base * std::sqrt((2.0 * t + 1.0) / (2.0 * t + 2.0));
            c[2 * (t + 1)] = cur;
        }
        return c;
    };
    // Geometric tail with ratio tanh^2 r.
    int guess = 32;
    if (tanh_r > 0.1)
        guess = std::max(
            32, 2 * static_cast<int>(std::log(tail_tol) / (2.0 * std::log(tanh_r))) + 8);
    std::vector<Complex> cache = build(std::min(std::max(guess, 15), kMaxHermiteOrder));
    const auto coeff = [&](int j) -> Complex {
        if (j >= static_cast<int>(cache.size()))
            cache = build(std::max(j, 2 * static_cast<int>(cache.size())));
        return cache[j];
    };
    return scan_truncation(coeff, guess, tail_tol);
}

// Fock matrix elements of the squeezing operator against |n>, written with
// integer powers only: with mu = cosh r, s = sinh r, p = (j-i)/2, q = (n-i)/2,
//   c_j = sqrt(j!/(n! mu)) mu^{-(j+n)/2} e^{i delta (j-n)/2}
//         sum_i binom(n,i) [H_{2p}(0)/(2p)!] [|H_{2q}(0)|] (s/2)^{p+q},
// where i runs over 0..min(n,j) with the parity of n (and j).
FockExpansion expand_squeezed_fock(int n, double r, double delta,
                                   double tail_tol) {
    check_nonneg(n, "n");
    check_squeeze(r);
    if (n > kMaxHermiteOrder)
        fail(ErrorCode::truncation_failure, "Fock index exceeds max order");
    if (r == 0.0) return basis_state(n);
    const double mu = std::cosh(r);
    const double s = std::sinh(r);
    const double log_mu = std::log(mu);
    const double log_half_s = std::log(0.5 * s);
    const double lfact_n = log_factorial(n);

    const auto coeff = [&](int j) -> Complex {
        if ((j % 2) != (n % 2)) return Complex(0.0, 0.0);
        const double log_pre =
            0.5 * (log_factorial(j) - lfact_n) - 0.5 * (j + n + 1) * log_mu;
        // Accumulate the alternating sum at a common log scale.
        double max_log = -std::numeric_limits<double>::infinity();
        std::vector<std::pair<int, double>> terms;  // (sign, log magnitude)
        for (int i = n % 2; i <= std::min(n, j); i += 2) {
            const int jp = j - i;  // 2p
            const int nq = n - i;  // 2q
            const HermiteZero hj = hermite_at_zero_loglike(jp);
            const HermiteZero hn = hermite_at_zero_loglike(nq);
            const double log_binom =
                lfact_n - log_factorial(i) - log_factorial(n - i);
            const double lm = log_binom + 0.5 * (jp + nq) * log_half_s +
                              hj.log_abs - log_factorial(jp) + hn.log_abs;
            terms.emplace_back(hj.sign, lm);
            max_log = std::max(max_log, lm);
        }
        if (terms.empty() || !std::isfinite(max_log)) return Complex(0.0, 0.0);
        double acc = 0.0;
        for (const auto& [sign, lm] : terms) acc += sign * std::exp(lm - max_log);
        const double magnitude = std::exp(log_pre + max_log) * acc;
        return std::polar(magnitude, 0.5 * delta * (j - n));
    };
    const double tanh_r = std::tanh(r);
    int guess = 32 + 3 * n;
    if (tanh_r > 0.1)
        guess = std::max(guess, 2 * static_cast<int>(std::log(tail_tol) /
                                                     (2.0 * std::log(tanh_r))) +
                                    4 * n + 8);
    return scan_truncation(coeff, guess, tail_tol);
}

// <m|D(alpha)|n> with lo = min(m,n), d = |m-n|:
//   e^{-|alpha|^2/2} sqrt(lo!/hi!) z^d L_lo^{(d)}(|alpha|^2),
// where z = alpha for m > n and z = -conj(alpha) for m < n.
Complex displacement_element(int m, int n, const Complex& alpha) {
    const int lo = std::min(m, n);
    const int hi = std::max(m, n);
    const int d = hi - lo;
    const double a2 = std::norm(alpha);
    const double lag = laguerre_assoc(lo, d, a2);
    const double log_mag_base =
        -0.5 * a2 + 0.5 * (log_factorial(lo) - log_factorial(hi)) +
        (d > 0 ? d * std::log(std::abs(alpha)) : 0.0);
    const Complex z = (m >= n) ? alpha : -std::conj(alpha);
    const double phase = (d > 0) ? d * std::arg(z) : 0.0;
    return std::polar(std::exp(log_mag_base), phase) * lag;
}

FockExpansion expand_displaced_squeezed_fock(const Complex& alpha, int n,
                                             double r, double delta,
                                             double tail_tol) {
    check_finite(alpha, "alpha");
    if (std::norm(alpha) == 0.0) return expand_squeezed_fock(n, r, delta, tail_tol);
    // Build the squeezed core tighter so the displacement stays within budget.
    const double core_tol = std::max(tail_tol * 1e-2, 1e-14);
    const FockExpansion core = expand_squeezed_fock(n, r, delta, core_tol);
    const int core_order = core.truncation_order();
    const auto coeff = [&](int m) -> Complex {
        Complex acc(0.0, 0.0);
        for (int k = 0; k <= core_order; ++k)
            acc += displacement_element(m, k, alpha) * core.coefficients[k];
        return acc;
    };
    const double a2 = std::norm(alpha);
    const int guess =
        core_order + static_cast<int>(a2 + 12.0 * std::sqrt(a2 + 1.0)) + 16;
    return scan_truncation(coeff, guess, tail_tol);
}

FockExpansion expand_photon_added(const Complex& alpha, int m, double tail_tol) {
    check_finite(alpha, "alpha");
    check_nonneg(m, "m");
    if (std::norm(alpha) == 0.0) return basis_state(m);  // exact Fock limit
    const double a2 = std::norm(alpha);
    const double log_abs_alpha = std::log(std::abs(alpha));
    const double arg_alpha = std::arg(alpha);
    const double log_norm =
        0.5 * (log_factorial(m) + std::log(laguerre(m, -a2)));
    const auto coeff = [&](int j) -> Complex {
        if (j < m) return Complex(0.0, 0.0);
        const double lm = -0.5 * a2 + (j - m) * log_abs_alpha +
                          0.5 * log_factorial(j) - log_factorial(j - m) -
                          log_norm;
        return std::polar(std::exp(lm), (j - m) * arg_alpha);
    };
    const int guess = m + static_cast<int>(a2 + 12.0 * std::sqrt(a2 + 1.0)) + 16;
    return scan_truncation(coeff, guess, tail_tol);
}

FockExpansion expand_even_odd(const Complex& alpha, int h, double tail_tol) {
    check_finite(alpha, "alpha");
    if (h != 0 && h != 1)
        fail(ErrorCode::invalid_parameter, "cat parameter h must be 0 or 1");
    const double a2 = std::norm(alpha);
    if (a2 == 0.0) {
        if (h == 1)
            fail(ErrorCode::invalid_parameter,
                 "odd coherent superposition is null at alpha = 0");
        return basis_state(0);
    }
    // N_h = [2 (1 + (-1)^h e^{-2|alpha|^2})]^{-1/2}; surviving coefficients are
    // 2 N_h c_j(alpha) on the parity j = h (mod 2).
    const double denom =
        (h == 0) ? 2.0 * (1.0 + std::exp(-2.0 * a2)) : 2.0 * (-std::expm1(-2.0 * a2));
    const double log_2nh = std::log(2.0) - 0.5 * std::log(denom);
    const double log_abs_alpha = std::log(std::abs(alpha));
    const double arg_alpha = std::arg(alpha);
    const auto coeff = [&](int j) -> Complex {
        if (j % 2 != h) return Complex(0.0, 0.0);
        const double lm =
            log_2nh - 0.5 * a2 + j * log_abs_alpha - 0.5 * log_factorial(j);
        return std::polar(std::exp(lm), j * arg_alpha);
    };
    const int guess = static_cast<int>(a2 + 12.0 * std::sqrt(a2 + 1.0)) + 16;
    return scan_truncation(coeff, guess, tail_tol);
}

FockExpansion expand_custom(const CustomFock& spec) {
    if (spec.coefficients.empty())
        fail(ErrorCode::invalid_parameter, "custom state needs coefficients");
    if (static_cast<int>(spec.coefficients.size()) > kMaxHermiteOrder + 1)
        fail(ErrorCode::truncation_failure, "custom state exceeds max order");
    double norm = 0.0;
    for (const auto& c : spec.coefficients) {
        check_finite(c, "coefficient");
        norm += std::norm(c);
    }
    if (std::abs(norm - 1.0) > 1e-10)
        fail(ErrorCode::invalid_parameter,
             "custom coefficients must have unit norm within 1e-10");
    FockExpansion out;
    out.coefficients = spec.coefficients;
    out.tail_mass = 0.0;
    return out;
}

}  // namespace

double FockExpansion::norm_squared() const {
    double s = 0.0;
    for (const auto& c : coefficients) s += std::norm(c);
    return s;
}

FockExpansion expand(const StateSpec& spec, double tail_tolerance) {
    check_tail_tolerance(tail_tolerance);
    return std::visit(
        [&](const auto& s) -> FockExpansion {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Fock>) {
                check_nonneg(s.n, "n");
                return basis_state(s.n);
            } else if constexpr (std::is_same_v<T, Coherent>) {
                return expand_coherent(s.alpha, tail_tolerance);
            } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
                return expand_squeezed_vacuum(s.r, s.delta, tail_tolerance);
            } else if constexpr (std::is_same_v<T, SqueezedFock>) {
                return expand_squeezed_fock(s.n, s.r, s.delta, tail_tolerance);
            } else if constexpr (std::is_same_v<T, DisplacedSqueezedFock>) {
                check_nonneg(s.n, "n");
                return expand_displaced_squeezed_fock(s.alpha, s.n, s.r, s.delta,
                                                      tail_tolerance);
            } else if constexpr (std::is_same_v<T, PhotonAddedCoherent>) {
                return expand_photon_added(s.alpha, s.m, tail_tolerance);
            } else if constexpr (std::is_same_v<T, EvenOddCoherent>) {
                return expand_even_odd(s.alpha, s.h, tail_tolerance);
            } else {
                return expand_custom(s);
            }
        },
        spec);
}

LadderMoments ladder_moments(const FockExpansion& exp) {
    const auto& c = exp.coefficients;
    const int n_max = exp.truncation_order();
    Complex mean_a(0.0, 0.0);
    Complex mean_a2(0.0, 0.0);
    double mean_n = 0.0;
    for (int j = 0; j <= n_max; ++j) {
        mean_n += j * std::norm(c[j]);
        if (j + 1 <= n_max)
            mean_a += std::conj(c[j]) * c[j + 1] * std::sqrt(j + 1.0);
        if (j + 2 <= n_max)
            mean_a2 += std::conj(c[j]) * c[j + 2] * std::sqrt((j + 1.0) * (j + 2.0));
    }
    return {mean_a, mean_a2, mean_n};
}

QuadratureStats quadrature_stats_analytic(const LadderMoments& mom, double theta) {
    const Complex rot = std::polar(1.0, -theta);
    const double mean = std::numbers::sqrt2 * (mom.mean_a * rot).real();
    const double second = (mom.mean_a2 * rot * rot).real() + mom.mean_n + 0.5;
    double variance = second - mean * mean;
    if (variance < -1e-12)
        fail(ErrorCode::negative_variance,
             "quadrature variance " + std::to_string(variance) +
                 " below roundoff floor; moments inconsistent");
    if (variance < 0.0) variance = 0.0;
    return {mean, std::sqrt(variance)};
}

double max_x_second_moment(const LadderMoments& mom) {
    return std::abs(mom.mean_a2) + mom.mean_n + 0.5;
}

}  // namespace ncarea
