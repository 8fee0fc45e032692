#ifndef CRSNOMA_SPECFUN_HPP_
#define CRSNOMA_SPECFUN_HPP_

// Special-function kernels used by the closed-form rate and outage
// expressions. Everything here is pure and reentrant.

namespace crsnoma::specfun {

/// Euler–Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// ln Γ(x) for x > 0. Throws std::domain_error otherwise.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
/// Requires a > 0 and x >= 0.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
/// Evaluated directly (not as 1 - P) where Q is the small side.
double reg_upper_gamma(double a, double x);

/// e^x · E_{n+1}(x) = x^n · e^x · Γ(-n, x) for n >= 0, x > 0.
///
/// This is the normalized form of the scaled upper gamma at non-positive
/// integer order. It lies in (1/(x+n+1), 1/(x+n)] and never overflows,
/// which makes it the natural building block for the ergodic-rate sums.
double normalized_upper_gamma(int n, double x);

/// G(n, x) = e^x · Γ(-n, x) for n >= 0, x > 0. Overflows to +inf only
/// when the true value exceeds the double range (tiny x, large n); use
/// log_scaled_upper_gamma in that regime.
double scaled_upper_gamma(int n, double x);

/// ln G(n, x), finite for every n >= 0 and x > 0.
double log_scaled_upper_gamma(int n, double x);

/// ψ(n) for integer n >= 1 via the harmonic sum.
double digamma_int(int n);

/// ln(n!) for n >= 0; exact table lookup up to 170.
double ln_factorial(int n);

}  // namespace crsnoma::specfun

#endif  // CRSNOMA_SPECFUN_HPP_
