#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace catgen {

using complexd = std::complex<double>;

/// ln(n!) in double precision. Values for n <= 170 come from a cached
/// exact table; larger n uses lgamma.
double log_factorial(int n);

/// ln(n!) in extended precision for compensated log-space sums.
long double log_factorial_l(int n);

/// Binomial coefficient as a double. Exact (from the factorial cache)
/// while representable, lgamma-based beyond that.
double binomial(int n, int k);

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence
/// H_{n+1}(z) = 2 z H_n(z) - 2 n H_{n-1}(z).
complexd hermite(int n, complexd z);
double hermite(int n, double z);

/// Generalized Laguerre polynomial L_n^{(a)}(x), integer a >= 0, via
/// (n+1) L_{n+1}^a = (2n+1+a-x) L_n^a - (n+a) L_{n-1}^a.
double laguerre(int n, int a, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for real parameters and
/// 0 <= z < 1. Direct series with term-ratio stopping (relative 1e-16);
/// for z > 0.75 the linear transformation
/// (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) is used first. Throws
/// ConvergenceError after 1e6 terms, DomainError for z outside [0,1)
/// or c a non-positive integer.
double gauss_2f1(double a, double b, double c, double z);

/// Harmonic-oscillator eigenfunctions u_0(x) .. u_{n_max}(x) (unit mass,
/// unit frequency, vacuum variance 1/2), by the stable recurrence
/// u_{n+1} = x sqrt(2/(n+1)) u_n - sqrt(n/(n+1)) u_{n-1}.
std::vector<double> oscillator_functions(int n_max, double x);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

} // namespace catgen
