#include "catgen/numerics.hpp"

#include "catgen/errors.hpp"

#include <cmath>
#include <mutex>

namespace catgen {

namespace {

constexpr int kFactCacheSize = 171; // 170! is the largest finite double

const double* factorial_log_cache() {
    static double cache[kFactCacheSize];
    static std::once_flag once;
    std::call_once(once, [] {
        long double acc = 0.0L;
        cache[0] = 0.0;
        for (int n = 1; n < kFactCacheSize; ++n) {
            acc += std::log(static_cast<long double>(n));
            cache[n] = static_cast<double>(acc);
        }
    });
    return cache;
}

} // namespace

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    if (n < kFactCacheSize) return factorial_log_cache()[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

long double log_factorial_l(int n) {
    if (n < 0) throw DomainError("log_factorial_l: negative argument");
    return lgammal(static_cast<long double>(n) + 1.0L);
}

double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (k == 0 || k == n) return 1.0;
    if (n < 63) {
        // exact in 64-bit integer arithmetic up to n = 62
        unsigned long long acc = 1;
        int kk = std::min(k, n - k);
        for (int i = 1; i <= kk; ++i) {
            acc = acc * static_cast<unsigned long long>(n - kk + i) /
                  static_cast<unsigned long long>(i);
        }
        return static_cast<double>(acc);
    }
    return std::exp(log_factorial(n) - log_factorial(k) -
                    log_factorial(n - k));
}

complexd hermite(int n, complexd z) {
    if (n < 0) throw DomainError("hermite: negative order");
    if (n == 0) return {1.0, 0.0};
    complexd hm1{1.0, 0.0};
    complexd h = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        complexd hp1 = 2.0 * z * h - 2.0 * static_cast<double>(k) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double hermite(int n, double z) {
    if (n < 0) throw DomainError("hermite: negative order");
    if (n == 0) return 1.0;
    double hm1 = 1.0;
    double h = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        double hp1 = 2.0 * z * h - 2.0 * static_cast<double>(k) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double laguerre(int n, int a, double x) {
    if (n < 0 || a < 0) throw DomainError("laguerre: negative parameter");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + static_cast<double>(a) - x;
    for (int k = 1; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

namespace {

double gauss_2f1_series(double a, double b, double c, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (long k = 0; k < 1000000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (!std::isfinite(sum))
            throw ConvergenceError(
                "gauss_2f1: series overflowed before converging");
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("gauss_2f1: series did not converge in 1e6 terms");
}

} // namespace

double gauss_2f1(double a, double b, double c, double z) {
    if (!(z >= 0.0 && z < 1.0))
        throw DomainError("gauss_2f1: z must lie in [0, 1)");
    if (c <= 0.0 && c == std::floor(c))
        throw DomainError("gauss_2f1: c must not be a non-positive integer");
    if (z > 0.75) {
        return std::pow(1.0 - z, c - a - b) *
               gauss_2f1_series(c - a, c - b, c, z);
    }
    return gauss_2f1_series(a, b, c, z);
}

std::vector<double> oscillator_functions(int n_max, double x) {
    if (n_max < 0) throw DomainError("oscillator_functions: negative n_max");
    std::vector<double> u(static_cast<size_t>(n_max) + 1);
    constexpr double kPiQuarterInv = 0.75112554446494248; // pi^(-1/4)
    u[0] = kPiQuarterInv * std::exp(-0.5 * x * x);
    if (n_max == 0) return u;
    u[1] = std::sqrt(2.0) * x * u[0];
    for (int n = 1; n < n_max; ++n) {
        u[n + 1] = x * std::sqrt(2.0 / (n + 1.0)) * u[n] -
                   std::sqrt(n / (n + 1.0)) * u[n - 1];
    }
    return u;
}

namespace {

double simpson_segment(const std::function<double(double)>& f, double a,
                       double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double h = b - a;
    double left = h / 12.0 * (fa + 4.0 * flm + fm);
    double right = h / 12.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_segment(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                           depth - 1) +
           simpson_segment(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                           depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    // The refinement starts from a uniform panelization so that a
    // feature much narrower than the full interval cannot slip between
    // the first sample points and stop the recursion early.
    constexpr int kPanels = 16;
    double h = (b - a) / kPanels;
    double panel_tol = tol / kPanels;
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        double x0 = a + i * h;
        double x1 = (i + 1 == kPanels) ? b : a + (i + 1) * h;
        double fa = f(x0);
        double fb = f(x1);
        double m = 0.5 * (x0 + x1);
        double fm = f(m);
        double whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
        total +=
            simpson_segment(f, x0, fa, x1, fb, m, fm, whole, panel_tol, 36);
    }
    return total;
}

} // namespace catgen
