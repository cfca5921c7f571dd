#include "catgen/analytic.hpp"

#include "catgen/errors.hpp"

#include <cmath>

namespace catgen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFockDispatch = 1e-6;

// Below kFockDispatch in |kappa'| the closed forms collapse onto number
// states: |n0> for the added family, |m mod 2> for the subtracted one
// (each subtraction steps the surviving parity down).
int dispatch_level(const CatParams& p) {
    return (p.kind == CatKind::added) ? p.count : p.count % 2;
}

} // namespace

CatParams::CatParams(complexd kp, int n, CatKind k)
    : kappa_prime(kp), count(n), kind(k) {
    if (!(std::abs(kp) < 1.0))
        throw DomainError("CatParams: |kappa'| must be strictly below 1");
    if (n < 0) throw DomainError("CatParams: negative count");
}

complexd effective_kappa(const SqueezeParam& kappa,
                         const BeamSplitterParams& params) {
    complexd t = params.transmission();
    return kappa.kappa * t * t;
}

complexd coeff_added(int n, int n0, complexd kappa_prime) {
    if (n < 0 || n0 < 0) throw DomainError("coeff_added: negative index");
    if (n < n0 || (n - n0) % 2 != 0) return {0.0, 0.0};
    int q = (n - n0) / 2;
    double a = std::abs(kappa_prime);
    if (a == 0.0)
        return (q == 0) ? complexd{std::exp(0.5 * log_factorial(n0)), 0.0}
                        : complexd{0.0, 0.0};
    double lmag = 0.5 * log_factorial(n) - log_factorial(q) -
                  q * std::log(2.0) + q * std::log(a);
    double ph = q * std::arg(kappa_prime);
    return std::exp(lmag) * complexd(std::cos(ph), std::sin(ph));
}

complexd coeff_subtracted(int n, int m, complexd kappa_prime) {
    if (n < 0 || m < 0) throw DomainError("coeff_subtracted: negative index");
    if ((n + m) % 2 != 0) return {0.0, 0.0};
    int q = (n + m) / 2;
    double a = std::abs(kappa_prime);
    if (a == 0.0) return (q == 0) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
    double lmag = log_factorial(m + n) - log_factorial(q) -
                  q * std::log(2.0) + q * std::log(a) -
                  0.5 * log_factorial(n);
    double ph = q * std::arg(kappa_prime);
    return std::exp(lmag) * complexd(std::cos(ph), std::sin(ph));
}

double norm_added(int n0, double abs_kappa_prime) {
    if (n0 < 0) throw DomainError("norm_added: negative count");
    if (!(abs_kappa_prime >= 0.0 && abs_kappa_prime < 1.0))
        throw DomainError("norm_added: |kappa'| must lie in [0, 1)");
    double z = abs_kappa_prime * abs_kappa_prime;
    return std::exp(log_factorial(n0)) *
           gauss_2f1(0.5 * (n0 + 1), 0.5 * (n0 + 2), 1.0, z);
}

double norm_subtracted(int m, double abs_kappa_prime) {
    if (m < 0) throw DomainError("norm_subtracted: negative count");
    if (!(abs_kappa_prime >= 0.0 && abs_kappa_prime < 1.0))
        throw DomainError("norm_subtracted: |kappa'| must lie in [0, 1)");
    double a = abs_kappa_prime;
    if (a == 0.0) return (m == 0) ? 1.0 : 0.0;
    double z = a * a;
    double sum = 0.0;
    for (int k = 0; 2 * k <= m; ++k) {
        double lmag = 2.0 * log_factorial(m) - log_factorial(m - 2 * k) -
                      2.0 * log_factorial(k) +
                      2.0 * (m - k) * std::log(a) - k * std::log(4.0);
        sum += std::exp(lmag);
    }
    return sum * std::pow(1.0 - z, -m - 0.5);
}

double prob_added(int n0, const SqueezeParam& kappa,
                  const BeamSplitterParams& params) {
    if (n0 < 0) throw DomainError("prob_added: negative count");
    double ar = std::abs(std::sin(params.theta));
    double ak = kappa.magnitude();
    double akp = std::abs(effective_kappa(kappa, params));
    if (ar == 0.0 && n0 > 0) return 0.0;
    return std::pow(ar, 2.0 * n0) * std::sqrt(1.0 - ak * ak) *
           gauss_2f1(0.5 * (n0 + 1), 0.5 * (n0 + 2), 1.0, akp * akp);
}

double prob_subtracted(int m, const SqueezeParam& kappa,
                       const BeamSplitterParams& params) {
    if (m < 0) throw DomainError("prob_subtracted: negative count");
    double ar = std::abs(std::sin(params.theta));
    double at = std::abs(std::cos(params.theta));
    double ak = kappa.magnitude();
    double akp = at * at * ak;
    if (ar == 0.0 && m > 0) return 0.0;
    // The |kappa'|^{2m} of the coefficient norm and the |T|^{-2m} of the
    // conditioning prefactor are fused so a dark port (|T| = 0) stays
    // finite.
    double sum = 0.0;
    for (int k = 0; 2 * k <= m; ++k) {
        double lmag = log_factorial(m) - log_factorial(m - 2 * k) -
                      2.0 * log_factorial(k) - k * std::log(4.0);
        double powers = 2.0 * (m - k) * ((ak > 0.0) ? std::log(ak) : 0.0) +
                        2.0 * (m - 2 * k) * ((at > 0.0) ? std::log(at) : 0.0);
        if (ak == 0.0 && m - k > 0) continue;
        if (at == 0.0 && m - 2 * k > 0) continue;
        sum += std::exp(lmag + powers);
    }
    return std::pow(ar, 2.0 * m) * std::sqrt(1.0 - ak * ak) *
           std::pow(1.0 - akp * akp, -m - 0.5) * sum;
}

FockVector analytic_state(const CatParams& params, int n_max) {
    if (n_max < 0) throw DomainError("analytic_state: negative n_max");
    std::vector<complexd> a(static_cast<size_t>(n_max) + 1, {0.0, 0.0});
    for (int n = 0; n <= n_max; ++n)
        a[n] = (params.kind == CatKind::added)
                   ? coeff_added(n, params.count, params.kappa_prime)
                   : coeff_subtracted(n, params.count, params.kappa_prime);
    return normalize(FockVector(std::move(a)));
}

int analytic_auto_n_max(const CatParams& params) {
    int n = (params.kind == CatKind::added) ? params.count
                                            : params.count % 2;
    long double cum = 0.0L;
    for (int steps = 0; steps < 100000; ++steps, n += 2) {
        complexd c = (params.kind == CatKind::added)
                         ? coeff_added(n, params.count, params.kappa_prime)
                         : coeff_subtracted(n, params.count,
                                            params.kappa_prime);
        long double w = static_cast<long double>(std::norm(c));
        if (cum > 0.0L && w < 1e-16L * cum) return n + 8;
        cum += w;
        if (w == 0.0L && cum > 0.0L) return n + 8;
    }
    throw TruncationError("analytic_auto_n_max: coefficient series did not "
                          "settle");
}

double quad_dist(const CatParams& params, double x, double phi) {
    double a = std::abs(params.kappa_prime);
    if (a < kFockDispatch) {
        int n = dispatch_level(params);
        std::vector<double> u = oscillator_functions(n, x);
        return u[static_cast<size_t>(n)] * u[static_cast<size_t>(n)];
    }
    double z = a * a;
    complexd e2{std::cos(2.0 * phi), std::sin(2.0 * phi)};
    complexd ke = std::conj(params.kappa_prime) * e2;
    double delta = 1.0 + z + 2.0 * ke.real();
    int c = params.count;
    double gauss = std::exp(-(1.0 - z) * x * x / delta);
    if (params.kind == CatKind::added) {
        complexd w = std::sqrt((1.0 + ke) / delta) * x;
        double h2 = std::norm(hermite(c, w));
        double pref = 1.0 / (norm_added(c, a) *
                             std::sqrt(kPi * std::pow(delta, c + 1)) *
                             std::pow(2.0, c));
        return pref * gauss * h2;
    }
    complexd w = std::sqrt((-ke - z) / delta) * x;
    double h2 = std::norm(hermite(c, w));
    double pref = std::pow(a, c) /
                  (norm_subtracted(c, a) *
                   std::sqrt(kPi * std::pow(delta, c + 1)) *
                   std::pow(2.0, c));
    return pref * gauss * h2;
}

double quad_dist(const CatParams& params, const PhasePoint& pt) {
    return quad_dist(params, pt.x, pt.phi);
}

double wigner(const CatParams& params, double x, double p) {
    double a = std::abs(params.kappa_prime);
    int c = params.count;
    if (a < kFockDispatch) {
        int n = dispatch_level(params);
        double s2 = x * x + p * p;
        double sign = (n % 2 != 0) ? -1.0 : 1.0;
        return sign / kPi * laguerre(n, 0, 2.0 * s2) * std::exp(-s2);
    }
    complexd kp = params.kappa_prime;
    complexd lam = (1.0 - kp) / (1.0 + kp);
    double lsum = 2.0 * lam.real();
    complexd w = x + complexd(0.0, 1.0) * p / lam;
    double absw2 = std::norm(w);
    double gauss = std::exp(-(2.0 * std::norm(lam) / lsum) * absw2);
    complexd i{0.0, 1.0};
    complexd arg;
    double step;
    double nrm;
    if (params.kind == CatKind::added) {
        arg = i * std::sqrt(2.0 * lam * lam * (1.0 + std::conj(lam)) /
                            ((1.0 - lam) * lsum));
        step = -2.0 / a;
        nrm = norm_added(c, a);
    } else {
        arg = i * std::sqrt(2.0 * lam * lam * (1.0 - std::conj(lam)) /
                            ((1.0 + lam) * lsum));
        step = -2.0 * a;
        nrm = norm_subtracted(c, a);
    }
    complexd hw = arg * w;
    double sum = 0.0;
    for (int k = 0; k <= c; ++k) {
        double b = binomial(c, k);
        sum += b * b * std::exp(log_factorial(k)) * std::pow(step, k) *
               std::norm(hermite(c - k, hw));
    }
    double pref = std::pow(a, c) /
                  (kPi * nrm * std::pow(2.0, c) *
                   std::pow(std::abs(1.0 + kp), 2.0 * c + 1.0)) *
                  std::pow(2.0 / lsum, c + 0.5);
    return pref * gauss * sum;
}

double wigner(const CatParams& params, const PhasePoint& pt) {
    return wigner(params, pt.x, pt.p);
}

double husimi(const CatParams& params, double x, double p) {
    complexd alpha = complexd(x, p) / std::sqrt(2.0);
    double a2 = std::norm(alpha);
    double a = std::abs(params.kappa_prime);
    int c = params.count;
    if (a < kFockDispatch) {
        int n = dispatch_level(params);
        return std::exp(-a2 + n * ((a2 > 0.0) ? std::log(a2) : 0.0) -
                        log_factorial(n)) /
               (2.0 * kPi) * ((a2 == 0.0 && n > 0) ? 0.0 : 1.0);
    }
    double quad = (std::conj(params.kappa_prime) * alpha * alpha).real();
    if (params.kind == CatKind::added) {
        double mag = (a2 > 0.0) ? std::exp(c * std::log(a2) + quad - a2)
                                : ((c == 0) ? std::exp(quad - a2) : 0.0);
        return mag / (2.0 * kPi * norm_added(c, a));
    }
    complexd w = std::sqrt(-std::conj(params.kappa_prime) / 2.0) * alpha;
    double h2 = std::norm(hermite(c, w));
    return std::pow(a, c) * std::exp(quad - a2) * h2 /
           (2.0 * kPi * norm_subtracted(c, a) * std::pow(2.0, c));
}

double husimi(const CatParams& params, const PhasePoint& pt) {
    return husimi(params, pt.x, pt.p);
}

} // namespace catgen
