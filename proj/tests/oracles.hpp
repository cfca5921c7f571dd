#pragma once

// Slow reference implementations used only by the tests. Everything here is
// built from first principles (matrix exponentials, brute-force series,
// direct kernel sums) so the fast library code has something independent to
// be checked against.

#include "catgen/beamsplitter.hpp"
#include "catgen/fock.hpp"
#include "catgen/numerics.hpp"
#include "catgen/twomode.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using catgen::complexd;

// Unitary block on the N-photon subspace of two modes, obtained by
// exponentiating the mixer generators instead of using the closed-form
// matrix elements. Basis is |n1, N - n1> for n1 = 0..N.
inline Eigen::MatrixXcd mixer_block(int n_total,
                                    const catgen::BeamSplitterParams& bs) {
    const int d = n_total + 1;
    const std::complex<double> I(0.0, 1.0);

    Eigen::MatrixXcd lplus = Eigen::MatrixXcd::Zero(d, d);
    for (int n1 = 0; n1 + 1 <= n_total; ++n1)
        lplus(n1 + 1, n1) = std::sqrt((n1 + 1.0) * (n_total - n1));
    Eigen::MatrixXcd l2 = (lplus - lplus.adjoint()) / (2.0 * I);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(l2);
    Eigen::VectorXcd phases(d);
    for (int i = 0; i < d; ++i)
        phases(i) = std::exp(-2.0 * I * bs.theta * es.eigenvalues()(i));
    Eigen::MatrixXcd rot =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

    Eigen::VectorXcd left = Eigen::VectorXcd::Zero(d);
    Eigen::VectorXcd right = Eigen::VectorXcd::Zero(d);
    double sum = bs.phi_t + bs.phi_r;
    double diff = bs.phi_t - bs.phi_r;
    for (int n1 = 0; n1 <= n_total; ++n1) {
        double l3 = n1 - 0.5 * n_total;
        left(n1) = std::exp(-I * diff * l3);
        right(n1) = std::exp(-I * sum * l3);
    }
    return left.asDiagonal() * rot * right.asDiagonal();
}

// Dense matrix helpers on a single mode with a fixed embedding dimension.
inline Eigen::MatrixXcd lowering(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt((double)n);
    return a;
}

inline Eigen::MatrixXcd attenuation(int dim, complexd t) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    std::complex<double> p(1.0, 0.0);
    for (int n = 0; n < dim; ++n) {
        m(n, n) = p;
        p *= t;
    }
    return m;
}

struct ConditionedOracle {
    Eigen::MatrixXcd rho_out; // unnormalized conditioned signal density
    double probability;       // trace of rho_out
};

// Conditioned output density for injecting n0 ancilla photons and counting
// mu at the reflected port, evaluated term by term from the general
// operator expansion (no two-mode state machinery involved).
inline ConditionedOracle conditioned_density(const catgen::DensityMatrix& rho,
                                             int n0, int mu,
                                             const catgen::BeamSplitterParams& bs) {
    const int d = rho.dim() + n0 + mu + 4;
    Eigen::MatrixXcd sig = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j) sig(i, j) = rho.at(i, j);

    complexd t = bs.transmission();
    complexd r = bs.reflection();
    Eigen::MatrixXcd a = lowering(d);
    Eigen::MatrixXcd ad = a.adjoint();
    Eigen::MatrixXcd tn = attenuation(d, t);
    Eigen::MatrixXcd tnc = attenuation(d, std::conj(t));

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k <= n0; ++k) {
        int m2 = mu - n0 + k;
        if (m2 < 0) continue;
        for (int j = 0; j <= n0; ++j) {
            int n2 = mu - n0 + j;
            if (n2 < 0) continue;
            complexd coeff =
                std::pow(std::conj(r), m2 + j) * std::pow(r, n2 + k) *
                (((n2 + m2) % 2 == 0) ? 1.0 : -1.0) *
                std::exp(-0.5 * (catgen::log_factorial(k) +
                                 catgen::log_factorial(j) +
                                 catgen::log_factorial(m2) +
                                 catgen::log_factorial(n2))) *
                std::sqrt(catgen::binomial(n0, k) * catgen::binomial(n0, j) *
                          catgen::binomial(mu, m2) * catgen::binomial(mu, n2));
            Eigen::MatrixXcd term = sig;
            for (int q = 0; q < j; ++q) term = term * a;
            for (int q = 0; q < n2; ++q) term = term * ad;
            term = term * tnc;
            for (int q = 0; q < k; ++q) term = ad * term;
            for (int q = 0; q < m2; ++q) term = a * term;
            term = tn * term;
            out += coeff * term;
        }
    }
    out /= std::pow(std::abs(t), 2 * n0);
    return {out, out.trace().real()};
}

// Event probabilities as direct series over the photon number
// distribution of the input.
inline double series_prob_added(int n0, double z, double t_sq) {
    double r_sq = 1.0 - t_sq;
    long double sum = 0.0L;
    long double w = std::sqrt(1.0 - z); // |<0|sq>|^2
    for (int q = 0; q <= 2000; ++q) {
        int n1 = 2 * q;
        sum += w * std::pow((long double)t_sq, n1) *
               (long double)catgen::binomial(n1 + n0, n0);
        w *= z * (2.0 * q + 1.0) / (2.0 * q + 2.0);
    }
    return (double)(std::pow((long double)r_sq, n0) * sum);
}

inline double series_prob_subtracted(int m2, double z, double t_sq) {
    double r_sq = 1.0 - t_sq;
    // photon number distribution of the squeezed input
    std::vector<long double> pn(4001, 0.0L);
    long double w = std::sqrt(1.0 - z);
    for (int q = 0; 2 * q < (int)pn.size(); ++q) {
        pn[2 * q] = w;
        w *= z * (2.0 * q + 1.0) / (2.0 * q + 2.0);
    }
    long double sum = 0.0L;
    for (int n1 = 0; n1 + m2 < (int)pn.size(); ++n1)
        sum += std::pow((long double)t_sq, n1) *
               (long double)catgen::binomial(n1 + m2, m2) * pn[n1 + m2];
    return (double)(std::pow((long double)r_sq, m2) * sum);
}

// Plain hypergeometric partial sum.
inline double brute_2f1(double a, double b, double c, double z, int terms) {
    long double t = 1.0L, s = 1.0L;
    for (int k = 0; k < terms; ++k) {
        t *= (long double)(a + k) * (b + k) / ((c + k) * (k + 1.0L)) * z;
        s += t;
    }
    return (double)s;
}

// Degree five polynomial written out explicitly.
inline complexd hermite5_explicit(complexd x) {
    return 32.0 * std::pow(x, 5) - 160.0 * std::pow(x, 3) + 120.0 * x;
}

// Direct double sum over the displaced parity kernel. Only sensible for
// small densities.
inline double wigner_kernel_sum(const catgen::DensityMatrix& rho, double x,
                                double p) {
    const std::complex<double> w = std::sqrt(2.0) * std::complex<double>(x, -p);
    const double s2 = x * x + p * p;
    std::complex<double> acc = 0.0;
    for (int m = 0; m < rho.dim(); ++m) {
        for (int n = 0; n <= m; ++n) {
            double lag = catgen::laguerre(n, m - n, 2.0 * s2);
            double mag = std::exp(0.5 * (catgen::log_factorial(n) -
                                         catgen::log_factorial(m)));
            std::complex<double> k = ((n % 2) ? -1.0 : 1.0) / M_PI * mag *
                                     std::pow(w, m - n) * lag *
                                     std::exp(-s2);
            acc += rho.at(m, n) * k;
            if (m != n) acc += rho.at(n, m) * std::conj(k);
        }
    }
    return acc.real();
}

// Monte Carlo estimate of the full detector response: throw m photons,
// lose each with probability 1 - eta, land survivors in uniformly random
// channels, report the distribution of the number of occupied channels.
inline std::vector<double> mc_detector_response(int channels, double eta,
                                                int m, int trials,
                                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> channel(0, channels - 1);
    std::vector<double> freq(channels + 1, 0.0);
    std::vector<char> hit(channels);
    for (int t = 0; t < trials; ++t) {
        std::fill(hit.begin(), hit.end(), 0);
        int occupied = 0;
        for (int q = 0; q < m; ++q) {
            if (unit(rng) > eta) continue;
            int c = channel(rng);
            if (!hit[c]) {
                hit[c] = 1;
                ++occupied;
            }
        }
        freq[occupied] += 1.0;
    }
    for (double& f : freq) f /= trials;
    return freq;
}

} // namespace oracle
