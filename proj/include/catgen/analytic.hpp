#pragma once

#include "catgen/beamsplitter.hpp"
#include "catgen/fock.hpp"

namespace catgen {

enum class CatKind { added, subtracted };

/// Parameters of a conditionally prepared state in closed form: the
/// effective squeezing kappa' = T^2 kappa left in the signal mode, the
/// number of photons added to or subtracted from it, and which of the
/// two preparations is meant.
struct CatParams {
    complexd kappa_prime;
    int count = 0;
    CatKind kind = CatKind::subtracted;

    CatParams(complexd kp, int n, CatKind k);
};

/// A point of the quadrature phase space. phi is the local-oscillator
/// phase of the measured quadrature; the vacuum quadrature variance is
/// 1/2 in these units.
struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
    double phi = 0.0;
};

/// kappa' = T^2 kappa: squeezing seen in the signal arm after
/// conditioning, phase shifted by twice the transmission phase.
complexd effective_kappa(const SqueezeParam& kappa,
                         const BeamSplitterParams& params);

/// Number-basis coefficient of the n0-photon-added state (unnormalized;
/// the squared coefficients sum to norm_added). Even n - n0 only.
/// Evaluated in log space so large n stays finite.
complexd coeff_added(int n, int n0, complexd kappa_prime);

/// Coefficient of the m-photon-subtracted state; even n + m only.
complexd coeff_subtracted(int n, int m, complexd kappa_prime);

/// Sum of squared coefficients of the added family,
/// n0! * 2F1((n0+1)/2, (n0+2)/2; 1; |kappa'|^2).
double norm_added(int n0, double abs_kappa_prime);

/// Sum of squared coefficients of the subtracted family (finite sum
/// times (1-|kappa'|^2)^(-m-1/2)).
double norm_subtracted(int m, double abs_kappa_prime);

/// Probability that conditioning succeeds with n0 photons added.
double prob_added(int n0, const SqueezeParam& kappa,
                  const BeamSplitterParams& params);

/// Probability of removing exactly m photons.
double prob_subtracted(int m, const SqueezeParam& kappa,
                       const BeamSplitterParams& params);

/// Normalized number-basis expansion of the closed-form family.
FockVector analytic_state(const CatParams& params, int n_max);

/// Basis size that captures the coefficient series to ~1e-16 relative
/// tail, with headroom.
int analytic_auto_n_max(const CatParams& params);

/// Quadrature distribution p(x, phi). Convention:
/// p(x, phi) = |sum_n c_n e^{-i n phi} <x|n>|^2 for a pure state with
/// amplitudes c_n.
double quad_dist(const CatParams& params, double x, double phi);
double quad_dist(const CatParams& params, const PhasePoint& pt);

/// Wigner function, normalized so it integrates to 1 over dx dp.
double wigner(const CatParams& params, double x, double p);
double wigner(const CatParams& params, const PhasePoint& pt);

/// Husimi function <alpha|rho|alpha> / (2 pi) with alpha =
/// (x + i p) / sqrt(2); integrates to 1 over dx dp.
double husimi(const CatParams& params, double x, double p);
double husimi(const CatParams& params, const PhasePoint& pt);

} // namespace catgen
