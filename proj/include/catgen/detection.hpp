#pragma once

#include "catgen/analytic.hpp"
#include "catgen/beamsplitter.hpp"
#include "catgen/fock.hpp"

#include <string>
#include <vector>

namespace catgen {

/// Multichannel coincidence counter: the incoming pulse is split over N
/// equivalent channels of quantum efficiency eta, and the number of
/// channels that fire is reported.
struct ChoppingDetector {
    int channels = 1;
    double efficiency = 1.0;
    ChoppingDetector(int n, double eta);
};

/// Heralded n0-photon source firing N independent emitters, each
/// succeeding with probability p.
struct BinomialSource {
    int trials = 0;
    double p = 0.5;
    BinomialSource(int n, double prob);
};

/// Probability that k of N ideal channels fire when m photons arrive:
/// N^{-m} C(N,k) sum_l (-1)^l C(k,l) (k-l)^m. Zero for k > m; k > N is
/// a domain error. The alternating sum runs in exact 128-bit integers
/// for m <= 20 and in compensated log space beyond.
double chop_prob(const ChoppingDetector& det, int k, int m);

/// Binomial loss channel: probability that l of m photons survive
/// efficiency eta.
double loss_prob(int l, int m, double eta);

/// Probability of k firings given m photons before the loss:
/// sum_l chop_prob(k|l) loss_prob(l|m). Columns sum to one.
double detector_response(const ChoppingDetector& det, int k, int m);

struct PosteriorResult {
    std::vector<double> weights; ///< normalized posterior over m
    double evidence = 0.0;       ///< marginal probability of the count
};

/// Bayes update of a photon-number prior on a count of k firings.
/// Throws ImprobableOutcomeError when the evidence falls below 1e-300.
PosteriorResult posterior(const ChoppingDetector& det, int k,
                          const std::vector<double>& prior);

/// Subtracted-count prior P(m) from the closed form, extended until the
/// cumulative probability reaches the requested mass.
std::vector<double> subtracted_prior(const SqueezeParam& kappa,
                                     const BeamSplitterParams& params,
                                     double cumulative = 1.0 - 1e-10);

double binomial_pmf(const BinomialSource& src, int n0);

/// Statistical mixture of conditionally prepared states sharing one
/// effective squeezing. Weights sum to one (1e-12) and every component
/// is normalized on a common basis.
struct MixedConditional {
    CatKind kind = CatKind::subtracted;
    complexd kappa_prime;
    std::vector<int> counts;
    std::vector<double> weights;
    std::vector<FockVector> components;
    double detect_probability = 0.0;

    double quad(double x, double phi) const;
    double wigner_value(double x, double p) const;
    double husimi_value(double x, double p) const;
    DensityMatrix mixture_density() const;

    /// <psi|rho_mix|psi> for a normalized reference state.
    double fidelity_to(const FockVector& psi) const;
};

/// Realistic photon subtraction: a chopping detector fires k times, and
/// the signal collapses onto the posterior-weighted mixture of
/// m-subtracted states. detect_probability is the evidence of the
/// count.
MixedConditional mixed_subtracted(const ChoppingDetector& det, int k,
                                  const SqueezeParam& kappa,
                                  const BeamSplitterParams& params);

/// Realistic photon addition from a binomial source. The mixture runs
/// over n0 = 0..trials; the count-zero component (nothing added, only
/// attenuation) is kept, with its weight listed like any other.
/// detect_probability is the overall success probability
/// sum_n0 pmf(n0) P(n0).
MixedConditional mixed_added(const BinomialSource& src,
                             const SqueezeParam& kappa,
                             const BeamSplitterParams& params);

/// Response matrix CSV: header, then rows k = 0..N with columns
/// m = 0..m_cut.
void write_response_csv(const std::string& path, const ChoppingDetector& det,
                        int m_cut);

} // namespace catgen
