#include "catgen/detection.hpp"

#include "catgen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace catgen {

ChoppingDetector::ChoppingDetector(int n, double eta)
    : channels(n), efficiency(eta) {
    if (n < 1) throw DomainError("ChoppingDetector: need at least 1 channel");
    if (!(eta > 0.0 && eta <= 1.0))
        throw DomainError("ChoppingDetector: efficiency must lie in (0, 1]");
}

BinomialSource::BinomialSource(int n, double prob) : trials(n), p(prob) {
    if (n < 0) throw DomainError("BinomialSource: negative trial count");
    if (!(prob > 0.0 && prob < 1.0))
        throw DomainError("BinomialSource: p must lie in (0, 1)");
}

double chop_prob(const ChoppingDetector& det, int k, int m) {
    const int n = det.channels;
    if (k < 0 || m < 0) throw DomainError("chop_prob: negative count");
    if (k > n) throw DomainError("chop_prob: more firings than channels");
    if (k > m) return 0.0;
    if (m == 0) return (k == 0) ? 1.0 : 0.0;

    if (m <= 20) {
        // The alternating surjection sum cancels catastrophically in
        // floating point; for m <= 20 every term fits in 128-bit
        // integers, so run it exactly. k <= m <= 20 keeps C(k,l) small.
        __int128 sum = 0;
        __int128 ckl = 1; // C(k, l), updated multiplicatively
        for (int l = 0; l <= k; ++l) {
            __int128 pw = 1;
            for (int i = 0; i < m; ++i) pw *= (k - l);
            sum += (l % 2 != 0) ? -ckl * pw : ckl * pw;
            ckl = ckl * (k - l) / (l + 1);
        }
        long double nm = 1.0L;
        for (int i = 0; i < m; ++i) nm *= n;
        long double r = static_cast<long double>(binomial(n, k)) *
                        static_cast<long double>(sum) / nm;
        return static_cast<double>(r);
    }

    // log-space with Neumaier compensation in extended precision
    long double lbase = log_factorial_l(n) - log_factorial_l(k) -
                        log_factorial_l(n - k) -
                        m * std::log(static_cast<long double>(n));
    long double top = -1e30L;
    std::vector<long double> lmag(static_cast<size_t>(k) + 1, -1e30L);
    for (int l = 0; l < k; ++l) { // l = k gives (k-l)^m = 0
        lmag[l] = lbase + log_factorial_l(k) - log_factorial_l(l) -
                  log_factorial_l(k - l) +
                  m * std::log(static_cast<long double>(k - l));
        top = std::max(top, lmag[l]);
    }
    long double sum = 0.0L, comp = 0.0L;
    for (int l = 0; l < k; ++l) {
        long double t = std::exp(lmag[l] - top);
        if (l % 2 != 0) t = -t;
        long double y = sum + t;
        comp += (std::fabs(sum) >= std::fabs(t)) ? (sum - y) + t
                                                 : (t - y) + sum;
        sum = y;
    }
    long double r = std::exp(top) * (sum + comp);
    return std::max(0.0, static_cast<double>(r));
}

double loss_prob(int l, int m, double eta) {
    if (l < 0 || m < 0) throw DomainError("loss_prob: negative count");
    if (!(eta > 0.0 && eta <= 1.0))
        throw DomainError("loss_prob: efficiency must lie in (0, 1]");
    if (l > m) return 0.0;
    if (eta == 1.0) return (l == m) ? 1.0 : 0.0;
    return binomial(m, l) * std::pow(eta, l) * std::pow(1.0 - eta, m - l);
}

double detector_response(const ChoppingDetector& det, int k, int m) {
    if (k < 0 || m < 0) throw DomainError("detector_response: negative count");
    if (k > det.channels)
        throw DomainError("detector_response: more firings than channels");
    double acc = 0.0;
    for (int l = k; l <= m; ++l)
        acc += chop_prob(det, k, l) * loss_prob(l, m, det.efficiency);
    return acc;
}

PosteriorResult posterior(const ChoppingDetector& det, int k,
                          const std::vector<double>& prior) {
    if (prior.empty()) throw DomainError("posterior: empty prior");
    PosteriorResult out;
    out.weights.assign(prior.size(), 0.0);
    long double evidence = 0.0L;
    for (size_t m = 0; m < prior.size(); ++m) {
        if (prior[m] < 0.0) throw DomainError("posterior: negative prior");
        double w = detector_response(det, k, static_cast<int>(m)) * prior[m];
        out.weights[m] = w;
        evidence += w;
    }
    if (evidence < 1e-300L)
        throw ImprobableOutcomeError(
            "posterior: the observed count is impossible under this prior");
    out.evidence = static_cast<double>(evidence);
    for (auto& w : out.weights) w /= out.evidence;
    return out;
}

std::vector<double> subtracted_prior(const SqueezeParam& kappa,
                                     const BeamSplitterParams& params,
                                     double cumulative) {
    if (!(cumulative > 0.0 && cumulative < 1.0))
        throw DomainError("subtracted_prior: target mass must lie in (0, 1)");
    std::vector<double> prior;
    long double cum = 0.0L;
    for (int m = 0; m < 10000; ++m) {
        double p = prob_subtracted(m, kappa, params);
        prior.push_back(p);
        cum += p;
        if (cum >= cumulative) return prior;
    }
    throw TruncationError("subtracted_prior: cumulative mass did not reach "
                          "the target");
}

double binomial_pmf(const BinomialSource& src, int n0) {
    if (n0 < 0) throw DomainError("binomial_pmf: negative count");
    if (n0 > src.trials) return 0.0;
    return binomial(src.trials, n0) * std::pow(src.p, n0) *
           std::pow(1.0 - src.p, src.trials - n0);
}

double MixedConditional::quad(double x, double phi) const {
    double acc = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (weights[i] == 0.0) continue;
        acc += weights[i] *
               quad_dist(CatParams(kappa_prime, counts[i], kind), x, phi);
    }
    return acc;
}

double MixedConditional::wigner_value(double x, double p) const {
    double acc = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (weights[i] == 0.0) continue;
        acc += weights[i] *
               wigner(CatParams(kappa_prime, counts[i], kind), x, p);
    }
    return acc;
}

double MixedConditional::husimi_value(double x, double p) const {
    double acc = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (weights[i] == 0.0) continue;
        acc += weights[i] *
               husimi(CatParams(kappa_prime, counts[i], kind), x, p);
    }
    return acc;
}

DensityMatrix MixedConditional::mixture_density() const {
    if (components.empty())
        throw DomainError("mixture_density: no components");
    int d = components.front().n_max() + 1;
    DensityMatrix rho(d);
    for (size_t c = 0; c < components.size(); ++c) {
        if (weights[c] == 0.0) continue;
        const auto& a = components[c].amplitudes;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                rho.at(i, j) += weights[c] * a[static_cast<size_t>(i)] *
                                std::conj(a[static_cast<size_t>(j)]);
    }
    return rho;
}

double MixedConditional::fidelity_to(const FockVector& psi) const {
    FockVector ref = normalize(psi);
    double acc = 0.0;
    for (size_t i = 0; i < components.size(); ++i)
        acc += weights[i] * std::norm(inner_product(ref, components[i]));
    return acc;
}

namespace {

// One basis size that holds every component of a mixture.
int mixture_basis(complexd kappa_prime, CatKind kind,
                  const std::vector<int>& counts) {
    int top = 0;
    for (int c : counts)
        top = std::max(top,
                       analytic_auto_n_max(CatParams(kappa_prime, c, kind)));
    return top;
}

} // namespace

MixedConditional mixed_subtracted(const ChoppingDetector& det, int k,
                                  const SqueezeParam& kappa,
                                  const BeamSplitterParams& params) {
    std::vector<double> prior = subtracted_prior(kappa, params);
    PosteriorResult post = posterior(det, k, prior);
    MixedConditional mix;
    mix.kind = CatKind::subtracted;
    mix.kappa_prime = effective_kappa(kappa, params);
    for (size_t m = 0; m < post.weights.size(); ++m) {
        if (post.weights[m] == 0.0) continue;
        mix.counts.push_back(static_cast<int>(m));
        mix.weights.push_back(post.weights[m]);
    }
    mix.detect_probability = post.evidence;
    int n_max = mixture_basis(mix.kappa_prime, mix.kind, mix.counts);
    for (int m : mix.counts)
        mix.components.push_back(analytic_state(
            CatParams(mix.kappa_prime, m, mix.kind), n_max));
    return mix;
}

MixedConditional mixed_added(const BinomialSource& src,
                             const SqueezeParam& kappa,
                             const BeamSplitterParams& params) {
    MixedConditional mix;
    mix.kind = CatKind::added;
    mix.kappa_prime = effective_kappa(kappa, params);
    long double total = 0.0L;
    std::vector<double> raw;
    for (int n0 = 0; n0 <= src.trials; ++n0) {
        double w = binomial_pmf(src, n0) * prob_added(n0, kappa, params);
        raw.push_back(w);
        total += w;
    }
    if (total < 1e-300L)
        throw ImprobableOutcomeError("mixed_added: success probability "
                                     "vanishes");
    mix.detect_probability = static_cast<double>(total);
    for (int n0 = 0; n0 <= src.trials; ++n0) {
        mix.counts.push_back(n0);
        mix.weights.push_back(raw[static_cast<size_t>(n0)] /
                              mix.detect_probability);
    }
    int n_max = mixture_basis(mix.kappa_prime, mix.kind, mix.counts);
    for (int n0 : mix.counts)
        mix.components.push_back(analytic_state(
            CatParams(mix.kappa_prime, n0, mix.kind), n_max));
    return mix;
}

void write_response_csv(const std::string& path, const ChoppingDetector& det,
                        int m_cut) {
    if (m_cut < 0) throw DomainError("write_response_csv: negative m_cut");
    std::ofstream out(path);
    if (!out) throw DomainError("write_response_csv: cannot open " + path);
    out << "k";
    for (int m = 0; m <= m_cut; ++m) out << ",m" << m;
    out << "\n";
    char buf[64];
    for (int k = 0; k <= det.channels; ++k) {
        out << k;
        for (int m = 0; m <= m_cut; ++m) {
            std::snprintf(buf, sizeof(buf), ",%.17g",
                          detector_response(det, k, m));
            out << buf;
        }
        out << "\n";
    }
}

} // namespace catgen
