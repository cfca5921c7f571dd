#include "catgen/beamsplitter.hpp"

#include "catgen/errors.hpp"

#include <algorithm>
#include <cmath>

namespace catgen {

complexd BeamSplitterParams::transmission() const {
    double c = std::cos(theta);
    return {c * std::cos(phi_t), c * std::sin(phi_t)};
}

complexd BeamSplitterParams::reflection() const {
    double s = std::sin(theta);
    return {s * std::cos(phi_r), s * std::sin(phi_r)};
}

BeamSplitterParams bs_from_transmittance(double t_sq, double phi_t,
                                         double phi_r) {
    if (!(t_sq >= 0.0 && t_sq <= 1.0))
        throw DomainError("bs_from_transmittance: |T|^2 must lie in [0, 1]");
    BeamSplitterParams p;
    p.theta = std::acos(std::sqrt(t_sq));
    p.phi_t = phi_t;
    p.phi_r = phi_r;
    return p;
}

std::vector<complexd> bs_unitary_block(int n_total,
                                       const BeamSplitterParams& params) {
    if (n_total < 0) throw DomainError("bs_unitary_block: negative block");
    const int N = n_total;
    const double at = std::abs(std::cos(params.theta));
    const double ar = std::abs(std::sin(params.theta));
    // signs of cos/sin folded into the magnitudes below never appear for
    // theta in [0, pi/2]; support the general angle anyway
    const double ct = std::cos(params.theta);
    const double st = std::sin(params.theta);
    const double lt = (at > 0.0) ? std::log(at) : 0.0;
    const double lr = (ar > 0.0) ? std::log(ar) : 0.0;

    std::vector<complexd> block(static_cast<size_t>(N + 1) * (N + 1),
                                {0.0, 0.0});
    std::vector<double> lmags;
    std::vector<double> signs;
    for (int n1p = 0; n1p <= N; ++n1p) {
        const int n2p = N - n1p;
        for (int n1 = 0; n1 <= N; ++n1) {
            const int n2 = N - n1;
            lmags.clear();
            signs.clear();
            const int s_lo = std::max(0, n1 - n1p);
            const int s_hi = std::min(n1, n2p);
            for (int s = s_lo; s <= s_hi; ++s) {
                const int et = N + n1 - n1p - 2 * s; // power of cos(theta)
                const int er = n1p - n1 + 2 * s;     // power of sin(theta)
                if (et > 0 && at == 0.0) continue;
                if (er > 0 && ar == 0.0) continue;
                double lm = 0.5 * (log_factorial(n1p) + log_factorial(n2p) +
                                   log_factorial(n1) + log_factorial(n2)) -
                            log_factorial(n1 - s) - log_factorial(s) -
                            log_factorial(n1p - n1 + s) -
                            log_factorial(n2p - s);
                if (et > 0) lm += et * lt;
                if (er > 0) lm += er * lr;
                double sign = ((n1p - n1 + s) % 2 != 0) ? -1.0 : 1.0;
                if (et > 0 && ct < 0.0 && et % 2 != 0) sign = -sign;
                if (er > 0 && st < 0.0 && er % 2 != 0) sign = -sign;
                lmags.push_back(lm);
                signs.push_back(sign);
            }
            if (lmags.empty()) continue;
            double top = *std::max_element(lmags.begin(), lmags.end());
            double acc = 0.0;
            for (size_t i = 0; i < lmags.size(); ++i)
                acc += signs[i] * std::exp(lmags[i] - top);
            double d = std::exp(top) * acc;
            double ph = -(params.phi_t * (n1p + n1 - N) +
                          params.phi_r * (n1 - n1p));
            block[static_cast<size_t>(n1p) * (N + 1) + n1] =
                d * complexd(std::cos(ph), std::sin(ph));
        }
    }
    return block;
}

TwoModeState apply_beam_splitter(const TwoModeState& psi,
                                 const BeamSplitterParams& params) {
    if (psi.total_max() < 0)
        throw DomainError("apply_beam_splitter: empty state");
    TwoModeState out(psi.total_max());
    for (int N = 0; N <= psi.total_max(); ++N) {
        std::vector<complexd> block = bs_unitary_block(N, params);
        for (int u = 0; u <= N; ++u) {
            complexd acc{0.0, 0.0};
            for (int a = 0; a <= N; ++a)
                acc += std::conj(block[static_cast<size_t>(a) * (N + 1) + u]) *
                       psi.amplitude(a, N - a);
            out.amp(u, N - u) = acc;
        }
    }
    return out;
}

TwoModeDensity apply_beam_splitter(const TwoModeDensity& rho,
                                   const BeamSplitterParams& params) {
    if (rho.total_max() < 0)
        throw DomainError("apply_beam_splitter: empty density");
    const int top = rho.total_max();
    std::vector<std::vector<complexd>> blocks(static_cast<size_t>(top) + 1);
    for (int N = 0; N <= top; ++N) blocks[N] = bs_unitary_block(N, params);

    TwoModeDensity out(top);
    std::vector<complexd> tmp;
    for (int N = 0; N <= top; ++N) {
        const auto& bn = blocks[N];
        for (int Np = 0; Np <= top; ++Np) {
            const auto& bp = blocks[Np];
            // tmp[a, v] = sum_b rho[(N,a),(Np,b)] * bp[b, v]
            tmp.assign(static_cast<size_t>(N + 1) * (Np + 1), {0.0, 0.0});
            for (int a = 0; a <= N; ++a) {
                for (int b = 0; b <= Np; ++b) {
                    complexd r = rho.entry(a, N - a, b, Np - b);
                    if (r == complexd{0.0, 0.0}) continue;
                    for (int v = 0; v <= Np; ++v)
                        tmp[static_cast<size_t>(a) * (Np + 1) + v] +=
                            r * bp[static_cast<size_t>(b) * (Np + 1) + v];
                }
            }
            for (int u = 0; u <= N; ++u) {
                for (int v = 0; v <= Np; ++v) {
                    complexd acc{0.0, 0.0};
                    for (int a = 0; a <= N; ++a)
                        acc += std::conj(
                                   bn[static_cast<size_t>(a) * (N + 1) + u]) *
                               tmp[static_cast<size_t>(a) * (Np + 1) + v];
                    out.ent(u, N - u, v, Np - v) = acc;
                }
            }
        }
    }
    return out;
}

namespace {

constexpr double kImprobable = 1e-14;

double checked_probability(double p, const char* where) {
    if (p < kImprobable)
        throw ImprobableOutcomeError(std::string(where) +
                                     ": outcome probability below 1e-14");
    if (p > 1.0 + 1e-12)
        throw DomainError(std::string(where) + ": probability above 1");
    return std::min(p, 1.0);
}

} // namespace

ConditionalState condition_on_count(const TwoModeState& evolved, int m2) {
    if (m2 < 0 || m2 > evolved.total_max())
        throw DomainError("condition_on_count: count out of range");
    int n_top = evolved.total_max() - m2;
    std::vector<complexd> a(static_cast<size_t>(n_top) + 1);
    for (int n1 = 0; n1 <= n_top; ++n1) a[n1] = evolved.amplitude(n1, m2);
    FockVector raw(std::move(a));
    double p = squared_norm(raw);
    ConditionalState out;
    out.probability = checked_probability(p, "condition_on_count");
    out.state = canonical_phase(normalize(raw));
    out.m_detected = m2;
    return out;
}

ConditionalDensity condition_on_count(const TwoModeDensity& evolved, int m2) {
    if (m2 < 0 || m2 > evolved.total_max())
        throw DomainError("condition_on_count: count out of range");
    int n_top = evolved.total_max() - m2;
    DensityMatrix rho(n_top + 1);
    for (int n1 = 0; n1 <= n_top; ++n1)
        for (int n1p = 0; n1p <= n_top; ++n1p)
            rho.at(n1, n1p) = evolved.entry(n1, m2, n1p, m2);
    double p = rho.trace().real();
    ConditionalDensity out;
    out.probability = checked_probability(p, "condition_on_count");
    rho.scale(1.0 / out.probability);
    out.state = std::move(rho);
    out.m_detected = m2;
    return out;
}

ConditionalState photon_added_state(const FockVector& phi, int n0,
                                    const BeamSplitterParams& params) {
    if (n0 < 0) throw DomainError("photon_added_state: negative count");
    const complexd t = params.transmission();
    const complexd r = params.reflection();
    FockVector psi = apply_attenuation(phi, t);
    for (int i = 0; i < n0; ++i) psi = apply_creation(psi);
    // prefactor R^{n0} / sqrt(n0!)
    complexd f{1.0, 0.0};
    for (int i = 0; i < n0; ++i) f *= r;
    f *= std::exp(-0.5 * log_factorial(n0));
    for (auto& c : psi.amplitudes) c *= f;
    double p = squared_norm(psi);
    ConditionalState out;
    out.probability = checked_probability(p, "photon_added_state");
    out.state = canonical_phase(normalize(psi));
    out.n_injected = n0;
    out.m_detected = 0;
    return out;
}

ConditionalState photon_subtracted_state(const FockVector& phi, int m,
                                         const BeamSplitterParams& params) {
    if (m < 0) throw DomainError("photon_subtracted_state: negative count");
    if (m > phi.n_max())
        throw ImprobableOutcomeError(
            "photon_subtracted_state: more photons counted than the basis "
            "holds");
    const complexd t = params.transmission();
    const complexd r = params.reflection();
    FockVector psi = phi;
    for (int i = 0; i < m; ++i) psi = apply_annihilation(psi);
    psi = apply_attenuation(psi, t);
    // prefactor (-R^*)^m / sqrt(m!)
    complexd f{1.0, 0.0};
    for (int i = 0; i < m; ++i) f *= -std::conj(r);
    f *= std::exp(-0.5 * log_factorial(m));
    for (auto& c : psi.amplitudes) c *= f;
    double p = squared_norm(psi);
    ConditionalState out;
    out.probability = checked_probability(p, "photon_subtracted_state");
    out.state = canonical_phase(normalize(psi));
    out.n_injected = 0;
    out.m_detected = m;
    return out;
}

double event_probability(const DensityMatrix& rho1, int n0, int m2,
                         const BeamSplitterParams& params) {
    if (n0 < 0 || m2 < 0)
        throw DomainError("event_probability: negative count");
    const double at = std::abs(std::cos(params.theta));
    const double ar = std::abs(std::sin(params.theta));
    if (at == 0.0)
        throw DomainError(
            "event_probability: fully reflective beam splitter is outside "
            "the closed sum's domain");
    const int nu = n0 - m2;
    const int mu = std::max(0, nu);
    const std::vector<double> diag = rho1.diagonal();

    long double total = 0.0L;
    for (int n1 = std::max(0, m2 - n0); n1 < static_cast<int>(diag.size());
         ++n1) {
        if (diag[n1] == 0.0) continue;
        long double inner = 0.0L;
        for (int j = mu; j <= n0; ++j) {
            double cj = binomial(m2, j - nu);
            if (cj == 0.0) continue;
            for (int k = mu; k <= n0; ++k) {
                double ck = binomial(m2, k - nu);
                if (ck == 0.0) continue;
                double lmag = log_factorial(n0) + log_factorial(n1) -
                              log_factorial(n1 + nu) - log_factorial(m2);
                double term = std::exp(lmag) * cj * ck *
                              binomial(n1 + j, j) * binomial(n1 + k, k) *
                              std::pow(ar, 2.0 * (j + k - nu)) *
                              std::pow(at, 2.0 * (n1 - m2));
                if ((j + k) % 2 != 0) term = -term;
                inner += term;
            }
        }
        total += inner * static_cast<long double>(diag[n1]);
    }
    double p = static_cast<double>(total);
    if (p < 0.0 && p > -1e-12) p = 0.0;
    if (p < 0.0)
        throw DomainError("event_probability: negative probability from "
                          "closed sum");
    return std::min(p, 1.0);
}

} // namespace catgen
