#include "catgen/fock.hpp"

#include "catgen/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace catgen {

SqueezeParam::SqueezeParam(complexd k) : kappa(k) {
    if (!(std::abs(k) < 1.0))
        throw DomainError("SqueezeParam: |kappa| must be strictly below 1");
}

SqueezeParam squeeze_from_strength(double s, double phase) {
    if (s < 0.0) throw DomainError("squeeze_from_strength: s must be >= 0");
    return SqueezeParam(std::tanh(s) *
                        complexd(std::cos(phase), std::sin(phase)));
}

DensityMatrix::DensityMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw DomainError("DensityMatrix: dimension must be >= 1");
    data_.assign(static_cast<size_t>(dim) * dim, {0.0, 0.0});
}

DensityMatrix DensityMatrix::from_pure(const FockVector& psi) {
    FockVector n = normalize(psi);
    int d = n.n_max() + 1;
    DensityMatrix rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            rho.at(i, j) = n.amplitudes[i] * std::conj(n.amplitudes[j]);
    return rho;
}

complexd& DensityMatrix::at(int i, int j) {
    return data_[static_cast<size_t>(i) * dim_ + j];
}

const complexd& DensityMatrix::at(int i, int j) const {
    return data_[static_cast<size_t>(i) * dim_ + j];
}

complexd DensityMatrix::trace() const {
    complexd t{0.0, 0.0};
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i) d[i] = at(i, i).real();
    return d;
}

void DensityMatrix::scale(double factor) {
    for (auto& v : data_) v *= factor;
}

double hermiticity_defect(const DensityMatrix& rho) {
    double worst = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = i; j < rho.dim(); ++j)
            worst = std::max(worst,
                             std::abs(rho.at(i, j) - std::conj(rho.at(j, i))));
    return worst;
}

double min_eigenvalue(const DensityMatrix& rho) {
    int d = rho.dim();
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = 0.5 * (rho.at(i, j) + std::conj(rho.at(j, i)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw DomainError("min_eigenvalue: eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

void validate_density(const DensityMatrix& rho) {
    if (rho.dim() < 1) throw DomainError("validate_density: empty matrix");
    double h = hermiticity_defect(rho);
    if (h > 1e-12)
        throw DomainError("validate_density: hermiticity defect " +
                          std::to_string(h));
    double tr = std::abs(rho.trace() - complexd(1.0, 0.0));
    if (tr > 1e-10)
        throw DomainError("validate_density: trace deviates from 1 by " +
                          std::to_string(tr));
    double lo = min_eigenvalue(rho);
    if (lo < -1e-10)
        throw DomainError("validate_density: negative eigenvalue " +
                          std::to_string(lo));
}

FockVector make_fock(int n, int n_max) {
    if (n < 0 || n_max < 0 || n > n_max)
        throw DomainError("make_fock: need 0 <= n <= n_max");
    std::vector<complexd> a(static_cast<size_t>(n_max) + 1, {0.0, 0.0});
    a[static_cast<size_t>(n)] = {1.0, 0.0};
    return FockVector(std::move(a));
}

FockVector make_coherent(complexd alpha, int n_max) {
    if (n_max < 0) throw DomainError("make_coherent: negative n_max");
    // c_n = alpha^n / sqrt(n!) up to the common exp(-|alpha|^2/2); build in
    // log-polar form and renormalize on the truncated basis.
    std::vector<complexd> a(static_cast<size_t>(n_max) + 1);
    double la = (std::abs(alpha) > 0.0) ? std::log(std::abs(alpha)) : 0.0;
    double ph = std::arg(alpha);
    for (int n = 0; n <= n_max; ++n) {
        if (std::abs(alpha) == 0.0) {
            a[n] = (n == 0) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
            continue;
        }
        double mag = std::exp(n * la - 0.5 * log_factorial(n) -
                              0.5 * std::norm(alpha));
        a[n] = mag * complexd(std::cos(n * ph), std::sin(n * ph));
    }
    return normalize(FockVector(std::move(a)));
}

namespace {

// |c_{2n}|^2 of the exact squeezed vacuum, accumulated iteratively:
// w_0 = sqrt(1-|kappa|^2), w_{n+1} = w_n * |kappa|^2 * (2n+1)/(2n+2).
double squeezed_weight_start(double z) { return std::sqrt(1.0 - z); }

} // namespace

double squeezed_vacuum_tail(const SqueezeParam& kappa, int n_max) {
    double z = std::norm(kappa.kappa);
    double w = squeezed_weight_start(z);
    double cum = 0.0;
    for (int n = 0; 2 * n <= n_max; ++n) {
        cum += w;
        w *= z * (2.0 * n + 1.0) / (2.0 * n + 2.0);
    }
    return std::max(0.0, 1.0 - cum);
}

TruncatedState make_squeezed_vacuum(const SqueezeParam& kappa, int n_max) {
    if (n_max < 0) throw DomainError("make_squeezed_vacuum: negative n_max");
    double z = std::norm(kappa.kappa);
    double phase = std::arg(kappa.kappa);
    std::vector<complexd> a(static_cast<size_t>(n_max) + 1, {0.0, 0.0});
    double quarter = 0.25 * std::log(1.0 - z);
    double lk = (z > 0.0) ? 0.5 * std::log(z) : 0.0;
    for (int n = 0; 2 * n <= n_max; ++n) {
        double mag;
        if (n == 0) {
            mag = std::exp(quarter);
        } else if (z == 0.0) {
            break;
        } else {
            double lmag = quarter + 0.5 * log_factorial(2 * n) - n * std::log(2.0) -
                          log_factorial(n) + n * lk;
            mag = std::exp(lmag);
        }
        a[static_cast<size_t>(2 * n)] =
            mag * complexd(std::cos(n * phase), std::sin(n * phase));
    }
    TruncatedState out;
    out.tail = squeezed_vacuum_tail(kappa, n_max);
    out.state = normalize(FockVector(std::move(a)));
    return out;
}

int auto_n_max(const SqueezeParam& kappa, int count_headroom) {
    if (count_headroom < 0)
        throw DomainError("auto_n_max: negative headroom");
    double z = std::norm(kappa.kappa);
    double w = squeezed_weight_start(z);
    double cum = 0.0;
    constexpr int kCap = 200000;
    for (int n = 0; 2 * n <= kCap; ++n) {
        cum += w;
        if (1.0 - cum < 1e-12) return 2 * n + count_headroom + 8;
        w *= z * (2.0 * n + 1.0) / (2.0 * n + 2.0);
    }
    throw TruncationError("auto_n_max: tail does not fall below 1e-12");
}

FockVector apply_creation(const FockVector& psi) {
    int n = psi.n_max();
    std::vector<complexd> a(static_cast<size_t>(n) + 2, {0.0, 0.0});
    for (int k = 0; k <= n; ++k)
        a[static_cast<size_t>(k) + 1] =
            std::sqrt(k + 1.0) * psi.amplitudes[static_cast<size_t>(k)];
    return FockVector(std::move(a));
}

FockVector apply_annihilation(const FockVector& psi) {
    int n = psi.n_max();
    std::vector<complexd> a(static_cast<size_t>(std::max(n, 1)), {0.0, 0.0});
    for (int k = 1; k <= n; ++k)
        a[static_cast<size_t>(k) - 1] =
            std::sqrt(static_cast<double>(k)) *
            psi.amplitudes[static_cast<size_t>(k)];
    return FockVector(std::move(a));
}

FockVector apply_attenuation(const FockVector& psi, complexd t) {
    std::vector<complexd> a = psi.amplitudes;
    complexd p{1.0, 0.0};
    for (size_t k = 0; k < a.size(); ++k) {
        a[k] *= p;
        p *= t;
    }
    return FockVector(std::move(a));
}

double squared_norm(const FockVector& psi) {
    double s = 0.0;
    for (const auto& c : psi.amplitudes) s += std::norm(c);
    return s;
}

FockVector normalize(const FockVector& psi) {
    double n2 = squared_norm(psi);
    if (!(n2 > 0.0))
        throw DomainError("normalize: zero vector");
    double inv = 1.0 / std::sqrt(n2);
    std::vector<complexd> a = psi.amplitudes;
    for (auto& c : a) c *= inv;
    return FockVector(std::move(a));
}

complexd inner_product(const FockVector& a, const FockVector& b) {
    size_t n = std::min(a.amplitudes.size(), b.amplitudes.size());
    complexd s{0.0, 0.0};
    for (size_t k = 0; k < n; ++k)
        s += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    return s;
}

double fidelity(const FockVector& a, const FockVector& b) {
    double na = squared_norm(a);
    double nb = squared_norm(b);
    if (!(na > 0.0) || !(nb > 0.0))
        throw DomainError("fidelity: zero vector");
    return std::norm(inner_product(a, b)) / (na * nb);
}

double fidelity(const DensityMatrix& rho, const FockVector& psi) {
    FockVector n = normalize(psi);
    int d = std::min(rho.dim(), n.n_max() + 1);
    complexd s{0.0, 0.0};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s += std::conj(n.amplitudes[static_cast<size_t>(i)]) *
                 rho.at(i, j) * n.amplitudes[static_cast<size_t>(j)];
    return s.real();
}

double mean_photon_number(const FockVector& psi) {
    double n2 = squared_norm(psi);
    if (!(n2 > 0.0)) throw DomainError("mean_photon_number: zero vector");
    double s = 0.0;
    for (int k = 0; k <= psi.n_max(); ++k)
        s += k * std::norm(psi.amplitudes[static_cast<size_t>(k)]);
    return s / n2;
}

double mean_photon_number(const DensityMatrix& rho) {
    double tr = rho.trace().real();
    if (!(tr > 0.0)) throw DomainError("mean_photon_number: zero trace");
    double s = 0.0;
    for (int k = 0; k < rho.dim(); ++k) s += k * rho.at(k, k).real();
    return s / tr;
}

std::vector<double> photon_number_distribution(const FockVector& psi) {
    double n2 = squared_norm(psi);
    if (!(n2 > 0.0))
        throw DomainError("photon_number_distribution: zero vector");
    std::vector<double> p(psi.amplitudes.size());
    for (size_t k = 0; k < p.size(); ++k)
        p[k] = std::norm(psi.amplitudes[k]) / n2;
    return p;
}

FockVector canonical_phase(const FockVector& psi) {
    double top = 0.0;
    for (const auto& c : psi.amplitudes) top = std::max(top, std::abs(c));
    if (top == 0.0) throw DomainError("canonical_phase: zero vector");
    for (const auto& c : psi.amplitudes) {
        if (std::abs(c) > 1e-12 * top) {
            complexd rot = std::abs(c) / c;
            std::vector<complexd> a = psi.amplitudes;
            for (auto& v : a) v *= rot;
            return FockVector(std::move(a));
        }
    }
    throw DomainError("canonical_phase: no amplitude above threshold");
}

void write_state_csv(const std::string& path, const FockVector& psi) {
    std::ofstream out(path);
    if (!out) throw DomainError("write_state_csv: cannot open " + path);
    out << "n,re,im\n";
    char buf[128];
    for (int n = 0; n <= psi.n_max(); ++n) {
        const complexd& c = psi.amplitudes[static_cast<size_t>(n)];
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", n, c.real(),
                      c.imag());
        out << buf;
    }
}

FockVector read_state_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("read_state_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("n,re,im", 0) != 0)
        throw DomainError("read_state_csv: missing header in " + path);
    std::vector<complexd> a;
    int expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        int n;
        double re, im;
        if (!std::getline(row, field, ',')) break;
        n = std::stoi(field);
        if (!std::getline(row, field, ','))
            throw DomainError("read_state_csv: malformed row");
        re = std::stod(field);
        if (!std::getline(row, field, ','))
            throw DomainError("read_state_csv: malformed row");
        im = std::stod(field);
        if (n != expected)
            throw DomainError("read_state_csv: non-contiguous indices");
        ++expected;
        a.emplace_back(re, im);
    }
    if (a.empty()) throw DomainError("read_state_csv: no amplitudes");
    return FockVector(std::move(a));
}

} // namespace catgen
