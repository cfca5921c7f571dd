#pragma once

#include "catgen/numerics.hpp"

#include <string>
#include <vector>

namespace catgen {

/// Single-mode state in the number basis, amplitudes c_0 .. c_{n_max}.
/// Operations on FockVector are pure: they return new values and never
/// mutate their inputs. Vectors are allowed to be unnormalized; ladder
/// and attenuation maps return the raw image, and squared_norm() reports
/// the norm separately so conditioning probabilities stay first-class.
struct FockVector {
    std::vector<complexd> amplitudes;

    FockVector() = default;
    explicit FockVector(std::vector<complexd> amps)
        : amplitudes(std::move(amps)) {}

    int n_max() const { return static_cast<int>(amplitudes.size()) - 1; }

    /// c_n, zero beyond the stored range.
    complexd amplitude(int n) const {
        if (n < 0 || n > n_max()) return {0.0, 0.0};
        return amplitudes[static_cast<size_t>(n)];
    }
};

/// Squeezed-vacuum parameter kappa with |kappa| < 1 enforced strictly.
struct SqueezeParam {
    complexd kappa;
    explicit SqueezeParam(complexd k);
    double magnitude() const { return std::abs(kappa); }
    double phase() const { return std::arg(kappa); }
};

/// Convention helper: kappa = tanh(s) e^{i phase} maps the squeezing
/// strength s >= 0 onto the unit disc.
SqueezeParam squeeze_from_strength(double s, double phase);

/// Hermitian, trace-one, positive semidefinite single-mode operator in
/// the number basis. Construction does not validate; call
/// validate_density once a matrix is supposed to be physical.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(int dim);
    static DensityMatrix from_pure(const FockVector& psi);

    int dim() const { return dim_; }
    int n_max() const { return dim_ - 1; }

    complexd& at(int i, int j);
    const complexd& at(int i, int j) const;

    complexd trace() const;
    std::vector<double> diagonal() const;
    void scale(double factor);

private:
    int dim_ = 0;
    std::vector<complexd> data_;
};

/// max_ij |rho_ij - conj(rho_ji)|
double hermiticity_defect(const DensityMatrix& rho);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const DensityMatrix& rho);

/// Throws DomainError unless Hermitian within 1e-12, unit trace within
/// 1e-10 and eigenvalues >= -1e-10.
void validate_density(const DensityMatrix& rho);

/// Number state |n> on a basis of size n_max + 1.
FockVector make_fock(int n, int n_max);

/// Coherent state, amplitudes renormalized on the truncated basis.
FockVector make_coherent(complexd alpha, int n_max);

struct TruncatedState {
    FockVector state; ///< renormalized on the truncated basis
    double tail;      ///< probability mass of the discarded amplitudes
};

/// Squeezed vacuum with c_{2n} proportional to
/// sqrt((2n)!) / (2^n n!) kappa^n, even amplitudes only. Factorials are
/// evaluated in log space so large n stays finite. The reported tail is
/// the exact-state probability beyond n_max.
TruncatedState make_squeezed_vacuum(const SqueezeParam& kappa, int n_max);

/// Tail mass of the exact squeezed vacuum above n_max.
double squeezed_vacuum_tail(const SqueezeParam& kappa, int n_max);

/// Smallest even n_max whose squeezed-vacuum tail is below 1e-12, plus
/// count_headroom + 8 extra levels for subsequent ladder operations.
int auto_n_max(const SqueezeParam& kappa, int count_headroom);

/// a^dagger |psi>, unnormalized, basis grown by one.
FockVector apply_creation(const FockVector& psi);

/// a |psi>, unnormalized.
FockVector apply_annihilation(const FockVector& psi);

/// t^{\hat n} |psi> for complex t, unnormalized.
FockVector apply_attenuation(const FockVector& psi, complexd t);

double squared_norm(const FockVector& psi);

/// psi / ||psi||. Throws DomainError on (numerically) zero input.
FockVector normalize(const FockVector& psi);

/// <a|b>, shorter vector padded with zeros.
complexd inner_product(const FockVector& a, const FockVector& b);

/// |<a|b>|^2 / (<a|a><b|b>), i.e. normalization-independent overlap.
double fidelity(const FockVector& a, const FockVector& b);

/// <psi|rho|psi> for normalized psi (input normalized internally).
double fidelity(const DensityMatrix& rho, const FockVector& psi);

double mean_photon_number(const FockVector& psi);
double mean_photon_number(const DensityMatrix& rho);

/// p_n = |c_n|^2 / ||psi||^2
std::vector<double> photon_number_distribution(const FockVector& psi);

/// Global phase fixed so the lowest-index nonzero amplitude is real
/// and positive. Nonzero means |c_n| > 1e-12 * max_m |c_m|.
FockVector canonical_phase(const FockVector& psi);

/// CSV with header "n,re,im", one row per amplitude, 17 significant
/// digits.
void write_state_csv(const std::string& path, const FockVector& psi);
FockVector read_state_csv(const std::string& path);

} // namespace catgen
