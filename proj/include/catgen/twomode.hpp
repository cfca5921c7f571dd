#pragma once

#include "catgen/fock.hpp"

#include <vector>

namespace catgen {

/// Index of |n1, n2> inside storage ordered by total photon number
/// N = n1 + n2: blocks are contiguous, block N holds n1 = 0..N.
inline int pair_index(int n1, int n2) {
    int total = n1 + n2;
    return total * (total + 1) / 2 + n1;
}

inline int pair_count(int total_max) {
    return (total_max + 1) * (total_max + 2) / 2;
}

/// Pure state of two modes, amplitudes grouped by total photon number.
class TwoModeState {
public:
    TwoModeState() = default;
    explicit TwoModeState(int total_max);
    static TwoModeState product(const FockVector& mode1,
                                const FockVector& mode2);

    int total_max() const { return total_max_; }

    complexd amplitude(int n1, int n2) const;
    complexd& amp(int n1, int n2);

    double squared_norm() const;

private:
    int total_max_ = -1;
    std::vector<complexd> data_;
};

/// Two-mode density operator over the same block-ordered basis. Sized
/// for moderate cutoffs; the pure pipeline should be preferred whenever
/// the input is pure.
class TwoModeDensity {
public:
    TwoModeDensity() = default;
    explicit TwoModeDensity(int total_max);
    static TwoModeDensity product(const DensityMatrix& mode1,
                                  const DensityMatrix& mode2);
    static TwoModeDensity from_pure(const TwoModeState& psi);

    int total_max() const { return total_max_; }
    int dim() const { return dim_; }

    complexd entry(int n1, int n2, int n1p, int n2p) const;
    complexd& ent(int n1, int n2, int n1p, int n2p);

    complexd trace() const;

private:
    int total_max_ = -1;
    int dim_ = 0;
    std::vector<complexd> data_;
};

} // namespace catgen
