#include "catgen/twomode.hpp"

#include "catgen/errors.hpp"

namespace catgen {

TwoModeState::TwoModeState(int total_max) : total_max_(total_max) {
    if (total_max < 0) throw DomainError("TwoModeState: negative total_max");
    data_.assign(static_cast<size_t>(pair_count(total_max)), {0.0, 0.0});
}

TwoModeState TwoModeState::product(const FockVector& mode1,
                                   const FockVector& mode2) {
    TwoModeState out(mode1.n_max() + mode2.n_max());
    for (int n1 = 0; n1 <= mode1.n_max(); ++n1)
        for (int n2 = 0; n2 <= mode2.n_max(); ++n2)
            out.amp(n1, n2) = mode1.amplitudes[static_cast<size_t>(n1)] *
                              mode2.amplitudes[static_cast<size_t>(n2)];
    return out;
}

complexd TwoModeState::amplitude(int n1, int n2) const {
    if (n1 < 0 || n2 < 0 || n1 + n2 > total_max_) return {0.0, 0.0};
    return data_[static_cast<size_t>(pair_index(n1, n2))];
}

complexd& TwoModeState::amp(int n1, int n2) {
    if (n1 < 0 || n2 < 0 || n1 + n2 > total_max_)
        throw DomainError("TwoModeState: index out of range");
    return data_[static_cast<size_t>(pair_index(n1, n2))];
}

double TwoModeState::squared_norm() const {
    double s = 0.0;
    for (const auto& c : data_) s += std::norm(c);
    return s;
}

TwoModeDensity::TwoModeDensity(int total_max)
    : total_max_(total_max), dim_(pair_count(total_max)) {
    if (total_max < 0) throw DomainError("TwoModeDensity: negative total_max");
    data_.assign(static_cast<size_t>(dim_) * dim_, {0.0, 0.0});
}

TwoModeDensity TwoModeDensity::product(const DensityMatrix& mode1,
                                       const DensityMatrix& mode2) {
    TwoModeDensity out(mode1.n_max() + mode2.n_max());
    for (int n1 = 0; n1 <= mode1.n_max(); ++n1)
        for (int n2 = 0; n2 <= mode2.n_max(); ++n2)
            for (int n1p = 0; n1p <= mode1.n_max(); ++n1p)
                for (int n2p = 0; n2p <= mode2.n_max(); ++n2p)
                    out.ent(n1, n2, n1p, n2p) =
                        mode1.at(n1, n1p) * mode2.at(n2, n2p);
    return out;
}

TwoModeDensity TwoModeDensity::from_pure(const TwoModeState& psi) {
    TwoModeDensity out(psi.total_max());
    for (int a = 0; a <= psi.total_max(); ++a)
        for (int n1 = 0; n1 <= a; ++n1)
            for (int b = 0; b <= psi.total_max(); ++b)
                for (int n1p = 0; n1p <= b; ++n1p)
                    out.ent(n1, a - n1, n1p, b - n1p) =
                        psi.amplitude(n1, a - n1) *
                        std::conj(psi.amplitude(n1p, b - n1p));
    return out;
}

complexd TwoModeDensity::entry(int n1, int n2, int n1p, int n2p) const {
    if (n1 < 0 || n2 < 0 || n1p < 0 || n2p < 0 || n1 + n2 > total_max_ ||
        n1p + n2p > total_max_)
        return {0.0, 0.0};
    return data_[static_cast<size_t>(pair_index(n1, n2)) * dim_ +
                 pair_index(n1p, n2p)];
}

complexd& TwoModeDensity::ent(int n1, int n2, int n1p, int n2p) {
    if (n1 < 0 || n2 < 0 || n1p < 0 || n2p < 0 || n1 + n2 > total_max_ ||
        n1p + n2p > total_max_)
        throw DomainError("TwoModeDensity: index out of range");
    return data_[static_cast<size_t>(pair_index(n1, n2)) * dim_ +
                 pair_index(n1p, n2p)];
}

complexd TwoModeDensity::trace() const {
    complexd t{0.0, 0.0};
    for (int i = 0; i < dim_; ++i)
        t += data_[static_cast<size_t>(i) * dim_ + i];
    return t;
}

} // namespace catgen
