#include "doctest.h"

#include "catgen/analytic.hpp"
#include "catgen/beamsplitter.hpp"
#include "catgen/errors.hpp"
#include "catgen/fock.hpp"
#include "catgen/numerics.hpp"
#include "catgen/phasespace.hpp"

#include "oracles.hpp"

#include <cmath>
#include <complex>

using namespace catgen;

namespace {

const complexd kComplexKp{0.35, 0.2};

DensityMatrix cat_density(const CatParams& p) {
    return DensityMatrix::from_pure(analytic_state(p, analytic_auto_n_max(p)));
}

} // namespace

TEST_CASE("coefficient special cases") {
    // adding n0 photons to vacuum leaves sqrt(n0!) at the bottom level
    for (int n0 : {0, 1, 2, 5}) {
        complexd c = coeff_added(n0, n0, kComplexKp);
        CHECK(std::abs(c - std::sqrt(std::exp(log_factorial(n0)))) < 1e-12);
    }
    // single subtraction puts kappa' on the one-photon level
    CHECK(std::abs(coeff_subtracted(1, 1, kComplexKp) - kComplexKp) < 1e-15);
    // parity selection: only every second level is populated
    CHECK(coeff_added(3, 2, kComplexKp) == complexd(0.0, 0.0));
    CHECK(coeff_subtracted(2, 1, kComplexKp) == complexd(0.0, 0.0));
    CHECK(coeff_subtracted(0, 2, kComplexKp) != complexd(0.0, 0.0));
}

TEST_CASE("normalization constants equal coefficient power sums") {
    for (complexd kp : {complexd(0.7, 0.0), kComplexKp, complexd(-0.45, 0.3)}) {
        for (int c = 0; c <= 5; ++c) {
            long double sum_add = 0.0L, sum_sub = 0.0L;
            for (int n = 0; n <= 400; ++n) {
                sum_add += std::norm(coeff_added(n, c, kp));
                sum_sub += std::norm(coeff_subtracted(n, c, kp));
            }
            CHECK((double)sum_add ==
                  doctest::Approx(norm_added(c, std::abs(kp)))
                      .epsilon(1e-10));
            CHECK((double)sum_sub ==
                  doctest::Approx(norm_subtracted(c, std::abs(kp)))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("single-subtraction normalization closed form") {
    for (double a : {0.3, 0.5, 0.7}) {
        double z = a * a;
        CHECK(norm_subtracted(1, a) ==
              doctest::Approx(z / std::pow(1.0 - z, 1.5)).epsilon(1e-13));
    }
    CHECK(norm_subtracted(0, 0.4) ==
          doctest::Approx(1.0 / std::sqrt(1.0 - 0.16)).epsilon(1e-13));
}

TEST_CASE("event probabilities: frozen reference values") {
    BeamSplitterParams bs = bs_from_transmittance(0.9, 0.0, 0.0);
    SqueezeParam kappa{complexd(-7.0 / 9.0, 0.0)};

    const double sub_ref[9] = {0.88013115, 0.093957356, 0.020265312,
                               0.0043486512, 0.00099269469, 0.00023201844,
                               5.5221966e-5, 1.3307084e-5, 3.2367313e-6};
    for (int m = 0; m <= 8; ++m)
        CHECK(prob_subtracted(m, kappa, bs) ==
              doctest::Approx(sub_ref[m]).epsilon(1e-7));

    const double add_ref[5] = {0.880131149313, 0.172574735159,
                               0.0421285382889, 0.0115116172819,
                               0.00333052742581};
    for (int n0 = 0; n0 <= 4; ++n0)
        CHECK(prob_added(n0, kappa, bs) ==
              doctest::Approx(add_ref[n0]).epsilon(1e-9));
}

TEST_CASE("event probabilities against brute-force series") {
    for (double mag : {0.5, 0.77777777777777779}) {
        for (double tsq : {0.5, 0.9}) {
            SqueezeParam kappa{complexd(mag, 0.0)};
            BeamSplitterParams bs = bs_from_transmittance(tsq, 0.0, 0.0);
            double z = mag * mag;
            for (int c = 0; c <= 4; ++c) {
                CHECK(prob_added(c, kappa, bs) ==
                      doctest::Approx(oracle::series_prob_added(c, z, tsq))
                          .epsilon(1e-10));
                CHECK(prob_subtracted(c, kappa, bs) ==
                      doctest::Approx(
                          oracle::series_prob_subtracted(c, z, tsq))
                          .epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("subtraction probabilities form a distribution") {
    SqueezeParam kappa{complexd(0.7, 0.5)};
    BeamSplitterParams bs = bs_from_transmittance(0.85, 0.0, 0.0);
    long double total = 0.0L;
    for (int m = 0; m <= 80; ++m) total += prob_subtracted(m, kappa, bs);
    CHECK(std::abs((double)total - 1.0) < 1e-10);
}

TEST_CASE("probabilities stay finite on a fully reflecting splitter") {
    SqueezeParam kappa{complexd(0.6, 0.0)};
    BeamSplitterParams bs = bs_from_transmittance(0.0, 0.0, 0.0);
    CHECK(prob_subtracted(0, kappa, bs) ==
          doctest::Approx(std::sqrt(1.0 - 0.36)).epsilon(1e-12));
    CHECK(std::isfinite(prob_subtracted(2, kappa, bs)));
}

TEST_CASE("analytic states are normalized and parity-pure") {
    for (auto kind : {CatKind::added, CatKind::subtracted}) {
        for (int c : {1, 2, 3}) {
            CatParams p(complexd(-0.7, 0.0), c, kind);
            FockVector psi = analytic_state(p, analytic_auto_n_max(p));
            CHECK(std::abs(squared_norm(psi) - 1.0) < 1e-10);
            int parity = c % 2;
            for (int n = 0; n <= psi.n_max(); ++n)
                if (n % 2 != parity)
                    CHECK(std::abs(psi.amplitude(n)) == 0.0);
        }
    }
}

TEST_CASE("quadrature distributions normalize to one") {
    for (auto kind : {CatKind::added, CatKind::subtracted}) {
        for (complexd kp :
             {complexd(-0.7, 0.0), complexd(0.35, 0.2)}) {
            CatParams p(kp, 3, kind);
            for (double phi : {0.0, 0.7, M_PI / 2}) {
                // the window must cover the anti-squeezed axis, which
                // still carries ~1e-8 of mass beyond |x| = 12
                double total = adaptive_simpson(
                    [&](double x) { return quad_dist(p, x, phi); }, -16.0,
                    16.0, 1e-10);
                CHECK(std::abs(total - 1.0) < 1e-8);
            }
        }
    }
}

TEST_CASE("quadrature distributions match the density-matrix route") {
    for (auto kind : {CatKind::added, CatKind::subtracted}) {
        for (complexd kp : {complexd(-0.7, 0.0), kComplexKp}) {
            CatParams p(kp, 2, kind);
            DensityMatrix rho = cat_density(p);
            double dev = 0.0;
            for (double x = -4.0; x <= 4.0; x += 0.4)
                for (double phi : {0.0, 0.9, M_PI / 2})
                    dev = std::max(dev,
                                   std::abs(quad_dist(p, x, phi) -
                                            quad_dist_numeric(rho, x, phi)));
            CHECK(dev < 1e-8);
        }
    }
}

TEST_CASE("wigner closed form matches the density-matrix route") {
    for (auto kind : {CatKind::added, CatKind::subtracted}) {
        for (complexd kp : {complexd(-0.7, 0.0), kComplexKp}) {
            CatParams p(kp, 2, kind);
            DensityMatrix rho = cat_density(p);
            double dev = 0.0;
            for (int ix = 0; ix <= 40; ++ix)
                for (int ip = 0; ip <= 40; ++ip) {
                    double x = -4.0 + 0.2 * ix;
                    double pp = -4.0 + 0.2 * ip;
                    dev = std::max(dev, std::abs(wigner(p, x, pp) -
                                                 wigner_numeric(rho, x, pp)));
                }
            CHECK(dev < 1e-6);
        }
    }
}

TEST_CASE("husimi closed form matches the overlap route") {
    for (auto kind : {CatKind::added, CatKind::subtracted}) {
        for (complexd kp : {complexd(-0.7, 0.0), kComplexKp}) {
            CatParams p(kp, 3, kind);
            DensityMatrix rho = cat_density(p);
            double dev = 0.0;
            for (double x = -4.0; x <= 4.0; x += 0.5)
                for (double pp = -4.0; pp <= 4.0; pp += 0.5)
                    dev = std::max(dev, std::abs(husimi(p, x, pp) -
                                                 husimi_numeric(rho, x, pp)));
            CHECK(dev < 1e-8);
        }
    }
}

TEST_CASE("wigner origin values flip sign with the level parity") {
    CatParams sub1(complexd(-0.7, 0.0), 1, CatKind::subtracted);
    CatParams sub3(complexd(-0.7, 0.0), 3, CatKind::subtracted);
    CatParams add1(complexd(-0.7, 0.0), 1, CatKind::added);
    CatParams add2(complexd(-0.7, 0.0), 2, CatKind::added);
    double inv_pi = 1.0 / M_PI;
    CHECK(wigner(sub1, 0.0, 0.0) == doctest::Approx(-inv_pi).epsilon(1e-12));
    CHECK(wigner(sub3, 0.0, 0.0) == doctest::Approx(-inv_pi).epsilon(1e-12));
    CHECK(wigner(add1, 0.0, 0.0) == doctest::Approx(-inv_pi).epsilon(1e-12));
    CHECK(wigner(add2, 0.0, 0.0) == doctest::Approx(inv_pi).epsilon(1e-12));
    CHECK(wigner(sub1, 0.0, 0.0) < 0.0);
}

TEST_CASE("husimi stays nonnegative and vanishes at the origin") {
    for (auto kind : {CatKind::added, CatKind::subtracted}) {
        CatParams p(complexd(-0.7, 0.0), 3, kind);
        double least = 1.0;
        for (double x = -3.0; x <= 3.0; x += 0.3)
            for (double pp = -3.0; pp <= 3.0; pp += 0.3)
                least = std::min(least, husimi(p, x, pp));
        CHECK(least >= 0.0);
        CHECK(husimi(p, 0.0, 0.0) == 0.0);
    }
}

TEST_CASE("wigner marginals recover the quadrature distribution") {
    CatParams p(complexd(-0.7, 0.0), 2, CatKind::subtracted);
    for (double x : {0.0, 0.5, 1.3}) {
        // marginal over the conjugate axis at phi = 0
        double m0 = adaptive_simpson(
            [&](double pp) { return wigner(p, x, pp); }, -12.0, 12.0, 1e-9);
        CHECK(m0 == doctest::Approx(quad_dist(p, x, 0.0)).epsilon(1e-6));
        // marginal over x recovers the rotated slice at phi = pi/2
        double m1 = adaptive_simpson(
            [&](double xx) { return wigner(p, xx, x); }, -12.0, 12.0, 1e-9);
        CHECK(m1 ==
              doctest::Approx(quad_dist(p, x, M_PI / 2)).epsilon(1e-6));
    }
}

TEST_CASE("mean photon number agrees across all three representations") {
    CatParams p(complexd(-0.7, 0.0), 2, CatKind::subtracted);
    double direct = mean_photon_number(analytic_state(p, 120));

    auto xsq = [&](double phi) {
        return adaptive_simpson(
            [&](double x) { return x * x * quad_dist(p, x, phi); }, -14.0,
            14.0, 1e-11);
    };
    double from_quad = 0.5 * (xsq(0.0) + xsq(M_PI / 2) - 1.0);
    CHECK(from_quad == doctest::Approx(direct).epsilon(1e-6));

    double wig_moment = 0.0, hus_moment = 0.0;
    double h = 0.05;
    for (double x = -12.0; x <= 12.0; x += h)
        for (double pp = -12.0; pp <= 12.0; pp += h) {
            double r2 = x * x + pp * pp;
            wig_moment += wigner(p, x, pp) * r2 * h * h;
            hus_moment += husimi(p, x, pp) * r2 * h * h;
        }
    CHECK(0.5 * (wig_moment - 1.0) == doctest::Approx(direct).epsilon(1e-5));
    CHECK(0.5 * hus_moment - 1.0 == doctest::Approx(direct).epsilon(1e-5));
}

TEST_CASE("zero squeezing collapses to bare Fock states") {
    CatParams add2(complexd(0.0, 0.0), 2, CatKind::added);
    FockVector psi = analytic_state(add2, 10);
    CHECK(std::abs(std::abs(psi.amplitude(2)) - 1.0) < 1e-12);
    auto u = oscillator_functions(2, 0.7);
    CHECK(quad_dist(add2, 0.7, 0.3) ==
          doctest::Approx(u[2] * u[2]).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(CatParams(complexd(1.0, 0.2), 1, CatKind::added),
                    DomainError);
    CHECK_THROWS_AS(CatParams(complexd(0.5, 0.0), -1, CatKind::added),
                    DomainError);
}

TEST_CASE("effective squeezing after transmission") {
    SqueezeParam kappa{complexd(-7.0 / 9.0, 0.0)};
    BeamSplitterParams bs = bs_from_transmittance(0.9, 0.0, 0.0);
    CHECK(std::abs(effective_kappa(kappa, bs) - complexd(-0.7, 0.0)) <
          1e-14);
    BeamSplitterParams phased = bs_from_transmittance(0.9, 0.25, 0.0);
    complexd expected = complexd(-7.0 / 9.0, 0.0) * 0.9 *
                        std::exp(complexd(0.0, 0.5));
    CHECK(std::abs(effective_kappa(kappa, phased) - expected) < 1e-14);
}
