#pragma once

#include "catgen/fock.hpp"

#include <functional>
#include <string>
#include <vector>

namespace catgen {

/// Rectangular phase-space raster, endpoints inclusive, row-major with
/// the x index outermost: values[ix * n_p + ip]. For quadrature rasters
/// the second axis carries the phase phi instead of p.
struct Grid2D {
    double x_min = 0.0, x_max = 0.0;
    double p_min = 0.0, p_max = 0.0;
    int n_x = 0, n_p = 0;
    std::vector<double> values;

    double x_at(int ix) const;
    double p_at(int ip) const;
    double& at(int ix, int ip);
    double at(int ix, int ip) const;
};

/// p(x, phi) = sum_{n n'} rho_{n n'} e^{-i (n - n') phi} u_n(x) u_{n'}(x)
/// with the oscillator functions u_n evaluated by their stable
/// recurrence.
double quad_dist_numeric(const DensityMatrix& rho, double x, double phi);

/// Wigner transform of rho via the closed number-basis kernel
/// (associated Laguerre polynomials); normalized to integrate to 1.
double wigner_numeric(const DensityMatrix& rho, double x, double p);

/// <alpha|rho|alpha> / (2 pi) with alpha = (x + i p) / sqrt(2).
double husimi_numeric(const DensityMatrix& rho, double x, double p);

/// Evaluate f over the raster, rows split across threads
/// (0 = hardware concurrency). The result does not depend on the
/// thread count.
Grid2D eval_grid(const std::function<double(double, double)>& f,
                 double x_min, double x_max, double p_min, double p_max,
                 int n_x, int n_p, int threads = 0);

/// Plain Riemann sum: sum of all samples times the cell area.
double grid_sum(const Grid2D& g);

/// CSV layout: a header naming the axis metadata, one row of metadata,
/// then n_x rows of n_p values, 17 significant digits.
void write_grid_csv(const std::string& path, const Grid2D& g);
Grid2D read_grid_csv(const std::string& path);

} // namespace catgen
