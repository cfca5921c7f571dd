#include "catgen/phasespace.hpp"

#include "catgen/errors.hpp"
#include "catgen/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace catgen {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double Grid2D::x_at(int ix) const {
    if (n_x < 2) return x_min;
    return x_min + (x_max - x_min) * ix / (n_x - 1);
}

double Grid2D::p_at(int ip) const {
    if (n_p < 2) return p_min;
    return p_min + (p_max - p_min) * ip / (n_p - 1);
}

double& Grid2D::at(int ix, int ip) {
    return values[static_cast<size_t>(ix) * n_p + ip];
}

double Grid2D::at(int ix, int ip) const {
    return values[static_cast<size_t>(ix) * n_p + ip];
}

double quad_dist_numeric(const DensityMatrix& rho, double x, double phi) {
    int d = rho.dim();
    if (d < 1) throw DomainError("quad_dist_numeric: empty density");
    std::vector<double> u = oscillator_functions(d - 1, x);
    double acc = 0.0;
    for (int n = 0; n < d; ++n) acc += rho.at(n, n).real() * u[n] * u[n];
    for (int n = 0; n < d; ++n) {
        for (int np = n + 1; np < d; ++np) {
            double ang = (np - n) * phi; // e^{-i(n-np) phi} = e^{+i(np-n) phi}
            complexd rot{std::cos(ang), std::sin(ang)};
            acc += 2.0 * (rho.at(n, np) * rot).real() * u[n] * u[np];
        }
    }
    return acc;
}

double wigner_numeric(const DensityMatrix& rho, double x, double p) {
    int d = rho.dim();
    if (d < 1) throw DomainError("wigner_numeric: empty density");
    double s2 = x * x + p * p;
    double t = 2.0 * s2;
    // laguerre_table[a][n] = L_n^{(a)}(t) for the difference a = m - n,
    // in extended precision: the polynomial values and the combining
    // prefactors overflow double separately but not together.
    std::vector<std::vector<long double>> lag(static_cast<size_t>(d));
    for (int a = 0; a < d; ++a) {
        auto& row = lag[static_cast<size_t>(a)];
        row.resize(static_cast<size_t>(d - a));
        if (row.empty()) continue;
        row[0] = 1.0L;
        if (row.size() > 1) row[1] = 1.0L + a - t;
        for (int n = 1; n + 1 < static_cast<int>(row.size()); ++n)
            row[n + 1] = ((2.0L * n + 1.0L + a - t) * row[n] -
                          (n + a) * row[n - 1]) /
                         (n + 1.0L);
    }
    complexd down{x, -p}; // sqrt(2) (x - i p) carries the phase
    double lbase = 0.5 * std::log(2.0 * std::max(s2, 1e-300));
    double phase = std::arg(down);
    long double acc = 0.0L;
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n <= m; ++n) {
            int a = m - n;
            complexd r = rho.at(m, n);
            if (r == complexd{0.0, 0.0}) continue;
            long double mag;
            if (a == 0) {
                mag = lag[0][static_cast<size_t>(n)];
            } else if (s2 == 0.0) {
                continue;
            } else {
                mag = lag[static_cast<size_t>(a)][static_cast<size_t>(n)] *
                      std::exp(static_cast<long double>(
                          a * lbase +
                          0.5 * (log_factorial(n) - log_factorial(m))));
            }
            long double sign = (n % 2 != 0) ? -1.0L : 1.0L;
            if (a == 0) {
                acc += sign * mag * r.real();
            } else {
                complexd dir{std::cos(a * phase), std::sin(a * phase)};
                // K_{mn} + K_{nm} rho_{nm} = 2 Re(rho_{mn} K_{mn})
                acc += 2.0L * sign * mag *
                       static_cast<long double>((r * dir).real());
            }
        }
    }
    return static_cast<double>(acc) / kPi * std::exp(-s2);
}

double husimi_numeric(const DensityMatrix& rho, double x, double p) {
    int d = rho.dim();
    if (d < 1) throw DomainError("husimi_numeric: empty density");
    complexd alpha = complexd(x, p) / std::sqrt(2.0);
    std::vector<complexd> v(static_cast<size_t>(d));
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d; ++n) v[n] = v[n - 1] * alpha / std::sqrt(1.0 * n);
    complexd acc{0.0, 0.0};
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
            acc += std::conj(v[m]) * rho.at(m, n) * v[n];
    return acc.real() / (2.0 * kPi);
}

Grid2D eval_grid(const std::function<double(double, double)>& f,
                 double x_min, double x_max, double p_min, double p_max,
                 int n_x, int n_p, int threads) {
    if (n_x < 1 || n_p < 1) throw DomainError("eval_grid: empty raster");
    Grid2D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.p_min = p_min;
    g.p_max = p_max;
    g.n_x = n_x;
    g.n_p = n_p;
    g.values.assign(static_cast<size_t>(n_x) * n_p, 0.0);
    int want = threads;
    if (want <= 0)
        want = static_cast<int>(std::thread::hardware_concurrency());
    if (want < 1) want = 1;
    want = std::min(want, n_x);

    auto run_rows = [&](int begin, int end) {
        for (int ix = begin; ix < end; ++ix) {
            double x = g.x_at(ix);
            for (int ip = 0; ip < n_p; ++ip)
                g.at(ix, ip) = f(x, g.p_at(ip));
        }
    };
    if (want == 1) {
        run_rows(0, n_x);
        return g;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(want));
    int chunk = (n_x + want - 1) / want;
    for (int t = 0; t < want; ++t) {
        int begin = t * chunk;
        int end = std::min(n_x, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_rows, begin, end);
    }
    for (auto& th : pool) th.join();
    return g;
}

double grid_sum(const Grid2D& g) {
    if (g.n_x < 2 || g.n_p < 2)
        throw DomainError("grid_sum: raster too small");
    double dx = (g.x_max - g.x_min) / (g.n_x - 1);
    double dp = (g.p_max - g.p_min) / (g.n_p - 1);
    long double acc = 0.0L;
    for (double v : g.values) acc += v;
    return static_cast<double>(acc) * dx * dp;
}

void write_grid_csv(const std::string& path, const Grid2D& g) {
    std::ofstream out(path);
    if (!out) throw DomainError("write_grid_csv: cannot open " + path);
    out << "x_min,x_max,p_min,p_max,n_x,n_p\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d,%d\n",
                  g.x_min, g.x_max, g.p_min, g.p_max, g.n_x, g.n_p);
    out << buf;
    for (int ix = 0; ix < g.n_x; ++ix) {
        for (int ip = 0; ip < g.n_p; ++ip) {
            std::snprintf(buf, sizeof(buf), "%.17g", g.at(ix, ip));
            out << buf << (ip + 1 < g.n_p ? "," : "\n");
        }
    }
}

Grid2D read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("read_grid_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x_min,", 0) != 0)
        throw DomainError("read_grid_csv: missing header in " + path);
    if (!std::getline(in, line))
        throw DomainError("read_grid_csv: missing metadata row");
    Grid2D g;
    {
        std::istringstream row(line);
        std::string f;
        auto next = [&]() {
            if (!std::getline(row, f, ','))
                throw DomainError("read_grid_csv: short metadata row");
            return f;
        };
        g.x_min = std::stod(next());
        g.x_max = std::stod(next());
        g.p_min = std::stod(next());
        g.p_max = std::stod(next());
        g.n_x = std::stoi(next());
        g.n_p = std::stoi(next());
    }
    if (g.n_x < 1 || g.n_p < 1)
        throw DomainError("read_grid_csv: bad raster shape");
    g.values.reserve(static_cast<size_t>(g.n_x) * g.n_p);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f;
        while (std::getline(row, f, ','))
            g.values.push_back(std::stod(f));
    }
    if (g.values.size() != static_cast<size_t>(g.n_x) * g.n_p)
        throw DomainError("read_grid_csv: value count mismatch");
    return g;
}

} // namespace catgen
