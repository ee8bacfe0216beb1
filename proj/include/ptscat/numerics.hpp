#ifndef PTSCAT_NUMERICS_HPP
#define PTSCAT_NUMERICS_HPP

// Independent numerical machinery used to verify the closed forms:
// finite-difference Hamiltonian residuals, Numerov integration and Simpson
// quadrature on uniform grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace ptscat {

using Complex = std::complex<double>;

/// Uniform grid x_min, x_min + step, ..., up to x_max (inclusive when
/// (x_max - x_min)/step is an integer).
class Grid {
public:
    static constexpr std::size_t min_nodes = 16;

    Grid(double x_min, double x_max, double step) : x_min_(x_min), step_(step)
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw InvalidArgument("Grid: step must be positive");
        if (!(x_max > x_min))
            throw InvalidArgument("Grid: x_max must exceed x_min");
        const double span = (x_max - x_min) / step;
        count_ = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        if (count_ < min_nodes)
            throw InvalidArgument("Grid: fewer than 16 nodes");
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return node(count_ - 1); }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return count_; }
    double node(std::ptrdiff_t i) const noexcept { return x_min_ + static_cast<double>(i) * step_; }

private:
    double x_min_;
    double step_;
    std::size_t count_;
};

/// Central difference used for psi'' in fd_hamiltonian_residual.
enum class FdStencil {
    ThreePoint,  ///< (psi[-1] - 2 psi[0] + psi[1]) / h^2, second order
    FivePoint,   ///< (-psi[-2] + 16 psi[-1] - 30 psi[0] + 16 psi[1] - psi[2]) / 12 h^2, fourth order
};

/// max_i |-D2 psi + V psi - E psi| / max(max_i |E psi|, 1e-30), with D2 the
/// central second difference of the chosen stencil.  psi is sampled one
/// (three-point) or two (five-point) steps beyond each end so every grid
/// node gets a full stencil.
template <typename PotentialFn, typename PsiFn>
double fd_hamiltonian_residual(PotentialFn&& potential, PsiFn&& psi, Complex energy, const Grid& grid,
                               FdStencil stencil = FdStencil::ThreePoint)
{
    constexpr double floor = 1e-30;
    const double h = grid.step();
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    const std::ptrdiff_t pad = stencil == FdStencil::ThreePoint ? 1 : 2;
    std::vector<Complex> v(static_cast<std::size_t>(n + 2 * pad));
    for (std::ptrdiff_t i = -pad; i < n + pad; ++i)
        v[static_cast<std::size_t>(i + pad)] = psi(grid.node(i));
    auto at = [&](std::ptrdiff_t i) { return v[static_cast<std::size_t>(i + pad)]; };

    double worst = 0.0;
    double scale = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const Complex d2 = stencil == FdStencil::ThreePoint
                               ? (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h)
                               : (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) - at(i - 2))
                                     / (12.0 * h * h);
        const Complex cur = at(i);
        const Complex res = -d2 + Complex(potential(grid.node(i))) * cur - energy * cur;
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, std::abs(energy * cur));
    }
    return worst / std::max(scale, floor);
}

/// Numerov integration of psi'' = (V - E) psi across the grid, starting
/// from psi(node 0) = start0 and psi(node 1) = start1.
template <typename PotentialFn>
std::vector<Complex> numerov_integrate(PotentialFn&& potential, double energy, const Grid& grid,
                                       Complex start0, Complex start1)
{
    const double h2 = grid.step() * grid.step();
    const std::size_t n = grid.size();
    std::vector<double> g(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = energy - static_cast<double>(potential(grid.node(static_cast<std::ptrdiff_t>(i))));
        worst = std::max(worst, std::abs(g[i]));
    }
    if (h2 * worst >= 0.1)
        throw InvalidArgument("numerov_integrate: step too coarse (step^2 max|E - V| >= 0.1)");

    std::vector<Complex> y(n);
    y[0] = start0;
    y[1] = start1;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double fm = 1.0 + h2 * g[i - 1] / 12.0;
        const double f0 = 1.0 - 5.0 * h2 * g[i] / 12.0;
        const double fp = 1.0 + h2 * g[i + 1] / 12.0;
        y[i + 1] = (2.0 * f0 * y[i] - fm * y[i - 1]) / fp;
    }
    return y;
}

/// Composite Simpson integral of |psi|^2 over the grid (3/8 rule on the
/// last panel when the interval count is odd).
template <typename PsiFn>
double quadrature_l2(PsiFn&& psi, const Grid& grid)
{
    const std::size_t n = grid.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = std::norm(Complex(psi(grid.node(static_cast<std::ptrdiff_t>(i)))));
    const double h = grid.step();
    const std::size_t intervals = n - 1;
    const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    double sum = 0.0;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
        sum += f[i] + 4.0 * f[i + 1] + f[i + 2];
    sum *= h / 3.0;
    if (simpson_end != intervals) {
        const std::size_t i = simpson_end;
        sum += 3.0 * h / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
    }
    return sum;
}

} // namespace ptscat

#endif // PTSCAT_NUMERICS_HPP
