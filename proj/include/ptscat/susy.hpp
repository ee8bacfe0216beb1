#ifndef PTSCAT_SUSY_HPP
#define PTSCAT_SUSY_HPP

// Factorization H = A+ A- + eps with A-+ = -+d/dx + W, W = psi'/psi, built
// on a nodeless eigenfunction psi of energy eps.  The partner Hamiltonian
// with potential W^2 - W' + eps has 1/psi as an extra eigenfunction at eps.

#include <cmath>
#include <string>
#include <utility>

#include "complexfn.hpp"
#include "errors.hpp"
#include "poles.hpp"
#include "scattering.hpp"
#include "states.hpp"

namespace ptscat {

namespace detail {

// |P(s)| relative to sum |p_i| |s|^i: O(1) away from zeros of P, rounding
// level on them.  Independent of the exponential envelope of the state.
inline double local_node_ratio(const Polynomial& p, double x)
{
    const double s = std::sinh(x);
    const double scale = poly::eval_abs(p, s);
    return scale == 0.0 ? 0.0 : std::abs(poly::eval(p, s)) / scale;
}

// Smallest local_node_ratio on [lo, hi], by sampling and golden-section
// refinement of every interior sample minimum.
inline std::pair<double, double> min_node_ratio(const Polynomial& p, double lo, double hi, int samples)
{
    const double h = (hi - lo) / samples;
    double best_x = lo;
    double best = local_node_ratio(p, lo);
    double prev2 = best, prev1 = local_node_ratio(p, lo + h);
    auto consider = [&](double x, double r) {
        if (r < best) {
            best = r;
            best_x = x;
        }
    };
    consider(lo + h, prev1);
    for (int i = 2; i <= samples; ++i) {
        const double x = lo + i * h;
        const double cur = local_node_ratio(p, x);
        consider(x, cur);
        if (prev1 <= prev2 && prev1 <= cur) {
            constexpr double inv_phi = 0.6180339887498949;
            double a = x - 2.0 * h, b = x;
            double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
            double fc = local_node_ratio(p, c), fd = local_node_ratio(p, d);
            for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                if (fc < fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = local_node_ratio(p, c);
                }
                else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = local_node_ratio(p, d);
                }
            }
            consider(c, fc);
            consider(d, fd);
        }
        prev2 = prev1;
        prev1 = cur;
    }
    return {best_x, best};
}

} // namespace detail

/// Relative level below which a state value counts as a node.
inline constexpr double node_threshold = 1e-12;

class PartnerModel {
public:
    /// Half-width of the window screened for nodes at construction.
    static constexpr double node_window = 10.0;

    /// Model from an arbitrary form with its energy.  Validates that the form
    /// is an eigenfunction of the base Hamiltonian at eps, has no node on
    /// |x| <= node_window and that 1/form decays at both ends.
    static PartnerModel from_form(const PotentialSpec& base, SinhCoshForm factor, Complex epsilon)
    {
        if (factor.is_zero())
            throw InvalidArgument("PartnerModel: factor state is identically zero");
        const SinhCoshForm h = apply_hamiltonian(factor, base);
        const double dev = deviation(h, factor.scaled(epsilon));
        if (!(dev <= 1e-9))
            throw InvalidArgument("PartnerModel: factor state is not an eigenfunction at eps = "
                                  + detail::to_string(epsilon) + " (deviation " + std::to_string(dev) + ")");
        const auto [x, ratio] =
            detail::min_node_ratio(factor.coeffs(), -node_window, node_window, 20000);
        if (ratio < node_threshold)
            throw NodeError("PartnerModel: factor state has a node near x = " + std::to_string(x), x);
        if (!(factor.growth_rate() > 0.0))
            throw DomainError("PartnerModel: 1/psi is not square integrable (deg P + Re mu = "
                              + std::to_string(factor.growth_rate()) + " <= 0)");
        return PartnerModel(base, std::move(factor), epsilon);
    }

    /// Model from state n of a series, scaled so that psi(0) = 1.
    static PartnerModel from_state(const PotentialSpec& base, int series, int n)
    {
        const SinhCoshForm f = state(base, series, n);
        const Complex p0 = f.coeffs().front();
        if (std::abs(p0) < node_threshold * detail::max_abs(f.coeffs()))
            throw NodeError("PartnerModel: state (" + std::to_string(series) + ", " + std::to_string(n)
                                + ") has a node at x = 0",
                            0.0);
        return from_form(base, f.scaled(1.0 / p0), state_energy(base, series, n));
    }

    const PotentialSpec& base() const noexcept { return base_; }
    Complex base_lambda() const noexcept { return base_.lambda(); }
    const SinhCoshForm& factor_state() const noexcept { return factor_; }
    Complex epsilon() const noexcept { return epsilon_; }

    /// Base-state value, rejecting nodes by the local relative test.
    Complex factor_value(double x) const
    {
        if (detail::local_node_ratio(factor_.coeffs(), x) < node_threshold)
            throw NodeError("PartnerModel: factor state vanishes at x = " + std::to_string(x), x);
        return evaluate(factor_, x);
    }

    /// W and W' at x, both from exact polynomial derivatives:
    /// W = Q / (c P), W' = R / (c^2 P) - W^2.
    std::pair<Complex, Complex> superpotential_and_derivative(double x) const
    {
        const Polynomial& p = factor_.coeffs();
        if (detail::local_node_ratio(p, x) < node_threshold)
            throw NodeError("PartnerModel: factor state vanishes at x = " + std::to_string(x), x);
        const double s = std::sinh(x);
        const double c = std::cosh(x);
        const Complex ps = poly::eval(p, s);
        const Complex qs = poly::eval(q_, s);
        const Complex rs = poly::eval(r_, s);
        const Complex w = qs / (c * ps);
        return {w, rs / (c * c * ps) - w * w};
    }

private:
    PartnerModel(const PotentialSpec& base, SinhCoshForm factor, Complex epsilon)
        : base_(base), factor_(std::move(factor)), epsilon_(epsilon),
          q_(poly::cosh_d(factor_.coeffs(), factor_.mu())), r_(poly::cosh_d(q_, factor_.mu() - 1.0))
    {
    }

    PotentialSpec base_;
    SinhCoshForm factor_;
    Complex epsilon_;
    Polynomial q_;  // psi'  = q(s) c^(mu - 1)
    Polynomial r_;  // psi'' = r(s) c^(mu - 2)
};

/// W = psi'/psi.
inline Complex superpotential(const PartnerModel& m, double x)
{
    return m.superpotential_and_derivative(x).first;
}

/// |W^2 + W' + eps - V|; zero up to rounding for a valid model.
inline double factorization_residual(const PartnerModel& m, double x)
{
    const auto [w, dw] = m.superpotential_and_derivative(x);
    return std::abs(w * w + dw + m.epsilon() - potential_value(m.base(), x));
}

/// W^2 - W' + eps.
inline Complex partner_potential(const PartnerModel& m, double x)
{
    const auto [w, dw] = m.superpotential_and_derivative(x);
    return w * w - dw + m.epsilon();
}

/// 1/psi, eigenfunction of the partner Hamiltonian at eps.
inline Complex partner_ground_state(const PartnerModel& m, double x)
{
    return 1.0 / m.factor_value(x);
}

/// A- phi = -phi' + W phi for a base eigenfunction phi; an eigenfunction of
/// the partner Hamiltonian with the same energy (zero when phi is psi).
inline Complex intertwine_state(const PartnerModel& m, const SinhCoshForm& bound, double x)
{
    const Complex w = superpotential(m, x);
    return -evaluate(derivative(bound), x) + w * evaluate(bound, x);
}

} // namespace ptscat

#endif // PTSCAT_SUSY_HPP
