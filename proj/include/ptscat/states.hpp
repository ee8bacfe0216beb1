#ifndef PTSCAT_STATES_HPP
#define PTSCAT_STATES_HPP

// Exact eigenfunctions of the Poschl-Teller Hamiltonian in the family
//
//     f(x) = P(sinh x) (cosh x)^mu,
//
// generated from the seeds (cosh x)^lambda and (cosh x)^(1-lambda) by the
// first-order ladder operators
//
//     B-_{j,n}   = -cosh x d/dx + kappa_j(n)   sinh x
//     B+_{j,n}   =  cosh x d/dx + kappa_j(n-1) sinh x,    kappa_j(n) = i k_j(n).
//
// Everything is exact polynomial arithmetic in s = sinh x using the closed
// rule cosh x d/dx [P(s) c^mu] = [P'(s)(1 + s^2) + mu s P(s)] c^mu.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "complexfn.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "poles.hpp"
#include "scattering.hpp"

namespace ptscat {

/// Coefficients of P in ascending powers of s = sinh x.
using Polynomial = std::vector<Complex>;

namespace poly {

inline void trim(Polynomial& p, double rel_tol = 1e-13)
{
    double scale = 0.0;
    for (const Complex& c : p) scale = std::max(scale, std::abs(c));
    while (!p.empty() && std::abs(p.back()) <= rel_tol * scale) p.pop_back();
    if (scale == 0.0) p.clear();
}

inline Polynomial add(const Polynomial& a, const Polynomial& b)
{
    Polynomial out(std::max(a.size(), b.size()), Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline Polynomial scale(Polynomial p, Complex f)
{
    for (Complex& c : p) c *= f;
    return p;
}

inline Polynomial derivative(const Polynomial& p)
{
    if (p.size() <= 1)
        return {};
    Polynomial out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
    return out;
}

inline Polynomial times_s(const Polynomial& p)
{
    if (p.empty())
        return {};
    Polynomial out(p.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i];
    return out;
}

/// p (1 + s^2)
inline Polynomial times_cosh2(const Polynomial& p)
{
    if (p.empty())
        return {};
    Polynomial out(p.size() + 2, Complex(0.0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += p[i];
        out[i + 2] += p[i];
    }
    return out;
}

inline Complex eval(const Polynomial& p, double s)
{
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
    return acc;
}

/// sum |p_i| |s|^i, the natural scale for cancellation tests.
inline double eval_abs(const Polynomial& p, double s)
{
    double acc = 0.0;
    const double as = std::abs(s);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * as + std::abs(*it);
    return acc;
}

/// P'(1 + s^2) + mu s P
inline Polynomial cosh_d(const Polynomial& p, Complex mu)
{
    return add(times_cosh2(derivative(p)), scale(times_s(p), mu));
}

} // namespace poly

/// f(x) = P(sinh x) (cosh x)^mu.  Immutable; an empty coefficient list is the
/// zero function.
class SinhCoshForm {
public:
    SinhCoshForm() = default;
    SinhCoshForm(Polynomial coeffs, Complex mu) : coeffs_(std::move(coeffs)), mu_(mu)
    {
        poly::trim(coeffs_);
    }

    const Polynomial& coeffs() const noexcept { return coeffs_; }
    Complex mu() const noexcept { return mu_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree of P; -1 for the zero function.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }

    SinhCoshForm scaled(Complex f) const { return {poly::scale(coeffs_, f), mu_}; }
    SinhCoshForm monic() const
    {
        if (is_zero())
            return *this;
        SinhCoshForm out = scaled(1.0 / leading());
        out.coeffs_.back() = 1.0;
        return out;
    }

    /// Exponential growth rate of |f| for |x| -> infinity: deg P + Re mu.
    double growth_rate() const { return degree() + mu_.real(); }

private:
    Polynomial coeffs_;
    Complex mu_{0.0};
};

/// Value of P(sinh x) exp(mu log cosh x).  Throws OverflowError when the
/// magnitude leaves the double range.
inline Complex evaluate(const SinhCoshForm& f, double x)
{
    if (f.is_zero())
        return 0.0;
    const double s = std::sinh(x);
    // log cosh x = |x| + log1p(e^{-2|x|}) - log 2, accurate for every x
    const double ax = std::abs(x);
    const double log_cosh = ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
    const Complex p = poly::eval(f.coeffs(), s);
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
        throw OverflowError("evaluate: polynomial overflow at x = " + std::to_string(x));
    if (p == 0.0)
        return 0.0;
    const double log_mag = std::log(std::abs(p)) + f.mu().real() * log_cosh;
    if (log_mag > 709.0)
        throw OverflowError("evaluate: |f(x)| exceeds the double range at x = " + std::to_string(x));
    return p * std::exp(f.mu() * log_cosh);
}

/// f' as a form: Q(s) c^(mu - 1) with Q = P'(1 + s^2) + mu s P.
inline SinhCoshForm derivative(const SinhCoshForm& f)
{
    return {poly::cosh_d(f.coeffs(), f.mu()), f.mu() - 1.0};
}

/// H f = -f'' - lambda(lambda - 1) sech^2 x f, exactly, at exponent mu - 2.
inline SinhCoshForm apply_hamiltonian(const SinhCoshForm& f, const PotentialSpec& spec)
{
    const Polynomial q = poly::cosh_d(f.coeffs(), f.mu());
    const Polynomial r = poly::cosh_d(q, f.mu() - 1.0);
    const Complex strength = spec.lambda() * (spec.lambda() - 1.0);
    return {poly::add(poly::scale(r, -1.0), poly::scale(f.coeffs(), -strength)), f.mu() - 2.0};
}

namespace detail {

// Bring both forms to the smaller exponent by multiplying the other by
// (1 + s^2)^m; requires the exponents to differ by an even integer.
inline std::pair<Polynomial, Polynomial> align(const SinhCoshForm& a, const SinhCoshForm& b)
{
    const Complex diff = a.mu() - b.mu();
    const double half = std::round(diff.real() / 2.0);
    if (std::abs(diff - 2.0 * half) > 1e-12 * std::max(1.0, std::abs(a.mu())))
        throw InvalidArgument("SinhCoshForm: exponents " + to_string(a.mu()) + " and "
                              + to_string(b.mu()) + " do not differ by an even integer");
    Polynomial pa = a.coeffs();
    Polynomial pb = b.coeffs();
    for (int i = 0; i < half; ++i) pa = poly::times_cosh2(pa);
    for (int i = 0; i < -half; ++i) pb = poly::times_cosh2(pb);
    return {std::move(pa), std::move(pb)};
}

inline double max_abs(const Polynomial& p)
{
    double m = 0.0;
    for (const Complex& c : p) m = std::max(m, std::abs(c));
    return m;
}

} // namespace detail

/// Relative coefficient deviation between two forms after exponent
/// alignment: max |a_i - b_i| / max(max |a_i|, max |b_i|).  Zero when the
/// forms represent the same function.
inline double deviation(const SinhCoshForm& a, const SinhCoshForm& b)
{
    if (a.is_zero() && b.is_zero())
        return 0.0;
    const auto [pa, pb] = detail::align(a, b);
    const double scale = std::max(detail::max_abs(pa), detail::max_abs(pb));
    double worst = 0.0;
    for (std::size_t i = 0; i < std::max(pa.size(), pb.size()); ++i) {
        const Complex ca = i < pa.size() ? pa[i] : Complex(0.0);
        const Complex cb = i < pb.size() ? pb[i] : Complex(0.0);
        worst = std::max(worst, std::abs(ca - cb));
    }
    return worst / scale;
}

/// Best proportionality constant c with a ~ c b, and the residual deviation
/// deviation(a, c b).
struct Proportionality {
    Complex factor;
    double deviation;
};

inline Proportionality proportionality(const SinhCoshForm& a, const SinhCoshForm& b)
{
    if (b.is_zero())
        return {0.0, a.is_zero() ? 0.0 : 1.0};
    const auto [pa, pb] = detail::align(a, b);
    // least-squares factor sum conj(b_i) a_i / sum |b_i|^2
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < pb.size(); ++i) {
        const Complex ca = i < pa.size() ? pa[i] : Complex(0.0);
        num += std::conj(pb[i]) * ca;
        den += std::norm(pb[i]);
    }
    const Complex factor = num / den;
    return {factor, deviation(a, b.scaled(factor))};
}

/// Default tolerance for symbolic identities on forms.
inline constexpr double form_tolerance = 1e-10;

inline bool equivalent(const SinhCoshForm& a, const SinhCoshForm& b, double tol = form_tolerance)
{
    return proportionality(a, b).deviation <= tol;
}

/// Ladder operator B^pm_{j,n}; kappa = kappa_j(n) = i k_j(n).
struct LadderSpec {
    int series;
    int n;
    Complex kappa;

    static LadderSpec make(const PotentialSpec& spec, int series, int n)
    {
        return {series, n, ladder_kappa(spec, series, n)};
    }
    /// Exponent of the seed of this series, kappa_j(0).
    Complex seed_mu() const { return kappa - static_cast<double>(n); }
};

enum class LadderDirection { Raise, Lower };

/// B-_{j,n} f = -cosh x f' + kappa_j(n) sinh x f   (Lower)
/// B+_{j,n} f =  cosh x f' + kappa_j(n-1) sinh x f (Raise)
inline SinhCoshForm apply_ladder(const SinhCoshForm& f, const LadderSpec& op, LadderDirection dir)
{
    const Complex seed = op.seed_mu();
    if (std::abs(f.mu() - seed) > 1e-12 * std::max(1.0, std::abs(seed)))
        throw InvalidArgument("apply_ladder: exponent " + detail::to_string(f.mu())
                              + " does not match the series seed exponent " + detail::to_string(seed));
    if (f.is_zero())
        return f;
    const Polynomial q = poly::cosh_d(f.coeffs(), f.mu());
    const Polynomial sp = poly::times_s(f.coeffs());
    if (dir == LadderDirection::Lower)
        return {poly::add(poly::scale(q, -1.0), poly::scale(sp, op.kappa)), f.mu()};
    return {poly::add(q, poly::scale(sp, op.kappa - 1.0)), f.mu()};
}

inline SinhCoshForm raise(const PotentialSpec& spec, const SinhCoshForm& f, int series, int n)
{
    return apply_ladder(f, LadderSpec::make(spec, series, n), LadderDirection::Raise);
}

inline SinhCoshForm lower(const PotentialSpec& spec, const SinhCoshForm& f, int series, int n)
{
    return apply_ladder(f, LadderSpec::make(spec, series, n), LadderDirection::Lower);
}

/// Ground of each ladder: (cosh x)^lambda for series 1 and
/// (cosh x)^(1 - lambda) for series 2; annihilated by B-_{j,0}.
inline SinhCoshForm seed(const PotentialSpec& spec, int series)
{
    return {Polynomial{1.0}, ladder_kappa(spec, series, 0)};
}

/// State n of a series: n raisings of the seed, P monic after each step.
/// Throws DomainError when a raising loses a degree, which happens only on
/// the second half of the integer-lambda ladder.
inline SinhCoshForm state(const PotentialSpec& spec, int series, int n)
{
    if (n < 0)
        throw InvalidArgument("state: n must be non-negative");
    SinhCoshForm f = seed(spec, series);
    for (int m = 1; m <= n; ++m) {
        f = raise(spec, f, series, m).monic();
        if (f.degree() != m)
            throw DomainError("state: degenerate raise at n = " + std::to_string(m) + " for lambda = "
                              + detail::to_string(spec.lambda()));
    }
    return f;
}

/// Eigenvalue k_j(n)^2 = -kappa_j(n)^2 of state(spec, series, n).
inline Complex state_energy(const PotentialSpec& spec, int series, int n)
{
    const Complex kappa = ladder_kappa(spec, series, n);
    return -kappa * kappa;
}

/// B0_{j,n} phi_{j,n} = -i k_j(n) phi_{j,n}.
inline Complex diagonal_action(const PotentialSpec& spec, int series, int n)
{
    if (n < 0)
        throw InvalidArgument("diagonal_action: n must be non-negative");
    return -ladder_kappa(spec, series, n);
}

/// Bound state scaled to unit L2 norm.  Only for square-integrable states.
inline SinhCoshForm l2_normalized(const SinhCoshForm& f)
{
    const double rate = f.growth_rate();
    if (!(rate < 0.0))
        throw DomainError("l2_normalized: state is not square integrable");
    // |f|^2 ~ e^{2 rate |x|}; a window of 40 / |rate| leaves tails below e^-80
    const double half = 40.0 / -rate;
    const double step = std::min(1e-3, half / 4000.0);
    const double norm2 = quadrature_l2([&](double x) { return evaluate(f, x); }, Grid(-half, half, step));
    return f.scaled(1.0 / std::sqrt(norm2));
}

/// Outcome of check_su11.  The algebra is checked in the graded reading,
/// each operator carrying the index of the state it acts on:
///
///   [B0, B+] phi_{n-1} = -B+ phi_{n-1}
///   [B0, B-] phi_n     = +B- phi_n
///   [B-, B+] phi_{n-1} = 2 B0 phi_{n-1}
///
/// `bracket_scale` is the observed ratio [B-, B+] / B0 (2 for these
/// operators); `unit_bracket_deviation` measures [B-, B+] against B0 with
/// coefficient 1.
struct Su11Report {
    int n_max = 0;
    double raise_deviation = 0.0;
    double lower_deviation = 0.0;
    double bracket_deviation = 0.0;
    double unit_bracket_deviation = 0.0;
    double ladder_deviation = 0.0;  ///< B+ phi_{n-1} ~ phi_n, B- phi_n ~ phi_{n-1}
    Complex bracket_scale{0.0};
    std::vector<std::string> failures;

    double max_deviation() const
    {
        return std::max({raise_deviation, lower_deviation, bracket_deviation, ladder_deviation});
    }
    bool ok() const { return failures.empty(); }
};

inline Su11Report check_su11(const PotentialSpec& spec, int series, int n_max, double tol = form_tolerance)
{
    if (n_max < 1)
        throw InvalidArgument("check_su11: n_max must be at least 1");
    Su11Report rep;
    rep.n_max = n_max;
    auto note = [&](double& slot, double dev, const std::string& what, int n) {
        slot = std::max(slot, dev);
        if (!(dev <= tol))
            rep.failures.push_back(what + " at n = " + std::to_string(n) + " (deviation "
                                   + std::to_string(dev) + ")");
    };
    // B0 acting at level m: checks that f is in the eigenline of phi_m
    auto b0 = [&](const SinhCoshForm& f, int m) {
        if (!f.is_zero())
            note(rep.ladder_deviation, proportionality(f, state(spec, series, m)).deviation,
                 "B0 argument outside the eigenline", m);
        return f.scaled(diagonal_action(spec, series, m));
    };

    SinhCoshForm prev = state(spec, series, 0);
    for (int n = 1; n <= n_max; ++n) {
        const SinhCoshForm cur = state(spec, series, n);
        const SinhCoshForm up = raise(spec, prev, series, n);
        const SinhCoshForm down = lower(spec, cur, series, n);
        note(rep.ladder_deviation, proportionality(up, cur).deviation, "B+ does not reach phi_n", n);
        note(rep.ladder_deviation, proportionality(down, prev).deviation, "B- does not reach phi_{n-1}", n);

        // [B0, B+] phi_{n-1} + B+ phi_{n-1}
        {
            const SinhCoshForm lhs(
                poly::add(b0(up, n).coeffs(),
                          raise(spec, b0(prev, n - 1), series, n).scaled(-1.0).coeffs()),
                prev.mu());
            note(rep.raise_deviation, deviation(lhs, up.scaled(-1.0)), "[B0,B+] != -B+", n);
        }
        // [B0, B-] phi_n - B- phi_n
        {
            const SinhCoshForm lhs(
                poly::add(b0(down, n - 1).coeffs(),
                          lower(spec, b0(cur, n), series, n).scaled(-1.0).coeffs()),
                cur.mu());
            note(rep.lower_deviation, deviation(lhs, down), "[B0,B-] != B-", n);
        }
        // [B-, B+] phi_{n-1}
        {
            const SinhCoshForm lr = lower(spec, up, series, n);
            const SinhCoshForm rl = raise(spec, lower(spec, prev, series, n - 1), series, n - 1);
            const SinhCoshForm bracket(poly::add(lr.coeffs(), rl.scaled(-1.0).coeffs()), prev.mu());
            const SinhCoshForm diag = b0(prev, n - 1);
            const Proportionality p = proportionality(bracket, diag);
            if (n == 1 || std::abs(p.factor - 2.0) > std::abs(rep.bracket_scale - 2.0))
                rep.bracket_scale = p.factor;
            note(rep.bracket_deviation, deviation(bracket, diag.scaled(2.0)), "[B-,B+] != 2 B0", n);
            rep.unit_bracket_deviation = std::max(rep.unit_bracket_deviation, deviation(bracket, diag));
        }
        prev = cur;
    }
    return rep;
}

} // namespace ptscat

#endif // PTSCAT_STATES_HPP
