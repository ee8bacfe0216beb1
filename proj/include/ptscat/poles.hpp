#ifndef PTSCAT_POLES_HPP
#define PTSCAT_POLES_HPP

// S-matrix poles: closed-form enumeration and classification, resonance
// energies and widths, and Newton refinement on T22(k) = 1/t(k) as an
// independent numerical check of the closed forms.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "complexfn.hpp"
#include "errors.hpp"
#include "scattering.hpp"

namespace ptscat {

enum class PoleKind { Bound, Antibound, ResonanceDecaying, ResonanceGrowing, NullAtOrigin, ZeroOfS };

inline const char* to_string(PoleKind k)
{
    switch (k) {
    case PoleKind::Bound: return "bound";
    case PoleKind::Antibound: return "antibound";
    case PoleKind::ResonanceDecaying: return "resonance-decaying";
    case PoleKind::ResonanceGrowing: return "resonance-growing";
    case PoleKind::NullAtOrigin: return "null-at-origin";
    case PoleKind::ZeroOfS: return "zero-of-S";
    }
    return "?";
}

struct PoleRecord {
    int series;  // 1 or 2
    int n;
    Complex k;
    Complex energy;  // k^2
    PoleKind kind;
    /// For half-odd lambda: the series-2 index m with k1(n) = k2(m).
    std::optional<int> duplicate_of;
};

inline void require_series(int series)
{
    if (series != 1 && series != 2)
        throw InvalidArgument("series must be 1 or 2, got " + std::to_string(series));
}

/// i k_j(n): lambda + n for series 1, n - lambda + 1 for series 2.
inline Complex ladder_kappa(const PotentialSpec& spec, int series, int n)
{
    require_series(series);
    const Complex lam = spec.lambda();
    return series == 1 ? lam + static_cast<double>(n) : static_cast<double>(n) - lam + 1.0;
}

/// k_1(n) = -i (n + lambda), k_2(n) = -i (n - lambda + 1).
inline Complex pole_momentum(const PotentialSpec& spec, int series, int n)
{
    const Complex k = -I * ladder_kappa(spec, series, n);
    return {k.real() + 0.0, k.imag() + 0.0};  // no negative zeros
}

/// Kind of a pole from its position in the k plane.
inline PoleKind classify(Complex k)
{
    constexpr double tol = 1e-12;
    const bool on_axis = std::abs(k.real()) < tol;
    if (on_axis && std::abs(k.imag()) < tol)
        throw InvalidArgument("classify: k = " + detail::to_string(k) + " is too close to the origin");
    if (on_axis)
        return k.imag() > 0.0 ? PoleKind::Bound : PoleKind::Antibound;
    if (k.imag() < 0.0)
        return k.real() > 0.0 ? PoleKind::ResonanceDecaying : PoleKind::ResonanceGrowing;
    throw DomainError("classify: k = " + detail::to_string(k)
                      + " is off the imaginary axis outside the lower half plane");
}

/// Closed-form pole list for n = 0..n_max in both series.
///
/// Integer lambda (reflectionless): series 2 gives bound poles for
/// n <= lambda - 2, k = 0 at n = lambda - 1 (neither pole nor zero) and zeros
/// of S for n = lambda .. 2 lambda - 2; every other k_j(n) is a regular point
/// of S and is not listed.
inline std::vector<PoleRecord> enumerate_poles(const PotentialSpec& spec, int n_max)
{
    if (n_max < 0)
        throw InvalidArgument("enumerate_poles: n_max must be non-negative");
    std::vector<PoleRecord> out;
    auto push = [&](int series, int n, PoleKind kind, std::optional<int> dup = std::nullopt) {
        const Complex k = pole_momentum(spec, series, n);
        out.push_back({series, n, k, k * k, kind, dup});
    };

    if (spec.regime() == Regime::HighBarrier) {
        for (int n = 0; n <= n_max; ++n) {
            push(1, n, PoleKind::ResonanceDecaying);
            push(2, n, PoleKind::ResonanceGrowing);
        }
        return out;
    }

    const double lam = spec.lambda().real();
    if (spec.is_integer()) {
        const int L = static_cast<int>(lam);
        for (int n = 0; n <= n_max; ++n) {
            if (n <= L - 2)
                push(2, n, PoleKind::Bound);
            else if (n == L - 1)
                push(2, n, PoleKind::NullAtOrigin);
            else if (n <= 2 * L - 2)
                push(2, n, PoleKind::ZeroOfS);
        }
        return out;
    }

    for (int n = 0; n <= n_max; ++n) {
        std::optional<int> dup;
        if (spec.is_half_odd())
            dup = static_cast<int>(std::lround(2.0 * lam - 1.0)) + n;
        push(1, n, PoleKind::Antibound, dup);
    }
    for (int n = 0; n <= n_max; ++n)
        push(2, n, (n - lam + 1.0 < 0.0) ? PoleKind::Bound : PoleKind::Antibound);
    return out;
}

/// Number of bound states: count of n with n - lambda + 1 < 0.
inline int bound_state_count(const PotentialSpec& spec)
{
    if (spec.regime() != Regime::Well)
        return 0;
    const double lam = spec.lambda().real();
    int count = 0;
    while (count - lam + 1.0 < 0.0) ++count;
    return count;
}

struct ResonanceParameters {
    double energy;  // E_R
    double width;   // Gamma
};

/// E_R = ell^2 - gamma_n^2, Gamma = 4 ell gamma_n with gamma_n = n + 1/2.
inline ResonanceParameters resonance_parameters(double ell, int n)
{
    if (!(ell > 0.0))
        throw InvalidArgument("resonance_parameters: ell must be positive");
    if (n < 0)
        throw InvalidArgument("resonance_parameters: n must be non-negative");
    const double g = n + 0.5;
    return {ell * ell - g * g, 4.0 * ell * g};
}

/// Newton refinement of a pole of S near k0, returning a k at which
/// 1/t(k) = T22(k) vanishes.
///
/// The zeros of T22 are the poles of Gamma(z1) Gamma(z2) in its denominator,
/// z1 = lambda - ik and z2 = 1 - lambda - ik.  By reflection,
/// 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi, and Gamma(1 - z) is smooth and
/// zero-free for Re z < 1/2, so Newton runs on the product of sin(pi z) over
/// the arguments with Re z < 1/2.  This keeps the slowly varying digamma
/// background out of the iteration; the limit is then accepted only if the
/// Gamma-ratio T22 vanishes there.
inline Complex refine_pole(const PotentialSpec& spec, Complex k0)
{
    constexpr int max_iter = 60;
    constexpr double max_wander = 1.0;
    const Complex lam = spec.lambda();
    auto confirm = [&](Complex k) {
        const Complex ik = I * k;
        auto near_pole = [](Complex z) {
            return z.real() < 0.5 && std::abs(z - std::round(z.real())) < 1e-8;
        };
        if (near_pole(1.0 - ik) || near_pole(-ik))
            throw ConvergenceError("refine_pole: converged to k = " + detail::to_string(k)
                                   + ", where 1/t has a pole instead of a zero");
        const Complex t22 = gamma_ratio({1.0 - ik, -ik}, {lam - ik, 1.0 - lam - ik});
        const double scale = std::abs(gamma_ratio({1.0 - ik, -ik}, {})) + 1.0;
        if (std::abs(t22) > 1e-10 * scale)
            throw ConvergenceError("refine_pole: converged to a point with |1/t| = "
                                   + std::to_string(std::abs(t22)));
        return k;
    };
    Complex k = k0;
    for (int it = 0; it < max_iter; ++it) {
        const Complex ik = I * k;
        Complex logd = 0.0;
        bool active = false;
        for (const Complex z : {lam - ik, 1.0 - lam - ik}) {
            if (is_gamma_pole(z))
                return confirm(k);
            if (z.real() < 0.5) {
                const Complex pz = std::numbers::pi * z;
                logd += -I * std::numbers::pi * std::cos(pz) / std::sin(pz);
                active = true;
            }
        }
        if (!active)
            throw ConvergenceError("refine_pole: no pole of S near " + detail::to_string(k0));
        const Complex step = 1.0 / logd;
        k -= step;
        if (std::abs(k - k0) > max_wander)
            throw ConvergenceError("refine_pole: iterate left the neighbourhood of the seed "
                                   + detail::to_string(k0));
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(k)))
            return confirm(k);
    }
    throw ConvergenceError("refine_pole: no convergence from " + detail::to_string(k0));
}

} // namespace ptscat

#endif // PTSCAT_POLES_HPP
