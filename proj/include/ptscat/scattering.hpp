#ifndef PTSCAT_SCATTERING_HPP
#define PTSCAT_SCATTERING_HPP

// Exact scattering data of the hyperbolic Poschl-Teller potential
//
//     V(x) = -lambda (lambda - 1) / cosh^2 x
//
// in units hbar^2/2m = 1 and range parameter alpha = 1.  A general range
// alpha is recovered by the scaling x -> alpha x, k -> k / alpha,
// V -> alpha^2 V.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "complexfn.hpp"
#include "errors.hpp"

namespace ptscat {

enum class Regime { Well, LowBarrier, HighBarrier };

inline const char* to_string(Regime r)
{
    switch (r) {
    case Regime::Well: return "well";
    case Regime::LowBarrier: return "low-barrier";
    case Regime::HighBarrier: return "high-barrier";
    }
    return "?";
}

/// The potential parameter together with its regime.
///
///  - Well:        lambda real, lambda > 1
///  - LowBarrier:  lambda real, 1/2 <= lambda < 1
///  - HighBarrier: lambda = 1/2 + i ell, ell > 0
class PotentialSpec {
public:
    static PotentialSpec from_lambda(Complex lambda)
    {
        if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
            throw InvalidArgument("lambda must be finite");
        if (lambda.imag() == 0.0) {
            const double l = lambda.real();
            if (l > 1.0)
                return PotentialSpec(lambda, Regime::Well);
            if (l >= 0.5 && l < 1.0)
                return PotentialSpec(lambda, Regime::LowBarrier);
        }
        else if (lambda.real() == 0.5 && lambda.imag() > 0.0) {
            return PotentialSpec(lambda, Regime::HighBarrier);
        }
        throw InvalidArgument("lambda = " + detail::to_string(lambda)
                              + " is outside the supported regimes: lambda > 1 (well), "
                                "1/2 <= lambda < 1 (low barrier), lambda = 1/2 + i ell with "
                                "ell > 0 (high barrier)");
    }

    Complex lambda() const noexcept { return lambda_; }
    Regime regime() const noexcept { return regime_; }
    /// Im lambda; meaningful for the high barrier.
    double ell() const noexcept { return lambda_.imag(); }
    /// lambda (lambda - 1); real in every regime.
    double strength() const noexcept { return (lambda_ * (lambda_ - 1.0)).real(); }

    bool is_integer() const noexcept
    {
        return lambda_.imag() == 0.0 && lambda_.real() == std::round(lambda_.real());
    }
    bool is_half_odd() const noexcept
    {
        return lambda_.imag() == 0.0 && !is_integer()
               && 2.0 * lambda_.real() == std::round(2.0 * lambda_.real());
    }

private:
    PotentialSpec(Complex lambda, Regime regime) : lambda_(lambda), regime_(regime) {}

    Complex lambda_;
    Regime regime_;
};

inline Complex potential_value(Complex lambda, double x)
{
    const double sech = 1.0 / std::cosh(x);
    return -lambda * (lambda - 1.0) * sech * sech;
}

inline Complex potential_value(const PotentialSpec& spec, double x)
{
    return potential_value(spec.lambda(), x);
}

struct TransferMatrix {
    Complex t11, t12, t21, t22;

    Complex det() const { return t11 * t22 - t12 * t21; }
    double scale() const
    {
        return std::max({std::abs(t11), std::abs(t12), std::abs(t21), std::abs(t22)});
    }
};

struct ScatterMatrix {
    Complex s11, s12, s21, s22;
};

/// Relative threshold below which T22 is treated as an exact zero, i.e. k
/// sits on a pole of S.
inline constexpr double at_pole_threshold = 1e-13;

namespace detail {

// log(1 + e^t) without overflow
inline double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// Hypergeometric argument z = (1 + tanh x)/2 and its complement, both with
// full relative accuracy, plus log(1 + tanh x) and log(1 - tanh x).
struct TanhArgs {
    double z, w, log_1p_tanh, log_1m_tanh;
};

inline TanhArgs tanh_args(double x)
{
    const double ln2 = std::log(2.0);
    return {1.0 / (1.0 + std::exp(-2.0 * x)), 1.0 / (1.0 + std::exp(2.0 * x)),
            ln2 - softplus(-2.0 * x), ln2 - softplus(2.0 * x)};
}

inline Complex incoming_branch(const PotentialSpec& spec, Complex k, const TanhArgs& t)
{
    const Complex ik = I * k;
    const Complex lam = spec.lambda();
    if (is_gamma_pole(ik + 1.0))
        throw PoleError("general_wavefunction: ik + 1 = " + to_string(ik + 1.0)
                        + " is a non-positive integer");
    const Complex pref = std::exp(0.5 * ik * (t.log_1p_tanh - t.log_1m_tanh));
    return pref * hyp2f1(lam, 1.0 - lam, ik + 1.0, t.z, t.w);
}

inline Complex outgoing_branch(const PotentialSpec& spec, Complex k, const TanhArgs& t)
{
    const Complex ik = I * k;
    const Complex lam = spec.lambda();
    if (is_gamma_pole(1.0 - ik))
        throw PoleError("outgoing wavefunction: 1 - ik = " + to_string(1.0 - ik)
                        + " is a non-positive integer");
    const Complex pref = std::exp(ik * std::log(2.0) - 0.5 * ik * (t.log_1p_tanh + t.log_1m_tanh));
    return pref * hyp2f1(lam - ik, 1.0 - lam - ik, 1.0 - ik, t.z, t.w);
}

} // namespace detail

/// General solution A u_in(x) + B u_out(x) of the Schrodinger equation at
/// momentum k, built from the two hypergeometric branches in the variable
/// (1 + tanh x)/2.  For x -> -infinity it tends to A e^{ikx} + B e^{-ikx}.
inline Complex general_wavefunction(const PotentialSpec& spec, Complex k, Complex A, Complex B, double x)
{
    const auto t = detail::tanh_args(x);
    Complex out = 0.0;
    if (A != 0.0)
        out += A * detail::incoming_branch(spec, k, t);
    if (B != 0.0)
        out += B * detail::outgoing_branch(spec, k, t);
    return out;
}

/// The B-branch alone (A = 0, B = 1).  At a zero of T22 this is the purely
/// outgoing eigenfunction with eigenvalue k^2.
inline Complex outgoing_wavefunction(const PotentialSpec& spec, Complex k, double x)
{
    return detail::outgoing_branch(spec, k, detail::tanh_args(x));
}

/// Transfer matrix mapping (A, B) at x -> -infinity onto (A', B') at
/// x -> +infinity.  Every entry is a ratio of Gamma functions evaluated
/// through lngamma differences.
inline TransferMatrix transfer_matrix(const PotentialSpec& spec, Complex k)
{
    const Complex ik = I * k;
    const Complex lam = spec.lambda();
    auto entry = [](const char* name, auto&& f) {
        try {
            return f();
        }
        catch (const PoleError& e) {
            throw PoleError(std::string("transfer_matrix: entry ") + name + ": " + e.what());
        }
    };
    TransferMatrix t;
    t.t11 = entry("T11", [&] { return gamma_ratio({ik + 1.0, ik}, {ik + 1.0 - lam, ik + lam}); });
    t.t12 = entry("T12", [&] { return gamma_ratio({1.0 - ik, ik}, {1.0 - lam, lam}); });
    t.t21 = entry("T21", [&] { return gamma_ratio({ik + 1.0, -ik}, {lam, 1.0 - lam}); });
    t.t22 = entry("T22", [&] { return gamma_ratio({1.0 - ik, -ik}, {lam - ik, 1.0 - lam - ik}); });
    return t;
}

namespace detail {

inline void require_off_pole(const TransferMatrix& t, Complex k)
{
    if (std::abs(t.t22) < at_pole_threshold * t.scale())
        throw PoleError("S matrix has a pole at k = " + to_string(k) + " (T22 = 0)");
}

} // namespace detail

/// S = (1/T22) [[-T21, 1], [det T, T12]], relating (A, B') to (B, A').
inline ScatterMatrix s_matrix(const PotentialSpec& spec, Complex k)
{
    const TransferMatrix t = transfer_matrix(spec, k);
    detail::require_off_pole(t, k);
    const Complex inv = 1.0 / t.t22;
    return {-t.t21 * inv, inv, t.det() * inv, t.t12 * inv};
}

struct Amplitudes {
    Complex r;  ///< reflection, -T21/T22
    Complex t;  ///< transmission, 1/T22
};

inline Amplitudes amplitudes(const PotentialSpec& spec, Complex k)
{
    const TransferMatrix t = transfer_matrix(spec, k);
    detail::require_off_pole(t, k);
    return {-t.t21 / t.t22, 1.0 / t.t22};
}

struct Coefficients {
    double R;
    double T;
};

/// Reflection and transmission probabilities for real k != 0.
inline Coefficients coefficients(const PotentialSpec& spec, double k)
{
    if (k == 0.0)
        throw DomainError("coefficients: k = 0 is excluded (Gamma(0) pole in the amplitudes)");
    const Amplitudes a = amplitudes(spec, k);
    return {std::norm(a.r), std::norm(a.t)};
}

} // namespace ptscat

#endif // PTSCAT_SCATTERING_HPP
