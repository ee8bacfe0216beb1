#ifndef PTSCAT_COMPLEXFN_HPP
#define PTSCAT_COMPLEXFN_HPP

// Complex special functions: log-Gamma, Gamma, digamma and the Gauss
// hypergeometric function 2F1.  Double precision, target 1e-10 relative.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <string>
#include <utility>

#include "errors.hpp"

namespace ptscat {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

namespace detail {

inline std::string to_string(Complex z)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
    return buf;
}

using ComplexL = std::complex<long double>;

inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;

// Stirling series for log Gamma on Re z >= 1/2 in extended precision.  The
// argument is shifted up to |z| >= 17 first; the shift factors enter as
// log|prod| plus the sum of their arguments, which keeps the branch
// continuous and avoids one log per factor.
inline ComplexL stirling_lngamma(ComplexL z)
{
    long double log_mag = 0.0L;
    long double arg_sum = 0.0L;
    long double mag = 1.0L;
    while (std::abs(z) < 17.0L) {
        mag *= std::abs(z);
        arg_sum += std::arg(z);
        if (mag > 1e300L) {
            log_mag += std::log(mag);
            mag = 1.0L;
        }
        z += 1.0L;
    }
    log_mag += std::log(mag);
    // B_2k / (2k (2k - 1)), k = 1..8
    static constexpr long double coeffs[] = {
        1.0L / 12.0L,         -1.0L / 360.0L,         1.0L / 1260.0L,  -1.0L / 1680.0L,
        1.0L / 1188.0L,       -691.0L / 360360.0L,    1.0L / 156.0L,   -3617.0L / 122400.0L};
    const ComplexL r = 1.0L / z;
    const ComplexL r2 = r * r;
    ComplexL series = 0.0L;
    for (int i = 7; i >= 0; --i) series = series * r2 + coeffs[i];
    series *= r;
    const long double half_log_2pi = 0.918938533204672741780329736405617639861L;
    return (z - 0.5L) * std::log(z) - z + half_log_2pi + series - ComplexL(log_mag, arg_sum);
}

// Analytic continuation of log(sin(pi z)) on Im z >= 0, equal to the
// principal value near z = 1/2.  Never overflows for large Im z.
inline ComplexL log_sin_pi_upper(ComplexL z)
{
    const ComplexL i(0.0L, 1.0L);
    const ComplexL w = std::exp(2.0L * pi_l * i * z);
    return std::log(0.5L) + i * (0.5L * pi_l) - i * pi_l * z + std::log(1.0L - w);
}

// log Gamma for Im z >= 0 in extended precision, reflection for Re z < 1/2.
inline ComplexL lngamma_upper(ComplexL z)
{
    if (z.real() >= 0.5L)
        return stirling_lngamma(z);
    // 1 - z has Re > 1/2 and Im <= 0
    return std::log(pi_l) - log_sin_pi_upper(z) - std::conj(stirling_lngamma(std::conj(1.0L - z)));
}

// cot(pi z) for Im z >= 0.
inline Complex cot_pi_upper(Complex z)
{
    const Complex w = std::exp(2.0 * std::numbers::pi * I * z);
    return I * (w + 1.0) / (w - 1.0);
}

} // namespace detail

/// True at z = 0, -1, -2, ... (exact comparison).
inline bool is_gamma_pole(Complex z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

/// Non-positive integer test used for terminating series.
inline bool is_nonpositive_integer(Complex z) { return is_gamma_pole(z); }

/// Log-Gamma, analytic continuation with the branch cut on the negative real
/// axis (values on the cut are the limits from above).  Shifted Stirling
/// series for Re z >= 1/2, reflection otherwise, conjugation for Im z < 0.
inline Complex lngamma(Complex z)
{
    if (is_gamma_pole(z))
        throw PoleError("lngamma: pole at " + detail::to_string(z));
    if (z.imag() < 0.0)
        return std::conj(lngamma(std::conj(z)));
    return Complex(detail::lngamma_upper(detail::ComplexL(z)));
}

inline Complex gamma(Complex z)
{
    if (z.real() > 0.0 && z.imag() == 0.0 && z.real() == std::round(z.real()) && z.real() <= 171.0)
        return std::tgamma(z.real());
    return std::exp(lngamma(z));
}

/// 1/Gamma(z); zero at the Gamma poles instead of an error.
inline Complex rgamma(Complex z)
{
    if (is_gamma_pole(z))
        return 0.0;
    return std::exp(-lngamma(z));
}

/// prod Gamma(num) / prod Gamma(den), evaluated as exp of lngamma
/// differences.  A pole in the denominator gives 0; a pole in the numerator
/// throws PoleError.
inline Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den)
{
    for (Complex z : num)
        if (is_gamma_pole(z))
            throw PoleError("gamma_ratio: numerator pole at " + detail::to_string(z));
    for (Complex z : den)
        if (is_gamma_pole(z))
            return 0.0;
    // summed in extended precision so that large canceling logs keep the
    // full double accuracy of the ratio
    auto lg = [](Complex z) {
        const detail::ComplexL zl(z);
        return z.imag() < 0.0 ? std::conj(detail::lngamma_upper(std::conj(zl))) : detail::lngamma_upper(zl);
    };
    detail::ComplexL acc = 0.0L;
    for (Complex z : num) acc += lg(z);
    for (Complex z : den) acc -= lg(z);
    return Complex(std::exp(acc));
}

/// Digamma psi(z) = d lnGamma / dz: asymptotic series after shifting |z|
/// past 10, downward recurrence back, reflection for Re z < 1/2.
inline Complex digamma(Complex z)
{
    if (is_gamma_pole(z))
        throw PoleError("digamma: pole at " + detail::to_string(z));
    if (z.imag() < 0.0)
        return std::conj(digamma(std::conj(z)));
    if (z.real() < 0.5)
        return digamma(1.0 - z) - std::numbers::pi * detail::cot_pi_upper(z);

    Complex shift = 0.0;
    while (std::abs(z) < 10.0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    const Complex r = 1.0 / z;
    const Complex r2 = r * r;
    // Bernoulli terms B_2k / (2k z^2k), k = 1..7
    const Complex tail =
        r2 * (1.0 / 12.0
              - r2 * (1.0 / 120.0
                      - r2 * (1.0 / 252.0
                              - r2 * (1.0 / 240.0
                                      - r2 * (1.0 / 132.0
                                              - r2 * (691.0 / 32760.0 - r2 * (1.0 / 12.0)))))));
    return std::log(z) - 0.5 * r - tail - shift;
}

namespace detail {

inline constexpr int hyp_max_terms = 200000;

// Plain Gauss series; terminates automatically when a or b is a
// non-positive integer.
inline Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z)
{
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int n = 0; n < hyp_max_terms; ++n) {
        const double dn = n;
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (term == 0.0)
            return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && dn > std::abs(a) + std::abs(b))
            return sum;
    }
    throw ConvergenceError("hyp2f1: Gauss series did not converge at z = " + to_string(z));
}

// Limit forms for c = a + b + m, m >= 0 integer, expanded about 1 - z.
inline Complex hyp2f1_integer_gap(Complex a, Complex b, int m, Complex w)
{
    const Complex logw = std::log(w);
    const Complex c = a + b + static_cast<double>(m);

    Complex finite = 0.0;
    if (m > 0) {
        // Gamma(m) Gamma(c) / (Gamma(a+m) Gamma(b+m)) sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n
        const Complex pref = gamma_ratio({static_cast<double>(m), c},
                                         {a + static_cast<double>(m), b + static_cast<double>(m)});
        Complex t = 1.0;
        Complex s = 1.0;
        for (int n = 0; n + 1 < m; ++n) {
            const double dn = n;
            t *= (a + dn) * (b + dn) / ((dn + 1.0) * (1.0 - m + dn)) * w;
            s += t;
        }
        finite = pref * s;
    }

    // -(z-1)^m Gamma(c) / (Gamma(a) Gamma(b)) sum_n (a+m)_n (b+m)_n / (n! (n+m)!) w^n
    //   [ln w - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)]
    const Complex pref = gamma_ratio({c}, {a, b});
    if (pref == 0.0)
        return finite;
    const Complex am = a + static_cast<double>(m);
    const Complex bm = b + static_cast<double>(m);
    double psi_n1 = -0.5772156649015328606;  // psi(1)
    double psi_nm1 = psi_n1;
    for (int j = 1; j <= m; ++j) psi_nm1 += 1.0 / j;
    Complex psi_a = digamma(am);
    Complex psi_b = digamma(bm);
    double inv_fact_m = 1.0;
    for (int j = 2; j <= m; ++j) inv_fact_m /= j;
    Complex coef = inv_fact_m;  // (a+m)_n (b+m)_n / (n! (n+m)!) w^n at n = 0
    Complex sum = 0.0;
    for (int n = 0; n < hyp_max_terms; ++n) {
        const double dn = n;
        const Complex term = coef * (logw - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += term;
        if (dn > std::abs(am) + std::abs(bm) && std::abs(term) <= 1e-17 * std::abs(sum))
            return finite - std::pow(-w, static_cast<double>(m)) * pref * sum;
        coef *= (am + dn) * (bm + dn) / ((dn + 1.0) * (dn + m + 1.0)) * w;
        psi_n1 += 1.0 / (dn + 1.0);
        psi_nm1 += 1.0 / (dn + m + 1.0);
        psi_a += 1.0 / (am + dn);
        psi_b += 1.0 / (bm + dn);
    }
    throw ConvergenceError("hyp2f1: logarithmic limit series did not converge");
}

} // namespace detail

/// Width of the window around integer c - a - b inside which the
/// logarithmic limit form replaces the z -> 1 - z connection formula.
inline constexpr double hyp2f1_degenerate_window = 1e-6;

/// Gauss hypergeometric function 2F1(a, b; c; z) for |z| < 1, with the
/// complement `one_minus_z` = 1 - z supplied separately so that callers
/// working near z = 1 keep full relative accuracy in 1 - z.
///
/// Direct series for |z| <= 1/2 (and for terminating parameters); the
/// connection formula in 1 - z when 1 - z is the smaller expansion variable,
/// with the logarithmic limit form when c - a - b is within
/// `hyp2f1_degenerate_window` of an integer.
inline Complex hyp2f1(Complex a, Complex b, Complex c, Complex z, Complex one_minus_z)
{
    if (is_gamma_pole(c))
        throw PoleError("hyp2f1: c is a non-positive integer " + detail::to_string(c));
    // canonical parameter order makes the result exactly symmetric in a, b
    if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag()))
        std::swap(a, b);
    if (z == 0.0)
        return 1.0;
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return detail::hyp2f1_series(a, b, c, z);
    if (std::abs(z) >= 1.0)
        throw DomainError("hyp2f1: |z| >= 1 is outside the supported domain");

    const Complex w = one_minus_z;
    if (std::abs(z) <= 0.5 || std::abs(w) >= std::abs(z))
        return detail::hyp2f1_series(a, b, c, z);

    const Complex gap = c - a - b;
    const double m = std::round(gap.real());
    if (std::abs(gap - m) < hyp2f1_degenerate_window) {
        if (m >= 0.0)
            return detail::hyp2f1_integer_gap(a, b, static_cast<int>(m), w);
        // Euler: F(a,b;c;z) = w^(c-a-b) F(c-a, c-b; c; z), new gap = -m
        return std::pow(w, static_cast<double>(m))
               * detail::hyp2f1_integer_gap(c - a, c - b, static_cast<int>(-m), w);
    }

    const Complex t1 = gamma_ratio({c, gap}, {c - a, c - b});
    const Complex t2 = gamma_ratio({c, -gap}, {a, b});
    Complex out = 0.0;
    if (t1 != 0.0)
        out += t1 * detail::hyp2f1_series(a, b, 1.0 - gap, w);
    if (t2 != 0.0)
        out += t2 * std::exp(gap * std::log(w)) * detail::hyp2f1_series(c - a, c - b, 1.0 + gap, w);
    return out;
}

inline Complex hyp2f1(Complex a, Complex b, Complex c, Complex z)
{
    return hyp2f1(a, b, c, z, 1.0 - z);
}

} // namespace ptscat

#endif // PTSCAT_COMPLEXFN_HPP
