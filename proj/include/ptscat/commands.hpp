#ifndef PTSCAT_COMMANDS_HPP
#define PTSCAT_COMMANDS_HPP

// Table builders behind the CLI subcommands.  Each row comes straight from a
// library call with that row's inputs.

#include <cmath>
#include <string>
#include <vector>

#include "complexfn.hpp"
#include "errors.hpp"
#include "poles.hpp"
#include "scattering.hpp"
#include "states.hpp"
#include "susy.hpp"
#include "table.hpp"

namespace ptscat {

struct SampleRange {
    double lo;
    double hi;
    int steps;  ///< number of intervals; steps + 1 samples

    double at(int i) const { return i == steps ? hi : lo + (hi - lo) * i / steps; }
};

namespace detail {

inline void require_range(const SampleRange& r, const char* what)
{
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo))
        throw InvalidArgument(std::string(what) + ": range must satisfy min < max");
    if (r.steps < 1)
        throw InvalidArgument(std::string(what) + ": steps must be at least 1");
}

inline std::string format_complex(Complex z)
{
    // drop the sign of zero parts
    z = Complex(z.real() + 0.0, z.imag() + 0.0);
    return format_double(z.real()) + (std::signbit(z.imag()) ? "" : "+") + format_double(z.imag()) + "i";
}

inline void describe(OutputTable& t, const PotentialSpec& spec)
{
    t.set_meta("lambda", format_complex(spec.lambda()));
    t.set_meta("regime", to_string(spec.regime()));
}

} // namespace detail

/// Columns k, T, R over the sampled k range; k = 0 is skipped.
inline OutputTable cmd_coeffs(const PotentialSpec& spec, SampleRange k)
{
    detail::require_range(k, "coeffs");
    OutputTable t({{"k", ColumnType::Real}, {"T", ColumnType::Real}, {"R", ColumnType::Real}});
    detail::describe(t, spec);
    for (int i = 0; i <= k.steps; ++i) {
        const double ki = k.at(i);
        if (ki == 0.0)
            continue;
        const Coefficients c = coefficients(spec, ki);
        t.add_row({ki, c.T, c.R});
    }
    return t;
}

struct PolesOptions {
    bool verify = false;  ///< add Newton-refined k and |dk|
    bool all = false;     ///< keep series-1 records that repeat a series-2 pole
};

inline OutputTable cmd_poles(const PotentialSpec& spec, int n_max, PolesOptions opt = {})
{
    std::vector<Column> cols = {{"series", ColumnType::Real}, {"n", ColumnType::Real},
                                {"kind", ColumnType::Text},   {"k", ColumnType::Complex},
                                {"E", ColumnType::Complex},   {"duplicate_of", ColumnType::Text}};
    if (opt.verify) {
        cols.push_back({"k_refined", ColumnType::Complex});
        cols.push_back({"dk", ColumnType::Real});
    }
    OutputTable t(std::move(cols));
    detail::describe(t, spec);
    t.set_meta("bound_states", std::to_string(bound_state_count(spec)));
    for (const PoleRecord& p : enumerate_poles(spec, n_max)) {
        if (p.duplicate_of && !opt.all)
            continue;
        std::vector<Cell> row = {double(p.series), double(p.n), std::string(to_string(p.kind)), p.k, p.energy,
                                 p.duplicate_of ? "2:" + std::to_string(*p.duplicate_of) : std::string()};
        if (opt.verify) {
            if (p.kind == PoleKind::NullAtOrigin || p.kind == PoleKind::ZeroOfS) {
                row.emplace_back(Complex(std::nan(""), std::nan("")));
                row.emplace_back(std::nan(""));
            }
            else {
                // seed off the analytic value so the check is not trivially exact
                const Complex refined = refine_pole(spec, p.k + Complex(1e-2, 1e-2));
                row.emplace_back(refined);
                row.emplace_back(std::abs(refined - p.k));
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

struct WavefunctionParts {
    bool abs = true;
    bool re = true;
    bool im = true;
};

/// Samples of state(series, n) (monic normalization).  Rows whose value
/// leaves the double range carry status "overflow" and NaN values.
inline OutputTable cmd_wavefunction(const PotentialSpec& spec, int series, int n, SampleRange x,
                                    WavefunctionParts parts = {})
{
    detail::require_range(x, "wavefunction");
    if (!parts.abs && !parts.re && !parts.im)
        throw InvalidArgument("wavefunction: select at least one of abs, re, im");
    const SinhCoshForm f = state(spec, series, n);
    std::vector<Column> cols = {{"x", ColumnType::Real}};
    if (parts.abs) cols.push_back({"abs", ColumnType::Real});
    if (parts.re) cols.push_back({"re", ColumnType::Real});
    if (parts.im) cols.push_back({"im", ColumnType::Real});
    cols.push_back({"status", ColumnType::Text});
    OutputTable t(std::move(cols));
    detail::describe(t, spec);
    t.set_meta("series", std::to_string(series));
    t.set_meta("n", std::to_string(n));
    t.set_meta("energy", detail::format_complex(state_energy(spec, series, n)));
    t.set_meta("normalization", "monic");
    t.set_meta("form", to_json(f).dump());
    for (int i = 0; i <= x.steps; ++i) {
        const double xi = x.at(i);
        Complex v;
        std::string status = "ok";
        try {
            v = evaluate(f, xi);
        }
        catch (const OverflowError&) {
            v = Complex(std::nan(""), std::nan(""));
            status = "overflow";
        }
        std::vector<Cell> row = {xi};
        if (parts.abs) row.emplace_back(std::abs(v));
        if (parts.re) row.emplace_back(v.real());
        if (parts.im) row.emplace_back(v.imag());
        row.emplace_back(status);
        t.add_row(std::move(row));
    }
    return t;
}

/// Partner potential and partner ground state 1/psi built on
/// state(series, n); columns x, V_re, V_im, psi_re, psi_im, psi_abs.
inline OutputTable cmd_susy(const PotentialSpec& spec, int series, int n, SampleRange x)
{
    detail::require_range(x, "susy");
    const PartnerModel m = PartnerModel::from_state(spec, series, n);
    OutputTable t({{"x", ColumnType::Real},
                   {"V_re", ColumnType::Real},
                   {"V_im", ColumnType::Real},
                   {"psi_re", ColumnType::Real},
                   {"psi_im", ColumnType::Real},
                   {"psi_abs", ColumnType::Real}});
    detail::describe(t, spec);
    t.set_meta("series", std::to_string(series));
    t.set_meta("n", std::to_string(n));
    t.set_meta("epsilon", detail::format_complex(m.epsilon()));
    t.set_meta("form", to_json(m.factor_state()).dump());
    for (int i = 0; i <= x.steps; ++i) {
        const double xi = x.at(i);
        const Complex v = partner_potential(m, xi);
        const Complex psi = partner_ground_state(m, xi);
        t.add_row({xi, v.real(), v.imag(), psi.real(), psi.imag(), std::abs(psi)});
    }
    return t;
}

/// Transfer matrix, S matrix, amplitudes and probabilities at one k.
inline OutputTable cmd_smatrix(const PotentialSpec& spec, Complex k)
{
    OutputTable t({{"entry", ColumnType::Text}, {"value", ColumnType::Complex}});
    detail::describe(t, spec);
    t.set_meta("k", detail::format_complex(k));
    const TransferMatrix tm = transfer_matrix(spec, k);
    t.add_row({std::string("T11"), tm.t11});
    t.add_row({std::string("T12"), tm.t12});
    t.add_row({std::string("T21"), tm.t21});
    t.add_row({std::string("T22"), tm.t22});
    t.add_row({std::string("detT"), tm.det()});
    const ScatterMatrix s = s_matrix(spec, k);
    t.add_row({std::string("S11"), s.s11});
    t.add_row({std::string("S12"), s.s12});
    t.add_row({std::string("S21"), s.s21});
    t.add_row({std::string("S22"), s.s22});
    const Amplitudes a = amplitudes(spec, k);
    t.add_row({std::string("r"), a.r});
    t.add_row({std::string("t"), a.t});
    if (k.imag() == 0.0 && k.real() != 0.0) {
        const Coefficients c = coefficients(spec, k.real());
        t.add_row({std::string("R"), Complex(c.R)});
        t.add_row({std::string("T"), Complex(c.T)});
    }
    return t;
}

} // namespace ptscat

#endif // PTSCAT_COMMANDS_HPP
