// ptscat: scattering data, poles, eigenfunctions and SUSY partners of the
// hyperbolic Poschl-Teller potential.
//
// Exit codes: 0 success, 2 invalid arguments, 3 domain error (node or pole),
// 4 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptscat/commands.hpp"

namespace {

enum Exit { ok = 0, invalid = 2, domain = 3, convergence = 4 };

struct Common {
    std::string lambda;
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--lambda", c.lambda, "potential parameter: real (3.5) or 1/2 + i ell (0.5+2i)")->required();
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "output file (default: standard output)");
}

void write(const ptscat::OutputTable& t, const Common& c)
{
    const std::string text = t.serialize(ptscat::format_from_string(c.format));
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
        throw ptscat::InvalidArgument("cannot open '" + c.out + "' for writing");
    f << text;
    if (!f)
        throw ptscat::InvalidArgument("failed writing '" + c.out + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Poschl-Teller scattering: coefficients, poles, eigenfunctions, SUSY partners"};
    app.require_subcommand(1);
    Common common;

    ptscat::SampleRange k_range{0.0, 5.0, 500};
    auto* coeffs = app.add_subcommand("coeffs", "transmission and reflection probabilities over a k range");
    add_common(coeffs, common);
    coeffs->add_option("--k-min", k_range.lo);
    coeffs->add_option("--k-max", k_range.hi);
    coeffs->add_option("--steps", k_range.steps, "number of intervals");

    int n_max = 6;
    ptscat::PolesOptions pole_opt;
    auto* poles = app.add_subcommand("poles", "closed-form S-matrix poles");
    add_common(poles, common);
    poles->add_option("--n-max", n_max);
    poles->add_flag("--verify", pole_opt.verify, "add Newton-refined positions");
    poles->add_flag("--all", pole_opt.all, "keep series-1 poles that repeat series-2 poles");

    int series = 2, n = 0;
    ptscat::SampleRange x_range{-4.0, 4.0, 800};
    std::string parts = "abs,re,im";
    auto* wave = app.add_subcommand("wavefunction", "ladder-generated eigenfunction samples");
    add_common(wave, common);
    wave->add_option("--series", series)->check(CLI::IsMember({1, 2}));
    wave->add_option("--n", n)->check(CLI::NonNegativeNumber);
    wave->add_option("--x-min", x_range.lo);
    wave->add_option("--x-max", x_range.hi);
    wave->add_option("--steps", x_range.steps, "number of intervals");
    wave->add_option("--parts", parts, "comma-separated subset of abs,re,im");

    auto* susy = app.add_subcommand("susy", "SUSY partner potential and its added ground state");
    add_common(susy, common);
    susy->add_option("--series", series)->check(CLI::IsMember({1, 2}));
    susy->add_option("--n", n)->check(CLI::NonNegativeNumber);
    susy->add_option("--x-min", x_range.lo);
    susy->add_option("--x-max", x_range.hi);
    susy->add_option("--steps", x_range.steps, "number of intervals");

    std::string k_text;
    auto* smatrix = app.add_subcommand("smatrix", "transfer and S matrix at one momentum");
    add_common(smatrix, common);
    smatrix->add_option("--k", k_text, "momentum, real or complex (1.5, 2-0.5i)")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid;
    }

    try {
        const auto spec = ptscat::PotentialSpec::from_lambda(ptscat::parse_complex(common.lambda));
        ptscat::OutputTable table;
        if (*coeffs) {
            table = ptscat::cmd_coeffs(spec, k_range);
        }
        else if (*poles) {
            table = ptscat::cmd_poles(spec, n_max, pole_opt);
        }
        else if (*wave) {
            ptscat::WavefunctionParts p{false, false, false};
            std::string item;
            for (std::size_t i = 0; i <= parts.size(); ++i) {
                if (i == parts.size() || parts[i] == ',') {
                    if (item == "abs") p.abs = true;
                    else if (item == "re") p.re = true;
                    else if (item == "im") p.im = true;
                    else throw ptscat::InvalidArgument("--parts: unknown part '" + item + "'");
                    item.clear();
                }
                else {
                    item += parts[i];
                }
            }
            table = ptscat::cmd_wavefunction(spec, series, n, x_range, p);
        }
        else if (*susy) {
            table = ptscat::cmd_susy(spec, series, n, x_range);
        }
        else {
            table = ptscat::cmd_smatrix(spec, ptscat::parse_complex(k_text));
        }
        write(table, common);
        return ok;
    }
    catch (const ptscat::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return invalid;
    }
    catch (const ptscat::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return domain;
    }
    catch (const ptscat::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return convergence;
    }
}
