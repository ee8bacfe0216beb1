#include <cmath>

#include <gtest/gtest.h>

#include "ptscat/numerics.hpp"
#include "ptscat/susy.hpp"

using namespace ptscat;

namespace {

PotentialSpec spec(Complex lam) { return PotentialSpec::from_lambda(lam); }

// Closed form of the partner of the lambda = 2.5, n = 6 model.
double real_partner(double x)
{
    const double c2 = std::cosh(2 * x);
    const double sech2 = 1.0 / std::pow(std::cosh(x), 2);
    return -21.0 * (-161.0 + 55.0 * c2 + 120.0 * sech2) / (2.0 * std::pow(5.0 - 7.0 * c2, 2));
}

// Closed form of the partner of the lambda = 1/2 + 3i, n = 2 model.
Complex complex_partner(double x)
{
    const Complex num = 15.0 * (Complex(-95, 236) + Complex(124, -448) * std::cosh(2 * x))
                        - 15.0 * Complex(37, -148) * std::cosh(4 * x);
    const Complex den = 8.0 * std::pow(std::cosh(x), 2) * std::pow(Complex(1, 6) - Complex(3, 6) * std::cosh(2 * x), 2);
    return num / den;
}

const PartnerModel& real_model()
{
    static const PartnerModel m = PartnerModel::from_state(spec(2.5), 2, 6);
    return m;
}

const PartnerModel& complex_model()
{
    static const PartnerModel m = PartnerModel::from_state(spec(Complex(0.5, 3.0)), 1, 2);
    return m;
}

} // namespace

TEST(PartnerModel, FactorEnergies)
{
    EXPECT_NEAR(std::abs(real_model().epsilon() - (-20.25)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(complex_model().epsilon() - Complex(3.0, -2.5) * Complex(3.0, -2.5)), 0.0, 1e-14);
    // the factorization energy lies below the base ground state
    EXPECT_LT(real_model().epsilon().real(), state_energy(spec(2.5), 2, 0).real());
    EXPECT_EQ(partner_ground_state(real_model(), 0.0), Complex(1.0));
}

TEST(PartnerModel, RejectsStatesWithNodes)
{
    try {
        PartnerModel::from_state(spec(2.5), 2, 3);
        FAIL();
    }
    catch (const NodeError& e) {
        EXPECT_EQ(e.x(), 0.0);
    }
    // (1 - s^2) c^mu-type state: the even n = 2 bound state of lambda = 3.5 has nodes off the origin
    EXPECT_THROW(PartnerModel::from_state(spec(3.5), 2, 2), NodeError);
}

TEST(PartnerModel, RejectsNonIntegrableInverse)
{
    // ground state of the well: 1/psi grows
    EXPECT_THROW(PartnerModel::from_state(spec(3.5), 2, 0), DomainError);
}

TEST(PartnerModel, RejectsNonEigenfunctions)
{
    EXPECT_THROW(PartnerModel::from_form(spec(2.5), SinhCoshForm({1.0, 0.0, 3.0}, 2.5), -20.25), InvalidArgument);
    EXPECT_THROW(PartnerModel::from_form(spec(2.5), SinhCoshForm({1.0, 0.0, 7.0}, 2.5), -20.0), InvalidArgument);
    EXPECT_NO_THROW(PartnerModel::from_form(spec(2.5), SinhCoshForm({1.0, 0.0, 7.0}, 2.5), -20.25));
}

TEST(Superpotential, PowerSeed)
{
    // psi = c^mu: W = mu tanh x
    const PartnerModel m = PartnerModel::from_form(spec(3.5), seed(spec(3.5), 1), -12.25);
    for (double x : {-2.0, 0.0, 0.7, 3.0}) {
        EXPECT_NEAR(std::abs(superpotential(m, x) - 3.5 * std::tanh(x)), 0.0, 1e-14);
        EXPECT_LE(factorization_residual(m, x), 1e-13);
    }
}

TEST(Superpotential, RealModelIsOdd)
{
    EXPECT_NEAR(std::abs(superpotential(real_model(), 0.0)), 0.0, 1e-15);
    for (double x : {0.3, 1.1, 2.7})
        EXPECT_NEAR(std::abs(superpotential(real_model(), x) + superpotential(real_model(), -x)), 0.0, 1e-13);
}

TEST(Superpotential, MatchesNumericalLogDerivative)
{
    const double x = 1.0, h = 1e-5;
    const SinhCoshForm& f = complex_model().factor_state();
    const Complex fd = (evaluate(f, x + h) - evaluate(f, x - h)) / (2 * h) / evaluate(f, x);
    EXPECT_NEAR(std::abs(superpotential(complex_model(), x) - fd), 0.0, 1e-6);
}

TEST(Factorization, ResidualVanishes)
{
    for (const PartnerModel* m : {&real_model(), &complex_model()})
        for (int i = 0; i <= 600; ++i) EXPECT_LE(factorization_residual(*m, -3.0 + 0.01 * i), 1e-9);
}

TEST(PartnerPotential, RealModelMatchesClosedForm)
{
    EXPECT_NEAR(std::abs(partner_potential(real_model(), 0.0) - (-36.75)), 0.0, 1e-9);
    for (int i = 0; i < 100; ++i) {
        const double x = -3.0 + 6.0 * i / 99.0;
        const double want = real_partner(x);
        EXPECT_NEAR(std::abs(partner_potential(real_model(), x) - want), 0.0, 1e-9 * std::max(1.0, std::abs(want)));
    }
    // deeper than the base well at the origin
    EXPECT_LT(partner_potential(real_model(), 0.0).real(), potential_value(spec(2.5), 0.0).real());
}

TEST(PartnerPotential, ComplexModelMatchesClosedForm)
{
    EXPECT_NEAR(std::abs(partner_potential(complex_model(), 0.0) - Complex(-3.75, -30.0)), 0.0, 1e-9);
    for (double x : {-2.5, -1.2, -0.4, 0.3, 0.9, 1.7, 2.9}) {
        const Complex want = complex_partner(x);
        EXPECT_NEAR(std::abs(partner_potential(complex_model(), x) - want), 0.0, 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST(PartnerPotential, FlatTails)
{
    for (const PartnerModel* m : {&real_model(), &complex_model()}) {
        EXPECT_LE(std::abs(partner_potential(*m, 15.0)), 1e-9);
        EXPECT_LE(std::abs(partner_potential(*m, -15.0)), 1e-9);
    }
}

TEST(PartnerGroundState, EigenpairResidual)
{
    for (const PartnerModel* m : {&real_model(), &complex_model()}) {
        auto v = [&](double x) { return partner_potential(*m, x); };
        auto psi = [&](double x) { return partner_ground_state(*m, x); };
        EXPECT_LE(fd_hamiltonian_residual(v, psi, m->epsilon(), Grid(-3.0, 3.0, 1e-3), FdStencil::FivePoint), 1e-5);
        // the three-point operator reaches the same bound here
        EXPECT_LE(fd_hamiltonian_residual(v, psi, m->epsilon(), Grid(-3.0, 3.0, 1e-3)), 1e-5);
    }
}

TEST(PartnerGroundState, NormStableUnderWindowGrowth)
{
    auto psi = [&](double x) { return partner_ground_state(real_model(), x); };
    const double n20 = quadrature_l2(psi, Grid(-20.0, 20.0, 1e-3));
    const double n25 = quadrature_l2(psi, Grid(-25.0, 25.0, 1e-3));
    EXPECT_GT(n20, 0.0);
    EXPECT_LE(std::abs(n25 - n20), 1e-8);
}

TEST(Intertwining, BaseBoundStatesMapToPartnerEigenfunctions)
{
    auto v = [&](double x) { return partner_potential(real_model(), x); };
    for (int n = 0; n < bound_state_count(spec(2.5)); ++n) {
        const SinhCoshForm b = state(spec(2.5), 2, n);
        auto psi = [&](double x) { return intertwine_state(real_model(), b, x); };
        EXPECT_LE(fd_hamiltonian_residual(v, psi, state_energy(spec(2.5), 2, n), Grid(-3.0, 3.0, 1e-3),
                                          FdStencil::FivePoint),
                  1e-5)
            << "n " << n;
    }
}

TEST(Intertwining, FactorStateIsAnnihilated)
{
    const PartnerModel m = PartnerModel::from_form(spec(3.5), seed(spec(3.5), 1), -12.25);
    for (double x : {-1.0, 0.0, 2.0})
        EXPECT_LE(std::abs(intertwine_state(m, m.factor_state(), x)), 1e-12 * std::abs(evaluate(m.factor_state(), x)));
}
