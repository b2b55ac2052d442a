#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qineq/bounds.hpp>
#include <qineq/series.hpp>

#include "oracles.hpp"

using qineq::complex;
using qineq::ConfluentParams;
using qineq::PhiParams;
using qineq::QBase;

namespace {

// 2^{1/4} / (0.5;0.5)_inf and 1 / (0.5;0.5)_inf, from 40-digit products.
constexpr double aq_envelope_half_at_1 = 4.1179229173075814342;
constexpr double inv_poch_half = 3.4627466194550636115;
constexpr double aq_half_at_minus1 = 2.1726687508496636560;
constexpr double theta_half_at_1 = 2.1289368272118771587;

void expect_components_add_up(const qineq::EnvelopeResult& env)
{
    EXPECT_NEAR(env.log_bound, std::log(env.constant_c) + env.prefactor_log + env.exponent_term,
                1e-12 * std::max(1.0, std::abs(env.log_bound)));
}

} // namespace

TEST(ConstantC, Examples)
{
    const QBase q(0.5);
    EXPECT_DOUBLE_EQ(qineq::constant_c(ConfluentParams({}, {}, 1.0, q)), 1.0);
    EXPECT_DOUBLE_EQ(qineq::constant_c(ConfluentParams({0.0}, {}, 1.0, q)), 1.0);
    EXPECT_NEAR(qineq::constant_c(ConfluentParams({}, {0.5}, 1.0, q)), inv_poch_half, 1e-14);
}

TEST(ConstantC, UsesModuliOfNumerators)
{
    const QBase q(0.6);
    const double c1 = qineq::constant_c(ConfluentParams({complex(0.0, 0.8)}, {0.3}, 1.0, q));
    const double c2 = qineq::constant_c(ConfluentParams({complex(-0.8, 0.0)}, {0.3}, 1.0, q));
    EXPECT_DOUBLE_EQ(c1, c2);
    const auto num = oracle::poch(-0.8L, 0.6L, 500);
    const auto den = oracle::poch(0.3L, 0.6L, 500);
    EXPECT_NEAR(c1, static_cast<double>((num / den).real()), 1e-14 * c1);
}

TEST(TermPeak, Examples)
{
    const QBase q(0.5);
    EXPECT_NEAR(std::exp(qineq::term_peak(1.0, 1.0, q)), std::pow(0.5, -0.25), 1e-15);
    EXPECT_THROW(qineq::term_peak(0.0, 1.0, q), qineq::invalid_argument);
}

TEST(TermPeak, DominatesIntegerTerms)
{
    struct Case { double abs_z, l, q; };
    for (const Case c : {Case{4.0, 1.0, 0.5}, Case{0.01, 2.0, 0.9}}) {
        const double peak = qineq::term_peak(c.abs_z, c.l, QBase(c.q));
        double best = -INFINITY;
        for (int k = 0; k <= 60; ++k) {
            best = std::max(best, k * (c.l * (k - 1) * std::log(c.q) + std::log(c.abs_z)));
        }
        EXPECT_LE(best, peak + 1e-12);
    }
}

TEST(EnvelopeEntire, Examples)
{
    const ConfluentParams aq({}, {}, 1.0, QBase(0.5));
    const auto env = qineq::envelope_entire(aq, 1.0);
    ASSERT_TRUE(env.bound.has_value());
    EXPECT_NEAR(*env.bound, aq_envelope_half_at_1, 1e-14);
    EXPECT_GT(*env.bound, aq_half_at_minus1);
    expect_components_add_up(env);
    EXPECT_THROW(qineq::envelope_entire(aq, 0.0), qineq::invalid_argument);
}

TEST(EnvelopeEntire, SpecialisesToGaussianAqBound)
{
    for (double qv : {0.1, 0.5, 0.9}) {
        const QBase q(qv);
        const ConfluentParams p({}, {}, 1.0, q);
        for (double abs_z : {1e-6, 0.3, 1.0, 7.0, 1e6}) {
            const double a = qineq::envelope_entire(p, abs_z).log_bound;
            const double b = qineq::envelope_aq_gaussian(q, abs_z).log_bound;
            EXPECT_LE(std::abs(std::expm1(a - b)), 1e-13) << qv << " " << abs_z;
        }
    }
}

TEST(EnvelopeEntire, DominatesOnCircle)
{
    const ConfluentParams p({complex(0.0, 0.3)}, {0.2}, 0.5, QBase(0.7));
    const auto env = qineq::envelope_entire(p, 5.0);
    expect_components_add_up(env);
    for (int j = 0; j < 16; ++j) {
        const complex z = std::polar(5.0, 2.0 * std::numbers::pi * j / 16.0);
        EXPECT_LE(qineq::eval_confluent_f(p, z).log_abs, env.log_bound);
    }
}

TEST(EnvelopePhi, RoutesAgree)
{
    const PhiParams p({complex(0.4, -0.2)}, {0.1, 0.7}, QBase(0.6));
    const auto a = qineq::envelope_phi(p, 3.0);
    const auto b = qineq::envelope_phi_closed_form(p, 3.0);
    EXPECT_LE(std::abs(std::expm1(a.log_bound - b.log_bound)), 1e-13);
    expect_components_add_up(b);
}

TEST(EnvelopePhi, ClosedFormAtExcessOne)
{
    // r = s = 0: l = 1/2, bound = |z|^{1/2} q^{-3/8} exp(-log^2(|z| q^{-1/2}) / (2 log q)) / (q^{1/2};q)_inf
    const QBase q(0.5);
    const auto env = qineq::envelope_phi_closed_form(PhiParams({}, {}, q), 1.0);
    const double lq = std::log(0.5);
    const double poch = static_cast<double>(oracle::poch(std::sqrt(0.5L), 0.5L, 200).real());
    const double expect = -0.375 * lq + (0.25 * lq * lq) / (-2.0 * lq) - std::log(poch);
    EXPECT_NEAR(env.log_bound, expect, 1e-14);
}

TEST(EnvelopePhi, DominatesOnCircle)
{
    const PhiParams p({}, {0.0}, QBase(0.5));
    const auto env = qineq::envelope_phi(p, 2.0);
    for (int j = 0; j < 32; ++j) {
        const complex z = std::polar(2.0, 2.0 * std::numbers::pi * j / 32.0);
        EXPECT_LE(qineq::eval_phi(p, z).log_abs, env.log_bound);
    }
}

TEST(EnvelopeAqGaussian, Examples)
{
    const QBase q(0.5);
    EXPECT_NEAR(*qineq::envelope_aq_gaussian(q, 1.0).bound, aq_envelope_half_at_1, 1e-14);
    const double poch = static_cast<double>(oracle::poch(0.5L, 0.5L, 200).real());
    EXPECT_NEAR(qineq::envelope_aq_gaussian(q, std::numbers::e).log_bound,
                0.5 + 0.25 * std::log(2.0) + 1.0 / (4.0 * std::log(2.0)) - std::log(poch), 1e-14);
    EXPECT_THROW(qineq::envelope_aq_gaussian(q, 0.0), qineq::invalid_argument);
}

TEST(EnvelopeAqGaussian, Dominates)
{
    const QBase q(0.3);
    for (int i = 0; i < 100; ++i) {
        const double abs_z = std::exp(std::log(1e-4) + std::log(1e8) * i / 99.0);
        const double bound = qineq::envelope_aq_gaussian(q, abs_z).log_bound;
        for (int j = 0; j < 4; ++j) {
            const complex z = std::polar(abs_z, std::numbers::pi * j / 2.0);
            EXPECT_LE(qineq::eval_ramanujan_aq(q, z).log_abs, bound + 1e-12);
        }
    }
}

TEST(EnvelopeAqExponential, Examples)
{
    const QBase q(0.5);
    EXPECT_DOUBLE_EQ(*qineq::envelope_aq_exponential(q, 0.0).bound, 1.0);
    EXPECT_NEAR(*qineq::envelope_aq_exponential(q, 1.0).bound, std::numbers::e, 1e-15);
    EXPECT_THROW(qineq::envelope_aq_exponential(q, -1.0), qineq::invalid_argument);
    for (int i = 0; i < 100; ++i) {
        const complex z = std::polar(0.5 * i, 0.37 * i);
        EXPECT_LE(qineq::eval_ramanujan_aq(q, z).log_abs,
                  qineq::envelope_aq_exponential(q, std::abs(z)).log_bound + 1e-12);
    }
}

TEST(MeromorphicBoundParams, Examples)
{
    const QBase q(0.3);
    auto p = qineq::meromorphic_bound_params(1.0, q);
    EXPECT_NEAR(p.beta, 1.0 / (4.0 * std::log(1.0 / 0.3)), 1e-15);
    EXPECT_DOUBLE_EQ(p.gamma, 2.0);
    p = qineq::meromorphic_bound_params(1.0, QBase(std::exp(-1.0)));
    EXPECT_NEAR(p.beta, 0.25, 1e-15);
    EXPECT_THROW(qineq::meromorphic_bound_params(0.0, q), qineq::invalid_argument);

    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> ua(1e-3, 10.0);
    for (int i = 0; i < 50; ++i) {
        const auto r = qineq::meromorphic_bound_params(ua(gen), q);
        EXPECT_GT(r.gamma, 1.0);
        EXPECT_GT(r.beta, 0.0);
    }
}

TEST(EnvelopeMeromorphic, Examples)
{
    const auto p = qineq::meromorphic_bound_params(1.0, QBase(std::exp(-1.0)));
    EXPECT_DOUBLE_EQ(*qineq::envelope_meromorphic(p, 1.0, 1.0).bound, 1.0);
    EXPECT_NEAR(*qineq::envelope_meromorphic(p, 1.0, std::numbers::e).bound, std::exp(0.25), 1e-15);
    EXPECT_THROW(qineq::envelope_meromorphic(p, 1.0, 0.0), qineq::invalid_argument);
}

TEST(EnvelopeMeromorphic, TermDomination)
{
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = 0.05 + 4.95 * u(gen);
        const double qv = 0.05 + 0.9 * u(gen);
        const double dist = std::exp(20.0 * u(gen) - 10.0);
        const auto p = qineq::meromorphic_bound_params(alpha, QBase(qv));
        const double bound = qineq::envelope_meromorphic(p, 1.0, dist).log_bound;
        for (int k = -40; k <= 40; ++k) {
            const double ak = std::abs(static_cast<double>(k));
            const double lt = std::pow(ak, alpha + 1.0) * std::log(qv) + k * std::log(dist);
            ASSERT_LE(lt, bound + 1e-12) << alpha << " " << qv << " " << dist << " k=" << k;
        }
    }
}

TEST(ThetaWeightedConstant, Examples)
{
    const QBase q(0.5);
    EXPECT_THROW(qineq::theta_weighted_constant(0.0, q), qineq::invalid_argument);
    EXPECT_THROW(qineq::theta_weighted_constant(1.0, q), qineq::invalid_argument);
    const double c = qineq::theta_weighted_constant(0.5, q);
    const double ref = static_cast<double>(oracle::theta_weighted(0.5, 0.5, 200));
    EXPECT_GE(c, 1.0);
    EXPECT_GE(c, ref * (1.0 - 1e-15));
    EXPECT_LE(c, ref * (1.0 + 1e-13));
    EXPECT_GE(qineq::theta_weighted_constant(0.75, q), qineq::theta_weighted_constant(0.25, q));
}

TEST(EnvelopeTheta, Examples)
{
    const QBase q(0.5);
    const auto env = qineq::envelope_theta(0.5, q, 1.0);
    EXPECT_DOUBLE_EQ(*env.bound, qineq::theta_weighted_constant(0.5, q));
    EXPECT_GT(*env.bound, theta_half_at_1);
    for (double r : {1e-3, 0.2, 3.0, 50.0}) {
        EXPECT_NEAR(qineq::envelope_theta(0.5, q, r).log_bound,
                    qineq::envelope_theta(0.5, q, 1.0 / r).log_bound, 1e-12);
    }
    EXPECT_THROW(qineq::envelope_theta(0.5, q, 0.0), qineq::invalid_argument);
    EXPECT_THROW(qineq::envelope_theta(1.5, q, 1.0), qineq::invalid_argument);
}

TEST(EnvelopeTheta, DominatesOnRings)
{
    const QBase q(0.3);
    for (double r : {0.01, 0.1, 10.0, 100.0}) {
        const double bound = qineq::envelope_theta(0.5, q, r).log_bound;
        for (int j = 0; j < 16; ++j) {
            const complex z = std::polar(r, 2.0 * std::numbers::pi * j / 16.0);
            EXPECT_LE(qineq::eval_theta(q, z).log_abs, bound + 1e-12);
        }
    }
}

TEST(EnvelopeTheta, OverflowMarker)
{
    const auto env = qineq::envelope_theta(0.25, QBase(0.9), 1e4);
    EXPECT_FALSE(env.bound.has_value());
    EXPECT_TRUE(std::isfinite(env.log_bound));
    EXPECT_GT(env.log_bound, 1e6);
}

TEST(EnvelopeThetaAsPrinted, LiteralFormula)
{
    const QBase q(0.4);
    const double c = qineq::theta_weighted_constant(0.5, q);
    const double big_l = std::log(20.0);
    EXPECT_NEAR(qineq::envelope_theta_as_printed(0.5, q, 20.0).log_bound,
                std::log(c) + big_l * big_l / (0.5 * std::log(1.0 / 0.4)), 1e-12);
}
