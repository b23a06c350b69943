#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rljacobi/jtransform.hpp"

using namespace rljacobi;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

TEST_SUITE("jtransform") {

TEST_CASE("HalfLineFunctionSpec construction and parsing") {
    const JacobiParams p(0.5, 0.0);
    CHECK_THROWS_AS(HalfLineFunctionSpec::indicator(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(HalfLineFunctionSpec::indicator(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(HalfLineFunctionSpec::indicator(1.0, INFINITY), DomainError);
    // weighted norm needs c > 2(alpha + beta + 1) = 3
    CHECK_THROWS_AS(HalfLineFunctionSpec::exp_decay({1.0}, 3.0, p), DomainError);
    CHECK_NOTHROW(HalfLineFunctionSpec::exp_decay({1.0}, 3.01, p));
    CHECK_THROWS_AS(HalfLineFunctionSpec::grid_sampled({0.0, 0.0}, {1.0, 1.0}), DomainError);

    const HalfLineFunctionSpec ind = HalfLineFunctionSpec::parse("indicator:1,2", p);
    CHECK(ind(1.5) == 1.0);
    CHECK(ind(2.5) == 0.0);
    const HalfLineFunctionSpec e = HalfLineFunctionSpec::parse("expdecay:4:1,2", p);
    CHECK(e(1.0) == doctest::Approx(3.0 * std::exp(-4.0)));
    const HalfLineFunctionSpec g = HalfLineFunctionSpec::parse("grid:0,0,1,1,2,0", p);
    CHECK(g(0.5) == doctest::Approx(0.5));
    CHECK(g(1.75) == doctest::Approx(0.25));
    CHECK(g(3.0) == 0.0);
    CHECK_THROWS_AS(HalfLineFunctionSpec::parse("indicator:1", p), DomainError);
    CHECK_THROWS_AS(HalfLineFunctionSpec::parse("expdecay:2:1", p), DomainError);
    CHECK_THROWS_AS(HalfLineFunctionSpec::parse("grid:0,1,2", p), DomainError);
    CHECK_THROWS_AS(HalfLineFunctionSpec::parse("gauss:1", p), DomainError);
}

TEST_CASE("jacobi_function examples") {
    for (double tau : {0.0, 0.7, 4.0, 31.0})
        CHECK(jacobi_function(tau, 1.3, JacobiParams(-0.5, -0.5)) == doctest::Approx(std::cos(1.3 * tau)).epsilon(1e-13).scale(1.0));
    for (const JacobiParams& p : {JacobiParams(0.5, 0.0), JacobiParams(-0.5, 0.25), JacobiParams(2.0, -0.9)})
        CHECK(jacobi_function(5.0, 0.0, p) == 1.0);
    CHECK(jacobi_function(2.0, 1.0, JacobiParams(0.5, 0.0)) ==
          doctest::Approx(oracle::jacobi_function_series(2.0, 1.0, 0.5, 0.0)).epsilon(1e-7));
    // high-precision value of the defining series
    CHECK(jacobi_function(2.0, 1.0, JacobiParams(0.5, 0.0)) == doctest::Approx(0.32600417726341617559).epsilon(1e-10));
}

TEST_CASE("jacobi_function domain") {
    CHECK_THROWS_AS(jacobi_function(1.0, 1.0, JacobiParams(-0.6, 0.5)), DomainError);
    CHECK_THROWS_AS(jacobi_function(1.0, 1.0, JacobiParams(-0.5, -0.75)), DomainError);
    CHECK_THROWS_AS(jacobi_function(1.0, -0.1, JacobiParams(0.5, 0.0)), DomainError);
    CHECK_THROWS_AS(jacobi_function(-1.0, 1.0, JacobiParams(0.5, 0.0)), DomainError);
}

TEST_CASE("integral representation agrees with the defining series") {
    for (const JacobiParams& p : {JacobiParams(0.5, 0.0), JacobiParams(1.0, 0.5), JacobiParams(0.0, -0.25)}) {
        for (double t : {0.1, 1.0, 3.0}) {
            JacobiFunction phi(p, t);
            for (double tau : {0.0, 1.0, 5.0, 20.0}) {
                const double ref = oracle::jacobi_function_ode(tau, t, p.alpha(), p.beta());
                CHECK(phi(tau) == doctest::Approx(ref).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("limit formula at alpha = -1/2") {
    // mpmath evaluation of the defining series at tau = 2, t = 1.3
    CHECK(jacobi_function(2.0, 1.3, JacobiParams(-0.5, 0.25)) == doctest::Approx(-0.49549017571427713779).epsilon(1e-10));
    CHECK(jacobi_function(2.0, 1.3, JacobiParams(-0.5, 0.0)) == doctest::Approx(-0.57896993347012344875).epsilon(1e-10));
    for (double b : {0.25, 0.0, 0.9}) {
        for (double t : {0.2, 1.5, 3.0}) {
            for (double tau : {0.0, 3.0, 12.0}) {
                const double ref = oracle::jacobi_function_ode(tau, t, -0.5, b);
                CHECK(jacobi_function(tau, t, JacobiParams(-0.5, b)) == doctest::Approx(ref).epsilon(1e-8).scale(1e-3));
            }
        }
    }
}

TEST_CASE("continuity in alpha at -1/2") {
    for (double t : {0.5, 2.0}) {
        for (double tau : {0.0, 4.0}) {
            const double lim = jacobi_function(tau, t, JacobiParams(-0.5, 0.25));
            const double near = jacobi_function(tau, t, JacobiParams(-0.5 + 1e-4, 0.25));
            CHECK(std::abs(lim - near) <= 1e-3);
        }
    }
}

TEST_CASE("cosine reduction of indicator transforms") {
    const JacobiParams p(-0.5, -0.5);
    const double pref = transform_prefactor(p);
    CHECK(pref == doctest::Approx(std::sqrt(2.0) / std::sqrt(std::numbers::pi)));
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> end(0.0, 6.0), freq(0.1, 60.0);
    for (int trial = 0; trial < 12; ++trial) {
        double a = end(gen), b = end(gen);
        if (a > b) std::swap(a, b);
        b += 0.05;
        const double tau = freq(gen);
        const double ref = pref * (std::sin(tau * b) - std::sin(tau * a)) / tau;
        const double got = transform(HalfLineFunctionSpec::indicator(a, b), tau, p);
        CHECK(std::abs(got - ref) <= 1e-9 * std::max(std::abs(ref), pref / tau));
    }
    CHECK(transform(HalfLineFunctionSpec::indicator(1.0, 3.0), 0.0, p) == doctest::Approx(2.0 * pref).epsilon(1e-12));
}

TEST_CASE("transform of decaying and sampled functions") {
    const JacobiParams p(-0.5, -0.5);
    const double pref = transform_prefactor(p);
    // int e^{-ct} cos(tau t) = c/(c^2+tau^2); int t e^{-ct} cos(tau t) = (c^2-tau^2)/(c^2+tau^2)^2
    const double c = 0.8;
    for (double tau : {0.0, 0.5, 3.0}) {
        const double d = c * c + tau * tau;
        CHECK(transform(HalfLineFunctionSpec::exp_decay({1.0}, c, p), tau, p) == doctest::Approx(pref * c / d).epsilon(1e-10));
        CHECK(transform(HalfLineFunctionSpec::exp_decay({0.0, 1.0}, c, p), tau, p) ==
              doctest::Approx(pref * (c * c - tau * tau) / (d * d)).epsilon(1e-9).scale(1e-3));
    }
    // hat function on [0, 2]
    const HalfLineFunctionSpec hat = HalfLineFunctionSpec::grid_sampled({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    for (double tau : {0.5, 2.0, 7.0}) {
        const double ref = pref * (2.0 * std::cos(tau) - 1.0 - std::cos(2.0 * tau)) / (tau * tau);
        CHECK(transform(hat, tau, p) == doctest::Approx(ref).epsilon(1e-9).scale(1e-3));
    }
    const HalfLineFunctionSpec zero = HalfLineFunctionSpec::grid_sampled({0.5, 1.0}, {0.0, 0.0});
    CHECK(transform(zero, 3.0, JacobiParams(0.5, 0.0)) == 0.0);
    CHECK(transform(HalfLineFunctionSpec::exp_decay({0.0}, 4.0, JacobiParams(0.5, 0.0)), 3.0, JacobiParams(0.5, 0.0)) == 0.0);
    CHECK_THROWS_AS(transform(HalfLineFunctionSpec::exp_decay({1.0}, 0.8, p), 1.0, JacobiParams(0.5, 0.0)), DomainError);
}

TEST_CASE("transform against an adaptive oracle") {
    const JacobiParams p(0.5, 0.0);
    for (double tau : {0.0, 3.0}) {
        const double ref = transform_prefactor(p) * oracle::tanh_sinh(
                                                        [&](double t, double, double) {
                                                            return oracle::jacobi_function_series(tau, t, 0.5, 0.0) *
                                                                   std::pow(std::sinh(t), 2.0) * std::cosh(t);
                                                        },
                                                        1.0, 2.0, 1e-12);
        CHECK(transform(HalfLineFunctionSpec::indicator(1.0, 2.0), tau, p) == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("transform sweep matches single evaluations") {
    const JacobiParams p(1.0, 0.5);
    const HalfLineFunctionSpec f = HalfLineFunctionSpec::grid_sampled({0.2, 0.9, 1.7}, {1.0, -0.5, 2.0});
    const std::vector<double> taus{0.0, 2.5, 9.0};
    const Eigen::VectorXd s = transform_sweep(f, taus, p);
    for (std::size_t i = 0; i < taus.size(); ++i)
        CHECK(s(i) == doctest::Approx(transform(f, taus[i], p)).epsilon(1e-9).scale(1e-6));
}

TEST_CASE("envelope estimate") {
    const std::vector<double> t = linspace(0.0, 20.0, 41), tau = linspace(0.0, 50.0, 26);
    const EnvelopeReport cos_case = envelope_check(JacobiParams(-0.5, -0.5), t, tau);
    CHECK(cos_case.c_star <= 1.0 + 1e-12);
    CHECK(cos_case.holds());
    for (const JacobiParams& p : {JacobiParams(0.5, 0.0), JacobiParams(-0.5, 0.25)}) {
        const EnvelopeReport r = envelope_check(p, t, tau);
        CHECK(r.c_star > 0.0);
        CHECK(r.holds());
        CHECK(r.verification_points == 80 * 50);
    }
    // a failed verification is reported, not thrown
    const std::vector<double> coarse_t{0.5, 4.0}, coarse_tau{0.0, 10.0};
    EnvelopeReport bad;
    CHECK_NOTHROW(bad = envelope_check(JacobiParams(0.5, 0.0), coarse_t, coarse_tau, 0.0));
    CHECK_FALSE(bad.holds());
}

TEST_CASE("transforms are bounded by the envelope integral (property)") {
    const JacobiParams p(0.5, 0.0);
    const EnvelopeReport env = envelope_check(p, linspace(0.0, 20.0, 41), linspace(0.0, 50.0, 26));
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> end(0.0, 4.0), freq(0.0, 50.0);
    for (int trial = 0; trial < 6; ++trial) {
        double a = end(gen), b = end(gen);
        if (a > b) std::swap(a, b);
        const HalfLineFunctionSpec f = HalfLineFunctionSpec::indicator(a, b + 0.1);
        const double bound = transform_prefactor(p) * env.c_star * env.slack * envelope_integral(f, p);
        const std::vector<double> taus{0.0, freq(gen), freq(gen)};
        const Eigen::VectorXd v = transform_sweep(f, taus, p);
        CHECK(v.cwiseAbs().maxCoeff() <= bound);
    }
}

TEST_CASE("indicator transforms vanish at infinity") {
    const JacobiParams p(0.5, 0.0);
    const HalfLineFunctionSpec f = HalfLineFunctionSpec::indicator(1.0, 2.0);
    const Eigen::VectorXd low = transform_sweep(f, linspace(5.0, 10.0, 21), p);
    const Eigen::VectorXd high = transform_sweep(f, linspace(200.0, 400.0, 41), p);
    CHECK(high.cwiseAbs().maxCoeff() < 0.2 * low.cwiseAbs().maxCoeff());
}

TEST_CASE("envelope_integral closed form") {
    // (-1/2, -1/2): int_a^b (1 + t) dt
    CHECK(envelope_integral(HalfLineFunctionSpec::indicator(1.0, 3.0), JacobiParams(-0.5, -0.5)) ==
          doctest::Approx(2.0 + 4.0).epsilon(1e-12));
    // int_0^inf e^{-t} (1 + t) dt = 2
    CHECK(envelope_integral(HalfLineFunctionSpec::exp_decay({1.0}, 1.0, JacobiParams(-0.5, -0.5)), JacobiParams(-0.5, -0.5)) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(quarter_points(std::vector<double>{0.0, 4.0}) == std::vector<double>{1.0, 3.0});
}

}  // TEST_SUITE
