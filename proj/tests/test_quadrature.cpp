#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rljacobi/quadrature.hpp"
#include "rljacobi/specfun.hpp"

using namespace rljacobi;
using std::numbers::pi;

namespace {

double jacobi_mass(double a, double b) { return std::pow(2.0, a + b + 1.0) * beta_function(a + 1.0, b + 1.0); }

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Jacobi examples") {
    const QuadratureRule one = gauss_jacobi_rule(1, 0.0, 0.0);
    REQUIRE(one.order() == 1);
    CHECK(one.nodes(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    CHECK(one.weights(0) == doctest::Approx(2.0).epsilon(1e-15));

    const QuadratureRule r12 = gauss_jacobi_rule(12, 0.5, -0.25);
    CHECK(r12.weights.sum() == doctest::Approx(std::pow(2.0, 1.25) * beta_function(1.5, 0.75)).epsilon(1e-13));

    const QuadratureRule leg = gauss_jacobi_rule(20, 0.0, 0.0);
    CHECK(integrate(leg, [](double x) { return std::pow(x, 38); }) == doctest::Approx(2.0 / 39.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Laguerre examples") {
    const QuadratureRule one = gauss_laguerre_rule(1, 0.0);
    CHECK(one.nodes(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.weights(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gauss_laguerre_rule(10, 0.0).weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate(gauss_laguerre_rule(15, 2.0), [](double x) { return x * x * x; }) ==
          doctest::Approx(120.0).epsilon(1e-12));
}

TEST_CASE("weight mass invariants over a parameter sweep") {
    for (int n : {1, 2, 5, 33, 200, 1500}) {
        for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, -0.5}, {-0.9, 0.7}, {2.0, 1.0}, {0.5, -0.75}}) {
            const QuadratureRule r = gauss_jacobi_rule(n, a, b);
            CHECK(r.weights.sum() == doctest::Approx(jacobi_mass(a, b)).epsilon(1e-12));
            CHECK((r.weights.array() > 0.0).all());
            CHECK(r.nodes(0) > -1.0);
            CHECK(r.nodes(n - 1) < 1.0);
        }
    }
    for (int n : {1, 3, 40, 150}) {
        for (double a : {0.0, -0.6, 1.0, 3.7}) {
            const QuadratureRule r = gauss_laguerre_rule(n, a);
            CHECK(r.weights.sum() == doctest::Approx(std::tgamma(a + 1.0)).epsilon(1e-12));
            CHECK((r.weights.array() > 0.0).all());
        }
    }
}

TEST_CASE("scaled Laguerre weights stay usable past weight underflow") {
    const double a = 1.0;
    const QuadratureRule r = gauss_laguerre_rule(800, a);
    CHECK(r.nodes(r.order() - 1) > 1000.0);  // w_i underflows out here
    CHECK((r.scaled_weights.array() > 0.0).all());
    double mass = 0.0, second = 0.0;
    for (Eigen::Index i = 0; i < r.order(); ++i) {
        const double t = r.scaled_weights(i) * std::exp(-r.nodes(i));
        mass += t;
        second += t * r.nodes(i) * r.nodes(i);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(second == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("polynomial exactness on random polynomials (property)") {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), par(-0.95, 2.5);
    std::uniform_int_distribution<int> count(1, 40);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = count(gen);
        const double a = par(gen), b = par(gen);
        const int deg = 2 * n - 1;
        Eigen::VectorXd c(deg + 1);
        for (int m = 0; m <= deg; ++m) c(m) = coef(gen);
        // moments of y = (1+x)/2 against (1-x)^a (1+x)^b
        double exact = 0.0, scale = 0.0;
        for (int m = 0; m <= deg; ++m) {
            const double mom = std::pow(2.0, a + b + 1.0) * beta_function(a + 1.0, b + m + 1.0);
            exact += c(m) * mom;
            scale += std::abs(c(m)) * mom;
        }
        const QuadratureRule r = gauss_jacobi_rule(n, a, b);
        const double got = integrate(r, [&](double x) {
            const double y = 0.5 * (1.0 + x);
            double s = 0.0;
            for (int m = deg; m >= 0; --m) s = s * y + c(m);
            return s;
        });
        CHECK(std::abs(got - exact) <= 1e-11 * scale);

        // Laguerre: coefficients c_m / m! keep the moments Gamma(m+a+1)/m! balanced
        const double la = std::abs(a);
        double lexact = 0.0, lscale = 0.0;
        for (int m = 0; m <= deg; ++m) {
            const double mom = std::exp(std::lgamma(m + la + 1.0) - std::lgamma(m + 1.0));
            lexact += c(m) * mom;
            lscale += std::abs(c(m)) * mom;
        }
        const QuadratureRule lr = gauss_laguerre_rule(n, la);
        const double lgot = integrate(lr, [&](double x) {
            double s = 0.0;
            for (int m = deg; m >= 0; --m) s = s * x + c(m) / std::tgamma(m + 1.0);
            return s;
        });
        CHECK(std::abs(lgot - lexact) <= 1e-11 * lscale);
    }
}

TEST_CASE("nodes of consecutive rules interlace") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.7, 1.3}, {3.0, -0.5}}) {
        for (int n : {2, 7, 30, 101}) {
            const QuadratureRule lo = gauss_jacobi_rule(n, a, b), hi = gauss_jacobi_rule(n + 1, a, b);
            for (int i = 0; i < n; ++i) {
                CHECK(hi.nodes(i) < lo.nodes(i));
                CHECK(lo.nodes(i) < hi.nodes(i + 1));
            }
        }
    }
    for (int n : {2, 9, 60}) {
        const QuadratureRule lo = gauss_laguerre_rule(n, 0.5), hi = gauss_laguerre_rule(n + 1, 0.5);
        for (int i = 0; i < n; ++i) {
            CHECK(hi.nodes(i) < lo.nodes(i));
            CHECK(lo.nodes(i) < hi.nodes(i + 1));
        }
    }
}

TEST_CASE("integrate examples and linearity") {
    const QuadratureRule leg = gauss_jacobi_rule(8, 0.0, 0.0);
    CHECK(integrate(leg, [](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-15));

    for (auto [a, b] : {std::pair{-0.5, -0.5}, {0.0, 0.0}, {0.5, -0.25}, {2.0, 1.0}}) {
        const JacobiParams p(a, b);
        const QuadratureRule r = gauss_jacobi_rule(10, a, b);
        const double orth = integrate(r, [&](double x) { return jacobi_R(5, p, x) * jacobi_R(3, p, x); });
        CHECK(std::abs(orth) <= 1e-12);
        const double sq = integrate(r, [&](double x) { return std::pow(jacobi_R(4, p, x), 2); });
        CHECK(sq == doctest::Approx(std::pow(2.0, a + b + 1.0) / h_normalizer(4, p)).epsilon(1e-10));
    }

    const QuadratureRule r = gauss_jacobi_rule(25, 0.3, -0.6);
    auto f = [](double x) { return std::exp(x) * std::sin(3 * x); };
    auto g = [](double x) { return 1.0 / (2.0 + x); };
    const double lhs = integrate(r, [&](double x) { return 2.5 * f(x) - 0.75 * g(x); });
    CHECK(lhs == doctest::Approx(2.5 * integrate(r, f) - 0.75 * integrate(r, g)).epsilon(1e-14));
}

TEST_CASE("rule construction rejects bad input") {
    CHECK_THROWS_AS(gauss_jacobi_rule(0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_jacobi_rule(4, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_laguerre_rule(4, -1.5), DomainError);
    CHECK_THROWS_AS(mapped_jacobi_rule(4, 1.0, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(mehler_inner_rule(1e-9, 0.5, 10), DomainError);
    CHECK_THROWS_AS(mehler_inner_rule(1.0, -0.5, 10), DomainError);
}

TEST_CASE("mapped rules") {
    // int_2^5 (5-s)^0.5 (s-2)^-0.3 ds = 3^{1.2} B(1.5, 0.7)
    const QuadratureRule r = mapped_jacobi_rule(6, 2.0, 5.0, 0.5, -0.3);
    CHECK(r.weights.sum() == doctest::Approx(std::pow(3.0, 1.2) * beta_function(1.5, 0.7)).epsilon(1e-13));
    CHECK(r.lower == 2.0);
    CHECK(r.upper == 5.0);

    const QuadratureRule gl = gauss_legendre_rule(9, -1.0, 3.0);
    CHECK(integrate(gl, [](double s) { return s * s * s * s; }) == doctest::Approx((243.0 + 1.0) / 5.0).epsilon(1e-14));
}

TEST_CASE("mehler_inner_rule") {
    // alpha = 1/2: exponent zero, plain Gauss-Legendre on [0, theta]
    const QuadratureRule m = mehler_inner_rule(1.1, 0.5, 12);
    const QuadratureRule gl = gauss_legendre_rule(12, 0.0, 1.1);
    for (int i = 0; i < 12; ++i) {
        CHECK(m.nodes(i) == doctest::Approx(gl.nodes(i)).epsilon(1e-15));
        CHECK(m.weights(i) == doctest::Approx(gl.weights(i)).epsilon(1e-14));
    }

    // theta = pi/2, alpha = 0: int_0^{pi/2} (cos phi)^{-1/2} dphi = B(1/4, 1/2) / 2
    const double closed = 0.5 * beta_function(0.25, 0.5);
    const double adaptive = oracle::tanh_sinh(
        [](double, double, double to_hi) { return 1.0 / std::sqrt(std::sin(to_hi)); }, 0.0, pi / 2);
    CHECK(adaptive == doctest::Approx(closed).epsilon(1e-12));
    const QuadratureRule h = mehler_inner_rule(pi / 2, 0.0, 40);
    CHECK(h.weights.sum() == doctest::Approx(adaptive).epsilon(1e-12));

    // self-convergence on the Dirichlet-Mehler integrand at (k, a, b, theta) = (5, 0.5, 0, 1.0)
    const double a = 0.5, b = 0.0, theta = 1.0;
    auto smooth = [&](double phi) {
        const double z = (std::cos(phi) - std::cos(theta)) / (1.0 + std::cos(phi));
        return std::cos((5 + (a + b + 1) / 2) * phi) * std::pow(1.0 + std::cos(phi), -(a + b) / 2) *
               hyp2f1((a + b + 1) / 2, (a + b) / 2, a + 0.5, z);
    };
    const double i40 = integrate(mehler_inner_rule(theta, a, 40), smooth);
    const double i80 = integrate(mehler_inner_rule(theta, a, 80), smooth);
    CHECK(std::abs(i40 - i80) < 1e-10);
}

}  // TEST_SUITE
