#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <utility>

#include "rljacobi/errors.hpp"

namespace rljacobi {

enum class RuleFamily { GaussJacobi, GaussLaguerre };

/// Weight family of a rule. For GaussJacobi the weight is (1-u)^alpha (1+u)^beta
/// on the reference interval; for GaussLaguerre it is x^alpha e^{-x}.
struct RuleKind {
    RuleFamily family = RuleFamily::GaussJacobi;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Nodes and positive weights of a weighted Gauss rule on [lower, upper].
///
/// Mapped rules fold the Jacobian and any absorbed endpoint factor into the
/// weights, so integrate() of the smooth remainder gives the full integral.
/// Laguerre rules additionally carry scaled_weights = w_i e^{x_i}, which stay
/// representable for large node counts where w_i underflows.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    Eigen::VectorXd scaled_weights;
    RuleKind kind;
    double lower = -1.0;
    double upper = 1.0;

    Eigen::Index order() const noexcept { return nodes.size(); }
};

/// n-point Gauss rule for (1-x)^alpha (1+x)^beta on [-1, 1].
QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta);

/// n-point Gauss rule for x^alpha e^{-x} on [0, inf).
QuadratureRule gauss_laguerre_rule(int n, double alpha);

/// Gauss rule for the weight (hi - s)^a_exp (s - lo)^b_exp on [lo, hi]; the
/// weight factor and Jacobian are included in the returned weights.
QuadratureRule mapped_jacobi_rule(int n, double lo, double hi, double a_exp, double b_exp);

/// Unweighted Gauss-Legendre on [lo, hi].
QuadratureRule gauss_legendre_rule(int n, double lo, double hi);

/// Rule in phi on [0, theta] whose weights absorb (cos phi - cos theta)^{alpha - 1/2}.
/// The exponent alpha - 1/2 sits on the phi = theta endpoint; the smooth ratio
/// (cos phi - cos theta) / (theta - phi) is folded into the weights as well.
QuadratureRule mehler_inner_rule(double theta, double alpha, int n);

template <typename F>
double integrate(const QuadratureRule& rule, F&& f) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rule.order(); ++i) sum += rule.weights(i) * f(rule.nodes(i));
    return sum;
}

inline double integrate(const QuadratureRule& rule, const Eigen::VectorXd& values) {
    return rule.weights.dot(values);
}

inline constexpr int kMaxNodes = 4096;

/// An integral estimate together with the integral of the absolute integrand,
/// which sets the scale for convergence tests on cancelling integrals.
struct Estimate {
    double value = 0.0;
    double magnitude = 0.0;
};

/// Doubles the node count from n0 until two successive estimates agree to
/// tol * max(|value|, magnitude). eval(n) returns an Estimate.
template <typename Eval>
Estimate converge_by_doubling(Eval&& eval, int n0, double tol, int nmax = kMaxNodes) {
    int n = std::max(n0, 1);
    Estimate prev = eval(n);
    double achieved = 0.0;
    while (n < nmax) {
        n = std::min(2 * n, nmax);
        Estimate next = eval(n);
        const double scale = std::max({std::abs(next.value), next.magnitude, 1e-300});
        achieved = std::abs(next.value - prev.value) / scale;
        if (achieved <= tol) return next;
        prev = next;
    }
    throw AccuracyError("quadrature did not converge within the node cap", achieved);
}

}  // namespace rljacobi
