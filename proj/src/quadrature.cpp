#include "rljacobi/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <sstream>
#include <vector>

#include "rljacobi/specfun.hpp"

namespace rljacobi {

namespace {

// Three-term recurrence of the orthonormal polynomials:
//   x p_j = off(j+1) p_{j+1} + diag(j) p_j + off(j) p_{j-1}.
struct Recurrence {
    Eigen::VectorXd diag;     // j = 0..n-1
    Eigen::VectorXd off;      // off(j) for j = 0..n, off(0) unused
    double log_mass = 0.0;    // log of the total weight mass mu_0
};

Recurrence jacobi_recurrence(int n, double a, double b) {
    Recurrence r;
    r.diag.resize(n);
    r.off.setZero(n + 1);
    for (int j = 0; j < n; ++j) {
        if (j == 0) {
            r.diag(j) = (b - a) / (a + b + 2.0);
        } else {
            const double c = 2.0 * j + a + b;
            r.diag(j) = (b * b - a * a) / (c * (c + 2.0));
        }
    }
    for (int j = 1; j <= n; ++j) {
        const double c = 2.0 * j + a + b;
        double sq;
        if (j == 1) {
            sq = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
        } else {
            sq = 4.0 * j * (j + a) * (j + b) * (j + a + b) / (c * c * (c + 1.0) * (c - 1.0));
        }
        r.off(j) = std::sqrt(sq);
    }
    r.log_mass = (a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                 log_gamma(a + b + 2.0);
    return r;
}

Recurrence laguerre_recurrence(int n, double alpha) {
    Recurrence r;
    r.diag.resize(n);
    r.off.setZero(n + 1);
    for (int j = 0; j < n; ++j) r.diag(j) = 2.0 * j + alpha + 1.0;
    for (int j = 1; j <= n; ++j) r.off(j) = std::sqrt(j * (j + alpha));
    r.log_mass = log_gamma(alpha + 1.0);
    return r;
}

struct NodeEval {
    double newton_step;  // p_n / p_n'
    double log_christoffel_sum;  // log sum_{j<n} p_j^2
};

// Runs the orthonormal recurrence at x; mantissas are rescaled by 2^-500
// whenever they grow past 2^500 so large Laguerre nodes stay finite.
NodeEval evaluate_at(const Recurrence& r, int n, double x) {
    constexpr double kBig = 0x1p+500;
    constexpr double kLogBig = 500.0 * std::numbers::ln2;
    double log_scale = 0.0;
    double p_prev = 0.0, dp_prev = 0.0;
    double p = std::exp(-0.5 * r.log_mass), dp = 0.0;
    double sum = p * p;
    for (int j = 0; j < n - 1; ++j) {
        const double p_next = ((x - r.diag(j)) * p - r.off(j) * p_prev) / r.off(j + 1);
        const double dp_next = (p + (x - r.diag(j)) * dp - r.off(j) * dp_prev) / r.off(j + 1);
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
        sum += p * p;
        if (std::abs(p) > kBig || std::abs(dp) > kBig) {
            p /= kBig;
            dp /= kBig;
            p_prev /= kBig;
            dp_prev /= kBig;
            sum /= kBig * kBig;
            log_scale += kLogBig;
        }
    }
    const int j = n - 1;
    const double q = (x - r.diag(j)) * p - r.off(j) * p_prev;
    const double dq = p + (x - r.diag(j)) * dp - r.off(j) * dp_prev;
    return {q / dq, std::log(sum) + 2.0 * log_scale};
}

QuadratureRule build_rule(const Recurrence& r, int n, RuleKind kind, double lower, double upper) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    Eigen::VectorXd sub = r.off.segment(1, std::max(n - 1, 0));
    solver.computeFromTridiagonal(r.diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw AccuracyError("Jacobi-matrix eigenvalue iteration failed", 0.0);

    QuadratureRule rule;
    rule.kind = kind;
    rule.lower = lower;
    rule.upper = upper;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    if (kind.family == RuleFamily::GaussLaguerre) rule.scaled_weights.resize(n);

    for (int i = 0; i < n; ++i) {
        double x = rule.nodes(i);
        double last = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 12; ++it) {
            const double step = evaluate_at(r, n, x).newton_step;
            // A step that fails to shrink means roundoff has taken over.
            if (it > 0 && std::abs(step) >= last) break;
            x -= step;
            last = std::abs(step);
            if (last <= 1e-15 * std::max(std::abs(x), 1e-2)) break;
        }
        if (!(last <= 1e-11 * std::max(1.0, std::abs(x)))) {
            std::ostringstream msg;
            msg << "Newton refinement of node " << i << " of " << n << " stalled at x = " << x
                << ", last step " << last;
            throw AccuracyError(msg.str(), last);
        }
        rule.nodes(i) = x;
        const double log_sum = evaluate_at(r, n, x).log_christoffel_sum;
        rule.weights(i) = std::exp(-log_sum);
        if (kind.family == RuleFamily::GaussLaguerre) rule.scaled_weights(i) = std::exp(x - log_sum);
    }

    for (int i = 0; i < n; ++i) {
        const bool inside = rule.nodes(i) > lower && rule.nodes(i) < upper;
        const bool ordered = i == 0 || rule.nodes(i) > rule.nodes(i - 1);
        if (!inside || !ordered) {
            std::ostringstream msg;
            msg << "quadrature nodes not strictly increasing inside the support (n = " << n
                << ", node " << i << " = " << rule.nodes(i) << ")";
            throw AccuracyError(msg.str(), 0.0);
        }
    }
    return rule;
}

void check_count(int n) {
    if (n < 1) throw DomainError("quadrature rule needs at least one node");
}

}  // namespace

namespace {

// Reference rules are rebuilt many times with the same (n, alpha, beta);
// building one costs O(n^2), copying it O(n).
template <typename Build>
QuadratureRule memoized(RuleFamily family, int n, double alpha, double beta, Build&& build) {
    using Key = std::tuple<int, int, double, double>;
    static std::mutex mutex;
    static std::map<Key, QuadratureRule> cache;
    const Key key{static_cast<int>(family), n, alpha, beta};
    {
        std::lock_guard lock(mutex);
        if (const auto it = cache.find(key); it != cache.end()) return it->second;
    }
    QuadratureRule rule = build();
    std::lock_guard lock(mutex);
    if (cache.size() >= 256) cache.clear();
    cache.emplace(key, rule);
    return rule;
}

}  // namespace

QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta) {
    check_count(n);
    if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("Gauss-Jacobi exponents must exceed -1");
    return memoized(RuleFamily::GaussJacobi, n, alpha, beta, [&] {
        return build_rule(jacobi_recurrence(n, alpha, beta), n, {RuleFamily::GaussJacobi, alpha, beta}, -1.0, 1.0);
    });
}

QuadratureRule gauss_laguerre_rule(int n, double alpha) {
    check_count(n);
    if (!(alpha > -1.0)) throw DomainError("Gauss-Laguerre exponent must exceed -1");
    return memoized(RuleFamily::GaussLaguerre, n, alpha, 0.0, [&] {
        return build_rule(laguerre_recurrence(n, alpha), n, {RuleFamily::GaussLaguerre, alpha, 0.0}, 0.0,
                          std::numeric_limits<double>::infinity());
    });
}

QuadratureRule mapped_jacobi_rule(int n, double lo, double hi, double a_exp, double b_exp) {
    if (!(hi > lo)) throw DomainError("mapped rule needs lo < hi");
    QuadratureRule rule = gauss_jacobi_rule(n, a_exp, b_exp);
    const double half = 0.5 * (hi - lo);
    rule.nodes = (lo + half * (rule.nodes.array() + 1.0)).matrix();
    rule.weights *= std::pow(half, a_exp + b_exp + 1.0);
    rule.lower = lo;
    rule.upper = hi;
    return rule;
}

QuadratureRule gauss_legendre_rule(int n, double lo, double hi) {
    return mapped_jacobi_rule(n, lo, hi, 0.0, 0.0);
}

QuadratureRule mehler_inner_rule(double theta, double alpha, int n) {
    if (!(theta >= 1e-8) || !(theta < std::numbers::pi))
        throw DomainError("mehler_inner_rule: theta must lie in [1e-8, pi)");
    if (!(alpha > -0.5)) throw DomainError("mehler_inner_rule: alpha must exceed -1/2");
    const double e = alpha - 0.5;
    QuadratureRule rule = gauss_jacobi_rule(n, e, 0.0);
    const double half = 0.5 * theta;
    for (int i = 0; i < n; ++i) {
        const double u = rule.nodes(i);
        const double phi = half * (1.0 + u);
        const double gap = half * (1.0 - u);
        // (cos phi - cos theta) / (theta - phi), smooth and positive on [0, theta]
        const double ratio = 2.0 * std::sin(0.5 * (theta + phi)) * std::sin(0.5 * gap) / gap;
        rule.nodes(i) = phi;
        rule.weights(i) *= std::pow(half, e + 1.0) * std::pow(ratio, e);
    }
    rule.lower = 0.0;
    rule.upper = theta;
    return rule;
}

}  // namespace rljacobi
