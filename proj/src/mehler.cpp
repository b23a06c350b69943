#include "rljacobi/mehler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rljacobi/quadrature.hpp"

namespace rljacobi {

using std::numbers::pi;

namespace {

constexpr double kMehlerTol = 1e-12;

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= pi)) throw DomainError("Dirichlet-Mehler angle must lie in [0, pi]");
}

bool near_endpoint(double theta) { return theta <= kMehlerCutoff || theta >= pi - kMehlerCutoff; }

MehlerSweep recurrence_sweep(int kmax, const JacobiParams& params, double theta) {
    MehlerSweep out;
    out.values.resize(kmax + 1);
    out.pathway = Pathway::Recurrence;
    jacobi_R_sweep(kmax, params, std::cos(theta), out.values);
    return out;
}

// (cos phi - cos theta) / (1 + cos phi) with the difference in product form.
double kernel_argument(double phi, double theta) {
    const double diff = 2.0 * std::sin(0.5 * (theta + phi)) * std::sin(0.5 * (theta - phi));
    const double z = diff / (2.0 * std::pow(std::cos(0.5 * phi), 2));
    if (!(z >= 0.0 && z < 1.0)) throw AccuracyError("hypergeometric argument left [0, 1) at a node", z);
    return z;
}

// cos((k + shift) phi) for k = 0..kmax by the Chebyshev-type recurrence.
void cosine_ladder(double phi, double shift, Eigen::Ref<Eigen::VectorXd> out) {
    const double c1 = std::cos(phi);
    out(0) = std::cos(shift * phi);
    if (out.size() == 1) return;
    out(1) = std::cos((1.0 + shift) * phi);
    for (Eigen::Index k = 2; k < out.size(); ++k) out(k) = 2.0 * c1 * out(k - 1) - out(k - 2);
}

struct Level {
    Eigen::VectorXd values;
    Eigen::VectorXd magnitudes;
};

template <typename L>
MehlerSweep converge_sweep(L&& level, int n0) {
    int n = n0;
    Level prev = level(n);
    double achieved = 0.0;
    while (n < kMaxNodes) {
        n = std::min(2 * n, kMaxNodes);
        Level next = level(n);
        achieved = 0.0;
        for (Eigen::Index k = 0; k < next.values.size(); ++k) {
            const double scale = std::max({std::abs(next.values(k)), next.magnitudes(k), 1e-300});
            achieved = std::max(achieved, std::abs(next.values(k) - prev.values(k)) / scale);
        }
        if (achieved <= kMehlerTol) {
            MehlerSweep out;
            out.values = std::move(next.values);
            out.nodes = n;
            return out;
        }
        prev = std::move(next);
    }
    throw AccuracyError("Dirichlet-Mehler integral did not converge", achieved);
}

}  // namespace

MehlerSweep mehler_R_sweep(int kmax, const JacobiParams& params, double theta) {
    detail::check_degree(kmax);
    check_theta(theta);
    const double a = params.alpha(), b = params.beta();
    if (!(a > -0.5)) throw DomainError("the Dirichlet-Mehler integral needs alpha > -1/2");
    if (near_endpoint(theta)) return recurrence_sweep(kmax, params, theta);

    const double pref = std::exp(0.5 * (a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) -
                                 0.5 * std::log(pi) - log_gamma(a + 0.5)) *
                        std::pow(2.0 * std::pow(std::sin(0.5 * theta), 2), -a);
    const double shift = 0.5 * (a + b + 1.0);
    auto level = [&](int n) {
        const QuadratureRule rule = mehler_inner_rule(theta, a, n);
        Level out{Eigen::VectorXd::Zero(kmax + 1), Eigen::VectorXd::Zero(kmax + 1)};
        Eigen::VectorXd c(kmax + 1);
        for (Eigen::Index i = 0; i < rule.order(); ++i) {
            const double phi = rule.nodes(i);
            const double z = kernel_argument(phi, theta);
            const double smooth = std::pow(1.0 + std::cos(phi), -0.5 * (a + b)) *
                                  hyp2f1(0.5 * (a + b + 1.0), 0.5 * (a + b), a + 0.5, z);
            const double w = pref * rule.weights(i) * smooth;
            cosine_ladder(phi, shift, c);
            out.values.noalias() += w * c;
            out.magnitudes.noalias() += std::abs(w) * c.cwiseAbs();
        }
        return out;
    };
    return converge_sweep(level, kmax / 2 + 24);
}

PolyValue mehler_R(int k, const JacobiParams& params, double theta) {
    const MehlerSweep s = mehler_R_sweep(k, params, theta);
    return {k, s.values(k), s.pathway};
}

namespace {

struct LimitParts {
    Eigen::VectorXd leading;
    Eigen::VectorXd integral;
    int nodes = 0;
};

LimitParts limit_parts(int kmax, double beta, double theta) {
    const double shift = 0.5 * beta + 0.25;
    const double coef = 0.25 * (beta * beta - 0.25) * std::sin(0.5 * theta);
    LimitParts parts;
    parts.leading.resize(kmax + 1);
    cosine_ladder(theta, shift, parts.leading);
    parts.leading *= std::pow(std::cos(0.5 * theta), -beta - 0.5);
    parts.integral = Eigen::VectorXd::Zero(kmax + 1);
    if (coef == 0.0) return parts;

    auto level = [&](int n) {
        const QuadratureRule rule = gauss_legendre_rule(n, 0.0, theta);
        // the leading term sets the scale of the convergence test as well
        Level out{Eigen::VectorXd::Zero(kmax + 1), parts.leading.cwiseAbs()};
        Eigen::VectorXd c(kmax + 1);
        for (Eigen::Index i = 0; i < rule.order(); ++i) {
            const double phi = rule.nodes(i);
            const double z = kernel_argument(phi, theta);
            const double w = coef * rule.weights(i) * std::pow(std::cos(0.5 * phi), -beta - 1.5) *
                             hyp2f1(0.5 * beta + 1.25, 0.5 * beta + 0.75, 2.0, z);
            cosine_ladder(phi, shift, c);
            out.values.noalias() += w * c;
            out.magnitudes.noalias() += std::abs(w) * c.cwiseAbs();
        }
        return out;
    };
    MehlerSweep s = converge_sweep(level, kmax / 2 + 24);
    parts.integral = std::move(s.values);
    parts.nodes = s.nodes;
    return parts;
}

void check_limit_args(int kmax, double beta, double theta) {
    detail::check_degree(kmax);
    check_theta(theta);
    if (!(beta > -1.0 && beta < 0.0)) throw DomainError("the limit formula needs -1 < beta < 0");
}

}  // namespace

MehlerSweep mehler_limit_R_sweep(int kmax, double beta, double theta) {
    check_limit_args(kmax, beta, theta);
    if (near_endpoint(theta)) return recurrence_sweep(kmax, JacobiParams(-0.5, beta), theta);
    LimitParts parts = limit_parts(kmax, beta, theta);
    MehlerSweep out;
    out.values = parts.leading + parts.integral;
    out.pathway = Pathway::LimitFormula;
    out.nodes = parts.nodes;
    return out;
}

MehlerLimitTerms mehler_limit_terms(int k, double beta, double theta) {
    check_limit_args(k, beta, theta);
    MehlerLimitTerms t;
    if (near_endpoint(theta)) {
        t.leading = jacobi_R(k, JacobiParams(-0.5, beta), std::cos(theta));
        return t;
    }
    const LimitParts parts = limit_parts(k, beta, theta);
    t.leading = parts.leading(k);
    t.integral = parts.integral(k);
    return t;
}

PolyValue mehler_limit_R(int k, double beta, double theta) {
    const MehlerSweep s = mehler_limit_R_sweep(k, beta, theta);
    return {k, s.values(k), s.pathway};
}

double kernel_mass_h(double theta, double alpha) {
    if (!(theta > 0.0 && theta <= 0.5 * pi)) throw DomainError("kernel mass needs theta in (0, pi/2]");
    if (!(alpha > -0.5)) throw DomainError("kernel mass needs alpha > -1/2");
    auto eval = [&](int n) {
        const QuadratureRule r = mehler_inner_rule(theta, alpha, n);
        const double s = r.weights.sum();
        return Estimate{s, s};
    };
    return std::pow(std::sin(theta), -2.0 * alpha) * converge_by_doubling(eval, 8, 1e-13).value;
}

}  // namespace rljacobi
