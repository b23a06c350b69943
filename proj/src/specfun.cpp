#include "rljacobi/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rljacobi {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("Jacobi parameters require alpha > -1 and beta > -1");
}

const char* to_string(Pathway p) noexcept {
    switch (p) {
        case Pathway::Recurrence: return "recurrence";
        case Pathway::MehlerIntegral: return "mehler-integral";
        case Pathway::LimitFormula: return "limit-formula";
    }
    return "unknown";
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires a positive argument");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double log_binomial(int k, double a) {
    detail::check_degree(k);
    if (k == 0) return 0.0;
    return log_gamma(k + a + 1.0) - log_gamma(k + 1.0) - log_gamma(a + 1.0);
}

double beta_function(double a, double b) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double jacobi_P_at_one(int k, const JacobiParams& params) {
    return std::exp(log_binomial(k, params.alpha()));
}

double jacobi_R(int k, const JacobiParams& params, double x) {
    detail::check_degree(k);
    detail::check_node(x);
    if (x == 1.0 || k == 0) return 1.0;
    return detail::jacobi_p_recurrence(k, params.alpha(), params.beta(), x) /
           jacobi_P_at_one(k, params);
}

void jacobi_R_sweep(int kmax, const JacobiParams& params, double x, Eigen::Ref<Eigen::VectorXd> out) {
    detail::check_degree(kmax);
    detail::check_node(x);
    if (out.size() != kmax + 1) throw DomainError("jacobi_R_sweep: output size must be kmax + 1");
    if (x == 1.0) {
        out.setOnes();
        return;
    }
    const double a = params.alpha();
    const double b = params.beta();
    // P_n(1) follows the same ratio recurrence as the binomial coefficient.
    double p0 = 1.0;
    double at_one = 1.0;
    out(0) = 1.0;
    if (kmax == 0) return;
    double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    at_one = a + 1.0;
    out(1) = p1 / at_one;
    const double ab2 = a * a - b * b;
    for (int n = 2; n <= kmax; ++n) {
        const double c = 2.0 * n + a + b;
        const double p2 = ((c - 1.0) * (c * (c - 2.0) * x + ab2) * p1 -
                           2.0 * (n + a - 1.0) * (n + b - 1.0) * c * p0) /
                          (2.0 * n * (n + a + b) * (c - 2.0));
        at_one *= (n + a) / n;
        out(n) = p2 / at_one;
        p0 = p1;
        p1 = p2;
    }
}

double laguerre_L(int k, double alpha, double x) {
    detail::check_degree(k);
    if (!(alpha > -1.0)) throw DomainError("Laguerre order requires alpha > -1");
    if (!(x >= 0.0)) throw DomainError("Laguerre argument must be nonnegative");
    double l0 = 1.0;
    if (k == 0) return l0;
    double l1 = 1.0 + alpha - x;
    for (int n = 1; n < k; ++n) {
        const double l2 = ((2.0 * n + 1.0 + alpha - x) * l1 - (n + alpha) * l0) / (n + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double laguerre_R(int k, double alpha, double x) {
    const double l = laguerre_L(k, alpha, x);
    if (x == 0.0 || k == 0) return 1.0;
    return l / std::exp(log_binomial(k, alpha));
}

void laguerre_R_scaled_sweep(int kmax, double alpha, double x, Eigen::Ref<Eigen::VectorXd> out) {
    detail::check_degree(kmax);
    if (!(alpha > -1.0)) throw DomainError("Laguerre order requires alpha > -1");
    if (!(x >= 0.0)) throw DomainError("Laguerre argument must be nonnegative");
    if (out.size() != kmax + 1) throw DomainError("laguerre_R_scaled_sweep: output size must be kmax + 1");

    constexpr double kBig = 0x1p+500;
    constexpr double kLogBig = 500.0 * std::numbers::ln2;
    // L_n = mantissa * exp(log_scale); both recurrence terms share the scale.
    double log_scale = 0.0;
    double log_at_zero = 0.0;
    double l0 = 1.0;
    out(0) = std::exp(-0.5 * x);
    if (kmax == 0) return;
    double l1 = 1.0 + alpha - x;
    log_at_zero = std::log1p(alpha);
    out(1) = l1 * std::exp(-0.5 * x - log_at_zero);
    for (int n = 1; n < kmax; ++n) {
        double l2 = ((2.0 * n + 1.0 + alpha - x) * l1 - (n + alpha) * l0) / (n + 1.0);
        l0 = l1;
        l1 = l2;
        if (std::abs(l1) > kBig) {
            l0 /= kBig;
            l1 /= kBig;
            log_scale += kLogBig;
        }
        log_at_zero += std::log((n + 1.0 + alpha) / (n + 1.0));
        out(n + 1) = l1 * std::exp(log_scale - 0.5 * x - log_at_zero);
    }
    if (x == 0.0) out.setOnes();
}

double laguerre_R_scaled(int k, double alpha, double x) {
    detail::check_degree(k);
    Eigen::VectorXd values(k + 1);
    laguerre_R_scaled_sweep(k, alpha, x, values);
    return values(k);
}

namespace {

bool nonpositive_integer(double v) {
    return v <= 0.0 && v == std::round(v);
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
    if (nonpositive_integer(c)) throw DomainError("hyp2f1: c must not be a nonpositive integer");
    if (!(z >= 0.0) || z > 1.0) throw DomainError("hyp2f1: argument outside [0, 1]");
    if (a == 0.0 || b == 0.0 || z == 0.0) return 1.0;

    if (z == 1.0) {
        const double excess = c - a - b;
        if (!(excess > 0.0)) throw DomainError("hyp2f1: series diverges at z = 1 unless c - a - b > 0");
        if (nonpositive_integer(c - a) || nonpositive_integer(c - b)) return 0.0;
        return std::tgamma(c) * std::tgamma(excess) / (std::tgamma(c - a) * std::tgamma(c - b));
    }

    constexpr double kTol = 1e-14;
    constexpr int kMaxTerms = 2'000'000;
    const double monotone_from = std::max({std::abs(a), std::abs(b), std::abs(c)}) + 2.0;
    double term = 1.0;
    double sum = 1.0;
    double bound = std::numeric_limits<double>::infinity();
    for (int n = 0; n < kMaxTerms; ++n) {
        const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;
        if (n >= monotone_from) {
            // Past the turning region the term ratios approach z monotonically,
            // so the geometric series with ratio max(|r|, z) bounds the tail.
            const double next = std::abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2.0))) * z;
            const double q = std::max(next, z);
            if (q < 1.0) {
                bound = std::abs(term) * next / (1.0 - q);
                if (bound <= kTol * std::abs(sum)) return sum;
            }
        }
    }
    throw AccuracyError("hyp2f1: series did not converge", bound / std::abs(sum));
}

double h_normalizer(int k, const JacobiParams& params) {
    detail::check_degree(k);
    const double a = params.alpha();
    const double b = params.beta();
    if (k == 0) return std::exp(log_gamma(a + b + 2.0) - log_gamma(a + 1.0) - log_gamma(b + 1.0));
    return std::exp(std::log(2.0 * k + a + b + 1.0) + log_gamma(k + a + b + 1.0) +
                    log_gamma(k + a + 1.0) - log_gamma(k + b + 1.0) - log_gamma(k + 1.0) -
                    2.0 * log_gamma(a + 1.0));
}

}  // namespace rljacobi
