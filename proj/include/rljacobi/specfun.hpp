#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "rljacobi/errors.hpp"

namespace rljacobi {

/// Order pair (alpha, beta) of a Jacobi system, alpha, beta > -1.
class JacobiParams {
public:
    JacobiParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    /// alpha + beta + 1, the exponent that shows up in the oscillation phase
    /// and in the half-line Jacobi functions.
    double rho() const noexcept { return alpha_ + beta_ + 1.0; }

    /// True on the region alpha >= beta, alpha >= -1/2 where |R_k| <= 1.
    bool in_S() const noexcept { return alpha_ >= beta_ && alpha_ >= -0.5; }

    bool operator==(const JacobiParams&) const = default;

private:
    double alpha_;
    double beta_;
};

enum class Pathway { Recurrence, MehlerIntegral, LimitFormula };

const char* to_string(Pathway p) noexcept;

struct PolyValue {
    int degree = 0;
    double value = 0.0;
    Pathway pathway = Pathway::Recurrence;
};

inline constexpr double kNodeTolerance = 1e-12;

/// log Gamma for positive arguments.
double log_gamma(double x);

/// log binom(k + a, k) = log Gamma(k+a+1) - log Gamma(k+1) - log Gamma(a+1).
double log_binomial(int k, double a);

/// Euler Beta function B(a, b) for a, b > 0.
double beta_function(double a, double b);

namespace detail {

inline void check_degree(int k) {
    if (k < 0) throw DomainError("polynomial degree must be nonnegative");
}

inline void check_node(double x) {
    if (!(std::abs(x) <= 1.0 + kNodeTolerance))
        throw DomainError("Jacobi argument outside [-1, 1]");
}

template <typename Derived>
void check_node(const Eigen::ArrayBase<Derived>& x) {
    if ((x.abs() > 1.0 + kNodeTolerance).any() || x.hasNaN())
        throw DomainError("Jacobi argument outside [-1, 1]");
}

template <typename T>
T ones_like(const T& x) {
    if constexpr (std::is_arithmetic_v<T>) {
        return T(1);
    } else {
        return T::Ones(x.rows(), x.cols());
    }
}

/// Forward three-term recurrence for P_k^{(a,b)}. T is a scalar or an
/// Eigen array; all operations are coefficient-wise.
template <typename T>
T jacobi_p_recurrence(int k, double a, double b, const T& x) {
    T p0 = ones_like(x);
    if (k == 0) return p0;
    T p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    const double ab2 = a * a - b * b;
    for (int n = 2; n <= k; ++n) {
        const double c = 2.0 * n + a + b;
        const double denom = 2.0 * n * (n + a + b) * (c - 2.0);
        const double lin = (c - 1.0) * c * (c - 2.0);
        const double cst = (c - 1.0) * ab2;
        const double back = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c;
        T p2 = ((lin * x + cst) * p1 - back * p0) / denom;
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

}  // namespace detail

/// P_k^{(alpha,beta)}(x) by the three-term recurrence.
template <typename T>
T jacobi_P(int k, const JacobiParams& params, const T& x) {
    detail::check_degree(k);
    detail::check_node(x);
    return detail::jacobi_p_recurrence(k, params.alpha(), params.beta(), x);
}

/// P_k^{(alpha,beta)}(1) = binom(k+alpha, k).
double jacobi_P_at_one(int k, const JacobiParams& params);

/// R_k = P_k / P_k(1); exactly 1 at x = 1.
double jacobi_R(int k, const JacobiParams& params, double x);

template <typename Derived>
Eigen::ArrayXd jacobi_R(int k, const JacobiParams& params, const Eigen::ArrayBase<Derived>& x) {
    detail::check_degree(k);
    detail::check_node(x);
    Eigen::ArrayXd r = detail::jacobi_p_recurrence(k, params.alpha(), params.beta(),
                                                   Eigen::ArrayXd(x.derived()));
    r /= jacobi_P_at_one(k, params);
    for (Eigen::Index i = 0; i < r.size(); ++i)
        if (x.derived()(i) == 1.0) r(i) = 1.0;
    return r;
}

/// R_0(x), ..., R_kmax(x) written into out (size kmax + 1).
void jacobi_R_sweep(int kmax, const JacobiParams& params, double x, Eigen::Ref<Eigen::VectorXd> out);

/// L_k^alpha(x) by the three-term recurrence.
double laguerre_L(int k, double alpha, double x);

/// R_k^alpha = L_k^alpha / L_k^alpha(0); exactly 1 at x = 0.
double laguerre_R(int k, double alpha, double x);

/// e^{-x/2} R_k^alpha(x), evaluated with exponent tracking so it stays finite
/// where e^{-x/2} underflows and L_k overflows.
double laguerre_R_scaled(int k, double alpha, double x);

/// e^{-x/2} R_j^alpha(x) for j = 0..kmax.
void laguerre_R_scaled_sweep(int kmax, double alpha, double x, Eigen::Ref<Eigen::VectorXd> out);

/// Gauss hypergeometric series 2F1(a, b; c; z) on 0 <= z < 1, plus z = 1 when
/// c - a - b > 0 (Gauss summation).
double hyp2f1(double a, double b, double c, double z);

/// h_k = 1 / ||R_k^2||, the Fourier-Jacobi normalizer.
double h_normalizer(int k, const JacobiParams& params);

}  // namespace rljacobi
