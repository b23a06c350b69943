#pragma once

#include <Eigen/Core>

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rljacobi/jacobi_series.hpp"

namespace rljacobi {

/// Integrands on [0, inf).
///
/// Step: values[i] on [breakpoints[i], breakpoints[i+1]], zero elsewhere.
/// ExpDamped: p(x) e^{-c x} with monomial coefficients; c = 0 is a polynomial.
class LaguerreFunctionSpec {
public:
    struct Step {
        std::vector<double> breakpoints;
        std::vector<double> values;
    };
    struct ExpDamped {
        std::vector<double> coefficients;
        double rate = 0.0;
    };
    using Variant = std::variant<Step, ExpDamped>;

    static LaguerreFunctionSpec step(std::vector<double> breakpoints, std::vector<double> values);
    /// Values alternating 1, 0, 1, ...
    static LaguerreFunctionSpec step(std::vector<double> breakpoints);
    static LaguerreFunctionSpec polynomial(std::vector<double> coefficients);
    static LaguerreFunctionSpec exp_damped(std::vector<double> coefficients, double rate);

    /// Parses `step:a,b[,...]`, `poly:c0,c1,...`, `exp:c:c0,c1,...`.
    static LaguerreFunctionSpec parse(const std::string& text);

    double operator()(double x) const;
    const Variant& variant() const noexcept { return v_; }

private:
    explicit LaguerreFunctionSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

enum class StepMethod { Auto, Quadrature, ClosedForm };

/// f-hat_alpha(k) = int_0^inf f R_k^alpha x^alpha e^{-x} dx.
double laguerre_coefficient(const LaguerreFunctionSpec& f, int k, double alpha, StepMethod method = StepMethod::Auto);

/// Coefficients for k = 0..kmax. Auto uses the closed-form step antiderivative for k >= 1.
Eigen::VectorXd laguerre_coefficient_series(const LaguerreFunctionSpec& f, int kmax, double alpha,
                                            StepMethod method = StepMethod::Auto);

/// ||f||_{L_w(alpha)} = int_0^inf |f| e^{-x/2} x^alpha dx.
double laguerre_norm(const LaguerreFunctionSpec& f, double alpha);

struct StepIdentity {
    double lhs = 0.0;  ///< quadrature of int_0^a R_k^alpha e^{-x} x^alpha dx
    double rhs = 0.0;  ///< e^{-a} a^{alpha+1} R_{k-1}^{alpha+1}(a) / (alpha + 1)
};

StepIdentity step_identity_check(double a, int k, double alpha);

/// max over grid of |e^{-x/2} R_k^alpha(x)|.
double laguerre_bound_check(int k, double alpha, std::span<const double> grid);

/// The same maximum for every k = 0..kmax.
Eigen::VectorXd laguerre_bound_sweep(int kmax, double alpha, std::span<const double> grid);

/// n log-spaced points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

struct LaguerreDecay {
    Eigen::VectorXd series;
    DecayReport fit;  ///< window [16, kmax]
};

LaguerreDecay laguerre_decay(const LaguerreFunctionSpec& f, int kmax, double alpha);

}  // namespace rljacobi
