#pragma once

#include <Eigen/Core>

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rljacobi/specfun.hpp"

namespace rljacobi {

/// Integrands on the half-line [0, inf).
///
/// Indicator: 1 on [a, b], 0 <= a < b < inf.
/// ExpDecay: p(t) e^{-c t} with monomial coefficients. Its weighted norm is
/// finite only when c > 2(alpha + beta + 1), so the factory checks c against
/// the parameters it will be used with.
/// GridSampled: piecewise-linear through (t_i, y_i), zero outside [t_0, t_n].
class HalfLineFunctionSpec {
public:
    struct Indicator {
        double a;
        double b;
    };
    struct ExpDecay {
        std::vector<double> coefficients;
        double rate;
    };
    struct GridSampled {
        std::vector<double> abscissae;
        std::vector<double> ordinates;
    };
    using Variant = std::variant<Indicator, ExpDecay, GridSampled>;

    static HalfLineFunctionSpec indicator(double a, double b);
    static HalfLineFunctionSpec exp_decay(std::vector<double> coefficients, double rate, const JacobiParams& params);
    static HalfLineFunctionSpec grid_sampled(std::vector<double> abscissae, std::vector<double> ordinates);

    /// Parses `indicator:a,b`, `expdecay:c:c0,c1,...`, `grid:t0,y0,t1,y1,...`.
    static HalfLineFunctionSpec parse(const std::string& text, const JacobiParams& params);

    double operator()(double t) const;
    const Variant& variant() const noexcept { return v_; }
    std::string describe() const;

private:
    explicit HalfLineFunctionSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Parameters admitted by the half-line routines: alpha >= -1/2 and
/// alpha + beta >= -1 (the lower edge keeps the cosine case).
void check_halfline_params(const JacobiParams& params);

/// phi_tau(t) for a fixed t, reusable across many tau.
///
/// alpha > -1/2 integrates the Koornwinder representation with the
/// (t - s)^{alpha - 1/2} endpoint absorbed by a Gauss-Jacobi rule in s;
/// alpha = -1/2 evaluates the limit formula. Node data for each rule size is
/// built on first use and kept.
class JacobiFunction {
public:
    JacobiFunction(const JacobiParams& params, double t);

    double operator()(double tau);
    Eigen::VectorXd operator()(std::span<const double> taus);

    double t() const noexcept { return t_; }

private:
    struct Level {
        Eigen::VectorXd nodes;
        Eigen::VectorXd weights;  ///< everything except cos(tau s)
    };
    const Level& level(int index);

    JacobiParams params_;
    double t_;
    double leading_ = 0.0;  ///< limit formula: (cosh t)^{-beta-1/2}
    std::vector<Level> levels_;
};

double jacobi_function(double tau, double t, const JacobiParams& params);

/// 2^{2(alpha+beta+1)+1/2} / Gamma(alpha + 1).
double transform_prefactor(const JacobiParams& params);

/// prefactor * int_0^inf f phi_tau (sinh t)^{2alpha+1} (cosh t)^{2beta+1} dt.
double transform(const HalfLineFunctionSpec& f, double tau, const JacobiParams& params);
Eigen::VectorXd transform_sweep(const HalfLineFunctionSpec& f, std::span<const double> taus,
                                const JacobiParams& params);

/// int_0^inf |f| (1+t) e^{-(alpha+beta+1)t} (sinh t)^{2alpha+1} (cosh t)^{2beta+1} dt,
/// the factor multiplying C* in the uniform bound on the transform.
double envelope_integral(const HalfLineFunctionSpec& f, const JacobiParams& params);

/// Calibrate-then-verify check of |phi_tau(t)| <= C (1+t) e^{-(alpha+beta+1)t}.
struct EnvelopeReport {
    double c_star = 0.0;       ///< max ratio on the calibration grid
    double worst_ratio = 0.0;  ///< max ratio / c_star on the verification grid
    double slack = 1.05;
    int calibration_points = 0;
    int verification_points = 0;
    bool holds() const noexcept { return worst_ratio <= slack; }
};

/// The verification grid takes the quarter points of every calibration
/// interval in t and tau, so it is disjoint from and twice as fine as the
/// calibration grid. Violations are reported, not thrown.
EnvelopeReport envelope_check(const JacobiParams& params, std::span<const double> t_grid,
                              std::span<const double> tau_grid, double slack = 1.05);

/// Quarter points 3/4 a + 1/4 b and 1/4 a + 3/4 b of each consecutive pair.
std::vector<double> quarter_points(std::span<const double> grid);

}  // namespace rljacobi
