#pragma once

#include <Eigen/Core>

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rljacobi/specfun.hpp"

namespace rljacobi {

/// Closed family of integrands on (0, pi).
///
/// Step: value[i] on [breakpoints[i], breakpoints[i+1]], zero elsewhere.
/// PowerWeight: f(theta) = (1 + cos theta)^rho, stated in x = cos theta.
/// CosinePoly: f(theta) = sum_m c_m cos(m theta).
/// GridSampled: piecewise-linear interpolation of (theta_i, y_i), held
/// constant beyond the first and last abscissa.
class FunctionSpec {
public:
    struct Step {
        std::vector<double> breakpoints;
        std::vector<double> values;
    };
    struct PowerWeight {
        double rho;
    };
    struct CosinePoly {
        std::vector<double> coefficients;
    };
    struct GridSampled {
        std::vector<double> abscissae;
        std::vector<double> ordinates;
    };
    using Variant = std::variant<Step, PowerWeight, CosinePoly, GridSampled>;

    static FunctionSpec step(std::vector<double> breakpoints, std::vector<double> values);
    /// Unit values alternating 1, 0, 1, ... over consecutive breakpoint intervals.
    static FunctionSpec step(std::vector<double> breakpoints);
    static FunctionSpec power_weight(double rho);
    static FunctionSpec cosine_poly(std::vector<double> coefficients);
    static FunctionSpec grid_sampled(std::vector<double> abscissae, std::vector<double> ordinates);

    /// Parses `step:a,b[,c,...]`, `power:rho`, `cospoly:c0,c1,...`.
    static FunctionSpec parse(const std::string& text);

    double operator()(double theta) const;
    const Variant& variant() const noexcept { return v_; }
    std::string describe() const;

private:
    explicit FunctionSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

enum class Normalization { HatF, Unnormalized };

const char* to_string(Normalization n) noexcept;

struct CoefficientSeries {
    JacobiParams params{0.0, 0.0};
    int kmax = 0;
    Eigen::VectorXd values;
    Normalization normalization = Normalization::HatF;
};

struct DegreeWindow {
    int k0 = 0;
    int k1 = 0;
};

/// Log-log least-squares fit |value_k| ~ C (k+1)^slope over a degree window.
struct DecayReport {
    DegreeWindow window;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double max_abs_tail = 0.0;  ///< max |value| over [k1/2, k1]
    double max_abs_head = 0.0;  ///< max |value| over [k0, 2 k0]
    int used_points = 0;
    int skipped_zeros = 0;
};

/// f-hat_{(alpha,beta)}(k) = int_0^pi f R_k(cos theta) (sin theta/2)^{2a+1} (cos theta/2)^{2b+1} dtheta.
double coefficient(const FunctionSpec& f, int k, const JacobiParams& params);

/// Coefficients for k = 0..kmax. Unnormalized multiplies by P_k(1).
CoefficientSeries coefficient_series(const FunctionSpec& f, int kmax, const JacobiParams& params,
                                     Normalization normalization = Normalization::HatF);

/// Weighted L^1 norm ||f||_{L_(alpha,beta)}.
double norm_L(const FunctionSpec& f, const JacobiParams& params);

/// Weighted L^2 norm squared, int |f|^2 w dtheta (bounded f only).
double norm_L2_squared(const FunctionSpec& f, const JacobiParams& params);

/// Partial sum of the expansion sum_k f-hat(k) h_k R_k(cos theta).
double synthesize(const CoefficientSeries& series, double theta);

struct ParsevalResult {
    double partial_sum = 0.0;  ///< sum_{k<=kmax} h_k f-hat(k)^2
    double l2_norm = 0.0;      ///< int |f|^2 w dtheta
    double gap() const noexcept { return l2_norm - partial_sum; }
    double relative_gap() const noexcept { return l2_norm > 0 ? gap() / l2_norm : 0.0; }
};

ParsevalResult parseval_check(const FunctionSpec& f, const JacobiParams& params, int kmax);

/// Power-law fit on arbitrary (degree, value) samples; zero values are skipped.
DecayReport fit_power_law(std::span<const int> degrees, std::span<const double> values, DegreeWindow window);

DecayReport decay_fit(const Eigen::VectorXd& values, DegreeWindow window);
DecayReport decay_fit(const CoefficientSeries& series, DegreeWindow window);

/// max |values[k]| for k in [lo, hi].
double block_max(const Eigen::VectorXd& values, int lo, int hi);

/// max |values[k]| over each octave [2^j k_start, 2^{j+1} k_start] up to kmax.
std::vector<double> octave_maxima(const Eigen::VectorXd& values, int k_start);

struct CounterexampleReport {
    DecayReport fit;
    double predicted_slope = 0.0;      ///< -2 rho - alpha - beta - 2
    bool divergence_regime = false;    ///< beta > alpha and 0 < beta+rho+1 < (beta-alpha)/2
    std::vector<double> octave_max;    ///< hat-coefficient octave maxima from k = 16
    CoefficientSeries hat;             ///< f-hat for f = (1 + cos theta)^rho
};

/// Decay of int R_k(x) (1-x)^alpha (1+x)^{beta+rho} dx, fitted over [kmax/8, kmax].
CounterexampleReport counterexample_slope(const JacobiParams& params, double rho, int kmax);

enum class Region { Full, Right };

const char* to_string(Region r) noexcept;

/// max |R_k(cos theta)| over [0, pi] (Full) or [pi/2, pi] (Right). grid = 0
/// selects the minimum resolution 64 (k+1) + 1.
double sup_norm_R(int k, const JacobiParams& params, Region region, int grid = 0);

/// Sup norms on `count` log-spaced degrees in [k0, k1], fitted as a power law.
struct SupNormGrowth {
    std::vector<int> degrees;
    std::vector<double> sup_norms;
    DecayReport fit;
};

SupNormGrowth sup_norm_growth(const JacobiParams& params, Region region, int k0, int k1, int count = 16);

}  // namespace rljacobi
