#pragma once

#include <Eigen/Core>

#include "rljacobi/specfun.hpp"

namespace rljacobi {

/// Angles closer than this to 0 or pi are sent to the recurrence.
inline constexpr double kMehlerCutoff = 1e-6;

struct MehlerSweep {
    Eigen::VectorXd values;  ///< R_0(cos theta) .. R_kmax(cos theta)
    Pathway pathway = Pathway::MehlerIntegral;
    int nodes = 0;           ///< inner-rule size that met the tolerance (0 for the recurrence)
};

/// R_k(cos theta) for k = 0..kmax from the Dirichlet-Mehler integral,
/// alpha > -1/2. The kernel prefactor, singular weight and hypergeometric
/// factor are evaluated once per node and reused for every k.
MehlerSweep mehler_R_sweep(int kmax, const JacobiParams& params, double theta);

PolyValue mehler_R(int k, const JacobiParams& params, double theta);

/// The two parts of the alpha = -1/2 limit formula.
struct MehlerLimitTerms {
    double leading = 0.0;   ///< (cos theta/2)^{-beta-1/2} cos((k + beta/2 + 1/4) theta)
    double integral = 0.0;  ///< the (beta^2 - 1/4)/4 sin(theta/2) integral correction
    double value() const noexcept { return leading + integral; }
};

MehlerLimitTerms mehler_limit_terms(int k, double beta, double theta);

/// R_k^{(-1/2, beta)}(cos theta) for k = 0..kmax, beta in (-1, 0).
MehlerSweep mehler_limit_R_sweep(int kmax, double beta, double theta);

PolyValue mehler_limit_R(int k, double beta, double theta);

/// (sin theta)^{-2 alpha} int_0^theta (cos phi - cos theta)^{alpha - 1/2} dphi,
/// theta in (0, pi/2], alpha > -1/2.
double kernel_mass_h(double theta, double alpha);

}  // namespace rljacobi
