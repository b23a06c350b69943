#include "rljacobi/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rljacobi/jacobi_series.hpp"
#include "rljacobi/jtransform.hpp"
#include "rljacobi/laguerre.hpp"
#include "rljacobi/mehler.hpp"
#include "rljacobi/quadrature.hpp"

namespace rljacobi {

namespace {

using std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

template <typename... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// <R_j, R_k>_w for j, k <= 50 by a Gauss-Jacobi rule exact for degree 100.
Outcome orthogonality() {
    double worst = 0.0;
    for (const auto& [a, b] : {std::pair{-0.5, -0.5}, {0.0, 0.0}, {0.5, -0.25}, {2.0, 1.0}}) {
        const JacobiParams p(a, b);
        const QuadratureRule r = gauss_jacobi_rule(60, a, b);
        Eigen::MatrixXd R(r.order(), 51);
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            Eigen::VectorXd row(51);
            jacobi_R_sweep(50, p, r.nodes(i), row);
            R.row(i) = row.transpose();
        }
        const double scale = std::pow(2.0, -a - b - 1.0);
        const Eigen::MatrixXd gram = scale * R.transpose() * r.weights.asDiagonal() * R;
        for (int j = 0; j <= 50; ++j)
            for (int k = 0; k <= 50; ++k)
                worst = std::max(worst, std::abs(gram(j, k) - (j == k ? 1.0 / h_normalizer(k, p) : 0.0)));
    }
    return {worst <= 1e-10, fmt("max |<R_j,R_k> - delta/h_k| = %.3g (tol 1e-10)", worst)};
}

Outcome mehler_equivalence() {
    double worst = 0.0, worst_limit = 0.0;
    const double thetas[] = {0.3, 1.0, pi / 2, 2.2, 2.9};
    Eigen::VectorXd r(51);
    for (double a : {0.0, 0.5, 1.5}) {
        for (double b : {-0.5, 0.0, 0.75}) {
            const JacobiParams p(a, b);
            for (double theta : thetas) {
                const MehlerSweep s = mehler_R_sweep(50, p, theta);
                jacobi_R_sweep(50, p, std::cos(theta), r);
                for (int k = 0; k <= 50; ++k)
                    worst = std::max(worst, std::abs(s.values(k) - r(k)) / std::max(1.0, std::abs(r(k))));
            }
        }
    }
    for (double b : {-0.75, -0.9}) {
        const JacobiParams p(-0.5, b);
        for (double theta : thetas) {
            const MehlerSweep s = mehler_limit_R_sweep(50, b, theta);
            jacobi_R_sweep(50, p, std::cos(theta), r);
            for (int k = 0; k <= 50; ++k)
                worst_limit = std::max(worst_limit, std::abs(s.values(k) - r(k)) / std::max(1.0, std::abs(r(k))));
        }
    }
    return {worst <= 1e-8 && worst_limit <= 1e-8,
            fmt("integral vs recurrence %.3g, limit formula vs recurrence %.3g (tol 1e-8)", worst, worst_limit)};
}

Outcome decay_dichotomy() {
    bool ok = true;
    double worst_ratio = 0.0;
    // the cosine polynomial has degree 24 so the head block [16, 32] is populated;
    // its coefficients vanish past the degree
    std::vector<double> cos_coeffs(25);
    for (int m = 0; m <= 24; ++m) cos_coeffs[m] = (m % 2 ? -1.0 : 1.0) / (m + 1.0);
    const FunctionSpec fs[] = {FunctionSpec::parse("step:1.0472,1.5708"), FunctionSpec::parse("step:0.3,2.5"),
                               FunctionSpec::cosine_poly(cos_coeffs)};
    for (const auto& [a, b] : {std::pair{-0.5, -0.5}, {0.0, 0.0}, {0.5, -0.25}, {1.0, 0.5}}) {
        for (const FunctionSpec& f : fs) {
            const CoefficientSeries s = coefficient_series(f, 1024, JacobiParams(a, b));
            const double head = block_max(s.values, 16, 32), tail = block_max(s.values, 512, 1024);
            const double ratio = tail / head;
            worst_ratio = std::max(worst_ratio, ratio);
            ok = ok && ratio < 0.2;
        }
    }
    const SupNormGrowth g = sup_norm_growth(JacobiParams(-0.75, -0.75), Region::Full, 64, 1024);
    const bool slope_ok = std::abs(g.fit.slope - 0.25) <= 0.05;
    return {ok && slope_ok, fmt("worst tail/head ratio in S %.3g (< 0.2); sup|R_k| slope at (-0.75,-0.75) %.4f "
                                "(0.25 +- 0.05)",
                                worst_ratio, g.fit.slope)};
}

Outcome counterexample_exponent() {
    bool ok = true;
    std::string detail;
    for (const auto& [a, b, rho] : {std::tuple{0.0, -0.5, -0.3}, {0.5, 0.0, -0.6}, {1.0, 0.25, -0.9}}) {
        const CounterexampleReport r = counterexample_slope(JacobiParams(a, b), rho, 1024);
        ok = ok && std::abs(r.fit.slope - r.predicted_slope) <= 0.05;
        detail += fmt("(%g,%g,%g) fitted %.4f predicted %.4f; ", a, b, rho, r.fit.slope, r.predicted_slope);
    }
    const CounterexampleReport d = counterexample_slope(JacobiParams(-0.9, 0.0), -0.8, 1024);
    bool increasing = d.divergence_regime && d.octave_max.size() >= 2;
    for (std::size_t i = 1; i < d.octave_max.size(); ++i) increasing = increasing && d.octave_max[i] > d.octave_max[i - 1];
    detail += fmt("divergence regime octave maxima %s", increasing ? "strictly increasing" : "NOT increasing");
    return {ok && increasing, detail};
}

Outcome right_region_slope() {
    bool ok = true;
    std::string detail;
    for (const auto& [a, b] : {std::pair{0.5, -0.25}, {1.0, 0.0}}) {
        const SupNormGrowth g = sup_norm_growth(JacobiParams(a, b), Region::Right, 64, 1024);
        const double predicted = std::max(b, -0.5) - a;
        ok = ok && std::abs(g.fit.slope - predicted) <= 0.1;
        detail += fmt("(%g,%g) fitted %.4f predicted %.4f; ", a, b, g.fit.slope, predicted);
    }
    detail += "tol 0.1";
    return {ok, detail};
}

Outcome unnormalized_rate() {
    const JacobiParams p(1.0, -0.5);
    const CoefficientSeries s =
        coefficient_series(FunctionSpec::parse("step:0.4,1.9"), 1024, p, Normalization::Unnormalized);
    Eigen::VectorXd scaled = s.values;
    for (Eigen::Index k = 0; k < scaled.size(); ++k) scaled(k) /= std::pow(k + 1.0, p.alpha());
    const double ratio = block_max(scaled, 512, 1024) / block_max(scaled, 16, 32);
    return {ratio < 0.2, fmt("unnormalized / (k+1)^alpha tail/head ratio %.3g (< 0.2)", ratio)};
}

Outcome laguerre_checks() {
    double worst_identity = 0.0;
    for (double a : {0.5, 1.0, 2.5, 10.0})
        for (double al : {0.0, 0.5, 2.0})
            for (int k = 1; k <= 50; ++k) {
                const StepIdentity s = step_identity_check(a, k, al);
                worst_identity = std::max(worst_identity, std::abs(s.lhs - s.rhs) / std::max(1.0, std::abs(s.rhs)));
            }
    std::vector<double> grid = log_grid(1e-3, 900.0, 6000);
    grid.insert(grid.begin(), 0.0);
    double worst_bound = 0.0;
    for (double al : {0.0, 1.0, 3.7}) worst_bound = std::max(worst_bound, laguerre_bound_sweep(200, al, grid).maxCoeff());
    const LaguerreDecay d = laguerre_decay(LaguerreFunctionSpec::step({0.5, 2.0}), 1024, 1.0);
    const double ratio = block_max(d.series, 512, 1024) / block_max(d.series, 16, 32);
    return {worst_identity <= 1e-10 && worst_bound <= 1.0 + 1e-10 && ratio < 0.2,
            fmt("identity %.3g (tol 1e-10); max e^{-x/2}|R_k| %.12f (<= 1+1e-10); step tail/head %.3g (< 0.2)",
                worst_identity, worst_bound, ratio)};
}

Outcome jacobi_transform_checks() {
    const JacobiParams cos_case(-0.5, -0.5);
    const double pref = transform_prefactor(cos_case);
    double worst_cos = 0.0;
    for (const auto& [a, b] : {std::pair{0.0, 1.0}, {0.5, 2.0}, {1.3, 4.7}}) {
        const std::vector<double> taus{0.5, 3.0, 17.0, 45.0};
        const Eigen::VectorXd v = transform_sweep(HalfLineFunctionSpec::indicator(a, b), taus, cos_case);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double ref = pref * (std::sin(taus[i] * b) - std::sin(taus[i] * a)) / taus[i];
            worst_cos = std::max(worst_cos, std::abs(v(i) - ref) / std::max(std::abs(ref), pref / taus[i]));
        }
    }
    const std::vector<double> t = linspace(0.0, 20.0, 41), tau = linspace(0.0, 50.0, 26);
    const EnvelopeReport e1 = envelope_check(JacobiParams(0.5, 0.0), t, tau);
    const EnvelopeReport e2 = envelope_check(JacobiParams(-0.5, 0.25), t, tau);
    const JacobiParams p(0.5, 0.0);
    const HalfLineFunctionSpec f = HalfLineFunctionSpec::indicator(1.0, 2.0);
    const double low = transform_sweep(f, linspace(5.0, 10.0, 21), p).cwiseAbs().maxCoeff();
    const double high = transform_sweep(f, linspace(200.0, 400.0, 41), p).cwiseAbs().maxCoeff();
    const double ratio = high / low;
    return {worst_cos <= 1e-9 && e1.holds() && e2.holds() && ratio < 0.2,
            fmt("cosine reduction %.3g (tol 1e-9); envelope C* %.4f worst %.4f at (0.5,0), C* %.4f worst %.4f at "
                "(-0.5,0.25) (slack 1.05); tau decade ratio %.3g (< 0.2)",
                worst_cos, e1.c_star, e1.worst_ratio, e2.c_star, e2.worst_ratio, ratio)};
}

Outcome synthetic_fit() {
    Eigen::VectorXd v(1025);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = std::pow(k + 1.0, -2.0);
    const DecayReport r = decay_fit(v, {16, 1024});
    return {std::abs(r.slope + 2.0) <= 1e-6 && r.r_squared >= 1.0 - 1e-9,
            fmt("slope %.9f (-2 +- 1e-6), r^2 = 1 - %.3g", r.slope, 1.0 - r.r_squared)};
}

struct Entry {
    const char* name;
    Outcome (*run)();
    double time_limit;  // seconds, 0 = none of its own
};

const Entry kEntries[kCriterionCount] = {
    {"orthogonality", orthogonality, 30.0},
    {"mehler pathway equivalence", mehler_equivalence, 60.0},
    {"coefficient decay dichotomy", decay_dichotomy, 120.0},
    {"counterexample exponent", counterexample_exponent, 0.0},
    {"right-region sup-norm slope", right_region_slope, 0.0},
    {"unnormalized coefficient rate", unnormalized_rate, 0.0},
    {"laguerre identity, bound and decay", laguerre_checks, 0.0},
    {"jacobi transform", jacobi_transform_checks, 0.0},
    {"synthetic fit sanity", synthetic_fit, 0.0},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw DomainError("acceptance criterion id must be 1..9");
    const Entry& e = kEntries[id - 1];
    CriterionResult r{id, e.name, false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = e.run();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& ex) {
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.time_limit > 0.0) {
        r.detail += fmt("; %.1f s (limit %.0f s)", r.seconds, e.time_limit);
        r.passed = r.passed && r.seconds < e.time_limit;
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

}  // namespace rljacobi
