#include "rljacobi/laguerre.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "rljacobi/quadrature.hpp"
#include "text_parse.hpp"

namespace rljacobi {

namespace {

constexpr double kLaguerreTol = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

void check_alpha(double alpha) {
    if (!(alpha > -1.0)) throw DomainError("Laguerre parameter must exceed -1");
}

double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t m = c.size(); m-- > 0;) s = s * x + c[m];
    return s;
}

// sum |c_m| x^m, the roundoff scale of horner(c, x) for x >= 0
double horner_abs(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t m = c.size(); m-- > 0;) s = s * x + std::abs(c[m]);
    return s;
}

struct Level {
    Eigen::VectorXd values;
    Eigen::VectorXd magnitudes;
};

template <typename L>
Eigen::VectorXd converge_levels(L&& level, int n0) {
    int n = std::clamp(n0, 1, kMaxNodes);
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
        if (achieved <= kLaguerreTol) return next.values;
        prev = std::move(next);
    }
    throw AccuracyError("Laguerre coefficient quadrature did not converge", achieved);
}

// Rule on [lo, hi] carrying x^alpha; a piece starting at 0 absorbs it exactly.
QuadratureRule power_rule(int n, double lo, double hi, double alpha) {
    if (lo <= 0.0) return mapped_jacobi_rule(n, 0.0, hi, 0.0, alpha);
    QuadratureRule r = gauss_legendre_rule(n, lo, hi);
    for (Eigen::Index i = 0; i < r.order(); ++i) r.weights(i) *= std::pow(r.nodes(i), alpha);
    return r;
}

// int_lo^hi R_k^alpha x^alpha e^{-x} dx for k = 0..kmax by quadrature.
Eigen::VectorXd piece_quadrature(double lo, double hi, int kmax, double alpha) {
    auto level = [&](int n) {
        const QuadratureRule r = power_rule(n, lo, hi, alpha);
        Level out{Eigen::VectorXd::Zero(kmax + 1), Eigen::VectorXd::Zero(kmax + 1)};
        Eigen::VectorXd s(kmax + 1);
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            const double x = r.nodes(i);
            laguerre_R_scaled_sweep(kmax, alpha, x, s);
            const double w = r.weights(i) * std::exp(-0.5 * x);
            out.values.noalias() += w * s;
            out.magnitudes.noalias() += std::abs(w) * s.cwiseAbs();
        }
        return out;
    };
    return converge_levels(level, kmax / 2 + 32);
}

// G_k(x) = e^{-x} x^{alpha+1} R_{k-1}^{alpha+1}(x) / (alpha + 1) for k = 1..kmax
// (entry 0 unused), the antiderivative of R_k^alpha x^alpha e^{-x} vanishing at 0.
Eigen::VectorXd step_antiderivative(double x, int kmax, double alpha) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(kmax + 1);
    if (kmax == 0 || x <= 0.0) return g;
    Eigen::VectorXd s(kmax);
    laguerre_R_scaled_sweep(kmax - 1, alpha + 1.0, x, s);
    const double f = std::exp(-0.5 * x + (alpha + 1.0) * std::log(x)) / (alpha + 1.0);
    g.tail(kmax) = f * s;
    return g;
}

Eigen::VectorXd step_series(const LaguerreFunctionSpec::Step& st, int kmax, double alpha, StepMethod method) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(kmax + 1);
    for (std::size_t i = 0; i + 1 < st.breakpoints.size(); ++i) {
        const double v = st.values[i];
        if (v == 0.0) continue;
        const double lo = st.breakpoints[i], hi = st.breakpoints[i + 1];
        if (method == StepMethod::Quadrature) {
            out += v * piece_quadrature(lo, hi, kmax, alpha);
            continue;
        }
        // k = 0 has no polynomial antiderivative; it always goes through quadrature.
        out(0) += v * piece_quadrature(lo, hi, 0, alpha)(0);
        if (kmax >= 1) out += v * (step_antiderivative(hi, kmax, alpha) - step_antiderivative(lo, kmax, alpha));
    }
    return out;
}

// p(x) e^{-c x}: the substitution y = (1 + c) x turns the coefficient integral
// into a polynomial one against y^alpha e^{-y}, exact for Gauss-Laguerre.
Eigen::VectorXd damped_series(const LaguerreFunctionSpec::ExpDamped& d, int kmax, double alpha) {
    const double s = 1.0 + d.rate;
    const int m = static_cast<int>(d.coefficients.size()) - 1;
    const double scale = std::pow(s, -alpha - 1.0);
    auto level = [&](int n) {
        const QuadratureRule r = gauss_laguerre_rule(n, alpha);
        Level out{Eigen::VectorXd::Zero(kmax + 1), Eigen::VectorXd::Zero(kmax + 1)};
        Eigen::VectorXd sc(kmax + 1);
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            const double y = r.nodes(i);
            const double x = y / s;
            laguerre_R_scaled_sweep(kmax, alpha, x, sc);
            // w_i = sw_i e^{-y}; e^{x/2} comes back from the scaled R_k
            const double base = scale * r.scaled_weights(i) * std::exp(-y + 0.5 * x);
            out.values.noalias() += (base * horner(d.coefficients, x)) * sc;
            out.magnitudes.noalias() += (base * horner_abs(d.coefficients, x)) * sc.cwiseAbs();
        }
        return out;
    };
    return converge_levels(level, (kmax + m) / 2 + 32);
}

// Real roots of p in (0, inf), increasing.
std::vector<double> positive_roots(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const int m = static_cast<int>(c.size()) - 1;
    std::vector<double> roots;
    if (m < 1) return roots;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -c[i] / c[m];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < m; ++i) {
        const std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z.real())) || !(z.real() > 0.0)) continue;
        double x = z.real();
        std::vector<double> dc(m);
        for (int j = 1; j <= m; ++j) dc[j - 1] = j * c[j];
        for (int it = 0; it < 8; ++it) {
            const double dp = horner(dc, x);
            if (dp == 0.0) break;
            x -= horner(c, x) / dp;
        }
        if (x > 0.0) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double scalar_converge(auto&& eval, int n0) { return converge_by_doubling(eval, n0, kLaguerreTol).value; }

}  // namespace

LaguerreFunctionSpec LaguerreFunctionSpec::step(std::vector<double> breakpoints, std::vector<double> values) {
    require(breakpoints.size() >= 2, "step function needs at least two breakpoints");
    require(values.size() + 1 == breakpoints.size(), "step function needs one value per interval");
    require(std::all_of(breakpoints.begin(), breakpoints.end(), [](double x) { return std::isfinite(x); }),
            "step breakpoints must be finite (compact support)");
    require(std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); }),
            "step values must be finite");
    require(std::adjacent_find(breakpoints.begin(), breakpoints.end(), std::greater_equal<>()) == breakpoints.end(),
            "step breakpoints must be strictly increasing");
    require(breakpoints.front() >= 0.0, "step breakpoints must be nonnegative");
    return LaguerreFunctionSpec(Step{std::move(breakpoints), std::move(values)});
}

LaguerreFunctionSpec LaguerreFunctionSpec::step(std::vector<double> breakpoints) {
    std::vector<double> values(breakpoints.empty() ? 0 : breakpoints.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (i % 2 == 0) ? 1.0 : 0.0;
    return step(std::move(breakpoints), std::move(values));
}

LaguerreFunctionSpec LaguerreFunctionSpec::polynomial(std::vector<double> coefficients) {
    return exp_damped(std::move(coefficients), 0.0);
}

LaguerreFunctionSpec LaguerreFunctionSpec::exp_damped(std::vector<double> coefficients, double rate) {
    require(!coefficients.empty(), "polynomial needs at least one coefficient");
    require(std::all_of(coefficients.begin(), coefficients.end(), [](double x) { return std::isfinite(x); }),
            "polynomial coefficients must be finite");
    require(rate >= 0.0 && std::isfinite(rate), "damping rate must be nonnegative");
    return LaguerreFunctionSpec(ExpDamped{std::move(coefficients), rate});
}

LaguerreFunctionSpec LaguerreFunctionSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("function spec '" + text + "' lacks a kind prefix");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (kind == "step") return step(detail::parse_list(body));
    if (kind == "poly") return polynomial(detail::parse_list(body));
    if (kind == "exp") {
        const auto sep = body.find(':');
        if (sep == std::string::npos) throw DomainError("exp spec needs the form exp:c:c0,c1,...");
        return exp_damped(detail::parse_list(body.substr(sep + 1)), detail::parse_number(body.substr(0, sep)));
    }
    throw DomainError("unknown Laguerre function spec kind '" + kind + "'");
}

double LaguerreFunctionSpec::operator()(double x) const {
    if (const auto* s = std::get_if<Step>(&v_)) {
        const auto& b = s->breakpoints;
        if (x < b.front() || x > b.back()) return 0.0;
        const auto it = std::upper_bound(b.begin(), b.end(), x);
        return s->values[std::min<std::size_t>(it - b.begin(), b.size() - 1) - 1];
    }
    const auto& d = std::get<ExpDamped>(v_);
    return horner(d.coefficients, x) * std::exp(-d.rate * x);
}

Eigen::VectorXd laguerre_coefficient_series(const LaguerreFunctionSpec& f, int kmax, double alpha, StepMethod method) {
    detail::check_degree(kmax);
    check_alpha(alpha);
    if (const auto* s = std::get_if<LaguerreFunctionSpec::Step>(&f.variant()))
        return step_series(*s, kmax, alpha, method);
    if (method == StepMethod::ClosedForm) throw DomainError("the closed-form route applies to step functions only");
    return damped_series(std::get<LaguerreFunctionSpec::ExpDamped>(f.variant()), kmax, alpha);
}

double laguerre_coefficient(const LaguerreFunctionSpec& f, int k, double alpha, StepMethod method) {
    return laguerre_coefficient_series(f, k, alpha, method)(k);
}

double laguerre_norm(const LaguerreFunctionSpec& f, double alpha) {
    check_alpha(alpha);
    if (const auto* s = std::get_if<LaguerreFunctionSpec::Step>(&f.variant())) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < s->breakpoints.size(); ++i) {
            if (s->values[i] == 0.0) continue;
            const double lo = s->breakpoints[i], hi = s->breakpoints[i + 1];
            auto eval = [&](int n) {
                const QuadratureRule r = power_rule(n, lo, hi, alpha);
                const double v = integrate(r, [](double x) { return std::exp(-0.5 * x); });
                return Estimate{v, v};
            };
            total += std::abs(s->values[i]) * scalar_converge(eval, 16);
        }
        return total;
    }
    const auto& d = std::get<LaguerreFunctionSpec::ExpDamped>(f.variant());
    const double sr = d.rate + 0.5;  // e^{-x/2} e^{-c x}
    const std::vector<double> roots = positive_roots(d.coefficients);
    auto absp = [&](double x) { return std::abs(horner(d.coefficients, x)); };
    const int m = static_cast<int>(d.coefficients.size());
    double total = 0.0;
    double lo = 0.0;
    for (double r : roots) {
        auto eval = [&](int n) {
            const QuadratureRule q = power_rule(n, lo, r, alpha);
            const double v = integrate(q, [&](double x) { return absp(x) * std::exp(-sr * x); });
            return Estimate{v, v};
        };
        total += scalar_converge(eval, m + 16);
        lo = r;
    }
    // tail [lo, inf) through x = lo + y / sr
    auto tail = [&](int n) {
        const QuadratureRule q = gauss_laguerre_rule(n, lo > 0.0 ? 0.0 : alpha);
        double v = 0.0;
        for (Eigen::Index i = 0; i < q.order(); ++i) {
            const double x = lo + q.nodes(i) / sr;
            const double extra = lo > 0.0 ? std::pow(x, alpha) : std::pow(sr, -alpha);
            v += q.weights(i) * absp(x) * extra;
        }
        v *= std::exp(-sr * lo) / sr;
        return Estimate{v, v};
    };
    total += scalar_converge(tail, m + 16);
    return total;
}

StepIdentity step_identity_check(double a, int k, double alpha) {
    check_alpha(alpha);
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("step identity needs a > 0");
    if (k < 1) throw DomainError("step identity needs k >= 1");
    StepIdentity out;
    out.lhs = piece_quadrature(0.0, a, k, alpha)(k);
    out.rhs = std::exp(-0.5 * a + (alpha + 1.0) * std::log(a)) * laguerre_R_scaled(k - 1, alpha + 1.0, a) / (alpha + 1.0);
    return out;
}

Eigen::VectorXd laguerre_bound_sweep(int kmax, double alpha, std::span<const double> grid) {
    detail::check_degree(kmax);
    check_alpha(alpha);
    Eigen::VectorXd best = Eigen::VectorXd::Zero(kmax + 1);
    Eigen::VectorXd s(kmax + 1);
    for (double x : grid) {
        laguerre_R_scaled_sweep(kmax, alpha, x, s);
        best = best.cwiseMax(s.cwiseAbs());
    }
    return best;
}

double laguerre_bound_check(int k, double alpha, std::span<const double> grid) {
    detail::check_degree(k);
    check_alpha(alpha);
    double best = 0.0;
    for (double x : grid) best = std::max(best, std::abs(laguerre_R_scaled(k, alpha, x)));
    return best;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw DomainError("log grid needs 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

LaguerreDecay laguerre_decay(const LaguerreFunctionSpec& f, int kmax, double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("Laguerre decay analysis needs alpha >= 0");
    if (kmax < 32) throw DomainError("Laguerre decay analysis needs kmax >= 32");
    LaguerreDecay out;
    out.series = laguerre_coefficient_series(f, kmax, alpha);
    out.fit = decay_fit(out.series, {16, kmax});
    return out;
}

}  // namespace rljacobi
