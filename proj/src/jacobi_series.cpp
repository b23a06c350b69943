#include "rljacobi/jacobi_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rljacobi/quadrature.hpp"
#include "text_parse.hpp"

namespace rljacobi {

using std::numbers::pi;

namespace {

constexpr double kSeriesTol = 1e-10;
constexpr double kNormTol = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

bool finite_all(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool strictly_increasing(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

double theta_weight(double theta, const JacobiParams& p) {
    return std::pow(std::sin(0.5 * theta), 2.0 * p.alpha() + 1.0) *
           std::pow(std::cos(0.5 * theta), 2.0 * p.beta() + 1.0);
}

// Rule on [t0, t1] in theta whose weights carry the full Jacobi theta weight.
// An endpoint at 0 or pi has its algebraic factor absorbed exactly.
QuadratureRule theta_rule(int n, double t0, double t1, const JacobiParams& p) {
    const double ea = 2.0 * p.alpha() + 1.0;
    const double eb = 2.0 * p.beta() + 1.0;
    QuadratureRule r;
    if (t0 <= 0.0) {
        r = mapped_jacobi_rule(n, 0.0, t1, 0.0, ea);
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            const double th = r.nodes(i);
            r.weights(i) *= std::pow(std::sin(0.5 * th) / th, ea) * std::pow(std::cos(0.5 * th), eb);
        }
    } else if (t1 >= pi) {
        r = mapped_jacobi_rule(n, t0, pi, eb, 0.0);
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            const double th = r.nodes(i);
            const double d = pi - th;
            r.weights(i) *= std::pow(std::sin(0.5 * th), ea) * std::pow(std::sin(0.5 * d) / d, eb);
        }
    } else {
        r = gauss_legendre_rule(n, t0, t1);
        for (Eigen::Index i = 0; i < r.order(); ++i) r.weights(i) *= theta_weight(r.nodes(i), p);
    }
    return r;
}

// g(theta) = c0 + c1 (theta - t0) on [t0, t1].
struct LinearPiece {
    double t0, t1, c0, c1;
    double operator()(double th) const { return c0 + c1 * (th - t0); }
};

std::vector<LinearPiece> split_for_rules(std::vector<LinearPiece> in) {
    std::vector<LinearPiece> out;
    for (const LinearPiece& q : in) {
        if (q.c0 == 0.0 && q.c1 == 0.0) continue;
        if (q.t0 <= 0.0 && q.t1 >= pi) {
            const double mid = 0.5 * pi;
            out.push_back({q.t0, mid, q.c0, q.c1});
            out.push_back({mid, q.t1, q(mid), q.c1});
        } else {
            out.push_back(q);
        }
    }
    return out;
}

std::vector<LinearPiece> linear_pieces(const FunctionSpec& f) {
    std::vector<LinearPiece> pieces;
    if (const auto* s = std::get_if<FunctionSpec::Step>(&f.variant())) {
        for (std::size_t i = 0; i + 1 < s->breakpoints.size(); ++i)
            pieces.push_back({s->breakpoints[i], s->breakpoints[i + 1], s->values[i], 0.0});
    } else if (const auto* g = std::get_if<FunctionSpec::GridSampled>(&f.variant())) {
        const auto& a = g->abscissae;
        const auto& y = g->ordinates;
        if (a.front() > 0.0) pieces.push_back({0.0, a.front(), y.front(), 0.0});
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            pieces.push_back({a[i], a[i + 1], y[i], (y[i + 1] - y[i]) / (a[i + 1] - a[i])});
        if (a.back() < pi) pieces.push_back({a.back(), pi, y.back(), 0.0});
    }
    return split_for_rules(std::move(pieces));
}

// Pieces on which the linear function keeps one sign.
std::vector<LinearPiece> split_at_zeros(const std::vector<LinearPiece>& in) {
    std::vector<LinearPiece> out;
    for (const LinearPiece& q : in) {
        if (q.c1 != 0.0) {
            const double z = q.t0 - q.c0 / q.c1;
            if (z > q.t0 && z < q.t1) {
                out.push_back({q.t0, z, q.c0, q.c1});
                out.push_back({z, q.t1, 0.0, q.c1});
                continue;
            }
        }
        out.push_back(q);
    }
    return split_for_rules(std::move(out));
}

int piece_nodes(double len, int kmax) {
    return static_cast<int>(std::ceil((kmax + 32.0) * len / pi)) + 16;
}

struct SeriesLevel {
    Eigen::VectorXd values;
    Eigen::VectorXd magnitudes;
};

template <typename Level>
Eigen::VectorXd converge_series(Level&& level, int n0) {
    int n = std::clamp(n0, 1, kMaxNodes);
    SeriesLevel prev = level(n);
    double achieved = 0.0;
    while (n < kMaxNodes) {
        n = std::min(2 * n, kMaxNodes);
        SeriesLevel next = level(n);
        achieved = 0.0;
        for (Eigen::Index k = 0; k < next.values.size(); ++k) {
            const double scale = std::max({std::abs(next.values(k)), next.magnitudes(k), 1e-300});
            achieved = std::max(achieved, std::abs(next.values(k) - prev.values(k)) / scale);
        }
        if (achieved <= kSeriesTol) return next.values;
        prev = std::move(next);
    }
    throw AccuracyError("coefficient series did not converge within the node cap", achieved);
}

// Sum over rule nodes of W_i g(x_i) R_k(x_i), k = 0..kmax, with |.| sums.
template <typename G>
SeriesLevel accumulate(const QuadratureRule& rule, bool theta_nodes, int kmax, const JacobiParams& p,
                       double scale, G&& g) {
    SeriesLevel out{Eigen::VectorXd::Zero(kmax + 1), Eigen::VectorXd::Zero(kmax + 1)};
    Eigen::VectorXd r(kmax + 1);
    for (Eigen::Index i = 0; i < rule.order(); ++i) {
        const double node = rule.nodes(i);
        const double x = theta_nodes ? std::cos(node) : node;
        const double wg = scale * rule.weights(i) * g(node);
        if (wg == 0.0) continue;
        jacobi_R_sweep(kmax, p, std::clamp(x, -1.0, 1.0), r);
        out.values.noalias() += wg * r;
        out.magnitudes.noalias() += std::abs(wg) * r.cwiseAbs();
    }
    return out;
}

double chebyshev_sum(const std::vector<double>& c, double x) {
    // Clenshaw for sum c_m T_m(x)
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t m = c.size(); m-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + c[m];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

double piece_integral(const LinearPiece& q, const JacobiParams& p, int n0, auto&& g) {
    auto eval = [&](int n) {
        const QuadratureRule r = theta_rule(n, q.t0, q.t1, p);
        Estimate e;
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            const double v = r.weights(i) * g(r.nodes(i));
            e.value += v;
            e.magnitude += std::abs(v);
        }
        return e;
    };
    return converge_by_doubling(eval, n0, kNormTol).value;
}

std::vector<double> cosine_sign_changes(const std::vector<double>& c) {
    const int m = static_cast<int>(c.size());
    const int grid = 16 * (m + 1) + 64;
    auto f = [&](double th) { return chebyshev_sum(c, std::cos(th)); };
    std::vector<double> roots;
    double lo = 0.0, flo = f(lo);
    for (int i = 1; i <= grid; ++i) {
        const double hi = pi * i / grid;
        const double fhi = f(hi);
        if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0)) {
            double a = lo, b = hi, fa = flo;
            for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        lo = hi;
        flo = fhi;
    }
    return roots;
}

void check_power(const FunctionSpec::PowerWeight& pw, const JacobiParams& p) {
    if (!(p.beta() + pw.rho > -1.0))
        throw DomainError("power weight needs beta + rho > -1 to be integrable");
}

}  // namespace

FunctionSpec FunctionSpec::step(std::vector<double> breakpoints, std::vector<double> values) {
    require(breakpoints.size() >= 2, "step function needs at least two breakpoints");
    require(values.size() + 1 == breakpoints.size(), "step function needs one value per interval");
    require(finite_all(breakpoints) && finite_all(values), "step function data must be finite");
    require(strictly_increasing(breakpoints), "step breakpoints must be strictly increasing");
    require(breakpoints.front() >= 0.0 && breakpoints.back() <= pi, "step breakpoints must lie in [0, pi]");
    return FunctionSpec(Step{std::move(breakpoints), std::move(values)});
}

FunctionSpec FunctionSpec::step(std::vector<double> breakpoints) {
    std::vector<double> values(breakpoints.empty() ? 0 : breakpoints.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (i % 2 == 0) ? 1.0 : 0.0;
    return step(std::move(breakpoints), std::move(values));
}

FunctionSpec FunctionSpec::power_weight(double rho) {
    require(std::isfinite(rho), "power weight exponent must be finite");
    return FunctionSpec(PowerWeight{rho});
}

FunctionSpec FunctionSpec::cosine_poly(std::vector<double> coefficients) {
    require(!coefficients.empty(), "cosine polynomial needs at least one coefficient");
    require(finite_all(coefficients), "cosine coefficients must be finite");
    return FunctionSpec(CosinePoly{std::move(coefficients)});
}

FunctionSpec FunctionSpec::grid_sampled(std::vector<double> abscissae, std::vector<double> ordinates) {
    require(abscissae.size() >= 2, "grid function needs at least two samples");
    require(abscissae.size() == ordinates.size(), "grid abscissae and ordinates differ in length");
    require(finite_all(abscissae) && finite_all(ordinates), "grid data must be finite");
    require(strictly_increasing(abscissae), "grid abscissae must be strictly increasing");
    require(abscissae.front() >= 0.0 && abscissae.back() <= pi, "grid abscissae must lie in [0, pi]");
    return FunctionSpec(GridSampled{std::move(abscissae), std::move(ordinates)});
}

FunctionSpec FunctionSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("function spec '" + text + "' lacks a kind prefix");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (kind == "step") return step(detail::parse_list(body));
    if (kind == "power") return power_weight(detail::parse_number(body));
    if (kind == "cospoly") return cosine_poly(detail::parse_list(body));
    throw DomainError("unknown function spec kind '" + kind + "'");
}

double FunctionSpec::operator()(double theta) const {
    return std::visit(
        [theta](const auto& v) -> double {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Step>) {
                const auto& b = v.breakpoints;
                if (theta < b.front() || theta > b.back()) return 0.0;
                const auto it = std::upper_bound(b.begin(), b.end(), theta);
                const std::size_t i = std::min<std::size_t>(it - b.begin(), b.size() - 1) - 1;
                return v.values[i];
            } else if constexpr (std::is_same_v<V, PowerWeight>) {
                return std::pow(1.0 + std::cos(theta), v.rho);
            } else if constexpr (std::is_same_v<V, CosinePoly>) {
                return chebyshev_sum(v.coefficients, std::cos(theta));
            } else {
                const auto& a = v.abscissae;
                const auto& y = v.ordinates;
                if (theta <= a.front()) return y.front();
                if (theta >= a.back()) return y.back();
                const std::size_t i = std::upper_bound(a.begin(), a.end(), theta) - a.begin() - 1;
                return y[i] + (y[i + 1] - y[i]) * (theta - a[i]) / (a[i + 1] - a[i]);
            }
        },
        v_);
}

std::string FunctionSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    auto list = [&os](const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Step>) {
                os << "step:";
                list(v.breakpoints);
                os << ";values=";
                list(v.values);
            } else if constexpr (std::is_same_v<V, PowerWeight>) {
                os << "power:" << v.rho;
            } else if constexpr (std::is_same_v<V, CosinePoly>) {
                os << "cospoly:";
                list(v.coefficients);
            } else {
                os << "grid:" << v.abscissae.size() << " samples";
            }
        },
        v_);
    return os.str();
}

const char* to_string(Normalization n) noexcept {
    return n == Normalization::HatF ? "hat" : "unnormalized";
}

const char* to_string(Region r) noexcept { return r == Region::Full ? "full" : "right"; }

CoefficientSeries coefficient_series(const FunctionSpec& f, int kmax, const JacobiParams& params,
                                     Normalization normalization) {
    if (kmax < 0) throw DomainError("kmax must be nonnegative");
    const double x_scale = std::pow(2.0, -params.alpha() - params.beta() - 1.0);
    CoefficientSeries out;
    out.params = params;
    out.kmax = kmax;
    out.normalization = normalization;

    std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, FunctionSpec::CosinePoly>) {
                const int m = static_cast<int>(v.coefficients.size()) - 1;
                auto level = [&](int n) {
                    const QuadratureRule r = gauss_jacobi_rule(n, params.alpha(), params.beta());
                    return accumulate(r, false, kmax, params, x_scale,
                                      [&](double x) { return chebyshev_sum(v.coefficients, x); });
                };
                out.values = converge_series(level, (kmax + m) / 2 + 32);
            } else if constexpr (std::is_same_v<V, FunctionSpec::PowerWeight>) {
                check_power(v, params);
                // (1 + x)^rho joins the Jacobi weight; the remaining integrand is R_k itself.
                auto level = [&](int n) {
                    const QuadratureRule r = gauss_jacobi_rule(n, params.alpha(), params.beta() + v.rho);
                    return accumulate(r, false, kmax, params, x_scale, [](double) { return 1.0; });
                };
                out.values = converge_series(level, kmax / 2 + 32);
            } else {
                out.values = Eigen::VectorXd::Zero(kmax + 1);
                for (const LinearPiece& q : linear_pieces(f)) {
                    auto level = [&](int n) {
                        return accumulate(theta_rule(n, q.t0, q.t1, params), true, kmax, params, 1.0, q);
                    };
                    out.values += converge_series(level, piece_nodes(q.t1 - q.t0, kmax));
                }
            }
        },
        f.variant());

    if (normalization == Normalization::Unnormalized) {
        for (int k = 0; k <= kmax; ++k) out.values(k) *= jacobi_P_at_one(k, params);
    }
    return out;
}

double coefficient(const FunctionSpec& f, int k, const JacobiParams& params) {
    detail::check_degree(k);
    return coefficient_series(f, k, params).values(k);
}

double norm_L(const FunctionSpec& f, const JacobiParams& params) {
    return std::visit(
        [&](const auto& v) -> double {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, FunctionSpec::PowerWeight>) {
                check_power(v, params);
                return std::pow(2.0, v.rho) * beta_function(params.alpha() + 1.0, params.beta() + v.rho + 1.0);
            } else if constexpr (std::is_same_v<V, FunctionSpec::CosinePoly>) {
                std::vector<double> cuts{0.0};
                for (double r : cosine_sign_changes(v.coefficients)) cuts.push_back(r);
                cuts.push_back(pi);
                std::vector<LinearPiece> pieces;
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back({cuts[i], cuts[i + 1], 1.0, 0.0});
                const int n0 = static_cast<int>(v.coefficients.size()) + 16;
                double total = 0.0;
                for (const LinearPiece& q : split_for_rules(pieces))
                    total += std::abs(piece_integral(q, params, n0, [&](double th) {
                        return chebyshev_sum(v.coefficients, std::cos(th));
                    }));
                return total;
            } else {
                double total = 0.0;
                for (const LinearPiece& q : split_at_zeros(linear_pieces(f)))
                    total += piece_integral(q, params, 24, [&](double th) { return std::abs(q(th)); });
                return total;
            }
        },
        f.variant());
}

double norm_L2_squared(const FunctionSpec& f, const JacobiParams& params) {
    return std::visit(
        [&](const auto& v) -> double {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, FunctionSpec::PowerWeight>) {
                if (!(params.beta() + 2.0 * v.rho > -1.0))
                    throw DomainError("power weight is not square integrable for these parameters");
                return std::pow(2.0, 2.0 * v.rho) *
                       beta_function(params.alpha() + 1.0, params.beta() + 2.0 * v.rho + 1.0);
            } else if constexpr (std::is_same_v<V, FunctionSpec::CosinePoly>) {
                const int n = static_cast<int>(v.coefficients.size()) + 2;
                const QuadratureRule r = gauss_jacobi_rule(n, params.alpha(), params.beta());
                return std::pow(2.0, -params.alpha() - params.beta() - 1.0) *
                       integrate(r, [&](double x) { return std::pow(chebyshev_sum(v.coefficients, x), 2); });
            } else {
                double total = 0.0;
                for (const LinearPiece& q : linear_pieces(f))
                    total += piece_integral(q, params, 24, [&](double th) { return q(th) * q(th); });
                return total;
            }
        },
        f.variant());
}

double synthesize(const CoefficientSeries& series, double theta) {
    if (series.normalization != Normalization::HatF)
        throw DomainError("synthesis expects hat-normalized coefficients");
    Eigen::VectorXd r(series.kmax + 1);
    jacobi_R_sweep(series.kmax, series.params, std::clamp(std::cos(theta), -1.0, 1.0), r);
    double sum = 0.0;
    for (int k = 0; k <= series.kmax; ++k) sum += series.values(k) * h_normalizer(k, series.params) * r(k);
    return sum;
}

ParsevalResult parseval_check(const FunctionSpec& f, const JacobiParams& params, int kmax) {
    if (std::holds_alternative<FunctionSpec::PowerWeight>(f.variant()))
        throw DomainError("Parseval check needs a bounded function");
    const CoefficientSeries s = coefficient_series(f, kmax, params);
    ParsevalResult out;
    for (int k = 0; k <= kmax; ++k) out.partial_sum += h_normalizer(k, params) * s.values(k) * s.values(k);
    out.l2_norm = norm_L2_squared(f, params);
    return out;
}

DecayReport fit_power_law(std::span<const int> degrees, std::span<const double> values, DegreeWindow window) {
    if (degrees.size() != values.size()) throw DomainError("fit_power_law: degree and value counts differ");
    if (window.k0 < 0 || window.k1 < 2 * window.k0 || window.k1 <= window.k0)
        throw DomainError("decay window needs 0 <= k0 and k1 >= 2 k0");
    DecayReport rep;
    rep.window = window;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const int k = degrees[i];
        if (k < window.k0 || k > window.k1) continue;
        const double a = std::abs(values[i]);
        if (k >= window.k1 / 2) rep.max_abs_tail = std::max(rep.max_abs_tail, a);
        if (k <= 2 * window.k0) rep.max_abs_head = std::max(rep.max_abs_head, a);
        if (a == 0.0 || !std::isfinite(a)) {
            ++rep.skipped_zeros;
            continue;
        }
        const double x = std::log(k + 1.0), y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++rep.used_points;
    }
    if (rep.used_points < 8) {
        std::ostringstream msg;
        msg << "decay fit has " << rep.used_points << " usable points in [" << window.k0 << ", "
            << window.k1 << "], needs 8";
        throw InsufficientDataError(msg.str());
    }
    const double n = rep.used_points;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    if (!(vx > 0.0)) throw InsufficientDataError("decay fit needs at least two distinct degrees");
    rep.slope = cxy / vx;
    rep.intercept = (sy - rep.slope * sx) / n;
    rep.r_squared = vy > 0.0 ? std::clamp(cxy * cxy / (vx * vy), 0.0, 1.0) : 1.0;
    return rep;
}

DecayReport decay_fit(const Eigen::VectorXd& values, DegreeWindow window) {
    if (window.k1 >= values.size()) throw DomainError("decay window exceeds the series length");
    std::vector<int> degrees(values.size());
    for (int k = 0; k < values.size(); ++k) degrees[k] = k;
    return fit_power_law(degrees, std::span<const double>(values.data(), values.size()), window);
}

DecayReport decay_fit(const CoefficientSeries& series, DegreeWindow window) {
    return decay_fit(series.values, window);
}

double block_max(const Eigen::VectorXd& values, int lo, int hi) {
    if (lo < 0 || hi < lo || hi >= values.size()) throw DomainError("block outside the series");
    return values.segment(lo, hi - lo + 1).cwiseAbs().maxCoeff();
}

std::vector<double> octave_maxima(const Eigen::VectorXd& values, int k_start) {
    if (k_start < 1) throw DomainError("octave start must be positive");
    std::vector<double> out;
    for (int lo = k_start; 2 * lo <= values.size() - 1; lo *= 2) out.push_back(block_max(values, lo, 2 * lo));
    return out;
}

CounterexampleReport counterexample_slope(const JacobiParams& params, double rho, int kmax) {
    if (kmax < 256) throw DomainError("counterexample needs kmax >= 256");
    if (rho >= 0.0 && rho == std::floor(rho))
        throw DomainError("rho must not be a nonnegative integer (the moments vanish eventually)");
    const FunctionSpec f = FunctionSpec::power_weight(rho);
    CounterexampleReport rep;
    rep.hat = coefficient_series(f, kmax, params);
    // The plain x-space moment differs from f-hat by the constant 2^{alpha+beta+1}.
    const Eigen::VectorXd moments = rep.hat.values * std::pow(2.0, params.alpha() + params.beta() + 1.0);
    rep.fit = decay_fit(moments, {kmax / 8, kmax});
    rep.predicted_slope = -2.0 * rho - params.alpha() - params.beta() - 2.0;
    const double s = params.beta() + rho + 1.0;
    rep.divergence_regime = params.beta() > params.alpha() && s > 0.0 && s < 0.5 * (params.beta() - params.alpha());
    rep.octave_max = octave_maxima(rep.hat.values, 16);
    return rep;
}

double sup_norm_R(int k, const JacobiParams& params, Region region, int grid) {
    detail::check_degree(k);
    const int n = std::max(grid, 64 * (k + 1) + 1);
    const double lo = region == Region::Full ? 0.0 : 0.5 * pi;
    const double hi = pi;
    const Eigen::ArrayXd theta = Eigen::ArrayXd::LinSpaced(n, lo, hi);
    const Eigen::ArrayXd vals = jacobi_R(k, params, theta.cos().min(1.0).max(-1.0)).abs();
    Eigen::Index arg = 0;
    double best = vals.maxCoeff(&arg);

    auto g = [&](double th) { return std::abs(jacobi_R(k, params, std::clamp(std::cos(th), -1.0, 1.0))); };
    double a = theta(std::max<Eigen::Index>(arg - 1, 0));
    double b = theta(std::min<Eigen::Index>(arg + 1, n - 1));
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - invphi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + invphi * (b - a);
            gd = g(d);
        }
    }
    return std::max({best, gc, gd});
}

SupNormGrowth sup_norm_growth(const JacobiParams& params, Region region, int k0, int k1, int count) {
    if (k0 < 1 || k1 < 2 * k0 || count < 8) throw DomainError("sup-norm growth needs 1 <= k0, k1 >= 2 k0, count >= 8");
    SupNormGrowth out;
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        const int k = static_cast<int>(std::lround(std::exp(std::log(k0) + t * (std::log(k1) - std::log(k0)))));
        if (!out.degrees.empty() && k <= out.degrees.back()) continue;
        out.degrees.push_back(k);
        out.sup_norms.push_back(sup_norm_R(k, params, region));
    }
    out.fit = fit_power_law(out.degrees, out.sup_norms, {k0, k1});
    return out;
}

}  // namespace rljacobi
