#include "rljacobi/jtransform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rljacobi/quadrature.hpp"
#include "text_parse.hpp"

namespace rljacobi {

namespace {

constexpr double kInnerTol = 1e-11;
constexpr double kOuterTol = 1e-10;
constexpr double kTailTol = 1e-12;
constexpr double kTailCap = 1000.0;
constexpr int kBaseNodes = 16;
constexpr int kLevelCount = 9;  // 16 .. 4096

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

double log_sinh(double x) {
    if (x < 20.0) return std::log(std::sinh(x));
    return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double log_cosh(double x) {
    x = std::abs(x);
    return x - std::numbers::ln2 + std::log1p(std::exp(-2.0 * x));
}

// log(sinh(u) / u), u >= 0
double log_sinhc(double u) {
    if (u < 1e-4) return u * u / 6.0;
    return log_sinh(u) - std::log(u);
}

double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t m = c.size(); m-- > 0;) s = s * x + c[m];
    return s;
}

// (2 alpha + 1) log sinh t + (2 beta + 1) log cosh t; with `divided` the
// t^{2 alpha + 1} factor already carried by the rule is taken out.
double log_measure(double t, const JacobiParams& p, bool divided) {
    const double a = 2.0 * p.alpha() + 1.0;
    const double s = divided ? log_sinhc(t) : log_sinh(t);
    return (a == 0.0 ? 0.0 : a * s) + (2.0 * p.beta() + 1.0) * log_cosh(t);
}

double envelope(double t, const JacobiParams& p) { return (1.0 + t) * std::exp(-p.rho() * t); }

int start_level(double tau, double t) {
    const double want = 0.5 * tau * t + kBaseNodes;
    int j = 0;
    while (j + 2 < kLevelCount && kBaseNodes * (1 << j) < want) ++j;
    return j;
}

struct VectorLevel {
    Eigen::VectorXd values;
    Eigen::VectorXd magnitudes;
};

template <typename L>
Eigen::VectorXd converge_vector(L&& level, int n0, double tol) {
    int n = std::clamp(n0, 1, kMaxNodes);
    VectorLevel prev = level(n);
    double achieved = 0.0;
    while (n < kMaxNodes) {
        n = std::min(2 * n, kMaxNodes);
        VectorLevel next = level(n);
        achieved = 0.0;
        for (Eigen::Index k = 0; k < next.values.size(); ++k) {
            const double scale = std::max({std::abs(next.values(k)), next.magnitudes(k), 1e-300});
            achieved = std::max(achieved, std::abs(next.values(k) - prev.values(k)) / scale);
        }
        if (achieved <= tol) return next.values;
        prev = std::move(next);
    }
    throw AccuracyError("half-line quadrature did not converge", achieved);
}

// Rule on [lo, hi] with the half-line measure folded into the weights.
QuadratureRule measure_rule(int n, double lo, double hi, const JacobiParams& p) {
    const bool at_zero = lo <= 0.0;
    QuadratureRule r =
        at_zero ? mapped_jacobi_rule(n, 0.0, hi, 0.0, 2.0 * p.alpha() + 1.0) : gauss_legendre_rule(n, lo, hi);
    for (Eigen::Index i = 0; i < r.order(); ++i) r.weights(i) *= std::exp(log_measure(r.nodes(i), p, at_zero));
    return r;
}

struct LinearPiece {
    double lo, hi, c0, c1;
    double operator()(double t) const { return c0 + (c1 - c0) * (t - lo) / (hi - lo); }
};

std::vector<LinearPiece> compact_pieces(const HalfLineFunctionSpec& f) {
    std::vector<LinearPiece> out;
    if (const auto* ind = std::get_if<HalfLineFunctionSpec::Indicator>(&f.variant())) {
        out.push_back({ind->a, ind->b, 1.0, 1.0});
    } else if (const auto* g = std::get_if<HalfLineFunctionSpec::GridSampled>(&f.variant())) {
        for (std::size_t i = 0; i + 1 < g->abscissae.size(); ++i) {
            const LinearPiece p{g->abscissae[i], g->abscissae[i + 1], g->ordinates[i], g->ordinates[i + 1]};
            if (p.c0 != 0.0 || p.c1 != 0.0) out.push_back(p);
        }
    }
    return out;
}

// int_lo^hi g(t) kernel(t) dmu(t) for every column of kernel(t).
template <typename G, typename K>
Eigen::VectorXd piece_integral(double lo, double hi, const JacobiParams& p, Eigen::Index width, double tau_max, G&& g,
                               K&& kernel) {
    auto level = [&](int n) {
        const QuadratureRule r = measure_rule(n, lo, hi, p);
        VectorLevel out{Eigen::VectorXd::Zero(width), Eigen::VectorXd::Zero(width)};
        for (Eigen::Index i = 0; i < r.order(); ++i) {
            const double t = r.nodes(i);
            const double w = r.weights(i) * g(t);
            if (w == 0.0) continue;
            const Eigen::VectorXd k = kernel(t);
            out.values.noalias() += w * k;
            out.magnitudes.noalias() += std::abs(w) * k.cwiseAbs();
        }
        return out;
    };
    const int n0 = static_cast<int>(std::ceil(0.6 * tau_max * (hi - lo))) + kBaseNodes;
    return converge_vector(level, n0, kOuterTol);
}

// Integral over the support of f; ExpDecay is cut where the envelope tail
// falls below kTailTol of the accumulated value.
template <typename K>
Eigen::VectorXd halfline_integral(const HalfLineFunctionSpec& f, const JacobiParams& p, Eigen::Index width,
                                  double tau_max, K&& kernel) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(width);
    if (const auto* e = std::get_if<HalfLineFunctionSpec::ExpDecay>(&f.variant())) {
        require(e->rate > 2.0 * p.rho(), "exp-decay rate must exceed 2(alpha+beta+1) for these parameters");
        auto g = [&](double t) { return horner(e->coefficients, t) * std::exp(-e->rate * t); };
        auto abs_env = [&](double t) { return std::abs(g(t)) * envelope(t, p); };
        auto one = [](double) { return Eigen::VectorXd::Ones(1); };
        double prev_tail = INFINITY;
        for (double lo = 0.0; lo < kTailCap; lo += 1.0) {
            acc += piece_integral(lo, lo + 1.0, p, width, tau_max, g, kernel);
            const double tail = piece_integral(lo, lo + 1.0, p, 1, 0.0, abs_env, one)(0);
            const double scale = std::max(acc.cwiseAbs().maxCoeff(), 1e-300);
            if (lo >= 2.0 && tail < prev_tail && tail <= kTailTol * scale) return acc;
            if (tail == 0.0 && lo >= 2.0) return acc;
            prev_tail = tail;
        }
        throw AccuracyError("exp-decay transform tail did not fall below tolerance", prev_tail);
    }
    for (const LinearPiece& piece : compact_pieces(f)) acc += piece_integral(piece.lo, piece.hi, p, width, tau_max, piece, kernel);
    return acc;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

HalfLineFunctionSpec HalfLineFunctionSpec::indicator(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b), "indicator endpoints must be finite");
    require(a >= 0.0 && a < b, "indicator interval needs 0 <= a < b");
    return HalfLineFunctionSpec(Indicator{a, b});
}

HalfLineFunctionSpec HalfLineFunctionSpec::exp_decay(std::vector<double> coefficients, double rate,
                                                     const JacobiParams& params) {
    require(!coefficients.empty(), "exp-decay needs polynomial coefficients");
    require(std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return std::isfinite(c); }),
            "exp-decay coefficients must be finite");
    require(std::isfinite(rate) && rate > 2.0 * params.rho(),
            "exp-decay rate must exceed 2(alpha+beta+1) for a finite weighted norm");
    return HalfLineFunctionSpec(ExpDecay{std::move(coefficients), rate});
}

HalfLineFunctionSpec HalfLineFunctionSpec::grid_sampled(std::vector<double> abscissae, std::vector<double> ordinates) {
    require(abscissae.size() >= 2 && abscissae.size() == ordinates.size(), "grid needs matching abscissae and ordinates");
    require(abscissae.front() >= 0.0, "grid abscissae must be nonnegative");
    require(std::all_of(abscissae.begin(), abscissae.end(), [](double x) { return std::isfinite(x); }) &&
                std::all_of(ordinates.begin(), ordinates.end(), [](double x) { return std::isfinite(x); }),
            "grid values must be finite");
    require(std::adjacent_find(abscissae.begin(), abscissae.end(), std::greater_equal<>()) == abscissae.end(),
            "grid abscissae must be strictly increasing");
    return HalfLineFunctionSpec(GridSampled{std::move(abscissae), std::move(ordinates)});
}

HalfLineFunctionSpec HalfLineFunctionSpec::parse(const std::string& text, const JacobiParams& params) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("function spec '" + text + "' lacks a kind prefix");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (kind == "indicator") {
        const std::vector<double> v = detail::parse_list(body);
        require(v.size() == 2, "indicator spec needs exactly two endpoints");
        return indicator(v[0], v[1]);
    }
    if (kind == "expdecay") {
        const auto sep = body.find(':');
        if (sep == std::string::npos) throw DomainError("expdecay spec needs the form expdecay:c:c0,c1,...");
        return exp_decay(detail::parse_list(body.substr(sep + 1)), detail::parse_number(body.substr(0, sep)), params);
    }
    if (kind == "grid") {
        const std::vector<double> v = detail::parse_list(body);
        require(v.size() % 2 == 0, "grid spec needs t,y pairs");
        std::vector<double> t, y;
        for (std::size_t i = 0; i < v.size(); i += 2) {
            t.push_back(v[i]);
            y.push_back(v[i + 1]);
        }
        return grid_sampled(std::move(t), std::move(y));
    }
    throw DomainError("unknown half-line function spec kind '" + kind + "'");
}

double HalfLineFunctionSpec::operator()(double t) const {
    if (const auto* ind = std::get_if<Indicator>(&v_)) return (t >= ind->a && t <= ind->b) ? 1.0 : 0.0;
    if (const auto* e = std::get_if<ExpDecay>(&v_)) return t < 0.0 ? 0.0 : horner(e->coefficients, t) * std::exp(-e->rate * t);
    const auto& g = std::get<GridSampled>(v_);
    if (t < g.abscissae.front() || t > g.abscissae.back()) return 0.0;
    const auto it = std::upper_bound(g.abscissae.begin(), g.abscissae.end(), t);
    const std::size_t i = std::min<std::size_t>(it - g.abscissae.begin(), g.abscissae.size() - 1) - 1;
    return LinearPiece{g.abscissae[i], g.abscissae[i + 1], g.ordinates[i], g.ordinates[i + 1]}(t);
}

std::string HalfLineFunctionSpec::describe() const {
    std::ostringstream os;
    if (const auto* ind = std::get_if<Indicator>(&v_)) {
        os << "indicator[" << ind->a << ", " << ind->b << "]";
    } else if (const auto* e = std::get_if<ExpDecay>(&v_)) {
        os << "expdecay(rate " << e->rate << ", degree " << e->coefficients.size() - 1 << ")";
    } else {
        os << "grid(" << std::get<GridSampled>(v_).abscissae.size() << " points)";
    }
    return os.str();
}

void check_halfline_params(const JacobiParams& params) {
    require(params.alpha() >= -0.5, "half-line Jacobi functions need alpha >= -1/2");
    require(params.alpha() + params.beta() >= -1.0, "half-line Jacobi functions need alpha + beta >= -1");
}

JacobiFunction::JacobiFunction(const JacobiParams& params, double t) : params_(params), t_(t) {
    check_halfline_params(params);
    require(std::isfinite(t) && t >= 0.0, "Jacobi function argument t must be finite and nonnegative");
    if (params.alpha() == -0.5) leading_ = std::exp((-params.beta() - 0.5) * log_cosh(t));
    levels_.resize(kLevelCount);
}

const JacobiFunction::Level& JacobiFunction::level(int index) {
    Level& lv = levels_[index];
    if (lv.nodes.size() > 0) return lv;
    const int n = kBaseNodes << index;
    const double a = params_.alpha(), b = params_.beta(), t = t_;
    const double lct = log_cosh(t);
    if (a == -0.5) {
        const QuadratureRule r = gauss_legendre_rule(n, 0.0, t);
        const double coef = 0.25 - b * b;
        const double log_k = std::log(std::abs(coef)) + log_sinh(t) + (-b - 0.5) * lct;
        lv.nodes = r.nodes;
        lv.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            const double s = r.nodes(i);
            const double z = (t - s) <= 0.0 ? 0.0 : std::exp(log_sinh(0.5 * (t + s)) + log_sinh(0.5 * (t - s)) - lct);
            // cosh t + cosh s = cosh t (1 + cosh s / cosh t)
            const double log_den = lct + std::log1p(std::exp(log_cosh(s) - lct));
            lv.weights(i) = std::copysign(1.0, coef) * r.weights(i) * std::exp(log_k - log_den) *
                            hyp2f1(0.5 + b, 0.5 - b, 2.0, z);
        }
        return lv;
    }
    // (cosh 2t - cosh 2s)^{a - 1/2} = (t - s)^{a - 1/2} [2 sinh(t + s) sinh(t - s)/(t - s)]^{a - 1/2}
    const QuadratureRule r = mapped_jacobi_rule(n, 0.0, t, a - 0.5, 0.0);
    const double log_pref = (-a + 1.5) * std::numbers::ln2 + log_gamma(a + 1.0) - log_gamma(a + 0.5) -
                            0.5 * std::log(std::numbers::pi) - 2.0 * a * log_sinh(t) - (a + b) * lct;
    lv.nodes = r.nodes;
    lv.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double s = r.nodes(i);
        const double u = t - s;
        const double ratio = std::numbers::ln2 + log_sinh(t + s) + log_sinhc(u);
        const double z = u <= 0.0 ? 0.0 : std::exp(log_sinh(0.5 * (t + s)) + log_sinh(0.5 * u) - lct);
        lv.weights(i) = r.weights(i) * std::exp(log_pref + (a - 0.5) * ratio) * hyp2f1(a + b, a - b, a + 0.5, z);
    }
    return lv;
}

double JacobiFunction::operator()(double tau) {
    require(std::isfinite(tau) && tau >= 0.0, "frequency tau must be finite and nonnegative");
    if (t_ == 0.0) return 1.0;
    const double lead = params_.alpha() == -0.5 ? leading_ * std::cos(tau * t_) : 0.0;
    if (params_.alpha() == -0.5 && std::abs(params_.beta()) == 0.5) return lead;
    auto sum = [&](int j) {
        const Level& lv = level(j);
        Estimate e{lead, std::abs(lead)};
        for (Eigen::Index i = 0; i < lv.nodes.size(); ++i) {
            const double term = lv.weights(i) * std::cos(tau * lv.nodes(i));
            e.value += term;
            e.magnitude += std::abs(lv.weights(i));
        }
        return e;
    };
    int j = start_level(tau, t_);
    Estimate prev = sum(j);
    double achieved = 0.0;
    while (++j < kLevelCount) {
        const Estimate next = sum(j);
        achieved = std::abs(next.value - prev.value) / std::max({std::abs(next.value), next.magnitude, 1e-300});
        if (achieved <= kInnerTol) return next.value;
        prev = next;
    }
    throw AccuracyError("Jacobi function integral did not converge", achieved);
}

Eigen::VectorXd JacobiFunction::operator()(std::span<const double> taus) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(taus.size()));
    for (std::size_t i = 0; i < taus.size(); ++i) out(static_cast<Eigen::Index>(i)) = (*this)(taus[i]);
    return out;
}

double jacobi_function(double tau, double t, const JacobiParams& params) {
    JacobiFunction phi(params, t);
    return phi(tau);
}

double transform_prefactor(const JacobiParams& params) {
    check_halfline_params(params);
    return std::exp((2.0 * params.rho() + 0.5) * std::numbers::ln2 - log_gamma(params.alpha() + 1.0));
}

Eigen::VectorXd transform_sweep(const HalfLineFunctionSpec& f, std::span<const double> taus,
                                const JacobiParams& params) {
    const double pref = transform_prefactor(params);
    for (double tau : taus) require(std::isfinite(tau) && tau >= 0.0, "frequency tau must be finite and nonnegative");
    const auto width = static_cast<Eigen::Index>(taus.size());
    if (width == 0) return Eigen::VectorXd();
    auto kernel = [&](double t) {
        JacobiFunction phi(params, t);
        return phi(taus);
    };
    return pref * halfline_integral(f, params, width, max_abs(taus), kernel);
}

double transform(const HalfLineFunctionSpec& f, double tau, const JacobiParams& params) {
    const double taus[] = {tau};
    return transform_sweep(f, taus, params)(0);
}

double envelope_integral(const HalfLineFunctionSpec& f, const JacobiParams& params) {
    check_halfline_params(params);
    const HalfLineFunctionSpec::ExpDecay* e = std::get_if<HalfLineFunctionSpec::ExpDecay>(&f.variant());
    if (e == nullptr) {
        // |f| on a linear piece that changes sign is linear on each side of the zero
        double total = 0.0;
        for (const LinearPiece& piece : compact_pieces(f)) {
            std::vector<LinearPiece> parts{piece};
            if (piece.c0 * piece.c1 < 0.0) {
                const double z = piece.lo + (piece.hi - piece.lo) * piece.c0 / (piece.c0 - piece.c1);
                parts = {{piece.lo, z, piece.c0, 0.0}, {z, piece.hi, 0.0, piece.c1}};
            }
            for (const LinearPiece& q : parts) {
                auto g = [&](double t) { return std::abs(q(t)) * envelope(t, params); };
                total += piece_integral(q.lo, q.hi, params, 1, 0.0, g, [](double) { return Eigen::VectorXd::Ones(1); })(0);
            }
        }
        return total;
    }
    require(e->rate > 2.0 * params.rho(), "exp-decay rate must exceed 2(alpha+beta+1) for these parameters");
    double total = 0.0, prev = INFINITY;
    for (double lo = 0.0; lo < kTailCap; lo += 1.0) {
        auto g = [&](double t) { return std::abs(horner(e->coefficients, t)) * std::exp(-e->rate * t) * envelope(t, params); };
        const double piece = piece_integral(lo, lo + 1.0, params, 1, 0.0, g, [](double) { return Eigen::VectorXd::Ones(1); })(0);
        total += piece;
        if (lo >= 2.0 && piece < prev && piece <= kTailTol * std::max(total, 1e-300)) return total;
        if (piece == 0.0 && lo >= 2.0) return total;
        prev = piece;
    }
    throw AccuracyError("envelope integral tail did not fall below tolerance", prev);
}

std::vector<double> quarter_points(std::span<const double> grid) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        out.push_back(0.75 * grid[i] + 0.25 * grid[i + 1]);
        out.push_back(0.25 * grid[i] + 0.75 * grid[i + 1]);
    }
    return out;
}

EnvelopeReport envelope_check(const JacobiParams& params, std::span<const double> t_grid,
                              std::span<const double> tau_grid, double slack) {
    check_halfline_params(params);
    require(t_grid.size() >= 2 && tau_grid.size() >= 2, "envelope check needs at least two t and two tau values");
    auto max_ratio = [&](std::span<const double> ts, std::span<const double> taus) {
        double m = 0.0;
        for (double t : ts) {
            JacobiFunction phi(params, t);
            const double env = envelope(t, params);
            for (double tau : taus) m = std::max(m, std::abs(phi(tau)) / env);
        }
        return m;
    };
    EnvelopeReport rep;
    rep.slack = slack;
    rep.c_star = max_ratio(t_grid, tau_grid);
    rep.calibration_points = static_cast<int>(t_grid.size() * tau_grid.size());
    const std::vector<double> tv = quarter_points(t_grid), tauv = quarter_points(tau_grid);
    rep.verification_points = static_cast<int>(tv.size() * tauv.size());
    rep.worst_ratio = max_ratio(tv, tauv) / rep.c_star;
    return rep;
}

}  // namespace rljacobi
