// Command-line front end: each subcommand runs one experiment and prints a
// short report; tables go to --out (or stdout) as CSV or JSON.
//
// Exit codes: 0 ok, 1 property violated, 2 usage or domain error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "rljacobi/acceptance.hpp"
#include "rljacobi/jacobi_series.hpp"
#include "rljacobi/jtransform.hpp"
#include "rljacobi/laguerre.hpp"
#include "rljacobi/mehler.hpp"
#include "rljacobi/report.hpp"

using namespace rljacobi;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

struct Output {
    std::string path;
    std::string format = "csv";

    void add(CLI::App* app) {
        app->add_option("--out", path, "output file (default stdout)");
        app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }

    void emit(const Table& table, const nlohmann::json& json) const {
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw DomainError("cannot open output file '" + path + "'");
        }
        std::ostream& os = path.empty() ? std::cout : file;
        if (format == "json") {
            os << json.dump(2) << '\n';
        } else {
            write_csv(os, table);
        }
    }
};

std::vector<double> tau_grid(const std::vector<double>& listed, double lo, double hi, int count) {
    if (!listed.empty()) return listed;
    if (count < 1) throw DomainError("tau count must be positive");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier-Jacobi coefficient experiments"};
    app.require_subcommand(1);

    double alpha = 0.0, beta = 0.0;
    auto add_params = [&](CLI::App* c) {
        c->add_option("--alpha", alpha, "Jacobi parameter alpha")->required();
        c->add_option("--beta", beta, "Jacobi parameter beta")->required();
    };

    // coeffs
    CLI::App* coeffs = app.add_subcommand("coeffs", "coefficient series of a function on (0, pi)");
    add_params(coeffs);
    std::string function;
    int kmax = 256;
    std::string normalization = "hat";
    Output coeffs_out;
    coeffs->add_option("--function", function, "step:a,b[,..] | power:rho | cospoly:c0,c1,..")->required();
    coeffs->add_option("--kmax", kmax, "highest degree");
    coeffs->add_option("--normalization", normalization, "hat or unnormalized")
        ->check(CLI::IsMember({"hat", "unnormalized"}));
    coeffs_out.add(coeffs);

    // decay
    CLI::App* decay = app.add_subcommand("decay", "coefficients plus a log-log decay fit");
    add_params(decay);
    int k0 = 16;
    std::optional<int> k1;
    decay->add_option("--function", function, "function spec")->required();
    decay->add_option("--kmax", kmax, "highest degree");
    decay->add_option("--k0", k0, "fit window start");
    decay->add_option("--k1", k1, "fit window end (default kmax)");

    // counterexample
    CLI::App* cex = app.add_subcommand("counterexample", "decay exponent of (1 + cos theta)^rho coefficients");
    add_params(cex);
    double rho = 0.0;
    cex->add_option("--rho", rho, "power rho")->required();
    cex->add_option("--kmax", kmax, "highest degree (>= 256)");

    // opnorm
    CLI::App* opnorm = app.add_subcommand("opnorm", "growth of sup |R_k| over a region");
    add_params(opnorm);
    std::string region = "full";
    int ok0 = 64, ok1 = 1024, count = 16;
    opnorm->add_option("--region", region, "full or right")->check(CLI::IsMember({"full", "right"}));
    opnorm->add_option("--k0", ok0, "smallest degree");
    opnorm->add_option("--k1", ok1, "largest degree");
    opnorm->add_option("--count", count, "number of log-spaced degrees");

    // verify-mehler
    CLI::App* vm = app.add_subcommand("verify-mehler", "integral representation vs recurrence on the standard grid");
    int vm_kmax = 50;
    vm->add_option("--kmax", vm_kmax, "highest degree");

    // laguerre
    CLI::App* lag = app.add_subcommand("laguerre", "Laguerre coefficients, step identity and bound");
    lag->require_subcommand(1);
    double lag_alpha = 0.0;
    CLI::App* lag_coeffs = lag->add_subcommand("coeffs", "coefficient series");
    lag_coeffs->add_option("--alpha", lag_alpha, "Laguerre parameter")->required();
    lag_coeffs->add_option("--function", function, "step:a,b | poly:c0,.. | exp:c:c0,..")->required();
    lag_coeffs->add_option("--kmax", kmax, "highest degree");
    Output lag_out;
    lag_out.add(lag_coeffs);
    CLI::App* lag_id = lag->add_subcommand("identity", "indicator-coefficient identity for k = 1..kmax");
    double lag_a = 1.0;
    lag_id->add_option("--alpha", lag_alpha, "Laguerre parameter")->required();
    lag_id->add_option("--a", lag_a, "indicator end point a > 0")->required();
    lag_id->add_option("--kmax", kmax, "highest degree");
    CLI::App* lag_bound = lag->add_subcommand("bound", "max e^{-x/2} |R_k| for k = 0..kmax");
    lag_bound->add_option("--alpha", lag_alpha, "Laguerre parameter")->required();
    lag_bound->add_option("--kmax", kmax, "highest degree");

    // transform
    CLI::App* tr = app.add_subcommand("transform", "Jacobi transform over a tau grid");
    add_params(tr);
    std::vector<double> taus;
    double tau_min = 0.0, tau_max = 20.0;
    int tau_count = 41;
    Output tr_out;
    tr->add_option("--function", function, "indicator:a,b | expdecay:c:c0,.. | grid:t0,y0,..")->required();
    tr->add_option("--taus", taus, "explicit tau values")->delimiter(',');
    tr->add_option("--tau-min", tau_min, "grid start");
    tr->add_option("--tau-max", tau_max, "grid end");
    tr->add_option("--tau-count", tau_count, "grid size");
    tr_out.add(tr);

    // selftest
    CLI::App* st = app.add_subcommand("selftest", "run the acceptance suite");
    std::optional<int> only;
    st->add_option("--criterion", only, "run a single criterion 1..9");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (coeffs->parsed()) {
            const JacobiParams p(alpha, beta);
            const CoefficientSeries s = coefficient_series(
                FunctionSpec::parse(function), kmax, p,
                normalization == "hat" ? Normalization::HatF : Normalization::Unnormalized);
            coeffs_out.emit(series_table(s), to_json(s));
            return kOk;
        }
        if (decay->parsed()) {
            const JacobiParams p(alpha, beta);
            const CoefficientSeries s = coefficient_series(FunctionSpec::parse(function), kmax, p);
            const DecayReport r = decay_fit(s, {k0, k1.value_or(kmax)});
            const double ratio = r.max_abs_tail / r.max_abs_head;
            std::printf("params = (%g, %g)\nwindow = [%d, %d]\nslope = %.6f\nr_squared = %.6f\n"
                        "tail_over_head = %.6g\n",
                        alpha, beta, r.window.k0, r.window.k1, r.slope, r.r_squared, ratio);
            // decay is only guaranteed on the region S
            if (p.in_S() && !(ratio < 0.2)) {
                std::printf("violation: tail block max is not below 0.2 x head block max\n");
                return kViolation;
            }
            return kOk;
        }
        if (cex->parsed()) {
            const CounterexampleReport r = counterexample_slope(JacobiParams(alpha, beta), rho, kmax);
            std::printf("params = (%g, %g), rho = %g\nwindow = [%d, %d]\nfitted = %.4f\npredicted = %.4f\n"
                        "divergence_regime = %s\n",
                        alpha, beta, rho, r.fit.window.k0, r.fit.window.k1, r.fit.slope, r.predicted_slope,
                        r.divergence_regime ? "yes" : "no");
            if (std::abs(r.fit.slope - r.predicted_slope) > 0.05) {
                std::printf("violation: fitted slope differs from predicted by more than 0.05\n");
                return kViolation;
            }
            return kOk;
        }
        if (opnorm->parsed()) {
            const JacobiParams p(alpha, beta);
            const Region reg = region == "full" ? Region::Full : Region::Right;
            const SupNormGrowth g = sup_norm_growth(p, reg, ok0, ok1, count);
            const double predicted =
                (reg == Region::Full ? std::max({alpha, beta, -0.5}) : std::max(beta, -0.5)) - alpha;
            std::printf("params = (%g, %g), region = %s\nslope = %.4f\npredicted = %.4f\nr_squared = %.6f\n", alpha,
                        beta, to_string(reg), g.fit.slope, predicted, g.fit.r_squared);
            if (std::abs(g.fit.slope - predicted) > 0.1) {
                std::printf("violation: fitted slope differs from predicted by more than 0.1\n");
                return kViolation;
            }
            return kOk;
        }
        if (vm->parsed()) {
            double worst = 0.0, worst_limit = 0.0;
            const double thetas[] = {0.3, 1.0, std::numbers::pi / 2, 2.2, 2.9};
            Eigen::VectorXd r(vm_kmax + 1);
            for (double a : {0.0, 0.5, 1.5})
                for (double b : {-0.5, 0.0, 0.75})
                    for (double theta : thetas) {
                        const JacobiParams p(a, b);
                        const MehlerSweep s = mehler_R_sweep(vm_kmax, p, theta);
                        jacobi_R_sweep(vm_kmax, p, std::cos(theta), r);
                        for (int k = 0; k <= vm_kmax; ++k)
                            worst = std::max(worst, std::abs(s.values(k) - r(k)) / std::max(1.0, std::abs(r(k))));
                    }
            for (double b : {-0.75, -0.9})
                for (double theta : thetas) {
                    const MehlerSweep s = mehler_limit_R_sweep(vm_kmax, b, theta);
                    jacobi_R_sweep(vm_kmax, JacobiParams(-0.5, b), std::cos(theta), r);
                    for (int k = 0; k <= vm_kmax; ++k)
                        worst_limit =
                            std::max(worst_limit, std::abs(s.values(k) - r(k)) / std::max(1.0, std::abs(r(k))));
                }
            std::printf("max discrepancy = %.3g\nmax limit-formula discrepancy = %.3g\n", worst, worst_limit);
            return worst <= 1e-8 && worst_limit <= 1e-8 ? kOk : kViolation;
        }
        if (lag_coeffs->parsed()) {
            const Eigen::VectorXd s = laguerre_coefficient_series(LaguerreFunctionSpec::parse(function), kmax, lag_alpha);
            std::vector<double> ks(s.size());
            for (std::size_t k = 0; k < ks.size(); ++k) ks[k] = static_cast<double>(k);
            const Table t = sweep_table("k", ks, "value", s);
            lag_out.emit(t, to_json(t));
            return kOk;
        }
        if (lag_id->parsed()) {
            double worst = 0.0;
            std::printf("k,lhs,rhs\n");
            for (int k = 1; k <= kmax; ++k) {
                const StepIdentity s = step_identity_check(lag_a, k, lag_alpha);
                worst = std::max(worst, std::abs(s.lhs - s.rhs) / std::max(1.0, std::abs(s.rhs)));
                std::printf("%d,%s,%s\n", k, format_number(s.lhs).c_str(), format_number(s.rhs).c_str());
            }
            std::printf("max discrepancy = %.3g\n", worst);
            return worst <= 1e-10 ? kOk : kViolation;
        }
        if (lag_bound->parsed()) {
            std::vector<double> grid = log_grid(1e-3, 900.0, 6000);
            grid.insert(grid.begin(), 0.0);
            const Eigen::VectorXd m = laguerre_bound_sweep(kmax, lag_alpha, grid);
            std::printf("max over k <= %d of max e^{-x/2}|R_k| = %.15f\n", kmax, m.maxCoeff());
            // the bound is only guaranteed for alpha >= 0
            if (lag_alpha >= 0.0 && m.maxCoeff() > 1.0 + 1e-10) return kViolation;
            return kOk;
        }
        if (tr->parsed()) {
            const JacobiParams p(alpha, beta);
            const std::vector<double> grid = tau_grid(taus, tau_min, tau_max, tau_count);
            const Eigen::VectorXd v = transform_sweep(HalfLineFunctionSpec::parse(function, p), grid, p);
            const Table t = sweep_table("tau", grid, "value", v);
            tr_out.emit(t, to_json(t));
            return kOk;
        }
        if (st->parsed()) {
            int failed = 0;
            auto print = [&](const CriterionResult& r) {
                std::printf("[%s] criterion %d (%s): %s [%.2f s]\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                            r.detail.c_str(), r.seconds);
                std::fflush(stdout);
                if (!r.passed) ++failed;
            };
            if (only) {
                print(run_criterion(*only));
            } else {
                run_acceptance(print);
            }
            return failed == 0 ? kOk : kViolation;
        }
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const AccuracyError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kNumerical;
    }
    return kUsage;
}
