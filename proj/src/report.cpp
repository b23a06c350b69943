#include "rljacobi/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "text_parse.hpp"

namespace rljacobi {

namespace {

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

double parse_cell(const std::string& s) {
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return detail::parse_number(s);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) os << (j ? "," : "") << table.columns[j];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
        os << '\n';
    }
}

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw DomainError("csv: missing header");
    t.columns = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != t.columns.size()) throw DomainError("csv: row width differs from header");
        std::vector<double> row;
        for (const std::string& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table series_table(const CoefficientSeries& series) {
    Table t{{"k", "value"}, {}};
    for (Eigen::Index k = 0; k < series.values.size(); ++k)
        t.rows.push_back({static_cast<double>(k), series.values(k)});
    return t;
}

Table sweep_table(const std::string& x_name, std::span<const double> x, const std::string& y_name,
                  const Eigen::VectorXd& y) {
    if (static_cast<Eigen::Index>(x.size()) != y.size()) throw DomainError("sweep table needs equal lengths");
    Table t{{x_name, y_name}, {}};
    for (std::size_t i = 0; i < x.size(); ++i) t.rows.push_back({x[i], y(static_cast<Eigen::Index>(i))});
    return t;
}

nlohmann::json to_json(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row) r.push_back(number(v));
        rows.push_back(std::move(r));
    }
    return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

nlohmann::json to_json(const JacobiParams& params) { return {{"alpha", params.alpha()}, {"beta", params.beta()}}; }

nlohmann::json to_json(const CoefficientSeries& series) {
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index k = 0; k < series.values.size(); ++k) values.push_back(number(series.values(k)));
    return {{"params", to_json(series.params)},
            {"kmax", series.kmax},
            {"normalization", to_string(series.normalization)},
            {"values", std::move(values)}};
}

nlohmann::json to_json(const DecayReport& r) {
    return {{"window", {r.window.k0, r.window.k1}},
            {"slope", number(r.slope)},
            {"intercept", number(r.intercept)},
            {"r_squared", number(r.r_squared)},
            {"max_abs_head", number(r.max_abs_head)},
            {"max_abs_tail", number(r.max_abs_tail)},
            {"used_points", r.used_points},
            {"skipped_zeros", r.skipped_zeros}};
}

nlohmann::json to_json(const CounterexampleReport& r) {
    nlohmann::json oct = nlohmann::json::array();
    for (double v : r.octave_max) oct.push_back(number(v));
    return {{"params", to_json(r.hat.params)},
            {"fit", to_json(r.fit)},
            {"predicted_slope", r.predicted_slope},
            {"divergence_regime", r.divergence_regime},
            {"octave_max", std::move(oct)}};
}

nlohmann::json to_json(const SupNormGrowth& g) {
    nlohmann::json norms = nlohmann::json::array();
    for (double v : g.sup_norms) norms.push_back(number(v));
    return {{"degrees", g.degrees}, {"sup_norms", std::move(norms)}, {"fit", to_json(g.fit)}};
}

nlohmann::json to_json(const EnvelopeReport& r) {
    return {{"c_star", number(r.c_star)},
            {"worst_ratio", number(r.worst_ratio)},
            {"slack", r.slack},
            {"holds", r.holds()},
            {"calibration_points", r.calibration_points},
            {"verification_points", r.verification_points}};
}

}  // namespace rljacobi
