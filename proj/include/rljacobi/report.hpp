#pragma once

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rljacobi/jacobi_series.hpp"
#include "rljacobi/jtransform.hpp"

namespace rljacobi {

/// Shortest decimal string that parses back to exactly x; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_number(double x);

/// Column-named numeric table, the common shape of every CSV the tools emit.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& table);
Table read_csv(std::istream& is);

Table series_table(const CoefficientSeries& series);
Table sweep_table(const std::string& x_name, std::span<const double> x, const std::string& y_name,
                  const Eigen::VectorXd& y);

/// Non-finite numbers become null.
nlohmann::json to_json(const Table& table);
nlohmann::json to_json(const JacobiParams& params);
nlohmann::json to_json(const CoefficientSeries& series);
nlohmann::json to_json(const DecayReport& report);
nlohmann::json to_json(const CounterexampleReport& report);
nlohmann::json to_json(const SupNormGrowth& growth);
nlohmann::json to_json(const EnvelopeReport& report);

}  // namespace rljacobi
