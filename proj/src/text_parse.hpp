#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "rljacobi/errors.hpp"

namespace rljacobi::detail {

inline double parse_number(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && *(last - 1) == ' ') --last;
    if (first < last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw DomainError("function spec: bad number '" + s + "'");
    return v;
}

inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
    if (out.empty()) throw DomainError("function spec: empty list");
    return out;
}

}  // namespace rljacobi::detail
