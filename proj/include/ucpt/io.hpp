#pragma once

#include <string>
#include <vector>

#include "ucpt/series.hpp"

namespace ucpt {

// A parsed CSV: 1 or 2 numeric columns, optional single header row
// (auto-detected by a non-numeric first row), '.' decimal separator.
struct InputTable {
    int columns = 0;
    std::vector<double> col1;
    std::vector<double> col2;
    bool had_header = false;

    Series to_series() const;
};

InputTable read_csv(const std::string& path);
InputTable parse_csv(const std::string& content, const std::string& name);

void write_file(const std::string& path, const std::string& content);

}  // namespace ucpt
