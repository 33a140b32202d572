#include "ucpt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ucpt {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(t, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == t.size();
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(',', pos);
        if (next == std::string::npos) {
            cells.push_back(line.substr(pos));
            break;
        }
        cells.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return cells;
}

}  // namespace

InputTable parse_csv(const std::string& content, const std::string& name) {
    InputTable table;
    std::istringstream is(content);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            if (is.peek() == EOF) break;  // trailing newline
            throw DataError(name + ":" + std::to_string(lineno) + ": empty line");
        }
        const auto cells = split_cells(stripped);
        if (cells.size() > 2) {
            throw DataError(name + ":" + std::to_string(lineno) +
                            ": expected 1 or 2 columns, got " +
                            std::to_string(cells.size()));
        }
        std::vector<double> values(cells.size());
        bool numeric = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            numeric = numeric && parse_number(cells[c], values[c]);
        }
        if (!numeric) {
            // a non-numeric first row is treated as a header
            if (lineno == 1 && table.col1.empty()) {
                table.had_header = true;
                table.columns = static_cast<int>(cells.size());
                continue;
            }
            throw DataError(name + ":" + std::to_string(lineno) +
                            ": cannot parse value");
        }
        for (double v : values) {
            if (!std::isfinite(v)) {
                throw DataError(name + ":" + std::to_string(lineno) +
                                ": non-finite value");
            }
        }
        if (table.columns == 0) table.columns = static_cast<int>(cells.size());
        if (static_cast<int>(cells.size()) != table.columns) {
            throw DataError(name + ":" + std::to_string(lineno) +
                            ": ragged row (expected " + std::to_string(table.columns) +
                            " columns)");
        }
        table.col1.push_back(values[0]);
        if (table.columns == 2) table.col2.push_back(values[1]);
    }
    if (table.col1.empty()) throw DataError(name + ": no observations");
    return table;
}

InputTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_csv(os.str(), path);
}

Series InputTable::to_series() const {
    return columns == 2 ? Series::bivariate(col1, col2) : Series::univariate(col1);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << content;
}

}  // namespace ucpt
