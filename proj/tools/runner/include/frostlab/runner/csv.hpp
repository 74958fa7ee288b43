#pragma once

#include <string>
#include <variant>
#include <vector>

namespace frostlab::runner {

/// In-memory CSV table. Reals are written with %.17g so files round-trip
/// and repeated runs compare byte for byte.
class CsvTable {
public:
    using Cell = std::variant<double, long long, std::string>;

    CsvTable(std::string name, std::vector<std::string> header);

    void add(std::vector<Cell> row);

    const std::string& name() const { return name_; }
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::string name_;
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double v);

}  // namespace frostlab::runner
