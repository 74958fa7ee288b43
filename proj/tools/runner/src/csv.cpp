#include "frostlab/runner/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace frostlab::runner {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::string name, std::vector<std::string> header)
    : name_(std::move(name)), header_(std::move(header)) {}

void CsvTable::add(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch in " + name_);
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) out += format_real(v);
                    else if constexpr (std::is_same_v<T, long long>) out += std::to_string(v);
                    else out += v;
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace frostlab::runner
