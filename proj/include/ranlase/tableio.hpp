#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ranlase {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Table cell: a value or the divergent sentinel (emitted as the literal
/// token `divergent` in CSV and null in JSON so plots cannot interpolate
/// through excluded points).
using Cell = std::optional<double>;

struct Table {
    std::vector<std::pair<std::string, std::string>> provenance;  // key, value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void meta(const std::string& key, const std::string& value) {
        provenance.emplace_back(key, value);
    }
    void meta(const std::string& key, double value);
};

std::string format_double(double v);  // shortest round-trip-safe decimal

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

/// Writes CSV or JSON depending on `format` ("csv" | "json"); throws IoError
/// on filesystem failure.
void write_table(const Table& t, const std::string& path, const std::string& format);

}  // namespace ranlase
