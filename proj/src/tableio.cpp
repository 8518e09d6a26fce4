#include "ranlase/tableio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ranlase/errors.hpp"

namespace ranlase {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    // shortest representation that round-trips
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    return buf;
}

void Table::meta(const std::string& key, double value) {
    provenance.emplace_back(key, format_double(value));
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (const auto& [k, v] : t.provenance) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ",";
        os << t.columns[i];
    }
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << (row[i] ? format_double(*row[i]) : std::string("divergent"));
        }
        os << "\n";
    }
    return os.str();
}

std::string to_json(const Table& t) {
    // mirrors the CSV one-to-one; emitted by hand to keep key order and
    // number formatting byte-stable
    std::ostringstream os;
    os << "{\n  \"provenance\": {";
    for (std::size_t i = 0; i < t.provenance.size(); ++i) {
        if (i) os << ",";
        os << "\n    \"" << t.provenance[i].first << "\": \"" << t.provenance[i].second << "\"";
    }
    os << "\n  },\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << t.columns[i] << "\"";
    }
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) os << ",";
        os << "\n    [";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) os << ", ";
            os << (t.rows[r][i] ? format_double(*t.rows[r][i]) : std::string("null"));
        }
        os << "]";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

void write_table(const Table& t, const std::string& path, const std::string& format) {
    std::string body;
    if (format == "csv")
        body = to_csv(t);
    else if (format == "json")
        body = to_json(t);
    else
        throw DomainError("write_table: format must be csv or json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << body;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace ranlase
