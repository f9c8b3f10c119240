#include "grad3/table.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "grad3/errors.hpp"

namespace grad3 {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw Error("table row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            if (const double* d = std::get_if<double>(&row[c]))
                out += format_double(*d);
            else
                out += std::get<std::string>(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json_rows(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const double* d = std::get_if<double>(&row[c]))
                obj[table.columns[c]] = *d;
            else
                obj[table.columns[c]] = std::get<std::string>(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out) throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace grad3
