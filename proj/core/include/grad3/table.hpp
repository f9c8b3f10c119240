#ifndef GRAD3_TABLE_HPP
#define GRAD3_TABLE_HPP

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace grad3 {

/** One output cell: a double (serialized with 17 significant digits in CSV,
 *  round-trip exact) or a plain string. */
using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/** %.17g formatting; round-trips doubles exactly. */
std::string format_double(double v);

std::string to_csv(const Table& table);

/** Array of row objects keyed by column name, matching the CSV schema. */
std::string to_json_rows(const Table& table);

/** Write-to-temp-then-rename so readers never see a partial file. */
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace grad3

#endif
