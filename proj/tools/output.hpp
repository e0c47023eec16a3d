#ifndef MTW_TOOLS_OUTPUT_HPP
#define MTW_TOOLS_OUTPUT_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtw/params.hpp"

namespace mtw::cli {

enum class TableFormat { csv, json };

TableFormat parse_table_format(const std::string& name);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

nlohmann::json to_json(const MtwParams& params);
nlohmann::json to_json(const NumericPolicy& policy);

/// CSV: a "# {json}" metadata row, a header row, then data rows with 17
/// significant digits. JSON: {"meta": ..., "columns": [...], "rows": [...]}.
void write_table(std::ostream& out, const nlohmann::json& meta, const Table& table, TableFormat format);

}  // namespace mtw::cli

#endif
