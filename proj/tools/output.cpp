#include "output.hpp"

#include "mtw/error.hpp"
#include "mtw/io.hpp"

namespace mtw::cli {

TableFormat parse_table_format(const std::string& name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "json") return TableFormat::json;
    throw ValidationError(ValidationCode::invalid_argument, "unknown output format '" + name + "'");
}

nlohmann::json to_json(const MtwParams& p) {
    return {{"K", p.K}, {"delta", p.deltas}, {"mu", p.mu}, {"gbar", p.mean_snr}};
}

nlohmann::json to_json(const NumericPolicy& p) {
    return {{"quad_nodes_per_dim", p.quad_nodes_per_dim},
            {"series_kmax", p.series_kmax},
            {"series_rel_tol", p.series_rel_tol},
            {"max_integral_dim", p.max_integral_dim}};
}

void write_table(std::ostream& out, const nlohmann::json& meta, const Table& table, TableFormat format) {
    if (format == TableFormat::json) {
        nlohmann::json j{{"meta", meta}, {"columns", table.columns}, {"rows", table.rows}};
        out << j.dump(2) << '\n';
        return;
    }
    out << "# " << meta.dump() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

}  // namespace mtw::cli
