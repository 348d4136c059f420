#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixhit/times.hpp"

namespace mixhit {

// A table of string cells with a fixed column order. Numbers are formatted
// once, when the row is added, so every emitter sees identical text.
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_csv() const;
    nlohmann::json to_json() const;
    static ResultTable from_json(const nlohmann::json& j);
    static ResultTable from_csv(const std::string& name, const std::string& text);
};

// (x, y, series) triples for external plotting.
struct PlotData {
    std::string name;
    std::vector<std::tuple<std::string, std::string, std::string>> points;
    std::string to_csv() const;
};

enum class ReportFormat { csv, json, plotdata };
ReportFormat parse_report_format(const std::string& s);

std::string format_number(double x);
std::string format_bool(bool b);

extern const std::vector<std::string> kEquivalenceColumns;

// One row per (chain, alpha) in the column order of kEquivalenceColumns.
std::vector<std::string> equivalence_row(const std::string& chain_id, const EquivalenceReport& r);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// Writes `tables` into `dir` in the requested format; returns the files written.
// plotdata is produced only for tables that have a registered plot view.
std::vector<std::filesystem::path> emit_report(const std::vector<ResultTable>& tables, ReportFormat format,
                                               const std::filesystem::path& dir);

// ratio against n for each chain family in an equivalence table
PlotData ratio_vs_n_plot(const ResultTable& equivalence);

}  // namespace mixhit
