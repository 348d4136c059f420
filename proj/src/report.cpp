#include "mixhit/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mixhit/errors.hpp"

namespace mixhit {

const std::vector<std::string> kEquivalenceColumns = {"chain_id", "n",     "alpha",       "t_m",
                                                      "t_bar_m",  "t_L",   "t_H",         "tau_g",
                                                      "ratio",    "maxlarge_ok", "certificate_ok"};

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

void ResultTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) throw DimensionMismatch("table " + name + ": row width does not match columns");
    rows.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string ResultTable::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
        os << "\n";
    }
    return os.str();
}

nlohmann::json ResultTable::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["columns"] = columns;
    j["rows"] = rows;
    return j;
}

ResultTable ResultTable::from_json(const nlohmann::json& j) {
    ResultTable t;
    try {
        t.name = j.at("name").get<std::string>();
        t.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& r : j.at("rows")) t.add_row(r.get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("result table: ") + e.what());
    }
    return t;
}

ResultTable ResultTable::from_csv(const std::string& name, const std::string& text) {
    ResultTable t;
    t.name = name;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            t.columns = csv_split(line);
            header = false;
        } else {
            t.add_row(csv_split(line));
        }
    }
    return t;
}

std::string PlotData::to_csv() const {
    std::ostringstream os;
    os << "x,y,series\n";
    for (const auto& [x, y, s] : points) os << csv_escape(x) << "," << csv_escape(y) << "," << csv_escape(s) << "\n";
    return os.str();
}

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    if (s == "plotdata") return ReportFormat::plotdata;
    throw InvalidArgument("unknown report format '" + s + "' (csv|json|plotdata)");
}

std::vector<std::string> equivalence_row(const std::string& chain_id, const EquivalenceReport& r) {
    auto opt = [](const MixingResult& m) { return m.unmixed() ? std::string("unmixed") : std::to_string(m.value()); };
    return {chain_id,
            std::to_string(r.n),
            format_number(r.alpha),
            opt(r.t_m),
            opt(r.t_bar_m),
            opt(r.t_L),
            format_number(r.t_H),
            std::to_string(r.tau_g),
            r.ratio ? format_number(*r.ratio) : std::string("undefined"),
            format_bool(r.maxlarge_ok),
            format_bool(r.certificate.passed)};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw Error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

PlotData ratio_vs_n_plot(const ResultTable& eq) {
    PlotData p;
    p.name = "ratio_vs_n";
    std::size_t id = 0, n = 0, ratio = 0, alpha = 0;
    for (std::size_t i = 0; i < eq.columns.size(); ++i) {
        if (eq.columns[i] == "chain_id") id = i;
        if (eq.columns[i] == "n") n = i;
        if (eq.columns[i] == "ratio") ratio = i;
        if (eq.columns[i] == "alpha") alpha = i;
    }
    std::vector<std::tuple<double, std::string, std::string, std::string>> pts;
    for (const auto& r : eq.rows) {
        const auto paren = r[id].find('(');
        const std::string family = r[id].substr(0, paren);
        pts.emplace_back(std::stod(r[n]), r[n], r[ratio], family + " alpha=" + r[alpha]);
    }
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (std::get<3>(a) != std::get<3>(b)) return std::get<3>(a) < std::get<3>(b);
        return std::get<0>(a) < std::get<0>(b);
    });
    for (const auto& [key, x, y, s] : pts) p.points.emplace_back(x, y, s);
    return p;
}

std::vector<std::filesystem::path> emit_report(const std::vector<ResultTable>& tables, ReportFormat format,
                                               const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& t : tables) {
        switch (format) {
            case ReportFormat::csv: {
                const auto path = dir / (t.name + ".csv");
                write_text_file(path, t.to_csv());
                written.push_back(path);
                break;
            }
            case ReportFormat::json: {
                const auto path = dir / (t.name + ".json");
                write_text_file(path, t.to_json().dump(2) + "\n");
                written.push_back(path);
                break;
            }
            case ReportFormat::plotdata: {
                if (t.name != "equivalence_sweep") break;
                const auto plot = ratio_vs_n_plot(t);
                const auto path = dir / (plot.name + ".plot.csv");
                write_text_file(path, plot.to_csv());
                written.push_back(path);
                break;
            }
        }
    }
    return written;
}

}  // namespace mixhit
