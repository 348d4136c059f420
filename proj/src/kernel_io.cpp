#include "mixhit/kernel_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "mixhit/errors.hpp"

namespace mixhit {

nlohmann::json kernel_to_json(const FiniteKernel& kernel) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < kernel.size(); ++i) rows.push_back(kernel.row(i));
    return {{"labels", kernel.labels()}, {"matrix", std::move(rows)}};
}

FiniteKernel kernel_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("matrix")) throw ParseError("kernel JSON: missing \"matrix\"");
    std::vector<std::vector<double>> rows;
    try {
        rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("kernel JSON: bad matrix: ") + e.what());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        try {
            labels = j.at("labels").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("kernel JSON: bad labels: ") + e.what());
        }
    }
    return FiniteKernel::from_rows(rows, std::move(labels));
}

void write_kernel_text(std::ostream& os, const FiniteKernel& kernel) {
    const auto old_precision = os.precision(17);
    os << kernel.size() << '\n';
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            if (j) os << ' ';
            os << kernel(i, j);
        }
        os << '\n';
    }
    os.precision(old_precision);
}

FiniteKernel read_kernel_text(std::istream& is) {
    long long n = 0;
    if (!(is >> n) || n <= 0) throw ParseError("kernel text: expected a positive state count on the first line");
    const auto size = static_cast<std::size_t>(n);
    std::vector<std::vector<double>> rows(size, std::vector<double>(size));
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            if (!(is >> rows[i][j])) {
                std::ostringstream os;
                os << "kernel text: missing or malformed entry at row " << i << ", column " << j;
                throw ParseError(os.str());
            }
        }
    }
    std::string extra;
    if (is >> extra) throw ParseError("kernel text: trailing data after " + std::to_string(n) + " rows");
    return FiniteKernel::from_rows(rows);
}

FiniteKernel load_kernel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open kernel file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return kernel_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("kernel JSON: ") + e.what());
        }
    }
    std::istringstream is(text);
    return read_kernel_text(is);
}

void save_kernel(const std::filesystem::path& path, const FiniteKernel& kernel) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write kernel file " + path.string());
    if (path.extension() == ".json") {
        out << kernel_to_json(kernel).dump(2) << '\n';
    } else {
        write_kernel_text(out, kernel);
    }
}

}  // namespace mixhit
