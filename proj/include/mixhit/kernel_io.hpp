#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mixhit/finite_kernel.hpp"

namespace mixhit {

// {"labels": [...], "matrix": [[...], ...]}
nlohmann::json kernel_to_json(const FiniteKernel& kernel);
FiniteKernel kernel_from_json(const nlohmann::json& j);

// Plain text: first line n, then n whitespace-delimited rows. Values are
// written with 17 significant digits.
void write_kernel_text(std::ostream& os, const FiniteKernel& kernel);
FiniteKernel read_kernel_text(std::istream& is);

// Picks the format from the first non-blank character ('{' means JSON).
FiniteKernel load_kernel(const std::filesystem::path& path);
void save_kernel(const std::filesystem::path& path, const FiniteKernel& kernel);

}  // namespace mixhit
