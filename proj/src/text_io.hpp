#pragma once

#include <filesystem>
#include <string>

namespace ajam::detail {

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// printf-style %.6g.
std::string fmt6(double v);

}  // namespace ajam::detail
