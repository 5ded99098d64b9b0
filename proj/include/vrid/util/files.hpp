#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace vrid {

/// Writes `contents` to `path` via a sibling temporary file and rename, so
/// readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace vrid
