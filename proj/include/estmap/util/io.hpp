#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace estmap::io {

/// Whole file as bytes; throws InputError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it over `path`, so
/// readers only ever observe the old or the new content. Parent directories
/// are created as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace estmap::io
