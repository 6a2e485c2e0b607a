#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace flskit {

/// Writes bytes to path via a temporary file in the same directory followed
/// by an atomic rename, so a failed run never leaves a partial file behind.
/// Throws IoError.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes);

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text);

/// Whole-file read. Throws IoError when the file cannot be opened or read.
std::string read_file(const std::filesystem::path& path);

} // namespace flskit
