#ifndef RECOVERCAST_IO_HPP
#define RECOVERCAST_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace recovercast {

/// Writes `content` to a sibling temp file and renames it over `path`, so a
/// reader never observes a truncated file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace recovercast

#endif  // RECOVERCAST_IO_HPP
