#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace patbitext::io {

namespace fs = std::filesystem;

// Reads a whole file. Names ending in ".gz" are decompressed transparently.
// Throws IoError naming the path.
std::string read_file(const fs::path& path);

// Writes `content`, creating parent directories. With `gzip` the bytes are
// gzip-compressed (the caller picks the file name).
void write_file(const fs::path& path, std::string_view content, bool gzip = false);

// Returns `path` or `path.gz`, whichever exists (plain preferred); empty path
// when neither exists.
fs::path resolve_maybe_gz(const fs::path& path);

// Regular files under `dir` (recursive), sorted by path for stable ordering.
std::vector<fs::path> list_files(const fs::path& dir);

// Splits on LF; a trailing CR is dropped from each line; a final empty
// segment after the last LF is not reported.
std::vector<std::string_view> split_lines(std::string_view content);

// iconv-based conversion to UTF-8 (e.g. from "SHIFT_JIS").
std::string transcode_to_utf8(std::string_view bytes, const std::string& from_encoding);

}  // namespace patbitext::io
