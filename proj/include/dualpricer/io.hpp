#pragma once

#include <string>
#include <vector>

namespace dp::io {

/// Writes `content` to `path` atomically: the data lands in a sibling
/// temporary file first and is renamed into place, so readers never observe
/// a partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

/// Minimal CSV reader for the dialect this repository writes: comma
/// separator, LF line endings, no quoting, first row is the header.
/// Returns every row (header included) as a vector of fields.
std::vector<std::vector<std::string>> read_csv(const std::string& content);

}  // namespace dp::io
