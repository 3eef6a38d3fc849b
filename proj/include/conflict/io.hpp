#pragma once

#include <map>
#include <string>

namespace conflict::io {

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partially written file.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Fixed 6-decimal formatting with '.' regardless of locale.
std::string fixed6(double v);

/// Flat key=value file: one pair per line, '#' comments, blank lines
/// ignored, whitespace around tokens trimmed.
std::map<std::string, std::string> read_key_values(const std::string& path);

}  // namespace conflict::io
