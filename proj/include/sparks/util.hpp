#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sparks {

std::string read_file(const std::string& path);

// Writes via a temp file in the same directory plus rename, so partially
// written artifacts are never observable under the final name.
void atomic_write_file(const std::string& path, const std::string& content);

std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split_on(std::string_view s, char sep);
std::string_view trim(std::string_view s);

bool is_ident(std::string_view s);
bool parse_int(std::string_view s, long long& out);

} // namespace sparks
