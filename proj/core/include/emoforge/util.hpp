#pragma once

#include <string>

namespace emoforge {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// fixed-width decimal formatting so emitted CSVs are byte-stable
std::string format_double(double value, int precision = 6);

std::string iso_utc_now();

}  // namespace emoforge
