#pragma once

#include <string>

namespace wvtinfo {

// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace wvtinfo
