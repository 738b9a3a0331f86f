#pragma once

#include <string>
#include <string_view>

namespace revbench {

// Hex-encoded SHA-256 digest of the given bytes.
std::string sha256_hex(std::string_view data);

} // namespace revbench
