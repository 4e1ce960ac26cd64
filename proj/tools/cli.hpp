#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace folia::cli {

// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Applies FOLIA_MAX_MEM (bytes, optional K/M/G suffix) as a soft address-space
// limit. Returns false and explains on `err` when the value is malformed.
bool apply_memory_cap(const char* value, std::ostream& err);

}  // namespace folia::cli
