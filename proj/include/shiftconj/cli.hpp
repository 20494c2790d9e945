#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftconj {

constexpr int kJsonSchemaVersion = 1;

// args excludes the program name. Exit codes: 0 result computed, 1 invalid
// input, 2 limit reached.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftconj
