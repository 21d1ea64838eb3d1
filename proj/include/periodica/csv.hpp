#pragma once

#include <istream>
#include <string>
#include <vector>

namespace periodica::csv {

// Plain comma-separated values: no quoting, no embedded commas or newlines.
// Empty cells are preserved as empty strings, blank lines are skipped.
// CRLF is tolerated on input; emission uses '\n' and no trailing separator.
std::vector<std::vector<std::string>> read(std::istream& in);
std::string write(const std::vector<std::vector<std::string>>& rows);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);
// Strict double parse of a whole cell; returns false on any trailing junk.
bool parse_double(const std::string& cell, double& out);
bool parse_int(const std::string& cell, long long& out);

}  // namespace periodica::csv
