#ifndef SCENEFST_TEXT_UTIL_H_
#define SCENEFST_TEXT_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scenefst {

// Shortest representation that parses back to the identical double.
std::string FormatDouble(double value);

// Throw InputError (mentioning `what`) on malformed tokens.
double ParseDouble(std::string_view token, std::string_view what);
std::uint64_t ParseUnsigned(std::string_view token, std::string_view what);

std::vector<std::string_view> SplitTabs(std::string_view line);

}  // namespace scenefst

#endif  // SCENEFST_TEXT_UTIL_H_
