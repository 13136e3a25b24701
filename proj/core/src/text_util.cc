#include "scenefst/text_util.h"

#include <charconv>
#include <cmath>

#include "scenefst/errors.h"

namespace scenefst {

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double ParseDouble(std::string_view token, std::string_view what) {
  if (token == "inf") return INFINITY;
  double value = 0.0;
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw InputError(std::string(what) + ": cannot parse number '" + std::string(token) + "'");
  }
  return value;
}

std::uint64_t ParseUnsigned(std::string_view token, std::string_view what) {
  std::uint64_t value = 0;
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw InputError(std::string(what) + ": cannot parse integer '" + std::string(token) +
                     "'");
  }
  return value;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    fields.push_back(line.substr(begin, tab == std::string_view::npos ? tab : tab - begin));
    if (tab == std::string_view::npos) break;
    begin = tab + 1;
  }
  return fields;
}

}  // namespace scenefst
