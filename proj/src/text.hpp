#pragma once

#include <string_view>
#include <vector>

namespace xorcodes::detail {

/// Splits on '\n'. A single trailing newline does not produce an empty last line.
inline std::vector<std::string_view> split_lines(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

} // namespace xorcodes::detail
