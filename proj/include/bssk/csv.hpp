#pragma once

#include <fmt/format.h>

#include <fstream>
#include <string>
#include <type_traits>
#include <vector>

namespace bssk {

// RFC-4180 writer; floating values with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  template <class... Ts>
  void row(const Ts&... xs) {
    std::string line;
    bool first = true;
    ((append(line, xs, first)), ...);
    line += "\r\n";
    out_ << line;
  }

  // Pre-formatted line without the terminator.
  void raw(const std::string& line) { out_ << line << "\r\n"; }

  static std::string field(double x) { return fmt::format("{:.17g}", x); }
  static std::string field(const std::string& s);

 private:
  template <class T>
  static void append(std::string& line, const T& x, bool& first) {
    if (!first) line += ',';
    first = false;
    if constexpr (std::is_floating_point_v<T>)
      line += field(static_cast<double>(x));
    else if constexpr (std::is_integral_v<T>)
      line += fmt::format("{}", x);
    else
      line += field(std::string(x));
  }

  std::ofstream out_;
};

}  // namespace bssk
