#include "bssk/csv.hpp"

#include "bssk/errors.hpp"

namespace bssk {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary) {
  if (!out_) throw ConfigError("cannot open " + path);
  std::string line;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) line += ',';
    line += field(header[i]);
  }
  out_ << line << "\r\n";
}

std::string CsvWriter::field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace bssk
