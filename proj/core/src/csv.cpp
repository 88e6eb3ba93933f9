#include "glesim/csv.hpp"

#include <cinttypes>
#include <cstdio>

#include "glesim/errors.hpp"

namespace glesim {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  require(out_.good(), ErrorKind::io, "cannot open for writing: " + path);
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ",";
    out_ << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format_g17(values[i]);
  }
  out_ << "\n";
}

} // namespace glesim
