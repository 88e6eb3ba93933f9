#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace glesim {

// 17 significant digits round-trips IEEE doubles exactly.
std::string format_g17(double v);

class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

private:
  std::ofstream out_;
};

} // namespace glesim
