#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace dicke {

// Shortest round-trippable decimal form of a double (17 significant
// digits), '.' decimal separator regardless of locale.
std::string format_number(double value);

// Comma-separated writer with a mandatory header row and UNIX newlines.
// Rows are written eagerly; numbers go through format_number so reruns of a
// deterministic computation produce byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  // Out-of-band marker (e.g. a failure notice); written as a '#' line so
  // column-oriented readers can skip it.
  void comment(const std::string& text);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace dicke
