#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace ito {

// Shortest text that round-trips the double exactly ("%.17g"), so output
// files are bit-reproducible across runs of the same build.
std::string format_double(double v);

// Minimal CSV emitter: header row once, then numeric rows, every field
// printed with format_double. Files always end with a trailing newline.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void header(std::span<const std::string> columns);
  void row(std::span<const double> values);
  // Leading text field (e.g. a name) followed by numeric fields.
  void labeled_row(const std::string& label, std::span<const double> values);
  // Row of raw text fields (used by the summary file's pass flags).
  void text_row(std::span<const std::string> fields);

 private:
  std::ofstream out_;
};

}  // namespace ito
