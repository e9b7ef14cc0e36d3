#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bellquench::io {

// 17 significant digits: round-trips any double.
std::string format_double(double x);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string sha256_hex(const std::string& content);

// Comma-separated, header row, LF endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::string& first, const std::vector<double>& values);
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Numeric table with one header line; errors name the offending line.
CsvTable parse_numeric_csv(const std::string& text, const std::string& source);

}  // namespace bellquench::io
