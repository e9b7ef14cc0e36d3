#include "bellquench/io.hpp"

#include <openssl/evp.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bellquench/error.hpp"

namespace bellquench::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

std::string sha256_hex(const std::string& content) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::Io, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

void CsvWriter::row(const std::string& first, const std::vector<double>& values) {
  text_ += first;
  for (double v : values) {
    text_ += ',';
    text_ += format_double(v);
  }
  text_ += '\n';
}

CsvTable parse_numeric_csv(const std::string& text, const std::string& source) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (table.header.empty()) {
      for (const auto& c : cells) table.header.push_back(trim(c));
      continue;
    }
    const std::string where = source + ": row " + std::to_string(lineno);
    if (cells.size() != table.header.size()) {
      fail(ErrorKind::Parse, where + ": expected " + std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      const std::string t = trim(c);
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(t.c_str(), &end);
      if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        fail(ErrorKind::Parse, where + ": '" + t + "' is not a number");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) fail(ErrorKind::Parse, source + ": empty file");
  return table;
}

}  // namespace bellquench::io
