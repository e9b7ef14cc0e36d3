#include "bellquench/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bellquench/error.hpp"
#include "bellquench/io.hpp"

namespace bellquench {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(const std::string& origin, const std::string& what) {
  fail(ErrorKind::Config, origin + ": " + what);
}

double parse_real(const std::string& text, const std::string& origin, const std::string& key) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    config_error(origin, "'" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

long parse_int(const std::string& text, const std::string& origin, const std::string& key) {
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    config_error(origin, "'" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

RunConfig::RunConfig(std::string command, std::vector<KeySpec> schema)
    : command_(std::move(command)), schema_(std::move(schema)) {}

const KeySpec& RunConfig::spec(const std::string& key, const std::string& origin) const {
  for (const auto& s : schema_) {
    if (s.key == key) return s;
  }
  config_error(origin, "unknown key '" + key + "' for command '" + command_ + "'");
}

void RunConfig::load_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string origin = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) config_error(origin, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string val = trim(body.substr(eq + 1));
    if (key.empty()) config_error(origin, "missing key before '='");
    if (seen.count(key)) {
      config_error(origin, "duplicate key '" + key + "' (first set on line " + std::to_string(seen[key]) + ")");
    }
    seen[key] = lineno;
    set(key, val, origin);
  }
}

void RunConfig::load_file(const std::string& path) {
  std::string text;
  try {
    text = io::read_text_file(path);
  } catch (const Error&) {
    config_error(path, "cannot read config file");
  }
  load_text(text, path);
}

void RunConfig::apply_environment() {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    for (const auto& s : schema_) {
      if (s.key == "output") set("output", dir, std::string("environment ") + kOutputDirEnv);
    }
  }
}

void RunConfig::set(const std::string& key, const std::string& value, const std::string& origin) {
  spec(key, origin);
  raw_[key] = {value, origin};
}

void RunConfig::finalize() {
  values_.clear();
  for (const auto& s : schema_) {
    std::string text = s.default_value;
    std::string origin = "default";
    if (auto it = raw_.find(s.key); it != raw_.end()) {
      text = it->second.text;
      origin = it->second.origin;
    }
    if (text.empty()) {
      if (s.optional) continue;
      config_error(origin == "default" ? "command '" + command_ + "'" : origin,
                   "missing value for required key '" + s.key + "'");
    }
    switch (s.type) {
      case ValueType::Int:
        values_[s.key] = parse_int(text, origin, s.key);
        break;
      case ValueType::Real:
        values_[s.key] = parse_real(text, origin, s.key);
        break;
      case ValueType::Bool:
        if (text == "true" || text == "1") {
          values_[s.key] = true;
        } else if (text == "false" || text == "0") {
          values_[s.key] = false;
        } else {
          config_error(origin, "'" + s.key + "' expects true or false, got '" + text + "'");
        }
        break;
      case ValueType::Text:
        values_[s.key] = text;
        break;
      case ValueType::Choice:
        if (std::find(s.choices.begin(), s.choices.end(), text) == s.choices.end()) {
          std::string allowed;
          for (const auto& c : s.choices) allowed += (allowed.empty() ? "" : ", ") + c;
          config_error(origin, "'" + s.key + "' must be one of {" + allowed + "}, got '" + text + "'");
        }
        values_[s.key] = text;
        break;
      case ValueType::RealList: {
        std::vector<double> list;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) list.push_back(parse_real(trim(item), origin, s.key));
        if (list.empty()) config_error(origin, "'" + s.key + "' expects a comma-separated list");
        values_[s.key] = list;
        break;
      }
    }
  }
}

const RunConfig::Value& RunConfig::value(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) fail(ErrorKind::Config, "configuration key '" + key + "' is not available");
  return it->second;
}

long RunConfig::get_int(const std::string& key) const { return std::get<long>(value(key)); }
double RunConfig::get_real(const std::string& key) const { return std::get<double>(value(key)); }
bool RunConfig::get_bool(const std::string& key) const { return std::get<bool>(value(key)); }
const std::string& RunConfig::get_text(const std::string& key) const { return std::get<std::string>(value(key)); }
const std::vector<double>& RunConfig::get_list(const std::string& key) const {
  return std::get<std::vector<double>>(value(key));
}
bool RunConfig::provided(const std::string& key) const { return raw_.count(key) != 0; }

nlohmann::json RunConfig::echo() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& s : schema_) {
    if (!s.echo || !has(s.key)) continue;
    std::visit([&](const auto& v) { j[s.key] = v; }, value(s.key));
  }
  return j;
}

}  // namespace bellquench
