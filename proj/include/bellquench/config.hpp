#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace bellquench {

enum class ValueType { Int, Real, Bool, Text, RealList, Choice };

struct KeySpec {
  std::string key;
  ValueType type = ValueType::Real;
  std::string default_value;  // empty: required unless `optional`
  std::string help;
  std::vector<std::string> choices;
  bool echo = true;  // included in the manifest config echo
  bool optional = false;
};

inline constexpr const char* kOutputDirEnv = "BELLQUENCH_OUTPUT_DIR";

// Typed key-value configuration. Precedence, lowest first: schema default,
// config file, environment (output directory only), command-line flag.
class RunConfig {
 public:
  using Value = std::variant<long, double, bool, std::string, std::vector<double>>;

  RunConfig(std::string command, std::vector<KeySpec> schema);

  // Lines of `key = value`; '#' starts a comment.
  void load_text(const std::string& text, const std::string& source);
  void load_file(const std::string& path);
  void apply_environment();
  void set(const std::string& key, const std::string& value, const std::string& origin);

  // Parses every value; errors name where the value came from.
  void finalize();

  long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  const std::string& get_text(const std::string& key) const;
  const std::vector<double>& get_list(const std::string& key) const;
  bool provided(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& command() const { return command_; }
  const std::vector<KeySpec>& schema() const { return schema_; }
  nlohmann::json echo() const;

 private:
  struct Raw {
    std::string text;
    std::string origin;
  };

  const KeySpec& spec(const std::string& key, const std::string& origin) const;
  const Value& value(const std::string& key) const;

  std::string command_;
  std::vector<KeySpec> schema_;
  std::map<std::string, Raw> raw_;
  std::map<std::string, Value> values_;
};

}  // namespace bellquench
