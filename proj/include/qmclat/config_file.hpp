#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace qmclat {

// Minimal key-value configuration with one level of named tables:
//
//   field {
//     a0 = 1.0
//     theta = 2.0
//   }
//
// '#' starts a comment. Values are kept verbatim; typed access converts on
// demand and reports the full key path on failure.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& table, const std::string& key) const;
  std::string get_string(const std::string& table, const std::string& key) const;
  std::string get_string(const std::string& table, const std::string& key,
                         const std::string& fallback) const;
  double get_number(const std::string& table, const std::string& key) const;
  double get_number(const std::string& table, const std::string& key, double fallback) const;
  long get_integer(const std::string& table, const std::string& key) const;
  long get_integer(const std::string& table, const std::string& key, long fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> tables_;
};

}  // namespace qmclat
