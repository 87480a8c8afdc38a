#include "qmclat/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmclat {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
  ConfigFile cfg;
  std::string line, table;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.back() == '{') {
      if (!table.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": nested tables are not supported");
      table = trim(line.substr(0, line.size() - 1));
      if (table.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": table without a name");
      continue;
    }
    if (line == "}") {
      if (table.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unmatched closing brace");
      table.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || table.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value' inside a table");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    cfg.tables_[table][key] = value;
  }
  if (!table.empty()) throw std::invalid_argument("config: unterminated table '" + table + "'");
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file " + path);
  return parse(in);
}

bool ConfigFile::has(const std::string& table, const std::string& key) const {
  const auto t = tables_.find(table);
  return t != tables_.end() && t->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& table, const std::string& key) const {
  const auto t = tables_.find(table);
  if (t == tables_.end() || t->second.find(key) == t->second.end())
    throw std::invalid_argument("config: missing " + table + "." + key);
  return t->second.at(key);
}

std::string ConfigFile::get_string(const std::string& table, const std::string& key,
                                   const std::string& fallback) const {
  return has(table, key) ? get_string(table, key) : fallback;
}

double ConfigFile::get_number(const std::string& table, const std::string& key) const {
  const std::string raw = get_string(table, key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size())
    throw std::invalid_argument("config: " + table + "." + key + " = '" + raw +
                                "' is not a number");
  return v;
}

double ConfigFile::get_number(const std::string& table, const std::string& key,
                              double fallback) const {
  return has(table, key) ? get_number(table, key) : fallback;
}

long ConfigFile::get_integer(const std::string& table, const std::string& key) const {
  const std::string raw = get_string(table, key);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size())
    throw std::invalid_argument("config: " + table + "." + key + " = '" + raw +
                                "' is not an integer");
  return v;
}

long ConfigFile::get_integer(const std::string& table, const std::string& key,
                             long fallback) const {
  return has(table, key) ? get_integer(table, key) : fallback;
}

}  // namespace qmclat
