#include "bbnet/keyval.hpp"

#include <fstream>
#include <sstream>

#include "bbnet/errors.hpp"

namespace bbnet {

namespace {

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues KeyValues::parse_string(const std::string& text, const std::string& name) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw config_error(name + ":" + std::to_string(line_no) + ": unterminated section header");
      }
      section = strip(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw config_error(name + ":" + std::to_string(line_no) + ": empty section name");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error(name + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) {
      throw config_error(name + ":" + std::to_string(line_no) + ": empty key");
    }
    kv.items_[section.empty() ? key : section + "." + key] = value;
  }
  return kv;
}

KeyValues KeyValues::parse_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw config_error("cannot open config file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), file.string());
}

bool KeyValues::has(const std::string& key) const { return items_.count(key) > 0; }

std::optional<std::string> KeyValues::get(const std::string& key) const {
  auto it = items_.find(key);
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValues::get_or(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

std::int64_t KeyValues::get_int(const std::string& key, std::int64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    return std::stoll(*v);
  } catch (...) {
    throw config_error("config key " + key + " is not an integer: " + *v);
  }
}

std::uint64_t KeyValues::get_uint(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    if (!v->empty() && v->front() == '-') throw config_error("");
    return std::stoull(*v);
  } catch (...) {
    throw config_error("config key " + key + " is not a non-negative integer: " + *v);
  }
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    return std::stod(*v);
  } catch (...) {
    throw config_error("config key " + key + " is not a number: " + *v);
  }
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw config_error("config key " + key + " is not a boolean: " + *v);
}

void KeyValues::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw config_error("override must look like section.key=value: " + assignment);
  }
  items_[strip(assignment.substr(0, eq))] = strip(assignment.substr(eq + 1));
}

std::string KeyValues::to_string() const {
  std::string out;
  // Bare keys first; a sectionless key after a header would change meaning.
  for (const auto& [key, value] : items_) {
    if (key.find('.') == std::string::npos) out += key + " = " + value + "\n";
  }
  std::string section;
  for (const auto& [key, value] : items_) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!out.empty()) out += "\n";
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += key.substr(dot + 1) + " = " + value + "\n";
  }
  return out;
}

}  // namespace bbnet
