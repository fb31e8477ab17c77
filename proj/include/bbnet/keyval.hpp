#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bbnet {

// Sectioned key/value config text:
//   [section]
//   key = value        # comment
// Keys are addressed as "section.key"; keys before any section header live
// at the top level under their bare name.
class KeyValues {
 public:
  static KeyValues parse_file(const std::filesystem::path& file);
  static KeyValues parse_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // "section.key=value"; overrides win over file content.
  void apply_override(const std::string& assignment);

  const std::map<std::string, std::string>& items() const { return items_; }

  // Canonical text form, sections sorted, for provenance echoes.
  std::string to_string() const;

 private:
  std::map<std::string, std::string> items_;
};

}  // namespace bbnet
