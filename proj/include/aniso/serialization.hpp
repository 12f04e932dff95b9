#pragma once

#include "aniso/anisotropy.hpp"
#include "aniso/surface.hpp"
#include "aniso/verify.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>
#include <string>

namespace aniso {

/// Malformed or inconsistent configuration. `field` is a JSON pointer to the
/// offending value ("" for the document root).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Strict reader over one JSON object: every key must be consumed, unknown
/// keys raise ConfigError at finish().
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& object, std::string path);

  bool has(const std::string& key) const;
  const nlohmann::json& raw(const std::string& key);
  std::string path_of(const std::string& key) const { return path_ + "/" + key; }
  const std::string& path() const { return path_; }

  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  int integer(const std::string& key);
  int integer(const std::string& key, int fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key);
  std::string string(const std::string& key, const std::string& fallback);
  Vec vector(const std::string& key, int size);
  std::vector<double> numbers(const std::string& key);

  void finish() const;

 private:
  const nlohmann::json& object_;
  std::string path_;
  std::set<std::string> used_;
};

AnisotropySpec anisotropy_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::ordered_json to_json(const AnisotropySpec& spec);

/// `n` comes from the anisotropy; vector fields must have n + 1 entries.
SurfaceSpec surface_from_json(const nlohmann::json& j, int n, const std::string& path = "");
nlohmann::ordered_json to_json(const SurfaceSpec& spec);

nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace aniso
