#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace archetypal::cli {

// Flat key = value settings. Lines starting with '#' are comments; list
// values are comma separated. Later assignments overwrite earlier ones.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<std::uint64_t> get_u64s(const std::string& key,
                                      const std::vector<std::uint64_t>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Accepts "inf" / "infinity" as +infinity.
double parse_double(const std::string& text, const std::string& key);

}  // namespace archetypal::cli
