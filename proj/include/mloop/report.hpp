#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mloop {

/// Deterministic command report: TSV for humans and diffing, JSON twin for
/// scripting. Result tables carry no timestamps; identical configs yield
/// byte-identical files.
class Report {
public:
  explicit Report(std::string command);

  void set_config_echo(nlohmann::ordered_json echo) { config_ = std::move(echo); }

  void add_table(const std::string &name, std::vector<std::string> header,
                 std::vector<std::vector<std::string>> rows);
  void add_check(const std::string &name, bool pass, const std::string &detail = "");
  void set_verdict(const std::string &verdict) { verdict_ = verdict; }

  bool all_passed() const;
  size_t check_count() const { return checks_.size(); }

  std::string tsv() const;
  nlohmann::ordered_json json() const;

  /// Writes <out_dir>/<command>.tsv and .json; creates the directory.
  void write(const std::string &out_dir) const;

private:
  struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
  };
  struct Check {
    std::string name;
    bool pass;
    std::string detail;
  };

  std::string command_;
  nlohmann::ordered_json config_;
  std::vector<Table> tables_;
  std::vector<Check> checks_;
  std::string verdict_;
};

/// Version string embedded in every report.
const char *version_string();

} // namespace mloop
