#include "mloop/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

const char *version_string() { return "mloop 0.1.0"; }

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::add_table(const std::string &name, std::vector<std::string> header,
                       std::vector<std::vector<std::string>> rows) {
  tables_.push_back(Table{name, std::move(header), std::move(rows)});
}

void Report::add_check(const std::string &name, bool pass, const std::string &detail) {
  checks_.push_back(Check{name, pass, detail});
}

bool Report::all_passed() const {
  for (const auto &c : checks_)
    if (!c.pass)
      return false;
  return true;
}

std::string Report::tsv() const {
  std::ostringstream out;
  out << "# command: " << command_ << "\n";
  out << "# version: " << version_string() << "\n";
  if (!config_.is_null())
    out << "# config: " << config_.dump() << "\n";
  for (const auto &t : tables_) {
    out << "# table: " << t.name << "\n";
    for (size_t i = 0; i < t.header.size(); ++i)
      out << (i ? "\t" : "") << t.header[i];
    out << "\n";
    for (const auto &row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i)
        out << (i ? "\t" : "") << row[i];
      out << "\n";
    }
  }
  if (!checks_.empty()) {
    out << "# table: checks\n";
    out << "check\tresult\tdetail\n";
    for (const auto &c : checks_)
      out << c.name << "\t" << (c.pass ? "PASS" : "FAIL") << "\t" << c.detail << "\n";
  }
  if (!verdict_.empty())
    out << "# verdict: " << verdict_ << "\n";
  return out.str();
}

nlohmann::ordered_json Report::json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["version"] = version_string();
  if (!config_.is_null())
    j["config"] = config_;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const auto &t : tables_) {
    nlohmann::ordered_json tb;
    tb["header"] = t.header;
    tb["rows"] = t.rows;
    tables[t.name] = tb;
  }
  j["tables"] = tables;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto &c : checks_) {
    nlohmann::ordered_json ck;
    ck["name"] = c.name;
    ck["pass"] = c.pass;
    ck["detail"] = c.detail;
    checks.push_back(ck);
  }
  j["checks"] = checks;
  if (!verdict_.empty())
    j["verdict"] = verdict_;
  return j;
}

void Report::write(const std::string &out_dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / (command_ + ".tsv"));
    if (!f)
      throw Error("cannot write report to '" + out_dir + "'");
    f << tsv();
  }
  {
    std::ofstream f(fs::path(out_dir) / (command_ + ".json"));
    if (!f)
      throw Error("cannot write report to '" + out_dir + "'");
    f << json().dump(2) << "\n";
  }
}

} // namespace mloop
