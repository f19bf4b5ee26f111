#include <algorithm>
#include <sstream>

#include "app/app.hpp"
#include "hstab/error.hpp"

namespace hstab::app {

namespace {

const std::vector<std::string> kStabilityColumns = {"family", "n",        "q",         "source", "target",
                                                    "map",    "iso_pred", "surj_pred", "pass"};

std::string cell(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> columns(const ojson& body) {
  if (body["command"] == "stability") return kStabilityColumns;
  std::vector<std::string> cols;
  for (const auto& row : body["rows"])
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

std::string format_seconds(double s) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << s;
  return out.str();
}

std::string render_csv(const Report& r, bool timing) {
  const auto cols = columns(r.body);
  std::ostringstream out;
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
  out << '\n';
  for (const auto& row : r.body["rows"]) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? "," : "") << csv_escape(row.contains(cols[i]) ? cell(row[cols[i]]) : "");
    out << '\n';
  }
  if (timing) out << "# seconds " << format_seconds(r.seconds) << '\n';
  return out.str();
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string render_md(const Report& r, bool timing) {
  const auto& b = r.body;
  std::ostringstream out;
  out << "# hstab " << b["command"].get<std::string>() << "\n\n";
  out << "version " << b["version"].get<std::string>() << "\n\n";
  for (const auto& [k, v] : b["params"].items()) out << "- " << k << ": " << md_escape(cell(v)) << '\n';
  out << '\n';
  const auto cols = columns(b);
  if (!cols.empty()) {
    out << '|';
    for (const auto& c : cols) out << ' ' << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : b["rows"]) {
      out << '|';
      for (const auto& c : cols) out << ' ' << md_escape(row.contains(c) ? cell(row[c]) : "") << " |";
      out << '\n';
    }
    out << '\n';
  }
  out << "**" << (r.pass ? "pass" : "fail") << "**\n";
  for (const auto& v : b["violations"]) out << "\n- " << md_escape(cell(v));
  if (!b["violations"].empty()) out << '\n';
  if (timing) out << "\n_time: " << format_seconds(r.seconds) << " s_\n";
  return out.str();
}

}  // namespace

std::string render(const Report& r, std::string_view format, bool include_timing) {
  if (format == "json") {
    ojson b = r.body;
    if (include_timing) b["timing"] = {{"seconds", r.seconds}};
    return b.dump(2) + "\n";
  }
  if (format == "csv") return render_csv(r, include_timing);
  if (format == "md") return render_md(r, include_timing);
  throw ArgumentError("unknown format '" + std::string(format) + "'");
}

}  // namespace hstab::app
