#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "hstab/hstab.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Session {
  hstab_session* s = nullptr;
  explicit Session(const std::string& options) { REQUIRE(hstab_session_create(options.c_str(), &s) == HSTAB_OK); }
  ~Session() { hstab_session_destroy(s); }
};

// Runs and renders; returns the status and the text (or the error message).
std::pair<hstab_status, std::string> run(Session& session, const char* command, const json& params,
                                         const char* format = "json", int timing = 0) {
  hstab_report* r = nullptr;
  auto st = hstab_run(session.s, command, params.dump().c_str(), &r);
  if (st != HSTAB_OK) return {st, hstab_session_last_error(session.s)};
  char* text = nullptr;
  st = hstab_report_render(r, format, timing, &text);
  std::string out = text ? text : "";
  hstab_string_free(text);
  hstab_report_destroy(r);
  return {st, out};
}

fs::path fresh_dir(const char* name) {
  auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

std::size_t file_count(const fs::path& d) {
  if (!fs::exists(d)) return 0;
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(d))
    if (e.is_regular_file()) ++n;
  return n;
}

}  // namespace

TEST_CASE("sessions") {
  CHECK(std::string(hstab_version()).size() > 0);
  hstab_session* s = nullptr;
  CHECK(hstab_session_create("{\"jobs\": 0}", &s) == HSTAB_ERROR_ARGUMENT);
  CHECK(s == nullptr);
  CHECK(hstab_session_create("{\"colour\": 1}", &s) == HSTAB_ERROR_ARGUMENT);
  CHECK(hstab_session_create("{\"jobs\": ", &s) == HSTAB_ERROR_PARSE);
  CHECK(hstab_session_create(nullptr, nullptr) == HSTAB_ERROR_ARGUMENT);
  REQUIRE(hstab_session_create("{\"no_cache\": true}", &s) == HSTAB_OK);
  CHECK(std::string(hstab_session_last_error(s)).empty());
  hstab_report* r = nullptr;
  CHECK(hstab_run(s, "frobnicate", "{}", &r) == HSTAB_ERROR_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(std::string(hstab_session_last_error(s)).find("frobnicate") != std::string::npos);
  CHECK(hstab_run(s, "homology", "[1]", &r) == HSTAB_ERROR_ARGUMENT);
  CHECK(hstab_run(nullptr, "homology", "{}", &r) == HSTAB_ERROR_ARGUMENT);
  hstab_session_destroy(s);
}

TEST_CASE("homology reports") {
  Session s("{\"no_cache\": true}");
  auto [st, text] = run(s, "homology", {{"family", "braid"}, {"n", 3}, {"coeffs", "trivial-z"}});
  REQUIRE(st == HSTAB_OK);
  auto j = json::parse(text);
  CHECK(j["command"] == "homology");
  CHECK(j["pass"] == true);
  CHECK(j["version"] == hstab_version());
  CHECK_FALSE(j.contains("timing"));
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["group"] == "Z");
  CHECK(j["rows"][1]["group"] == "Z");
  CHECK(j["rows"][2]["group"] == "0");

  auto [st2, timed] = run(s, "homology", {{"family", "braid"}, {"n", 3}}, "json", 1);
  CHECK(json::parse(timed).contains("timing"));

  auto sign = json::parse(run(s, "homology", {{"family", "braid"}, {"n", 4}, {"coeffs", "sign-fp:3"}}).second);
  CHECK(sign["rows"][1]["group"] == "F3");
  auto alt = json::parse(run(s, "homology", {{"family", "alt-braid"}, {"n", 2}, {"coeffs", "z"}}).second);
  CHECK(alt["rows"][0]["group"] == "Z");
  CHECK(alt["rows"][1]["group"] == "Z");
  auto a4 = json::parse(run(s, "group-homology", {{"group", "A4"}, {"deg", 1}}).second);
  CHECK(a4["rows"][0]["group"] == "Z/3");
}

TEST_CASE("error statuses") {
  Session s("{\"no_cache\": true, \"max_entries\": 10}");
  CHECK(run(s, "homology", {{"family", "braid"}, {"n", 40}}).first == HSTAB_ERROR_RESOURCE);
  CHECK(run(s, "homology", {{"family", "braid"}, {"n", 8}}).first == HSTAB_ERROR_RESOURCE);
  CHECK(run(s, "homology", {{"family", "braid"}, {"n", "three"}}).first == HSTAB_ERROR_ARGUMENT);
  CHECK(run(s, "homology", {{"family", "alt-braid"}, {"n", 3}, {"coeffs", "sign-z"}}).first == HSTAB_ERROR_ARGUMENT);
  CHECK(run(s, "snf", {{"input", "/nonexistent/m.txt"}}).first == HSTAB_ERROR_ARGUMENT);
  auto bad = fs::temp_directory_path() / "hstab_capi_bad.json";
  {
    std::ofstream(bad) << "{\"levels\": [1,\n 2,]}";
  }
  auto [st, msg] = run(s, "ss", {{"input", bad.string()}, {"prime", 2}});
  CHECK(st == HSTAB_ERROR_PARSE);
  CHECK(msg.find("line 2") != std::string::npos);
  Session ok("{\"no_cache\": true}");
  hstab_report* r = nullptr;
  REQUIRE(hstab_run(ok.s, "homology", "{\"family\": \"braid\", \"n\": 2}", &r) == HSTAB_OK);
  char* out = nullptr;
  CHECK(hstab_report_render(r, "xml", 0, &out) == HSTAB_ERROR_ARGUMENT);
  CHECK(out == nullptr);
  hstab_report_destroy(r);
}

TEST_CASE("stability formats and exit status") {
  Session s("{\"no_cache\": true}");
  auto [st, csv] = run(s, "stability", {{"family", "braid"}, {"nmax", 6}, {"qmax", 2}}, "csv");
  REQUIRE(st == HSTAB_OK);
  CHECK(csv.substr(0, csv.find('\n')) == "family,n,q,source,target,map,iso_pred,surj_pred,pass");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 6 * 3);
  auto [st2, md] = run(s, "stability", {{"family", "braid"}, {"nmax", 4}, {"qmax", 1}}, "md");
  CHECK(md.find("| family |") != std::string::npos);
  CHECK(md.find("**pass**") != std::string::npos);

  hstab_report* r = nullptr;
  REQUIRE(hstab_run(s.s, "stability", "{\"family\": \"sign-fp:3\", \"nmax\": 8, \"qmax\": 2}", &r) == HSTAB_OK);
  CHECK(hstab_report_pass(r) == 1);
  hstab_report_destroy(r);
  auto sign = json::parse(run(s, "stability", {{"family", "sign-fp:3"}, {"nmax", 8}, {"qmax", 2}}).second);
  int zeros = 0;
  for (const auto& row : sign["rows"])
    if ((row["n"] == 4 && row["q"] == 1) || (row["n"] == 7 && row["q"] == 2)) {
      CHECK(row["map"] == "zero");
      CHECK(row["source"] == "F3");
      CHECK(row["target"] == "0");
      ++zeros;
    }
  CHECK(zeros == 2);
}

TEST_CASE("cache does not change reports") {
  const auto dir = fresh_dir("hstab_capi_cache");
  const json params = {{"family", "alt-braid"}, {"nmin", 8}, {"nmax", 10}, {"qmax", 3}};
  std::string uncached, cold, warm;
  {
    Session s("{\"no_cache\": true}");
    uncached = run(s, "stability", params).second;
  }
  {
    Session s(json{{"cache_dir", dir.string()}}.dump());
    cold = run(s, "stability", params).second;
  }
  const auto entries = file_count(dir);
  CHECK(entries > 0);
  {
    Session s(json{{"cache_dir", dir.string()}, {"jobs", 2}}.dump());
    warm = run(s, "stability", params).second;
  }
  CHECK(file_count(dir) == entries);
  CHECK(cold == uncached);
  CHECK(warm == uncached);
  fs::remove_all(dir);
}
