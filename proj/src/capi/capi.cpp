#include "hstab/hstab.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "app/app.hpp"
#include "hstab/error.hpp"
#include "hstab/io.hpp"

struct hstab_session {
  hstab::Context ctx;
  std::string last_error;
};

struct hstab_report {
  hstab::app::Report report;
};

namespace {

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
hstab_status guarded(std::string* error, F&& f) {
  try {
    f();
    if (error) error->clear();
    return HSTAB_OK;
  } catch (const hstab::ResourceLimitError& e) {
    if (error) *error = e.what();
    return HSTAB_ERROR_RESOURCE;
  } catch (const hstab::ParseError& e) {
    if (error) *error = e.what();
    return HSTAB_ERROR_PARSE;
  } catch (const hstab::ArgumentError& e) {
    if (error) *error = e.what();
    return HSTAB_ERROR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    if (error) *error = "out of memory";
    return HSTAB_ERROR_RESOURCE;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return HSTAB_ERROR_INTERNAL;
  } catch (...) {
    if (error) *error = "unknown failure";
    return HSTAB_ERROR_INTERNAL;
  }
}

nlohmann::json parse_object(const char* text, const char* what) {
  if (!text || !*text) return nlohmann::json::object();
  auto j = hstab::io::parse_json(text, what);
  if (!j.is_object()) throw hstab::ArgumentError(std::string(what) + " must be a JSON object");
  return j;
}

}  // namespace

extern "C" {

const char* hstab_version(void) { return hstab::app::version(); }

hstab_status hstab_session_create(const char* options_json, hstab_session** out) {
  if (!out) return HSTAB_ERROR_ARGUMENT;
  *out = nullptr;
  auto* s = new (std::nothrow) hstab_session;
  if (!s) return HSTAB_ERROR_RESOURCE;
  const auto status = guarded(&s->last_error, [&] {
    const auto o = parse_object(options_json, "options");
    for (const auto& [k, v] : o.items())
      if (k != "cache_dir" && k != "no_cache" && k != "jobs" && k != "max_entries")
        throw hstab::ArgumentError("unknown option '" + k + "'");
    if (o.contains("jobs")) {
      if (!o["jobs"].is_number_integer() || o["jobs"].get<long long>() < 1)
        throw hstab::ArgumentError("jobs must be a positive integer");
      s->ctx.jobs = o["jobs"].get<unsigned>();
    }
    if (o.contains("max_entries")) {
      if (!o["max_entries"].is_number_integer() || o["max_entries"].get<long long>() < 1)
        throw hstab::ArgumentError("max_entries must be a positive integer");
      s->ctx.limits.max_entries = o["max_entries"].get<std::size_t>();
    }
    const bool no_cache = o.contains("no_cache") && o["no_cache"].is_boolean() && o["no_cache"].get<bool>();
    if (!no_cache) {
      std::filesystem::path dir = hstab::ResultCache::default_dir();
      if (o.contains("cache_dir")) {
        if (!o["cache_dir"].is_string()) throw hstab::ArgumentError("cache_dir must be a string");
        dir = o["cache_dir"].get<std::string>();
      }
      s->ctx.cache = std::make_shared<const hstab::ResultCache>(dir);
    }
  });
  if (status != HSTAB_OK) {
    delete s;
    return status;
  }
  *out = s;
  return HSTAB_OK;
}

void hstab_session_destroy(hstab_session* session) { delete session; }

const char* hstab_session_last_error(const hstab_session* session) {
  return session ? session->last_error.c_str() : "no session";
}

hstab_status hstab_run(hstab_session* session, const char* command, const char* params_json, hstab_report** out) {
  if (!session || !command || !out) return HSTAB_ERROR_ARGUMENT;
  *out = nullptr;
  return guarded(&session->last_error, [&] {
    const auto params = parse_object(params_json, "parameters");
    auto* r = new hstab_report{hstab::app::run(command, params, session->ctx)};
    *out = r;
  });
}

int hstab_report_pass(const hstab_report* report) { return report && report->report.pass ? 1 : 0; }

hstab_status hstab_report_render(const hstab_report* report, const char* format, int include_timing, char** out) {
  if (!report || !format || !out) return HSTAB_ERROR_ARGUMENT;
  *out = nullptr;
  return guarded(nullptr, [&] { *out = duplicate(hstab::app::render(report->report, format, include_timing != 0)); });
}

void hstab_report_destroy(hstab_report* report) { delete report; }

void hstab_string_free(char* s) { std::free(s); }

}  // extern "C"
