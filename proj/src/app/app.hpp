#pragma once

// Commands behind the C API: each takes a JSON parameter object and
// produces a report {version, command, params, rows, pass, violations}.

#include <string>
#include <string_view>

#include "json.hpp"

#include "hstab/context.hpp"

namespace hstab::app {

using ojson = nlohmann::ordered_json;

struct Report {
  ojson body;
  bool pass = true;
  double seconds = 0;
};

/// Commands: homology, stability, injective-words, ss, group-homology, snf, counterexample.
Report run(std::string_view command, const nlohmann::json& params, const Context& ctx);

/// "json", "csv" or "md". Timing is appended only when requested.
std::string render(const Report& r, std::string_view format, bool include_timing);

const char* version();

}  // namespace hstab::app
