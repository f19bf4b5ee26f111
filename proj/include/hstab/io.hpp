#pragma once

// JSON forms of complexes, Δ-sets, filtrations and spectral pages.
//
// Matrices over Z or F_p are embedded as strings in the `rows cols nnz`
// text format. Z[Z/2] matrices are objects
// {"rows": r, "cols": c, "entries": [[i, j, [a, b]], ...]} for a + bt.

#include <string>
#include <string_view>

#include "json.hpp"

#include "hstab/complexes.hpp"
#include "hstab/delta.hpp"
#include "hstab/spectral.hpp"

namespace hstab::io {

using nlohmann::json;

/// Parses JSON text; ParseError names the line and column (and `source`).
json parse_json(std::string_view text, std::string_view source = "input");
std::string read_file(const std::string& path);

json to_json(const complexes::HomologyGroup& h);
json to_json(const complexes::ChainComplex& c);
complexes::ChainComplex complex_from_json(const json& j);

json to_json(const delta::DeltaSet& y);
delta::DeltaSet delta_set_from_json(const json& j);

/// {"source": Δ-set, "target": Δ-set, "levels": {"<i>": [...]}, "base": [...]}.
delta::DeltaMap delta_map_from_json(const json& j);

/// {"complex": complex, "filtration": {"<q>": [level per generator]}}; the ring must be F_p.
spectral::FilteredComplex filtered_from_json(const json& j);

/// {"r", "entries": [{"s","t","dim"}], "differentials": [{"from","to","matrix"}]}.
json to_json(const spectral::SpectralPage& e);

}  // namespace hstab::io
