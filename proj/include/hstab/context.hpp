#pragma once

// Execution context threaded through every computation: resource caps and
// the optional on-disk result cache.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "hstab/linalg.hpp"

namespace hstab {

/// Content-addressed store for expensive exact results. Keys are SHA-256
/// digests of an operation tag plus the serialized input; writes go to a
/// temporary file that is renamed into place, so concurrent writers never
/// expose a partial entry.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<std::string> get(std::string_view key) const;
  void put(std::string_view key, std::string_view value) const;

  static std::string digest(std::string_view tag, std::string_view payload);
  /// $HSTAB_CACHE_DIR, else $XDG_CACHE_HOME/hstab, else ~/.cache/hstab.
  static std::filesystem::path default_dir();

 private:
  std::filesystem::path dir_;
};

struct Context {
  Limits limits;
  std::shared_ptr<const ResultCache> cache;
  /// Worker threads for embarrassingly parallel loops; 1 runs inline.
  unsigned jobs = 1;
};

namespace linalg {

/// Cached variants; matrices below a small size bypass the cache.
SmithForm smith_normal_form(const SparseIntegerMatrix& m, const Context& ctx);
std::size_t rank_mod_p(const SparseIntegerMatrix& m, std::uint64_t p, const Context& ctx);

}  // namespace linalg
}  // namespace hstab
