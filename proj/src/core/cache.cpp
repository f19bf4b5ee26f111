#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include "hstab/context.hpp"
#include "hstab/error.hpp"

namespace hstab {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMinCachedEntries = 256;

std::string hex(const unsigned char* data, unsigned len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 15]);
  }
  return out;
}

std::string serialize(const linalg::SmithForm& s) {
  std::ostringstream out;
  out << s.rows << ' ' << s.cols << ' ' << s.rank;
  for (const auto& d : s.invariant_factors) out << ' ' << d.get_str();
  return out.str();
}

std::optional<linalg::SmithForm> deserialize(const std::string& text) {
  std::istringstream in(text);
  linalg::SmithForm s;
  if (!(in >> s.rows >> s.cols >> s.rank)) return std::nullopt;
  std::string tok;
  while (in >> tok) {
    Integer d;
    if (d.set_str(tok, 10) != 0) return std::nullopt;
    s.invariant_factors.push_back(d);
  }
  if (s.invariant_factors.size() != s.rank) return std::nullopt;
  return s;
}

}  // namespace

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::default_dir() {
  if (const char* env = std::getenv("HSTAB_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "hstab";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "hstab";
  return fs::temp_directory_path() / "hstab-cache";
}

std::string ResultCache::digest(std::string_view tag, std::string_view payload) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw Error("cannot allocate digest context");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, tag.data(), tag.size());
  EVP_DigestUpdate(ctx, "\n", 1);
  EVP_DigestUpdate(ctx, payload.data(), payload.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  return hex(md, len);
}

std::optional<std::string> ResultCache::get(std::string_view key) const {
  std::ifstream in(dir_ / key.substr(0, 2) / std::string(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ResultCache::put(std::string_view key, std::string_view value) const {
  static std::atomic<unsigned long> counter{0};
  std::error_code ec;
  fs::path sub = dir_ / key.substr(0, 2);
  fs::create_directories(sub, ec);
  if (ec) return;  // an unwritable cache only costs recomputation
  std::ostringstream tmp_name;
  tmp_name << '.' << key << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter.fetch_add(1);
  fs::path tmp = sub / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(value.data(), static_cast<std::streamsize>(value.size()));
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, sub / std::string(key), ec);
  if (ec) fs::remove(tmp, ec);
}

namespace linalg {

SmithForm smith_normal_form(const SparseIntegerMatrix& m, const Context& ctx) {
  if (!ctx.cache || m.nnz() < kMinCachedEntries) return smith_normal_form(m, ctx.limits);
  const std::string key = ResultCache::digest("smith/v1", m.to_text());
  if (auto hit = ctx.cache->get(key))
    if (auto s = deserialize(*hit); s && s->rows == m.rows() && s->cols == m.cols()) return *s;
  SmithForm s = smith_normal_form(m, ctx.limits);
  ctx.cache->put(key, serialize(s));
  return s;
}

std::size_t rank_mod_p(const SparseIntegerMatrix& m, std::uint64_t p, const Context& ctx) {
  if (!ctx.cache || m.nnz() < kMinCachedEntries) return rank_mod_p(m, p, ctx.limits);
  const std::string key = ResultCache::digest("rank_mod_p/v1/" + std::to_string(p), m.to_text());
  if (auto hit = ctx.cache->get(key)) {
    try {
      return std::stoull(*hit);
    } catch (const std::exception&) {
    }
  }
  std::size_t r = rank_mod_p(m, p, ctx.limits);
  ctx.cache->put(key, std::to_string(r));
  return r;
}

}  // namespace linalg
}  // namespace hstab
