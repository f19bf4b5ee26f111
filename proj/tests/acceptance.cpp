// Acceptance suite: one PASS/FAIL line per criterion. The first argument is
// the path of the hstab executable, used by the determinism check.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hstab/confspace.hpp"
#include "hstab/delta.hpp"
#include "hstab/error.hpp"
#include "hstab/groups.hpp"
#include "hstab/spectral.hpp"
#include "oracles.hpp"
#include "simplicial.hpp"

using namespace hstab;
using complexes::ChainComplex;
using complexes::CoefficientModule;
using complexes::Ring;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

// ---- independent reference computations ----

// Σ_k (-1)^k n!/k!.
long long derangements(long long n) {
  long long total = 0;
  for (long long k = 0; k <= n; ++k) {
    long long term = 1;
    for (long long i = k + 1; i <= n; ++i) term *= i;
    total += (k % 2 ? -1 : 1) * term;
  }
  return total;
}

oracle::Dense dense(const linalg::SparseIntegerMatrix& m) {
  oracle::Dense d(m.rows(), std::vector<long long>(m.cols(), 0));
  for (const auto& e : m.entries()) d[e.row][e.col] = e.value.get_si();
  return d;
}

std::size_t dense_rank(const linalg::SparseIntegerMatrix& m, long long p) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return oracle::rank_mod_p(dense(m), p);
}

// dim H_q over F_p by dense elimination.
std::size_t oracle_dim(const ChainComplex& c, int q, long long p) {
  if (q < c.qmin() || q > c.qmax()) return 0;
  return c.rank(q) - dense_rank(c.boundary(q), p) - dense_rank(c.boundary(q + 1), p);
}

// Ordered simplicial complex as a Δ-set: d_j deletes the j-th vertex.
delta::DeltaSet as_delta_set(const testing_support::SimplicialComplex& k) {
  std::vector<std::vector<std::vector<std::size_t>>> faces(k.simplices.size());
  for (std::size_t i = 0; i < k.simplices.size(); ++i)
    for (const auto& s : k.simplices[i]) {
      std::vector<std::size_t> f;
      if (i > 0)
        for (std::size_t j = 0; j <= i; ++j) {
          auto face = s;
          face.erase(face.begin() + static_cast<long>(j));
          f.push_back(k.index(face));
        }
      faces[i].push_back(f);
    }
  return delta::DeltaSet::make(std::move(faces));
}

delta::DeltaSet constant_delta_set(std::size_t top) {
  std::vector<std::vector<std::vector<std::size_t>>> faces(top + 1);
  for (std::size_t i = 0; i <= top; ++i) faces[i].push_back(std::vector<std::size_t>(i == 0 ? 0 : i + 1, 0));
  return delta::DeltaSet::make_augmented(faces, {0}, 1);
}

spectral::FilteredComplex random_filtered(std::mt19937_64& rng, std::uint64_t p) {
  auto k = testing_support::random_complex(rng, 7, 3, 6);
  auto c = k.chains(Ring::prime_field(p));
  std::map<int, std::vector<int>> levels;
  std::uniform_int_distribution<int> bump(0, 2);
  for (int q = 0; q <= c.qmax(); ++q) {
    levels[q].resize(c.rank(q));
    for (std::size_t j = 0; j < c.rank(q); ++j) {
      int lv = 0;
      if (q > 0)
        for (std::size_t x = 0; x < k.simplices[q][j].size(); ++x) {
          auto face = k.simplices[q][j];
          face.erase(face.begin() + static_cast<long>(x));
          lv = std::max(lv, levels[q - 1][k.index(face)]);
        }
      levels[q][j] = lv + bump(rng);
    }
  }
  return spectral::FilteredComplex::make(std::move(c), std::move(levels));
}

std::int64_t euler(const ChainComplex& c) {
  std::int64_t chi = 0;
  for (int q = c.qmin(); q <= c.qmax(); ++q) chi += (q % 2 ? -1 : 1) * static_cast<std::int64_t>(c.rank(q));
  return chi;
}

// ---- criteria ----

void ac1(Outcome& o) {
  std::string ranks;
  for (std::size_t n = 2; n <= 7; ++n) {
    auto w = delta::wedge_verify(n);
    const long long dn = derangements(static_cast<long long>(n));
    for (std::size_t i = 0; i + 1 < w.reduced.size(); ++i)
      o.require(w.reduced[i].is_zero(), "n=" + std::to_string(n) + " nonzero in degree " + std::to_string(i - 1));
    const auto& top = w.reduced.back();
    o.require(top.torsion.empty() && top.free_rank == static_cast<std::size_t>(dn),
              "n=" + std::to_string(n) + " top " + top.to_string() + " vs D_n=" + std::to_string(dn));
    ranks += (ranks.empty() ? "" : ",") + std::to_string(top.free_rank);
  }
  o.detail << "n=2..7, reduced homology zero below n-1, top ranks " << ranks << " = derangements";
}

void stability_ac(Outcome& o, confspace::Family fam, std::size_t n_max, int q_max, const char* module) {
  auto m = CoefficientModule::parse(module);
  auto r = confspace::stability_report(fam, 1, n_max, q_max, m);
  std::size_t iso = 0, surj = 0, vanish = 0;
  for (const auto& row : r.rows) {
    const std::string at = "(" + std::to_string(row.n) + "," + std::to_string(row.q) + ")";
    if (row.predicted.iso) {
      ++iso;
      o.require(row.map == complexes::MapClass::Iso, at + " not iso");
    }
    if (row.predicted.surjective) {
      ++surj;
      o.require(row.surjective, at + " not surjective");
    }
    if (row.predicted.relative_vanishes) {
      ++vanish;
      o.require(row.relative.is_zero(), at + " relative " + row.relative.to_string());
    }
  }
  for (const auto& v : r.violations) o.require(false, v);
  o.detail << "n<=" << n_max << ", q<=" << q_max << ", " << module << ": " << r.rows.size() << " rows, " << iso
           << " iso, " << surj << " surjective, " << vanish << " vanishing predictions hold";
}

void ac4(Outcome& o) {
  std::size_t checked = 0;
  for (std::uint64_t p : {3, 5}) {
    const std::string ps = std::to_string(p);
    for (std::size_t n = 1; n <= 10; ++n) {
      // Regular module taken literally on the unordered model; for n >= 2 it
      // is also the oriented double cover.
      auto fn = confspace::fn_complex(n);
      auto literal = complexes::specialize(*fn.complex, CoefficientModule::parse("regular-fp:" + ps));
      auto reg = complexes::homology_range(literal, 0, static_cast<int>(n) - 1);
      auto tri = confspace::unordered_homology(n, CoefficientModule::parse("trivial-fp:" + ps));
      auto sgn = confspace::unordered_homology(n, CoefficientModule::parse("sign-fp:" + ps));
      std::vector<complexes::HomologyGroup> cover;
      if (n >= 2) cover = confspace::oriented_homology(n, Ring::prime_field(p));
      for (int q = 0; q <= 4; ++q) {
        auto dim = [q](const std::vector<complexes::HomologyGroup>& h) {
          return static_cast<std::size_t>(q) < h.size() ? h[static_cast<std::size_t>(q)].free_rank : 0;
        };
        const std::string at = "p=" + ps + " n=" + std::to_string(n) + " q=" + std::to_string(q);
        o.require(dim(reg) == dim(tri) + dim(sgn), at);
        if (n >= 2) o.require(dim(cover) == dim(reg), at + " oriented model");
        ++checked;
      }
    }
  }
  o.detail << "p in {3,5}, n<=10, q<=4: " << checked
           << " exact equalities dim regular = dim trivial + dim sign; oriented model equals regular for n>=2";
}

void ac5(Outcome& o) {
  std::string seen;
  for (auto [p, lambda] : std::vector<std::pair<std::uint64_t, std::size_t>>{{3, 1}, {3, 2}, {5, 1}}) {
    auto c = confspace::counterexample_check(p, lambda);
    const std::string at = "(n,q)=(" + std::to_string(c.n) + "," + std::to_string(c.q) + ")";
    o.require(c.n == lambda * p + 1 && c.q == static_cast<int>(lambda * (p - 2)), at + " wrong position");
    o.require(c.source.free_rank == 1 && c.source.field == p, at + " source " + c.source.to_string());
    o.require(c.target.is_zero(), at + " target " + c.target.to_string());
    o.require(c.map == complexes::MapClass::Zero, at + " map " + complexes::to_string(c.map));
    o.require(!confspace::predict(confspace::Family::SignTwisted, c.n, c.q).iso, at + " inside iso range");
    seen += (seen.empty() ? "" : ", ") + at + " " + c.source.to_string() + "->" + c.target.to_string() + " " +
            complexes::to_string(c.map);
  }
  o.detail << seen;
}

void ac6(Outcome& o) {
  auto a4 = groups::alternating_group(4), a5 = groups::alternating_group(5);
  auto h4 = groups::group_homology(a4, 1, 2);
  auto h5 = groups::group_homology(a5, 1, 2);
  auto f = groups::inclusion(a4, a5);
  groups::validate_homomorphism(f);
  auto m = groups::induced_map(f, 1, 2);
  o.require(h4.to_string() == "Z/3", "H1(A4) = " + h4.to_string());
  o.require(h5.is_zero(), "H1(A5) = " + h5.to_string());
  o.require(m.source == h4 && m.target == h5 && m.classification == complexes::MapClass::Zero,
            "induced map " + complexes::to_string(m.classification));
  o.detail << "H1(A4)=" << h4.to_string() << ", H1(A5)=" << h5.to_string() << ", inclusion induces "
           << complexes::to_string(m.classification) << " map";
}

void ac7(Outcome& o) {
  std::string values;
  for (std::size_t n = 2; n <= 11; ++n) {
    auto d = confspace::compare_deck_stabilizations(n, 3);
    o.require(d.agree(), "n=" + std::to_string(n) + ": " + std::to_string(d.plain.value) + " vs " +
                             std::to_string(d.twisted.value));
    values += (values.empty() ? "" : ",") + std::to_string(d.plain.value) + (d.plain.truncated ? "+" : "");
  }
  o.detail << "oriented n=2..11, hconn(s_n) = hconn(nu s_n) = " << values << " (+ = at least, q<=3)";
}

void ac8(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::size_t inputs = 0;
  auto converge = [&](const spectral::FilteredComplex& f, const std::string& name) {
    auto e = spectral::limit_page(f);
    const auto& c = f.complex();
    const long long p = static_cast<long long>(f.prime());
    for (int q = c.qmin(); q <= c.qmax(); ++q)
      o.require(e.total_dim(q) == oracle_dim(c, q, p), name + " total degree " + std::to_string(q));
    for (const auto& [st, d] : e.dims)
      o.require(st.first + st.second >= c.qmin() && st.first + st.second <= c.qmax(), name + " stray entry");
    ++inputs;
  };
  for (std::uint64_t p : {2, 3}) {
    const std::string ps = "F" + std::to_string(p) + " ";
    for (std::size_t n = 1; n <= 4; ++n) {
      auto y = delta::injective_words(n);
      converge(spectral::skeletal_filtration(y, p), ps + "inj skeletal n=" + std::to_string(n));
      converge(spectral::augmented_filtration(y, p), ps + "inj augmented n=" + std::to_string(n));
    }
    for (std::size_t top = 0; top <= 3; ++top)
      converge(spectral::augmented_filtration(constant_delta_set(top), p), ps + "constant " + std::to_string(top));
    converge(spectral::skeletal_filtration(as_delta_set(testing_support::SimplicialComplex::closure(
                                               testing_support::rp2_facets())),
                                           p),
             ps + "RP2");
    for (int t = 0; t < 15; ++t) {
      converge(spectral::skeletal_filtration(as_delta_set(testing_support::random_complex(rng, 7, 3, 5)), p),
               ps + "random delta set");
      converge(random_filtered(rng, p), ps + "random filtered complex");
    }
    for (auto [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 3}, {2, 4}, {3, 4}})
      converge(spectral::map_filtration(delta::injective_words_inclusion(a, b), p), ps + "inclusion map");
  }
  // Augmented injective words, graded by the cone of |inj| -> point: the
  // augmented total degree q is cone degree q + 1.
  std::string tops;
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::uint64_t p : {2, 3}) {
      auto e = spectral::limit_page(spectral::augmented_filtration(delta::injective_words(n), p));
      for (int cone_deg = 0; cone_deg <= static_cast<int>(n) - 1; ++cone_deg)
        o.require(e.total_dim(cone_deg - 1) == 0,
                  "inj n=" + std::to_string(n) + " nonzero at cone degree " + std::to_string(cone_deg));
      o.require(e.total_dim(static_cast<int>(n) - 1) == static_cast<std::size_t>(derangements(static_cast<long long>(n))),
                "inj n=" + std::to_string(n) + " top");
      if (p == 2) tops += (tops.empty() ? "" : ",") + std::to_string(e.total_dim(static_cast<int>(n) - 1));
    }
  o.detail << inputs << " inputs over F2/F3 abut to dense-oracle homology; augmented inj n=2..5: E^inf = 0 in cone "
           << "total degree <= n-1 (augmented chain degree <= n-2), top " << tops << " = D_n at cone degree n";
}

void ac9(Outcome& o) {
  std::size_t complexes_checked = 0, delta_checked = 0, cones = 0, snf = 0;
  auto check_complex = [&](const ChainComplex& c, const std::string& name) {
    auto v = complexes::validate_complex(c);
    o.require(v.ok, name + ": " + v.message);
    if (c.ring().kind != Ring::Kind::ZC2) {
      std::int64_t chi_h = 0;
      for (int q = c.qmin(); q <= c.qmax(); ++q)
        chi_h += (q % 2 ? -1 : 1) * static_cast<std::int64_t>(complexes::homology(c, q).free_rank);
      o.require(chi_h == euler(c), name + " Euler characteristic");
    }
    ++complexes_checked;
  };
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::string ns = " n=" + std::to_string(n);
    check_complex(*confspace::fn_complex(n).complex, "FN" + ns);
    for (const char* m : {"trivial-z", "sign-z", "regular-z", "trivial-fp:3", "sign-fp:5"})
      check_complex(*confspace::model(n, CoefficientModule::parse(m)), std::string(m) + ns);
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    auto y = delta::injective_words(n);
    auto v = delta::validate_delta_set(y);
    o.require(v.ok, "inj n=" + std::to_string(n) + ": " + v.message);
    ++delta_checked;
    check_complex(delta::augmented_chains(y), "inj chains");
  }
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    auto y = as_delta_set(testing_support::random_complex(rng, 8, 3, 6));
    o.require(delta::validate_delta_set(y).ok, "random delta set");
    ++delta_checked;
    check_complex(delta::chains_of_realization(y), "random chains");
  }
  for (const char* g : {"S3", "A4", "(1 2 3 4)"}) check_complex(groups::bar_complex(groups::parse_group(g), 3), g);

  // Long exact sequence of each stabilization cone over F_p.
  for (const char* m : {"trivial-fp:3", "sign-fp:3", "regular-fp:5"}) {
    const auto mod = CoefficientModule::parse(m);
    const long long p = static_cast<long long>(mod.p);
    for (std::size_t n = 1; n <= 8; ++n) {
      auto f = confspace::specialized_stabilization(n, mod);
      auto vm = complexes::validate_map(f);
      o.require(vm.ok, std::string(m) + " stabilization: " + vm.message);
      auto cone = complexes::mapping_cone(f);
      check_complex(cone, std::string(m) + " cone");
      o.require(euler(cone) == euler(f.target()) - euler(f.source()), "cone Euler characteristic");
      std::vector<std::size_t> rk;
      const int qmax = cone.qmax();
      for (int q = 0; q <= qmax; ++q) {
        if (q > f.source().qmax() || q > f.target().qmax()) {
          rk.push_back(0);
          continue;
        }
        auto im = complexes::induced_map_on_homology(f, q);
        oracle::Dense d;
        for (const auto& row : im.matrix) {
          d.emplace_back();
          for (const auto& x : row) d.back().push_back(mpz_class(x % static_cast<long>(p)).get_si());
        }
        rk.push_back(d.empty() || d[0].empty() ? 0 : oracle::rank_mod_p(d, p));
      }
      for (int q = 0; q <= qmax; ++q) {
        const std::size_t tq = q <= f.target().qmax() ? complexes::homology(f.target(), q).free_rank : 0;
        const std::size_t sq1 = q >= 1 && q - 1 <= f.source().qmax() ? complexes::homology(f.source(), q - 1).free_rank : 0;
        const std::size_t expected = tq - rk[static_cast<std::size_t>(q)] + sq1 - (q >= 1 ? rk[static_cast<std::size_t>(q - 1)] : 0);
        o.require(complexes::homology(cone, q).free_rank == expected,
                  std::string(m) + " LES n=" + std::to_string(n) + " q=" + std::to_string(q));
      }
      ++cones;
    }
  }

  // Smith normal form against determinantal divisors.
  std::uniform_int_distribution<int> size(1, 5), entry(-6, 6), sparse(0, 2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = static_cast<std::size_t>(size(rng)), c = static_cast<std::size_t>(size(rng));
    oracle::Dense d(r, std::vector<long long>(c));
    std::vector<linalg::Entry> e;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        d[i][j] = sparse(rng) == 0 ? 0 : entry(rng) * (t % 3 == 0 ? 2 : 1);
        e.push_back({i, j, Integer(static_cast<long>(d[i][j]))});
      }
    auto s = linalg::smith_normal_form(linalg::SparseIntegerMatrix::from_triplets(r, c, e));
    auto want = oracle::invariant_factors(d);
    std::vector<long long> got;
    for (const auto& x : s.invariant_factors) got.push_back(x.get_si());
    o.require(got == want && s.rank == want.size(), "SNF trial " + std::to_string(t));
    ++snf;
  }
  o.detail << complexes_checked << " complexes (d^2 = 0, Euler), " << delta_checked << " delta sets, " << cones
           << " cones (LES ranks), " << snf << " SNF comparisons";
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  status = pclose(pipe);
  return out;
}

void ac10(Outcome& o, const std::string& cli) {
  if (cli.empty()) {
    o.require(false, "no CLI path given");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "hstab_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream(dir / "m2.txt") << "2 2 2\n0 0 1\n1 1 1\n";
    std::ofstream(dir / "tri.json") << R"({"levels":[3,3,1],"faces":{"1":[[1,0],[2,0],[2,1]],"2":[[2,1,0]]}})";
  }
  const std::string d = dir.string();
  const std::vector<std::string> commands = {
      "homology braid -n 5 --coeffs trivial-z",
      "homology alt-braid -n 4 --coeffs z",
      "homology braid -n 4 --coeffs sign-fp:3",
      "stability --family braid --nmax 9 --qmax 3",
      "stability --family alt-braid --nmax 9 --qmax 3 --jobs 2",
      "stability --family sign-fp:3 --nmax 8 --qmax 2",
      "injective-words -n 4 --verify",
      "ss --input " + d + "/tri.json --prime 3 --page inf",
      "ss --input " + d + "/tri.json --prime 2 --page 1",
      "group-homology --group A4 --deg 1",
      "group-homology --group A4 --deg 1 --into A5",
      "snf --input " + d + "/m2.txt",
      "counterexample -p 3 --lambda 1",
  };
  std::size_t compared = 0;
  for (const auto& cmd : commands) {
    int s1 = 0, s2 = 0, s3 = 0;
    const std::string base = "'" + cli + "' --no-timing --format json ";
    const auto cold = capture(base + "--cache-dir " + d + "/cache " + cmd, s1);
    const auto warm = capture(base + "--cache-dir " + d + "/cache " + cmd, s2);
    const auto none = capture(base + "--no-cache " + cmd, s3);
    o.require(s1 == 0 && s2 == 0 && s3 == 0, cmd + ": nonzero exit");
    o.require(!cold.empty() && cold == warm && warm == none, cmd + ": reports differ");
    ++compared;
  }
  fs::remove_all(dir);
  o.detail << compared << " commands: cold cache, warm cache and no cache give byte-identical JSON";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  using Fn = std::function<void(Outcome&)>;
  const std::vector<std::pair<std::string, Fn>> criteria = {
      {"AC1 injective-words resolution", ac1},
      {"AC2 unordered stability",
       [](Outcome& o) { stability_ac(o, confspace::Family::Unordered, 12, 4, "trivial-z"); }},
      {"AC3 oriented stability", [](Outcome& o) { stability_ac(o, confspace::Family::Oriented, 12, 3, "regular-z"); }},
      {"AC4 mod-p splitting", ac4},
      {"AC5 sign-twisted counterexamples", ac5},
      {"AC6 alternating groups", ac6},
      {"AC7 +-s interchangeability", ac7},
      {"AC8 spectral-sequence convergence", ac8},
      {"AC9 structural properties", ac9},
      {"AC10 determinism", [&cli](Outcome& o) { ac10(o, cli); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail.str();
    for (const auto& f : o.failures) std::cout << " [" << f << "]";
    std::printf(" (%.2fs)\n", secs);
    std::cout.flush();
    if (!o.ok) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failed ? 1 : 0;
}
