#include "hstab/complexes.hpp"
#include "hstab/error.hpp"

namespace hstab::complexes {

namespace {

struct BoundaryData {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

BoundaryData reduce_boundary(const ChainComplex& c, int q, const Context& ctx) {
  const auto& d = c.boundary(q);
  BoundaryData out;
  if (d.is_zero()) return out;
  if (c.ring().kind == Ring::Kind::Fp) {
    out.rank = linalg::rank_mod_p(d, c.ring().p, ctx);
    return out;
  }
  auto snf = linalg::smith_normal_form(d, ctx);
  out.rank = snf.rank;
  for (auto& f : snf.invariant_factors)
    if (f > 1) out.torsion.push_back(std::move(f));
  return out;
}

HomologyGroup assemble(const ChainComplex& c, int q, const BoundaryData& in, const BoundaryData& out) {
  HomologyGroup h;
  h.field = c.ring().kind == Ring::Kind::Fp ? c.ring().p : 0;
  h.free_rank = c.rank(q) - in.rank - out.rank;
  h.torsion = out.torsion;
  return h;
}

void require_pid(const ChainComplex& c) {
  if (c.ring().kind == Ring::Kind::ZC2)
    throw ArgumentError("homology over Z[Z/2] is not computed directly; specialize to a coefficient module first");
}

}  // namespace

HomologyGroup homology(const ChainComplex& c, int q, const Context& ctx) {
  require_pid(c);
  HomologyGroup zero;
  zero.field = c.ring().kind == Ring::Kind::Fp ? c.ring().p : 0;
  if (q < c.qmin() || q > c.qmax() || c.rank(q) == 0) return zero;
  return assemble(c, q, reduce_boundary(c, q, ctx), reduce_boundary(c, q + 1, ctx));
}

std::vector<HomologyGroup> homology_range(const ChainComplex& c, int lo, int hi, const Context& ctx) {
  require_pid(c);
  std::vector<HomologyGroup> out;
  if (hi < lo) return out;
  std::vector<BoundaryData> d;
  for (int q = lo; q <= hi + 1; ++q)
    d.push_back(q >= c.qmin() && q <= c.qmax() + 1 && c.rank(q) && c.rank(q - 1) ? reduce_boundary(c, q, ctx)
                                                                                 : BoundaryData{});
  for (int q = lo; q <= hi; ++q) {
    const auto i = static_cast<std::size_t>(q - lo);
    out.push_back(assemble(c, q, d[i], d[i + 1]));
  }
  return out;
}

}  // namespace hstab::complexes
