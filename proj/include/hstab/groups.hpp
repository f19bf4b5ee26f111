#pragma once

// Homology of small permutation groups from the bar complex.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hstab/complexes.hpp"

namespace hstab::groups {

using complexes::ChainComplex;
using complexes::HomologyGroup;

/// Images of 0..n-1.
using Permutation = std::vector<std::uint8_t>;

/// "(1 2 3)(4 5)" style, 1-based; "()" for the identity.
std::string to_cycle_string(const Permutation& p);
/// Parses one product of cycles on `degree` letters (degree 0: the largest letter used).
Permutation parse_cycles(std::string_view text, std::size_t degree = 0);

class FiniteGroup {
 public:
  /// Closure of the generators; ResourceLimitError past limits.max_group_order.
  static FiniteGroup generated_by(std::vector<Permutation> generators, std::size_t degree, std::string name,
                                  const Limits& limits = {});

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  std::size_t identity() const { return identity_; }
  /// Index of (a then b): x ↦ b(a(x)) is written a·b.
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  /// Index of p, if it is an element.
  std::optional<std::size_t> find(const Permutation& p) const;
  const std::vector<Permutation>& generators() const { return generators_; }

 private:
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;  // sorted
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

FiniteGroup symmetric_group(std::size_t n, const Limits& limits = {});
FiniteGroup alternating_group(std::size_t n, const Limits& limits = {});
/// "A4", "S5", or cycle-notation generators separated by commas, e.g. "(1 2 3),(1 2)".
FiniteGroup parse_group(std::string_view spec, const Limits& limits = {});

/// Unnormalized bar complex with trivial Z coefficients in degrees 0..top;
/// degree k has |G|^k generators. ResourceLimitError when |G|^top exceeds
/// limits.max_bar_chains.
ChainComplex bar_complex(const FiniteGroup& g, int top, const Limits& limits = {});

/// H_q(G; Z) from the bar complex truncated at degree top (q < top; top = -1 means q + 1).
HomologyGroup group_homology(const FiniteGroup& g, int q, int top = -1, const Context& ctx = {});

/// Homomorphism given on elements: images[i] is the index in the target of element i.
struct GroupHomomorphism {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<std::size_t> images;
};

/// Adds fixed letters to each element of g; ArgumentError when a result is not in h.
GroupHomomorphism inclusion(const FiniteGroup& g, const FiniteGroup& h);
/// ArgumentError unless images respect multiplication.
void validate_homomorphism(const GroupHomomorphism& f);

complexes::ChainMap bar_map(const GroupHomomorphism& f, int top, const Limits& limits = {});
complexes::InducedMap induced_map(const GroupHomomorphism& f, int q, int top = -1, const Context& ctx = {});

}  // namespace hstab::groups
