#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "periodica/element_data.hpp"

namespace periodica {

using ItemPair = std::pair<std::string, std::string>;

// Axiom check for a raw relation. On failure names the first violated
// axiom in the order reflexivity, antisymmetry, transitivity, with a
// witness tuple.
struct OrderCheck {
  bool ok = true;
  std::string axiom;                  // empty when ok
  std::vector<std::string> witness;   // offending items
};
OrderCheck verify_partial_order(const std::vector<std::string>& ground,
                                const std::vector<ItemPair>& relation);

// A finite poset. Construction adds the reflexive pairs and rejects
// relations violating antisymmetry or transitivity.
class Poset {
 public:
  Poset(std::vector<std::string> ground, const std::vector<ItemPair>& leq);

  const std::vector<std::string>& ground() const { return ground_; }
  int size() const { return static_cast<int>(ground_.size()); }
  int index_of(std::string_view item) const;  // throws InputError
  bool leq(int a, int b) const { return leq_[a][b]; }
  bool leq(std::string_view a, std::string_view b) const;
  std::vector<ItemPair> relation_pairs() const;  // includes reflexive pairs

 private:
  friend Poset closure_poset(std::vector<std::string>, const std::vector<ItemPair>&);
  Poset() = default;
  void index();
  std::vector<std::string> ground_;
  std::vector<std::vector<char>> leq_;
  std::map<std::string, int, std::less<>> pos_;
};

// Reflexive-transitive closure of arbitrary pairs (e.g. Hasse covers).
// Cycles through distinct items violate antisymmetry and are rejected.
Poset closure_poset(std::vector<std::string> ground,
                    const std::vector<ItemPair>& pairs);

struct HasseDiagram {
  std::vector<std::string> ground;
  std::vector<ItemPair> covers;
  std::string to_dot() const;
};

// Transitive reduction of the strict part of the order.
HasseDiagram hasse(const Poset& poset);

enum class Orientation { Ascending, Descending };

// Dominance order on the table's elements: a <= b iff every selected
// property (after orientation flip) satisfies value(a) <= value(b).
// A pair with any missing selected value is incomparable, and so are
// distinct elements with identical value vectors (preserves antisymmetry).
Poset dominance_poset(const PropertyTable& table,
                      const std::vector<std::string>& properties,
                      const std::map<std::string, Orientation>& orientation = {});

// Product order on conventional table coordinates:
// a <= b iff group(a) <= group(b) and period(a) <= period(b).
// Members without a group (f-block) are excluded and reported.
struct PositionalPoset {
  Poset poset;
  std::vector<std::string> excluded;
};
PositionalPoset positional_poset(const LayoutFixture& layout,
                                 const std::vector<std::string>& symbols);

// How often a property is monotone along the cover pairs of the positional
// poset, under non-strict comparison (equal values count as monotone).
// Covers missing either value are skipped; with nothing to evaluate the
// fraction is vacuously 1.
struct MonotonicityReport {
  double fraction = 1.0;
  int evaluated = 0;
  std::vector<ItemPair> violations;
  std::vector<std::string> excluded;  // f-block members left out
};
MonotonicityReport monotonicity_report(const PropertyTable& table,
                                       const std::string& property,
                                       Orientation orientation,
                                       const LayoutFixture& layout);

// Exact number of linear extensions by exhaustive enumeration over
// downsets; restricted to |ground| <= 10.
std::uint64_t linear_extension_count(const Poset& poset);

}  // namespace periodica
