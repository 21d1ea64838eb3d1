#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "periodica/chemotopology.hpp"
#include "periodica/element_data.hpp"

namespace periodica {

// Positional similarity patterns on the conventional table, as fixed
// (group, period) offsets.
enum class PatternKind { Diagonal, KnightsMove, SecondaryPeriodicity };

struct PatternPair {
  PatternKind kind;
  std::string first, second;
  TableCell first_cell, second_cell;
};

// (g, m) -> (g+1, m+1). By default only pairs rooted in period 2 (the
// classical diagonal relationships); `widen` admits every period.
std::vector<PatternPair> diagonal_pairs(const LayoutFixture& layout,
                                        const std::vector<std::string>& members,
                                        bool widen = false);

// (g, m) -> (g+2, m+1). The same-oxidation-state qualifier of the textbook
// definition is not modeled; these are positional candidates.
std::vector<PatternPair> knights_move_pairs(const LayoutFixture& layout,
                                            const std::vector<std::string>& members);

// Same group, periods m and m+2.
std::vector<PatternPair> secondary_periodicity_pairs(
    const LayoutFixture& layout, const std::vector<std::string>& members);

// Period-2 members: the expected within-group outliers.
std::vector<std::string> singularity_flags(const LayoutFixture& layout,
                                           const std::vector<std::string>& members);

// Groups 13-16, period >= 5: candidates for the reduced oxidation state.
std::vector<std::string> inert_pair_candidates(const LayoutFixture& layout,
                                               const std::vector<std::string>& members);

// Scores pattern pairs against a dendrogram: a pair is confirmed when its
// cophenetic distance falls within the lowest `quantile` of all pairwise
// cophenetic distances. Every pair member must be a leaf.
struct PairVerdict {
  PatternPair pair;
  double cophenetic = 0.0;
  bool confirmed = false;
};
struct PatternScore {
  double fraction = 0.0;   // confirmed / total
  double threshold = 0.0;  // cophenetic value at the quantile
  std::vector<PairVerdict> verdicts;
};
PatternScore pattern_score(const std::vector<PatternPair>& pairs,
                           const Dendrogram& tree, double quantile = 0.25);

// The phenomenological Pettifor order of the elements, used as the axis of
// crystal-structure maps. Rank 1 is He; the sequence ends N, O, F, H.
class PettiforScale {
 public:
  static const PettiforScale& standard();

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  bool contains(std::string_view symbol) const;
  int rank(std::string_view symbol) const;  // 1-based, throws InputError
  const std::string& at_rank(int rank) const;

 private:
  explicit PettiforScale(std::vector<std::string> symbols);
  std::vector<std::string> symbols_;
  std::map<std::string, int, std::less<>> rank_;
};

// Plot-ready structure-map points from a compounds CSV with header
// `elementA,elementB,structure`. Rows naming elements outside the scale
// are collected in row_errors; valid rows are still emitted.
struct StructurePoint {
  int x = 0;
  int y = 0;
  std::string label;
};
struct StructureMapResult {
  std::vector<StructurePoint> points;
  std::vector<std::string> row_errors;
};
StructureMapResult structure_map(std::istream& compounds_csv,
                                 const PettiforScale& scale);

}  // namespace periodica
