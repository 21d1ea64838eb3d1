#include "periodica/patterns.hpp"

#include <algorithm>
#include <cmath>

#include "periodica/csv.hpp"
#include "periodica/errors.hpp"

namespace periodica {

namespace {

struct Placed {
  std::string symbol;
  int group = 0;
  int period = 0;
};

// Members that sit in the main block, sorted by (period, group) so pair
// generation is deterministic.
std::vector<Placed> place_members(const LayoutFixture& layout,
                                  const std::vector<std::string>& members) {
  std::vector<Placed> placed;
  for (const auto& s : members) {
    auto z = layout.atomic_number(s);
    if (!z) throw InputError("symbol '" + s + "' is not in the layout");
    TableCell cell = layout.coordinates(*z);
    if (!cell.group) continue;  // f-block has no (group, period) cell
    placed.push_back({s, *cell.group, cell.period});
  }
  std::sort(placed.begin(), placed.end(), [](const Placed& a, const Placed& b) {
    if (a.period != b.period) return a.period < b.period;
    if (a.group != b.group) return a.group < b.group;
    return a.symbol < b.symbol;
  });
  return placed;
}

const Placed* find_cell(const std::vector<Placed>& placed, int group, int period) {
  for (const auto& p : placed)
    if (p.group == group && p.period == period) return &p;
  return nullptr;
}

std::vector<PatternPair> offset_pairs(const LayoutFixture& layout,
                                      const std::vector<std::string>& members,
                                      PatternKind kind, int dg, int dp,
                                      bool period2_only) {
  auto placed = place_members(layout, members);
  std::vector<PatternPair> out;
  for (const auto& a : placed) {
    if (period2_only && a.period != 2) continue;
    const Placed* b = find_cell(placed, a.group + dg, a.period + dp);
    if (!b) continue;
    out.push_back({kind,
                   a.symbol,
                   b->symbol,
                   {a.group, a.period},
                   {b->group, b->period}});
  }
  return out;
}

}  // namespace

std::vector<PatternPair> diagonal_pairs(const LayoutFixture& layout,
                                        const std::vector<std::string>& members,
                                        bool widen) {
  return offset_pairs(layout, members, PatternKind::Diagonal, 1, 1, !widen);
}

std::vector<PatternPair> knights_move_pairs(const LayoutFixture& layout,
                                            const std::vector<std::string>& members) {
  return offset_pairs(layout, members, PatternKind::KnightsMove, 2, 1, false);
}

std::vector<PatternPair> secondary_periodicity_pairs(
    const LayoutFixture& layout, const std::vector<std::string>& members) {
  return offset_pairs(layout, members, PatternKind::SecondaryPeriodicity, 0, 2, false);
}

std::vector<std::string> singularity_flags(const LayoutFixture& layout,
                                           const std::vector<std::string>& members) {
  std::vector<std::string> out;
  for (const auto& p : place_members(layout, members))
    if (p.period == 2) out.push_back(p.symbol);
  return out;
}

std::vector<std::string> inert_pair_candidates(const LayoutFixture& layout,
                                               const std::vector<std::string>& members) {
  std::vector<std::string> out;
  for (const auto& p : place_members(layout, members))
    if (p.group >= 13 && p.group <= 16 && p.period >= 5) out.push_back(p.symbol);
  return out;
}

PatternScore pattern_score(const std::vector<PatternPair>& pairs,
                           const Dendrogram& tree, double quantile) {
  if (!(quantile > 0.0 && quantile <= 1.0))
    throw InputError("quantile must lie in (0, 1]");
  const int n = tree.leaf_count();
  if (n < 2) throw InputError("scoring needs a tree with at least 2 leaves");

  auto coph = tree.cophenetic_matrix();
  std::vector<double> all;
  all.reserve(static_cast<size_t>(n) * (static_cast<size_t>(n) - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.push_back(coph.at(i, j));
  std::sort(all.begin(), all.end());
  size_t idx = static_cast<size_t>(std::ceil(quantile * static_cast<double>(all.size())));
  if (idx == 0) idx = 1;
  double threshold = all[idx - 1];

  PatternScore score;
  score.threshold = threshold;
  int confirmed = 0;
  for (const auto& pair : pairs) {
    int a = tree.leaf_index(pair.first);
    int b = tree.leaf_index(pair.second);
    double d = coph.at(a, b);
    bool ok = d <= threshold;
    if (ok) ++confirmed;
    score.verdicts.push_back({pair, d, ok});
  }
  score.fraction = pairs.empty() ? 0.0
                                 : static_cast<double>(confirmed) /
                                       static_cast<double>(pairs.size());
  return score;
}

PettiforScale::PettiforScale(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (!rank_.emplace(symbols_[i], static_cast<int>(i) + 1).second)
      throw std::logic_error("duplicate symbol in Pettifor scale: " + symbols_[i]);
  }
}

const PettiforScale& PettiforScale::standard() {
  // The published phenomenological sequence. Note the rare earths run in
  // reverse atomic-number order and H sits at the very end.
  static const PettiforScale scale(std::vector<std::string>{
      "He", "Ne", "Ar", "Kr", "Xe", "Rn", "Fr", "Cs", "Rb", "K",  "Na", "Li",
      "Ra", "Ba", "Sr", "Ca", "Yb", "Eu", "Sc", "Lu", "Tm", "Er", "Ho", "Dy",
      "Tb", "Gd", "Sm", "Pm", "Nd", "Pr", "Ce", "La", "Lr", "No", "Md", "Fm",
      "Es", "Cf", "Bk", "Cm", "Am", "Pu", "Np", "U",  "Pa", "Th", "Ac", "Zr",
      "Hf", "Ti", "Ta", "Nb", "V",  "W",  "Mo", "Cr", "Re", "Tc", "Mn", "Fe",
      "Ru", "Os", "Co", "Rh", "Ir", "Ni", "Pt", "Pd", "Au", "Ag", "Cu", "Mg",
      "Hg", "Cd", "Zn", "Be", "Tl", "In", "Al", "Ga", "Pb", "Sn", "Ge", "Si",
      "B",  "Bi", "Sb", "As", "P",  "Po", "Te", "Se", "S",  "C",  "At", "I",
      "Br", "Cl", "N",  "O",  "F",  "H"});
  return scale;
}

bool PettiforScale::contains(std::string_view symbol) const {
  return rank_.find(symbol) != rank_.end();
}

int PettiforScale::rank(std::string_view symbol) const {
  auto it = rank_.find(symbol);
  if (it == rank_.end())
    throw InputError("'" + std::string(symbol) + "' is not on the Pettifor scale");
  return it->second;
}

const std::string& PettiforScale::at_rank(int rank) const {
  if (rank < 1 || rank > size())
    throw InputError("Pettifor rank must be in 1.." + std::to_string(size()));
  return symbols_[static_cast<size_t>(rank - 1)];
}

StructureMapResult structure_map(std::istream& compounds_csv,
                                 const PettiforScale& scale) {
  auto rows = csv::read(compounds_csv);
  if (rows.empty()) return {};
  size_t first = 0;
  if (rows[0] == std::vector<std::string>{"elementA", "elementB", "structure"})
    first = 1;
  StructureMapResult result;
  for (size_t r = first; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != 3) {
      result.row_errors.push_back("row " + std::to_string(r + 1) +
                                  ": expected 3 cells, got " +
                                  std::to_string(cells.size()));
      continue;
    }
    if (!scale.contains(cells[0]) || !scale.contains(cells[1])) {
      const std::string& bad = scale.contains(cells[0]) ? cells[1] : cells[0];
      result.row_errors.push_back("row " + std::to_string(r + 1) +
                                  ": unknown element symbol '" + bad + "'");
      continue;
    }
    result.points.push_back({scale.rank(cells[0]), scale.rank(cells[1]), cells[2]});
  }
  return result;
}

}  // namespace periodica
