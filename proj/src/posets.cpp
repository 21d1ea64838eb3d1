#include "periodica/posets.hpp"

#include <algorithm>

#include "periodica/errors.hpp"

namespace periodica {

namespace {

std::map<std::string, int, std::less<>> index_items(
    const std::vector<std::string>& ground) {
  std::map<std::string, int, std::less<>> pos;
  for (size_t i = 0; i < ground.size(); ++i) {
    if (!pos.emplace(ground[i], static_cast<int>(i)).second)
      throw InputError("duplicate item '" + ground[i] + "' in ground set");
  }
  return pos;
}

std::vector<std::vector<char>> relation_matrix(
    const std::vector<std::string>& ground,
    const std::map<std::string, int, std::less<>>& pos,
    const std::vector<ItemPair>& relation) {
  std::vector<std::vector<char>> m(ground.size(),
                                   std::vector<char>(ground.size(), 0));
  for (const auto& [a, b] : relation) {
    auto ia = pos.find(a);
    auto ib = pos.find(b);
    if (ia == pos.end() || ib == pos.end())
      throw InputError("relation pair (" + a + ", " + b +
                       ") references an item outside the ground set");
    m[static_cast<size_t>(ia->second)][static_cast<size_t>(ib->second)] = 1;
  }
  return m;
}

}  // namespace

OrderCheck verify_partial_order(const std::vector<std::string>& ground,
                                const std::vector<ItemPair>& relation) {
  auto pos = index_items(ground);
  auto m = relation_matrix(ground, pos, relation);
  const size_t n = ground.size();
  for (size_t i = 0; i < n; ++i)
    if (!m[i][i]) return {false, "reflexivity", {ground[i]}};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (m[i][j] && m[j][i])
        return {false, "antisymmetry", {ground[i], ground[j]}};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!m[i][j]) continue;
      for (size_t k = 0; k < n; ++k)
        if (m[j][k] && !m[i][k])
          return {false, "transitivity", {ground[i], ground[j], ground[k]}};
    }
  return {true, "", {}};
}

Poset::Poset(std::vector<std::string> ground, const std::vector<ItemPair>& leq)
    : ground_(std::move(ground)) {
  index();
  leq_ = relation_matrix(ground_, pos_, leq);
  for (size_t i = 0; i < ground_.size(); ++i) leq_[i][i] = 1;
  std::vector<ItemPair> pairs = relation_pairs();
  auto check = verify_partial_order(ground_, pairs);
  if (!check.ok) throw InputError("relation is not a partial order: violates " + check.axiom);
}

void Poset::index() { pos_ = index_items(ground_); }

int Poset::index_of(std::string_view item) const {
  auto it = pos_.find(item);
  if (it == pos_.end())
    throw InputError("item '" + std::string(item) + "' is not in the poset");
  return it->second;
}

bool Poset::leq(std::string_view a, std::string_view b) const {
  return leq(index_of(a), index_of(b));
}

std::vector<ItemPair> Poset::relation_pairs() const {
  std::vector<ItemPair> pairs;
  for (size_t i = 0; i < ground_.size(); ++i)
    for (size_t j = 0; j < ground_.size(); ++j)
      if (leq_[i][j]) pairs.emplace_back(ground_[i], ground_[j]);
  return pairs;
}

Poset closure_poset(std::vector<std::string> ground,
                    const std::vector<ItemPair>& pairs) {
  Poset p;
  p.ground_ = std::move(ground);
  p.index();
  p.leq_ = relation_matrix(p.ground_, p.pos_, pairs);
  const size_t n = p.ground_.size();
  for (size_t i = 0; i < n; ++i) p.leq_[i][i] = 1;
  // Warshall closure.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (!p.leq_[i][k]) continue;
      for (size_t j = 0; j < n; ++j)
        if (p.leq_[k][j]) p.leq_[i][j] = 1;
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (p.leq_[i][j] && p.leq_[j][i])
        throw InputError("cover closure contains a cycle through '" +
                         p.ground_[i] + "' and '" + p.ground_[j] + "'");
  return p;
}

std::string HasseDiagram::to_dot() const {
  std::string out = "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (const auto& item : ground) out += "  \"" + item + "\";\n";
  for (const auto& [a, b] : covers) out += "  \"" + a + "\" -> \"" + b + "\";\n";
  out += "}\n";
  return out;
}

HasseDiagram hasse(const Poset& poset) {
  HasseDiagram d;
  d.ground = poset.ground();
  const int n = poset.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !poset.leq(i, j)) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k) {
        if (k == i || k == j) continue;
        if (poset.leq(i, k) && poset.leq(k, j)) cover = false;
      }
      if (cover) d.covers.emplace_back(d.ground[static_cast<size_t>(i)],
                                       d.ground[static_cast<size_t>(j)]);
    }
  return d;
}

Poset dominance_poset(const PropertyTable& table,
                      const std::vector<std::string>& properties,
                      const std::map<std::string, Orientation>& orientation) {
  if (properties.empty()) throw InputError("dominance order needs at least one property");
  std::vector<int> prop_idx;
  std::vector<double> sign;
  for (const auto& name : properties) {
    prop_idx.push_back(table.property_index(name));
    auto it = orientation.find(name);
    sign.push_back(it != orientation.end() && it->second == Orientation::Descending
                       ? -1.0
                       : 1.0);
  }
  for (const auto& [name, o] : orientation) {
    (void)o;
    if (std::find(properties.begin(), properties.end(), name) == properties.end())
      throw InputError("orientation given for unselected property '" + name + "'");
  }

  const auto& elements = table.elements();
  const size_t n = elements.size();
  std::vector<ItemPair> pairs;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool comparable = true;
      bool all_le = true;
      bool all_ge = true;
      for (size_t c = 0; c < prop_idx.size(); ++c) {
        const auto& vi = elements[i].values[static_cast<size_t>(prop_idx[c])];
        const auto& vj = elements[j].values[static_cast<size_t>(prop_idx[c])];
        if (!vi || !vj) {
          comparable = false;
          break;
        }
        double a = sign[c] * *vi;
        double b = sign[c] * *vj;
        if (a > b) all_le = false;
        if (a < b) all_ge = false;
      }
      // Identical vectors stay incomparable so antisymmetry survives ties.
      if (comparable && all_le && !all_ge)
        pairs.emplace_back(elements[i].symbol, elements[j].symbol);
    }
  }
  return Poset(table.symbols(), pairs);
}

PositionalPoset positional_poset(const LayoutFixture& layout,
                                 const std::vector<std::string>& symbols) {
  std::vector<std::string> members;
  std::vector<TableCell> cells;
  std::vector<std::string> excluded;
  for (const auto& s : symbols) {
    auto z = layout.atomic_number(s);
    if (!z) throw InputError("symbol '" + s + "' is not in the layout");
    TableCell cell = layout.coordinates(*z);
    if (!cell.group) {
      excluded.push_back(s);
      continue;
    }
    members.push_back(s);
    cells.push_back(cell);
  }
  std::vector<ItemPair> pairs;
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = 0; j < members.size(); ++j) {
      if (i == j) continue;
      if (*cells[i].group <= *cells[j].group && cells[i].period <= cells[j].period)
        pairs.emplace_back(members[i], members[j]);
    }
  return {Poset(std::move(members), pairs), std::move(excluded)};
}

MonotonicityReport monotonicity_report(const PropertyTable& table,
                                       const std::string& property,
                                       Orientation orientation,
                                       const LayoutFixture& layout) {
  int p = table.property_index(property);
  auto positional = positional_poset(layout, table.symbols());
  auto covers = hasse(positional.poset).covers;

  MonotonicityReport report;
  report.excluded = std::move(positional.excluded);
  int monotone = 0;
  for (const auto& [a, b] : covers) {
    const auto& va = table.find_symbol(a)->values[static_cast<size_t>(p)];
    const auto& vb = table.find_symbol(b)->values[static_cast<size_t>(p)];
    if (!va || !vb) continue;
    ++report.evaluated;
    bool ok = orientation == Orientation::Ascending ? *va <= *vb : *va >= *vb;
    if (ok)
      ++monotone;
    else
      report.violations.emplace_back(a, b);
  }
  report.fraction = report.evaluated == 0
                        ? 1.0
                        : static_cast<double>(monotone) / report.evaluated;
  return report;
}

std::uint64_t linear_extension_count(const Poset& poset) {
  const int n = poset.size();
  if (n > 10)
    throw InputError("linear extension count is restricted to <= 10 items, got " +
                     std::to_string(n));
  // Downset DP: extensions(S) = sum over maximal-in-S removable items.
  std::vector<std::uint64_t> ways(static_cast<size_t>(1) << n, 0);
  ways[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint64_t total = 0;
    for (int last = 0; last < n; ++last) {
      if (!(mask & (1u << last))) continue;
      // `last` can be placed last iff nothing above it remains in the set.
      bool maximal = true;
      for (int other = 0; other < n && maximal; ++other)
        if (other != last && (mask & (1u << other)) && poset.leq(last, other))
          maximal = false;
      if (maximal) total += ways[mask ^ (1u << last)];
    }
    ways[mask] = total;
  }
  return ways[(static_cast<size_t>(1) << n) - 1];
}

}  // namespace periodica
