#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace periodica {

struct ChemicalElement {
  int atomic_number = 0;
  std::string symbol;
  std::optional<int> group;   // 1..18, absent for the f-block
  std::optional<int> period;  // 1..8
  // Property values parallel to PropertyTable::property_names(); absent
  // entries are genuinely missing measurements, never imputed.
  std::vector<std::optional<double>> values;
};

// An element property table loaded from CSV with header
//   Z,symbol,group,period,<prop1>,...
// Property header cells may carry a unit in brackets: "density [g/cm3]".
// Atomic numbers and symbols are unique; row order is preserved.
class PropertyTable {
 public:
  static PropertyTable load(std::istream& in);
  static PropertyTable load_file(const std::string& path);

  // Canonical CSV emission: '\n' line endings, shortest round-trip number
  // formatting, missing values as empty cells. load(emit()) reproduces the
  // table exactly and emit() is then byte-stable.
  std::string emit() const;

  const std::vector<ChemicalElement>& elements() const { return elements_; }
  const std::vector<std::string>& property_names() const { return names_; }
  const std::string& unit(std::string_view property) const;

  int property_index(std::string_view name) const;  // throws InputError
  const ChemicalElement* find_symbol(std::string_view symbol) const;
  const ChemicalElement* find_z(int atomic_number) const;
  std::vector<std::string> symbols() const;

 private:
  std::vector<ChemicalElement> elements_;
  std::vector<std::string> names_;
  std::vector<std::string> units_;  // parallel to names_
  std::unordered_map<std::string, int> by_symbol_;
  std::unordered_map<int, int> by_z_;
};

struct TableCell {
  std::optional<int> group;
  int period = 0;
  bool operator==(const TableCell&) const = default;
};

// Conventional 18-column table positions for Z = 1..103. Lanthanides
// (57-71) and actinides (89-103) carry a period but no group.
class LayoutFixture {
 public:
  static const LayoutFixture& conventional();
  static LayoutFixture load(std::istream& in);  // the layout.csv resource

  TableCell coordinates(int atomic_number) const;  // throws InputError
  std::optional<TableCell> find(int atomic_number) const;
  const std::string& symbol(int atomic_number) const;        // throws
  std::optional<int> atomic_number(std::string_view symbol) const;
  int max_atomic_number() const { return max_z_; }
  bool operator==(const LayoutFixture&) const = default;

 private:
  struct Entry {
    std::string symbol;
    TableCell cell;
    bool operator==(const Entry&) const = default;
  };
  std::vector<std::optional<Entry>> by_z_;  // index = Z
  std::unordered_map<std::string, int> by_symbol_;
  int max_z_ = 0;

  void insert(int z, std::string symbol, std::optional<int> group, int period);
};

// Column-standardized view of selected properties: each column has mean 0
// and unit sample (n-1) standard deviation over its non-missing entries.
// Missing entries stay missing.
struct StandardizedMatrix {
  std::vector<std::string> item_ids;  // element symbols, table order
  std::vector<std::string> properties;
  std::vector<std::vector<std::optional<double>>> rows;  // [item][property]
};

StandardizedMatrix standardize(const PropertyTable& table,
                               const std::vector<std::string>& selected);

// Same selection without scaling, for pipelines that want raw columns.
StandardizedMatrix raw_columns(const PropertyTable& table,
                               const std::vector<std::string>& selected);

// Property selection the CLI uses when --props is not given: the bulk
// cohesion profile of the bundled fixture (see data/PROVENANCE.md).
const std::vector<std::string>& default_analysis_properties();

}  // namespace periodica
