#include "periodica/element_data.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "periodica/csv.hpp"
#include "periodica/errors.hpp"

namespace periodica {

namespace {

// Splits a property header cell "name [unit]" into name and unit.
std::pair<std::string, std::string> split_unit(const std::string& cell) {
  size_t open = cell.rfind(" [");
  if (open != std::string::npos && cell.back() == ']')
    return {cell.substr(0, open), cell.substr(open + 2, cell.size() - open - 3)};
  return {cell, ""};
}

std::optional<int> parse_optional_int(const std::string& cell, int lo, int hi,
                                      const std::string& what, size_t row) {
  if (cell.empty()) return std::nullopt;
  long long v = 0;
  if (!csv::parse_int(cell, v) || v < lo || v > hi)
    throw InputError("row " + std::to_string(row) + ": " + what + " '" + cell +
                     "' is not an integer in " + std::to_string(lo) + ".." +
                     std::to_string(hi));
  return static_cast<int>(v);
}

constexpr std::array<const char*, 103> kSymbols = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr"};

// Conventional cell of Z in the 18-column table; group absent for the
// f-block rows 57-71 and 89-103.
TableCell conventional_cell(int z) {
  auto cell = [](std::optional<int> g, int p) { return TableCell{g, p}; };
  if (z == 1) return cell(1, 1);
  if (z == 2) return cell(18, 1);
  if (z <= 10) return cell(z - 2 <= 2 ? z - 2 : z + 8, 2);
  if (z <= 18) return cell(z - 10 <= 2 ? z - 10 : z, 3);
  if (z <= 36) return cell(z - 18, 4);
  if (z <= 54) return cell(z - 36, 5);
  if (z <= 56) return cell(z - 54, 6);
  if (z <= 71) return cell(std::nullopt, 6);
  if (z <= 86) return cell(z - 68, 6);
  if (z <= 88) return cell(z - 86, 7);
  return cell(std::nullopt, 7);
}

}  // namespace

PropertyTable PropertyTable::load(std::istream& in) {
  auto rows = csv::read(in);
  if (rows.empty()) throw InputError("empty table: no header row");
  const auto& header = rows[0];
  if (header.size() < 4 || header[0] != "Z" || header[1] != "symbol" ||
      header[2] != "group" || header[3] != "period")
    throw InputError("table header must start with Z,symbol,group,period");
  if (header.size() == 4)
    throw InputError("table declares no properties");
  if (rows.size() == 1) throw InputError("table has no element rows");

  PropertyTable table;
  for (size_t c = 4; c < header.size(); ++c) {
    auto [name, unit] = split_unit(header[c]);
    if (name.empty())
      throw InputError("empty property name in header column " + std::to_string(c + 1));
    for (const auto& existing : table.names_)
      if (existing == name) throw InputError("duplicate property name '" + name + "'");
    table.names_.push_back(name);
    table.units_.push_back(unit);
  }

  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != header.size())
      throw InputError("row " + std::to_string(r + 1) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    ChemicalElement e;
    long long z = 0;
    if (!csv::parse_int(cells[0], z) || z < 1)
      throw InputError("row " + std::to_string(r + 1) + ": atomic number '" +
                       cells[0] + "' is not a positive integer");
    e.atomic_number = static_cast<int>(z);
    if (cells[1].empty())
      throw InputError("row " + std::to_string(r + 1) + ": empty symbol");
    e.symbol = cells[1];
    e.group = parse_optional_int(cells[2], 1, 18, "group", r + 1);
    e.period = parse_optional_int(cells[3], 1, 8, "period", r + 1);
    for (size_t c = 4; c < cells.size(); ++c) {
      if (cells[c].empty()) {
        e.values.emplace_back(std::nullopt);
        continue;
      }
      double v = 0;
      if (!csv::parse_double(cells[c], v) || !std::isfinite(v))
        throw InputError("row " + std::to_string(r + 1) + ", column '" +
                         table.names_[c - 4] + "': malformed numeric cell '" +
                         cells[c] + "'");
      e.values.emplace_back(v);
    }
    if (table.by_z_.count(e.atomic_number))
      throw InputError("duplicate atomic number " + std::to_string(e.atomic_number) +
                       " (symbol '" + e.symbol + "')");
    if (table.by_symbol_.count(e.symbol))
      throw InputError("duplicate symbol '" + e.symbol + "'");
    table.by_z_[e.atomic_number] = static_cast<int>(table.elements_.size());
    table.by_symbol_[e.symbol] = static_cast<int>(table.elements_.size());
    table.elements_.push_back(std::move(e));
  }
  return table;
}

PropertyTable PropertyTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table file '" + path + "'");
  return load(in);
}

std::string PropertyTable::emit() const {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Z", "symbol", "group", "period"};
  for (size_t i = 0; i < names_.size(); ++i)
    header.push_back(units_[i].empty() ? names_[i] : names_[i] + " [" + units_[i] + "]");
  rows.push_back(std::move(header));
  for (const auto& e : elements_) {
    std::vector<std::string> row = {std::to_string(e.atomic_number), e.symbol,
                                    e.group ? std::to_string(*e.group) : "",
                                    e.period ? std::to_string(*e.period) : ""};
    for (const auto& v : e.values)
      row.push_back(v ? csv::format_double(*v) : "");
    rows.push_back(std::move(row));
  }
  return csv::write(rows);
}

const std::string& PropertyTable::unit(std::string_view property) const {
  return units_[static_cast<size_t>(property_index(property))];
}

int PropertyTable::property_index(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw InputError("unknown property '" + std::string(name) + "'");
}

const ChemicalElement* PropertyTable::find_symbol(std::string_view symbol) const {
  auto it = by_symbol_.find(std::string(symbol));
  return it == by_symbol_.end() ? nullptr : &elements_[static_cast<size_t>(it->second)];
}

const ChemicalElement* PropertyTable::find_z(int atomic_number) const {
  auto it = by_z_.find(atomic_number);
  return it == by_z_.end() ? nullptr : &elements_[static_cast<size_t>(it->second)];
}

std::vector<std::string> PropertyTable::symbols() const {
  std::vector<std::string> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.symbol);
  return out;
}

void LayoutFixture::insert(int z, std::string symbol, std::optional<int> group,
                           int period) {
  if (z < 1) throw InputError("layout: atomic number must be positive");
  if (static_cast<size_t>(z) >= by_z_.size()) by_z_.resize(static_cast<size_t>(z) + 1);
  if (by_z_[static_cast<size_t>(z)])
    throw InputError("layout: duplicate atomic number " + std::to_string(z));
  if (by_symbol_.count(symbol))
    throw InputError("layout: duplicate symbol '" + symbol + "'");
  by_symbol_[symbol] = z;
  by_z_[static_cast<size_t>(z)] = Entry{std::move(symbol), TableCell{group, period}};
  max_z_ = std::max(max_z_, z);
}

const LayoutFixture& LayoutFixture::conventional() {
  static const LayoutFixture layout = [] {
    LayoutFixture l;
    for (int z = 1; z <= 103; ++z) {
      TableCell cell = conventional_cell(z);
      l.insert(z, kSymbols[static_cast<size_t>(z - 1)], cell.group, cell.period);
    }
    return l;
  }();
  return layout;
}

LayoutFixture LayoutFixture::load(std::istream& in) {
  auto rows = csv::read(in);
  if (rows.empty()) throw InputError("empty layout: no header row");
  if (rows[0] != std::vector<std::string>{"Z", "symbol", "group", "period"})
    throw InputError("layout header must be Z,symbol,group,period");
  LayoutFixture layout;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != 4)
      throw InputError("layout row " + std::to_string(r + 1) + " must have 4 cells");
    long long z = 0;
    if (!csv::parse_int(cells[0], z) || z < 1)
      throw InputError("layout row " + std::to_string(r + 1) + ": bad atomic number");
    std::optional<int> group = parse_optional_int(cells[2], 1, 18, "group", r + 1);
    std::optional<int> period = parse_optional_int(cells[3], 1, 8, "period", r + 1);
    if (!period)
      throw InputError("layout row " + std::to_string(r + 1) + ": period is required");
    bool f_block = (z >= 57 && z <= 71) || (z >= 89 && z <= 103);
    if (f_block && group)
      throw InputError("layout: Z=" + std::to_string(z) + " is f-block and must carry no group");
    layout.insert(static_cast<int>(z), cells[1], group, *period);
  }
  // No two main-block elements may share a cell.
  for (int a = 1; a <= layout.max_z_; ++a) {
    auto ea = layout.find(a);
    if (!ea || !ea->group) continue;
    for (int b = a + 1; b <= layout.max_z_; ++b) {
      auto eb = layout.find(b);
      if (eb && eb->group && *eb->group == *ea->group && eb->period == ea->period)
        throw InputError("layout: Z=" + std::to_string(a) + " and Z=" + std::to_string(b) +
                         " share cell (group " + std::to_string(*ea->group) + ", period " +
                         std::to_string(ea->period) + ")");
    }
  }
  return layout;
}

TableCell LayoutFixture::coordinates(int atomic_number) const {
  auto cell = find(atomic_number);
  if (!cell)
    throw InputError("atomic number " + std::to_string(atomic_number) +
                     " is not in the layout");
  return *cell;
}

std::optional<TableCell> LayoutFixture::find(int atomic_number) const {
  if (atomic_number < 1 || static_cast<size_t>(atomic_number) >= by_z_.size())
    return std::nullopt;
  const auto& entry = by_z_[static_cast<size_t>(atomic_number)];
  if (!entry) return std::nullopt;
  return entry->cell;
}

const std::string& LayoutFixture::symbol(int atomic_number) const {
  if (atomic_number >= 1 && static_cast<size_t>(atomic_number) < by_z_.size()) {
    const auto& entry = by_z_[static_cast<size_t>(atomic_number)];
    if (entry) return entry->symbol;
  }
  throw InputError("atomic number " + std::to_string(atomic_number) +
                   " is not in the layout");
}

std::optional<int> LayoutFixture::atomic_number(std::string_view symbol) const {
  auto it = by_symbol_.find(std::string(symbol));
  if (it == by_symbol_.end()) return std::nullopt;
  return it->second;
}

StandardizedMatrix standardize(const PropertyTable& table,
                               const std::vector<std::string>& selected) {
  if (selected.empty()) throw InputError("standardize: no properties selected");
  StandardizedMatrix out;
  out.item_ids = table.symbols();
  out.properties = selected;
  out.rows.assign(out.item_ids.size(),
                  std::vector<std::optional<double>>(selected.size(), std::nullopt));

  for (size_t c = 0; c < selected.size(); ++c) {
    int p = table.property_index(selected[c]);
    double sum = 0.0;
    int n = 0;
    for (const auto& e : table.elements()) {
      if (e.values[static_cast<size_t>(p)]) {
        sum += *e.values[static_cast<size_t>(p)];
        ++n;
      }
    }
    if (n < 2)
      throw InputError("property '" + selected[c] +
                       "' has fewer than 2 values; cannot standardize");
    double mean = sum / n;
    double ss = 0.0;
    for (const auto& e : table.elements())
      if (e.values[static_cast<size_t>(p)]) {
        double d = *e.values[static_cast<size_t>(p)] - mean;
        ss += d * d;
      }
    if (ss == 0.0)
      throw InputError("property '" + selected[c] + "' has zero spread");
    double sd = std::sqrt(ss / (n - 1));
    for (size_t r = 0; r < table.elements().size(); ++r) {
      const auto& v = table.elements()[r].values[static_cast<size_t>(p)];
      if (v) out.rows[r][c] = (*v - mean) / sd;
    }
  }
  return out;
}

StandardizedMatrix raw_columns(const PropertyTable& table,
                               const std::vector<std::string>& selected) {
  if (selected.empty()) throw InputError("no properties selected");
  StandardizedMatrix out;
  out.item_ids = table.symbols();
  out.properties = selected;
  out.rows.assign(out.item_ids.size(),
                  std::vector<std::optional<double>>(selected.size(), std::nullopt));
  for (size_t c = 0; c < selected.size(); ++c) {
    int p = table.property_index(selected[c]);
    for (size_t r = 0; r < table.elements().size(); ++r)
      out.rows[r][c] = table.elements()[r].values[static_cast<size_t>(p)];
  }
  return out;
}

const std::vector<std::string>& default_analysis_properties() {
  static const std::vector<std::string> props = {
      "electron_affinity", "melting_point", "boiling_point", "density",
      "atomization_enthalpy"};
  return props;
}

}  // namespace periodica
