#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace periodica {

// Electron subshell (n, l), 0 <= l <= n-1, capacity 2(2l+1).
struct Shell {
  int n = 1;
  int l = 0;

  bool valid() const { return n >= 1 && l >= 0 && l <= n - 1; }
  int capacity() const { return 2 * (2 * l + 1); }
  std::string label() const;                    // spectroscopic: "1s", "3d", "5g"
  static Shell parse(std::string_view label);   // throws InputError

  bool operator==(const Shell&) const = default;
};

// A shell-filling order. Three kinds:
//   madelung    lexicographic on (n+l, n)
//   hydrogenic  lexicographic on (n, l)
//   ray         the 1-parameter family indexed by a slope k <= -1, ordering
//               by the functional f(n,l) = n - l/k with ties (equal f,
//               different shells) broken toward smaller n. k = -1 coincides
//               with madelung; k -> -inf approaches hydrogenic.
//
// Every comparison depends only on the coordinate differences (dn, dl), so
// all three kinds are translation-invariant local orders.
class FillingOrder {
 public:
  enum class Kind { Madelung, Hydrogenic, Ray };

  static FillingOrder madelung() { return FillingOrder(Kind::Madelung, 0.0); }
  static FillingOrder hydrogenic() { return FillingOrder(Kind::Hydrogenic, 0.0); }
  static FillingOrder ray(double slope_k);            // throws if k > -1
  static FillingOrder parse(std::string_view text);   // "madelung" | "hydrogenic" | "ray:-2"

  Kind kind() const { return kind_; }
  double slope() const { return slope_; }             // ray kind only
  std::string name() const;

  // Strict total order; equivalent only for the identical shell.
  std::weak_ordering compare(Shell a, Shell b) const;
  bool less(Shell a, Shell b) const { return compare(a, b) < 0; }

 private:
  FillingOrder(Kind k, double s) : kind_(k), slope_(s) {}
  Kind kind_;
  double slope_;
};

// First `count` shells under the order, drawn from the pool
// {(n,l) : 1 <= n <= count, l < n}; the pool suffices because every order
// in the family satisfies f(shell) >= n.
std::vector<Shell> enumerate_shells(const FillingOrder& order, int count);

// Translation invariance probe: does compare(a,b) equal
// compare(a+(dn,dl), b+(dn,dl))? Shifted shells must remain valid.
bool local_order_holds(const FillingOrder& order, Shell a, Shell b,
                       int dn, int dl);

struct OccupiedShell {
  Shell shell;
  int electrons = 0;  // 1 .. capacity
};

// Idealized ground-state configuration: shells filled to capacity in
// enumeration order, only the last one possibly partial. Real-atom
// anomalies (Cr, Cu, ...) are deliberately not modeled.
struct Configuration {
  std::vector<OccupiedShell> shells;
  int total_electrons = 0;
  std::string text() const;  // "1s2 2s2 2p6 ..."
};

Configuration aufbau_configuration(int z, const FillingOrder& order);

// Idealized period lengths. For madelung and ray orders a period closes
// with 1s and thereafter with each completed p shell; the hydrogenic order
// fills whole n-levels contiguously and closes at every new-n boundary,
// giving lengths 2n^2.
std::vector<long long> period_lengths(const FillingOrder& order, int num_periods);

}  // namespace periodica
