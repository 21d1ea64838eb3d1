#pragma once

#include <cstdint>

namespace periodica::seq {

// Number of elements in period n of the conventional table (OEIS A093907):
// 2, 8, 8, 18, 18, 32, 32, 50, ...  Exact for all n up to 10^6.
std::int64_t period_cardinality(std::int64_t n);

// Partial sums of period_cardinality: 2, 10, 18, 36, 54, 86, 118, 168, ...
std::int64_t accumulated_elements(std::int64_t n);

// Electron capacity 2n^2 of principal level n.
std::int64_t shell_capacity(std::int64_t n);

// Triangular numbers t_n = n(n+1)/2 with t_0 = 0.
std::int64_t triangular(std::int64_t n);

// k^2 written as the sum of the adjacent triangulars t_{k-1} + t_k.
struct SquareDecomposition {
  std::int64_t lower;   // t_{k-1}
  std::int64_t upper;   // t_k
  std::int64_t square;  // k^2 = lower + upper
};
SquareDecomposition square_as_adjacent_triangulars(std::int64_t k);

// Closed form for the electron count of the n-th noble gas,
//   Z_n = ((-1)^n (3n+6) + 2n^3 + 12n^2 + 25n - 6) / 12.
// The division is exact for every n >= 1; a non-zero remainder is an
// internal invariant failure.
std::int64_t weise_noble_gas(std::int64_t n);

// Historical atomic-weight formula 15(n - 0.9375^t).
double mills_weight(std::int64_t n, std::int64_t t);

// Historical atomic-volume formula A(2 - 0.00535 A n) at 25 C.
double tchitcherin_volume(double atomic_weight, std::int64_t n);

}  // namespace periodica::seq
