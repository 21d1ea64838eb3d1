#include "periodica/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "periodica/errors.hpp"

namespace periodica::seq {

namespace {
void require_min(std::int64_t n, std::int64_t lo, const char* what) {
  if (n < lo)
    throw InputError(std::string(what) + " must be >= " + std::to_string(lo) +
                     ", got " + std::to_string(n));
}
}  // namespace

std::int64_t period_cardinality(std::int64_t n) {
  require_min(n, 1, "period index");
  std::int64_t half = (n + 2) / 2;
  return 2 * half * half;
}

std::int64_t accumulated_elements(std::int64_t n) {
  require_min(n, 1, "period index");
  std::int64_t total = 0;
  for (std::int64_t k = 1; k <= n; ++k) total += period_cardinality(k);
  return total;
}

std::int64_t shell_capacity(std::int64_t n) {
  require_min(n, 1, "level index");
  return 2 * n * n;
}

std::int64_t triangular(std::int64_t n) {
  require_min(n, 0, "triangular index");
  return n * (n + 1) / 2;
}

SquareDecomposition square_as_adjacent_triangulars(std::int64_t k) {
  require_min(k, 1, "square index");
  return {triangular(k - 1), triangular(k), k * k};
}

std::int64_t weise_noble_gas(std::int64_t n) {
  require_min(n, 1, "period index");
  std::int64_t sign = (n % 2 == 0) ? 1 : -1;
  std::int64_t numerator = sign * (3 * n + 6) + 2 * n * n * n + 12 * n * n + 25 * n - 6;
  if (numerator % 12 != 0)
    throw std::logic_error("noble-gas electron formula not divisible by 12 at n=" +
                           std::to_string(n));
  return numerator / 12;
}

double mills_weight(std::int64_t n, std::int64_t t) {
  require_min(n, 1, "n");
  require_min(t, 1, "t");
  return 15.0 * (static_cast<double>(n) - std::pow(0.9375, static_cast<double>(t)));
}

double tchitcherin_volume(double atomic_weight, std::int64_t n) {
  if (!(atomic_weight > 0)) throw InputError("atomic weight must be positive");
  require_min(n, 1, "n");
  return atomic_weight * (2.0 - 0.00535 * atomic_weight * static_cast<double>(n));
}

}  // namespace periodica::seq
