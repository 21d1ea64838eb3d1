#include "periodica/shell_orders.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "periodica/errors.hpp"

namespace periodica {

namespace {

// s p d f, then alphabetical continuation skipping j and the letters
// already taken.
constexpr const char* kAzimuthalLetters = "spdfghiklmnoqrtuvwxyz";
constexpr int kMaxLetter = 20;

void require_valid(Shell s) {
  if (!s.valid())
    throw InputError("invalid shell (n=" + std::to_string(s.n) +
                     ", l=" + std::to_string(s.l) + ")");
}

}  // namespace

std::string Shell::label() const {
  require_valid(*this);
  std::string out = std::to_string(n);
  if (l <= kMaxLetter)
    out += kAzimuthalLetters[l];
  else
    out += "(l=" + std::to_string(l) + ")";
  return out;
}

Shell Shell::parse(std::string_view label) {
  size_t pos = 0;
  while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) ++pos;
  if (pos == 0 || pos + 1 != label.size())
    throw InputError("malformed shell label '" + std::string(label) + "'");
  int n = 0;
  std::from_chars(label.data(), label.data() + pos, n);
  const char* hit = nullptr;
  for (const char* p = kAzimuthalLetters; *p; ++p)
    if (*p == label[pos]) {
      hit = p;
      break;
    }
  if (!hit)
    throw InputError("unknown azimuthal letter in shell label '" + std::string(label) + "'");
  Shell s{n, static_cast<int>(hit - kAzimuthalLetters)};
  require_valid(s);
  return s;
}

FillingOrder FillingOrder::ray(double slope_k) {
  if (!(slope_k <= -1.0))
    throw InputError("ray slope k must be <= -1, got " + std::to_string(slope_k));
  return FillingOrder(Kind::Ray, slope_k);
}

FillingOrder FillingOrder::parse(std::string_view text) {
  if (text == "madelung") return madelung();
  if (text == "hydrogenic") return hydrogenic();
  if (text.rfind("ray:", 0) == 0) {
    std::string num(text.substr(4));
    char* end = nullptr;
    double k = std::strtod(num.c_str(), &end);
    if (end != num.c_str() + num.size() || num.empty())
      throw InputError("malformed ray slope '" + num + "'");
    return ray(k);
  }
  throw InputError("unknown order '" + std::string(text) +
                   "' (expected madelung, hydrogenic, or ray:K)");
}

std::string FillingOrder::name() const {
  switch (kind_) {
    case Kind::Madelung: return "madelung";
    case Kind::Hydrogenic: return "hydrogenic";
    case Kind::Ray: {
      char buf[48];
      auto res = std::to_chars(buf, buf + sizeof(buf), slope_);
      return "ray:" + std::string(buf, res.ptr);
    }
  }
  return {};
}

std::weak_ordering FillingOrder::compare(Shell a, Shell b) const {
  require_valid(a);
  require_valid(b);
  // Everything is decided from the differences, which is what makes these
  // orders local in the translation sense.
  const int dn = a.n - b.n;
  const int dl = a.l - b.l;
  if (dn == 0 && dl == 0) return std::weak_ordering::equivalent;
  switch (kind_) {
    case Kind::Madelung: {
      if (dn + dl != 0) return dn + dl < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
      return dn < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    case Kind::Hydrogenic: {
      if (dn != 0) return dn < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
      return dl < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    case Kind::Ray: {
      // f(a) < f(b) with f = n - l/k rearranges (k < 0) to k*dn > dl.
      const double lhs = slope_ * dn;
      if (lhs > dl) return std::weak_ordering::less;
      if (lhs < dl) return std::weak_ordering::greater;
      // Equal functional values: the shell with smaller n comes first.
      return dn < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
  }
  return std::weak_ordering::equivalent;
}

std::vector<Shell> enumerate_shells(const FillingOrder& order, int count) {
  if (count < 1) throw InputError("shell count must be positive");
  std::vector<Shell> pool;
  pool.reserve(static_cast<size_t>(count) * (static_cast<size_t>(count) + 1) / 2);
  for (int n = 1; n <= count; ++n)
    for (int l = 0; l < n; ++l) pool.push_back(Shell{n, l});
  std::sort(pool.begin(), pool.end(),
            [&](Shell a, Shell b) { return order.less(a, b); });
  pool.resize(static_cast<size_t>(count));
  return pool;
}

bool local_order_holds(const FillingOrder& order, Shell a, Shell b,
                       int dn, int dl) {
  require_valid(a);
  require_valid(b);
  Shell a2{a.n + dn, a.l + dl};
  Shell b2{b.n + dn, b.l + dl};
  if (!a2.valid() || !b2.valid())
    throw InputError("shift (" + std::to_string(dn) + "," + std::to_string(dl) +
                     ") leaves the valid shell region");
  return order.compare(a, b) == order.compare(a2, b2);
}

std::string Configuration::text() const {
  std::string out;
  for (const auto& o : shells) {
    if (!out.empty()) out += ' ';
    out += o.shell.label() + std::to_string(o.electrons);
  }
  return out;
}

Configuration aufbau_configuration(int z, const FillingOrder& order) {
  if (z < 1) throw InputError("atomic number must be positive");
  // Grow the enumeration until it can hold z electrons.
  int count = 8;
  while (true) {
    long long capacity = 0;
    for (Shell s : enumerate_shells(order, count)) capacity += s.capacity();
    if (capacity >= z) break;
    count *= 2;
  }
  Configuration config;
  int remaining = z;
  for (Shell s : enumerate_shells(order, count)) {
    if (remaining <= 0) break;
    int take = std::min(remaining, s.capacity());
    config.shells.push_back({s, take});
    remaining -= take;
  }
  config.total_electrons = z;
  return config;
}

std::vector<long long> period_lengths(const FillingOrder& order, int num_periods) {
  if (num_periods < 1) throw InputError("number of periods must be positive");
  std::vector<long long> closures;  // cumulative electron counts at period ends
  int count = 16;
  while (true) {
    closures.clear();
    auto shells = enumerate_shells(order, count);
    long long cumulative = 0;
    int max_n_started = 0;
    for (Shell s : shells) {
      if (order.kind() == FillingOrder::Kind::Hydrogenic) {
        // New principal level starts: the previous one closed a period.
        if (s.n > max_n_started && max_n_started > 0) closures.push_back(cumulative);
        max_n_started = std::max(max_n_started, s.n);
        cumulative += s.capacity();
      } else {
        cumulative += s.capacity();
        bool closes = (s.n == 1 && s.l == 0) || s.l == 1;
        if (closes) closures.push_back(cumulative);
      }
      if (static_cast<int>(closures.size()) > num_periods) break;
    }
    if (static_cast<int>(closures.size()) >= num_periods) break;
    count *= 2;
  }
  std::vector<long long> lengths;
  long long previous = 0;
  for (int i = 0; i < num_periods; ++i) {
    lengths.push_back(closures[static_cast<size_t>(i)] - previous);
    previous = closures[static_cast<size_t>(i)];
  }
  return lengths;
}

}  // namespace periodica
