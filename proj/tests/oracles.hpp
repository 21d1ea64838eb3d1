// Independent reference implementations used to check the library. These
// recompute everything from definitions (no Lance-Williams updates, no
// minimal neighborhoods) so a bug in the library cannot hide in the tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "periodica/chemotopology.hpp"

namespace oracles {

// Deterministic bounded integer from a seeded engine.
inline int pick(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

// ---------------------------------------------------------------------------
// Naive O(N^3) agglomerative clusterer: at every step scans all cluster
// pairs and recomputes the linkage distance from the original matrix by
// definition (min / max / mean over member pairs). Tie-break mirrors the
// library contract: lexicographically smallest pair of cluster ids, a
// cluster's id being its smallest member id.
inline periodica::Dendrogram naive_cluster(const periodica::DistanceMatrix& dist,
                                           periodica::Linkage linkage) {
  using periodica::Linkage;
  const int n = dist.size();
  struct Cluster {
    int node;
    std::vector<int> members;
    std::string min_id;
  };
  std::vector<Cluster> active;
  for (int i = 0; i < n; ++i) active.push_back({i, {i}, dist.ids()[static_cast<size_t>(i)]});

  auto linkage_distance = [&](const Cluster& a, const Cluster& b) {
    double best = 0.0;
    if (linkage == Linkage::Single) best = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int x : a.members)
      for (int y : b.members) {
        double d = dist.at(x, y);
        if (linkage == Linkage::Single) best = std::min(best, d);
        if (linkage == Linkage::Complete) best = std::max(best, d);
        sum += d;
      }
    if (linkage == Linkage::Average)
      return sum / (static_cast<double>(a.members.size()) *
                    static_cast<double>(b.members.size()));
    return best;
  };

  std::vector<periodica::Merge> merges;
  int next_node = n;
  while (active.size() > 1) {
    size_t bi = 0, bj = 1;
    double bd = 0.0;
    bool have = false;
    for (size_t i = 0; i < active.size(); ++i)
      for (size_t j = i + 1; j < active.size(); ++j) {
        double d = linkage_distance(active[i], active[j]);
        bool better;
        if (!have || d < bd) {
          better = true;
        } else if (d == bd) {
          auto key = [&](size_t a, size_t b) {
            return std::make_pair(std::min(active[a].min_id, active[b].min_id),
                                  std::max(active[a].min_id, active[b].min_id));
          };
          better = key(i, j) < key(bi, bj);
        } else {
          better = false;
        }
        if (better) {
          bi = i;
          bj = j;
          bd = d;
          have = true;
        }
      }
    auto& a = active[bi];
    auto& b = active[bj];
    periodica::Merge m;
    m.height = bd;
    m.left = a.min_id <= b.min_id ? a.node : b.node;
    m.right = a.min_id <= b.min_id ? b.node : a.node;
    merges.push_back(m);
    a.node = next_node++;
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    a.min_id = std::min(a.min_id, b.min_id);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return periodica::Dendrogram(dist.ids(), std::move(merges));
}

inline bool same_tree(const periodica::Dendrogram& a, const periodica::Dendrogram& b) {
  if (a.leaves() != b.leaves()) return false;
  if (a.merges().size() != b.merges().size()) return false;
  for (size_t i = 0; i < a.merges().size(); ++i) {
    const auto& ma = a.merges()[i];
    const auto& mb = b.merges()[i];
    if (ma.left != mb.left || ma.right != mb.right || ma.height != mb.height)
      return false;
  }
  return true;
}

// Random symmetric dissimilarity matrix with integer entries. Integer sums
// are exact in doubles, so average-linkage heights are bit-reproducible.
inline periodica::DistanceMatrix random_integer_matrix(std::mt19937& rng, int n,
                                                       int max_value) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    std::string id = "e";
    id += static_cast<char>('a' + i / 26);
    id += static_cast<char>('a' + i % 26);
    ids.push_back(id);
  }
  std::vector<double> data(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = 1 + pick(rng, 0, max_value - 1);
      data[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = d;
      data[static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(i)] = d;
    }
  return periodica::DistanceMatrix(std::move(ids), std::move(data));
}

// ---------------------------------------------------------------------------
// Exhaustive finite-topology oracle over a ground set of at most 16 points.
// Open sets are enumerated directly: a subset is open iff it is the union
// of the finite intersections of basis sets it contains.
struct TopologyOracle {
  int n = 0;
  std::vector<std::uint32_t> opens;  // all open masks

  TopologyOracle(int ground_size, std::vector<std::uint32_t> basis_masks)
      : n(ground_size) {
    const std::uint32_t full = ground_size == 32 ? ~0u : (1u << ground_size) - 1;
    basis_masks.push_back(full);
    // All intersections of subfamilies: close {full} under & with members.
    std::vector<std::uint32_t> inters = {full};
    for (std::uint32_t b : basis_masks) {
      size_t existing = inters.size();
      for (size_t i = 0; i < existing; ++i) {
        std::uint32_t candidate = inters[i] & b;
        if (std::find(inters.begin(), inters.end(), candidate) == inters.end())
          inters.push_back(candidate);
      }
    }
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      std::uint32_t covered = 0;
      for (std::uint32_t i : inters)
        if ((i & mask) == i) covered |= i;
      if (covered == mask) opens.push_back(mask);
      if (mask == full) break;
    }
  }

  std::uint32_t full() const { return n == 32 ? ~0u : (1u << n) - 1; }

  std::uint32_t interior(std::uint32_t a) const {
    std::uint32_t out = 0;
    for (std::uint32_t o : opens)
      if ((o & a) == o) out |= o;
    return out;
  }

  std::uint32_t closure(std::uint32_t a) const {
    // Smallest closed superset: complement of the largest open inside the
    // complement.
    return full() & ~interior(full() & ~a);
  }

  std::uint32_t boundary(std::uint32_t a) const {
    return closure(a) & ~interior(a);
  }

  std::uint32_t derived(std::uint32_t a) const {
    std::uint32_t out = 0;
    for (int x = 0; x < n; ++x) {
      bool limit = true;
      for (std::uint32_t o : opens) {
        if (!(o & (1u << x))) continue;
        if ((o & a & ~(1u << x)) == 0) {
          limit = false;
          break;
        }
      }
      if (limit) out |= 1u << x;
    }
    return out;
  }
};

}  // namespace oracles
