#include "periodica/chemotopology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "periodica/errors.hpp"

namespace periodica {

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids,
                               std::vector<double> full_matrix)
    : ids_(std::move(ids)), data_(std::move(full_matrix)) {
  const size_t n = ids_.size();
  if (data_.size() != n * n)
    throw InputError("distance matrix storage does not match item count");
  for (size_t i = 0; i < n; ++i) {
    if (data_[i * n + i] != 0.0)
      throw InputError("distance matrix diagonal must be zero");
    for (size_t j = 0; j < n; ++j) {
      double d = data_[i * n + j];
      if (!(d >= 0.0) || d != data_[j * n + i])
        throw InputError("distance matrix must be symmetric and non-negative");
    }
  }
}

DistanceResult distance_matrix(const StandardizedMatrix& input, Metric metric) {
  std::vector<int> usable;
  std::vector<std::string> excluded;
  for (size_t r = 0; r < input.rows.size(); ++r) {
    bool complete = true;
    for (const auto& v : input.rows[r])
      if (!v) {
        complete = false;
        break;
      }
    if (complete)
      usable.push_back(static_cast<int>(r));
    else
      excluded.push_back(input.item_ids[r]);
  }
  if (usable.size() < 2)
    throw InputError("fewer than 2 items have complete data for the selected properties");

  const size_t n = usable.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (int r : usable) ids.push_back(input.item_ids[static_cast<size_t>(r)]);

  std::vector<double> data(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const auto& a = input.rows[static_cast<size_t>(usable[i])];
      const auto& b = input.rows[static_cast<size_t>(usable[j])];
      double acc = 0.0;
      for (size_t c = 0; c < a.size(); ++c) {
        double diff = *a[c] - *b[c];
        acc += metric == Metric::Euclidean ? diff * diff : std::abs(diff);
      }
      double d = metric == Metric::Euclidean ? std::sqrt(acc) : acc;
      data[i * n + j] = d;
      data[j * n + i] = d;
    }
  }
  return {DistanceMatrix(std::move(ids), std::move(data)), std::move(excluded)};
}

Dendrogram::Dendrogram(std::vector<std::string> leaf_ids, std::vector<Merge> merges)
    : leaves_(std::move(leaf_ids)), merges_(std::move(merges)) {
  const int n = static_cast<int>(leaves_.size());
  if (n < 1) throw InputError("dendrogram needs at least one leaf");
  if (static_cast<int>(merges_.size()) != n - 1)
    throw InputError("dendrogram with " + std::to_string(n) + " leaves needs " +
                     std::to_string(n - 1) + " merges");
  {
    auto sorted = leaves_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("duplicate leaf identifier in dendrogram");
  }
  std::vector<char> used(leaves_.size() + merges_.size(), 0);
  double previous = 0.0;
  for (size_t m = 0; m < merges_.size(); ++m) {
    const auto& merge = merges_[m];
    const int limit = n + static_cast<int>(m);
    for (int child : {merge.left, merge.right}) {
      if (child < 0 || child >= limit)
        throw InputError("merge references node " + std::to_string(child) +
                         " before it exists");
      if (used[static_cast<size_t>(child)])
        throw InputError("node " + std::to_string(child) + " merged twice");
      used[static_cast<size_t>(child)] = 1;
    }
    if (merge.left == merge.right)
      throw InputError("merge joins a node with itself");
    if (!(merge.height >= 0.0))
      throw InputError("merge height must be non-negative");
    if (merge.height < previous)
      throw InputError("merge heights must be non-decreasing");
    previous = merge.height;
  }
}

int Dendrogram::root() const {
  return leaf_count() + static_cast<int>(merges_.size()) - 1;
}

double Dendrogram::root_height() const {
  return merges_.empty() ? 0.0 : merges_.back().height;
}

int Dendrogram::leaf_index(std::string_view id) const {
  for (size_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i] == id) return static_cast<int>(i);
  throw InputError("'" + std::string(id) + "' is not a dendrogram leaf");
}

std::vector<int> Dendrogram::node_leaves(int node) const {
  const int n = leaf_count();
  if (node < 0 || node >= n + static_cast<int>(merges_.size()))
    throw InputError("no dendrogram node " + std::to_string(node));
  if (node < n) return {node};
  std::vector<int> stack = {node};
  std::vector<int> out;
  while (!stack.empty()) {
    int current = stack.back();
    stack.pop_back();
    if (current < n) {
      out.push_back(current);
      continue;
    }
    const auto& m = merges_[static_cast<size_t>(current - n)];
    stack.push_back(m.left);
    stack.push_back(m.right);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Dendrogram::cophenetic(int leaf_a, int leaf_b) const {
  const int n = leaf_count();
  if (leaf_a < 0 || leaf_a >= n || leaf_b < 0 || leaf_b >= n)
    throw InputError("cophenetic distance needs leaf indices");
  if (leaf_a == leaf_b) return 0.0;
  // Walk up from both leaves; the first shared ancestor is the LCA.
  std::vector<int> parent(leaves_.size() + merges_.size(), -1);
  for (size_t m = 0; m < merges_.size(); ++m) {
    parent[static_cast<size_t>(merges_[m].left)] = n + static_cast<int>(m);
    parent[static_cast<size_t>(merges_[m].right)] = n + static_cast<int>(m);
  }
  std::vector<char> seen(leaves_.size() + merges_.size(), 0);
  for (int x = leaf_a; x != -1; x = parent[static_cast<size_t>(x)])
    seen[static_cast<size_t>(x)] = 1;
  for (int y = leaf_b; y != -1; y = parent[static_cast<size_t>(y)])
    if (seen[static_cast<size_t>(y)])
      return merges_[static_cast<size_t>(y - n)].height;
  throw std::logic_error("leaves with no common ancestor");
}

DistanceMatrix Dendrogram::cophenetic_matrix() const {
  const size_t n = leaves_.size();
  std::vector<double> data(n * n, 0.0);
  // Fill by walking merges: a merge sets the distance for every leaf pair
  // it newly joins.
  std::vector<std::vector<int>> members(n + merges_.size());
  for (size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};
  for (size_t m = 0; m < merges_.size(); ++m) {
    const auto& left = members[static_cast<size_t>(merges_[m].left)];
    const auto& right = members[static_cast<size_t>(merges_[m].right)];
    for (int a : left)
      for (int b : right) {
        data[static_cast<size_t>(a) * n + static_cast<size_t>(b)] = merges_[m].height;
        data[static_cast<size_t>(b) * n + static_cast<size_t>(a)] = merges_[m].height;
      }
    auto& joined = members[n + m];
    joined = left;
    joined.insert(joined.end(), right.begin(), right.end());
  }
  return DistanceMatrix(leaves_, std::move(data));
}

namespace {

struct ActiveCluster {
  int node = 0;          // dendrogram node id
  int size = 0;          // leaf count
  std::string min_leaf;  // identifier used for tie-breaking
};

}  // namespace

Dendrogram agglomerative_cluster(const DistanceMatrix& dist, Linkage linkage) {
  const int n = dist.size();
  if (n < 2) throw InputError("clustering needs at least 2 items");

  // For average linkage `value` holds the exact sum of original pairwise
  // distances between the two clusters; the linkage distance is
  // value / (size_a * size_b), divided out only on use. For single and
  // complete linkage `value` is the linkage distance itself.
  std::vector<ActiveCluster> active;
  active.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    active.push_back({i, 1, dist.ids()[static_cast<size_t>(i)]});

  std::vector<std::vector<double>> value(static_cast<size_t>(n),
                                         std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) value[static_cast<size_t>(i)][static_cast<size_t>(j)] = dist.at(i, j);

  auto linkage_distance = [&](size_t a, size_t b) {
    double v = value[a][b];
    if (linkage == Linkage::Average)
      return v / (static_cast<double>(active[a].size) * static_cast<double>(active[b].size));
    return v;
  };

  std::vector<Merge> merges;
  merges.reserve(static_cast<size_t>(n - 1));
  int next_node = n;

  while (active.size() > 1) {
    size_t best_a = 0, best_b = 1;
    double best_d = std::numeric_limits<double>::infinity();
    bool have = false;
    for (size_t a = 0; a < active.size(); ++a) {
      for (size_t b = a + 1; b < active.size(); ++b) {
        double d = linkage_distance(a, b);
        // Candidate pair identifier: the two cluster ids in lexicographic
        // order. Smaller wins on distance ties, making the merge sequence
        // independent of input row order.
        bool better = false;
        if (!have || d < best_d) {
          better = true;
        } else if (d == best_d) {
          const auto& ba = active[best_a].min_leaf;
          const auto& bb = active[best_b].min_leaf;
          const std::string& ca = std::min(active[a].min_leaf, active[b].min_leaf);
          const std::string& cb = std::max(active[a].min_leaf, active[b].min_leaf);
          const std::string& pa = std::min(ba, bb);
          const std::string& pb = std::max(ba, bb);
          better = std::tie(ca, cb) < std::tie(pa, pb);
        }
        if (better) {
          best_a = a;
          best_b = b;
          best_d = d;
          have = true;
        }
      }
    }

    // Record the merge, smaller-min-leaf child first. Monotone linkages
    // cannot decrease, but the average-linkage division can round a tied
    // height one ulp under its predecessor; pin it.
    auto& ca = active[best_a];
    auto& cb = active[best_b];
    Merge merge;
    merge.height = merges.empty() ? best_d : std::max(best_d, merges.back().height);
    merge.left = ca.min_leaf <= cb.min_leaf ? ca.node : cb.node;
    merge.right = ca.min_leaf <= cb.min_leaf ? cb.node : ca.node;
    merges.push_back(merge);

    // Lance-Williams update of every other cluster against the union.
    for (size_t k = 0; k < active.size(); ++k) {
      if (k == best_a || k == best_b) continue;
      double dka = value[k][best_a];
      double dkb = value[k][best_b];
      double updated = 0.0;
      switch (linkage) {
        case Linkage::Single: updated = std::min(dka, dkb); break;
        case Linkage::Complete: updated = std::max(dka, dkb); break;
        case Linkage::Average: updated = dka + dkb; break;  // sums add exactly
      }
      value[k][best_a] = updated;
      value[best_a][k] = updated;
    }
    ca.node = next_node++;
    ca.size += cb.size;
    ca.min_leaf = std::min(ca.min_leaf, cb.min_leaf);

    // Drop row/column best_b by swapping with the last active cluster.
    size_t last = active.size() - 1;
    if (best_b != last) {
      std::swap(active[best_b], active[last]);
      for (size_t k = 0; k < active.size(); ++k) {
        std::swap(value[k][best_b], value[k][last]);
      }
      std::swap(value[best_b], value[last]);
    }
    active.pop_back();
  }

  return Dendrogram(dist.ids(), std::move(merges));
}

namespace {

// Partition after performing the first `performed` merges, canonically
// ordered (members sorted, clusters by first member).
std::vector<std::vector<std::string>> cut_prefix(const Dendrogram& tree,
                                                 int performed) {
  const int n = tree.leaf_count();
  std::vector<std::vector<std::string>> groups(static_cast<size_t>(n + performed));
  for (int i = 0; i < n; ++i)
    groups[static_cast<size_t>(i)] = {tree.leaves()[static_cast<size_t>(i)]};
  for (int m = 0; m < performed; ++m) {
    const auto& merge = tree.merges()[static_cast<size_t>(m)];
    auto& into = groups[static_cast<size_t>(n + m)];
    for (int child : {merge.left, merge.right}) {
      auto& from = groups[static_cast<size_t>(child)];
      into.insert(into.end(), from.begin(), from.end());
      from.clear();
    }
  }
  std::vector<std::vector<std::string>> clusters;
  for (auto& g : groups)
    if (!g.empty()) {
      std::sort(g.begin(), g.end());
      clusters.push_back(std::move(g));
    }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

bool count_attainable(const Dendrogram& tree, int k) {
  const int n = tree.leaf_count();
  if (k < 1 || k > n) return false;
  const int m = n - k;  // merges performed
  if (m == 0 || m == n - 1) return true;
  return tree.merges()[static_cast<size_t>(m - 1)].height <
         tree.merges()[static_cast<size_t>(m)].height;
}

}  // namespace

std::vector<std::vector<std::string>> cut_at_height(const Dendrogram& tree,
                                                    double height) {
  if (!(height >= 0.0)) throw InputError("cut height must be non-negative");
  int performed = 0;
  for (const auto& m : tree.merges()) {
    if (m.height <= height) ++performed;
    else break;
  }
  return cut_prefix(tree, performed);
}

std::vector<int> attainable_cluster_counts(const Dendrogram& tree) {
  std::vector<int> out;
  for (int k = 1; k <= tree.leaf_count(); ++k)
    if (count_attainable(tree, k)) out.push_back(k);
  return out;
}

std::vector<std::vector<std::string>> cut_at_count(const Dendrogram& tree, int k) {
  const int n = tree.leaf_count();
  if (k < 1 || k > n)
    throw InputError("cluster count must be in 1.." + std::to_string(n));
  if (!count_attainable(tree, k)) {
    std::string attainable;
    for (int a : attainable_cluster_counts(tree)) {
      if (!attainable.empty()) attainable += ",";
      attainable += std::to_string(a);
    }
    throw InputError("k=" + std::to_string(k) +
                     " is not attainable (tied merge heights); attainable counts: " +
                     attainable);
  }
  return cut_prefix(tree, n - k);
}

CutSelection select_cut(const Dendrogram& tree) {
  const int n = tree.leaf_count();
  if (n < 3) throw InputError("cut selection needs at least 3 leaves");
  CutSelection best;
  unsigned __int128 best_score = 0;
  for (int k = 2; k < n; ++k) {
    if (!count_attainable(tree, k)) continue;
    auto clusters = cut_prefix(tree, n - k);
    unsigned __int128 score = 1;
    std::vector<int> pops;
    pops.reserve(clusters.size());
    for (const auto& c : clusters) {
      pops.push_back(static_cast<int>(c.size()));
      score *= static_cast<unsigned>(c.size());
    }
    if (score > best_score) {  // ties keep the smaller k seen first
      best_score = score;
      best.k = k;
      best.populations = std::move(pops);
    }
  }
  if (best.k == 0)
    throw InputError("no attainable cut with 1 < k < N (tied merge heights)");
  if (best_score > std::numeric_limits<std::uint64_t>::max())
    throw InputError("cluster population product overflows the reported score");
  best.score = static_cast<std::uint64_t>(best_score);
  return best;
}

Basis branch_basis(const Dendrogram& tree, bool include_singletons) {
  const int n = tree.leaf_count();
  std::vector<std::vector<std::string>> sets;
  auto names = [&](const std::vector<int>& idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(tree.leaves()[static_cast<size_t>(i)]);
    std::sort(out.begin(), out.end());
    return out;
  };
  for (size_t m = 0; m < tree.merges().size(); ++m)
    sets.push_back(names(tree.node_leaves(n + static_cast<int>(m))));
  if (include_singletons)
    for (const auto& leaf : tree.leaves()) sets.push_back({leaf});
  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
  sets.push_back(names(all));

  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return Basis{std::move(sets)};
}

FiniteTopology::FiniteTopology(std::vector<std::string> ground, const Basis& basis)
    : ground_(std::move(ground)) {
  const size_t n = ground_.size();
  if (n == 0) throw InputError("topology needs a non-empty ground set");
  for (size_t i = 0; i < n; ++i)
    if (!pos_.emplace(ground_[i], static_cast<int>(i)).second)
      throw InputError("duplicate item '" + ground_[i] + "' in ground set");

  // U_x starts as Q (the basis always effectively contains Q) and shrinks
  // by every basis set containing x.
  nbhd_.assign(n, std::vector<char>(n, 1));
  for (const auto& set : basis.sets) {
    if (set.empty()) throw InputError("basis sets must be non-empty");
    std::vector<char> mask = to_mask(set);
    for (size_t x = 0; x < n; ++x) {
      if (!mask[x]) continue;
      for (size_t y = 0; y < n; ++y)
        if (!mask[y]) nbhd_[x][y] = 0;
    }
  }
}

std::vector<char> FiniteTopology::to_mask(const std::vector<std::string>& a) const {
  std::vector<char> mask(ground_.size(), 0);
  for (const auto& id : a) {
    auto it = pos_.find(id);
    if (it == pos_.end())
      throw InputError("'" + id + "' is not a point of the space");
    mask[static_cast<size_t>(it->second)] = 1;
  }
  return mask;
}

std::vector<std::string> FiniteTopology::from_mask(const std::vector<char>& mask) const {
  std::vector<std::string> out;
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(ground_[i]);
  return out;
}

std::vector<std::string> FiniteTopology::neighborhood(std::string_view point) const {
  auto it = pos_.find(point);
  if (it == pos_.end())
    throw InputError("'" + std::string(point) + "' is not a point of the space");
  return from_mask(nbhd_[static_cast<size_t>(it->second)]);
}

std::vector<std::string> FiniteTopology::closure(const std::vector<std::string>& a) const {
  auto mask = to_mask(a);
  std::vector<char> out(ground_.size(), 0);
  for (size_t x = 0; x < ground_.size(); ++x)
    for (size_t y = 0; y < ground_.size(); ++y)
      if (nbhd_[x][y] && mask[y]) {
        out[x] = 1;
        break;
      }
  return from_mask(out);
}

std::vector<std::string> FiniteTopology::interior(const std::vector<std::string>& a) const {
  auto mask = to_mask(a);
  std::vector<char> out(ground_.size(), 0);
  for (size_t x = 0; x < ground_.size(); ++x) {
    if (!mask[x]) continue;
    bool inside = true;
    for (size_t y = 0; y < ground_.size() && inside; ++y)
      if (nbhd_[x][y] && !mask[y]) inside = false;
    out[x] = inside;
  }
  return from_mask(out);
}

std::vector<std::string> FiniteTopology::boundary(const std::vector<std::string>& a) const {
  auto cl = to_mask(closure(a));
  auto in = to_mask(interior(a));
  std::vector<char> out(ground_.size(), 0);
  for (size_t i = 0; i < ground_.size(); ++i) out[i] = cl[i] && !in[i];
  return from_mask(out);
}

std::vector<std::string> FiniteTopology::derived_set(const std::vector<std::string>& a) const {
  auto mask = to_mask(a);
  std::vector<char> out(ground_.size(), 0);
  for (size_t x = 0; x < ground_.size(); ++x)
    for (size_t y = 0; y < ground_.size(); ++y)
      if (y != x && nbhd_[x][y] && mask[y]) {
        out[x] = 1;
        break;
      }
  return from_mask(out);
}

}  // namespace periodica
