#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "periodica/element_data.hpp"

namespace periodica {

// Symmetric dissimilarity matrix with zero diagonal over named items.
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<std::string> ids, std::vector<double> full_matrix);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  double at(int i, int j) const { return data_[static_cast<size_t>(i) * ids_.size() + j]; }

 private:
  std::vector<std::string> ids_;
  std::vector<double> data_;
};

enum class Metric { Euclidean, Manhattan };
enum class Linkage { Single, Complete, Average };

// Pairwise distances over the rows of a standardized matrix. Items with a
// missing value in any selected property are excluded and reported, the
// way the clustering studies drop elements that lack measurements.
struct DistanceResult {
  DistanceMatrix matrix;
  std::vector<std::string> excluded;
};
DistanceResult distance_matrix(const StandardizedMatrix& input, Metric metric);

// One agglomerative merge step. Node ids: 0..n-1 are leaves in input
// order, n+i is the cluster created by merges[i]. The child with the
// lexicographically smaller minimum leaf id is stored first.
struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
};

// Binary merge tree with non-decreasing heights.
class Dendrogram {
 public:
  Dendrogram(std::vector<std::string> leaf_ids, std::vector<Merge> merges);

  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  const std::vector<std::string>& leaves() const { return leaves_; }
  const std::vector<Merge>& merges() const { return merges_; }
  int root() const;
  double root_height() const;

  int leaf_index(std::string_view id) const;  // throws InputError
  // Sorted leaf indices under a node id.
  std::vector<int> node_leaves(int node) const;

  // Height of the lowest common ancestor.
  double cophenetic(int leaf_a, int leaf_b) const;
  DistanceMatrix cophenetic_matrix() const;

 private:
  std::vector<std::string> leaves_;
  std::vector<Merge> merges_;
};

// Agglomerative clustering with Lance-Williams updates. At every step the
// pair of clusters at minimal linkage distance is merged; ties are broken
// toward the lexicographically smallest pair of cluster identifiers, a
// cluster's identifier being its smallest leaf id. The tie rule makes the
// tree a function of the labelled input, not of row order.
//
// Average linkage tracks (sum, count) of original pairwise distances, so
// cluster distances are exact sums divided once; on integer-valued input
// the heights are bit-reproducible against naive recomputation.
Dendrogram agglomerative_cluster(const DistanceMatrix& dist, Linkage linkage);

// Clusters obtained by deleting all merges strictly above `height`.
// Cluster lists are sorted (members lexicographically, clusters by first
// member).
std::vector<std::vector<std::string>> cut_at_height(const Dendrogram& tree,
                                                    double height);

// Clusters obtained by undoing the last N-k merges. Attainable iff that
// prefix is height-consistent: k = N and k = 1 always are, an interior k
// requires the (N-k)-th and following merge heights to differ. Unattainable
// k raises InputError listing the attainable counts.
std::vector<std::vector<std::string>> cut_at_count(const Dendrogram& tree, int k);
std::vector<int> attainable_cluster_counts(const Dendrogram& tree);

// The cut with 1 < k < N maximizing the product of cluster populations,
// ties toward smaller k.
struct CutSelection {
  int k = 0;
  std::vector<int> populations;
  std::uint64_t score = 0;  // product of populations
};
CutSelection select_cut(const Dendrogram& tree);

// Family of subsets of Q generating a topology; always contains Q.
struct Basis {
  std::vector<std::vector<std::string>> sets;
};

// The leaf sets of all internal nodes plus Q itself, optionally plus the
// singletons. Singletons are off by default: they generate the discrete
// topology, in which every boundary is empty.
Basis branch_basis(const Dendrogram& tree, bool include_singletons = false);

// Finite topological space presented by minimal open neighborhoods
// U_x = intersection of all basis sets containing x. The four operators
// below are the standard finite-space forms:
//   closure(A)  = {x : U_x meets A}
//   interior(A) = {x in A : U_x inside A}
//   boundary(A) = closure(A) minus interior(A)
//   derived(A)  = {x : U_x meets A minus {x}}
class FiniteTopology {
 public:
  FiniteTopology(std::vector<std::string> ground, const Basis& basis);

  const std::vector<std::string>& ground() const { return ground_; }
  std::vector<std::string> neighborhood(std::string_view point) const;

  std::vector<std::string> closure(const std::vector<std::string>& a) const;
  std::vector<std::string> interior(const std::vector<std::string>& a) const;
  std::vector<std::string> boundary(const std::vector<std::string>& a) const;
  std::vector<std::string> derived_set(const std::vector<std::string>& a) const;

 private:
  std::vector<char> to_mask(const std::vector<std::string>& a) const;
  std::vector<std::string> from_mask(const std::vector<char>& mask) const;

  std::vector<std::string> ground_;
  std::map<std::string, int, std::less<>> pos_;
  std::vector<std::vector<char>> nbhd_;  // nbhd_[x][y]: y in U_x
};

}  // namespace periodica
