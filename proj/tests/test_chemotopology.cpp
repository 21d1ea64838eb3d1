#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "periodica/chemotopology.hpp"
#include "periodica/errors.hpp"
#include "periodica/tree_io.hpp"

using namespace periodica;

namespace {

// The worked 4-element example: a,b merge first, c joins them, d joins last.
Dendrogram caterpillar() {
  return Dendrogram({"a", "b", "c", "d"},
                    {{0, 1, 1.0}, {4, 2, 2.0}, {5, 3, 3.0}});
}

DistanceMatrix line_points() {
  // 1-D points at 0, 1, 10 named p, q, r.
  std::vector<double> d = {0, 1, 10, 1, 0, 9, 10, 9, 0};
  return DistanceMatrix({"p", "q", "r"}, d);
}

std::vector<std::string> ids(std::initializer_list<const char*> names) {
  return {names.begin(), names.end()};
}

StandardizedMatrix matrix_of(std::vector<std::string> items,
                             std::vector<std::vector<std::optional<double>>> rows,
                             int cols) {
  StandardizedMatrix m;
  m.item_ids = std::move(items);
  for (int c = 0; c < cols; ++c) m.properties.push_back("p" + std::to_string(c));
  m.rows = std::move(rows);
  return m;
}

std::uint32_t to_bits(const std::vector<std::string>& subset,
                      const std::vector<std::string>& ground) {
  std::uint32_t bits = 0;
  for (const auto& s : subset) {
    auto it = std::find(ground.begin(), ground.end(), s);
    REQUIRE(it != ground.end());
    bits |= 1u << (it - ground.begin());
  }
  return bits;
}

std::vector<std::string> from_bits(std::uint32_t bits,
                                   const std::vector<std::string>& ground) {
  std::vector<std::string> out;
  for (size_t i = 0; i < ground.size(); ++i)
    if (bits & (1u << i)) out.push_back(ground[i]);
  return out;
}

}  // namespace

TEST_CASE("distance matrices") {
  auto m = matrix_of(ids({"u", "v"}), {{0.0, 0.0}, {3.0, 4.0}}, 2);
  auto euclid = distance_matrix(m, Metric::Euclidean);
  CHECK(euclid.matrix.at(0, 1) == 5.0);
  auto manhattan = distance_matrix(m, Metric::Manhattan);
  CHECK(manhattan.matrix.at(0, 1) == 7.0);

  auto same = matrix_of(ids({"u", "v"}), {{1.5, -2.0}, {1.5, -2.0}}, 2);
  CHECK(distance_matrix(same, Metric::Euclidean).matrix.at(0, 1) == 0.0);

  auto with_gap = matrix_of(ids({"u", "v", "w"}),
                            {{1.0, 2.0}, {std::nullopt, 0.0}, {0.0, 0.0}}, 2);
  auto r = distance_matrix(with_gap, Metric::Euclidean);
  CHECK(r.excluded == std::vector<std::string>{"v"});
  CHECK(r.matrix.size() == 2);

  auto too_few = matrix_of(ids({"u", "v"}), {{1.0}, {std::nullopt}}, 1);
  CHECK_THROWS_AS(distance_matrix(too_few, Metric::Euclidean), InputError);
}

TEST_CASE("fixture distances equal a direct recomputation") {
  auto t = PropertyTable::load_file(PERIODICA_DATA_DIR "/elements.csv");
  auto std_m = standardize(t, default_analysis_properties());
  auto r = distance_matrix(std_m, Metric::Euclidean);
  CHECK(r.matrix.size() == 72);
  CHECK(r.excluded.empty());

  for (int i = 0; i < r.matrix.size(); ++i)
    for (int j = 0; j < r.matrix.size(); ++j) {
      double acc = 0.0;
      for (size_t c = 0; c < std_m.properties.size(); ++c) {
        double diff = *std_m.rows[static_cast<size_t>(i)][c] -
                      *std_m.rows[static_cast<size_t>(j)][c];
        acc += diff * diff;
      }
      CHECK(r.matrix.at(i, j) == std::sqrt(acc));
    }
}

TEST_CASE("unambiguous first merge") {
  for (Linkage linkage : {Linkage::Single, Linkage::Complete, Linkage::Average}) {
    auto tree = agglomerative_cluster(line_points(), linkage);
    CHECK(tree.merges()[0].left == 0);
    CHECK(tree.merges()[0].right == 1);
    CHECK(tree.merges()[0].height == 1.0);
  }
}

TEST_CASE("equidistant points merge in identifier order") {
  std::vector<double> d(16, 1.0);
  for (int i = 0; i < 4; ++i) d[static_cast<size_t>(i * 4 + i)] = 0.0;
  DistanceMatrix m({"a", "b", "c", "d"}, d);
  auto tree = agglomerative_cluster(m, Linkage::Single);
  // (a,b) first, then (ab, c), then (abc, d).
  CHECK(tree.merges()[0].left == 0);
  CHECK(tree.merges()[0].right == 1);
  CHECK(tree.merges()[1].left == 4);
  CHECK(tree.merges()[1].right == 2);
  CHECK(tree.merges()[2].left == 5);
  CHECK(tree.merges()[2].right == 3);
}

TEST_CASE("lance-williams matches the naive reference exactly") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 40; ++trial) {
    int n = oracles::pick(rng, 2, 20);
    auto dist = oracles::random_integer_matrix(rng, n, 8);  // ties guaranteed
    for (Linkage linkage : {Linkage::Single, Linkage::Complete, Linkage::Average}) {
      auto fast = agglomerative_cluster(dist, linkage);
      auto naive = oracles::naive_cluster(dist, linkage);
      CHECK(oracles::same_tree(fast, naive));
    }
  }
}

TEST_CASE("tree is independent of input row order") {
  std::mt19937 rng(7);
  auto dist = oracles::random_integer_matrix(rng, 9, 5);
  auto tree = agglomerative_cluster(dist, Linkage::Average);
  std::string reference = to_newick(tree);

  // Permute rows/columns, keep identifiers attached.
  std::vector<int> perm(9);
  for (int i = 0; i < 9; ++i) perm[static_cast<size_t>(i)] = i;
  for (int shuffle = 0; shuffle < 10; ++shuffle) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> pids;
    std::vector<double> pdata(81);
    for (int i = 0; i < 9; ++i) {
      pids.push_back(dist.ids()[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
      for (int j = 0; j < 9; ++j)
        pdata[static_cast<size_t>(i * 9 + j)] =
            dist.at(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
    }
    auto permuted = agglomerative_cluster(DistanceMatrix(pids, pdata), Linkage::Average);
    CHECK(to_newick(permuted) == reference);
  }
}

TEST_CASE("single and complete linkage cophenetic matrices are ultrametric") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    int n = oracles::pick(rng, 3, 12);
    auto dist = oracles::random_integer_matrix(rng, n, 12);
    for (Linkage linkage : {Linkage::Single, Linkage::Complete}) {
      auto coph = agglomerative_cluster(dist, linkage).cophenetic_matrix();
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            CHECK(coph.at(x, z) <= std::max(coph.at(x, y), coph.at(y, z)));
    }
  }
}

TEST_CASE("cuts") {
  auto tree = caterpillar();
  CHECK(cut_at_count(tree, 1) ==
        std::vector<std::vector<std::string>>{{"a", "b", "c", "d"}});
  CHECK(cut_at_count(tree, 4) ==
        std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}, {"d"}});
  CHECK(cut_at_count(tree, 2) ==
        std::vector<std::vector<std::string>>{{"a", "b", "c"}, {"d"}});
  CHECK(attainable_cluster_counts(tree) == std::vector<int>{1, 2, 3, 4});

  CHECK(cut_at_height(tree, 0.0) ==
        std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}, {"d"}});
  CHECK(cut_at_height(tree, 1.5) ==
        std::vector<std::vector<std::string>>{{"a", "b"}, {"c"}, {"d"}});
  CHECK(cut_at_height(tree, 3.0) ==
        std::vector<std::vector<std::string>>{{"a", "b", "c", "d"}});
  CHECK_THROWS_AS(cut_at_height(tree, -1.0), InputError);
  CHECK_THROWS_AS(cut_at_count(tree, 0), InputError);
  CHECK_THROWS_AS(cut_at_count(tree, 5), InputError);
}

TEST_CASE("tied heights make interior counts unattainable") {
  std::vector<double> d(16, 1.0);
  for (int i = 0; i < 4; ++i) d[static_cast<size_t>(i * 4 + i)] = 0.0;
  auto tree = agglomerative_cluster(DistanceMatrix({"a", "b", "c", "d"}, d),
                                    Linkage::Single);
  CHECK(attainable_cluster_counts(tree) == std::vector<int>{1, 4});
  CHECK_THROWS_WITH_AS(cut_at_count(tree, 2), doctest::Contains("attainable"),
                       InputError);
  CHECK_THROWS_AS(select_cut(tree), InputError);
}

TEST_CASE("cut selection maximizes the population product") {
  // Balanced 4-leaf tree: (a,b) at 1, (c,d) at 2, root at 3.
  Dendrogram balanced({"a", "b", "c", "d"},
                      {{0, 1, 1.0}, {2, 3, 2.0}, {4, 5, 3.0}});
  auto chosen = select_cut(balanced);
  CHECK(chosen.k == 2);
  CHECK(chosen.populations == std::vector<int>{2, 2});
  CHECK(chosen.score == 4);

  auto cat = select_cut(caterpillar());
  CHECK(cat.k == 2);
  CHECK(cat.score == 3);
  CHECK(cat.populations == std::vector<int>{3, 1});

  CHECK_THROWS_AS((select_cut(Dendrogram({"a", "b"}, {{0, 1, 1.0}}))), InputError);
}

TEST_CASE("cut selection matches exhaustive search on random trees") {
  std::mt19937 rng(3141);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 8;
    auto dist = oracles::random_integer_matrix(rng, n, 50);
    auto tree = agglomerative_cluster(dist, Linkage::Complete);

    int best_k = 0;
    unsigned long long best_score = 0;
    auto attainable = attainable_cluster_counts(tree);
    for (int k = 2; k < n; ++k) {
      if (std::find(attainable.begin(), attainable.end(), k) == attainable.end())
        continue;
      unsigned long long score = 1;
      for (const auto& cluster : cut_at_count(tree, k)) score *= cluster.size();
      if (score > best_score) {
        best_score = score;
        best_k = k;
      }
    }
    if (best_k == 0) {
      CHECK_THROWS_AS(select_cut(tree), InputError);
    } else {
      auto chosen = select_cut(tree);
      CHECK(chosen.k == best_k);
      CHECK(chosen.score == best_score);
    }
  }
}

TEST_CASE("branch basis") {
  auto basis = branch_basis(caterpillar());
  REQUIRE(basis.sets.size() == 3);
  CHECK(basis.sets[0] == std::vector<std::string>{"a", "b"});
  CHECK(basis.sets[1] == std::vector<std::string>{"a", "b", "c"});
  CHECK(basis.sets[2] == std::vector<std::string>{"a", "b", "c", "d"});

  auto two = branch_basis(Dendrogram({"x", "y"}, {{0, 1, 0.5}}));
  REQUIRE(two.sets.size() == 1);
  CHECK(two.sets[0] == std::vector<std::string>{"x", "y"});

  auto tree = caterpillar();
  auto with_singletons = branch_basis(tree, true);
  CHECK(with_singletons.sets.size() == 7);
  FiniteTopology discrete(tree.leaves(), with_singletons);
  for (const auto& leaf : tree.leaves())
    CHECK(discrete.neighborhood(leaf) == std::vector<std::string>{leaf});
}

TEST_CASE("branch bases are laminar") {
  std::mt19937 rng(616);
  for (int trial = 0; trial < 20; ++trial) {
    int n = oracles::pick(rng, 2, 14);
    auto tree = agglomerative_cluster(oracles::random_integer_matrix(rng, n, 9),
                                      Linkage::Average);
    auto basis = branch_basis(tree, oracles::pick(rng, 0, 1) == 1);
    for (const auto& a : basis.sets)
      for (const auto& b : basis.sets) {
        std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
        bool a_in_b = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
        bool b_in_a = std::includes(sa.begin(), sa.end(), sb.begin(), sb.end());
        std::vector<std::string> common;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                              std::back_inserter(common));
        CHECK((a_in_b || b_in_a || common.empty()));
      }
  }
}

TEST_CASE("full fixture selection excludes the incomplete row and matches recomputation") {
  auto t = PropertyTable::load_file(PERIODICA_DATA_DIR "/elements.csv");
  auto std_m = standardize(t, t.property_names());  // all 10 columns
  auto r = distance_matrix(std_m, Metric::Manhattan);
  CHECK(r.excluded == std::vector<std::string>{"At"});
  CHECK(r.matrix.size() == 71);

  // Indices into the standardized matrix for the surviving rows.
  std::vector<size_t> rows;
  for (size_t i = 0; i < std_m.item_ids.size(); ++i)
    if (std_m.item_ids[i] != "At") rows.push_back(i);
  for (int i = 0; i < r.matrix.size(); ++i)
    for (int j = 0; j < r.matrix.size(); ++j) {
      double acc = 0.0;
      for (size_t c = 0; c < std_m.properties.size(); ++c)
        acc += std::abs(*std_m.rows[rows[static_cast<size_t>(i)]][c] -
                        *std_m.rows[rows[static_cast<size_t>(j)]][c]);
      CHECK(r.matrix.at(i, j) == acc);
    }
}

TEST_CASE("minimal neighborhoods of the worked example") {
  FiniteTopology space(caterpillar().leaves(), branch_basis(caterpillar()));
  CHECK(space.neighborhood("a") == std::vector<std::string>{"a", "b"});
  CHECK(space.neighborhood("b") == std::vector<std::string>{"a", "b"});
  CHECK(space.neighborhood("c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(space.neighborhood("d") == std::vector<std::string>{"a", "b", "c", "d"});

  FiniteTopology indiscrete({"x", "y"}, Basis{{{"x", "y"}}});
  CHECK(indiscrete.neighborhood("x") == std::vector<std::string>{"x", "y"});
}

TEST_CASE("set operators on the worked example") {
  FiniteTopology space(caterpillar().leaves(), branch_basis(caterpillar()));
  CHECK(space.closure({"a"}) == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(space.interior({"a", "b"}) == std::vector<std::string>{"a", "b"});
  CHECK(space.boundary({"a", "b"}) == std::vector<std::string>{"c", "d"});
  CHECK(space.closure({}).empty());
  CHECK(space.interior({"a", "b", "c", "d"}) ==
        std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(space.derived_set({"a"}) == std::vector<std::string>{"b", "c", "d"});
  CHECK_THROWS_AS(space.closure({"zz"}), InputError);
}

TEST_CASE("operators agree with the enumerated-topology oracle") {
  std::mt19937 rng(2025);
  for (int trial = 0; trial < 60; ++trial) {
    int n = oracles::pick(rng, 1, 8);
    std::vector<std::string> ground;
    for (int i = 0; i < n; ++i) ground.push_back(std::string(1, static_cast<char>('a' + i)));

    int set_count = oracles::pick(rng, 1, 6);
    Basis basis;
    std::vector<std::uint32_t> masks;
    for (int s = 0; s < set_count; ++s) {
      std::uint32_t mask = static_cast<std::uint32_t>(oracles::pick(rng, 1, (1 << n) - 1));
      masks.push_back(mask);
      basis.sets.push_back(from_bits(mask, ground));
    }
    basis.sets.push_back(ground);  // Q itself

    FiniteTopology space(ground, basis);
    oracles::TopologyOracle oracle(n, masks);

    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
      auto a = from_bits(subset, ground);
      CHECK(to_bits(space.closure(a), ground) == oracle.closure(subset));
      CHECK(to_bits(space.interior(a), ground) == oracle.interior(subset));
      CHECK(to_bits(space.boundary(a), ground) == oracle.boundary(subset));
      CHECK(to_bits(space.derived_set(a), ground) == oracle.derived(subset));
    }
  }
}

TEST_CASE("kuratowski axioms, duality, and boundary symmetry") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    int n = oracles::pick(rng, 1, 8);
    std::vector<std::string> ground;
    for (int i = 0; i < n; ++i) ground.push_back(std::string(1, static_cast<char>('a' + i)));
    Basis basis;
    for (int s = 0, count = oracles::pick(rng, 1, 5); s < count; ++s)
      basis.sets.push_back(
          from_bits(static_cast<std::uint32_t>(oracles::pick(rng, 1, (1 << n) - 1)), ground));
    basis.sets.push_back(ground);
    FiniteTopology space(ground, basis);

    auto subset = [&] {
      return from_bits(static_cast<std::uint32_t>(oracles::pick(rng, 0, (1 << n) - 1)),
                       ground);
    };
    auto complement = [&](const std::vector<std::string>& a) {
      std::vector<std::string> out;
      for (const auto& g : ground)
        if (std::find(a.begin(), a.end(), g) == a.end()) out.push_back(g);
      return out;
    };

    CHECK(space.closure({}).empty());
    for (int rep = 0; rep < 5; ++rep) {
      auto a = subset();
      auto b = subset();
      auto cl_a = space.closure(a);
      // A subset of its closure, idempotent closure.
      for (const auto& x : a) CHECK(std::find(cl_a.begin(), cl_a.end(), x) != cl_a.end());
      CHECK(space.closure(cl_a) == cl_a);
      // closure(A u B) = closure(A) u closure(B)
      std::vector<std::string> ab = a;
      for (const auto& x : b)
        if (std::find(ab.begin(), ab.end(), x) == ab.end()) ab.push_back(x);
      std::sort(ab.begin(), ab.end());
      auto cl_ab = space.closure(ab);
      std::set<std::string> expected(cl_a.begin(), cl_a.end());
      for (const auto& x : space.closure(b)) expected.insert(x);
      CHECK(std::set<std::string>(cl_ab.begin(), cl_ab.end()) == expected);
      // interior(A) = Q \ closure(Q \ A)
      CHECK(space.interior(a) == complement(space.closure(complement(a))));
      // boundary(A) = boundary(Q \ A)
      CHECK(space.boundary(a) == space.boundary(complement(a)));
    }
  }
}

TEST_CASE("cophenetic distances of the worked example") {
  auto tree = caterpillar();
  CHECK(tree.cophenetic(0, 1) == 1.0);
  CHECK(tree.cophenetic(0, 2) == 2.0);
  CHECK(tree.cophenetic(1, 2) == 2.0);
  CHECK(tree.cophenetic(0, 3) == 3.0);
  CHECK(tree.cophenetic(2, 2) == 0.0);
  auto matrix = tree.cophenetic_matrix();
  CHECK(matrix.at(0, 3) == 3.0);
  CHECK(matrix.at(3, 1) == 3.0);
}

TEST_CASE("dendrogram validation") {
  CHECK_THROWS_AS((Dendrogram({"a", "b"}, {})), InputError);
  CHECK_THROWS_AS((Dendrogram({"a", "b"}, {{0, 0, 1.0}})), InputError);
  CHECK_THROWS_AS((Dendrogram({"a", "b"}, {{0, 2, 1.0}})), InputError);
  CHECK_THROWS_AS((Dendrogram({"a", "a"}, {{0, 1, 1.0}})), InputError);
  CHECK_THROWS_AS(
      (Dendrogram({"a", "b", "c"}, {{0, 1, 2.0}, {3, 2, 1.0}})), InputError);
  CHECK_THROWS_AS((Dendrogram({"a", "b"}, {{0, 1, -1.0}})), InputError);
  CHECK((Dendrogram({"solo"}, {}).leaf_count() == 1));
}

TEST_CASE("newick emission and parsing") {
  auto tree = caterpillar();
  std::string newick = to_newick(tree);
  CHECK(newick == "(((a:1,b:1):1,c:2):1,d:3);");

  auto parsed = parse_newick(newick);
  CHECK(oracles::same_tree(parsed, tree));
  CHECK(to_newick(parsed) == newick);

  CHECK_THROWS_AS(parse_newick("(a,b"), InputError);
  CHECK_THROWS_AS(parse_newick("(a:1,b:2);extra"), InputError);
  CHECK_THROWS_AS(parse_newick("((a:1,b:1):1,(c:1,d:1):2);"), InputError);  // not ultrametric
  CHECK_THROWS_AS(parse_newick("(a:1,b:1,c:1);"), InputError);              // not binary

  // Quoted labels survive the round trip.
  Dendrogram quoted({"x y", "z"}, {{0, 1, 1.5}});
  auto back = parse_newick(to_newick(quoted));
  CHECK(back.leaves() == std::vector<std::string>{"x y", "z"});
}

TEST_CASE("newick round-trips random trees") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    int n = oracles::pick(rng, 2, 16);
    auto dist = oracles::random_integer_matrix(rng, n, 30);
    auto tree = agglomerative_cluster(dist, Linkage::Average);
    auto back = parse_newick(to_newick(tree));
    REQUIRE(back.leaf_count() == tree.leaf_count());
    // Same branch structure: compare canonical re-emission and heights.
    CHECK(to_newick(back) == to_newick(tree));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double a = tree.cophenetic(tree.leaf_index(back.leaves()[static_cast<size_t>(i)]),
                                   tree.leaf_index(back.leaves()[static_cast<size_t>(j)]));
        double b = back.cophenetic(i, j);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
      }
  }
}

TEST_CASE("dot output shape") {
  auto dot = to_dot(caterpillar());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"a\"") != std::string::npos);
  CHECK(dot.find("n4 -> n0") != std::string::npos);
}
