#include "periodica/tree_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "periodica/csv.hpp"
#include "periodica/errors.hpp"

namespace periodica {

namespace {

bool needs_quotes(const std::string& label) {
  if (label.empty()) return true;
  for (char c : label) {
    bool plain = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                 c == '.' || c == '-' || c == '+';
    if (!plain) return true;
  }
  return false;
}

std::string quoted(const std::string& label) {
  if (!needs_quotes(label)) return label;
  std::string out = "'";
  for (char c : label) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += "'";
  return out;
}

struct NodeView {
  const Dendrogram* tree;
  double node_height(int node) const {
    return node < tree->leaf_count()
               ? 0.0
               : tree->merges()[static_cast<size_t>(node - tree->leaf_count())].height;
  }
  const std::string& min_leaf(int node) const {
    auto leaves = tree->node_leaves(node);
    // node_leaves is sorted by index; find the lexicographic minimum.
    const std::string* best = &tree->leaves()[static_cast<size_t>(leaves[0])];
    for (int i : leaves) {
      const std::string& s = tree->leaves()[static_cast<size_t>(i)];
      if (s < *best) best = &s;
    }
    return *best;
  }
};

void write_newick(const NodeView& view, int node, double parent_height,
                  bool is_root, std::string& out) {
  const Dendrogram& tree = *view.tree;
  if (node < tree.leaf_count()) {
    out += quoted(tree.leaves()[static_cast<size_t>(node)]);
  } else {
    const auto& m = tree.merges()[static_cast<size_t>(node - tree.leaf_count())];
    int first = m.left, second = m.right;
    if (view.min_leaf(second) < view.min_leaf(first)) std::swap(first, second);
    out += '(';
    write_newick(view, first, view.node_height(node), false, out);
    out += ',';
    write_newick(view, second, view.node_height(node), false, out);
    out += ')';
  }
  if (!is_root) {
    out += ':';
    out += csv::format_double(parent_height - view.node_height(node));
  }
}

struct ParsedNode {
  int left = -1;   // indexes into the parsed-node pool, -1 for leaves
  int right = -1;
  std::string label;
  double branch_length = 0.0;
  double height = 0.0;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  Dendrogram parse() {
    int root = parse_node();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ';')
      throw InputError("newick: expected ';' at position " + std::to_string(pos_));
    ++pos_;
    skip_space();
    if (pos_ != text_.size())
      throw InputError("newick: trailing characters after ';'");
    compute_height(root);
    return build(root);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  int parse_node() {
    skip_space();
    if (pos_ >= text_.size()) throw InputError("newick: unexpected end of input");
    ParsedNode node;
    if (text_[pos_] == '(') {
      ++pos_;
      node.left = parse_node();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ',')
        throw InputError("newick: binary tree expected, missing ','");
      ++pos_;
      node.right = parse_node();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw InputError("newick: missing ')' (only binary trees are accepted)");
      ++pos_;
    } else {
      node.label = parse_label();
      if (node.label.empty()) throw InputError("newick: empty leaf label");
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      node.branch_length = parse_number();
      if (!(node.branch_length >= 0.0))
        throw InputError("newick: branch lengths must be non-negative");
    }
    pool_.push_back(std::move(node));
    return static_cast<int>(pool_.size()) - 1;
  }

  std::string parse_label() {
    skip_space();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (pos_ < text_.size()) {
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          return out;
        }
        out += text_[pos_++];
      }
      throw InputError("newick: unterminated quoted label");
    }
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ',' || c == ')' || c == '(' || c == ':' || c == ';' ||
          std::isspace(static_cast<unsigned char>(c)))
        break;
      out += c;
      ++pos_;
    }
    return out;
  }

  double parse_number() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
          c == '+' || c == 'e' || c == 'E')
        ++pos_;
      else
        break;
    }
    double v = 0.0;
    if (!csv::parse_double(std::string(text_.substr(start, pos_ - start)), v))
      throw InputError("newick: malformed branch length at position " +
                       std::to_string(start));
    return v;
  }

  // Heights from leaf paths; every leaf of a node must sit at the same
  // depth below it or the tree is not an ultrametric dendrogram.
  double compute_height(int idx) {
    ParsedNode& node = pool_[static_cast<size_t>(idx)];
    if (node.left < 0) {
      node.height = 0.0;
      return 0.0;
    }
    double from_left = compute_height(node.left) +
                       pool_[static_cast<size_t>(node.left)].branch_length;
    double from_right = compute_height(node.right) +
                        pool_[static_cast<size_t>(node.right)].branch_length;
    double scale = std::max({1.0, std::abs(from_left), std::abs(from_right)});
    if (std::abs(from_left - from_right) > 1e-9 * scale)
      throw InputError("newick: tree is not ultrametric (unequal leaf depths)");
    node.height = from_left;
    return node.height;
  }

  Dendrogram build(int root) {
    std::vector<std::string> leaves;
    std::vector<int> order;  // internal nodes, children before parents
    collect(root, leaves, order);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return pool_[static_cast<size_t>(a)].height < pool_[static_cast<size_t>(b)].height;
    });
    std::vector<int> node_id(pool_.size(), -1);
    int leaf_seen = 0;
    for (size_t i = 0; i < pool_.size(); ++i)
      if (pool_[i].left < 0) node_id[i] = leaf_seen++;
    std::vector<Merge> merges;
    int next = static_cast<int>(leaves.size());
    for (int idx : order) {
      const ParsedNode& node = pool_[static_cast<size_t>(idx)];
      Merge m;
      m.left = node_id[static_cast<size_t>(node.left)];
      m.right = node_id[static_cast<size_t>(node.right)];
      m.height = node.height;
      if (m.left < 0 || m.right < 0)
        throw InputError("newick: tied heights nest a parent below its child");
      merges.push_back(m);
      node_id[static_cast<size_t>(idx)] = next++;
    }
    return Dendrogram(std::move(leaves), std::move(merges));
  }

  void collect(int idx, std::vector<std::string>& leaves, std::vector<int>& order) {
    const ParsedNode& node = pool_[static_cast<size_t>(idx)];
    if (node.left < 0) {
      leaves.push_back(node.label);
      return;
    }
    collect(node.left, leaves, order);
    collect(node.right, leaves, order);
    order.push_back(idx);
  }

  std::string_view text_;
  size_t pos_ = 0;
  std::vector<ParsedNode> pool_;
};

}  // namespace

std::string to_newick(const Dendrogram& tree) {
  std::string out;
  NodeView view{&tree};
  write_newick(view, tree.root(), 0.0, true, out);
  out += ';';
  return out;
}

Dendrogram parse_newick(std::string_view text) {
  return NewickParser(text).parse();
}

std::string to_dot(const Dendrogram& tree) {
  std::string out = "digraph dendrogram {\n  node [shape=plaintext];\n";
  const int n = tree.leaf_count();
  for (int i = 0; i < n; ++i)
    out += "  n" + std::to_string(i) + " [label=\"" +
           tree.leaves()[static_cast<size_t>(i)] + "\"];\n";
  for (size_t m = 0; m < tree.merges().size(); ++m) {
    int id = n + static_cast<int>(m);
    out += "  n" + std::to_string(id) + " [label=\"" +
           csv::format_double(tree.merges()[m].height) + "\"];\n";
  }
  for (size_t m = 0; m < tree.merges().size(); ++m) {
    int id = n + static_cast<int>(m);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(tree.merges()[m].left) + ";\n";
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(tree.merges()[m].right) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace periodica
