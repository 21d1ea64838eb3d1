#pragma once

#include <string>
#include <string_view>

#include "periodica/chemotopology.hpp"

namespace periodica {

// Newick serialization with branch lengths derived from merge heights
// (leaves sit at height 0). Children are emitted smaller-min-leaf first,
// so equal trees serialize to equal bytes.
std::string to_newick(const Dendrogram& tree);

// Parses binary ultrametric Newick as produced by to_newick. Node heights
// are rebuilt from leaf-path lengths; inconsistent (non-ultrametric) input
// is rejected.
Dendrogram parse_newick(std::string_view text);

// Graphviz rendering of the merge tree, internal nodes labelled by height.
std::string to_dot(const Dendrogram& tree);

}  // namespace periodica
