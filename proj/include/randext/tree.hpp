#pragma once

#include <memory>

#include "randext/core.hpp"

namespace randext {

struct TreeNode {
    enum class Kind { Leaf, Output, Recurse };

    Kind kind = Kind::Leaf;
    std::string label;  // leaves only
    int symbol = -1;    // block symbol index, filled during validation
    std::vector<std::unique_ptr<TreeNode>> children;
    int line = 0;
    int col = 0;

    bool is_leaf() const { return kind == Kind::Leaf; }
};

// One internal node in pre-order.  branch_of maps a block symbol to the child
// whose subtree holds it, -1 when the block lies outside the node's support.
struct ComponentInfo {
    const TreeNode* node = nullptr;
    TreeNode::Kind role = TreeNode::Kind::Recurse;
    int degree = 0;
    std::vector<int> branch_of;                     // indexed by block symbol
    std::vector<int> support;                       // sorted block symbols
    std::vector<std::vector<int>> branch_support;   // per child, sorted
};

// A tree whose leaves carry all length-b blocks over the source alphabet,
// each exactly once.  Block symbol index = big-endian base-m value of the
// label.
struct BinarizationTree {
    std::unique_ptr<TreeNode> root;
    int m_src = 2;
    int block_len = 1;
    int leaf_count = 2;                      // m_src^block_len
    std::vector<std::string> leaf_labels;    // indexed by block symbol
    std::vector<ComponentInfo> components;   // internal nodes, pre-order
};

// Text format: (L <label>) for leaves, (O <node> <node> ...) and
// (R <node> <node> ...) for internal nodes with at least two children.
// '#' starts a comment running to end of line.  Labels are digit strings
// (0-9 then a-z) sharing one length; the source alphabet size is the largest
// digit plus one (at least 2).  Errors report line and column.
BinarizationTree parse_tree(const std::string& text);

// Canonical one-line form; parse_tree(serialize_tree(t)) rebuilds t.
std::string serialize_tree(const BinarizationTree& tree);

// Branch-digit string the component produces on a source string x: x is cut
// into blocks (|x| must be a multiple of the block length), blocks outside
// the support are dropped, the rest map to child indices.
SymbolString apply_component(const BinarizationTree& tree, int component,
                             const SymbolString& x);

// Composition (over the block alphabet) of that branch string for any input
// whose blocks have composition c.
Composition image_composition(const BinarizationTree& tree, int component,
                              const Composition& c);

// All component outputs of x, in pre-order.
std::vector<SymbolString> structure_map(const BinarizationTree& tree,
                                        const SymbolString& x);

// Unique source string whose blocks lie in class c and whose component
// outputs are the given parts; inverts structure_map.  Throws
// invalid_argument when the parts are inconsistent.
SymbolString structure_inverse(const BinarizationTree& tree,
                               const Composition& c,
                               const std::vector<SymbolString>& parts);

// Position j of the result takes the next unused symbol of
// streams[selector[j]].  Streams must be consumed exactly.
SymbolString interleave_streams(const SymbolString& selector,
                                const std::vector<SymbolString>& streams);

// Probability mass of the component's support under a block distribution.
double node_probability(const BinarizationTree& tree, int component,
                        const Distribution& block_dist);

// Conditional child distribution at the component; the support must carry
// positive probability.
Distribution branching_distribution(const BinarizationTree& tree,
                                    int component,
                                    const Distribution& block_dist);

// Sum over components of P(node) * H2(branching distribution); equals the
// block entropy for every distribution.
double weighted_branching_entropy(const BinarizationTree& tree,
                                  const Distribution& block_dist);

}  // namespace randext
