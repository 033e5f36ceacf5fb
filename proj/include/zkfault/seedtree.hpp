#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zkfault/xof.hpp"

namespace zkfault {

// Heap layout with 2l leaves: node 0 is the root, children of i are 2i+1 and 2i+2,
// round r lives at leaf index 2l-1+r. The tree has 4l-1 nodes.
inline size_t parent(size_t i) { return i == 0 ? 0 : (i - 1) / 2; }
size_t leaf_count_for(size_t t);  // 2l = 2^ceil(log2 t), at least 2
inline size_t node_count(size_t l2) { return 2 * l2 - 1; }
inline size_t leaf_node(size_t l2, size_t round) { return l2 - 1 + round; }
size_t path_length(size_t l2);  // nodes on a leaf-to-root path, root included

struct SeedTree {
    size_t t = 0;
    size_t l2 = 0;
    Seed salt;
    std::vector<Seed> nodes;

    const Seed& leaf(size_t round) const { return nodes[leaf_node(l2, round)]; }
};

std::pair<Seed, Seed> derive_children(const Seed& node, const Seed& salt, size_t index);
SeedTree build_seed_tree(const Seed& master, const Seed& salt, size_t t);

// x[i] = 1 marks a node that must stay hidden.
using ReferenceTree = std::vector<uint8_t>;

ReferenceTree compute_seeds_to_publish(const std::vector<uint8_t>& f, size_t l2);
void recompute_ancestors(ReferenceTree& x, size_t node);
// x[node] := 0 followed by ancestor recomputation.
ReferenceTree clear_node(ReferenceTree x, size_t node);
// Indices i with x[i] = 0 and x[parent(i)] = 1, ascending.
std::vector<size_t> published_nodes(const ReferenceTree& x);
// First and last round under node, padding rounds included.
std::pair<size_t, size_t> leaf_range(size_t node, size_t l2);
bool is_ancestor_or_self(size_t a, size_t node);

struct TreeNode {
    size_t index = 0;
    Seed seed;
    bool operator==(const TreeNode& o) const = default;
};
using TreeNodeList = std::vector<TreeNode>;
using LeafMap = std::vector<std::optional<Seed>>;  // indexed by round, length t

TreeNodeList seed_tree_paths(const SeedTree& tree, const std::vector<uint8_t>& f);
TreeNodeList select_nodes(const SeedTree& tree, const std::vector<size_t>& indices);
std::vector<Seed> wire_seeds(const TreeNodeList& nodes);

// Leaf seeds derivable from the given nodes, for rounds below t.
LeafMap expand_nodes(const TreeNodeList& nodes, const Seed& salt, size_t l2, size_t t);
// Places wire seeds at the positions published under x; throws PathMismatch on a count mismatch.
LeafMap regenerate_with_reference(const std::vector<Seed>& seeds, const Seed& salt, const ReferenceTree& x,
                                  size_t t);
LeafMap regenerate_leaves(const std::vector<Seed>& seeds, const Seed& salt, const std::vector<uint8_t>& f,
                          size_t l2);
LeafMap seed_tree_update(const std::vector<Seed>& seeds, const Seed& salt, const Digest& d, size_t faulted_node,
                         size_t l2);

}  // namespace zkfault
