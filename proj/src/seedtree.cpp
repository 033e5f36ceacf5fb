#include "zkfault/seedtree.hpp"

#include "zkfault/error.hpp"

namespace zkfault {

size_t leaf_count_for(size_t t) {
    size_t l2 = 2;
    while (l2 < t) l2 *= 2;
    return l2;
}

size_t path_length(size_t l2) {
    size_t len = 1;
    for (size_t v = l2; v > 1; v /= 2) ++len;
    return len;
}

std::pair<Seed, Seed> derive_children(const Seed& node, const Seed& salt, size_t index) {
    Bytes in = node;
    append(in, salt);
    append_u32le(in, static_cast<uint32_t>(index));
    Bytes out = xof_expand(in, tag::tree, 2 * node.size());
    const auto mid = out.begin() + static_cast<std::ptrdiff_t>(node.size());
    return {Seed(out.begin(), mid), Seed(mid, out.end())};
}

SeedTree build_seed_tree(const Seed& master, const Seed& salt, size_t t) {
    if (t == 0) throw BadParams("seed tree needs at least one leaf");
    SeedTree tree{t, leaf_count_for(t), salt, {}};
    tree.nodes.resize(node_count(tree.l2));
    tree.nodes[0] = master;
    for (size_t i = 0; i + 1 < tree.l2; ++i) {
        auto [l, r] = derive_children(tree.nodes[i], salt, i);
        tree.nodes[2 * i + 1] = std::move(l);
        tree.nodes[2 * i + 2] = std::move(r);
    }
    return tree;
}

ReferenceTree compute_seeds_to_publish(const std::vector<uint8_t>& f, size_t l2) {
    if (f.size() > l2) throw BadParams("mask longer than the leaf count");
    ReferenceTree x(node_count(l2), 0);
    for (size_t i = 0; i < f.size(); ++i) x[leaf_node(l2, i)] = f[i] ? 1 : 0;
    for (size_t i = l2 - 1; i-- > 0;) x[i] = x[2 * i + 1] | x[2 * i + 2];
    return x;
}

void recompute_ancestors(ReferenceTree& x, size_t node) {
    while (node != 0) {
        node = parent(node);
        x[node] = x[2 * node + 1] | x[2 * node + 2];
    }
}

ReferenceTree clear_node(ReferenceTree x, size_t node) {
    x.at(node) = 0;
    recompute_ancestors(x, node);
    return x;
}

std::vector<size_t> published_nodes(const ReferenceTree& x) {
    std::vector<size_t> out;
    for (size_t i = 1; i < x.size(); ++i)
        if (x[i] == 0 && x[parent(i)] == 1) out.push_back(i);
    return out;
}

std::pair<size_t, size_t> leaf_range(size_t node, size_t l2) {
    size_t lo = node, hi = node;
    while (lo < l2 - 1) {
        lo = 2 * lo + 1;
        hi = 2 * hi + 2;
    }
    return {lo - (l2 - 1), hi - (l2 - 1)};
}

bool is_ancestor_or_self(size_t a, size_t node) {
    while (node > a) node = parent(node);
    return node == a;
}

TreeNodeList select_nodes(const SeedTree& tree, const std::vector<size_t>& indices) {
    TreeNodeList out;
    out.reserve(indices.size());
    for (size_t i : indices) out.push_back({i, tree.nodes.at(i)});
    return out;
}

TreeNodeList seed_tree_paths(const SeedTree& tree, const std::vector<uint8_t>& f) {
    return select_nodes(tree, published_nodes(compute_seeds_to_publish(f, tree.l2)));
}

std::vector<Seed> wire_seeds(const TreeNodeList& nodes) {
    std::vector<Seed> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.push_back(n.seed);
    return out;
}

namespace {

void descend(size_t index, const Seed& seed, const Seed& salt, size_t l2, size_t t, LeafMap& out) {
    if (index >= l2 - 1) {
        const size_t round = index - (l2 - 1);
        if (round < t) out[round] = seed;
        return;
    }
    if (leaf_range(index, l2).first >= t) return;
    auto [l, r] = derive_children(seed, salt, index);
    descend(2 * index + 1, l, salt, l2, t, out);
    descend(2 * index + 2, r, salt, l2, t, out);
}

}  // namespace

LeafMap expand_nodes(const TreeNodeList& nodes, const Seed& salt, size_t l2, size_t t) {
    LeafMap out(t);
    for (const auto& n : nodes) {
        if (n.index >= node_count(l2)) throw PathMismatch("tree node index out of range");
        descend(n.index, n.seed, salt, l2, t, out);
    }
    return out;
}

LeafMap regenerate_with_reference(const std::vector<Seed>& seeds, const Seed& salt, const ReferenceTree& x,
                                  size_t t) {
    const std::vector<size_t> idx = published_nodes(x);
    if (idx.size() != seeds.size()) throw PathMismatch("published node count does not match the reference tree");
    TreeNodeList nodes;
    nodes.reserve(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) nodes.push_back({idx[i], seeds[i]});
    return expand_nodes(nodes, salt, (x.size() + 1) / 2, t);
}

LeafMap regenerate_leaves(const std::vector<Seed>& seeds, const Seed& salt, const std::vector<uint8_t>& f,
                          size_t l2) {
    return regenerate_with_reference(seeds, salt, compute_seeds_to_publish(f, l2), f.size());
}

LeafMap seed_tree_update(const std::vector<Seed>& seeds, const Seed& salt, const Digest& d, size_t faulted_node,
                         size_t l2) {
    ReferenceTree x = clear_node(compute_seeds_to_publish(d.mask(), l2), faulted_node);
    return regenerate_with_reference(seeds, salt, x, d.t);
}

}  // namespace zkfault
