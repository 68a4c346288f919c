#ifndef PERMUTADKIT_TREES_HPP
#define PERMUTADKIT_TREES_HPP

#include <compare>
#include <string>
#include <vector>

namespace permutadkit {

/// Planar rooted tree whose internal vertices have at least two children,
/// stored as the preorder code: entry = child count for an internal vertex,
/// 0 for a leaf. Internal vertices are numbered by preorder (depth-first,
/// left to right), leaves left to right, both 1-based.
class PlanarTree {
public:
    PlanarTree() : code_{0} {} // a single leaf

    static PlanarTree leaf() { return PlanarTree(); }
    static PlanarTree corolla(int leaves);
    static PlanarTree from_code(std::vector<int> code);

    const std::vector<int>& code() const { return code_; }
    int leaf_count() const;
    int vertex_count() const;

    struct VertexData {
        int code_pos = 0;                              // position in the preorder code
        int children = 0;                              // incoming edge count
        int first_leaf = 0, last_leaf = 0;             // leaf segment above the vertex
        std::vector<std::pair<int, int>> child_leaves; // leaf range per child, left to right
    };

    /// Internal vertices in preorder.
    std::vector<VertexData> vertices() const;

    /// Splices `inserted` in place of the given leaf.
    PlanarTree graft(int leaf_index, const PlanarTree& inserted) const;

    /// Collapse-inverse used by differentials: replace vertex v (with
    /// t = a+b+3 children) by an outer vertex with a+2 children whose i-th
    /// child is a new inner vertex gathering the original children
    /// i..i+b+1. Returns the new tree and the preorder index of the inner
    /// vertex (the outer vertex keeps v's index).
    std::pair<PlanarTree, int> expand_vertex(int v, int a, int b, int i) const;

    friend bool operator==(const PlanarTree&, const PlanarTree&) = default;
    friend auto operator<=>(const PlanarTree& a, const PlanarTree& b) {
        return a.code_ <=> b.code_;
    }

    /// Nested parentheses with '.' leaves, e.g. "((..).)"
    std::string str() const;

private:
    std::vector<int> code_;

    explicit PlanarTree(std::vector<int> code) : code_(std::move(code)) {}
    int subtree_end(int pos) const; // one past the subtree rooted at pos
};

/// All trees with the given number of leaves and internal vertices, ordered
/// by their codes. vertices = 0 is a single leaf (only for leaves = 1).
std::vector<PlanarTree> all_trees(int leaves, int vertices);

} // namespace permutadkit

#endif
