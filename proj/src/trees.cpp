#include "permutadkit/trees.hpp"

#include <algorithm>
#include <stdexcept>

namespace permutadkit {

namespace {

void validate_code(const std::vector<int>& code) {
    if (code.empty()) throw std::domain_error("PlanarTree: empty code");
    long long pending = 1;
    for (std::size_t p = 0; p < code.size(); ++p) {
        if (pending <= 0) throw std::domain_error("PlanarTree: malformed code");
        if (code[p] == 1 || code[p] < 0) throw std::domain_error("PlanarTree: vertices need >= 2 children");
        pending += code[p] - 1;
    }
    if (pending != 0) throw std::domain_error("PlanarTree: truncated code");
}

} // namespace

PlanarTree PlanarTree::corolla(int leaves) {
    if (leaves < 2) throw std::domain_error("corolla: need at least two leaves");
    std::vector<int> code{leaves};
    code.insert(code.end(), leaves, 0);
    return PlanarTree(std::move(code));
}

PlanarTree PlanarTree::from_code(std::vector<int> code) {
    validate_code(code);
    return PlanarTree(std::move(code));
}

int PlanarTree::leaf_count() const {
    return static_cast<int>(std::count(code_.begin(), code_.end(), 0));
}

int PlanarTree::vertex_count() const {
    return static_cast<int>(code_.size()) - leaf_count();
}

int PlanarTree::subtree_end(int pos) const {
    int pending = 1;
    int p = pos;
    while (pending > 0) {
        pending += code_[p] - 1;
        ++p;
    }
    return p;
}

std::vector<PlanarTree::VertexData> PlanarTree::vertices() const {
    // leaf index per code position (prefix count of zeros)
    std::vector<int> leaf_before(code_.size() + 1, 0);
    for (std::size_t p = 0; p < code_.size(); ++p)
        leaf_before[p + 1] = leaf_before[p] + (code_[p] == 0 ? 1 : 0);

    std::vector<VertexData> out;
    for (std::size_t p = 0; p < code_.size(); ++p) {
        if (code_[p] == 0) continue;
        VertexData v;
        v.code_pos = static_cast<int>(p);
        v.children = code_[p];
        int child = static_cast<int>(p) + 1;
        for (int c = 0; c < code_[p]; ++c) {
            int end = subtree_end(child);
            v.child_leaves.emplace_back(leaf_before[child] + 1, leaf_before[end]);
            child = end;
        }
        v.first_leaf = v.child_leaves.front().first;
        v.last_leaf = v.child_leaves.back().second;
        out.push_back(std::move(v));
    }
    return out;
}

PlanarTree PlanarTree::graft(int leaf_index, const PlanarTree& inserted) const {
    int seen = 0;
    for (std::size_t p = 0; p < code_.size(); ++p) {
        if (code_[p] != 0) continue;
        if (++seen == leaf_index) {
            std::vector<int> code(code_.begin(), code_.begin() + p);
            code.insert(code.end(), inserted.code_.begin(), inserted.code_.end());
            code.insert(code.end(), code_.begin() + p + 1, code_.end());
            return PlanarTree(std::move(code));
        }
    }
    throw std::domain_error("graft: leaf index out of range");
}

std::pair<PlanarTree, int> PlanarTree::expand_vertex(int v, int a, int b, int i) const {
    auto verts = vertices();
    if (v < 1 || v > static_cast<int>(verts.size()))
        throw std::domain_error("expand_vertex: vertex index out of range");
    const VertexData& vd = verts[v - 1];
    if (vd.children != a + b + 3 || i < 1 || i > a + 2)
        throw std::domain_error("expand_vertex: incompatible collapse data");

    // child subtree boundaries of v in the code
    std::vector<int> starts, ends;
    int child = vd.code_pos + 1;
    for (int c = 0; c < vd.children; ++c) {
        starts.push_back(child);
        child = subtree_end(child);
        ends.push_back(child);
    }

    std::vector<int> code(code_.begin(), code_.begin() + vd.code_pos);
    code.push_back(a + 2);
    for (int c = 0; c < i - 1; ++c)
        code.insert(code.end(), code_.begin() + starts[c], code_.begin() + ends[c]);
    int inner_pos = static_cast<int>(code.size());
    code.push_back(b + 2);
    for (int c = i - 1; c <= i + b; ++c)
        code.insert(code.end(), code_.begin() + starts[c], code_.begin() + ends[c]);
    for (int c = i + b + 1; c < vd.children; ++c)
        code.insert(code.end(), code_.begin() + starts[c], code_.begin() + ends[c]);
    code.insert(code.end(), code_.begin() + ends.back(), code_.end());

    PlanarTree expanded(std::move(code));
    // preorder index of the inner vertex
    int inner_index = 0;
    for (int p = 0; p <= inner_pos; ++p)
        if (expanded.code_[p] != 0) ++inner_index;
    return {std::move(expanded), inner_index};
}

std::string PlanarTree::str() const {
    std::string out;
    std::vector<int> pending;
    for (int c : code_) {
        if (c == 0) {
            out += '.';
        } else {
            out += '(';
            pending.push_back(c + 1);
        }
        while (!pending.empty() && --pending.back() == 0) {
            pending.pop_back();
            out += ')';
        }
    }
    return out;
}

std::vector<PlanarTree> all_trees(int leaves, int vertices) {
    std::vector<PlanarTree> out;
    if (leaves < 1) return out;
    if (vertices == 0) {
        if (leaves == 1) out.push_back(PlanarTree::leaf());
        return out;
    }
    if (leaves < 2) return out;
    // depth-first over preorder codes
    std::vector<int> code;
    int total = leaves + vertices;
    auto rec = [&](auto&& self, int pending, int leaves_left, int verts_left) -> void {
        if (pending == 0) {
            if (leaves_left == 0 && verts_left == 0) out.push_back(PlanarTree::from_code(code));
            return;
        }
        if (static_cast<int>(code.size()) >= total) return;
        // leaf
        if (leaves_left > 0) {
            code.push_back(0);
            self(self, pending - 1, leaves_left - 1, verts_left);
            code.pop_back();
        }
        // internal vertex with c children
        if (verts_left > 0)
            for (int c = 2; c <= leaves_left + verts_left - 1; ++c) {
                code.push_back(c);
                self(self, pending + c - 1, leaves_left, verts_left - 1);
                code.pop_back();
            }
    };
    rec(rec, 1, leaves, vertices);
    return out;
}

} // namespace permutadkit
