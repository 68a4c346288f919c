#include "permutadkit/surjections.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permutadkit {

namespace {

void validate(const std::vector<int>& images, int codomain) {
    if (images.empty()) throw std::domain_error("Surjection: empty domain");
    if (codomain < 1 || codomain > static_cast<int>(images.size()))
        throw std::domain_error("Surjection: codomain size out of range");
    std::vector<bool> hit(codomain, false);
    for (int v : images) {
        if (v < 1 || v > codomain) throw std::domain_error("Surjection: image out of range");
        hit[v - 1] = true;
    }
    for (bool h : hit)
        if (!h) throw std::domain_error("Surjection: not surjective");
}

} // namespace

Surjection::Surjection(std::vector<int> images)
    : Surjection(images, images.empty() ? 0 : *std::max_element(images.begin(), images.end())) {}

Surjection::Surjection(std::vector<int> images, int codomain)
    : images_(std::move(images)), codomain_(codomain) {
    validate(images_, codomain_);
}

Surjection Surjection::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Surjection(std::move(v), n);
}

Surjection Surjection::collapse(int n) {
    return Surjection(std::vector<int>(n, 1), 1);
}

bool Surjection::is_identity() const {
    for (int j = 1; j <= domain_size(); ++j)
        if (images_[j - 1] != j) return false;
    return true;
}

std::string Surjection::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) os << ' ';
        os << images_[i];
    }
    return os.str();
}

Surjection Surjection::parse(const std::string& text) {
    std::istringstream is(text);
    std::vector<int> images;
    int v;
    while (is >> v) images.push_back(v);
    if (!is.eof()) throw std::invalid_argument("Surjection::parse: bad token in '" + text + "'");
    return Surjection(std::move(images));
}

std::vector<Surjection> all_surjections(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw std::domain_error("all_surjections: need 1 <= k <= n");
    std::vector<Surjection> out;
    std::vector<int> images(n);
    // depth-first in lex order, pruned when the unseen values cannot fit
    auto plain = [&](auto&& self, int pos, int distinct, std::vector<bool>& seen) -> void {
        if (k - distinct > n - pos) return;
        if (pos == n) {
            out.emplace_back(images, k);
            return;
        }
        for (int v = 1; v <= k; ++v) {
            bool nu = !seen[v - 1];
            if (nu) seen[v - 1] = true;
            images[pos] = v;
            self(self, pos + 1, distinct + (nu ? 1 : 0), seen);
            if (nu) seen[v - 1] = false;
        }
    };
    std::vector<bool> seen(k, false);
    plain(plain, 0, 0, seen);
    return out;
}

long long count_surjections(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw std::domain_error("count_surjections: need 1 <= k <= n");
    // inclusion-exclusion over missed values
    long long total = 0;
    long long binom = 1; // C(k, j)
    for (int j = 0; j <= k; ++j) {
        long long pw = 1;
        for (int t = 0; t < n; ++t) pw *= (k - j);
        total += (j % 2 == 0 ? 1 : -1) * binom * pw;
        binom = binom * (k - j) / (j + 1);
    }
    return total;
}

OrderedPartition partition_of_surjection(const Surjection& r) {
    OrderedPartition blocks(r.codomain_size());
    for (int j = 1; j <= r.domain_size(); ++j) blocks[r(j) - 1].push_back(j);
    return blocks;
}

Surjection surjection_of_partition(const OrderedPartition& p) {
    int n = 0;
    for (const auto& b : p) n += static_cast<int>(b.size());
    std::vector<int> images(n, 0);
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j].empty()) throw std::domain_error("surjection_of_partition: empty block");
        for (int i : p[j]) {
            if (i < 1 || i > n || images[i - 1] != 0)
                throw std::domain_error("surjection_of_partition: blocks do not partition {1..n}");
            images[i - 1] = static_cast<int>(j) + 1;
        }
    }
    return Surjection(std::move(images), static_cast<int>(p.size()));
}

std::string partition_str(const OrderedPartition& p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j) os << '|';
        for (std::size_t i = 0; i < p[j].size(); ++i) {
            if (i) os << ',';
            os << p[j][i];
        }
    }
    os << ']';
    return os.str();
}

OrderedPartition parse_partition(const std::string& text) {
    std::string body = text;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw std::invalid_argument("parse_partition: expected [..|..] form");
    body = body.substr(1, body.size() - 2);
    OrderedPartition p;
    std::istringstream blocks(body);
    std::string blk;
    while (std::getline(blocks, blk, '|')) {
        std::vector<int> b;
        std::istringstream items(blk);
        std::string item;
        while (std::getline(items, item, ',')) b.push_back(std::stoi(item));
        std::sort(b.begin(), b.end());
        p.push_back(std::move(b));
    }
    surjection_of_partition(p); // validates
    return p;
}

std::vector<int> block_sizes(const Surjection& r) {
    std::vector<int> sizes(r.codomain_size(), 0);
    for (int v : r.images()) ++sizes[v - 1];
    return sizes;
}

int shuffle_sign(const Surjection& r) {
    std::vector<int> perm;
    perm.reserve(r.domain_size());
    for (const auto& block : partition_of_surjection(r))
        perm.insert(perm.end(), block.begin(), block.end());
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::map<int, int> standardize(const std::vector<int>& subset) {
    std::map<int, int> m;
    int prev = 0;
    int next = 1;
    bool first = true;
    for (int v : subset) {
        if (!first && v <= prev) throw std::domain_error("standardize: input not strictly increasing");
        first = false;
        prev = v;
        m[v] = next++;
    }
    return m;
}

namespace {

std::vector<int> standardized_block(const std::vector<int>& block, const std::map<int, int>& st) {
    std::vector<int> out;
    out.reserve(block.size());
    for (int v : block) out.push_back(st.at(v));
    return out;
}

} // namespace

OrderedPartition project_blocks(const OrderedPartition& p, BlockProjection which) {
    if (p.size() != 3) throw std::domain_error("project_blocks: need exactly 3 blocks");
    auto merged = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> m(a);
        m.insert(m.end(), b.begin(), b.end());
        std::sort(m.begin(), m.end());
        return m;
    };
    switch (which) {
    case BlockProjection::merge_23:
        return {p[0], merged(p[1], p[2])};
    case BlockProjection::merge_12:
        return {merged(p[0], p[1]), p[2]};
    case BlockProjection::take_12: {
        auto st = standardize(merged(p[0], p[1]));
        return {standardized_block(p[0], st), standardized_block(p[1], st)};
    }
    case BlockProjection::take_23: {
        auto st = standardize(merged(p[1], p[2]));
        return {standardized_block(p[1], st), standardized_block(p[2], st)};
    }
    }
    throw std::logic_error("project_blocks: unreachable");
}

Surjection compose_left(const Surjection& t, const Surjection& s) {
    if (t.codomain_size() != 2 || s.codomain_size() != 2)
        throw std::domain_error("compose_left: both arguments must target {1,2}");
    std::vector<int> g;
    for (int j = 1; j <= t.domain_size(); ++j)
        if (t(j) == 2) g.push_back(j);
    if (s.domain_size() != static_cast<int>(g.size()))
        throw std::domain_error("compose_left: inner domain must match t^{-1}(2)");
    std::vector<int> images(t.domain_size(), 1);
    for (std::size_t idx = 0; idx < g.size(); ++idx)
        images[g[idx] - 1] = 1 + s(static_cast<int>(idx) + 1);
    return Surjection(std::move(images), 3);
}

Surjection compose_right(const Surjection& u, const Surjection& v) {
    if (u.codomain_size() != 2 || v.codomain_size() != 2)
        throw std::domain_error("compose_right: both arguments must target {1,2}");
    std::vector<int> h;
    for (int j = 1; j <= u.domain_size(); ++j)
        if (u(j) == 1) h.push_back(j);
    if (v.domain_size() != static_cast<int>(h.size()))
        throw std::domain_error("compose_right: inner domain must match u^{-1}(1)");
    std::vector<int> images(u.domain_size(), 3);
    for (std::size_t idx = 0; idx < h.size(); ++idx)
        images[h[idx] - 1] = v(static_cast<int>(idx) + 1);
    return Surjection(std::move(images), 3);
}

Surjection substitute(const Surjection& outer, const std::vector<Surjection>& inner) {
    auto sizes = block_sizes(outer);
    if (inner.size() != sizes.size())
        throw std::domain_error("substitute: need one inner surjection per block");
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i].domain_size() != sizes[i])
            throw std::domain_error("substitute: inner domain does not match block size");

    std::vector<int> offset(inner.size() + 1, 0);
    for (std::size_t i = 0; i < inner.size(); ++i)
        offset[i + 1] = offset[i] + inner[i].codomain_size();

    std::vector<int> rank(outer.codomain_size(), 0);
    std::vector<int> images(outer.domain_size());
    for (int j = 1; j <= outer.domain_size(); ++j) {
        int i = outer(j);
        images[j - 1] = offset[i - 1] + inner[i - 1](++rank[i - 1]);
    }
    return Surjection(std::move(images), offset.back());
}

} // namespace permutadkit
