#ifndef PERMUTADKIT_SURJECTIONS_HPP
#define PERMUTADKIT_SURJECTIONS_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace permutadkit {

/// A surjection {1..n} ->> {1..k}, stored as its image sequence.
/// Invariant: every value 1..k occurs at least once, 1 <= k <= n.
class Surjection {
public:
    Surjection() = default;

    /// Codomain size inferred as the maximum image.
    explicit Surjection(std::vector<int> images);
    Surjection(std::vector<int> images, int codomain);

    static Surjection identity(int n);
    /// The unique surjection n ->> 1.
    static Surjection collapse(int n);

    int domain_size() const { return static_cast<int>(images_.size()); }
    int codomain_size() const { return codomain_; }

    /// 1-based application.
    int operator()(int j) const { return images_.at(j - 1); }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const;

    friend bool operator==(const Surjection&, const Surjection&) = default;
    friend auto operator<=>(const Surjection& a, const Surjection& b) {
        if (auto c = a.images_ <=> b.images_; c != 0) return c;
        return a.codomain_ <=> b.codomain_;
    }

    /// Whitespace-separated image list, e.g. "2 1 2".
    std::string str() const;
    static Surjection parse(const std::string& text);

private:
    std::vector<int> images_;
    int codomain_ = 0;
};

/// Ordered partition [I_1|...|I_k] of {1..n}: disjoint nonempty blocks,
/// each sorted ascending, jointly covering {1..n}.
using OrderedPartition = std::vector<std::vector<int>>;

/// All surjections {1..n} ->> {1..k} in lexicographic order of image
/// sequences. Count is k! * S(n,k).
std::vector<Surjection> all_surjections(int n, int k);
long long count_surjections(int n, int k);

/// blocks[j-1] = sorted preimage of j; inverse of surjection_of_partition.
OrderedPartition partition_of_surjection(const Surjection& r);
Surjection surjection_of_partition(const OrderedPartition& p);
std::string partition_str(const OrderedPartition& p);
OrderedPartition parse_partition(const std::string& text);

/// Sizes of the preimages (r_1,...,r_k); all >= 1, summing to n.
std::vector<int> block_sizes(const Surjection& r);

/// Sign of the permutation obtained by concatenating the blocks of the
/// associated ordered partition.
int shuffle_sign(const Surjection& r);

/// i-th smallest element -> i, for a strictly increasing input.
std::map<int, int> standardize(const std::vector<int>& subset);

/// Projections from 3-block to 2-block ordered partitions: merge two
/// consecutive blocks, or keep two consecutive blocks and standardize.
enum class BlockProjection {
    merge_23, // [I1 | I2 u I3]
    merge_12, // [I1 u I2 | I3]
    take_12,  // [st(I1) | st(I2)]
    take_23,  // [st(I2) | st(I3)]
};
OrderedPartition project_blocks(const OrderedPartition& p, BlockProjection which);

/// The composite t(1 x s) : m ->> 3 for t : m ->> 2 and s defined on the
/// second block of t. Piecewise: positions outside t^{-1}(2) go to 1, the
/// j-th element of t^{-1}(2) goes to 1 + s(j).
Surjection compose_left(const Surjection& t, const Surjection& s);

/// The composite u(v x 1) : m ->> 3 for u : m ->> 2 and v defined on the
/// first block of u. The j-th element of u^{-1}(1) goes to v(j), the rest
/// to 3.
Surjection compose_right(const Surjection& u, const Surjection& v);

/// Substitution (outer; inner_1,...,inner_k): position j with outer(j) = i
/// and rank p within outer^{-1}(i) maps to l_1 + ... + l_{i-1} + inner_i(p).
Surjection substitute(const Surjection& outer, const std::vector<Surjection>& inner);

} // namespace permutadkit

#endif
