#ifndef PERMUTADKIT_FREE_PERMUTAD_HPP
#define PERMUTADKIT_FREE_PERMUTAD_HPP

#include "permutadkit/rational.hpp"
#include "permutadkit/surjections.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace permutadkit {

struct Generator {
    std::string label;
    int arity = 1;
    int degree = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Finitely many graded generators per arity.
class GeneratorCollection {
public:
    void add(std::string label, int arity, int degree);
    const std::vector<Generator>& at_arity(int arity) const;
    bool empty() const { return by_arity_.empty(); }
    int max_arity() const;
    std::vector<Generator> all() const;

    /// Index of a label within its arity; throws if absent.
    int index_of(int arity, const std::string& label) const;
    int degree_of(int arity, const std::string& label) const;

    friend bool operator==(const GeneratorCollection&, const GeneratorCollection&) = default;

private:
    std::map<int, std::vector<Generator>> by_arity_;
};

/// Basis element of a free permutad: a shape surjection n ->> k plus one
/// generator label per block; gens[i] has arity block_sizes(shape)[i].
struct FreeBasisElt {
    Surjection shape;
    std::vector<std::string> gens;

    friend bool operator==(const FreeBasisElt&, const FreeBasisElt&) = default;
    friend auto operator<=>(const FreeBasisElt& a, const FreeBasisElt& b) {
        if (auto c = a.shape <=> b.shape; c != 0) return c;
        return a.gens <=> b.gens;
    }

    std::string str() const;
};

int degree_of(const GeneratorCollection& B, const FreeBasisElt& x);

/// Weight-k stratum of the arity-n component of the free permutad on B,
/// ordered by (shape, generator indices) lexicographically.
std::vector<FreeBasisElt> free_basis_weight(const GeneratorCollection& B, int n, int k);

/// Full basis at arity n, all weights, in (weight, shape, gens) order.
std::vector<FreeBasisElt> free_basis(const GeneratorCollection& B, int n);

/// Product along r : n ->> 2. Shape substitution plus label concatenation;
/// no sign at the basis level.
FreeBasisElt free_compose(const Surjection& r, const FreeBasisElt& x, const FreeBasisElt& y);

/// Flat product along an arbitrary shape, one factor per block.
FreeBasisElt free_compose_flat(const Surjection& rho, const std::vector<FreeBasisElt>& factors);

/// Finitely supported rational combination of free basis elements.
using LinearForm = std::map<FreeBasisElt, Rational>;

void add_term(LinearForm& f, const FreeBasisElt& x, const Rational& c);

/// Binary quadratic data: generators in arity 1, relations spanning a
/// subspace of the weight-2 component in arity 2.
struct QuadraticPresentation {
    GeneratorCollection generators;
    std::vector<LinearForm> relations;
    int truncation = 7;

    friend bool operator==(const QuadraticPresentation&, const QuadraticPresentation&) = default;
};

/// One degree-0 generator mu, relation mu mu (identity shape) minus
/// mu mu (transposed shape).
QuadraticPresentation terminal_presentation();
/// Same generator, relation with a plus sign.
QuadraticPresentation twisted_presentation();

std::string presentation_to_json(const QuadraticPresentation& p);
QuadraticPresentation presentation_from_json(const std::string& text);

/// Spanning set of the arity-n component of the two-sided ideal generated
/// by the relations: every three-block placement (x, s, y), the two-block
/// edge placements, and the relations themselves at n = 2.
std::vector<LinearForm> ideal_spanning_set(const QuadraticPresentation& pres, int n);

/// Quotient of the free permutad by the relation ideal, reduced per arity.
/// Echelon convention: the leading term of a row is its lexicographically
/// greatest basis element; representatives are the non-leading monomials
/// in lexicographic order. Memoized per arity behind a mutex.
class QuotientData {
public:
    explicit QuotientData(QuadraticPresentation pres);

    const QuadraticPresentation& presentation() const { return pres_; }

    int total_dim(int n);
    std::map<int, int> dims_by_degree(int n);
    std::vector<FreeBasisElt> representatives(int n);
    std::vector<int> class_degrees(int n);

    /// Coordinates of x in the representative basis of its arity.
    std::vector<Rational> reduce(int n, const FreeBasisElt& x);

    /// Structure constants: the class of compose(r, rep_xi, rep_yi)
    /// expressed over the representatives of the outer arity.
    std::vector<Rational> compose_classes(const Surjection& r, int xi, int yi);

private:
    struct ArityData {
        std::vector<FreeBasisElt> basis;
        std::map<FreeBasisElt, int> index;
        std::map<int, std::map<int, Rational>> echelon; // leading index -> row
        std::vector<int> rep_indices;
        std::map<int, int> rep_position;
    };

    const ArityData& arity_data(int n);

    QuadraticPresentation pres_;
    std::mutex mutex_;
    std::map<int, ArityData> cache_;
};

/// Suspended-dual presentation: generators shifted to degree 1 - d, the
/// relations replaced by their annihilator under the basis-diagonal pairing
/// of the weight-2 components.
QuadraticPresentation quadratic_dual(const QuadraticPresentation& pres);

/// Sign by which the structure operation along r twists under the
/// component-wise suspension: shuffle_sign(r) * (-1)^(r_2 (r_1 + deg a_1)).
Rational suspension_sign(const Surjection& r, int deg_a1);

} // namespace permutadkit

#endif
