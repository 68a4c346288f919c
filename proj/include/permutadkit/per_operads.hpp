#ifndef PERMUTADKIT_PER_OPERADS_HPP
#define PERMUTADKIT_PER_OPERADS_HPP

#include "permutadkit/chain_complex.hpp"
#include "permutadkit/free_permutad.hpp" // Generator, Rational forms
#include "permutadkit/per_category.hpp"
#include "permutadkit/trees.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace permutadkit {

/// Collection of generators indexed by objects alpha with |alpha| >= 2.
/// `pulled` collections depend on alpha only through its cardinality and
/// are stored per cardinality; general collections are keyed by the image
/// list of alpha.
class PerCollection {
public:
    static PerCollection pulled();
    static PerCollection general();

    bool is_pulled() const { return pulled_; }

    void add_pulled(std::string label, int cardinality, int degree);
    void add_at(const Surjection& alpha, std::string label, int degree);

    const std::vector<Generator>& at(const Surjection& alpha) const;
    int degree_of(const Surjection& alpha, const std::string& label) const;
    int index_of(const Surjection& alpha, const std::string& label) const;

    /// Largest cardinality carrying generators (pulled collections only).
    int max_cardinality() const;

private:
    bool pulled_ = true;
    std::map<int, std::vector<Generator>> by_card_;
    std::map<std::string, std::vector<Generator>> by_object_;
};

/// Basis element of a free operad on a Per-collection: a planar tree with
/// |alpha| leaves plus one generator label per internal vertex in preorder.
/// The object decorating a vertex is derived from the ambient alpha.
struct DecoratedTree {
    PlanarTree tree;
    std::vector<std::string> labels;

    friend bool operator==(const DecoratedTree&, const DecoratedTree&) = default;
    friend auto operator<=>(const DecoratedTree& a, const DecoratedTree& b) {
        if (auto c = a.tree <=> b.tree; c != 0) return c;
        return a.labels <=> b.labels;
    }

    /// "(a=<images>; <labels>) <tree>"
    std::string str(const Surjection& alpha) const;
};

/// The object decorating vertex v: pull the leaf segment of v back along
/// alpha and record which incoming edge each element lands in, edges
/// ordered left to right.
Surjection vertex_object(const Surjection& alpha, const PlanarTree& tree, int v);

std::vector<Surjection> vertex_objects(const Surjection& alpha, const PlanarTree& tree);

int degree_of(const PerCollection& E, const Surjection& alpha, const DecoratedTree& x);

/// Basis of the weight-s part of the free operad on E at alpha, ordered by
/// (tree code, labels). Weight 0 is one element when |alpha| = 1, none
/// otherwise.
std::vector<DecoratedTree> free_peroperad_basis(const PerCollection& E, const Surjection& alpha,
                                                int s);

/// All weights together.
std::vector<DecoratedTree> free_peroperad_basis(const PerCollection& E, const Surjection& alpha);

/// Grafting along an elementary morphism: y sits over the fiber, x over
/// the quotient, the result over the source of f. Tensor factors follow
/// preorder, so weaving y's labels into x's carries a Koszul sign.
std::pair<DecoratedTree, int> partial_composition(const PerCollection& E,
                                                  const ElementaryMorphism& f,
                                                  const DecoratedTree& x, const DecoratedTree& y);

using PerLinearForm = std::map<DecoratedTree, Rational>;

void add_term(PerLinearForm& f, const DecoratedTree& x, const Rational& c);

/// Binary quadratic data pulled along the cardinality functor: generators
/// at cardinality 2, relation patterns in the two-vertex stratum at
/// cardinality 3, instantiated verbatim at every alpha with |alpha| = 3.
struct PulledQuadraticPresentation {
    PerCollection generators; // pulled, cardinality 2
    std::vector<PerLinearForm> relation_patterns;
    int truncation = 8;
};

/// Generator xi in degree 0; relation: left comb minus right comb.
PulledQuadraticPresentation one_per_presentation();
/// Same generator; relation with a plus sign.
PulledQuadraticPresentation anti_associative_presentation();

/// Relations of the presentation instantiated at alpha (empty unless
/// |alpha| = 3).
std::vector<PerLinearForm> relations_at(const PulledQuadraticPresentation& pres,
                                        const Surjection& alpha);

/// Annihilator of the relations inside the two-vertex stratum at alpha,
/// under the pairing that matches decorated trees term by term.
std::vector<PerLinearForm> relation_annihilator_at(const PulledQuadraticPresentation& pres,
                                                   const Surjection& alpha);

/// Suspended-dual presentation: generators in degree 1 - d, relations the
/// annihilator pattern.
PulledQuadraticPresentation quadratic_dual_peroperad(const PulledQuadraticPresentation& pres);

/// Per-object quotient of the free operad by the ideal generated by the
/// relations, with ideal saturation through the elementary compositions.
/// Echelon and representative conventions as for permutad quotients.
class PerQuotientData {
public:
    explicit PerQuotientData(PulledQuadraticPresentation pres);

    const PulledQuadraticPresentation& presentation() const { return pres_; }

    int total_dim(const Surjection& alpha);
    std::vector<DecoratedTree> representatives(const Surjection& alpha);
    std::vector<int> class_degrees(const Surjection& alpha);
    std::vector<Rational> reduce(const Surjection& alpha, const DecoratedTree& x, int sign = 1);

    /// Class of partial_composition(f, rep_xi, rep_yi) over the classes at
    /// the source of f.
    std::vector<Rational> compose_classes(const ElementaryMorphism& f, int xi, int yi);

private:
    struct ObjectData {
        std::vector<DecoratedTree> basis;
        std::map<DecoratedTree, int> index;
        std::map<int, std::map<int, Rational>> echelon;
        std::vector<int> rep_indices;
        std::map<int, int> rep_position;
    };

    const ObjectData& object_data(const Surjection& alpha);

    PulledQuadraticPresentation pres_;
    std::mutex mutex_;
    std::map<std::string, ObjectData> cache_;
};

/// Sign mutations for the quadratic differential of the minimal model /
/// dual dg operad, mirroring the bar-side tweaks.
struct ModelSignTweak {
    bool drop_leibniz = false;
    bool drop_graft_reorder = false;
    /// Negate the single expansion term with the given (children, a, i) of
    /// the expanded vertex.
    std::optional<std::tuple<int, int, int>> negate_term;

    bool trivial() const { return !drop_leibniz && !drop_graft_reorder && !negate_term; }
};

struct MinimalModelComplex {
    Surjection alpha;
    ChainComplex complex;
    std::vector<std::vector<DecoratedTree>> basis_by_degree;
};

/// Free operad on one generator per cardinality k >= 2 in degree k-2, with
/// the quadratic differential expanding each vertex over the elementary
/// morphisms of its decoration, signed (-1)^((|F|+1)(i+1)+|F|).
MinimalModelComplex minimal_model_complex(const Surjection& alpha,
                                          const ModelSignTweak& tweak = {});

/// Cobar construction on the component-wise dual of the quotient: one
/// generator per quotient class of P at each decoration, degree shifted
/// down by one, differential dual to the elementary compositions.
MinimalModelComplex dual_dg_peroperad(PerQuotientData& quotient, const Surjection& alpha);

struct PerKoszulItem {
    Surjection alpha;
    std::vector<int> dims;
    std::map<int, int> betti;
    bool d_squared_zero = false;
    int h0_expected = 0;
    bool ok = false;
};

struct PerKoszulReport {
    std::string target;
    int max_card = 0;
    std::vector<PerKoszulItem> per_object;
    bool koszul = false;
};

/// Representatives: the identity of each cardinality k <= max_card plus,
/// for k < max_card, the first surjection of Surj(k+1, k), witnessing that
/// the outcome depends only on the cardinality.
PerKoszulReport koszulity_check_peroperad(const PulledQuadraticPresentation& pres, int max_card,
                                          const std::string& target_name = "presentation");

/// Arity-indexed dimensions of a constant-free non-symmetric operad.
struct NsOperadDims {
    std::map<int, int> dims;
};

/// Restriction along the cardinality functor reads the component at
/// |alpha|.
int des_restrict(const NsOperadDims& ns, const Surjection& alpha);

struct PushforwardSummary {
    long long factor_count = 0;
    long long product_dim = 1;
};

/// Truncated right-adjoint pushforward: the product over all alpha with
/// cardinality k and domain size <= nmax of the component dimensions.
PushforwardSummary des_pushforward(const std::map<int, int>& dims_by_cardinality, int k, int nmax);

} // namespace permutadkit

#endif
