#ifndef PERMUTADKIT_PER_CATEGORY_HPP
#define PERMUTADKIT_PER_CATEGORY_HPP

#include "permutadkit/surjections.hpp"

#include <string>
#include <vector>

namespace permutadkit {

/// Morphism of the category of surjections over a fixed domain {1..n}:
/// a triple (source, target, gamma) with gamma order-preserving surjective
/// and gamma o source = target pointwise.
class PerMorphism {
public:
    /// Target derived as gamma o source.
    PerMorphism(Surjection source, Surjection gamma);

    const Surjection& source() const { return source_; }
    const Surjection& target() const { return target_; }
    const Surjection& gamma() const { return gamma_; }

    friend bool operator==(const PerMorphism&, const PerMorphism&) = default;

    /// "source_images | gamma_images".
    std::string str() const;
    static PerMorphism parse(const std::string& text);

private:
    Surjection source_, target_, gamma_;
};

/// |alpha : n ->> k| = k.
int cardinality(const Surjection& alpha);

bool is_order_preserving(const Surjection& gamma);

/// The standardized fibers of f, one per element of the target codomain.
/// The i-th fiber collects the positions u with target(u) = i and maps the
/// u-th of them to the rank of source(u) within gamma^{-1}(i).
std::vector<Surjection> morphism_fibers(const PerMorphism& f);

PerMorphism compose(const PerMorphism& f, const PerMorphism& g);

PerMorphism identity_morphism(const Surjection& alpha);

/// The unique morphism with the given source lying over gamma.
PerMorphism opfib_lift(const Surjection& alpha, const Surjection& gamma);

/// The order-preserving surjection {1..k} ->> {1..a+2} shrinking the
/// interval {i,...,i+b+1} to {i}. Requires k = a+b+3, a,b >= 0,
/// 1 <= i <= a+2.
Surjection interval_collapse(int k, int a, int b, int i);

/// A morphism all of whose fibers except the slot-th one are trivial
/// (codomain 1). fiber F and quotient beta satisfy: grafting data for
/// partial compositions F |>_slot alpha -> beta.
struct ElementaryMorphism {
    PerMorphism morphism;
    int slot;           // 1-based index of the nontrivial fiber
    Surjection fiber;   // F
    Surjection quotient; // beta = target

    friend bool operator==(const ElementaryMorphism&, const ElementaryMorphism&) = default;
};

/// All elementary morphisms out of alpha with |quotient| >= min_quotient_card,
/// enumerated as lifts of the interval collapses with k = |alpha|, ordered by
/// increasing quotient cardinality, then slot.
std::vector<ElementaryMorphism> elementary_morphisms(const Surjection& alpha,
                                                     int min_quotient_card = 2);

/// |Surj(n,k)| for n = k..nmax.
std::vector<long long> grothendieck_fiber_count(int k, int nmax);

/// All order-preserving surjections {1..k} ->> {1..l}.
std::vector<Surjection> monotone_surjections(int k, int l);

} // namespace permutadkit

#endif
