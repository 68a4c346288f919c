#ifndef PERMUTADKIT_HOMOTOPY_RELATIONS_HPP
#define PERMUTADKIT_HOMOTOPY_RELATIONS_HPP

#include "permutadkit/free_permutad.hpp"
#include "permutadkit/per_category.hpp"

#include <string>
#include <vector>

namespace permutadkit {

/// One composite in a coherence relation for higher operations: insert the
/// fiber operation into the given slot of the quotient operation, with the
/// stated sign.
struct ShTerm {
    int sign = 1; // (-1)^((|F|+1)(i+1)+|F|)
    Surjection beta;
    int slot = 1;
    Surjection fiber;

    friend bool operator==(const ShTerm&, const ShTerm&) = default;
};

/// The coherence relation attached to alpha. Unprimed form: the boundary of
/// the alpha-operation equals the signed sum over elementary morphisms with
/// both cardinalities >= 2. Primed form: zero equals the extended sum that
/// also admits a trivial fiber (identity with a designated slot) or a
/// trivial quotient (full collapse), absorbing the boundary into the terms.
struct ShRelation {
    Surjection alpha;
    bool primed = false;
    bool includes_lhs_differential = false; // true exactly for the unprimed form
    std::vector<ShTerm> terms;
};

ShRelation generate_relation(const Surjection& alpha, bool primed);

std::string relation_to_json(const ShRelation& rel);

/// Every term has total degree (|beta|-2) + (|fiber|-2) = |alpha| - 3.
bool degree_audit(const ShRelation& rel);

/// Checks the unprimed relation at alpha against a degree-0 quotient
/// structure: with the weight-2 operations given by the structure constants
/// and all higher operations zero, the relation reduces to the interchange
/// of the two elementary composites at |alpha| = 3 and is vacuous above.
bool check_strict_instance(const Surjection& alpha, QuotientData& structure);

} // namespace permutadkit

#endif
