#include "permutadkit/homotopy_relations.hpp"

#include <json.hpp>

#include <stdexcept>

namespace permutadkit {

ShRelation generate_relation(const Surjection& alpha, bool primed) {
    int k = cardinality(alpha);
    if (!primed && k < 2)
        throw std::domain_error("generate_relation: unprimed form needs |alpha| >= 2");

    ShRelation rel;
    rel.alpha = alpha;
    rel.primed = primed;
    rel.includes_lhs_differential = !primed;

    for (const auto& f : elementary_morphisms(alpha)) {
        int card_f = cardinality(f.fiber);
        long long expo = static_cast<long long>(card_f + 1) * (f.slot + 1) + card_f;
        rel.terms.push_back({expo % 2 == 0 ? 1 : -1, f.quotient, f.slot, f.fiber});
    }

    if (primed) {
        auto sizes = block_sizes(alpha);
        // trivial fiber: the identity with a designated slot
        for (int i = 1; i <= k; ++i)
            rel.terms.push_back({-1, alpha, i, Surjection::collapse(sizes[i - 1])});
        // trivial quotient: the full collapse (coincides with the identity
        // when k = 1, so it is emitted only once)
        if (k >= 2) {
            int sign = k % 2 == 0 ? 1 : -1; // (-1)^((k+1)*2 + k)
            rel.terms.push_back(
                {sign, Surjection::collapse(alpha.domain_size()), 1, alpha});
        }
    }
    return rel;
}

std::string relation_to_json(const ShRelation& rel) {
    nlohmann::json j;
    j["alpha"] = rel.alpha.images();
    j["primed"] = rel.primed;
    j["includes_lhs_differential"] = rel.includes_lhs_differential;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : rel.terms)
        j["terms"].push_back({{"sign", t.sign},
                              {"beta", t.beta.images()},
                              {"i", t.slot},
                              {"fiber", t.fiber.images()}});
    return j.dump(2);
}

bool degree_audit(const ShRelation& rel) {
    int want = cardinality(rel.alpha) - 3;
    for (const auto& t : rel.terms)
        if ((cardinality(t.beta) - 2) + (cardinality(t.fiber) - 2) != want) return false;
    return true;
}

bool check_strict_instance(const Surjection& alpha, QuotientData& structure) {
    int k = cardinality(alpha);
    if (k < 2) throw std::domain_error("check_strict_instance: need |alpha| >= 2");
    // terms with a factor of cardinality >= 3 vanish when the higher
    // operations are zero, so only |alpha| = 3 carries content
    if (k != 3) return true;

    auto elems = elementary_morphisms(alpha);
    const Surjection &u = elems[0].quotient, &v = elems[0].fiber;
    const Surjection &t = elems[1].quotient, &s = elems[1].fiber;

    auto sizes = block_sizes(alpha);
    int d1 = structure.total_dim(sizes[0]);
    int d2 = structure.total_dim(sizes[1]);
    int d3 = structure.total_dim(sizes[2]);
    int n = alpha.domain_size();
    int dn = structure.total_dim(n);

    for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2)
            for (int i3 = 0; i3 < d3; ++i3) {
                std::vector<Rational> lhs(dn, Rational(0)), rhs(dn, Rational(0));
                auto inner_v = structure.compose_classes(v, i1, i2);
                for (int w = 0; w < static_cast<int>(inner_v.size()); ++w) {
                    if (inner_v[w].is_zero()) continue;
                    auto outer = structure.compose_classes(u, w, i3);
                    for (int c = 0; c < dn; ++c) lhs[c] += inner_v[w] * outer[c];
                }
                auto inner_s = structure.compose_classes(s, i2, i3);
                for (int w = 0; w < static_cast<int>(inner_s.size()); ++w) {
                    if (inner_s[w].is_zero()) continue;
                    auto outer = structure.compose_classes(t, i1, w);
                    for (int c = 0; c < dn; ++c) rhs[c] += inner_s[w] * outer[c];
                }
                if (lhs != rhs) return false;
            }
    return true;
}

} // namespace permutadkit
