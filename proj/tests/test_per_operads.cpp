#include <doctest.h>

#include <stdexcept>

#include "permutadkit/per_operads.hpp"

#include <numeric>
#include <set>

using namespace permutadkit;

namespace {

// little Schroeder numbers via their recurrence, as an independent count of
// planar trees with all vertices at least binary
long long schroeder(int leaves) {
    std::vector<long long> s{0, 1, 1};
    for (int n = 3; n <= leaves; ++n)
        s.push_back((3 * (2 * n - 3) * s[n - 1] - (n - 3) * s[n - 2]) / n);
    return s[leaves];
}

long long catalan(int n) {
    long long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

PerCollection one_generator_per_card(int max_card) {
    auto E = PerCollection::pulled();
    for (int k = 2; k <= max_card; ++k) E.add_pulled("g", k, 0);
    return E;
}

// peel the full subtree at a non-root vertex, returning the elementary
// morphism along which it grafts back
struct Peel {
    ElementaryMorphism f;
    DecoratedTree outer, inner;
};

Peel peel_subtree(const Surjection& alpha, const DecoratedTree& w, int vertex) {
    auto verts = w.tree.vertices();
    const auto& vd = verts[vertex - 1];
    int a_leaf = vd.first_leaf, b_leaf = vd.last_leaf;

    // inner: the subtree with its labels
    const auto& code = w.tree.code();
    int end = vd.code_pos;
    {
        int pending = 1;
        while (pending > 0) {
            pending += code[end] - 1;
            ++end;
        }
    }
    std::vector<int> inner_code(code.begin() + vd.code_pos, code.begin() + end);
    int inner_first_vertex = 0;
    for (int p = 0; p < vd.code_pos; ++p)
        if (code[p] != 0) ++inner_first_vertex;
    int inner_vertices = 0;
    for (int c : inner_code)
        if (c != 0) ++inner_vertices;

    DecoratedTree inner{PlanarTree::from_code(inner_code),
                        {w.labels.begin() + inner_first_vertex,
                         w.labels.begin() + inner_first_vertex + inner_vertices}};

    // outer: replace the subtree by a leaf
    std::vector<int> outer_code(code.begin(), code.begin() + vd.code_pos);
    outer_code.push_back(0);
    outer_code.insert(outer_code.end(), code.begin() + end, code.end());
    std::vector<std::string> outer_labels(w.labels.begin(), w.labels.begin() + inner_first_vertex);
    outer_labels.insert(outer_labels.end(),
                        w.labels.begin() + inner_first_vertex + inner_vertices, w.labels.end());
    DecoratedTree outer{PlanarTree::from_code(outer_code), outer_labels};

    // elementary morphism collapsing the leaf interval [a_leaf, b_leaf]
    ElementaryMorphism f = elementary_morphisms(alpha, 2)[0];
    for (const auto& e : elementary_morphisms(alpha, 2))
        if (e.slot == a_leaf && cardinality(e.fiber) == b_leaf - a_leaf + 1) {
            f = e;
            break;
        }
    REQUIRE(f.slot == a_leaf);
    REQUIRE(cardinality(f.fiber) == b_leaf - a_leaf + 1);
    return {f, outer, inner};
}

} // namespace

TEST_CASE("planar trees") {
    CHECK(all_trees(1, 0).size() == 1);
    CHECK(all_trees(2, 1).size() == 1);
    CHECK(all_trees(4, 3).size() == 5); // binary trees
    CHECK(all_trees(4, 2).size() == 5);
    CHECK(all_trees(4, 1).size() == 1);
    for (int leaves = 2; leaves <= 6; ++leaves) {
        long long total = 0;
        for (int s = 1; s < leaves; ++s) total += static_cast<long long>(all_trees(leaves, s).size());
        CHECK(total == schroeder(leaves));
        CHECK(static_cast<long long>(all_trees(leaves, leaves - 1).size()) == catalan(leaves - 1));
    }

    auto comb = PlanarTree::corolla(2).graft(1, PlanarTree::corolla(2));
    CHECK(comb.code() == std::vector<int>{2, 2, 0, 0, 0});
    CHECK(comb.leaf_count() == 3);
    CHECK(comb.vertex_count() == 2);
    CHECK(comb.str() == "((..).)");

    auto [expanded, inner] = PlanarTree::corolla(3).expand_vertex(1, 0, 0, 2);
    CHECK(expanded.code() == std::vector<int>{2, 0, 2, 0, 0});
    CHECK(inner == 2);

    CHECK_THROWS_AS(PlanarTree::from_code({2, 0}), std::domain_error);
    CHECK_THROWS_AS(PlanarTree::from_code({1, 0}), std::domain_error);
}

TEST_CASE("vertex objects") {
    // a fifteen-to-nine surjection over a five-vertex tree; the marked
    // vertex collects the leaf segment {5..8} through its two subtrees
    Surjection alpha({9, 3, 7, 5, 1, 2, 6, 4, 6, 3, 7, 8, 2, 5, 9}, 9);
    auto tree = PlanarTree::from_code({4, 0, 3, 0, 0, 0, 2, 2, 0, 0, 2, 0, 0, 0});
    REQUIRE(tree.leaf_count() == 9);
    REQUIRE(tree.vertex_count() == 5);
    CHECK(vertex_object(alpha, tree, 3) == Surjection({2, 1, 1, 1, 2, 2, 1}, 2));

    // the corolla reproduces alpha, the root always sees the whole domain
    for (const auto& a : all_surjections(4, 3)) {
        CHECK(vertex_object(a, PlanarTree::corolla(3), 1) == a);
        for (int s = 1; s <= 2; ++s)
            for (const auto& t : all_trees(3, s))
                CHECK(vertex_object(a, t, 1).domain_size() == a.domain_size());
    }
}

TEST_CASE("free operad bases") {
    auto E = one_generator_per_card(8);
    for (const auto& alpha :
         {Surjection::identity(4), all_surjections(6, 4).front(), all_surjections(5, 4)[3]}) {
        CHECK(free_peroperad_basis(E, alpha, 1).size() == 1);
        // weight 2 matches the elementary morphisms
        CHECK(free_peroperad_basis(E, alpha, 2).size() ==
              elementary_morphisms(alpha).size());
        long long total = 0;
        for (int s = 1; s <= 3; ++s)
            total += static_cast<long long>(free_peroperad_basis(E, alpha, s).size());
        CHECK(total == 11); // face count of the arity-4 associahedron
    }
    CHECK(free_peroperad_basis(E, Surjection::collapse(3), 0).size() == 1);
    CHECK(free_peroperad_basis(E, Surjection::identity(2), 0).empty());

    // restriction: the dimensions only depend on the cardinality
    for (int k = 2; k <= 5; ++k) {
        long long expect = 0;
        for (int s = 1; s < k; ++s) expect += static_cast<long long>(all_trees(k, s).size());
        CHECK(expect == schroeder(k));
        for (const auto& alpha : {Surjection::identity(k), all_surjections(k + 2, k).front()}) {
            long long total = 0;
            for (int s = 1; s < k; ++s)
                total += static_cast<long long>(free_peroperad_basis(E, alpha, s).size());
            CHECK(total == expect);
        }
    }
}

TEST_CASE("partial composition grafts and re-derives") {
    auto E = one_generator_per_card(6);
    // two corollas over a three-element object: only the comb shapes exist
    for (const auto& alpha : all_surjections(4, 3)) {
        for (const auto& f : elementary_morphisms(alpha)) {
            DecoratedTree x{PlanarTree::corolla(2), {"g"}};
            DecoratedTree y{PlanarTree::corolla(cardinality(f.fiber)), {"g"}};
            auto [w, sign] = partial_composition(E, f, x, y);
            CHECK(sign == 1);
            CHECK(w.tree.vertex_count() == 2);
            auto objects = vertex_objects(alpha, w.tree);
            CHECK(objects[0] == f.quotient);
        }
    }

    // mismatched fiber must be rejected
    auto alpha = Surjection::identity(3);
    auto f = elementary_morphisms(alpha)[0];
    DecoratedTree wrong{PlanarTree::corolla(3), {"g"}};
    CHECK_THROWS_AS(partial_composition(E, f, wrong, wrong), std::domain_error);
}

TEST_CASE("peeling and regrafting is consistent in any order") {
    auto E = one_generator_per_card(6);
    for (const auto& alpha : {Surjection::identity(4), Surjection::identity(5),
                              all_surjections(6, 5)[7], all_surjections(5, 4)[5]}) {
        int k = cardinality(alpha);
        for (int s = 2; s < k; ++s) {
            for (const auto& tree : all_trees(k, s)) {
                DecoratedTree w{tree, std::vector<std::string>(s, "g")};
                for (int v = 2; v <= s; ++v) {
                    auto peel = peel_subtree(alpha, w, v);
                    auto [back, sign] = partial_composition(E, peel.f, peel.outer, peel.inner);
                    CHECK(back == w);
                    CHECK(sign == 1); // degree-0 labels never produce signs
                }
            }
        }
    }
}

TEST_CASE("presentation of the terminal quotient") {
    auto pres = one_per_presentation();
    for (const auto& alpha : all_surjections(4, 3)) {
        auto rels = relations_at(pres, alpha);
        REQUIRE(rels.size() == 1);
        CHECK(rels[0].size() == 2);
    }
    CHECK(relations_at(pres, Surjection::identity(2)).empty());

    PerQuotientData q(pres);
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= n; ++k)
            for (const auto& alpha : all_surjections(n, k)) {
                CHECK(q.total_dim(alpha) == 1);
                if (k >= 2) CHECK(q.class_degrees(alpha) == std::vector<int>{0});
            }
}

TEST_CASE("dual presentation of the terminal quotient") {
    auto pres = one_per_presentation();
    // the annihilator is the plus-sign pattern, at every card-3 object
    for (const auto& alpha :
         {Surjection::identity(3), all_surjections(4, 3)[1], all_surjections(5, 3)[10]}) {
        auto ann = relation_annihilator_at(pres, alpha);
        REQUIRE(ann.size() == 1);
        PerLinearForm expected;
        auto comb1 = PlanarTree::corolla(2).graft(1, PlanarTree::corolla(2));
        auto comb2 = PlanarTree::corolla(2).graft(2, PlanarTree::corolla(2));
        add_term(expected, {comb1, {"xi^", "xi^"}}, Rational(1));
        add_term(expected, {comb2, {"xi^", "xi^"}}, Rational(1));
        CHECK(ann[0] == expected);
    }

    auto dual = quadratic_dual_peroperad(pres);
    CHECK(dual.generators.degree_of(Surjection::identity(2), "xi^") == 1);
    PerQuotientData qd(dual);
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= n; ++k)
            for (const auto& alpha : all_surjections(n, k)) {
                CHECK(qd.total_dim(alpha) == 1);
                if (k >= 2) CHECK(qd.class_degrees(alpha) == std::vector<int>{k - 1});
            }

    // double dual spans the original relation
    auto dd = quadratic_dual_peroperad(dual);
    REQUIRE(dd.relation_patterns.size() == 1);
    auto strip = [](PerLinearForm f) {
        PerLinearForm out;
        for (auto& [x, c] : f) {
            DecoratedTree y = x;
            for (auto& l : y.labels) l = l.substr(0, l.find('^'));
            out.emplace(y, c);
        }
        return out;
    };
    auto original = one_per_presentation().relation_patterns[0];
    auto restored = strip(dd.relation_patterns[0]);
    // compare spans (1-dimensional)
    auto scale = original.begin()->second / restored.at(original.begin()->first);
    for (auto& [x, c] : restored) CHECK(original.at(x) == c * scale);
}

TEST_CASE("minimal model at small objects") {
    auto mm2 = minimal_model_complex(Surjection::identity(2));
    CHECK(mm2.complex.dim(0) == 1);
    CHECK(mm2.complex.top_degree() == 0);

    auto mm3 = minimal_model_complex(Surjection::identity(3));
    REQUIRE(mm3.complex.dim(0) == 2);
    REQUIRE(mm3.complex.dim(1) == 1);
    // the differential of the corolla: left comb minus right comb
    DecoratedTree comb1{PlanarTree::corolla(2).graft(1, PlanarTree::corolla(2)), {"xi", "xi"}};
    DecoratedTree comb2{PlanarTree::corolla(2).graft(2, PlanarTree::corolla(2)), {"xi", "xi"}};
    int row1 = mm3.basis_by_degree[0][0] == comb1 ? 0 : 1;
    int row2 = 1 - row1;
    CHECK(mm3.complex.boundary[1].at(row1, 0) == Rational(1));
    CHECK(mm3.complex.boundary[1].at(row2, 0) == Rational(-1));

    auto mm4 = minimal_model_complex(Surjection::identity(4));
    CHECK(mm4.complex.dim(0) == 5);
    CHECK(mm4.complex.dim(1) == 5);
    CHECK(mm4.complex.dim(2) == 1);

    for (int k = 2; k <= 5; ++k) {
        auto mm = minimal_model_complex(Surjection::identity(k));
        CHECK(is_complex(mm.complex));
        auto b = betti(mm.complex);
        for (const auto& [d, v] : b) CHECK(v == (d == 0 ? 1 : 0));
        // minimality: every differential lands in the next weight only,
        // i.e. matrix entries connect s-vertex trees to (s+1)-vertex trees
        for (int d = 1; d <= mm.complex.top_degree(); ++d)
            for (const auto& [rc, v] : mm.complex.boundary[d].entries())
                CHECK(mm.basis_by_degree[d - 1][rc.first].tree.vertex_count() ==
                      mm.basis_by_degree[d][rc.second].tree.vertex_count() + 1);
    }

    // dimensions depend only on the cardinality
    for (int k = 2; k <= 4; ++k) {
        auto a = minimal_model_complex(Surjection::identity(k));
        auto b = minimal_model_complex(all_surjections(k + 2, k).front());
        for (int d = 0; d <= a.complex.top_degree(); ++d)
            CHECK(a.complex.dim(d) == b.complex.dim(d));
    }
}

TEST_CASE("single-term sign flips break the minimal model differential") {
    auto alpha = Surjection::identity(4);
    REQUIRE(is_complex(minimal_model_complex(alpha).complex));
    // flip each quadratic term appearing for vertices of 3 or 4 children
    for (int t = 3; t <= 4; ++t)
        for (int a = 0; a <= t - 3; ++a)
            for (int i = 1; i <= a + 2; ++i) {
                ModelSignTweak tweak;
                tweak.negate_term = {t, a, i};
                CAPTURE(t);
                CAPTURE(a);
                CAPTURE(i);
                CHECK_FALSE(is_complex(minimal_model_complex(alpha, tweak).complex));
            }
}

TEST_CASE("dual dg operad of the terminal dual matches the minimal model") {
    auto dual = quadratic_dual_peroperad(one_per_presentation());
    PerQuotientData q(dual);

    // arity-2 component: one generator, zero differential
    auto d2 = dual_dg_peroperad(q, Surjection::identity(2));
    CHECK(d2.complex.dim(0) == 1);
    CHECK(d2.complex.top_degree() == 0);

    for (const auto& alpha : {Surjection::identity(3), Surjection::identity(4),
                              Surjection::identity(5), all_surjections(6, 4).front()}) {
        auto dd = dual_dg_peroperad(q, alpha);
        auto mm = minimal_model_complex(alpha);
        REQUIRE(dd.complex.top_degree() == mm.complex.top_degree());
        for (int d = 0; d <= dd.complex.top_degree(); ++d)
            CHECK(dd.complex.dim(d) == mm.complex.dim(d));
        CHECK(is_complex(dd.complex));

        // a diagonal +-1 change of basis intertwines the differentials
        int top = dd.complex.top_degree();
        std::vector<std::vector<int>> sign(top + 1);
        for (int d = 0; d <= top; ++d) sign[d].assign(dd.complex.dim(d), 0);
        if (!sign[top].empty()) sign[top][0] = 1;
        bool consistent = true;
        for (int d = top; d >= 1; --d) {
            // propagate: sign[d-1][r] * dd = mm * sign[d][c]
            for (const auto& [rc, v] : dd.complex.boundary[d].entries()) {
                Rational m = mm.complex.boundary[d].at(rc.first, rc.second);
                REQUIRE(!m.is_zero());
                int ratio = (v == m) ? 1 : -1;
                if (!(v == m) && !(v == -m)) consistent = false;
                if (sign[d][rc.second] == 0) continue;
                int want = ratio * sign[d][rc.second];
                if (sign[d - 1][rc.first] == 0)
                    sign[d - 1][rc.first] = want;
                else if (sign[d - 1][rc.first] != want)
                    consistent = false;
            }
        }
        CHECK(consistent);
    }
}

TEST_CASE("koszulity of the terminal quotient, non-koszulity of the twisted one") {
    auto rep = koszulity_check_peroperad(one_per_presentation(), 4, "oneper");
    CHECK(rep.koszul);
    for (const auto& item : rep.per_object) {
        CHECK(item.d_squared_zero);
        CHECK(item.h0_expected == 1);
    }

    // the plus-sign quotient vanishes from cardinality 4 on, its components
    // stay acyclic through cardinality 4, and the first positive homology
    // appears at cardinality 5
    auto anti = koszulity_check_peroperad(anti_associative_presentation(), 5, "antiassoc");
    CHECK_FALSE(anti.koszul);
    bool positive_seen_4 = false, positive_seen_5 = false;
    for (const auto& item : anti.per_object) {
        CHECK(item.d_squared_zero);
        if (cardinality(item.alpha) == 4)
            CHECK(item.h0_expected == 0);
        for (const auto& [d, v] : item.betti)
            if (d > 0 && v != 0)
                (cardinality(item.alpha) == 4 ? positive_seen_4 : positive_seen_5) = true;
    }
    CHECK_FALSE(positive_seen_4);
    CHECK(positive_seen_5);
}

TEST_CASE("restriction along the cardinality functor") {
    NsOperadDims terminal{{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}}};
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= n; ++k)
            for (const auto& alpha : all_surjections(n, k))
                CHECK(des_restrict(terminal, alpha) == 1);

    auto push = des_pushforward({{2, 1}}, 2, 4);
    CHECK(push.factor_count == 22);
    CHECK(push.product_dim == 1);
    CHECK_THROWS_AS(des_pushforward({{2, 1}}, 3, 2), std::domain_error);
}
