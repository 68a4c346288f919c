#include <doctest.h>

#include <stdexcept>

#include "permutadkit/free_permutad.hpp"

#include <set>

using namespace permutadkit;

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// matched quadruples (u, v, t, s) with compose_right(u,v) = compose_left(t,s),
// recovered through the block projections
struct Quadruple {
    Surjection u, v, t, s;
};

std::vector<Quadruple> matched_quadruples(int m) {
    std::vector<Quadruple> out;
    for (const auto& rho : all_surjections(m, 3)) {
        auto p = partition_of_surjection(rho);
        Quadruple q{
            surjection_of_partition(project_blocks(p, BlockProjection::merge_12)),
            surjection_of_partition(project_blocks(p, BlockProjection::take_12)),
            surjection_of_partition(project_blocks(p, BlockProjection::merge_23)),
            surjection_of_partition(project_blocks(p, BlockProjection::take_23)),
        };
        REQUIRE(compose_right(q.u, q.v) == rho);
        REQUIRE(compose_left(q.t, q.s) == rho);
        out.push_back(std::move(q));
    }
    return out;
}

LinearForm scaled(const LinearForm& f, const Rational& c) {
    LinearForm out;
    for (const auto& [x, v] : f) out.emplace(x, v * c);
    return out;
}

bool same_span_1d(const LinearForm& a, const LinearForm& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    const auto& [x0, c0] = *a.begin();
    auto it = b.find(x0);
    if (it == b.end()) return false;
    return scaled(b, c0 / it->second) == a;
}

} // namespace

TEST_CASE("free basis dimensions") {
    GeneratorCollection single;
    single.add("mu", 1, 0);
    for (int n = 1; n <= 6; ++n) {
        auto basis = free_basis(single, n);
        CHECK(static_cast<long long>(basis.size()) == factorial(n)); // only weight n survives
        for (const auto& x : basis) CHECK(x.shape.codomain_size() == n);
    }

    GeneratorCollection cells; // one generator in every arity
    for (int m = 1; m <= 6; ++m) cells.add("c" + std::to_string(m - 1), m, m - 1);
    CHECK(free_basis(cells, 4).size() == 75);
    CHECK(free_basis_weight(cells, 4, 2).size() == 14);
    CHECK(free_basis_weight(cells, 4, 3).size() == 36);

    GeneratorCollection empty;
    CHECK(free_basis(empty, 3).empty());

    GeneratorCollection two;
    two.add("a", 1, 0);
    two.add("b", 1, 0);
    CHECK(free_basis(two, 2).size() == 2 * 4); // |Surj(2,2)| shapes x 2^2 labels
}

TEST_CASE("free compose") {
    FreeBasisElt mu{Surjection::parse("1"), {"mu"}};
    auto xy = free_compose(Surjection::parse("1 2"), mu, mu);
    CHECK(xy.shape == Surjection::parse("1 2"));
    CHECK(xy.gens == std::vector<std::string>{"mu", "mu"});

    auto yx = free_compose(Surjection::parse("2 1"), mu, mu);
    CHECK(yx.shape == Surjection::parse("2 1"));

    CHECK_THROWS_AS(free_compose(Surjection::parse("1 2 2"), mu, mu), std::domain_error);
}

TEST_CASE("free compose satisfies the interchange axiom") {
    GeneratorCollection gens;
    gens.add("a", 1, 0);
    gens.add("b", 1, 0);
    for (int m = 3; m <= 5; ++m) {
        for (const auto& q : matched_quadruples(m)) {
            auto bs_v = block_sizes(q.v);
            auto bs_s = block_sizes(q.s);
            FreeBasisElt x{Surjection::identity(bs_v[0]),
                           std::vector<std::string>(bs_v[0], "a")};
            FreeBasisElt y{Surjection::identity(bs_v[1]),
                           std::vector<std::string>(bs_v[1], "b")};
            FreeBasisElt z{Surjection::identity(bs_s[1]),
                           std::vector<std::string>(bs_s[1], "a")};
            auto left = free_compose(q.u, free_compose(q.v, x, y), z);
            auto right = free_compose(q.t, x, free_compose(q.s, y, z));
            CHECK(left == right);
        }
    }
}

TEST_CASE("terminal and twisted presentations") {
    auto peras = terminal_presentation();
    REQUIRE(peras.relations.size() == 1);
    CHECK(peras.relations[0].at({Surjection::parse("1 2"), {"mu", "mu"}}) == Rational(1));
    CHECK(peras.relations[0].at({Surjection::parse("2 1"), {"mu", "mu"}}) == Rational(-1));

    auto twisted = twisted_presentation();
    CHECK(twisted.relations[0].at({Surjection::parse("2 1"), {"mu", "mu"}}) == Rational(1));

    CHECK(free_basis(peras.generators, 3).size() == 6);
}

TEST_CASE("presentation json round trip") {
    auto peras = terminal_presentation();
    auto back = presentation_from_json(presentation_to_json(peras));
    CHECK(back == peras);
}

TEST_CASE("ideal spanning set") {
    auto peras = terminal_presentation();
    auto at2 = ideal_spanning_set(peras, 2);
    REQUIRE(at2.size() == 1);
    CHECK(same_span_1d(at2[0], peras.relations[0]));

    QuadraticPresentation empty;
    empty.generators.add("mu", 1, 0);
    CHECK(ideal_spanning_set(empty, 3).empty());
}

TEST_CASE("terminal quotient is one-dimensional in degree zero") {
    QuotientData q(terminal_presentation());
    for (int n = 1; n <= 5; ++n) {
        CHECK(q.total_dim(n) == 1);
        CHECK(q.dims_by_degree(n) == std::map<int, int>{{0, 1}});
    }
    // every structure constant is +1
    for (int n = 2; n <= 5; ++n)
        for (const auto& r : all_surjections(n, 2)) {
            auto c = q.compose_classes(r, 0, 0);
            REQUIRE(c.size() == 1);
            CHECK(c[0] == Rational(1));
        }
}

TEST_CASE("dual of the terminal presentation") {
    auto dual = quadratic_dual(terminal_presentation());
    REQUIRE(dual.relations.size() == 1);
    LinearForm expected;
    add_term(expected, {Surjection::parse("1 2"), {"mu^", "mu^"}}, Rational(1));
    add_term(expected, {Surjection::parse("2 1"), {"mu^", "mu^"}}, Rational(1));
    CHECK(same_span_1d(dual.relations[0], expected));
    CHECK(dual.generators.degree_of(1, "mu^") == 1);

    QuotientData q(dual);
    for (int n = 1; n <= 5; ++n) {
        CHECK(q.total_dim(n) == 1);
        CHECK(q.dims_by_degree(n) == std::map<int, int>{{n, 1}});
    }
    for (int n = 2; n <= 5; ++n)
        for (const auto& r : all_surjections(n, 2)) {
            auto c = q.compose_classes(r, 0, 0);
            REQUIRE(c.size() == 1);
            CHECK(c[0] == Rational(shuffle_sign(r)));
        }
}

TEST_CASE("dual of the twisted presentation") {
    auto dual = quadratic_dual(twisted_presentation());
    LinearForm expected;
    add_term(expected, {Surjection::parse("1 2"), {"mu^", "mu^"}}, Rational(1));
    add_term(expected, {Surjection::parse("2 1"), {"mu^", "mu^"}}, Rational(-1));
    REQUIRE(dual.relations.size() == 1);
    CHECK(same_span_1d(dual.relations[0], expected));

    QuotientData q(dual);
    for (int n = 2; n <= 5; ++n) {
        CHECK(q.dims_by_degree(n) == std::map<int, int>{{n, 1}});
        for (const auto& r : all_surjections(n, 2)) {
            auto c = q.compose_classes(r, 0, 0);
            CHECK(c[0] == Rational(1)); // no sign in the twisted dual
        }
    }
}

TEST_CASE("twisted quotient carries the shuffle sign") {
    QuotientData q(twisted_presentation());
    for (int n = 2; n <= 5; ++n) {
        CHECK(q.dims_by_degree(n) == std::map<int, int>{{0, 1}});
        for (const auto& r : all_surjections(n, 2))
            CHECK(q.compose_classes(r, 0, 0)[0] == Rational(shuffle_sign(r)));
    }
}

TEST_CASE("empty relations dualize to the full weight-2 space") {
    QuadraticPresentation free_pres;
    free_pres.generators.add("mu", 1, 0);
    auto dual = quadratic_dual(free_pres);
    CHECK(dual.relations.size() == 2);
}

TEST_CASE("double dual spans the original relations") {
    for (const auto& pres : {terminal_presentation(), twisted_presentation()}) {
        auto dd = quadratic_dual(quadratic_dual(pres));
        REQUIRE(dd.relations.size() == 1);
        LinearForm expected;
        for (const auto& [x, c] : pres.relations[0]) {
            FreeBasisElt lifted{x.shape, x.gens};
            for (auto& g : lifted.gens) g += "^^";
            add_term(expected, lifted, c);
        }
        CHECK(same_span_1d(dd.relations[0], expected));
    }
}

TEST_CASE("quotient of the full relation space vanishes") {
    QuadraticPresentation broken;
    broken.generators.add("mu", 1, 0);
    LinearForm r1, r2;
    add_term(r1, {Surjection::parse("1 2"), {"mu", "mu"}}, Rational(1));
    add_term(r2, {Surjection::parse("2 1"), {"mu", "mu"}}, Rational(1));
    broken.relations = {r1, r2};
    QuotientData q(broken);
    CHECK(q.total_dim(1) == 1);
    for (int n = 2; n <= 4; ++n) CHECK(q.total_dim(n) == 0);
}

TEST_CASE("suspension signs") {
    CHECK(suspension_sign(Surjection::parse("1 2"), 0) == Rational(-1));
    CHECK(suspension_sign(Surjection::parse("2 1"), 1) == Rational(-1));

    // suspended structure constants still satisfy the interchange axiom,
    // both for degree-0 inputs and for the twice-suspended ones
    for (int m = 3; m <= 4; ++m) {
        for (const auto& q : matched_quadruples(m)) {
            auto bs_v = block_sizes(q.v);
            auto bs_s = block_sizes(q.s);
            int n1 = bs_v[0], n2 = bs_v[1];
            CHECK(suspension_sign(q.v, 0) * suspension_sign(q.u, 0) ==
                  suspension_sign(q.s, 0) * suspension_sign(q.t, 0));
            Rational lhs = suspension_sign(q.v, n1) * suspension_sign(q.u, n1 + n2);
            Rational rhs = suspension_sign(q.s, n2) * suspension_sign(q.t, n1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("reduce rejects foreign elements") {
    QuotientData q(terminal_presentation());
    CHECK_THROWS_AS(q.reduce(2, FreeBasisElt{Surjection::parse("1 2"), {"nu", "nu"}}),
                    std::domain_error);
    CHECK_THROWS_AS(q.total_dim(99), std::domain_error);
}
