#include "permutadkit/bar_construction.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permutadkit {

namespace {

std::string cogenerator_label(int arity, int class_index, int class_count) {
    std::string base = "e" + std::to_string(arity);
    if (class_count > 1) base += "_" + std::to_string(class_index);
    return base;
}

struct SplitTerm {
    Surjection shape; // arity m ->> 2
    int left_class, right_class;
    Rational coeff;
};

// the dualized structure maps: splits of the cogenerator (m, class c)
std::vector<SplitTerm> cogenerator_splits(QuotientData& dual, int m, int c,
                                          const BarSignTweak& tweak) {
    std::vector<SplitTerm> out;
    if (m < 2) return out;
    for (const auto& r : all_surjections(m, 2)) {
        auto sizes = block_sizes(r);
        int nx = dual.total_dim(sizes[0]);
        int ny = dual.total_dim(sizes[1]);
        auto degs = dual.class_degrees(sizes[0]);
        for (int xi = 0; xi < nx; ++xi) {
            for (int yi = 0; yi < ny; ++yi) {
                Rational lambda = dual.compose_classes(r, xi, yi)[c];
                if (lambda.is_zero()) continue;
                int left_deg_desusp = degs[xi] - 1;
                Rational sign(1);
                if (!tweak.drop_desuspension_parity && left_deg_desusp % 2 != 0)
                    sign = Rational(-1);
                if (tweak.negate_split && tweak.negate_split->first == m &&
                    tweak.negate_split->second == r)
                    sign = -sign;
                out.push_back({r, xi, yi, sign * lambda});
            }
        }
    }
    return out;
}

} // namespace

DualBarComplex dual_bar(QuotientData& dual_structure, int n, const BarSignTweak& tweak) {
    if (n < 1) throw std::domain_error("dual_bar: arity must be >= 1");

    DualBarComplex out;
    out.arity = n;

    // one generator per quotient class, degree shifted down by one
    std::vector<std::vector<int>> class_count(n + 1);
    for (int m = 1; m <= n; ++m) {
        int dim = dual_structure.total_dim(m);
        auto degs = dual_structure.class_degrees(m);
        for (int c = 0; c < dim; ++c)
            out.generators.add(cogenerator_label(m, c, dim), m, degs[c] - 1);
    }

    auto basis = free_basis(out.generators, n);
    int top = 0;
    for (const auto& x : basis) top = std::max(top, degree_of(out.generators, x));
    std::vector<std::map<FreeBasisElt, int>> index_by_degree(top + 1);
    out.basis_by_degree.assign(top + 1, {});
    out.complex.basis.assign(top + 1, {});
    for (const auto& x : basis) {
        int d = degree_of(out.generators, x);
        if (d < 0) throw std::domain_error("dual_bar: negative degree encountered");
        index_by_degree[d].emplace(x, static_cast<int>(out.basis_by_degree[d].size()));
        out.basis_by_degree[d].push_back(x);
        out.complex.basis[d].push_back(x.str());
    }

    out.complex.boundary.assign(top + 1, SparseMatrix());
    for (int d = 0; d <= top; ++d)
        out.complex.boundary[d] =
            SparseMatrix(d == 0 ? 0 : static_cast<int>(out.basis_by_degree[d - 1].size()),
                         static_cast<int>(out.basis_by_degree[d].size()));

    // cache the splits per (arity, class)
    std::map<std::pair<int, int>, std::vector<SplitTerm>> splits;
    auto splits_of = [&](int m, int c) -> const std::vector<SplitTerm>& {
        auto key = std::make_pair(m, c);
        auto it = splits.find(key);
        if (it == splits.end())
            it = splits.emplace(key, cogenerator_splits(dual_structure, m, c, tweak)).first;
        return it->second;
    };

    auto class_of_label = [&](int m, const std::string& label) {
        return out.generators.index_of(m, label);
    };

    for (int d = 1; d <= top; ++d) {
        for (std::size_t col = 0; col < out.basis_by_degree[d].size(); ++col) {
            const FreeBasisElt& w = out.basis_by_degree[d][col];
            auto sizes = block_sizes(w.shape);
            int k = w.shape.codomain_size();
            int prefix_degree = 0;
            for (int block = 0; block < k; ++block) {
                int m = sizes[block];
                int gen_degree = out.generators.degree_of(m, w.gens[block]);
                for (const auto& term : splits_of(m, class_of_label(m, w.gens[block]))) {
                    // splice the split into block `block`; unsplit blocks
                    // stay whole, which is the collapse to one block
                    std::vector<Surjection> inner;
                    inner.reserve(k);
                    for (int j = 0; j < k; ++j)
                        inner.push_back(j == block ? term.shape : Surjection::collapse(sizes[j]));
                    Surjection new_shape = substitute(w.shape, inner);

                    auto bs = block_sizes(term.shape);
                    std::vector<std::string> gens;
                    gens.reserve(k + 1);
                    for (int j = 0; j < block; ++j) gens.push_back(w.gens[j]);
                    int lcount = dual_structure.total_dim(bs[0]);
                    int rcount = dual_structure.total_dim(bs[1]);
                    gens.push_back(cogenerator_label(bs[0], term.left_class, lcount));
                    gens.push_back(cogenerator_label(bs[1], term.right_class, rcount));
                    for (int j = block + 1; j < k; ++j) gens.push_back(w.gens[j]);

                    Rational coeff = term.coeff;
                    if (!tweak.drop_leibniz && prefix_degree % 2 != 0) coeff = -coeff;

                    FreeBasisElt target{new_shape, std::move(gens)};
                    int row = index_by_degree[d - 1].at(target);
                    out.complex.boundary[d].add(row, static_cast<int>(col), coeff);
                }
                prefix_degree += gen_degree;
            }
        }
    }
    return out;
}

KoszulReport koszulity_check(const QuadraticPresentation& pres, int nmax,
                             const std::string& target_name) {
    for (const auto& g : pres.generators.all())
        if (g.arity != 1 || g.degree != 0)
            throw std::domain_error(
                "koszulity_check: needs a binary presentation with degree-0 generators");

    KoszulReport report;
    report.target = target_name;
    report.nmax = nmax;
    report.koszul = true;

    QuotientData primal(pres);
    QuotientData dual(quadratic_dual(pres));

    for (int n = 1; n <= nmax; ++n) {
        KoszulArityReport item;
        item.n = n;
        auto bar = dual_bar(dual, n);
        for (int d = 0; d <= bar.complex.top_degree(); ++d) item.dims.push_back(bar.complex.dim(d));
        item.d_squared_zero = is_complex(bar.complex);
        item.h0_expected = primal.total_dim(n);
        if (item.d_squared_zero) {
            item.betti = betti(bar.complex);
            bool positive_clear = true;
            for (const auto& [d, b] : item.betti)
                if (d > 0 && b != 0) positive_clear = false;
            item.ok = positive_clear && item.betti.at(0) == item.h0_expected;
        }
        report.koszul = report.koszul && item.ok;
        report.per_arity.push_back(std::move(item));
    }
    return report;
}

namespace {

// shared builder so the permutohedron and the comparison checks agree on
// indexing: cobar complex of the dual of the terminal presentation
DualBarComplex terminal_dual_bar(int n, bool twisted = false) {
    QuadraticPresentation pres = twisted ? twisted_presentation() : terminal_presentation();
    pres.truncation = std::max(pres.truncation, n);
    QuotientData dual(quadratic_dual(pres));
    return dual_bar(dual, n);
}

} // namespace

ChainComplex permutohedron_complex(int n) {
    auto bar = terminal_dual_bar(n);
    ChainComplex cells;
    cells.basis.assign(bar.complex.basis.size(), {});
    cells.boundary.assign(bar.complex.boundary.size(), SparseMatrix());
    for (int d = 0; d <= bar.complex.top_degree(); ++d) {
        for (const auto& x : bar.basis_by_degree[d])
            cells.basis[d].push_back(partition_str(partition_of_surjection(x.shape)));
        // transport through e_m -> -c_{m-1}: block counts on the two sides
        // of the boundary differ by one, so the matrix flips sign
        SparseMatrix flipped(bar.complex.boundary[d].rows(), bar.complex.boundary[d].cols());
        for (const auto& [rc, v] : bar.complex.boundary[d].entries())
            flipped.set(rc.first, rc.second, -v);
        cells.boundary[d] = std::move(flipped);
    }
    return cells;
}

bool xi_check(int n, int generator_sign) {
    if (generator_sign != 1 && generator_sign != -1)
        throw std::domain_error("xi_check: generator sign must be +1 or -1");
    auto bar = terminal_dual_bar(n);
    auto cells = permutohedron_complex(n);

    // the degree-d component of the induced map is diagonal with entries
    // generator_sign^(block count)
    auto diag_entry = [&](const FreeBasisElt& x) {
        int k = x.shape.codomain_size();
        return (generator_sign == -1 && k % 2 != 0) ? Rational(-1) : Rational(1);
    };
    for (int d = 1; d <= bar.complex.top_degree(); ++d) {
        const auto& dom = bar.basis_by_degree[d];
        const auto& cod = bar.basis_by_degree[d - 1];
        SparseMatrix lhs(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        SparseMatrix rhs(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        for (const auto& [rc, v] : bar.complex.boundary[d].entries())
            lhs.set(rc.first, rc.second, diag_entry(cod[rc.first]) * v);
        for (const auto& [rc, v] : cells.boundary[d].entries())
            rhs.set(rc.first, rc.second, v * diag_entry(dom[rc.second]));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

ZetaReport zeta_check(int n, bool flat) {
    ZetaReport report;
    auto twisted = terminal_dual_bar(n, true);
    auto plain = terminal_dual_bar(n, false);

    auto twist_entry = [&](const FreeBasisElt& x) {
        return flat ? Rational(1) : Rational(shuffle_sign(x.shape));
    };

    report.chain_iso = true;
    for (int d = 1; d <= twisted.complex.top_degree(); ++d) {
        const auto& dom = twisted.basis_by_degree[d];
        const auto& cod = twisted.basis_by_degree[d - 1];
        SparseMatrix lhs(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        SparseMatrix rhs(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        for (const auto& [rc, v] : twisted.complex.boundary[d].entries())
            lhs.set(rc.first, rc.second, twist_entry(cod[rc.first]) * v);
        for (const auto& [rc, v] : plain.complex.boundary[d].entries())
            rhs.set(rc.first, rc.second, v * twist_entry(dom[rc.second]));
        if (!(lhs == rhs)) report.chain_iso = false;
    }

    // multiplicativity search: shapes multiply by substitution, so the twist
    // is multiplicative only when the signs multiply across the splice
    for (int m = 2; m <= n && !report.witness; ++m) {
        for (const auto& r : all_surjections(m, 2)) {
            auto sizes = block_sizes(r);
            bool found = false;
            for (int k1 = 1; k1 <= sizes[0] && !found; ++k1)
                for (const auto& sx : all_surjections(sizes[0], k1)) {
                    for (int k2 = 1; k2 <= sizes[1] && !found; ++k2)
                        for (const auto& sy : all_surjections(sizes[1], k2)) {
                            int lhs_sign = shuffle_sign(substitute(
                                r, {sx, sy}));
                            int rhs_sign = shuffle_sign(sx) * shuffle_sign(sy);
                            if (lhs_sign != rhs_sign) {
                                std::vector<std::string> gx, gy;
                                for (int sz : block_sizes(sx))
                                    gx.push_back(cogenerator_label(sz, 0, 1));
                                for (int sz : block_sizes(sy))
                                    gy.push_back(cogenerator_label(sz, 0, 1));
                                report.witness = std::make_tuple(FreeBasisElt{sx, gx},
                                                                 FreeBasisElt{sy, gy}, r);
                                found = true;
                                break;
                            }
                        }
                    if (found) break;
                }
            if (found) break;
        }
    }
    return report;
}

PowerSeries generating_series(const std::map<std::pair<int, int>, int>& dims, int truncation) {
    PowerSeries f(truncation);
    std::vector<Rational> factorial(truncation + 1, Rational(1));
    for (int m = 1; m <= truncation; ++m) factorial[m] = factorial[m - 1] * Rational(m);
    for (const auto& [key, dim] : dims) {
        auto [arity, degree] = key;
        if (arity < 1 || arity > truncation) continue;
        Rational chi = Rational(degree % 2 == 0 ? dim : -dim);
        f.coeffs[arity] += chi / factorial[arity];
    }
    return f;
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int truncation) {
    PowerSeries out(truncation);
    for (int i = 1; i <= truncation; ++i)
        for (int j = 1; i + j <= truncation; ++j)
            out.coeffs[i + j] += a.at(i) * b.at(j);
    return out;
}

bool gk_functional_check(const PowerSeries& fA, const PowerSeries& fB, int T) {
    if (fA.truncation() < T || fB.truncation() < T)
        throw std::domain_error("gk_functional_check: series truncated below T");
    auto prod = multiply(fA, fB, T);
    for (int m = 1; m <= T; ++m)
        if (!(fA.at(m) + fB.at(m) + prod.at(m)).is_zero()) return false;
    return true;
}

} // namespace permutadkit
