#include "permutadkit/free_permutad.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permutadkit {

void GeneratorCollection::add(std::string label, int arity, int degree) {
    if (arity < 1) throw std::domain_error("GeneratorCollection: arity must be >= 1");
    auto& v = by_arity_[arity];
    for (const auto& g : v)
        if (g.label == label) throw std::domain_error("GeneratorCollection: duplicate label");
    v.push_back({std::move(label), arity, degree});
}

const std::vector<Generator>& GeneratorCollection::at_arity(int arity) const {
    static const std::vector<Generator> none;
    auto it = by_arity_.find(arity);
    return it == by_arity_.end() ? none : it->second;
}

int GeneratorCollection::max_arity() const {
    return by_arity_.empty() ? 0 : by_arity_.rbegin()->first;
}

std::vector<Generator> GeneratorCollection::all() const {
    std::vector<Generator> out;
    for (const auto& [a, v] : by_arity_) out.insert(out.end(), v.begin(), v.end());
    return out;
}

int GeneratorCollection::index_of(int arity, const std::string& label) const {
    const auto& v = at_arity(arity);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].label == label) return static_cast<int>(i);
    throw std::domain_error("GeneratorCollection: unknown generator '" + label + "'");
}

int GeneratorCollection::degree_of(int arity, const std::string& label) const {
    return at_arity(arity)[index_of(arity, label)].degree;
}

std::string FreeBasisElt::str() const {
    std::ostringstream os;
    os << '(' << shape.str() << " |";
    for (const auto& g : gens) os << ' ' << g;
    os << ')';
    return os.str();
}

int degree_of(const GeneratorCollection& B, const FreeBasisElt& x) {
    int d = 0;
    auto sizes = block_sizes(x.shape);
    for (std::size_t i = 0; i < x.gens.size(); ++i) d += B.degree_of(sizes[i], x.gens[i]);
    return d;
}

std::vector<FreeBasisElt> free_basis_weight(const GeneratorCollection& B, int n, int k) {
    std::vector<FreeBasisElt> out;
    if (k < 1 || k > n) return out;
    for (const auto& shape : all_surjections(n, k)) {
        auto sizes = block_sizes(shape);
        bool possible = true;
        for (int sz : sizes)
            if (B.at_arity(sz).empty()) {
                possible = false;
                break;
            }
        if (!possible) continue;
        // mixed-radix enumeration of generator tuples, last slot fastest
        std::vector<int> pick(k, 0);
        for (;;) {
            std::vector<std::string> gens(k);
            for (int i = 0; i < k; ++i) gens[i] = B.at_arity(sizes[i])[pick[i]].label;
            out.push_back({shape, std::move(gens)});
            int slot = k - 1;
            while (slot >= 0 &&
                   pick[slot] + 1 == static_cast<int>(B.at_arity(sizes[slot]).size()))
                pick[slot--] = 0;
            if (slot < 0) break;
            ++pick[slot];
        }
    }
    return out;
}

std::vector<FreeBasisElt> free_basis(const GeneratorCollection& B, int n) {
    std::vector<FreeBasisElt> out;
    for (int k = 1; k <= n; ++k) {
        auto stratum = free_basis_weight(B, n, k);
        out.insert(out.end(), stratum.begin(), stratum.end());
    }
    return out;
}

FreeBasisElt free_compose(const Surjection& r, const FreeBasisElt& x, const FreeBasisElt& y) {
    if (r.codomain_size() != 2) throw std::domain_error("free_compose: shape must target {1,2}");
    return free_compose_flat(r, {x, y});
}

FreeBasisElt free_compose_flat(const Surjection& rho, const std::vector<FreeBasisElt>& factors) {
    if (static_cast<int>(factors.size()) != rho.codomain_size())
        throw std::domain_error("free_compose_flat: one factor per block required");
    auto sizes = block_sizes(rho);
    std::vector<Surjection> shapes;
    std::vector<std::string> gens;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].shape.domain_size() != sizes[i])
            throw std::domain_error("free_compose_flat: factor arity does not match block size");
        shapes.push_back(factors[i].shape);
        gens.insert(gens.end(), factors[i].gens.begin(), factors[i].gens.end());
    }
    return {substitute(rho, shapes), std::move(gens)};
}

void add_term(LinearForm& f, const FreeBasisElt& x, const Rational& c) {
    auto it = f.find(x);
    if (it == f.end()) {
        if (!c.is_zero()) f.emplace(x, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) f.erase(it);
}

QuadraticPresentation terminal_presentation() {
    QuadraticPresentation p;
    p.generators.add("mu", 1, 0);
    LinearForm rel;
    add_term(rel, {Surjection::parse("1 2"), {"mu", "mu"}}, Rational(1));
    add_term(rel, {Surjection::parse("2 1"), {"mu", "mu"}}, Rational(-1));
    p.relations.push_back(std::move(rel));
    return p;
}

QuadraticPresentation twisted_presentation() {
    QuadraticPresentation p;
    p.generators.add("mu", 1, 0);
    LinearForm rel;
    add_term(rel, {Surjection::parse("1 2"), {"mu", "mu"}}, Rational(1));
    add_term(rel, {Surjection::parse("2 1"), {"mu", "mu"}}, Rational(1));
    p.relations.push_back(std::move(rel));
    return p;
}

std::string presentation_to_json(const QuadraticPresentation& p) {
    nlohmann::json j;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : p.generators.all())
        j["generators"].push_back({{"arity", g.arity}, {"degree", g.degree}, {"label", g.label}});
    j["relations"] = nlohmann::json::array();
    for (const auto& rel : p.relations) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [x, c] : rel)
            terms.push_back({{"shape", x.shape.images()},
                             {"gens", x.gens},
                             {"coeff", c.str()}});
        j["relations"].push_back(terms);
    }
    j["truncation"] = p.truncation;
    return j.dump(2);
}

QuadraticPresentation presentation_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    QuadraticPresentation p;
    for (const auto& g : j.at("generators"))
        p.generators.add(g.at("label").get<std::string>(), g.at("arity").get<int>(),
                         g.at("degree").get<int>());
    for (const auto& terms : j.at("relations")) {
        LinearForm rel;
        for (const auto& t : terms) {
            FreeBasisElt x{Surjection(t.at("shape").get<std::vector<int>>()),
                           t.at("gens").get<std::vector<std::string>>()};
            add_term(rel, x, Rational::parse(t.at("coeff").get<std::string>()));
        }
        p.relations.push_back(std::move(rel));
    }
    if (j.contains("truncation")) p.truncation = j.at("truncation").get<int>();
    return p;
}

namespace {

int relation_arity(const QuadraticPresentation& pres) {
    int arity = -1;
    for (const auto& rel : pres.relations)
        for (const auto& [x, c] : rel) {
            int n = x.shape.domain_size();
            if (x.shape.codomain_size() != 2)
                throw std::domain_error("relations must be weight-2 combinations");
            if (arity < 0) arity = n;
            if (arity != n) throw std::domain_error("relations must share a common arity");
        }
    return arity < 0 ? 2 : arity;
}

} // namespace

std::vector<LinearForm> ideal_spanning_set(const QuadraticPresentation& pres, int n) {
    if (n < 2) throw std::domain_error("ideal_spanning_set: need n >= 2");
    std::vector<LinearForm> out;
    if (pres.relations.empty()) return out;
    int rel_arity = relation_arity(pres);

    auto compose_into = [&](const Surjection& rho, const std::vector<const LinearForm*>& parts) {
        // expand a flat product in which exactly one factor is a relation
        LinearForm acc;
        std::vector<FreeBasisElt> factors(parts.size());
        auto rec = [&](auto&& self, std::size_t i, const Rational& coeff) -> void {
            if (i == parts.size()) {
                add_term(acc, free_compose_flat(rho, factors), coeff);
                return;
            }
            for (const auto& [x, c] : *parts[i]) {
                factors[i] = x;
                self(self, i + 1, coeff * c);
            }
        };
        rec(rec, 0, Rational(1));
        if (!acc.empty()) out.push_back(std::move(acc));
    };

    if (n == rel_arity)
        for (const auto& rel : pres.relations) out.push_back(rel);

    // basis-elt singletons as 1-term forms, cached per arity
    std::map<int, std::vector<LinearForm>> singles;
    auto basis_forms = [&](int m) -> const std::vector<LinearForm>& {
        auto it = singles.find(m);
        if (it == singles.end()) {
            std::vector<LinearForm> v;
            for (const auto& x : free_basis(pres.generators, m)) {
                LinearForm f;
                add_term(f, x, Rational(1));
                v.push_back(std::move(f));
            }
            it = singles.emplace(m, std::move(v)).first;
        }
        return it->second;
    };

    // two-block placements: relation left or right
    for (const auto& r : all_surjections(n, 2)) {
        auto sizes = block_sizes(r);
        for (const auto& rel : pres.relations) {
            if (sizes[0] == rel_arity && sizes[1] >= 1)
                for (const auto& y : basis_forms(sizes[1])) compose_into(r, {&rel, &y});
            if (sizes[1] == rel_arity && sizes[0] >= 1)
                for (const auto& x : basis_forms(sizes[0])) compose_into(r, {&x, &rel});
        }
    }

    // three-block placements with the relation in the middle
    if (n >= rel_arity + 2)
        for (const auto& rho : all_surjections(n, 3)) {
            auto sizes = block_sizes(rho);
            if (sizes[1] != rel_arity) continue;
            for (const auto& rel : pres.relations)
                for (const auto& x : basis_forms(sizes[0]))
                    for (const auto& y : basis_forms(sizes[2])) compose_into(rho, {&x, &rel, &y});
        }

    return out;
}

QuotientData::QuotientData(QuadraticPresentation pres) : pres_(std::move(pres)) {}

const QuotientData::ArityData& QuotientData::arity_data(int n) {
    if (n < 1) throw std::domain_error("QuotientData: arity must be >= 1");
    if (n > pres_.truncation)
        throw std::domain_error("QuotientData: arity beyond truncation " +
                                std::to_string(pres_.truncation));
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;

    ArityData data;
    data.basis = free_basis(pres_.generators, n);
    for (std::size_t i = 0; i < data.basis.size(); ++i)
        data.index.emplace(data.basis[i], static_cast<int>(i));

    auto reduce_row = [&](std::map<int, Rational>& row) {
        // eliminate from the greatest index downward
        while (!row.empty()) {
            int lead = row.rbegin()->first;
            auto ech = data.echelon.find(lead);
            if (ech == data.echelon.end()) break;
            Rational factor = row.rbegin()->second;
            for (const auto& [idx, v] : ech->second) {
                auto pos = row.find(idx);
                if (pos == row.end()) {
                    row.emplace(idx, -(factor * v));
                } else {
                    pos->second -= factor * v;
                    if (pos->second.is_zero()) row.erase(pos);
                }
            }
        }
    };

    if (n >= 2) {
        for (const auto& form : ideal_spanning_set(pres_, n)) {
            std::map<int, Rational> row;
            for (const auto& [x, c] : form) row[data.index.at(x)] = c;
            reduce_row(row);
            if (row.empty()) continue;
            int lead = row.rbegin()->first;
            Rational leadc = row.rbegin()->second;
            for (auto& [idx, v] : row) v /= leadc;
            data.echelon.emplace(lead, std::move(row));
        }
        // back-substitute so each echelon row is supported on representatives
        // plus its own leading index
        for (auto it2 = data.echelon.rbegin(); it2 != data.echelon.rend(); ++it2) {
            auto& row = it2->second;
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& [idx, v] : row) {
                    if (idx == it2->first) continue;
                    auto ech = data.echelon.find(idx);
                    if (ech == data.echelon.end()) continue;
                    Rational factor = v;
                    for (const auto& [j, w] : ech->second) {
                        auto pos = row.find(j);
                        if (pos == row.end()) {
                            row.emplace(j, -(factor * w));
                        } else {
                            pos->second -= factor * w;
                            if (pos->second.is_zero()) row.erase(pos);
                        }
                    }
                    changed = true;
                    break;
                }
            }
        }
    }

    for (std::size_t i = 0; i < data.basis.size(); ++i)
        if (!data.echelon.count(static_cast<int>(i))) {
            data.rep_position.emplace(static_cast<int>(i),
                                      static_cast<int>(data.rep_indices.size()));
            data.rep_indices.push_back(static_cast<int>(i));
        }

    return cache_.emplace(n, std::move(data)).first->second;
}

int QuotientData::total_dim(int n) {
    return static_cast<int>(arity_data(n).rep_indices.size());
}

std::map<int, int> QuotientData::dims_by_degree(int n) {
    const auto& data = arity_data(n);
    std::map<int, int> out;
    for (int idx : data.rep_indices) ++out[degree_of(pres_.generators, data.basis[idx])];
    return out;
}

std::vector<FreeBasisElt> QuotientData::representatives(int n) {
    const auto& data = arity_data(n);
    std::vector<FreeBasisElt> out;
    for (int idx : data.rep_indices) out.push_back(data.basis[idx]);
    return out;
}

std::vector<int> QuotientData::class_degrees(int n) {
    const auto& data = arity_data(n);
    std::vector<int> out;
    for (int idx : data.rep_indices) out.push_back(degree_of(pres_.generators, data.basis[idx]));
    return out;
}

std::vector<Rational> QuotientData::reduce(int n, const FreeBasisElt& x) {
    const auto& data = arity_data(n);
    auto found = data.index.find(x);
    if (found == data.index.end()) throw std::domain_error("reduce: not a basis element");

    std::map<int, Rational> row;
    row[found->second] = Rational(1);
    // forward reduction against the echelon
    while (true) {
        int lead = -1;
        for (auto it = row.rbegin(); it != row.rend(); ++it)
            if (data.echelon.count(it->first)) {
                lead = it->first;
                break;
            }
        if (lead < 0) break;
        Rational factor = row.at(lead);
        for (const auto& [idx, v] : data.echelon.at(lead)) {
            auto pos = row.find(idx);
            if (pos == row.end()) {
                row.emplace(idx, -(factor * v));
            } else {
                pos->second -= factor * v;
                if (pos->second.is_zero()) row.erase(pos);
            }
        }
    }

    std::vector<Rational> coords(data.rep_indices.size(), Rational(0));
    for (const auto& [idx, v] : row) coords[data.rep_position.at(idx)] = v;
    return coords;
}

std::vector<Rational> QuotientData::compose_classes(const Surjection& r, int xi, int yi) {
    auto sizes = block_sizes(r);
    if (sizes.size() != 2) throw std::domain_error("compose_classes: shape must target {1,2}");
    auto xrep = representatives(sizes[0]);
    auto yrep = representatives(sizes[1]);
    return reduce(r.domain_size(), free_compose(r, xrep.at(xi), yrep.at(yi)));
}

QuadraticPresentation quadratic_dual(const QuadraticPresentation& pres) {
    for (const auto& g : pres.generators.all())
        if (g.arity != 1)
            throw std::domain_error("quadratic_dual: generators must live in arity 1");

    GeneratorCollection dual_gens;
    for (const auto& g : pres.generators.at_arity(1))
        dual_gens.add(g.label + "^", 1, 1 - g.degree);

    // weight-2 pairing bases match term by term under label duality
    auto primal_basis = free_basis_weight(pres.generators, 2, 2);
    std::map<FreeBasisElt, int> index;
    for (std::size_t i = 0; i < primal_basis.size(); ++i)
        index.emplace(primal_basis[i], static_cast<int>(i));

    int dim = static_cast<int>(primal_basis.size());
    std::vector<std::vector<Rational>> rows;
    for (const auto& rel : pres.relations) {
        std::vector<Rational> row(dim, Rational(0));
        for (const auto& [x, c] : rel) row[index.at(x)] = c;
        rows.push_back(std::move(row));
    }

    // exact kernel basis via Gauss-Jordan on the relation matrix
    std::vector<int> pivot_col;
    int top = 0;
    for (int c = 0; c < dim && top < static_cast<int>(rows.size()); ++c) {
        int p = -1;
        for (int r = top; r < static_cast<int>(rows.size()); ++r)
            if (!rows[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[top], rows[p]);
        Rational inv = rows[top][c];
        for (auto& v : rows[top]) v /= inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == top || rows[r][c].is_zero()) continue;
            Rational f = rows[r][c];
            for (int cc = 0; cc < dim; ++cc) rows[r][cc] -= f * rows[top][cc];
        }
        pivot_col.push_back(c);
        ++top;
    }

    QuadraticPresentation dual;
    dual.generators = dual_gens;
    dual.truncation = pres.truncation;
    auto dualize = [&](const FreeBasisElt& x) {
        FreeBasisElt d{x.shape, x.gens};
        for (auto& g : d.gens) g += "^";
        return d;
    };
    std::vector<bool> is_pivot(dim, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free_col = 0; free_col < dim; ++free_col) {
        if (is_pivot[free_col]) continue;
        LinearForm rel;
        add_term(rel, dualize(primal_basis[free_col]), Rational(1));
        for (int r = 0; r < top; ++r)
            if (!rows[r][free_col].is_zero())
                add_term(rel, dualize(primal_basis[pivot_col[r]]), -rows[r][free_col]);
        dual.relations.push_back(std::move(rel));
    }
    return dual;
}

Rational suspension_sign(const Surjection& r, int deg_a1) {
    auto sizes = block_sizes(r);
    if (sizes.size() != 2) throw std::domain_error("suspension_sign: shape must target {1,2}");
    long long expo = static_cast<long long>(sizes[1]) * (sizes[0] + deg_a1);
    int sign = shuffle_sign(r) * (expo % 2 == 0 ? 1 : -1);
    return Rational(sign);
}

} // namespace permutadkit
