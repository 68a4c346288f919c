#include "permutadkit/per_category.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permutadkit {

bool is_order_preserving(const Surjection& gamma) {
    const auto& im = gamma.images();
    for (std::size_t i = 1; i < im.size(); ++i)
        if (im[i] < im[i - 1]) return false;
    return true;
}

PerMorphism::PerMorphism(Surjection source, Surjection gamma)
    : source_(std::move(source)), gamma_(std::move(gamma)) {
    if (!is_order_preserving(gamma_))
        throw std::domain_error("PerMorphism: gamma must be order-preserving");
    if (gamma_.domain_size() != source_.codomain_size())
        throw std::domain_error("PerMorphism: gamma domain must equal source codomain");
    std::vector<int> t(source_.domain_size());
    for (int j = 1; j <= source_.domain_size(); ++j) t[j - 1] = gamma_(source_(j));
    target_ = Surjection(std::move(t), gamma_.codomain_size());
}

std::string PerMorphism::str() const {
    return source_.str() + " | " + gamma_.str();
}

PerMorphism PerMorphism::parse(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("PerMorphism::parse: expected 'source | gamma'");
    return PerMorphism(Surjection::parse(text.substr(0, bar)),
                       Surjection::parse(text.substr(bar + 1)));
}

int cardinality(const Surjection& alpha) { return alpha.codomain_size(); }

std::vector<Surjection> morphism_fibers(const PerMorphism& f) {
    const Surjection& src = f.source();
    const Surjection& tgt = f.target();
    const Surjection& gamma = f.gamma();

    std::vector<Surjection> fibers;
    fibers.reserve(gamma.codomain_size());
    for (int i = 1; i <= gamma.codomain_size(); ++i) {
        std::vector<int> cod; // gamma^{-1}(i), increasing
        for (int j = 1; j <= gamma.domain_size(); ++j)
            if (gamma(j) == i) cod.push_back(j);
        auto st = standardize(cod);
        std::vector<int> images;
        for (int u = 1; u <= src.domain_size(); ++u)
            if (tgt(u) == i) images.push_back(st.at(src(u)));
        fibers.emplace_back(std::move(images), static_cast<int>(cod.size()));
    }
    return fibers;
}

PerMorphism compose(const PerMorphism& f, const PerMorphism& g) {
    if (f.target() != g.source())
        throw std::domain_error("compose: target of f must equal source of g");
    std::vector<int> gam(f.gamma().domain_size());
    for (int j = 1; j <= f.gamma().domain_size(); ++j) gam[j - 1] = g.gamma()(f.gamma()(j));
    return PerMorphism(f.source(), Surjection(std::move(gam), g.gamma().codomain_size()));
}

PerMorphism identity_morphism(const Surjection& alpha) {
    return PerMorphism(alpha, Surjection::identity(alpha.codomain_size()));
}

PerMorphism opfib_lift(const Surjection& alpha, const Surjection& gamma) {
    return PerMorphism(alpha, gamma);
}

Surjection interval_collapse(int k, int a, int b, int i) {
    if (a < 0 || b < 0 || k != a + b + 3 || i < 1 || i > a + 2)
        throw std::domain_error("interval_collapse: need k = a+b+3, a,b >= 0, 1 <= i <= a+2");
    std::vector<int> images(k);
    for (int j = 1; j <= k; ++j) {
        if (j <= i - 1)
            images[j - 1] = j;
        else if (j <= i + b + 1)
            images[j - 1] = i;
        else
            images[j - 1] = j - b - 1;
    }
    return Surjection(std::move(images), a + 2);
}

std::vector<ElementaryMorphism> elementary_morphisms(const Surjection& alpha,
                                                     int min_quotient_card) {
    std::vector<ElementaryMorphism> out;
    int k = cardinality(alpha);
    for (int a = 0; a <= k - 3; ++a) {
        int b = k - 3 - a;
        if (a + 2 < min_quotient_card) continue;
        for (int i = 1; i <= a + 2; ++i) {
            PerMorphism f = opfib_lift(alpha, interval_collapse(k, a, b, i));
            Surjection fiber = morphism_fibers(f)[i - 1];
            out.push_back({f, i, std::move(fiber), f.target()});
        }
    }
    return out;
}

std::vector<long long> grothendieck_fiber_count(int k, int nmax) {
    if (k < 1 || nmax < k) throw std::domain_error("grothendieck_fiber_count: need 1 <= k <= nmax");
    std::vector<long long> out;
    for (int n = k; n <= nmax; ++n) out.push_back(count_surjections(n, k));
    return out;
}

std::vector<Surjection> monotone_surjections(int k, int l) {
    if (k < 1 || l < 1 || l > k)
        throw std::domain_error("monotone_surjections: need 1 <= l <= k");
    // compositions of k into l positive parts; first part descending gives
    // lex order on the image lists
    std::vector<Surjection> out;
    std::vector<int> part;
    auto rec = [&](auto&& self, int remaining, int blocks_left) -> void {
        if (blocks_left == 0) {
            if (remaining == 0) {
                std::vector<int> images;
                for (std::size_t b = 0; b < part.size(); ++b)
                    images.insert(images.end(), part[b], static_cast<int>(b) + 1);
                out.emplace_back(std::move(images), l);
            }
            return;
        }
        for (int take = remaining - (blocks_left - 1); take >= 1; --take) {
            part.push_back(take);
            self(self, remaining - take, blocks_left - 1);
            part.pop_back();
        }
    };
    rec(rec, k, l);
    return out;
}

} // namespace permutadkit
