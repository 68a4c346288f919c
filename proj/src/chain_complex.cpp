#include "permutadkit/chain_complex.hpp"

#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>

namespace permutadkit {

void ChainComplex::validate_shapes() const {
    if (boundary.size() != basis.size())
        throw std::domain_error("ChainComplex: boundary/basis length mismatch");
    for (int d = 0; d <= top_degree(); ++d) {
        int want_rows = d == 0 ? 0 : dim(d - 1);
        if (boundary[d].rows() != want_rows || boundary[d].cols() != dim(d))
            throw std::domain_error("ChainComplex: boundary shape mismatch in degree " +
                                    std::to_string(d));
    }
}

long long ChainComplex::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= top_degree(); ++d) chi += (d % 2 == 0 ? 1 : -1) * dim(d);
    return chi;
}

bool is_complex(const ChainComplex& c) {
    c.validate_shapes();
    for (int d = 2; d <= c.top_degree(); ++d) {
        if (!multiply(c.boundary[d - 1], c.boundary[d]).is_zero()) return false;
    }
    return true;
}

int thread_budget() {
    if (const char* env = std::getenv("PERMUTADKIT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::map<int, int> betti(const ChainComplex& c) {
    if (!is_complex(c)) throw std::domain_error("betti: boundary does not square to zero");

    int top = c.top_degree();
    std::vector<int> ranks(top + 2, 0);
    int budget = thread_budget();
    if (budget > 1) {
        // waves of at most `budget` concurrent rank jobs
        for (int d0 = 1; d0 <= top; d0 += budget) {
            std::vector<std::future<int>> jobs;
            for (int d = d0; d <= std::min(top, d0 + budget - 1); ++d)
                jobs.push_back(std::async(std::launch::async,
                                          [&c, d] { return rank(c.boundary[d]); }));
            for (int i = 0; i < static_cast<int>(jobs.size()); ++i)
                ranks[d0 + i] = jobs[i].get();
        }
    } else {
        for (int d = 1; d <= top; ++d) ranks[d] = rank(c.boundary[d]);
    }

    std::map<int, int> out;
    for (int d = 0; d <= top; ++d) out[d] = c.dim(d) - ranks[d] - ranks[d + 1];
    return out;
}

} // namespace permutadkit
