#ifndef PERMUTADKIT_CHAIN_COMPLEX_HPP
#define PERMUTADKIT_CHAIN_COMPLEX_HPP

#include "permutadkit/sparse_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace permutadkit {

/// Non-negatively graded chain complex with labeled bases and exact
/// rational boundary matrices. boundary(d) maps the degree-d basis to the
/// degree-(d-1) basis, so its shape is dim(d-1) x dim(d); boundary(0) = 0.
struct ChainComplex {
    std::vector<std::vector<std::string>> basis; // basis[d] = labels in degree d
    std::vector<SparseMatrix> boundary;          // boundary[d] : C_d -> C_{d-1}

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
    int dim(int d) const {
        return (d < 0 || d > top_degree()) ? 0 : static_cast<int>(basis[d].size());
    }

    /// Throws unless boundary shapes match basis sizes.
    void validate_shapes() const;

    long long euler_characteristic() const;
};

/// True iff every consecutive boundary product vanishes.
bool is_complex(const ChainComplex& c);

/// Homology dimensions per degree, dim H_d = dim C_d - rank d_d - rank d_{d+1}.
/// Requires is_complex(c); throws otherwise. Ranks of distinct degrees are
/// computed concurrently when a thread budget > 1 is configured.
std::map<int, int> betti(const ChainComplex& c);

/// Thread budget used by betti and the verification campaigns. Defaults to
/// the PERMUTADKIT_THREADS environment variable, else 1.
int thread_budget();

} // namespace permutadkit

#endif
