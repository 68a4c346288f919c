#ifndef PERMUTADKIT_BAR_CONSTRUCTION_HPP
#define PERMUTADKIT_BAR_CONSTRUCTION_HPP

#include "permutadkit/chain_complex.hpp"
#include "permutadkit/free_permutad.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace permutadkit {

/// Sign mutations for the bar differential, used by the sensitivity tests.
/// Each one must break d^2 = 0 on the flagship complexes.
struct BarSignTweak {
    /// Omit the (-1)^(deg of left factor) in the cogenerator splits.
    bool drop_desuspension_parity = false;
    /// Extend without the Koszul sign over earlier blocks.
    bool drop_leibniz = false;
    /// Negate the single split of the arity-`first` cogenerator along `second`.
    std::optional<std::pair<int, Surjection>> negate_split;

    bool trivial() const {
        return !drop_desuspension_parity && !drop_leibniz && !negate_split;
    }
};

/// Arity-n component of the cobar construction on the component-wise dual
/// of the quotient described by `dual_structure`.
///
/// Generators: one per quotient class, at the class arity, in degree
/// (class degree - 1). The differential extends the dualized structure
/// maps as a derivation; the split of a cogenerator along r carries the
/// factor (-1)^(degree of the desuspended left factor), and the derivation
/// extension moves past earlier blocks with the Koszul sign.
struct DualBarComplex {
    int arity = 0;
    ChainComplex complex;
    std::vector<std::vector<FreeBasisElt>> basis_by_degree;
    GeneratorCollection generators;
};

DualBarComplex dual_bar(QuotientData& dual_structure, int n, const BarSignTweak& tweak = {});

struct KoszulArityReport {
    int n = 0;
    std::vector<int> dims;    // complex dimensions, degree 0 upward
    std::map<int, int> betti;
    bool d_squared_zero = false;
    int h0_expected = 0;
    bool ok = false;
};

struct KoszulReport {
    std::string target;
    int nmax = 0;
    std::vector<KoszulArityReport> per_arity;
    bool koszul = false;
};

/// Builds the dual quotient and checks, for each arity n <= nmax, that the
/// cobar complex of the dual is acyclic in positive degrees with H_0 of the
/// expected dimension.
KoszulReport koszulity_check(const QuadraticPresentation& pres, int nmax,
                             const std::string& target_name = "presentation");

/// Cellular chains of the permutohedron: bases are ordered set partitions
/// of {1..n} in degree n - (number of blocks); the boundary is transported
/// from the cobar complex of the dual of the terminal presentation through
/// the generator map e_m -> -c_{m-1}.
ChainComplex permutohedron_complex(int n);

/// Checks that the degree-wise map induced by e_m -> generator_sign * c_{m-1}
/// intertwines the two differentials exactly. The shipped convention is
/// generator_sign = -1; +1 must fail.
bool xi_check(int n, int generator_sign = -1);

struct ZetaReport {
    bool chain_iso = false;
    /// First (x, y, r) with zeta(x compose_r y) != zeta(x) compose_r zeta(y).
    std::optional<std::tuple<FreeBasisElt, FreeBasisElt, Surjection>> witness;
};

/// The twist map multiplying each basis element by the sign of its shape:
/// a chain isomorphism between the twisted and untwisted cobar complexes
/// in arity <= n, but not a map of permutads. `flat` replaces the sign by
/// +1 and must break the chain-map property.
ZetaReport zeta_check(int n, bool flat = false);

/// Truncated power series; coefficient of t^m at index m, index 0 unused.
struct PowerSeries {
    std::vector<Rational> coeffs;

    explicit PowerSeries(int truncation = 0) : coeffs(truncation + 1, Rational(0)) {}
    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
    Rational at(int m) const { return m <= truncation() ? coeffs.at(m) : Rational(0); }
};

/// f(t) = sum over arities of (Euler characteristic / n!) t^n.
PowerSeries generating_series(const std::map<std::pair<int, int>, int>& dims_by_arity_degree,
                              int truncation);

/// Division-free form of the functional equation relating a Koszul
/// presentation to its dual: fA + fB + fA*fB = 0 through order T.
bool gk_functional_check(const PowerSeries& fA, const PowerSeries& fB, int T);

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int truncation);

} // namespace permutadkit

#endif
