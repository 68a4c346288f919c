#ifndef PERMUTADKIT_SPARSE_MATRIX_HPP
#define PERMUTADKIT_SPARSE_MATRIX_HPP

#include "permutadkit/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace permutadkit {

/// Sparse matrix over the rationals. Zero entries are never stored;
/// indices are 0-based internally, 1-based in the text export.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nonzeros() const { return entries_.size(); }

    /// Sets entry (r,c); storing an exact zero erases the entry.
    void set(int r, int c, const Rational& v);
    /// Adds v to entry (r,c).
    void add(int r, int c, const Rational& v);
    Rational at(int r, int c) const;

    const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    bool is_zero() const { return entries_.empty(); }

    /// Coordinate-list text, one "row col num/den" line per entry, 1-indexed.
    std::string coordinate_text() const;
    static SparseMatrix from_coordinate_text(int rows, int cols, const std::string& text);

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Rational> entries_;

    void check_index(int r, int c) const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Exact rank over the rationals.
///
/// Sparse elimination with a deterministic pivot rule: among the columns of
/// minimal fill potential, unit entries first, lowest (col,row) as the tie
/// break. The rule is fixed so repeated runs produce identical elimination
/// orders regardless of thread scheduling in callers.
int rank(const SparseMatrix& m);

} // namespace permutadkit

#endif
