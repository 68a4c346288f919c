#include "permutadkit/sparse_matrix.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace permutadkit {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::domain_error("SparseMatrix: negative shape");
}

void SparseMatrix::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix: index out of range");
}

void SparseMatrix::set(int r, int c, const Rational& v) {
    check_index(r, c);
    if (v.is_zero())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

void SparseMatrix::add(int r, int c, const Rational& v) {
    check_index(r, c);
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
        if (!v.is_zero()) entries_.emplace(std::make_pair(r, c), v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
}

Rational SparseMatrix::at(int r, int c) const {
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rational(0) : it->second;
}

std::string SparseMatrix::coordinate_text() const {
    std::ostringstream os;
    for (const auto& [rc, v] : entries_)
        os << rc.first + 1 << ' ' << rc.second + 1 << ' ' << v.str() << '\n';
    return os.str();
}

SparseMatrix SparseMatrix::from_coordinate_text(int rows, int cols, const std::string& text) {
    SparseMatrix m(rows, cols);
    std::istringstream is(text);
    int r, c;
    std::string v;
    while (is >> r >> c >> v) m.set(r - 1, c - 1, Rational::parse(v));
    return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::domain_error("multiply: shape mismatch");
    // column lists of a, then accumulate a * (column of b) per column of b
    std::vector<std::vector<std::pair<int, Rational>>> a_cols(a.cols());
    for (const auto& [rc, v] : a.entries()) a_cols[rc.second].emplace_back(rc.first, v);

    std::vector<std::vector<std::pair<int, Rational>>> b_cols(b.cols());
    for (const auto& [rc, v] : b.entries()) b_cols[rc.second].emplace_back(rc.first, v);

    SparseMatrix out(a.rows(), b.cols());
    std::map<int, Rational> acc;
    for (int j = 0; j < b.cols(); ++j) {
        acc.clear();
        for (const auto& [k, bv] : b_cols[j])
            for (const auto& [i, av] : a_cols[k]) acc[i] += av * bv;
        for (const auto& [i, v] : acc)
            if (!v.is_zero()) out.set(i, j, v);
    }
    return out;
}

namespace {

struct EliminationState {
    std::vector<std::map<int, Rational>> rows; // active rows, by column
    std::vector<std::set<int>> col_rows;       // active rows per column
    std::vector<bool> row_active, col_active;
};

// (unit-pivot preference, row fill, row index): smaller is better
std::tuple<int, std::size_t, int> row_key(const EliminationState& st, int r, int c) {
    const Rational& v = st.rows[r].at(c);
    bool unit = v.numerator() == 1 || v.numerator() == -1;
    bool unit_den = v.denominator() == 1;
    return {unit && unit_den ? 0 : 1, st.rows[r].size(), r};
}

} // namespace

int rank(const SparseMatrix& m) {
    EliminationState st;
    st.rows.assign(m.rows(), {});
    st.col_rows.assign(m.cols(), {});
    st.row_active.assign(m.rows(), true);
    st.col_active.assign(m.cols(), true);
    for (const auto& [rc, v] : m.entries()) {
        st.rows[rc.first][rc.second] = v;
        st.col_rows[rc.second].insert(rc.first);
    }

    int pivots = 0;
    for (;;) {
        // pivot column: fewest active entries, lowest index on ties
        int pc = -1;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (int c = 0; c < m.cols(); ++c) {
            if (!st.col_active[c] || st.col_rows[c].empty()) continue;
            if (st.col_rows[c].size() < best) {
                best = st.col_rows[c].size();
                pc = c;
            }
        }
        if (pc < 0) break;

        int pr = -1;
        std::tuple<int, std::size_t, int> best_key{2, 0, 0};
        for (int r : st.col_rows[pc]) {
            auto key = row_key(st, r, pc);
            if (pr < 0 || key < best_key) {
                pr = r;
                best_key = key;
            }
        }

        ++pivots;
        const std::map<int, Rational> pivot_row = st.rows[pr];
        const Rational pivot_val = pivot_row.at(pc);

        // detach the pivot row before updating the others
        st.row_active[pr] = false;
        for (const auto& [c, v] : pivot_row) st.col_rows[c].erase(pr);
        st.rows[pr].clear();

        std::vector<int> victims(st.col_rows[pc].begin(), st.col_rows[pc].end());
        for (int r : victims) {
            Rational factor = st.rows[r].at(pc) / pivot_val;
            for (const auto& [c, v] : pivot_row) {
                auto it = st.rows[r].find(c);
                if (it == st.rows[r].end()) {
                    Rational nv = -(factor * v);
                    if (!nv.is_zero()) {
                        st.rows[r].emplace(c, std::move(nv));
                        st.col_rows[c].insert(r);
                    }
                } else {
                    it->second -= factor * v;
                    if (it->second.is_zero()) {
                        st.rows[r].erase(it);
                        st.col_rows[c].erase(r);
                    }
                }
            }
        }
        st.col_active[pc] = false;
    }
    return pivots;
}

} // namespace permutadkit
