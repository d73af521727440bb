#include "symstrat/smith.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace symstrat {

DenseMat DenseMat::identity(int n) {
    DenseMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DenseMat DenseMat::from_sparse(const SparseMat& s) {
    DenseMat m(s.rows, s.cols);
    for (int c = 0; c < s.cols; ++c)
        for (const auto& [r, v] : s.col_entries[static_cast<size_t>(c)]) m.at(r, c) = v;
    return m;
}

DenseMat DenseMat::multiply(const DenseMat& other) const {
    if (cols != other.rows) throw Error(errc::bad_input, "DenseMat::multiply: shape mismatch");
    DenseMat out(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const BigInt& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < other.cols; ++j) {
                const BigInt& w = other.at(k, j);
                if (w != 0) out.at(i, j) += v * w;
            }
        }
    return out;
}

DenseMat DenseMat::transposed() const {
    DenseMat out(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
    return out;
}

BigInt DenseMat::determinant() const {
    if (rows != cols) throw Error(errc::bad_input, "determinant of non-square matrix");
    int n = rows;
    if (n == 0) return 1;
    DenseMat m = *this;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            std::swap(m.a[static_cast<size_t>(k)], m.a[static_cast<size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev; // Bareiss: division is exact
            }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

long SmithResult::rank_mod(long long p) const {
    long r = 0;
    for (const BigInt& di : divisors)
        if (di % p != 0) ++r;
    return r;
}

std::vector<BigInt> SmithResult::torsion() const {
    std::vector<BigInt> t;
    for (const BigInt& di : divisors)
        if (di > 1) t.push_back(di);
    return t;
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

struct DenseSmithState {
    DenseMat m;
    bool with_transforms;
    DenseMat u, v;

    void row_swap(int i, int j) {
        std::swap(m.a[static_cast<size_t>(i)], m.a[static_cast<size_t>(j)]);
        if (with_transforms) std::swap(u.a[static_cast<size_t>(i)], u.a[static_cast<size_t>(j)]);
    }
    void col_swap(int i, int j) {
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        if (with_transforms)
            for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    void row_addmul(int dst, int src, const BigInt& f) { // row_dst += f * row_src
        if (f == 0) return;
        for (int c = 0; c < m.cols; ++c) m.at(dst, c) += f * m.at(src, c);
        if (with_transforms)
            for (int c = 0; c < u.cols; ++c) u.at(dst, c) += f * u.at(src, c);
    }
    void col_addmul(int dst, int src, const BigInt& f) { // col_dst += f * col_src
        if (f == 0) return;
        for (int r = 0; r < m.rows; ++r) m.at(r, dst) += f * m.at(r, src);
        if (with_transforms)
            for (int r = 0; r < v.rows; ++r) v.at(r, dst) += f * v.at(r, src);
    }
    void row_negate(int i) {
        for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        if (with_transforms)
            for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    }
};

// Classic Smith reduction: bring the smallest entry of the trailing block to
// the pivot slot, clear its row and column by Euclidean steps, and keep going
// until the pivot divides the whole trailing block.
void dense_smith_reduce(DenseSmithState& s, std::vector<BigInt>& divisors) {
    DenseMat& m = s.m;
    int t = 0;
    int steps = std::min(m.rows, m.cols);
    while (t < steps) {
        int pr = -1, pc = -1;
        BigInt best;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j) {
                const BigInt& x = m.at(i, j);
                if (x == 0) continue;
                BigInt ax = abs_big(x);
                if (pr < 0 || ax < best) { pr = i; pc = j; best = ax; }
            }
        if (pr < 0) break; // trailing block is zero
        if (pr != t) s.row_swap(pr, t);
        if (pc != t) s.col_swap(pc, t);

        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < m.rows; ++i) {
                if (m.at(i, t) == 0) continue;
                BigInt q = m.at(i, t) / m.at(t, t);
                s.row_addmul(i, t, -q);
                if (m.at(i, t) != 0) { // remainder smaller than pivot: promote it
                    s.row_swap(i, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (int j = t + 1; j < m.cols; ++j) {
                if (m.at(t, j) == 0) continue;
                BigInt q = m.at(t, j) / m.at(t, t);
                s.col_addmul(j, t, -q);
                if (m.at(t, j) != 0) {
                    s.col_swap(j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // Row and column are clear; force pivot | trailing block.
            bool fixed = true;
            for (int i = t + 1; i < m.rows && fixed; ++i)
                for (int j = t + 1; j < m.cols && fixed; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        s.row_addmul(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (m.at(t, t) < 0) s.row_negate(t);
        divisors.push_back(m.at(t, t));
        ++t;
    }
}

// Sparse unit-pivot phase. A pivot of absolute value 1 is removed with column
// operations only: once its row is clear, clearing its column by row
// operations cannot touch any other column, so the row/column pair drops out
// contributing an invariant factor of 1. Pivots are picked Markowitz-style
// from a lazy heap keyed by column fill.
struct SparseReducer {
    int rows, cols;
    std::vector<std::map<int, BigInt>> col_data; // col -> (row -> value)
    std::vector<std::set<int>> row_cols;         // row -> columns with a nonzero
    std::vector<char> col_alive;
    long units = 0;

    using HeapItem = std::pair<std::size_t, int>; // (col size at push time, col)
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;

    explicit SparseReducer(const SparseMat& m)
        : rows(m.rows), cols(m.cols), col_data(static_cast<size_t>(m.cols)),
          row_cols(static_cast<size_t>(m.rows)), col_alive(static_cast<size_t>(m.cols), 1) {
        for (int c = 0; c < m.cols; ++c) {
            for (const auto& [r, v] : m.col_entries[static_cast<size_t>(c)]) {
                col_data[static_cast<size_t>(c)][r] = v;
                row_cols[static_cast<size_t>(r)].insert(c);
            }
            if (!col_data[static_cast<size_t>(c)].empty())
                heap.emplace(col_data[static_cast<size_t>(c)].size(), c);
        }
    }

    std::size_t row_size(int r) const { return row_cols[static_cast<size_t>(r)].size(); }

    void set_entry(int r, int c, const BigInt& v) {
        auto& col = col_data[static_cast<size_t>(c)];
        auto it = col.find(r);
        if (v == 0) {
            if (it != col.end()) {
                col.erase(it);
                row_cols[static_cast<size_t>(r)].erase(c);
            }
        } else if (it == col.end()) {
            col.emplace(r, v);
            row_cols[static_cast<size_t>(r)].insert(c);
        } else {
            it->second = v;
        }
    }

    // Best unit entry of column c by row fill; false if the column has none.
    bool best_unit_in_col(int c, int& pr) const {
        std::size_t best = 0;
        bool found = false;
        for (const auto& [r, v] : col_data[static_cast<size_t>(c)]) {
            if (v != 1 && v != -1) continue;
            std::size_t rs = row_size(r);
            if (!found || rs < best) {
                best = rs;
                pr = r;
                found = true;
            }
        }
        return found;
    }

    void eliminate(int pr, int pc) {
        const BigInt pivot = col_data[static_cast<size_t>(pc)].at(pr);
        const auto pivot_col = col_data[static_cast<size_t>(pc)]; // copy for iteration stability
        std::vector<int> touched(row_cols[static_cast<size_t>(pr)].begin(),
                                 row_cols[static_cast<size_t>(pr)].end());
        for (int c : touched) {
            if (c == pc) continue;
            BigInt f = col_data[static_cast<size_t>(c)].at(pr);
            if (pivot < 0) f = -f;
            for (const auto& [r, v] : pivot_col) {
                auto it = col_data[static_cast<size_t>(c)].find(r);
                BigInt nv = (it == col_data[static_cast<size_t>(c)].end() ? BigInt(0) : it->second) - f * v;
                set_entry(r, c, nv);
            }
            if (!col_data[static_cast<size_t>(c)].empty())
                heap.emplace(col_data[static_cast<size_t>(c)].size(), c);
        }
        for (const auto& [r, v] : pivot_col) {
            (void)v;
            row_cols[static_cast<size_t>(r)].erase(pc);
        }
        col_data[static_cast<size_t>(pc)].clear();
        col_alive[static_cast<size_t>(pc)] = 0;
        ++units;
    }

    void run() {
        std::vector<int> stash; // columns currently without a unit entry
        bool progressed = true;
        while (true) {
            if (heap.empty()) {
                if (!progressed || stash.empty()) break;
                for (int c : stash)
                    if (col_alive[static_cast<size_t>(c)] && !col_data[static_cast<size_t>(c)].empty())
                        heap.emplace(col_data[static_cast<size_t>(c)].size(), c);
                stash.clear();
                progressed = false;
                continue;
            }
            auto [sz, c] = heap.top();
            heap.pop();
            if (!col_alive[static_cast<size_t>(c)]) continue;
            std::size_t cur = col_data[static_cast<size_t>(c)].size();
            if (cur == 0) continue;
            if (cur != sz) { // stale entry; requeue with the true size
                heap.emplace(cur, c);
                continue;
            }
            int pr = -1;
            if (!best_unit_in_col(c, pr)) {
                stash.push_back(c);
                continue;
            }
            eliminate(pr, c);
            progressed = true;
        }
    }

    DenseMat remainder() const {
        std::map<int, int> rmap, cmap;
        for (int c = 0; c < cols; ++c)
            if (col_alive[static_cast<size_t>(c)])
                for (const auto& [r, v] : col_data[static_cast<size_t>(c)]) {
                    (void)v;
                    rmap.emplace(r, 0);
                    cmap.emplace(c, 0);
                }
        int nr = 0, nc = 0;
        for (auto& [r, idx] : rmap) idx = nr++;
        for (auto& [c, idx] : cmap) idx = nc++;
        DenseMat rem(nr, nc);
        for (const auto& [c, cidx] : cmap)
            for (const auto& [r, v] : col_data[static_cast<size_t>(c)]) rem.at(rmap.at(r), cidx) = v;
        return rem;
    }
};

} // namespace

SmithResult smith_normal_form_dense(DenseMat m, bool with_transforms) {
    DenseSmithState state{std::move(m), with_transforms, DenseMat(), DenseMat()};
    if (with_transforms) {
        state.u = DenseMat::identity(state.m.rows);
        state.v = DenseMat::identity(state.m.cols);
    }
    SmithResult res;
    dense_smith_reduce(state, res.divisors);
    if (with_transforms) {
        res.U = std::move(state.u);
        res.V = std::move(state.v);
    }
    return res;
}

SmithResult smith_normal_form(const SparseMat& m, bool with_transforms, int dense_threshold) {
    if (with_transforms || m.cols < dense_threshold || m.rows < dense_threshold)
        return smith_normal_form_dense(DenseMat::from_sparse(m), with_transforms);

    SparseReducer red(m);
    red.run();

    SmithResult res;
    res.divisors.assign(static_cast<size_t>(red.units), BigInt(1));
    DenseMat rem = red.remainder();
    if (rem.rows > 0 && rem.cols > 0) {
        SmithResult tail = smith_normal_form_dense(std::move(rem), false);
        res.divisors.insert(res.divisors.end(), tail.divisors.begin(), tail.divisors.end());
    }
    return res;
}

} // namespace symstrat
