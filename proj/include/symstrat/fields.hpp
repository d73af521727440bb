#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symstrat/chain_complex.hpp"

namespace symstrat {

using Rational = boost::multiprecision::cpp_rational;

/// Element of Z/p with the modulus held in a thread-local context (set up an
/// FpContext before using). Keeping the modulus out of the element lets the
/// dense helpers below stay scalar-generic.
struct FpElem {
    static thread_local long long modulus;
    long long v = 0;

    FpElem() = default;
    FpElem(long long x) {
        v = x % modulus;
        if (v < 0) v += modulus;
    }
    FpElem(const boost::multiprecision::cpp_int& x) {
        v = static_cast<long long>(x % modulus);
        if (v < 0) v += modulus;
    }

    friend FpElem operator+(FpElem a, FpElem b) { return FpElem(a.v + b.v); }
    friend FpElem operator-(FpElem a, FpElem b) { return FpElem(a.v - b.v); }
    friend FpElem operator-(FpElem a) { return FpElem(-a.v); }
    friend FpElem operator*(FpElem a, FpElem b) {
        return FpElem(static_cast<long long>(static_cast<__int128>(a.v) * b.v % modulus));
    }
    friend FpElem operator/(FpElem a, FpElem b);
    FpElem& operator+=(FpElem o) { return *this = *this + o; }
    FpElem& operator-=(FpElem o) { return *this = *this - o; }
    FpElem& operator*=(FpElem o) { return *this = *this * o; }
    friend bool operator==(FpElem a, FpElem b) { return a.v == b.v; }
    friend bool operator==(FpElem a, long long b) { return a == FpElem(b); }
    friend bool operator!=(FpElem a, FpElem b) { return a.v != b.v; }
    friend bool operator!=(FpElem a, long long b) { return !(a == b); }
};

/// RAII guard selecting the Z/p modulus on this thread.
struct FpContext {
    long long saved;
    explicit FpContext(long long p) : saved(FpElem::modulus) { FpElem::modulus = p; }
    ~FpContext() { FpElem::modulus = saved; }
};

/// Dense exact matrix over a field scalar (Rational or FpElem). Sizes stay
/// small: this backs the spectral sequence engine and cross-checks only.
template <class F>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<F>> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r), std::vector<F>(static_cast<size_t>(c))) {}

    static Mat from_sparse(const SparseMat& m) {
        Mat q(m.rows, m.cols);
        for (int c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col_entries[static_cast<size_t>(c)]) q.at(r, c) = F(v);
        return q;
    }
    static Mat identity(int n) {
        Mat q(n, n);
        for (int i = 0; i < n; ++i) q.at(i, i) = F(1);
        return q;
    }

    F& at(int r, int c) { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const F& at(int r, int c) const { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }

    Mat multiply(const Mat& other) const {
        if (cols != other.rows) throw Error(errc::bad_input, "Mat::multiply: shape mismatch");
        Mat out(rows, other.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const F& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < other.cols; ++j) {
                    const F& w = other.at(k, j);
                    if (w != 0) out.at(i, j) += v * w;
                }
            }
        return out;
    }

    bool is_zero() const {
        for (const auto& row : a)
            for (const F& v : row)
                if (v != 0) return false;
        return true;
    }

    /// Horizontal concatenation [this | other].
    Mat hcat(const Mat& other) const {
        if (rows != other.rows) throw Error(errc::bad_input, "Mat::hcat: row mismatch");
        Mat out(rows, cols + other.cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) out.at(r, c) = at(r, c);
            for (int c = 0; c < other.cols; ++c) out.at(r, cols + c) = other.at(r, c);
        }
        return out;
    }
};

/// Row-reduces in place; returns the rank. Pivot rows get leading ones.
template <class F>
int rref(Mat<F>& m, std::vector<int>* pivot_cols = nullptr) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, c) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m.a[static_cast<size_t>(pivot)], m.a[static_cast<size_t>(rank)]);
        F inv = F(1) / m.at(rank, c);
        for (int j = c; j < m.cols; ++j) m.at(rank, j) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, c) == 0) continue;
            F f = m.at(r, c);
            for (int j = c; j < m.cols; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++rank;
    }
    return rank;
}

template <class F>
int rank_of(const Mat<F>& m) {
    Mat<F> copy = m;
    return rref(copy);
}

/// Basis of the null space as columns.
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
    Mat<F> r = m;
    std::vector<int> pivots;
    rref(r, &pivots);
    std::vector<char> is_pivot(static_cast<size_t>(m.cols), 0);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);

    Mat<F> k(m.cols, static_cast<int>(free_cols.size()));
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        int fc = free_cols[fi];
        k.at(fc, static_cast<int>(fi)) = F(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            k.at(pivots[pi], static_cast<int>(fi)) = -r.at(static_cast<int>(pi), fc);
    }
    return k;
}

/// Coordinates of `vectors` in the span of `basis` columns; throws when a
/// vector lies outside the span.
template <class F>
Mat<F> solve_in_span(const Mat<F>& basis, const Mat<F>& vectors) {
    if (basis.rows != vectors.rows) throw Error(errc::bad_input, "solve_in_span: row mismatch");
    Mat<F> aug = basis.hcat(vectors);
    std::vector<int> pivots;
    int rank = 0;
    for (int c = 0; c < basis.cols && rank < aug.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < aug.rows; ++r)
            if (aug.at(r, c) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(aug.a[static_cast<size_t>(pivot)], aug.a[static_cast<size_t>(rank)]);
        F inv = F(1) / aug.at(rank, c);
        for (int j = 0; j < aug.cols; ++j) aug.at(rank, j) *= inv;
        for (int r = 0; r < aug.rows; ++r) {
            if (r == rank || aug.at(r, c) == 0) continue;
            F f = aug.at(r, c);
            for (int j = 0; j < aug.cols; ++j) aug.at(r, j) -= f * aug.at(rank, j);
        }
        pivots.push_back(c);
        ++rank;
    }
    for (int r = rank; r < aug.rows; ++r)
        for (int c = 0; c < vectors.cols; ++c)
            if (aug.at(r, basis.cols + c) != 0)
                throw Error(errc::bad_input, "solve_in_span: vector outside span");
    Mat<F> x(basis.cols, vectors.cols);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        for (int c = 0; c < vectors.cols; ++c)
            x.at(pivots[pi], c) = aug.at(static_cast<int>(pi), basis.cols + c);
    return x;
}

using QMat = Mat<Rational>;
using FpMat = Mat<FpElem>;

inline int rank_q(const QMat& m) { return rank_of(m); }

/// Rank of an integer matrix over Z/p by sparse elimination, independent of
/// the Smith normal form path.
long rank_mod_p(const SparseMat& m, long long p);

/// Rank over Q by independent dense elimination (small matrices only).
long rank_over_q(const SparseMat& m);

} // namespace symstrat
