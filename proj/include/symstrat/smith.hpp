#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symstrat/chain_complex.hpp"

namespace symstrat {

using BigInt = boost::multiprecision::cpp_int;

/// Dense big-integer matrix, row major. Small helper sized for transform
/// bookkeeping and the sub-200-column dense fallback, not for bulk data.
struct DenseMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<BigInt>> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r), std::vector<BigInt>(static_cast<size_t>(c))) {}

    static DenseMat identity(int n);
    static DenseMat from_sparse(const SparseMat& m);

    BigInt& at(int r, int c) { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const BigInt& at(int r, int c) const { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }

    DenseMat multiply(const DenseMat& other) const;
    DenseMat transposed() const;
    /// Exact determinant (fraction-free Bareiss elimination).
    BigInt determinant() const;
    bool operator==(const DenseMat& other) const { return rows == other.rows && cols == other.cols && a == other.a; }
};

/// U * M * V = diag(divisors, 0...), divisors positive with d_i | d_{i+1}.
struct SmithResult {
    std::vector<BigInt> divisors;
    std::optional<DenseMat> U; // rows x rows, unimodular
    std::optional<DenseMat> V; // cols x cols, unimodular

    long rank() const { return static_cast<long>(divisors.size()); }
    /// Rank of the matrix over Z/p: divisors not divisible by p stay invertible.
    long rank_mod(long long p) const;
    std::vector<BigInt> torsion() const; // divisors > 1
};

/// Smith normal form over Z with exact big-integer arithmetic.
///
/// Matrices under `dense_threshold` columns (default 200) and all requests for
/// transforms take a dense route; larger matrices are first reduced sparsely
/// with Markowitz-style unit pivoting and only the remainder is densified.
SmithResult smith_normal_form(const SparseMat& m, bool with_transforms = false,
                              int dense_threshold = 200);

/// Dense-path entry point (used directly by tests and transform consumers).
SmithResult smith_normal_form_dense(DenseMat m, bool with_transforms);

} // namespace symstrat
