#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symstrat/errors.hpp"

namespace symstrat {

/// Column-major sparse integer matrix. Entries within a column are kept sorted
/// by row and free of zeros and duplicates.
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> col_entries;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), col_entries(static_cast<size_t>(c)) {}

    void add(int r, int c, std::int64_t v);
    void finalize(); // sort columns, combine duplicates, drop zeros
    std::size_t nnz() const;
    bool is_zero() const;
    std::int64_t get(int r, int c) const;

    SparseMat transposed() const;
    /// this * other, with overflow checking on the accumulation.
    SparseMat multiply(const SparseMat& other) const;
};

/// Graded chain complex with integer differentials d[k]: C_k -> C_{k-1}.
/// Degrees run 0..top_degree(); d[0] maps to the zero space.
struct ChainComplex {
    std::vector<int> dims;      // generator counts per degree
    std::vector<SparseMat> d;   // d[k] has shape dims[k-1] x dims[k]
    std::optional<std::vector<std::vector<int>>> filtration; // level per generator

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }
    int dim(int k) const {
        return (k < 0 || k > top_degree()) ? 0 : dims[static_cast<size_t>(k)];
    }
    /// d[k] with empty matrices materialized for out-of-range degrees.
    SparseMat boundary(int k) const;
    long long total_cells() const;
    long long euler_characteristic() const;

    /// Throws DSquaredNonzero if some composite d[k] d[k+1] has a nonzero entry.
    void verify_d_squared() const;
    /// Throws FiltrationViolation unless every boundary term lands in equal or
    /// deeper filtration level. No-op when no filtration is attached.
    void verify_filtration() const;

    /// The transposed complex with reversed grading: degree j holds the dual of
    /// C_{top-j}, so H_j of the result is H_c^{top-j} of the original cells.
    ChainComplex transposed_reversed() const;

    /// Canonical serialization (cache keys, debugging dumps).
    std::string serialize() const;
};

/// How a graded map between complexes commutes with the differentials.
///
/// Chain: d_tgt . f = f . d_src, the usual law.
/// CochainDual: the transpose is a chain map from target to source, i.e. f is
/// a map of the dual (compactly supported cochain) complexes. Stabilization
/// maps are of this kind: prepending a column commutes with the coboundary.
enum class ChainMapKind { Chain, CochainDual };

/// Degree-shifting graded map between two chain complexes. Non-owning; the
/// complexes must outlive the map.
struct ChainMap {
    const ChainComplex* src = nullptr;
    const ChainComplex* tgt = nullptr;
    int degree_shift = 0;
    ChainMapKind kind = ChainMapKind::Chain;
    std::vector<SparseMat> mats; // mats[k]: src degree k -> tgt degree k + shift

    SparseMat mat(int k) const;
    /// Throws NotAChainMap unless the commutation law of `kind` holds.
    void validate() const;
};

} // namespace symstrat
