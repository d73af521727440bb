#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symstrat/chain_complex.hpp"
#include "symstrat/partitions.hpp"

namespace symstrat {

/// A cell of the compactified planar model: points grouped into columns of
/// equal x-coordinate (left to right), stacked within a column by increasing
/// y. Each entry is a colour index (coloured mode) or a positive multiplicity
/// (symmetric mode). Dimension is one x per column plus one y per entry.
struct FNCell {
    std::vector<std::vector<int>> columns;

    int num_columns() const { return static_cast<int>(columns.size()); }
    int num_entries() const;
    int dimension() const { return num_columns() + num_entries(); }
    int total_weight_sym() const; // sum of entry values
    Partition pattern_sym() const;

    std::string to_string() const; // e.g. "[1|2 1]" columns left to right, bottom-up entries
    bool operator==(const FNCell& other) const = default;
};

/// Canonical order: dimension, then column sizes, then flattened values.
bool cell_less(const FNCell& a, const FNCell& b);

enum class FNMode { Coloured, SymPattern };

/// What to build: the coloured configuration space of a colour vector, or the
/// union of multiplicity strata of Sym^n(R^2) whose patterns lie in a given
/// family.
class FNSpec {
public:
    static FNSpec conf_space(const ColourVector& v);
    /// Open complement of the closure of the lambda stratum. The pattern family
    /// is checked to be closed under one-step part splits.
    static FNSpec wcomp(const Partition& lambda);
    /// The single locally closed stratum with pattern exactly lambda.
    static FNSpec single_stratum(const Partition& lambda);
    static FNSpec sym_pattern(int n, std::vector<Partition> allowed, bool open_family);

    FNMode mode() const { return mode_; }
    const ColourVector& colours() const { return colours_; }
    const std::vector<Partition>& allowed() const { return allowed_; }
    bool open_family() const { return open_family_; }
    int total_weight() const { return total_; }
    int ambient_dim() const { return 2 * total_; }
    bool pattern_allowed(const Partition& p) const;

    std::string describe() const;
    /// Canonical serialization used in cache keys.
    std::string serialize() const;
    bool operator==(const FNSpec& other) const = default;

private:
    FNMode mode_ = FNMode::Coloured;
    ColourVector colours_;
    int total_ = 0;
    std::vector<Partition> allowed_; // sorted descending-lex, unique
    bool open_family_ = false;
};

/// Every cell of the model, exactly once, grouped by dimension (index =
/// dimension, 0..2*total). Throws SizeLimitExceeded past the weight limit.
std::vector<std::vector<FNCell>> enumerate_cells(const FNSpec& spec, int size_limit = 8);

/// Cellular boundary: signed column merges plus (symmetric mode) signed entry
/// merges whose coarsened pattern stays in the family; everything else falls
/// into the basepoint. Terms are canonically ordered.
std::vector<std::pair<FNCell, std::int64_t>> boundary(const FNCell& cell, const FNSpec& spec);

/// The assembled model: cells, integer differentials, and the codimension
/// filtration (level of a cell = 2 * (total weight - number of entries)).
struct BuiltComplex {
    FNSpec spec;
    std::vector<std::vector<FNCell>> cells; // by dimension
    ChainComplex complex;

    int total_weight() const { return spec.total_weight(); }
    int ambient_dim() const { return spec.ambient_dim(); }
    /// Index of a cell within its dimension; -1 if absent.
    int cell_index(const FNCell& cell) const;
    /// Versioned canonical record: cell lists per dimension plus sparse
    /// boundary triplets. Doubles as the cache key material.
    std::string serialize() const;
};

/// Builds the complex and verifies d.d = 0 and filtration compatibility.
BuiltComplex build_complex(const FNSpec& spec, int size_limit = 8);

/// The stabilization map prepending a leftmost singleton column (colour i in
/// coloured mode, a weight-1 entry in symmetric mode), with the orientation
/// sign (-1)^{#columns}. Degree shift +2; validated as a map of the dual
/// complexes. The caller supplies the prebuilt target so it can be shared.
ChainMap stabilization_chain_map(const BuiltComplex& src, const BuiltComplex& tgt, int colour_i);

} // namespace symstrat
