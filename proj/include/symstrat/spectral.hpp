#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symstrat/chain_complex.hpp"
#include "symstrat/homology.hpp"

namespace symstrat {

/// Pages are indexed on the chain side: `level` is the filtration level
/// (stratum codimension for the cell models) and `degree` the chain degree m.
/// For a model of W the paper-style bidegree is p = level, q = dim W - p - m;
/// the r-th differential here raises the level by r and drops the degree by
/// one, the linear dual of the paper's d_r of bidegree (-r, r-1).
struct SSPage {
    int r = 0;
    std::map<std::pair<int, int>, int> dims; // (level, degree) -> dimension

    int dim_at(int level, int degree) const;
    std::map<int, int> totals_by_degree() const;
};

/// One d_r block, entries rendered exactly ("3/2" over Q, residues over Z/p).
struct SSDifferential {
    int r = 0;
    int level = 0;  // source level; target level = level + r
    int degree = 0; // source degree; target degree = degree - 1
    std::vector<std::vector<std::string>> matrix; // target rows x source cols
    int rank = 0;
};

struct SSResult {
    CoeffSystem field;
    std::vector<SSPage> pages;             // pages 0..r_stable
    std::vector<SSDifferential> diffs;     // nonzero blocks of every page
    std::map<int, int> homology_dims;      // field Betti of the total complex
    bool converged = false;                // E_infinity totals match homology

    const SSPage& infinity() const { return pages.back(); }
};

/// Spectral sequence of the level filtration of a chain complex over a field.
/// Verifies d_r o d_r = 0 and that each page is the homology of the previous
/// one; throws FiltrationViolation when levels are missing or not respected.
SSResult spectral_sequence(const ChainComplex& c, CoeffSystem field);

/// Page-by-page comparison of two filtered complexes along a level-preserving
/// dual chain map (a stabilization map with source X and target Y). Entries
/// record, per page and slot of Y, whether the induced map into X is an
/// isomorphism.
struct SSComparisonEntry {
    int r = 0;
    int level = 0;
    int degree = 0; // chain degree on the Y side
    int dim_src = 0;
    int dim_tgt = 0;
    bool iso = false;
};

struct SSComparison {
    std::vector<SSComparisonEntry> entries; // all pages, page index ascending
    int stable_r = 0;

    std::vector<SSComparisonEntry> page(int r) const;
};

SSComparison compare_spectral_sequences(const ChainMap& stab, CoeffSystem field);

} // namespace symstrat
