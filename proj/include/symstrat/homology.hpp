#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symstrat/cache.hpp"
#include "symstrat/chain_complex.hpp"
#include "symstrat/smith.hpp"

namespace symstrat {

struct CoeffSystem {
    enum class Kind { Z, Q, Zp };
    Kind kind = Kind::Z;
    long long p = 0;

    static CoeffSystem integers() { return {Kind::Z, 0}; }
    static CoeffSystem rationals() { return {Kind::Q, 0}; }
    static CoeffSystem mod(long long prime) { return {Kind::Zp, prime}; }
    static CoeffSystem parse(const std::string& s, long long prime);

    bool is_field() const { return kind != Kind::Z; }
    std::string tag() const;
    bool operator==(const CoeffSystem&) const = default;
};

/// Finitely generated abelian group: free rank plus elementary divisors > 1 in
/// a divisibility chain. Over a field the torsion list is empty.
struct HomologyGroup {
    long long betti = 0;
    std::vector<BigInt> torsion;

    bool trivial() const { return betti == 0 && torsion.empty(); }
    std::string to_string() const;
    bool operator==(const HomologyGroup&) const = default;
};

/// Degree -> group; degrees with trivial groups are omitted.
using GradedGroups = std::map<int, HomologyGroup>;

HomologyGroup group_at(const GradedGroups& groups, int degree);
std::string graded_to_string(const GradedGroups& groups);

/// Smith data of every boundary matrix of a complex: ranks and elementary
/// divisors of d_k for k = 0..top+1 (both ends are zero maps). This is the
/// expensive bit, so it is content-addressed in the cache.
struct BoundaryData {
    std::vector<long> rank;
    std::vector<std::vector<BigInt>> divisors;

    long rank_at(int k) const;
    long rank_mod_at(int k, long long p) const;
    const std::vector<BigInt>* divisors_at(int k) const;
};

BoundaryData boundary_data(const ChainComplex& c, const ResultCache* cache = nullptr,
                           unsigned jobs = 1);

GradedGroups homology(const ChainComplex& c, CoeffSystem coeff, const ResultCache* cache = nullptr,
                      unsigned jobs = 1);

/// Cohomology of the transposed complex: H_c^k of the open space the cells
/// model. Betti numbers agree with homology; torsion shifts one degree down.
GradedGroups compactly_supported_cohomology(const ChainComplex& c, CoeffSystem coeff,
                                            const ResultCache* cache = nullptr, unsigned jobs = 1);

enum class DualityDirection { CompactSupportsToHomology, HomologyToCompactSupports };

/// Pure degree bookkeeping k -> ambient_dim - k. Orientability (integral for
/// coloured configuration spaces, rational for symmetric complements) is the
/// caller's contract.
GradedGroups poincare_dual_degrees(int ambient_dim, const GradedGroups& groups, DualityDirection dir);

/// Matrix of an induced map on homology in SNF-derived coordinates. Rows and
/// columns carry moduli: 0 marks a free summand, m > 1 a Z/m summand.
struct InducedBlock {
    DenseMat matrix;
    std::vector<BigInt> row_moduli;
    std::vector<BigInt> col_moduli;

    bool is_identity_shape() const;
    bool is_zero() const;
    /// Iso test on the free parts (square, determinant +-1) with equal moduli.
    bool is_isomorphism() const;
};

struct InducedMaps {
    enum class Grading { Homology, CompactSupports };
    Grading grading = Grading::Homology;
    int degree_shift = 0;
    std::map<int, InducedBlock> blocks;
};

/// Induced map on homology (Chain kind) or on compactly supported cohomology
/// (CochainDual kind, keyed by source H_c degree). Field coefficients drop
/// torsion coordinates.
InducedMaps induced_map_on_homology(const ChainMap& f, CoeffSystem coeff);

struct UCTRow {
    int degree = 0;
    long long betti_z = 0;
    long long rank_q_independent = 0;
    std::map<long long, long long> dim_mod_p;      // independently eliminated
    std::map<long long, long long> expected_mod_p; // betti + adjacent torsion counts
    bool pass = false;
};

struct UCTReport {
    bool pass = false;
    bool rational_rank_independent = false; // false when the dense Q path was skipped
    std::vector<UCTRow> rows;
};

/// Checks rank(H_k tensor Q) = betti_Z(H_k) and the Z/p dimension formula for
/// p in {2, 3, 5}, with field ranks computed by independent elimination.
UCTReport verify_universal_coefficients(const ChainComplex& c, const ResultCache* cache = nullptr,
                                        unsigned jobs = 1);

} // namespace symstrat
