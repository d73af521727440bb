#pragma once

#include <map>
#include <string>
#include <vector>

#include "symstrat/partitions.hpp"

namespace symstrat {

/// One codimension-p piece of the multiplicity stratification: the locally
/// closed stratum of Sym^n X whose elements have multiplicities exactly
/// `pattern`. Codimension is counted in ambient real dimensions.
struct StratumDescriptor {
    Partition pattern;
    int codimension = 0;
    int dim_x = 2;
};

/// Strata of the complement of the closure of the lambda stratum, grouped by
/// codimension. Rows exist for every p in [0, dim_x*(n-1)]; rows with p not
/// divisible by dim_x are present and empty.
struct StratificationTable {
    Partition lambda;
    int dim_x = 2;
    std::map<int, std::vector<StratumDescriptor>> rows;

    int max_codimension() const { return rows.empty() ? -1 : rows.rbegin()->first; }
    bool all_empty() const;
    int count_at(int p) const;
};

/// Degree range bound stored as a quarter-integer so values like
/// (j+n)/4 - 1/2 stay exact. Degree k is in range iff 4k <= bound_times_four.
struct StabilityRange {
    long long bound_times_four = 0;
    std::string description;

    bool contains(long long degree) const { return 4 * degree <= bound_times_four; }
    /// Largest in-range degree, -1 when even degree 0 is out of range.
    long long max_degree() const {
        if (bound_times_four < 0) return -1;
        return bound_times_four / 4;
    }
};

/// All partitions mu of n with mu not a subpartition of lambda, canonical order.
std::vector<Partition> allowed_patterns(const Partition& lambda);

/// Groups allowed_patterns(lambda) by codimension p = dim_x * (n - parts(mu)).
/// Throws DimensionTooSmall for dim_x < 2.
StratificationTable strata_by_codimension(const Partition& lambda, int dim_x);

/// floor((n+j) * dim_x / 2): strata counts of 1^j lambda and 1^{j+1} lambda
/// agree in all codimensions up to this bound.
long long strata_agreement_bound(int n, int j, int dim_x);

/// lambda' -> 1 lambda'; on multiplicity vectors this adds e_1.
Partition stabilize_stratum(const Partition& pattern);

/// Compactly supported Euler characteristic of Conf_v(X) given chi_c(X):
/// prod_{i=0}^{|v|-1}(chi_x - i) / prod_j v(j)!. Throws NonIntegralResult if
/// the division fails (it cannot for genuine inputs; guarded anyway).
long long chi_c_coloured_conf(const ColourVector& v, long long chi_x);

/// Sum of chi_c_coloured_conf over all strata of the lambda complement.
long long chi_c_wcomp(const Partition& lambda, long long chi_x, int dim_x);

/// Theorem bound * <= v(i)/2 for adding a point of colour i.
StabilityRange coloured_stability_range(const ColourVector& v, int colour_i);

/// Theorem bound * <= (j+n)/4 - 1/2 for the symmetric complement family.
StabilityRange symcomp_stability_range(int n, int j);

/// floor((e1_bound - 1)/2): the E^infinity agreement bound implied by an E^1
/// agreement bound of e1_bound.
long long ss_transfer_range(long long e1_bound);

} // namespace symstrat
