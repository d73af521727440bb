#pragma once

#include <string>
#include <vector>

#include "symstrat/homology.hpp"
#include "symstrat/partitions.hpp"

namespace symstrat {

/// Betti numbers of the ordered planar configuration space on n points:
/// coefficients of prod_{i=1}^{n-1} (1 + i t), by polynomial expansion.
std::vector<BigInt> ordered_config_betti(int n);

/// Abelianization of the braid group on n strands, via the Smith normal form
/// of the full relation matrix (commutation rows included as zero rows).
HomologyGroup braid_abelianization(int n);

/// Ground-truth homology fixture; every record names its independent method.
struct OracleRecord {
    std::string space;      // "Conf_1", "PConf_2", "H1 Conf_5", ...
    ColourVector colours;   // the model to build and dualize
    GradedGroups expected;  // expected ordinary homology, full or single-degree
    bool full = true;       // false: only the listed degrees are asserted
    std::string provenance;
};

std::vector<OracleRecord> small_space_table();

} // namespace symstrat
