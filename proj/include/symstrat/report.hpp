#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symstrat/cache.hpp"
#include "symstrat/fox_neuwirth.hpp"
#include "symstrat/homology.hpp"
#include "symstrat/spectral.hpp"
#include "symstrat/strata.hpp"

namespace symstrat {

using ordered_json = nlohmann::ordered_json;

struct RunOptions {
    ResultCache cache;
    unsigned jobs = 2;
    int size_limit = 8;
};

/// Shared complex store so suites do not rebuild the same model twice in one
/// process. Concurrent requests for one spec share a single build; disk-level
/// SNF reuse is handled by the cache.
class ComplexStore {
public:
    std::shared_ptr<const BuiltComplex> get(const FNSpec& spec, int size_limit);
    static ComplexStore& global();

private:
    std::mutex mutex_;
    std::map<std::string, std::shared_future<std::shared_ptr<const BuiltComplex>>> store_;
};

struct ComparisonRow {
    int degree = 0;
    std::string lhs;
    std::string rhs;
    bool in_range = false;
    bool agree = false;
};

struct VerificationInstance {
    std::string params;
    std::vector<ComparisonRow> rows;
    bool monotone = true;
    bool pass = false;
    ordered_json extra; // deterministic instance-specific detail
};

struct VerificationReport {
    std::string claim;
    std::string statement;
    std::vector<VerificationInstance> instances;
    bool pass = false;

    ordered_json to_json() const;
    std::string to_csv() const;
    std::string to_markdown() const;
};

/// Adding a point of one colour: integral homology groups agree in degrees
/// k <= v(i)/2, compared through the compact-supports degree shift; Betti
/// monotonicity is reported per instance and failing it fails the suite.
VerificationReport verify_coloured_stability(int max_total, const RunOptions& opts);

/// Adding a multiplicity-one point to the symmetric complement family:
/// rational Betti numbers agree in degrees k <= (j+n)/4 - 1/2 for j = 0..j_max.
VerificationReport verify_symcomp_stability(const Partition& lambda, int j_max,
                                            const RunOptions& opts);

/// Codimension-p stratum counts of the 1^j lambda family agree up to
/// floor((n+j) dim/2) and prepending a one is a bijection on those rows.
VerificationReport verify_strata(int n_max, int j_max, const std::vector<int>& dims,
                                 const RunOptions& opts);

/// Pipeline vs the independent ground truths: Orlik-Solomon Betti vectors,
/// deformation-retraction table, braid abelianization.
VerificationReport verify_oracles(const RunOptions& opts);

// command payloads
ordered_json groups_to_json(const GradedGroups& groups);
ordered_json partitions_command(int n);
ordered_json strata_command(const Partition& lambda, int dim_x);
ordered_json chi_command(const Partition& lambda, long long chi_x, int dim_x);
ordered_json homology_command(const FNSpec& spec, CoeffSystem coeff, bool dual,
                              const RunOptions& opts);
ordered_json spectral_command(const Partition& lambda, CoeffSystem field, const RunOptions& opts);

std::string table_json_to_csv(const ordered_json& j);
std::string table_json_to_markdown(const ordered_json& j);

/// chi_c of the model with chi_c(X) plugged in: the coloured formula, or its
/// sum over the allowed patterns of a symmetric family.
long long chi_c_spec_oracle(const FNSpec& spec, long long chi_x = 1);

/// Structural check behind the colour/multiplicity identification: the
/// single-stratum complex of lambda and the coloured complex of its
/// multiplicity vector must agree cell-for-cell with equal boundaries.
bool single_stratum_matches_coloured(const Partition& lambda, int size_limit = 8,
                                     std::string* why = nullptr);

} // namespace symstrat
