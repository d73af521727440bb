#include "symstrat/strata.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace symstrat {

using BigInt = boost::multiprecision::cpp_int;

bool StratificationTable::all_empty() const {
    for (const auto& [p, row] : rows)
        if (!row.empty()) return false;
    return true;
}

int StratificationTable::count_at(int p) const {
    auto it = rows.find(p);
    return it == rows.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<Partition> allowed_patterns(const Partition& lambda) {
    std::vector<Partition> out;
    for (const Partition& mu : enumerate_partitions(lambda.n())) {
        if (!is_subpartition(mu, lambda)) out.push_back(mu);
    }
    return out;
}

StratificationTable strata_by_codimension(const Partition& lambda, int dim_x) {
    if (dim_x < 2)
        throw Error(errc::dimension_too_small, "strata_by_codimension: dim X must be >= 2");
    StratificationTable table;
    table.lambda = lambda;
    table.dim_x = dim_x;
    int n = lambda.n();
    for (int p = 0; p <= dim_x * (n - 1); ++p) table.rows[p] = {};
    for (const Partition& mu : allowed_patterns(lambda)) {
        int p = dim_x * (n - mu.parts_count());
        table.rows[p].push_back(StratumDescriptor{mu, p, dim_x});
    }
    return table;
}

long long strata_agreement_bound(int n, int j, int dim_x) {
    if (n < 1 || j < 0) throw Error(errc::bad_input, "strata_agreement_bound: need n >= 1, j >= 0");
    return static_cast<long long>(n + j) * dim_x / 2;
}

Partition stabilize_stratum(const Partition& pattern) { return prepend_ones(pattern, 1); }

long long chi_c_coloured_conf(const ColourVector& v, long long chi_x) {
    BigInt num = 1;
    for (int i = 0; i < v.norm(); ++i) num *= BigInt(chi_x) - i;
    BigInt den = 1;
    for (int c : v.counts())
        for (int k = 2; k <= c; ++k) den *= k;
    if (num % den != 0)
        throw Error(errc::non_integral_result,
                    "chi_c_coloured_conf: non-integral value for v=" + v.to_csv());
    BigInt q = num / den;
    return q.convert_to<long long>();
}

long long chi_c_wcomp(const Partition& lambda, long long chi_x, int dim_x) {
    long long total = 0;
    for (const auto& [p, row] : strata_by_codimension(lambda, dim_x).rows)
        for (const StratumDescriptor& s : row)
            total += chi_c_coloured_conf(multiplicity_vector(s.pattern), chi_x);
    return total;
}

StabilityRange coloured_stability_range(const ColourVector& v, int colour_i) {
    if (colour_i < 1 || colour_i > v.size())
        throw Error(errc::index_out_of_bounds, "coloured_stability_range: colour " +
                                                   std::to_string(colour_i) + " out of range");
    StabilityRange r;
    r.bound_times_four = 2LL * v.at(colour_i);
    r.description = "* <= v(i)/2 with v(i) = " + std::to_string(v.at(colour_i));
    return r;
}

StabilityRange symcomp_stability_range(int n, int j) {
    if (n < 1 || j < 0) throw Error(errc::bad_input, "symcomp_stability_range: need n >= 1, j >= 0");
    StabilityRange r;
    r.bound_times_four = static_cast<long long>(j + n) - 2;
    r.description = "* <= (j+n)/4 - 1/2 with j = " + std::to_string(j) + ", n = " + std::to_string(n);
    return r;
}

long long ss_transfer_range(long long e1_bound) {
    if (e1_bound < -1) throw Error(errc::bad_input, "ss_transfer_range: bound must be >= -1");
    // floor((e1_bound - 1) / 2), exact for the negative edge case too
    long long x = e1_bound - 1;
    return x >= 0 ? x / 2 : -((-x + 1) / 2);
}

} // namespace symstrat
