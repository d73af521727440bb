#include "symstrat/report.hpp"

#include <algorithm>
#include <sstream>

#include "symstrat/oracles.hpp"
#include "symstrat/parallel.hpp"

namespace symstrat {

ComplexStore& ComplexStore::global() {
    static ComplexStore store;
    return store;
}

std::shared_ptr<const BuiltComplex> ComplexStore::get(const FNSpec& spec, int size_limit) {
    std::string key = spec.serialize() + ";limit=" + std::to_string(size_limit);
    std::promise<std::shared_ptr<const BuiltComplex>> promise;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = store_.find(key);
        if (it != store_.end()) return it->second.get();
        store_.emplace(key, promise.get_future().share());
    }
    try {
        auto built = std::make_shared<const BuiltComplex>(build_complex(spec, size_limit));
        promise.set_value(built);
        return built;
    } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard<std::mutex> lock(mutex_);
        store_.erase(key);
        throw;
    }
}

ordered_json VerificationReport::to_json() const {
    ordered_json j;
    j["claim"] = claim;
    j["statement"] = statement;
    j["verdict"] = pass ? "pass" : "fail";
    ordered_json insts = ordered_json::array();
    for (const auto& inst : instances) {
        ordered_json ji;
        ji["params"] = inst.params;
        ji["verdict"] = inst.pass ? "pass" : "fail";
        ji["monotone"] = inst.monotone;
        ordered_json rows = ordered_json::array();
        for (const auto& row : inst.rows) {
            ordered_json jr;
            jr["degree"] = row.degree;
            jr["lhs"] = row.lhs;
            jr["rhs"] = row.rhs;
            jr["in_range"] = row.in_range;
            jr["agree"] = row.agree;
            rows.push_back(std::move(jr));
        }
        ji["rows"] = std::move(rows);
        if (!inst.extra.is_null()) ji["extra"] = inst.extra;
        insts.push_back(std::move(ji));
    }
    j["instances"] = std::move(insts);
    return j;
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os << "claim,params,degree,lhs,rhs,in_range,agree,instance_verdict\n";
    for (const auto& inst : instances)
        for (const auto& row : inst.rows)
            os << claim << ",\"" << inst.params << "\"," << row.degree << "," << row.lhs << ","
               << row.rhs << "," << (row.in_range ? 1 : 0) << "," << (row.agree ? 1 : 0) << ","
               << (inst.pass ? "pass" : "fail") << "\n";
    return os.str();
}

std::string VerificationReport::to_markdown() const {
    std::ostringstream os;
    os << "## " << claim << "\n\n" << statement << "\n\n";
    os << "Overall verdict: **" << (pass ? "pass" : "fail") << "**\n\n";
    for (const auto& inst : instances) {
        os << "### " << inst.params << " — " << (inst.pass ? "pass" : "fail") << "\n\n";
        os << "| degree | lhs | rhs | in range | agree |\n|---|---|---|---|---|\n";
        for (const auto& row : inst.rows)
            os << "| " << row.degree << " | " << row.lhs << " | " << row.rhs << " | "
               << (row.in_range ? "yes" : "no") << " | " << (row.agree ? "yes" : "no") << " |\n";
        os << "\n";
    }
    return os.str();
}

namespace {

std::string group_str(const HomologyGroup& g) { return g.to_string(); }

// Canonical colour vectors: weakly decreasing positive tuples, <= 3 colours.
std::vector<std::vector<int>> canonical_colour_vectors(int max_sum) {
    std::vector<std::vector<int>> out;
    out.push_back({}); // no points at all
    for (int s = 1; s <= max_sum; ++s)
        for (const Partition& p : enumerate_partitions(s))
            if (p.parts_count() <= 3) out.push_back(p.parts());
    return out;
}

struct ColouredInstanceSpec {
    std::vector<int> v;
    int colour;
};

} // namespace

VerificationReport verify_coloured_stability(int max_total, const RunOptions& opts) {
    VerificationReport report;
    report.claim = "coloured-stability";
    report.statement = "adding a point of colour i preserves integral homology in degrees <= v(i)/2";

    std::vector<ColouredInstanceSpec> specs;
    for (const auto& v : canonical_colour_vectors(max_total - 1)) {
        std::vector<int> colours;
        for (size_t i = 0; i < v.size(); ++i)
            if (i == 0 || v[i] != v[i - 1]) colours.push_back(static_cast<int>(i) + 1);
        if (static_cast<int>(v.size()) < 3) colours.push_back(static_cast<int>(v.size()) + 1);
        for (int c : colours) specs.push_back({v, c});
    }

    report.instances.resize(specs.size());
    parallel_for(specs.size(), opts.jobs, [&](std::size_t idx) {
        const auto& [vraw, colour] = specs[idx];
        ColourVector v(vraw);
        ColourVector w = v.plus_colour(colour);
        auto src = ComplexStore::global().get(FNSpec::conf_space(v), opts.size_limit);
        auto tgt = ComplexStore::global().get(FNSpec::conf_space(w), opts.size_limit);
        GradedGroups hc_src = compactly_supported_cohomology(src->complex, CoeffSystem::integers(),
                                                             &opts.cache, 1);
        GradedGroups hc_tgt = compactly_supported_cohomology(tgt->complex, CoeffSystem::integers(),
                                                             &opts.cache, 1);
        int n_src = v.norm();
        // bound uses the source count v(i); a freshly added colour has v(i) = 0
        StabilityRange range{2LL * v.at(colour), ""};

        VerificationInstance inst;
        inst.params = "v=(" + v.to_csv() + "), i=" + std::to_string(colour);
        inst.pass = true;
        inst.monotone = true;
        for (int k = 0; k <= n_src + 2; ++k) {
            HomologyGroup lhs = group_at(hc_src, 2 * n_src - k);
            HomologyGroup rhs = group_at(hc_tgt, 2 * n_src + 2 - k);
            ComparisonRow row;
            row.degree = k;
            row.lhs = group_str(lhs);
            row.rhs = group_str(rhs);
            row.in_range = range.contains(k);
            row.agree = lhs == rhs;
            if (row.in_range && !row.agree) inst.pass = false;
            if (rhs.betti < lhs.betti) inst.monotone = false;
            if (row.in_range || !lhs.trivial() || !rhs.trivial()) inst.rows.push_back(std::move(row));
        }
        if (!inst.monotone) inst.pass = false;
        inst.extra["bound_times_four"] = range.bound_times_four;
        report.instances[idx] = std::move(inst);
    });

    report.pass = true;
    for (const auto& inst : report.instances) report.pass = report.pass && inst.pass;
    return report;
}

VerificationReport verify_symcomp_stability(const Partition& lambda, int j_max,
                                            const RunOptions& opts) {
    VerificationReport report;
    report.claim = "symcomp-stability";
    report.statement =
        "adding a multiplicity-one point preserves rational Betti numbers of the symmetric "
        "complement in degrees <= (j+n)/4 - 1/2";
    int n = lambda.n();
    if (n + j_max + 1 > opts.size_limit)
        throw Error(errc::size_limit_exceeded,
                    "symcomp verification needs " + std::to_string(n + j_max + 1) +
                        " points, limit is " + std::to_string(opts.size_limit));

    report.instances.resize(static_cast<size_t>(j_max + 1));
    parallel_for(static_cast<size_t>(j_max + 1), opts.jobs, [&](std::size_t idx) {
        int j = static_cast<int>(idx);
        Partition src_pattern = prepend_ones(lambda, j);
        Partition tgt_pattern = prepend_ones(lambda, j + 1);
        auto src = ComplexStore::global().get(FNSpec::wcomp(src_pattern), opts.size_limit);
        auto tgt = ComplexStore::global().get(FNSpec::wcomp(tgt_pattern), opts.size_limit);
        GradedGroups h_src = homology(src->complex, CoeffSystem::rationals(), &opts.cache, 1);
        GradedGroups h_tgt = homology(tgt->complex, CoeffSystem::rationals(), &opts.cache, 1);
        int nu = n + j;
        StabilityRange range = symcomp_stability_range(n, j);

        VerificationInstance inst;
        inst.params = "lambda=" + lambda.to_string() + ", j=" + std::to_string(j);
        inst.pass = true;
        for (int k = 0; k <= 2 * nu; ++k) {
            HomologyGroup lhs = group_at(h_src, 2 * nu - k);       // b_k of the source
            HomologyGroup rhs = group_at(h_tgt, 2 * (nu + 1) - k); // b_k of the target
            ComparisonRow row;
            row.degree = k;
            row.lhs = group_str(lhs);
            row.rhs = group_str(rhs);
            row.in_range = range.contains(k);
            row.agree = lhs.betti == rhs.betti;
            if (row.in_range && !row.agree) inst.pass = false;
            if (row.in_range || !lhs.trivial() || !rhs.trivial()) inst.rows.push_back(std::move(row));
        }
        inst.extra["bound_times_four"] = range.bound_times_four;

        if (lambda == Partition({2})) {
            // internal cross-check: this family is the unordered configuration family
            auto conf = ComplexStore::global().get(FNSpec::conf_space(ColourVector({nu})),
                                                   opts.size_limit);
            GradedGroups h_conf = homology(conf->complex, CoeffSystem::rationals(), &opts.cache, 1);
            bool match = true;
            for (int m = 0; m <= 2 * nu; ++m)
                if (group_at(h_src, m).betti != group_at(h_conf, m).betti) match = false;
            inst.extra["unordered_cross_check"] = match;
            if (!match) inst.pass = false;
        }
        report.instances[idx] = std::move(inst);
    });

    report.pass = true;
    for (const auto& inst : report.instances) report.pass = report.pass && inst.pass;
    return report;
}

VerificationReport verify_strata(int n_max, int j_max, const std::vector<int>& dims,
                                 const RunOptions& opts) {
    (void)opts;
    VerificationReport report;
    report.claim = "strata-counts";
    report.statement =
        "1^j lambda and 1^{j+1} lambda have the same number of codimension-p strata for p <= "
        "(n+j) dim/2, via the prepend-one bijection";
    if (n_max + j_max > 12)
        throw Error(errc::bad_input, "verify_strata: n_max + j_max must stay <= 12");

    report.pass = true;
    for (int n = 1; n <= n_max; ++n)
        for (const Partition& lambda : enumerate_partitions(n))
            for (int j = 0; j <= j_max; ++j)
                for (int d : dims) {
                    StratificationTable a = strata_by_codimension(prepend_ones(lambda, j), d);
                    StratificationTable b = strata_by_codimension(prepend_ones(lambda, j + 1), d);
                    long long bound = strata_agreement_bound(n, j, d);

                    VerificationInstance inst;
                    inst.params = "lambda=" + lambda.to_string() + ", j=" + std::to_string(j) +
                                  ", dim=" + std::to_string(d);
                    inst.pass = true;
                    int p_top = std::max(a.max_codimension(), b.max_codimension());
                    for (int p = 0; p <= p_top; ++p) {
                        int ca = a.count_at(p);
                        int cb = b.count_at(p);
                        ComparisonRow row;
                        row.degree = p;
                        row.lhs = std::to_string(ca);
                        row.rhs = std::to_string(cb);
                        row.in_range = p <= bound;

                        // prepend-one must be injective into row p always, and
                        // onto row p within the agreement range
                        bool inj_ok = true;
                        int mapped = 0;
                        if (auto it = a.rows.find(p); it != a.rows.end()) {
                            std::vector<Partition> images;
                            for (const StratumDescriptor& s : it->second) {
                                Partition img = stabilize_stratum(s.pattern);
                                images.push_back(img);
                                bool found = false;
                                if (auto jt = b.rows.find(p); jt != b.rows.end())
                                    for (const StratumDescriptor& t : jt->second)
                                        if (t.pattern == img) found = true;
                                if (found) ++mapped;
                                else inj_ok = false; // image missing from target row
                            }
                            std::sort(images.begin(), images.end());
                            if (std::adjacent_find(images.begin(), images.end()) != images.end())
                                inj_ok = false;
                        }
                        bool bijective = inj_ok && mapped == ca && ca == cb;
                        row.agree = (ca == cb) && inj_ok && (!row.in_range || bijective);
                        if (!inj_ok) inst.pass = false;
                        if (row.in_range && !row.agree) inst.pass = false;
                        if (row.in_range || ca > 0 || cb > 0) inst.rows.push_back(std::move(row));
                    }
                    inst.extra["bound"] = bound;
                    report.pass = report.pass && inst.pass;
                    report.instances.push_back(std::move(inst));
                }
    return report;
}

VerificationReport verify_oracles(const RunOptions& opts) {
    VerificationReport report;
    report.claim = "oracles";
    report.statement = "pipeline output equals the independent ground truths";
    report.pass = true;

    // Orlik-Solomon Betti vectors of the ordered configuration spaces
    for (int n = 2; n <= 5; ++n) {
        ColourVector v(std::vector<int>(static_cast<size_t>(n), 1));
        auto built = ComplexStore::global().get(FNSpec::conf_space(v), opts.size_limit);
        GradedGroups hc = compactly_supported_cohomology(built->complex, CoeffSystem::integers(),
                                                         &opts.cache, opts.jobs);
        GradedGroups h = poincare_dual_degrees(2 * n, hc, DualityDirection::CompactSupportsToHomology);
        std::vector<BigInt> expected = ordered_config_betti(n);

        VerificationInstance inst;
        inst.params = "PConf_" + std::to_string(n) + " vs prod (1+it)";
        inst.pass = true;
        for (int k = 0; k < static_cast<int>(expected.size()) + 1; ++k) {
            HomologyGroup g = group_at(h, k);
            BigInt want = k < static_cast<int>(expected.size()) ? expected[static_cast<size_t>(k)] : BigInt(0);
            ComparisonRow row;
            row.degree = k;
            row.lhs = g.to_string();
            row.rhs = (HomologyGroup{want.convert_to<long long>(), {}}).to_string();
            row.in_range = true;
            row.agree = g.betti == want && g.torsion.empty();
            if (!row.agree) inst.pass = false;
            inst.rows.push_back(std::move(row));
        }
        report.pass = report.pass && inst.pass;
        report.instances.push_back(std::move(inst));
    }

    // deformation-retraction table and braid abelianization records
    for (const OracleRecord& rec : small_space_table()) {
        auto built = ComplexStore::global().get(FNSpec::conf_space(rec.colours), opts.size_limit);
        int ambient = 2 * rec.colours.norm();
        GradedGroups hc = compactly_supported_cohomology(built->complex, CoeffSystem::integers(),
                                                         &opts.cache, opts.jobs);
        GradedGroups h = poincare_dual_degrees(ambient, hc, DualityDirection::CompactSupportsToHomology);

        VerificationInstance inst;
        inst.params = rec.space;
        inst.extra["provenance"] = rec.provenance;
        inst.pass = true;
        if (rec.full) {
            for (int k = 0; k <= rec.colours.norm() + 1; ++k) {
                HomologyGroup got = group_at(h, k);
                HomologyGroup want = group_at(rec.expected, k);
                ComparisonRow row{k, got.to_string(), want.to_string(), true, got == want};
                if (!row.agree) inst.pass = false;
                inst.rows.push_back(std::move(row));
            }
        } else {
            for (const auto& [k, want] : rec.expected) {
                HomologyGroup got = group_at(h, k);
                ComparisonRow row{k, got.to_string(), want.to_string(), true, got == want};
                if (!row.agree) inst.pass = false;
                inst.rows.push_back(std::move(row));
            }
        }
        report.pass = report.pass && inst.pass;
        report.instances.push_back(std::move(inst));
    }
    return report;
}

ordered_json groups_to_json(const GradedGroups& groups) {
    ordered_json out = ordered_json::array();
    for (const auto& [k, g] : groups) {
        ordered_json jg;
        jg["degree"] = k;
        jg["betti"] = g.betti;
        ordered_json tors = ordered_json::array();
        for (const BigInt& t : g.torsion) tors.push_back(t.str());
        jg["torsion"] = std::move(tors);
        out.push_back(std::move(jg));
    }
    return out;
}

ordered_json partitions_command(int n) {
    ordered_json j;
    j["n"] = n;
    std::vector<Partition> parts = enumerate_partitions(n);
    j["count"] = parts.size();
    ordered_json arr = ordered_json::array();
    for (const Partition& p : parts) arr.push_back(p.parts());
    j["partitions"] = std::move(arr);

    ordered_json table;
    table["columns"] = {"partition", "parts", "multiplicity_vector"};
    ordered_json rows = ordered_json::array();
    for (const Partition& p : parts)
        rows.push_back({p.to_string(), p.parts_count(), multiplicity_vector(p).to_csv()});
    table["rows"] = std::move(rows);
    j["table"] = std::move(table);
    return j;
}

ordered_json strata_command(const Partition& lambda, int dim_x) {
    StratificationTable t = strata_by_codimension(lambda, dim_x);
    ordered_json j;
    j["lambda"] = lambda.parts();
    j["dim_x"] = dim_x;
    ordered_json rows = ordered_json::array();
    for (const auto& [p, strata] : t.rows) {
        ordered_json jr;
        jr["p"] = p;
        jr["count"] = strata.size();
        ordered_json ss = ordered_json::array();
        for (const StratumDescriptor& s : strata) {
            ordered_json js;
            js["pattern"] = s.pattern.parts();
            js["conf_colours"] = multiplicity_vector(s.pattern).counts();
            ss.push_back(std::move(js));
        }
        jr["strata"] = std::move(ss);
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);

    ordered_json table;
    table["columns"] = {"p", "count", "patterns"};
    ordered_json trows = ordered_json::array();
    for (const auto& [p, strata] : t.rows) {
        std::string pats;
        for (size_t i = 0; i < strata.size(); ++i) {
            if (i) pats += "; ";
            pats += strata[i].pattern.to_string();
        }
        trows.push_back({p, strata.size(), pats});
    }
    table["rows"] = std::move(trows);
    j["table"] = std::move(table);
    return j;
}

ordered_json chi_command(const Partition& lambda, long long chi_x, int dim_x) {
    StratificationTable t = strata_by_codimension(lambda, dim_x);
    ordered_json j;
    j["lambda"] = lambda.parts();
    j["chi_x"] = chi_x;
    j["dim_x"] = dim_x;
    ordered_json per = ordered_json::array();
    long long total = 0;
    for (const auto& [p, strata] : t.rows)
        for (const StratumDescriptor& s : strata) {
            long long chi = chi_c_coloured_conf(multiplicity_vector(s.pattern), chi_x);
            total += chi;
            ordered_json js;
            js["pattern"] = s.pattern.parts();
            js["codimension"] = p;
            js["chi_c"] = chi;
            per.push_back(std::move(js));
        }
    j["per_stratum"] = std::move(per);
    j["chi_c"] = total;

    ordered_json table;
    table["columns"] = {"pattern", "codimension", "chi_c"};
    ordered_json rows = ordered_json::array();
    for (const auto& js : j["per_stratum"])
        rows.push_back({Partition(js["pattern"].get<std::vector<int>>()).to_string(),
                        js["codimension"].get<int>(), js["chi_c"].get<long long>()});
    rows.push_back({"total", nullptr, total});
    table["rows"] = std::move(rows);
    j["table"] = std::move(table);
    return j;
}

ordered_json homology_command(const FNSpec& spec, CoeffSystem coeff, bool dual,
                              const RunOptions& opts) {
    if (dual && spec.mode() == FNMode::SymPattern && coeff.kind != CoeffSystem::Kind::Q)
        throw Error(errc::integral_duality_unavailable,
                    "symmetric complements satisfy rational Poincare duality only; use --coeff Q");
    auto built = ComplexStore::global().get(spec, opts.size_limit);
    ordered_json j;
    j["target"] = spec.describe();
    j["coefficients"] = coeff.tag();
    j["ambient_dim"] = spec.ambient_dim();
    ordered_json cell_counts = ordered_json::array();
    for (int d = 0; d <= built->complex.top_degree(); ++d)
        if (built->complex.dim(d) > 0) cell_counts.push_back({{"dim", d}, {"cells", built->complex.dim(d)}});
    j["cells"] = std::move(cell_counts);

    GradedGroups groups;
    if (dual) {
        GradedGroups hc = compactly_supported_cohomology(built->complex, coeff, &opts.cache, opts.jobs);
        groups = poincare_dual_degrees(spec.ambient_dim(), hc,
                                       DualityDirection::CompactSupportsToHomology);
        j["grading"] = "homology";
    } else {
        groups = homology(built->complex, coeff, &opts.cache, opts.jobs);
        j["grading"] = "borel_moore";
    }
    j["groups"] = groups_to_json(groups);

    ordered_json table;
    table["columns"] = {"degree", "group"};
    ordered_json rows = ordered_json::array();
    for (const auto& [k, g] : groups) rows.push_back({k, g.to_string()});
    table["rows"] = std::move(rows);
    j["table"] = std::move(table);
    return j;
}

ordered_json spectral_command(const Partition& lambda, CoeffSystem field, const RunOptions& opts) {
    auto built = ComplexStore::global().get(FNSpec::wcomp(lambda), opts.size_limit);
    int dim_w = built->ambient_dim();
    SSResult ss = spectral_sequence(built->complex, field);

    ordered_json j;
    j["lambda"] = lambda.parts();
    j["field"] = field.tag();
    j["ambient_dim"] = dim_w;
    ordered_json pages = ordered_json::array();
    for (const SSPage& page : ss.pages) {
        ordered_json jp;
        jp["r"] = page.r;
        ordered_json entries = ordered_json::array();
        for (const auto& [key, dim] : page.dims) {
            auto [p, m] = key;
            entries.push_back({{"p", p}, {"q", dim_w - p - m}, {"degree", m}, {"dim", dim}});
        }
        jp["entries"] = std::move(entries);
        pages.push_back(std::move(jp));
    }
    j["pages"] = std::move(pages);

    ordered_json diffs = ordered_json::array();
    for (const SSDifferential& d : ss.diffs) {
        ordered_json jd;
        jd["r"] = d.r;
        jd["p"] = d.level;
        jd["q"] = dim_w - d.level - d.degree;
        jd["degree"] = d.degree;
        jd["rank"] = d.rank;
        jd["matrix"] = d.matrix;
        diffs.push_back(std::move(jd));
    }
    j["differentials"] = std::move(diffs);

    // E^1 against the direct sum of stratum homologies
    bool e1_ok = true;
    ordered_json e1 = ordered_json::array();
    {
        StratificationTable table = strata_by_codimension(lambda, 2);
        std::map<std::pair<int, int>, int> strata_dims;
        for (const auto& [p, strata] : table.rows)
            for (const StratumDescriptor& s : strata) {
                auto stratum = ComplexStore::global().get(FNSpec::single_stratum(s.pattern),
                                                          opts.size_limit);
                GradedGroups h = homology(stratum->complex, field, &opts.cache, 1);
                for (const auto& [m, g] : h) strata_dims[{p, m}] += static_cast<int>(g.betti);
            }
        const SSPage& page1 = ss.pages.size() > 1 ? ss.pages[1] : ss.pages[0];
        std::map<std::pair<int, int>, std::pair<int, int>> merged; // (p,m) -> (e1,strata)
        for (const auto& [key, dim] : page1.dims) merged[key].first = dim;
        for (const auto& [key, dim] : strata_dims) merged[key].second = dim;
        for (const auto& [key, dims] : merged) {
            auto [p, m] = key;
            bool agree = dims.first == dims.second;
            e1_ok = e1_ok && agree;
            e1.push_back({{"p", p},
                          {"q", dim_w - p - m},
                          {"degree", m},
                          {"e1_dim", dims.first},
                          {"strata_dim", dims.second},
                          {"agree", agree}});
        }
    }
    j["e1_vs_strata"] = std::move(e1);

    ordered_json totals = ordered_json::array();
    std::map<int, int> einf = ss.infinity().totals_by_degree();
    std::map<int, std::pair<int, int>> merged_totals;
    for (const auto& [m, t] : einf) merged_totals[m].first = t;
    for (const auto& [m, h] : ss.homology_dims) merged_totals[m].second = h;
    for (const auto& [m, th] : merged_totals)
        totals.push_back({{"degree", m},
                          {"hc_degree", m},
                          {"e_infinity_total", th.first},
                          {"h_rank", th.second},
                          {"agree", th.first == th.second}});
    j["e_infinity_totals"] = std::move(totals);
    j["converged"] = ss.converged;
    j["pass"] = ss.converged && e1_ok;

    ordered_json table;
    table["columns"] = {"r", "p", "q", "dim"};
    ordered_json rows = ordered_json::array();
    for (const SSPage& page : ss.pages)
        for (const auto& [key, dim] : page.dims)
            rows.push_back({page.r, key.first, dim_w - key.first - key.second, dim});
    table["rows"] = std::move(rows);
    j["table"] = std::move(table);
    return j;
}

std::string table_json_to_csv(const ordered_json& j) {
    if (!j.contains("table")) return j.dump(2) + "\n";
    const ordered_json& t = j["table"];
    std::ostringstream os;
    const auto& cols = t["columns"];
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].get<std::string>();
    os << "\n";
    for (const auto& row : t["rows"]) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            if (row[i].is_string()) os << row[i].get<std::string>();
            else if (row[i].is_null()) os << "";
            else os << row[i].dump();
        }
        os << "\n";
    }
    return os.str();
}

std::string table_json_to_markdown(const ordered_json& j) {
    if (!j.contains("table")) return "```\n" + j.dump(2) + "\n```\n";
    const ordered_json& t = j["table"];
    std::ostringstream os;
    const auto& cols = t["columns"];
    os << "|";
    for (const auto& c : cols) os << " " << c.get<std::string>() << " |";
    os << "\n|";
    for (size_t i = 0; i < cols.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& row : t["rows"]) {
        os << "|";
        for (const auto& cell : row) {
            if (cell.is_string()) os << " " << cell.get<std::string>() << " |";
            else if (cell.is_null()) os << " |";
            else os << " " << cell.dump() << " |";
        }
        os << "\n";
    }
    return os.str();
}

long long chi_c_spec_oracle(const FNSpec& spec, long long chi_x) {
    if (spec.mode() == FNMode::Coloured) return chi_c_coloured_conf(spec.colours(), chi_x);
    long long total = 0;
    for (const Partition& mu : spec.allowed())
        total += chi_c_coloured_conf(multiplicity_vector(mu), chi_x);
    return total;
}

bool single_stratum_matches_coloured(const Partition& lambda, int size_limit, std::string* why) {
    BuiltComplex a = build_complex(FNSpec::single_stratum(lambda), size_limit);
    BuiltComplex b = build_complex(FNSpec::conf_space(multiplicity_vector(lambda)), size_limit);
    int top = std::max(a.complex.top_degree(), b.complex.top_degree());
    for (int d = 0; d <= top; ++d) {
        const auto* ca = d <= a.complex.top_degree() ? &a.cells[static_cast<size_t>(d)] : nullptr;
        const auto* cb = d <= b.complex.top_degree() ? &b.cells[static_cast<size_t>(d)] : nullptr;
        size_t na = ca ? ca->size() : 0;
        size_t nb = cb ? cb->size() : 0;
        if (na != nb || (na && !(*ca == *cb))) {
            if (why) *why = "cell mismatch in dimension " + std::to_string(d);
            return false;
        }
        if (d >= 1 && na) {
            const SparseMat& ma = a.complex.d[static_cast<size_t>(d)];
            const SparseMat& mb = b.complex.d[static_cast<size_t>(d)];
            if (!(ma.col_entries == mb.col_entries)) {
                if (why) *why = "boundary mismatch in dimension " + std::to_string(d);
                return false;
            }
        }
    }
    return true;
}

} // namespace symstrat
