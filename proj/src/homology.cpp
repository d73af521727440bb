#include "symstrat/homology.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "symstrat/fields.hpp"
#include "symstrat/parallel.hpp"

namespace symstrat {

CoeffSystem CoeffSystem::parse(const std::string& s, long long prime) {
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s == "Zp") {
        if (prime < 2) throw Error(errc::bad_input, "Zp coefficients need a prime >= 2");
        return mod(prime);
    }
    throw Error(errc::bad_input, "unknown coefficient system '" + s + "' (expected Z, Q or Zp)");
}

std::string CoeffSystem::tag() const {
    switch (kind) {
    case Kind::Z: return "Z";
    case Kind::Q: return "Q";
    case Kind::Zp: return "Z/" + std::to_string(p);
    }
    return "?";
}

std::string HomologyGroup::to_string() const {
    if (trivial()) return "0";
    std::string out;
    if (betti == 1) out = "Z";
    else if (betti > 1) out = "Z^" + std::to_string(betti);
    for (const BigInt& t : torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + t.str();
    }
    return out;
}

HomologyGroup group_at(const GradedGroups& groups, int degree) {
    auto it = groups.find(degree);
    return it == groups.end() ? HomologyGroup{} : it->second;
}

std::string graded_to_string(const GradedGroups& groups) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, g] : groups) {
        if (!first) out += ", ";
        out += std::to_string(k) + ": " + g.to_string();
        first = false;
    }
    return out + "}";
}

long BoundaryData::rank_at(int k) const {
    if (k < 0 || k >= static_cast<int>(rank.size())) return 0;
    return rank[static_cast<size_t>(k)];
}

long BoundaryData::rank_mod_at(int k, long long p) const {
    const std::vector<BigInt>* div = divisors_at(k);
    if (!div) return 0;
    long r = 0;
    for (const BigInt& d : *div)
        if (d % p != 0) ++r;
    return r;
}

const std::vector<BigInt>* BoundaryData::divisors_at(int k) const {
    if (k < 0 || k >= static_cast<int>(divisors.size())) return nullptr;
    return &divisors[static_cast<size_t>(k)];
}

BoundaryData boundary_data(const ChainComplex& c, const ResultCache* cache, unsigned jobs) {
    std::string key;
    if (cache && cache->enabled()) {
        key = sha256_hex(c.serialize() + ";boundary-data/v1");
        if (auto hit = cache->get(key)) {
            try {
                BoundaryData data;
                for (const auto& r : (*hit).at("rank")) data.rank.push_back(r.get<long>());
                for (const auto& divs : (*hit).at("div")) {
                    std::vector<BigInt> row;
                    for (const auto& d : divs) row.emplace_back(d.get<std::string>());
                    data.divisors.push_back(std::move(row));
                }
                if (data.rank.size() == c.dims.size() + 1) return data;
            } catch (const std::exception&) {
                // fall through to recompute on malformed entries
            }
        }
    }

    int top = c.top_degree();
    BoundaryData data;
    data.rank.assign(static_cast<size_t>(top + 2), 0);
    data.divisors.assign(static_cast<size_t>(top + 2), {});
    parallel_for(static_cast<size_t>(top), jobs, [&](std::size_t idx) {
        int k = static_cast<int>(idx) + 1;
        SmithResult snf = smith_normal_form(c.boundary(k));
        data.rank[static_cast<size_t>(k)] = snf.rank();
        data.divisors[static_cast<size_t>(k)] = std::move(snf.divisors);
    });

    if (cache && cache->enabled()) {
        nlohmann::json j;
        j["v"] = 1;
        j["rank"] = data.rank;
        nlohmann::json divs = nlohmann::json::array();
        for (const auto& row : data.divisors) {
            nlohmann::json jr = nlohmann::json::array();
            for (const BigInt& d : row) jr.push_back(d.str());
            divs.push_back(std::move(jr));
        }
        j["div"] = std::move(divs);
        cache->put(key, j);
    }
    return data;
}

namespace {

HomologyGroup make_group(long long betti, const std::vector<BigInt>* torsion_divisors) {
    HomologyGroup g;
    g.betti = betti;
    if (torsion_divisors)
        for (const BigInt& d : *torsion_divisors)
            if (d > 1) g.torsion.push_back(d);
    return g;
}

} // namespace

GradedGroups homology(const ChainComplex& c, CoeffSystem coeff, const ResultCache* cache,
                      unsigned jobs) {
    BoundaryData data = boundary_data(c, cache, jobs);
    GradedGroups out;
    for (int k = 0; k <= c.top_degree(); ++k) {
        HomologyGroup g;
        switch (coeff.kind) {
        case CoeffSystem::Kind::Z:
            g = make_group(c.dim(k) - data.rank_at(k) - data.rank_at(k + 1),
                           data.divisors_at(k + 1));
            break;
        case CoeffSystem::Kind::Q:
            g = make_group(c.dim(k) - data.rank_at(k) - data.rank_at(k + 1), nullptr);
            break;
        case CoeffSystem::Kind::Zp:
            g = make_group(c.dim(k) - data.rank_mod_at(k, coeff.p) - data.rank_mod_at(k + 1, coeff.p),
                           nullptr);
            break;
        }
        if (!g.trivial()) out[k] = g;
    }
    return out;
}

GradedGroups compactly_supported_cohomology(const ChainComplex& c, CoeffSystem coeff,
                                            const ResultCache* cache, unsigned jobs) {
    BoundaryData data = boundary_data(c, cache, jobs);
    GradedGroups out;
    for (int k = 0; k <= c.top_degree(); ++k) {
        HomologyGroup g;
        switch (coeff.kind) {
        case CoeffSystem::Kind::Z:
            // H^k of the dual complex: free rank as for homology, torsion from d_k.
            g = make_group(c.dim(k) - data.rank_at(k) - data.rank_at(k + 1), data.divisors_at(k));
            break;
        case CoeffSystem::Kind::Q:
            g = make_group(c.dim(k) - data.rank_at(k) - data.rank_at(k + 1), nullptr);
            break;
        case CoeffSystem::Kind::Zp:
            g = make_group(c.dim(k) - data.rank_mod_at(k, coeff.p) - data.rank_mod_at(k + 1, coeff.p),
                           nullptr);
            break;
        }
        if (!g.trivial()) out[k] = g;
    }
    return out;
}

GradedGroups poincare_dual_degrees(int ambient_dim, const GradedGroups& groups,
                                   DualityDirection dir) {
    (void)dir; // the relabel is an involution; the direction documents intent
    if (ambient_dim < 0) throw Error(errc::bad_input, "poincare_dual_degrees: negative ambient dim");
    GradedGroups out;
    for (const auto& [k, g] : groups) {
        if (k < 0 || k > ambient_dim)
            throw Error(errc::bad_input, "poincare_dual_degrees: degree " + std::to_string(k) +
                                             " outside [0, " + std::to_string(ambient_dim) + "]");
        out[ambient_dim - k] = g;
    }
    return out;
}

bool InducedBlock::is_identity_shape() const {
    if (matrix.rows != matrix.cols) return false;
    for (int i = 0; i < matrix.rows; ++i)
        for (int j = 0; j < matrix.cols; ++j)
            if (matrix.at(i, j) != (i == j ? 1 : 0)) return false;
    return row_moduli == col_moduli;
}

bool InducedBlock::is_zero() const {
    for (const auto& row : matrix.a)
        for (const BigInt& v : row)
            if (v != 0) return false;
    return true;
}

bool InducedBlock::is_isomorphism() const {
    std::vector<BigInt> rm = row_moduli, cm = col_moduli;
    std::sort(rm.begin(), rm.end());
    std::sort(cm.begin(), cm.end());
    if (rm != cm) return false;
    // free-part square block must be unimodular
    std::vector<int> fr, fc;
    for (size_t i = 0; i < row_moduli.size(); ++i)
        if (row_moduli[i] == 0) fr.push_back(static_cast<int>(i));
    for (size_t j = 0; j < col_moduli.size(); ++j)
        if (col_moduli[j] == 0) fc.push_back(static_cast<int>(j));
    if (fr.size() != fc.size()) return false;
    DenseMat free_block(static_cast<int>(fr.size()), static_cast<int>(fc.size()));
    for (size_t i = 0; i < fr.size(); ++i)
        for (size_t j = 0; j < fc.size(); ++j) free_block.at(static_cast<int>(i), static_cast<int>(j)) = matrix.at(fr[i], fc[j]);
    BigInt det = free_block.determinant();
    return det == 1 || det == -1;
}

namespace {

// Inverse of a unimodular integer matrix via rational Gauss-Jordan; the result
// is integral because |det| = 1.
DenseMat unimodular_inverse(const DenseMat& m) {
    if (m.rows != m.cols) throw Error(errc::bad_input, "unimodular_inverse: not square");
    int n = m.rows;
    QMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = Rational(m.at(i, j));
        aug.at(i, n + i) = 1;
    }
    int rank = rref(aug);
    if (rank != n) throw Error(errc::bad_input, "unimodular_inverse: singular matrix");
    DenseMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational& v = aug.at(i, n + j);
            if (boost::multiprecision::denominator(v) != 1)
                throw Error(errc::bad_input, "unimodular_inverse: non-integral inverse");
            inv.at(i, j) = boost::multiprecision::numerator(v);
        }
    return inv;
}

// Homology presentation of one degree: cycle representatives and the
// coordinate map onto the reduced summand list (moduli 0 = free, m > 1 = Z/m).
struct DegreeBasis {
    std::vector<BigInt> moduli;
    DenseMat reps;   // chains: n_k x #summands
    DenseMat coords; // summand coordinates of a cycle: #summands x n_k
};

DegreeBasis homology_basis(const ChainComplex& c, int k) {
    SparseMat dk = c.boundary(k);
    SparseMat dk1 = c.boundary(k + 1);
    SmithResult snf_k = smith_normal_form(dk, true);
    int n_k = c.dim(k);
    long r_k = snf_k.rank();
    long z = n_k - r_k; // kernel dimension

    const DenseMat& v = *snf_k.V;
    DenseMat v_inv = unimodular_inverse(v);

    DenseMat kernel(n_k, static_cast<int>(z)); // K = V[:, r_k:]
    for (int i = 0; i < n_k; ++i)
        for (long j = 0; j < z; ++j) kernel.at(i, static_cast<int>(j)) = v.at(i, static_cast<int>(r_k + j));
    DenseMat w(static_cast<int>(z), n_k); // kernel coordinates: last z rows of V^-1
    for (long i = 0; i < z; ++i)
        for (int j = 0; j < n_k; ++j) w.at(static_cast<int>(i), j) = v_inv.at(static_cast<int>(r_k + i), j);

    // Image of d_{k+1} in kernel coordinates.
    DenseMat b = w.multiply(DenseMat::from_sparse(dk1));
    SmithResult snf_b = smith_normal_form_dense(b, true);
    const DenseMat& u = *snf_b.U;
    DenseMat u_inv = unimodular_inverse(u);
    long r_b = snf_b.rank();

    DenseMat all_coords = u.multiply(w); // z x n_k
    std::vector<int> kept;
    std::vector<BigInt> moduli;
    for (long i = 0; i < z; ++i) {
        BigInt e = i < r_b ? snf_b.divisors[static_cast<size_t>(i)] : BigInt(0);
        if (e == 1) continue; // trivial summand
        kept.push_back(static_cast<int>(i));
        moduli.push_back(e);
    }

    DegreeBasis basis;
    basis.moduli = std::move(moduli);
    basis.coords = DenseMat(static_cast<int>(kept.size()), n_k);
    for (size_t i = 0; i < kept.size(); ++i)
        for (int j = 0; j < n_k; ++j) basis.coords.at(static_cast<int>(i), j) = all_coords.at(kept[i], j);
    DenseMat rep_kernel_coords = u_inv; // column i = U^-1 e_i
    basis.reps = DenseMat(n_k, static_cast<int>(kept.size()));
    DenseMat full_reps = kernel.multiply(rep_kernel_coords);
    for (size_t i = 0; i < kept.size(); ++i)
        for (int r = 0; r < n_k; ++r) basis.reps.at(r, static_cast<int>(i)) = full_reps.at(r, kept[i]);
    return basis;
}

BigInt mod_reduce(const BigInt& x, const BigInt& m) {
    if (m == 0) return x;
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

InducedBlock induced_block(const ChainComplex& src, const ChainComplex& tgt, const SparseMat& f_k,
                           int k, int shift, CoeffSystem coeff) {
    DegreeBasis sb = homology_basis(src, k);
    DegreeBasis tb = homology_basis(tgt, k + shift);

    std::vector<int> src_keep, tgt_keep;
    for (size_t i = 0; i < sb.moduli.size(); ++i)
        if (coeff.kind == CoeffSystem::Kind::Z || sb.moduli[i] == 0) src_keep.push_back(static_cast<int>(i));
    for (size_t i = 0; i < tb.moduli.size(); ++i)
        if (coeff.kind == CoeffSystem::Kind::Z || tb.moduli[i] == 0) tgt_keep.push_back(static_cast<int>(i));

    DenseMat big = tb.coords.multiply(DenseMat::from_sparse(f_k)).multiply(sb.reps);
    InducedBlock block;
    block.matrix = DenseMat(static_cast<int>(tgt_keep.size()), static_cast<int>(src_keep.size()));
    for (size_t i = 0; i < tgt_keep.size(); ++i) {
        for (size_t j = 0; j < src_keep.size(); ++j) {
            BigInt v = big.at(tgt_keep[i], src_keep[j]);
            block.matrix.at(static_cast<int>(i), static_cast<int>(j)) =
                mod_reduce(v, tb.moduli[static_cast<size_t>(tgt_keep[i])]);
        }
        block.row_moduli.push_back(tb.moduli[static_cast<size_t>(tgt_keep[i])]);
    }
    for (int j : src_keep) block.col_moduli.push_back(sb.moduli[static_cast<size_t>(j)]);
    return block;
}

} // namespace

InducedMaps induced_map_on_homology(const ChainMap& f, CoeffSystem coeff) {
    f.validate();
    InducedMaps out;
    if (f.kind == ChainMapKind::Chain) {
        out.grading = InducedMaps::Grading::Homology;
        out.degree_shift = f.degree_shift;
        for (int k = 0; k <= f.src->top_degree(); ++k) {
            if (f.src->dim(k) == 0 && f.tgt->dim(k + f.degree_shift) == 0) continue;
            out.blocks[k] = induced_block(*f.src, *f.tgt, f.mat(k), k, f.degree_shift, coeff);
        }
        return out;
    }

    // Dualize: the same matrices define a chain map between the reversed
    // transposes, computing the induced map on compactly supported cohomology.
    ChainComplex tx = f.src->transposed_reversed();
    ChainComplex ty = f.tgt->transposed_reversed();
    int top_x = f.src->top_degree();
    ChainMap dual;
    dual.src = &tx;
    dual.tgt = &ty;
    dual.degree_shift = 0;
    dual.kind = ChainMapKind::Chain;
    dual.mats.resize(static_cast<size_t>(tx.top_degree() + 1));
    for (int j = 0; j <= tx.top_degree(); ++j) dual.mats[static_cast<size_t>(j)] = f.mat(top_x - j);
    dual.validate();

    out.grading = InducedMaps::Grading::CompactSupports;
    out.degree_shift = f.degree_shift;
    for (int j = 0; j <= tx.top_degree(); ++j) {
        int m = top_x - j; // H_c degree in the source complex
        if (tx.dim(j) == 0 && ty.dim(j) == 0) continue;
        out.blocks[m] = induced_block(tx, ty, dual.mat(j), j, 0, coeff);
    }
    return out;
}

UCTReport verify_universal_coefficients(const ChainComplex& c, const ResultCache* cache,
                                        unsigned jobs) {
    static const long long primes[] = {2, 3, 5};
    BoundaryData data = boundary_data(c, cache, jobs);

    int top = c.top_degree();
    bool small_enough = true;
    for (int k = 0; k <= top; ++k)
        if (c.dim(k) > 400) small_enough = false;

    std::vector<long> rq(static_cast<size_t>(top + 2), 0);
    std::vector<std::map<long long, long>> rp(static_cast<size_t>(top + 2));
    std::mutex mtx;
    parallel_for(static_cast<size_t>(top), jobs, [&](std::size_t idx) {
        int k = static_cast<int>(idx) + 1;
        long q = small_enough ? rank_over_q(c.boundary(k)) : data.rank_at(k);
        std::map<long long, long> mods;
        for (long long p : primes) mods[p] = rank_mod_p(c.boundary(k), p);
        std::lock_guard<std::mutex> lock(mtx);
        rq[static_cast<size_t>(k)] = q;
        rp[static_cast<size_t>(k)] = std::move(mods);
    });

    auto torsion_count = [&](int k, long long p) {
        // torsion of H_k divisible by p comes from divisors of d_{k+1}
        const std::vector<BigInt>* div = data.divisors_at(k + 1);
        long long t = 0;
        if (div)
            for (const BigInt& d : *div)
                if (d > 1 && d % p == 0) ++t;
        return t;
    };
    auto rank_p_at = [&](int k, long long p) -> long {
        if (k < 1 || k > top) return 0;
        return rp[static_cast<size_t>(k)].at(p);
    };

    UCTReport report;
    report.rational_rank_independent = small_enough;
    report.pass = true;
    for (int k = 0; k <= top; ++k) {
        UCTRow row;
        row.degree = k;
        row.betti_z = c.dim(k) - data.rank_at(k) - data.rank_at(k + 1);
        long rq_k = k >= 1 ? rq[static_cast<size_t>(k)] : 0;
        long rq_k1 = k + 1 <= top ? rq[static_cast<size_t>(k + 1)] : 0;
        row.rank_q_independent = c.dim(k) - rq_k - rq_k1;
        bool ok = row.rank_q_independent == row.betti_z;
        for (long long p : primes) {
            long long dim_p = c.dim(k) - rank_p_at(k, p) - rank_p_at(k + 1, p);
            long long expected = row.betti_z + torsion_count(k, p) + torsion_count(k - 1, p);
            row.dim_mod_p[p] = dim_p;
            row.expected_mod_p[p] = expected;
            ok = ok && dim_p == expected;
        }
        row.pass = ok;
        report.pass = report.pass && ok;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace symstrat
