#include "symstrat/chain_complex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace symstrat {

namespace {

std::int64_t checked_add_mul(std::int64_t acc, std::int64_t a, std::int64_t b) {
    // FN incidence coefficients are tiny; this guards the complex-level
    // products used by verify_d_squared and chain-map checks.
    __int128 r = static_cast<__int128>(a) * b + acc;
    if (r > std::numeric_limits<std::int64_t>::max() || r < std::numeric_limits<std::int64_t>::min())
        throw Error(errc::bad_input, "sparse multiply overflow; use the exact big-integer path");
    return static_cast<std::int64_t>(r);
}

} // namespace

void SparseMat::add(int r, int c, std::int64_t v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw Error(errc::index_out_of_bounds, "SparseMat::add out of range");
    if (v != 0) col_entries[static_cast<size_t>(c)].emplace_back(r, v);
}

void SparseMat::finalize() {
    for (auto& col : col_entries) {
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, std::int64_t>> merged;
        for (const auto& [r, v] : col) {
            if (!merged.empty() && merged.back().first == r) {
                merged.back().second += v;
                if (merged.back().second == 0) merged.pop_back();
            } else if (v != 0) {
                merged.emplace_back(r, v);
            }
        }
        col = std::move(merged);
    }
}

std::size_t SparseMat::nnz() const {
    std::size_t n = 0;
    for (const auto& col : col_entries) n += col.size();
    return n;
}

bool SparseMat::is_zero() const { return nnz() == 0; }

std::int64_t SparseMat::get(int r, int c) const {
    for (const auto& [row, v] : col_entries[static_cast<size_t>(c)])
        if (row == r) return v;
    return 0;
}

SparseMat SparseMat::transposed() const {
    SparseMat t(cols, rows);
    for (int c = 0; c < cols; ++c)
        for (const auto& [r, v] : col_entries[static_cast<size_t>(c)]) t.add(c, r, v);
    t.finalize();
    return t;
}

SparseMat SparseMat::multiply(const SparseMat& other) const {
    if (cols != other.rows)
        throw Error(errc::bad_input, "SparseMat::multiply: shape mismatch");
    SparseMat out(rows, other.cols);
    for (int c = 0; c < other.cols; ++c) {
        std::map<int, std::int64_t> acc;
        for (const auto& [mid, v1] : other.col_entries[static_cast<size_t>(c)]) {
            for (const auto& [r, v2] : col_entries[static_cast<size_t>(mid)]) {
                auto& slot = acc[r];
                slot = checked_add_mul(slot, v1, v2);
            }
        }
        for (const auto& [r, v] : acc)
            if (v != 0) out.col_entries[static_cast<size_t>(c)].emplace_back(r, v);
    }
    return out;
}

SparseMat ChainComplex::boundary(int k) const {
    if (k >= 1 && k <= top_degree()) {
        const SparseMat& m = d[static_cast<size_t>(k)];
        if (m.rows != dim(k - 1) || m.cols != dim(k))
            throw Error(errc::bad_input, "ChainComplex: inconsistent boundary shape");
        return m;
    }
    // Degree 0 boundary and everything out of range map to/from zero spaces.
    if (k == top_degree() + 1) return SparseMat(dim(top_degree() + 1 - 1), 0);
    return SparseMat(0, dim(k));
}

long long ChainComplex::total_cells() const {
    long long n = 0;
    for (int c : dims) n += c;
    return n;
}

long long ChainComplex::euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= top_degree(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(dim(k));
    return chi;
}

void ChainComplex::verify_d_squared() const {
    for (int k = 2; k <= top_degree(); ++k) {
        SparseMat prod = d[static_cast<size_t>(k - 1)].multiply(d[static_cast<size_t>(k)]);
        if (!prod.is_zero())
            throw Error(errc::d_squared_nonzero,
                        "d o d != 0 between degrees " + std::to_string(k) + " and " +
                            std::to_string(k - 2));
    }
}

void ChainComplex::verify_filtration() const {
    if (!filtration) return;
    const auto& lv = *filtration;
    for (int k = 1; k <= top_degree(); ++k) {
        const SparseMat& m = d[static_cast<size_t>(k)];
        for (int c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col_entries[static_cast<size_t>(c)]) {
                (void)v;
                if (lv[static_cast<size_t>(k - 1)][static_cast<size_t>(r)] <
                    lv[static_cast<size_t>(k)][static_cast<size_t>(c)])
                    throw Error(errc::filtration_violation,
                                "boundary decreases filtration level at degree " + std::to_string(k));
            }
    }
}

ChainComplex ChainComplex::transposed_reversed() const {
    ChainComplex t;
    int top = top_degree();
    t.dims.resize(dims.size());
    t.d.resize(dims.size());
    for (int j = 0; j <= top; ++j) t.dims[static_cast<size_t>(j)] = dim(top - j);
    t.d[0] = SparseMat(0, t.dims[0]);
    for (int j = 1; j <= top; ++j) {
        // d_t[j]: dual(C_{top-j}) -> dual(C_{top-j+1}) is the transpose of
        // d[top-j+1]: C_{top-j+1} -> C_{top-j}.
        t.d[static_cast<size_t>(j)] = d[static_cast<size_t>(top - j + 1)].transposed();
    }
    return t;
}

SparseMat ChainMap::mat(int k) const {
    if (k >= 0 && k < static_cast<int>(mats.size())) {
        const SparseMat& m = mats[static_cast<size_t>(k)];
        if (m.rows != tgt->dim(k + degree_shift) || m.cols != src->dim(k))
            throw Error(errc::bad_input, "ChainMap: inconsistent matrix shape at degree " + std::to_string(k));
        return m;
    }
    return SparseMat(tgt->dim(k + degree_shift), src->dim(k));
}

void ChainMap::validate() const {
    if (!src || !tgt) throw Error(errc::bad_input, "ChainMap: missing complexes");
    int s = degree_shift;
    if (kind == ChainMapKind::Chain) {
        for (int k = 1; k <= src->top_degree(); ++k) {
            SparseMat lhs = tgt->boundary(k + s).multiply(mat(k));
            SparseMat rhs = mat(k - 1).multiply(src->boundary(k));
            lhs.finalize();
            rhs.finalize();
            if (!(lhs.col_entries == rhs.col_entries))
                throw Error(errc::not_a_chain_map,
                            "chain-map law fails at source degree " + std::to_string(k));
        }
    } else {
        // R = f^T must be a chain map from tgt to src with degree shift -s:
        // d_src[m - s] . R_m = R_{m-1} . d_tgt[m] for every target degree m.
        for (int m = 1; m <= tgt->top_degree(); ++m) {
            SparseMat r_m = mat(m - s).transposed();
            SparseMat r_m1 = mat(m - 1 - s).transposed();
            SparseMat lhs = src->boundary(m - s).multiply(r_m);
            SparseMat rhs = r_m1.multiply(tgt->boundary(m));
            lhs.finalize();
            rhs.finalize();
            if (!(lhs.col_entries == rhs.col_entries))
                throw Error(errc::not_a_chain_map,
                            "cochain-dual law fails at target degree " + std::to_string(m));
        }
    }
}

std::string ChainComplex::serialize() const {
    std::ostringstream os;
    os << "chain-complex/v1;dims=";
    for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << ";d=";
    for (int k = 1; k <= top_degree(); ++k) {
        const SparseMat& m = d[static_cast<size_t>(k)];
        os << "[" << k << ":";
        for (int c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col_entries[static_cast<size_t>(c)])
                os << r << "," << c << "," << v << ";";
        os << "]";
    }
    if (filtration) {
        os << ";filt=";
        for (const auto& levels : *filtration) {
            os << "[";
            for (size_t i = 0; i < levels.size(); ++i) os << (i ? "," : "") << levels[i];
            os << "]";
        }
    }
    return os.str();
}

} // namespace symstrat
