#include "symstrat/fields.hpp"

#include <map>
#include <set>
#include <vector>

namespace symstrat {

thread_local long long FpElem::modulus = 2;

namespace {

long long pow_mod(long long b, long long e, long long p) {
    long long acc = 1 % p;
    b %= p;
    if (b < 0) b += p;
    while (e) {
        if (e & 1) acc = static_cast<long long>(static_cast<__int128>(acc) * b % p);
        b = static_cast<long long>(static_cast<__int128>(b) * b % p);
        e >>= 1;
    }
    return acc;
}

} // namespace

FpElem operator/(FpElem a, FpElem b) {
    if (b.v == 0) throw Error(errc::bad_input, "FpElem: division by zero");
    return a * FpElem(pow_mod(b.v, FpElem::modulus - 2, FpElem::modulus));
}

long rank_mod_p(const SparseMat& m, long long p) {
    if (p < 2) throw Error(errc::bad_input, "rank_mod_p: p must be a prime >= 2");
    auto norm = [p](long long x) {
        long long r = x % p;
        return r < 0 ? r + p : r;
    };
    std::vector<std::map<int, long long>> cols(static_cast<size_t>(m.cols));
    std::vector<std::set<int>> rows(static_cast<size_t>(m.rows));
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.col_entries[static_cast<size_t>(c)]) {
            long long nv = norm(v);
            if (nv) {
                cols[static_cast<size_t>(c)][r] = nv;
                rows[static_cast<size_t>(r)].insert(c);
            }
        }

    long rank = 0;
    for (int c = 0; c < m.cols; ++c) {
        auto& col = cols[static_cast<size_t>(c)];
        if (col.empty()) continue;
        // pick the entry whose row has least fill
        int pr = -1;
        size_t best = 0;
        for (const auto& [r, v] : col) {
            (void)v;
            size_t rs = rows[static_cast<size_t>(r)].size();
            if (pr < 0 || rs < best) { pr = r; best = rs; }
        }
        long long inv = pow_mod(col.at(pr), p - 2, p);
        std::vector<int> touched(rows[static_cast<size_t>(pr)].begin(),
                                 rows[static_cast<size_t>(pr)].end());
        const auto pivot_col = col;
        for (int c2 : touched) {
            if (c2 <= c) continue; // earlier columns are already retired
            auto& dst = cols[static_cast<size_t>(c2)];
            auto it = dst.find(pr);
            if (it == dst.end()) continue;
            long long f = static_cast<long long>(static_cast<__int128>(it->second) * inv % p);
            for (const auto& [r, v] : pivot_col) {
                long long cur = 0;
                auto jt = dst.find(r);
                if (jt != dst.end()) cur = jt->second;
                long long nv = (cur - static_cast<long long>(static_cast<__int128>(f) * v % p)) % p;
                if (nv < 0) nv += p;
                if (nv == 0) {
                    if (jt != dst.end()) {
                        dst.erase(jt);
                        rows[static_cast<size_t>(r)].erase(c2);
                    }
                } else if (jt == dst.end()) {
                    dst.emplace(r, nv);
                    rows[static_cast<size_t>(r)].insert(c2);
                } else {
                    jt->second = nv;
                }
            }
        }
        for (const auto& [r, v] : pivot_col) {
            (void)v;
            rows[static_cast<size_t>(r)].erase(c);
        }
        col.clear();
        ++rank;
    }
    return rank;
}

long rank_over_q(const SparseMat& m) { return rank_of(QMat::from_sparse(m)); }

} // namespace symstrat
