#include "symstrat/spectral.hpp"

#include <algorithm>
#include <sstream>

#include "symstrat/fields.hpp"

namespace symstrat {

int SSPage::dim_at(int level, int degree) const {
    auto it = dims.find({level, degree});
    return it == dims.end() ? 0 : it->second;
}

std::map<int, int> SSPage::totals_by_degree() const {
    std::map<int, int> out;
    for (const auto& [key, d] : dims)
        if (d > 0) out[key.second] += d;
    return out;
}

std::vector<SSComparisonEntry> SSComparison::page(int r) const {
    std::vector<SSComparisonEntry> out;
    for (const auto& e : entries)
        if (e.r == r) out.push_back(e);
    return out;
}

namespace {

std::string scalar_str(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}
std::string scalar_str(const FpElem& v) { return std::to_string(v.v); }

// Incremental column span with Gaussian reduction; add() reports whether the
// vector enlarged the span.
template <class F>
struct IncrementalSpan {
    int n = 0;
    std::vector<std::vector<F>> rows; // reduced vectors
    std::vector<int> pivots;          // pivot coordinate per row

    explicit IncrementalSpan(int dim) : n(dim) {}

    bool add(std::vector<F> v) {
        for (size_t i = 0; i < rows.size(); ++i) {
            const F& lead = v[static_cast<size_t>(pivots[i])];
            if (lead != 0) {
                F f = lead; // rows are normalized to leading 1
                for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] -= f * rows[i][static_cast<size_t>(j)];
            }
        }
        int pivot = -1;
        for (int j = 0; j < n; ++j)
            if (v[static_cast<size_t>(j)] != 0) { pivot = j; break; }
        if (pivot < 0) return false;
        F inv = F(1) / v[static_cast<size_t>(pivot)];
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] *= inv;
        rows.push_back(std::move(v));
        pivots.push_back(pivot);
        return true;
    }

    int dim() const { return static_cast<int>(rows.size()); }
};

template <class F>
std::vector<F> column_of(const Mat<F>& m, int c) {
    std::vector<F> v(static_cast<size_t>(m.rows));
    for (int r = 0; r < m.rows; ++r) v[static_cast<size_t>(r)] = m.at(r, c);
    return v;
}

template <class F>
Mat<F> from_columns(int rows, const std::vector<std::vector<F>>& cols) {
    Mat<F> m(rows, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < rows; ++r) m.at(r, static_cast<int>(c)) = cols[c][static_cast<size_t>(r)];
    return m;
}

template <class F>
struct SSEngine {
    const ChainComplex& c;
    int top;
    int max_level;
    const std::vector<std::vector<int>>& levels;
    std::vector<Mat<F>> d_dense; // cached dense boundaries per degree

    SSEngine(const ChainComplex& complex, const std::vector<std::vector<int>>& lv)
        : c(complex), top(complex.top_degree()), max_level(0), levels(lv) {
        for (const auto& degree_levels : levels)
            for (int l : degree_levels) {
                if (l < 0) throw Error(errc::filtration_violation, "negative filtration level");
                max_level = std::max(max_level, l);
            }
        d_dense.resize(static_cast<size_t>(top + 1));
        for (int m = 1; m <= top; ++m) d_dense[static_cast<size_t>(m)] = Mat<F>::from_sparse(c.boundary(m));
    }

    int dim(int m) const { return (m < 0 || m > top) ? 0 : c.dim(m); }
    int level_of(int m, int g) const { return levels[static_cast<size_t>(m)][static_cast<size_t>(g)]; }

    Mat<F> apply_d(int m, const Mat<F>& x) const {
        if (m < 1 || m > top) return Mat<F>(dim(m - 1), x.cols);
        return d_dense[static_cast<size_t>(m)].multiply(x);
    }

    // { x in G_floor C_m : dx in G_target C_{m-1} } as column basis, in full
    // C_m coordinates. The floor clamps at 0 (G_q = G_0 for q < 0); the
    // constraint level stays absolute.
    Mat<F> cycles(int floor_level, int m, int target_level) const {
        if (m < 0 || m > top) return Mat<F>(0, 0);
        floor_level = std::max(floor_level, 0);
        std::vector<int> gens;
        for (int g = 0; g < dim(m); ++g)
            if (level_of(m, g) >= floor_level) gens.push_back(g);
        if (gens.empty()) return Mat<F>(dim(m), 0);
        std::vector<int> bad_rows;
        for (int g = 0; m >= 1 && g < dim(m - 1); ++g)
            if (level_of(m - 1, g) < target_level) bad_rows.push_back(g);
        Mat<F> constraint(static_cast<int>(bad_rows.size()), static_cast<int>(gens.size()));
        if (m >= 1 && !bad_rows.empty()) {
            const Mat<F>& d = d_dense[static_cast<size_t>(m)];
            for (size_t i = 0; i < bad_rows.size(); ++i)
                for (size_t j = 0; j < gens.size(); ++j)
                    constraint.at(static_cast<int>(i), static_cast<int>(j)) = d.at(bad_rows[i], gens[j]);
        }
        Mat<F> k = kernel_basis(constraint);
        Mat<F> full(dim(m), k.cols);
        for (int col = 0; col < k.cols; ++col)
            for (size_t j = 0; j < gens.size(); ++j) full.at(gens[j], col) = k.at(static_cast<int>(j), col);
        return full;
    }
};

// One E_r slot: a basis of the denominator and class representatives
// completing it to the numerator Z_r^{p,m}.
template <class F>
struct SlotBasis {
    Mat<F> denominator;
    Mat<F> reps;
    int dim() const { return reps.cols; }
};

template <class F>
SlotBasis<F> slot_basis(const SSEngine<F>& eng, int p, int m, int r) {
    Mat<F> z = eng.cycles(p, m, p + r);
    SlotBasis<F> out;
    if (z.rows == 0 || z.cols == 0) {
        out.denominator = Mat<F>(eng.dim(m), 0);
        out.reps = Mat<F>(eng.dim(m), 0);
        return out;
    }
    int rm1 = std::max(r - 1, 0);
    // denominator: Z_{r-1}^{p+1, m} + d Z_{r-1}^{p-r+1, m+1}
    Mat<F> z_deeper = eng.cycles(p + 1, m, p + 1 + rm1);
    Mat<F> boundaries(z.rows, 0);
    if (r >= 1) boundaries = eng.apply_d(m + 1, eng.cycles(p - r + 1, m + 1, p));

    IncrementalSpan<F> span(z.rows);
    std::vector<std::vector<F>> den_cols;
    for (int c = 0; c < z_deeper.cols; ++c) {
        std::vector<F> v = column_of(z_deeper, c);
        if (span.add(v)) den_cols.push_back(std::move(v));
    }
    for (int c = 0; c < boundaries.cols; ++c) {
        std::vector<F> v = column_of(boundaries, c);
        if (span.add(v)) den_cols.push_back(std::move(v));
    }
    std::vector<std::vector<F>> rep_cols;
    for (int c = 0; c < z.cols; ++c) {
        std::vector<F> v = column_of(z, c);
        if (span.add(v)) rep_cols.push_back(std::move(v));
    }
    out.denominator = from_columns(z.rows, den_cols);
    out.reps = from_columns(z.rows, rep_cols);
    return out;
}

// Matrix of the induced map sending the classes of `images` columns into the
// slot with basis `tb` (rows = tb classes).
template <class F>
Mat<F> class_coordinates(const SlotBasis<F>& tb, const Mat<F>& images) {
    Mat<F> span = tb.denominator.hcat(tb.reps);
    Mat<F> coords = solve_in_span(span, images);
    Mat<F> block(tb.reps.cols, images.cols);
    for (int i = 0; i < tb.reps.cols; ++i)
        for (int j = 0; j < images.cols; ++j) block.at(i, j) = coords.at(tb.denominator.cols + i, j);
    return block;
}

template <class F>
SSResult run_spectral_sequence(const ChainComplex& c, CoeffSystem field) {
    if (!c.filtration) throw Error(errc::filtration_violation, "complex carries no filtration levels");
    c.verify_filtration();
    SSEngine<F> eng(c, *c.filtration);

    SSResult res;
    res.field = field;
    int r_stable = eng.max_level + 1; // d_r vanishes once r exceeds the level spread

    std::map<std::pair<int, int>, Mat<F>> prev_blocks;
    for (int r = 0; r <= r_stable; ++r) {
        SSPage page;
        page.r = r;
        std::map<std::pair<int, int>, SlotBasis<F>> bases;
        for (int p = 0; p <= eng.max_level; ++p)
            for (int m = 0; m <= eng.top; ++m) {
                SlotBasis<F> sb = slot_basis(eng, p, m, r);
                if (sb.dim() > 0) {
                    page.dims[{p, m}] = sb.dim();
                    bases[{p, m}] = std::move(sb);
                }
            }

        // page dimension recurrence: E_r = H(E_{r-1}, d_{r-1})
        if (r >= 1) {
            const SSPage& prev = res.pages.back();
            for (const auto& [key, dprev] : prev.dims) {
                auto [p, m] = key;
                int out_rank = 0, in_rank = 0;
                auto out_it = prev_blocks.find({p, m});
                if (out_it != prev_blocks.end()) out_rank = rank_of(out_it->second);
                auto in_it = prev_blocks.find({p - (r - 1), m + 1});
                if (in_it != prev_blocks.end()) in_rank = rank_of(in_it->second);
                if (page.dim_at(p, m) != dprev - out_rank - in_rank)
                    throw Error(errc::filtration_violation,
                                "page " + std::to_string(r) + " is not the homology of page " +
                                    std::to_string(r - 1) + " at (" + std::to_string(p) + ", " +
                                    std::to_string(m) + ")");
            }
            for (const auto& [key, dnow] : page.dims) {
                (void)dnow;
                if (!prev.dims.count(key))
                    throw Error(errc::filtration_violation, "page gained a slot it did not have");
            }
        }

        // differentials d_r out of every slot (r = 0 is the associated-graded
        // differential of bidegree (0, -1))
        std::map<std::pair<int, int>, Mat<F>> blocks;
        for (const auto& [key, sb] : bases) {
            auto [p, m] = key;
            auto tgt_it = bases.find({p + r, m - 1});
            if (tgt_it == bases.end()) continue;
            Mat<F> block = class_coordinates(tgt_it->second, eng.apply_d(m, sb.reps));
            if (block.is_zero()) continue;
            SSDifferential diff;
            diff.r = r;
            diff.level = p;
            diff.degree = m;
            diff.rank = rank_of(block);
            diff.matrix.resize(static_cast<size_t>(block.rows));
            for (int i = 0; i < block.rows; ++i)
                for (int j = 0; j < block.cols; ++j)
                    diff.matrix[static_cast<size_t>(i)].push_back(scalar_str(block.at(i, j)));
            res.diffs.push_back(std::move(diff));
            blocks.emplace(key, std::move(block));
        }
        // d_r o d_r = 0 on composable blocks
        for (const auto& [key, b1] : blocks) {
            auto [p, m] = key;
            auto next = blocks.find({p + r, m - 1});
            if (next == blocks.end()) continue;
            if (!next->second.multiply(b1).is_zero())
                throw Error(errc::filtration_violation,
                            "d_r o d_r != 0 at (" + std::to_string(p) + ", " + std::to_string(m) + ")");
        }
        prev_blocks = std::move(blocks);
        res.pages.push_back(std::move(page));
    }

    // convergence: totals of the final page against field homology dims
    for (int m = 0; m <= eng.top; ++m) {
        long rank_m, rank_m1;
        if (field.kind == CoeffSystem::Kind::Q) {
            rank_m = rank_over_q(c.boundary(m));
            rank_m1 = rank_over_q(c.boundary(m + 1));
        } else {
            rank_m = rank_mod_p(c.boundary(m), field.p);
            rank_m1 = rank_mod_p(c.boundary(m + 1), field.p);
        }
        int h = c.dim(m) - static_cast<int>(rank_m) - static_cast<int>(rank_m1);
        if (h != 0) res.homology_dims[m] = h;
    }
    res.converged = res.pages.back().totals_by_degree() == res.homology_dims;
    return res;
}

template <class F>
SSComparison run_comparison(const ChainMap& stab, CoeffSystem field) {
    (void)field;
    if (stab.kind != ChainMapKind::CochainDual)
        throw Error(errc::bad_input, "compare_spectral_sequences expects a stabilization-style map");
    const ChainComplex& x = *stab.src;
    const ChainComplex& y = *stab.tgt;
    if (!x.filtration || !y.filtration)
        throw Error(errc::filtration_violation, "both complexes need filtration levels");
    SSEngine<F> ex(x, *x.filtration);
    SSEngine<F> ey(y, *y.filtration);

    int max_level = std::max(ex.max_level, ey.max_level);
    int shift = stab.degree_shift; // R = f^T drops the chain degree by this

    SSComparison cmp;
    cmp.stable_r = max_level + 1;
    for (int r = 0; r <= cmp.stable_r; ++r) {
        for (int p = 0; p <= max_level; ++p)
            for (int m = 0; m <= ey.top; ++m) {
                SlotBasis<F> yb = slot_basis(ey, p, m, r);
                SlotBasis<F> xb = slot_basis(ex, p, m - shift, r);
                if (yb.dim() == 0 && xb.dim() == 0) continue;
                SSComparisonEntry e;
                e.r = r;
                e.level = p;
                e.degree = m;
                e.dim_tgt = yb.dim();
                e.dim_src = xb.dim();
                if (yb.dim() == xb.dim() && yb.dim() > 0) {
                    SparseMat f_m = stab.mat(m - shift); // X_{m-shift} -> Y_m
                    Mat<F> r_mat(x.dim(m - shift), y.dim(m));
                    for (int c2 = 0; c2 < f_m.cols; ++c2)
                        for (const auto& [row, v] : f_m.col_entries[static_cast<size_t>(c2)])
                            r_mat.at(c2, row) = F(v); // transpose of f
                    Mat<F> block = class_coordinates(xb, r_mat.multiply(yb.reps));
                    e.iso = rank_of(block) == yb.dim();
                } else {
                    e.iso = false;
                }
                cmp.entries.push_back(e);
            }
    }
    return cmp;
}

} // namespace

SSResult spectral_sequence(const ChainComplex& c, CoeffSystem field) {
    if (!field.is_field())
        throw Error(errc::bad_input, "spectral_sequence: coefficients must be Q or Z/p");
    if (field.kind == CoeffSystem::Kind::Q) return run_spectral_sequence<Rational>(c, field);
    FpContext ctx(field.p);
    return run_spectral_sequence<FpElem>(c, field);
}

SSComparison compare_spectral_sequences(const ChainMap& stab, CoeffSystem field) {
    if (!field.is_field())
        throw Error(errc::bad_input, "compare_spectral_sequences: coefficients must be Q or Z/p");
    if (field.kind == CoeffSystem::Kind::Q) return run_comparison<Rational>(stab, field);
    FpContext ctx(field.p);
    return run_comparison<FpElem>(stab, field);
}

} // namespace symstrat
