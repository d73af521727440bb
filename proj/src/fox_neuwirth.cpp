#include "symstrat/fox_neuwirth.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace symstrat {

int FNCell::num_entries() const {
    int n = 0;
    for (const auto& col : columns) n += static_cast<int>(col.size());
    return n;
}

int FNCell::total_weight_sym() const {
    int w = 0;
    for (const auto& col : columns)
        for (int e : col) w += e;
    return w;
}

Partition FNCell::pattern_sym() const {
    std::vector<int> weights;
    for (const auto& col : columns)
        for (int e : col) weights.push_back(e);
    return Partition(std::move(weights));
}

std::string FNCell::to_string() const {
    std::string out = "[";
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out += '|';
        for (size_t j = 0; j < columns[i].size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(columns[i][j]);
        }
    }
    out += ']';
    return out;
}

bool cell_less(const FNCell& a, const FNCell& b) {
    int da = a.dimension(), db = b.dimension();
    if (da != db) return da < db;
    auto sizes = [](const FNCell& c) {
        std::vector<int> s;
        s.reserve(c.columns.size());
        for (const auto& col : c.columns) s.push_back(static_cast<int>(col.size()));
        return s;
    };
    std::vector<int> sa = sizes(a), sb = sizes(b);
    if (sa != sb) return sa < sb;
    return a.columns < b.columns;
}

FNSpec FNSpec::conf_space(const ColourVector& v) {
    FNSpec s;
    s.mode_ = FNMode::Coloured;
    s.colours_ = v;
    s.total_ = v.norm();
    return s;
}

namespace {

// One-step part splits w -> a + (w - a); used for the open-family assertion.
std::vector<Partition> one_step_splits(const Partition& p) {
    std::vector<Partition> out;
    const auto& parts = p.parts();
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 2) continue;
        for (int a = 1; 2 * a <= parts[i]; ++a) {
            std::vector<int> q = parts;
            q[i] = a;
            q.push_back(parts[i] - a);
            out.emplace_back(std::move(q));
        }
    }
    return out;
}

} // namespace

FNSpec FNSpec::sym_pattern(int n, std::vector<Partition> allowed, bool open_family) {
    if (n < 1) throw Error(errc::bad_input, "sym_pattern: total weight must be >= 1");
    for (const Partition& p : allowed)
        if (p.n() != n)
            throw Error(errc::mismatched_total, "sym_pattern: pattern " + p.to_string() +
                                                    " is not a partition of " + std::to_string(n));
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    std::reverse(allowed.begin(), allowed.end()); // canonical descending-lex
    FNSpec s;
    s.mode_ = FNMode::SymPattern;
    s.total_ = n;
    s.allowed_ = std::move(allowed);
    s.open_family_ = open_family;
    if (open_family) {
        for (const Partition& p : s.allowed_)
            for (const Partition& q : one_step_splits(p))
                if (!s.pattern_allowed(q))
                    throw Error(errc::bad_input,
                                "pattern family is not closed under refinement: " + p.to_string() +
                                    " splits to the missing " + q.to_string());
    }
    return s;
}

FNSpec FNSpec::wcomp(const Partition& lambda) {
    if (lambda.n() < 1) throw Error(errc::bad_input, "wcomp: need a partition of n >= 1");
    std::vector<Partition> allowed;
    for (const Partition& mu : enumerate_partitions(lambda.n()))
        if (!is_subpartition(mu, lambda)) allowed.push_back(mu);
    return sym_pattern(lambda.n(), std::move(allowed), true);
}

FNSpec FNSpec::single_stratum(const Partition& lambda) {
    if (lambda.n() < 1) throw Error(errc::bad_input, "single_stratum: need a partition of n >= 1");
    return sym_pattern(lambda.n(), {lambda}, false);
}

bool FNSpec::pattern_allowed(const Partition& p) const {
    if (mode_ == FNMode::Coloured) return p == prepend_ones(Partition(), total_);
    for (const Partition& q : allowed_)
        if (q == p) return true;
    return false;
}

std::string FNSpec::describe() const {
    if (mode_ == FNMode::Coloured) return "Conf_(" + colours_.to_csv() + ")";
    std::string s = open_family_ ? "SymStrata(n=" : "SymStratum(n=";
    s += std::to_string(total_) + "; ";
    for (size_t i = 0; i < allowed_.size(); ++i) {
        if (i) s += ", ";
        s += allowed_[i].to_string();
    }
    return s + ")";
}

std::string FNSpec::serialize() const {
    std::ostringstream os;
    os << "fnspec/v1;";
    if (mode_ == FNMode::Coloured) {
        os << "mode=coloured;v=" << colours_.to_csv();
    } else {
        os << "mode=sym;n=" << total_ << ";open=" << (open_family_ ? 1 : 0) << ";allowed=";
        for (size_t i = 0; i < allowed_.size(); ++i) os << (i ? "|" : "") << allowed_[i].to_csv();
    }
    return os.str();
}

namespace {

void append_cells_for_word(const std::vector<int>& word, std::vector<std::vector<FNCell>>& by_dim) {
    int n = static_cast<int>(word.size());
    int gaps = n - 1;
    for (std::uint32_t mask = 0; mask < (1u << gaps); ++mask) {
        FNCell cell;
        std::vector<int> col;
        for (int i = 0; i < n; ++i) {
            col.push_back(word[static_cast<size_t>(i)]);
            bool brk = (i == n - 1) || (mask >> i) & 1u;
            if (brk) {
                cell.columns.push_back(std::move(col));
                col.clear();
            }
        }
        by_dim[static_cast<size_t>(cell.dimension())].push_back(std::move(cell));
    }
}

} // namespace

std::vector<std::vector<FNCell>> enumerate_cells(const FNSpec& spec, int size_limit) {
    if (spec.total_weight() > size_limit)
        throw Error(errc::size_limit_exceeded,
                    "total weight " + std::to_string(spec.total_weight()) + " exceeds limit " +
                        std::to_string(size_limit));
    std::vector<std::vector<FNCell>> by_dim(static_cast<size_t>(2 * spec.total_weight() + 1));

    if (spec.mode() == FNMode::Coloured) {
        std::vector<int> word;
        for (int c = 1; c <= spec.colours().size(); ++c)
            word.insert(word.end(), static_cast<size_t>(spec.colours().at(c)), c);
        if (word.empty()) {
            by_dim[0].push_back(FNCell{}); // the empty configuration is a point
        } else {
            std::sort(word.begin(), word.end());
            do {
                append_cells_for_word(word, by_dim);
            } while (std::next_permutation(word.begin(), word.end()));
        }
    } else {
        int n = spec.total_weight();
        // Entry weight sequences are compositions of n; a second break mask
        // groups consecutive entries into columns.
        for (std::uint32_t wmask = 0; wmask < (1u << (n - 1)); ++wmask) {
            std::vector<int> weights;
            int run = 1;
            for (int i = 0; i < n - 1; ++i) {
                if ((wmask >> i) & 1u) {
                    weights.push_back(run);
                    run = 1;
                } else {
                    ++run;
                }
            }
            weights.push_back(run);
            if (!spec.pattern_allowed(Partition(weights))) continue;
            append_cells_for_word(weights, by_dim);
        }
    }

    for (auto& cells : by_dim) std::sort(cells.begin(), cells.end(), cell_less);
    return by_dim;
}

namespace {

// All order-preserving interleavings of columns a and b, with the sign
// (-1)^{#(pairs placed out of block order)}.
void shuffles_rec(const std::vector<int>& a, const std::vector<int>& b, size_t ia, size_t ib,
                  std::vector<int>& cur, int inversions,
                  const std::function<void(const std::vector<int>&, int)>& emit) {
    if (ia == a.size() && ib == b.size()) {
        emit(cur, inversions % 2 == 0 ? 1 : -1);
        return;
    }
    if (ia < a.size()) {
        cur.push_back(a[ia]);
        shuffles_rec(a, b, ia + 1, ib, cur, inversions, emit);
        cur.pop_back();
    }
    if (ib < b.size()) {
        cur.push_back(b[ib]);
        // placing a b-entry now puts it before the remaining a-entries
        shuffles_rec(a, b, ia, ib + 1, cur, inversions + static_cast<int>(a.size() - ia), emit);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::pair<FNCell, std::int64_t>> boundary(const FNCell& cell, const FNSpec& spec) {
    std::map<FNCell, std::int64_t, bool (*)(const FNCell&, const FNCell&)> acc(cell_less);
    const auto& cols = cell.columns;
    int k = cell.num_columns();

    // (a) merges of adjacent column pairs, one term per shuffle
    for (int i = 0; i + 1 < k; ++i) {
        int pair_sign = (i % 2 == 0) ? 1 : -1; // (-1)^i, 0-based pair index
        std::vector<int> cur;
        std::function<void(const std::vector<int>&, int)> emit = [&](const std::vector<int>& merged,
                                                                     int shuffle_sign) {
            FNCell out;
            out.columns.reserve(static_cast<size_t>(k - 1));
            for (int j = 0; j < k; ++j) {
                if (j == i) out.columns.push_back(merged);
                else if (j != i + 1) out.columns.push_back(cols[static_cast<size_t>(j)]);
            }
            acc[std::move(out)] += pair_sign * shuffle_sign;
        };
        shuffles_rec(cols[static_cast<size_t>(i)], cols[static_cast<size_t>(i + 1)], 0, 0, cur, 0, emit);
    }

    // (b) merges of adjacent entries within a column (symmetric mode only;
    // in coloured mode the collision leaves the space)
    if (spec.mode() == FNMode::SymPattern) {
        int entries_before = 0;
        for (int i = 0; i < k; ++i) {
            const auto& col = cols[static_cast<size_t>(i)];
            for (int j = 0; j + 1 < static_cast<int>(col.size()); ++j) {
                FNCell out = cell;
                auto& c = out.columns[static_cast<size_t>(i)];
                c[static_cast<size_t>(j)] += c[static_cast<size_t>(j + 1)];
                c.erase(c.begin() + j + 1);
                if (!spec.pattern_allowed(out.pattern_sym())) continue; // basepoint
                int sign = ((k + entries_before + j) % 2 == 0) ? 1 : -1;
                acc[std::move(out)] += sign;
            }
            entries_before += static_cast<int>(col.size());
        }
    }

    std::vector<std::pair<FNCell, std::int64_t>> out;
    for (auto& [c, v] : acc)
        if (v != 0) out.emplace_back(c, v);
    return out;
}

int BuiltComplex::cell_index(const FNCell& cell) const {
    int d = cell.dimension();
    if (d < 0 || d >= static_cast<int>(cells.size())) return -1;
    const auto& row = cells[static_cast<size_t>(d)];
    auto it = std::lower_bound(row.begin(), row.end(), cell, cell_less);
    if (it == row.end() || !(*it == cell)) return -1;
    return static_cast<int>(it - row.begin());
}

std::string BuiltComplex::serialize() const {
    std::ostringstream os;
    os << "fncomplex/v1;" << spec.serialize() << ";cells=";
    for (size_t d = 0; d < cells.size(); ++d) {
        os << "[d" << d << ":";
        for (const FNCell& c : cells[d]) os << c.to_string();
        os << "]";
    }
    os << ";" << complex.serialize();
    return os.str();
}

BuiltComplex build_complex(const FNSpec& spec, int size_limit) {
    BuiltComplex built;
    built.spec = spec;
    built.cells = enumerate_cells(spec, size_limit);

    int top = 2 * spec.total_weight();
    ChainComplex cc;
    cc.dims.resize(static_cast<size_t>(top + 1));
    cc.d.resize(static_cast<size_t>(top + 1));
    std::vector<std::vector<int>> levels(static_cast<size_t>(top + 1));
    for (int d = 0; d <= top; ++d) {
        cc.dims[static_cast<size_t>(d)] = static_cast<int>(built.cells[static_cast<size_t>(d)].size());
        for (const FNCell& c : built.cells[static_cast<size_t>(d)])
            levels[static_cast<size_t>(d)].push_back(2 * (spec.total_weight() - c.num_entries()));
    }
    cc.d[0] = SparseMat(0, cc.dims[0]);
    for (int d = 1; d <= top; ++d) {
        SparseMat m(cc.dims[static_cast<size_t>(d - 1)], cc.dims[static_cast<size_t>(d)]);
        const auto& col_cells = built.cells[static_cast<size_t>(d)];
        for (int c = 0; c < static_cast<int>(col_cells.size()); ++c) {
            for (const auto& [bcell, coeff] : boundary(col_cells[static_cast<size_t>(c)], spec)) {
                int r = built.cell_index(bcell);
                if (r < 0 || bcell.dimension() != d - 1)
                    throw Error(errc::d_squared_nonzero,
                                "boundary term " + bcell.to_string() + " missing from the complex");
                m.add(r, c, coeff);
            }
        }
        m.finalize();
        cc.d[static_cast<size_t>(d)] = std::move(m);
    }
    cc.filtration = std::move(levels);
    cc.verify_d_squared();
    cc.verify_filtration();
    built.complex = std::move(cc);
    return built;
}

ChainMap stabilization_chain_map(const BuiltComplex& src, const BuiltComplex& tgt, int colour_i) {
    const FNSpec& s = src.spec;
    const FNSpec& t = tgt.spec;
    int new_value = 0;
    if (s.mode() == FNMode::Coloured) {
        if (t.mode() != FNMode::Coloured || !(t.colours() == s.colours().plus_colour(colour_i)))
            throw Error(errc::bad_input, "stabilization target must be the source with one more point of colour " +
                                             std::to_string(colour_i));
        new_value = colour_i;
    } else {
        if (t.mode() != FNMode::SymPattern || t.total_weight() != s.total_weight() + 1)
            throw Error(errc::bad_input, "stabilization target must add one point of multiplicity one");
        new_value = 1;
    }

    ChainMap f;
    f.src = &src.complex;
    f.tgt = &tgt.complex;
    f.degree_shift = 2;
    f.kind = ChainMapKind::CochainDual;
    f.mats.resize(static_cast<size_t>(src.complex.top_degree() + 1));
    for (int d = 0; d <= src.complex.top_degree(); ++d) {
        SparseMat m(tgt.complex.dim(d + 2), src.complex.dim(d));
        const auto& row = src.cells[static_cast<size_t>(d)];
        for (int c = 0; c < static_cast<int>(row.size()); ++c) {
            const FNCell& cell = row[static_cast<size_t>(c)];
            FNCell image;
            image.columns.reserve(cell.columns.size() + 1);
            image.columns.push_back({new_value});
            image.columns.insert(image.columns.end(), cell.columns.begin(), cell.columns.end());
            int r = tgt.cell_index(image);
            if (r < 0)
                throw Error(errc::not_a_chain_map,
                            "stabilized cell " + image.to_string() + " missing from target complex");
            m.add(r, c, cell.num_columns() % 2 == 0 ? 1 : -1);
        }
        m.finalize();
        f.mats[static_cast<size_t>(d)] = std::move(m);
    }
    f.validate();
    return f;
}

} // namespace symstrat
