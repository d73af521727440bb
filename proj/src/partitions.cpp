#include "symstrat/partitions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace symstrat {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
        if (p < 1) throw Error(errc::bad_input, "partition parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::parse(const std::string& csv) {
    std::vector<int> parts;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // trim spaces
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw Error(errc::bad_input, "empty partition token in '" + csv + "'");
        tok = tok.substr(a, b - a + 1);
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw Error(errc::bad_input, "non-integer partition token '" + tok + "'");
        }
        if (pos != tok.size()) throw Error(errc::bad_input, "non-integer partition token '" + tok + "'");
        if (v < 1) throw Error(errc::bad_input, "non-positive partition token '" + tok + "'");
        parts.push_back(v);
    }
    if (parts.empty() && !csv.empty())
        throw Error(errc::bad_input, "cannot parse partition '" + csv + "'");
    return Partition(std::move(parts));
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "0";
    std::string out;
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
        if (!out.empty()) out += '+';
        out += std::to_string(*it);
    }
    return out;
}

std::string Partition::to_csv() const {
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

ColourVector::ColourVector(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) throw Error(errc::bad_input, "colour counts must be non-negative");
    }
    norm_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

ColourVector ColourVector::parse(const std::string& csv) {
    std::vector<int> counts;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw Error(errc::bad_input, "empty colour token in '" + csv + "'");
        tok = tok.substr(a, b - a + 1);
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw Error(errc::bad_input, "non-integer colour token '" + tok + "'");
        }
        if (pos != tok.size()) throw Error(errc::bad_input, "non-integer colour token '" + tok + "'");
        if (v < 0) throw Error(errc::bad_input, "negative colour count '" + tok + "'");
        counts.push_back(v);
    }
    return ColourVector(std::move(counts));
}

int ColourVector::at(int colour) const {
    if (colour < 1) throw Error(errc::index_out_of_bounds, "colour index must be >= 1");
    if (colour > size()) return 0;
    return counts_[colour - 1];
}

ColourVector ColourVector::plus_colour(int colour) const {
    if (colour < 1 || colour > size() + 1)
        throw Error(errc::index_out_of_bounds,
                    "colour " + std::to_string(colour) + " out of range for vector of length " +
                        std::to_string(size()));
    std::vector<int> counts = counts_;
    if (colour == size() + 1) counts.push_back(0);
    counts[colour - 1] += 1;
    return ColourVector(std::move(counts));
}

ColourVector ColourVector::trimmed() const {
    std::vector<int> counts = counts_;
    while (!counts.empty() && counts.back() == 0) counts.pop_back();
    return ColourVector(std::move(counts));
}

std::string ColourVector::to_csv() const {
    std::string out;
    for (size_t i = 0; i < counts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(counts_[i]);
    }
    return out;
}

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 0) throw Error(errc::bad_input, "enumerate_partitions: n must be >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    // Descending lexicographic order falls out of always trying the largest
    // admissible next part first.
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n == 0 ? 1 : n);
    return out;
}

ColourVector multiplicity_vector(const Partition& lambda) {
    std::vector<int> counts(lambda.largest(), 0);
    for (int p : lambda.parts()) counts[p - 1] += 1;
    return ColourVector(std::move(counts));
}

namespace {

// Depth-first block assignment: place the parts of `fine` (largest first) into
// bins whose capacities start at the parts of `coarse` and must be filled
// exactly. Memoized on (item index, sorted remaining capacities); bins with
// equal remaining capacity are interchangeable, so only the first of each
// capacity value is tried.
struct SubpartitionSearch {
    std::vector<int> items; // parts of fine, descending
    std::map<std::pair<size_t, std::vector<int>>, bool> memo;

    bool solve(size_t idx, std::vector<int>& caps) {
        if (idx == items.size()) return true;
        std::vector<int> key = caps;
        std::sort(key.begin(), key.end());
        auto mit = memo.find({idx, key});
        if (mit != memo.end()) return mit->second;

        bool ok = false;
        int item = items[idx];
        int last_cap = -1;
        for (size_t b = 0; b < caps.size() && !ok; ++b) {
            if (caps[b] < item || caps[b] == last_cap) continue;
            last_cap = caps[b];
            caps[b] -= item;
            if (solve(idx + 1, caps)) ok = true;
            caps[b] += item;
        }
        memo[{idx, std::move(key)}] = ok;
        return ok;
    }
};

} // namespace

bool is_subpartition(const Partition& coarse, const Partition& fine) {
    if (coarse.n() != fine.n())
        throw Error(errc::mismatched_total, "is_subpartition: totals differ (" +
                                                std::to_string(coarse.n()) + " vs " +
                                                std::to_string(fine.n()) + ")");
    if (coarse.parts_count() > fine.parts_count()) return false;
    if (coarse == fine) return true;
    SubpartitionSearch search;
    search.items = fine.parts();
    std::vector<int> caps = coarse.parts();
    return search.solve(0, caps);
}

Partition prepend_ones(const Partition& lambda, int j) {
    if (j < 0) throw Error(errc::bad_input, "prepend_ones: j must be >= 0");
    std::vector<int> parts = lambda.parts();
    parts.insert(parts.end(), static_cast<size_t>(j), 1);
    return Partition(std::move(parts));
}

} // namespace symstrat
