#pragma once

#include <compare>
#include <string>
#include <vector>

#include "symstrat/errors.hpp"

namespace symstrat {

/// An integer partition, stored weakly decreasing. The empty partition is the
/// unique partition of 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    /// Parses comma-separated positive integers in any order, e.g. "1,4,4".
    static Partition parse(const std::string& csv);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    int parts_count() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }

    /// Display form in ascending order, e.g. "1+4+4"; "0" for the empty partition.
    std::string to_string() const;
    /// Canonical CSV (weakly decreasing), e.g. "4,4,1".
    std::string to_csv() const;

    auto operator<=>(const Partition& other) const { return parts_ <=> other.parts_; }
    bool operator==(const Partition& other) const { return parts_ == other.parts_; }

private:
    std::vector<int> parts_; // weakly decreasing, all >= 1
    int n_ = 0;
};

/// Colour counts of a coloured configuration space. Entries are >= 0 and order
/// matters for indexing; trailing zeros do not change the space.
class ColourVector {
public:
    ColourVector() = default;
    explicit ColourVector(std::vector<int> counts);

    /// Parses comma-separated non-negative integers, order preserved.
    static ColourVector parse(const std::string& csv);

    const std::vector<int>& counts() const { return counts_; }
    int norm() const { return norm_; }
    int size() const { return static_cast<int>(counts_.size()); }
    /// 1-based colour access; colours past the stored length count 0.
    int at(int colour) const;

    /// v + e_i (1-based). Extends the vector when colour == size() + 1.
    ColourVector plus_colour(int colour) const;
    /// Drops trailing zeros.
    ColourVector trimmed() const;

    std::string to_csv() const;
    bool operator==(const ColourVector& other) const = default;

private:
    std::vector<int> counts_;
    int norm_ = 0;
};

/// All partitions of n, each exactly once, in descending lexicographic order.
std::vector<Partition> enumerate_partitions(int n);

/// Entry i counts the parts of lambda equal to i; length = largest part.
ColourVector multiplicity_vector(const Partition& lambda);

/// True iff `coarse` can be obtained from `fine` by adding together groups of
/// parts. Throws MismatchedTotal when the two partition different totals.
bool is_subpartition(const Partition& coarse, const Partition& fine);

/// The partition 1^j lambda.
Partition prepend_ones(const Partition& lambda, int j);

} // namespace symstrat
