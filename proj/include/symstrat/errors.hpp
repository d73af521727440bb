#pragma once

#include <stdexcept>
#include <string>

namespace symstrat {

// Error codes map onto CLI exit classes: usage errors exit 2, internal
// invariant violations exit 3, everything else is an ordinary failure.
enum class errc {
    mismatched_total,
    dimension_too_small,
    index_out_of_bounds,
    non_integral_result,
    size_limit_exceeded,
    d_squared_nonzero,
    not_a_chain_map,
    filtration_violation,
    integral_duality_unavailable,
    cache_io,
    bad_input,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

    bool is_internal() const {
        return code_ == errc::d_squared_nonzero || code_ == errc::not_a_chain_map ||
               code_ == errc::non_integral_result || code_ == errc::filtration_violation;
    }

private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::mismatched_total: return "MismatchedTotal";
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::index_out_of_bounds: return "IndexOutOfBounds";
    case errc::non_integral_result: return "NonIntegralResult";
    case errc::size_limit_exceeded: return "SizeLimitExceeded";
    case errc::d_squared_nonzero: return "DSquaredNonzero";
    case errc::not_a_chain_map: return "NotAChainMap";
    case errc::filtration_violation: return "FiltrationViolation";
    case errc::integral_duality_unavailable: return "IntegralDualityUnavailable";
    case errc::cache_io: return "CacheIO";
    case errc::bad_input: return "BadInput";
    }
    return "Unknown";
}

} // namespace symstrat
