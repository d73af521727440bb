#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace symstrat {

std::string sha256_hex(std::string_view data);

/// Content-addressed JSON store. Keys are hashes of canonical serializations;
/// writes go through a temp file and rename into place so concurrent writers
/// cannot tear each other's entries. A default-constructed cache is disabled.
class ResultCache {
public:
    ResultCache() = default;
    explicit ResultCache(std::filesystem::path dir);

    /// Directory from SYMSTRAT_CACHE, or ".symstrat-cache" when unset. An
    /// explicit override wins; "off" disables caching entirely.
    static ResultCache from_env(const std::string& override_dir = "");

    bool enabled() const { return enabled_; }
    const std::filesystem::path& dir() const { return dir_; }

    std::optional<nlohmann::json> get(const std::string& key) const;
    void put(const std::string& key, const nlohmann::json& value) const;

private:
    std::filesystem::path dir_;
    bool enabled_ = false;
};

} // namespace symstrat
