#include "symstrat/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>

#include <openssl/evp.h>

#include "symstrat/errors.hpp"

namespace symstrat {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw Error(errc::cache_io, "sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)), enabled_(true) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(errc::cache_io, "cannot create cache directory " + dir_.string());
}

ResultCache ResultCache::from_env(const std::string& override_dir) {
    std::string dir = override_dir;
    if (dir.empty()) {
        const char* env = std::getenv("SYMSTRAT_CACHE");
        dir = env ? env : ".symstrat-cache";
    }
    if (dir == "off") return ResultCache();
    return ResultCache(std::filesystem::path(dir));
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    std::filesystem::path path = dir_ / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const std::exception&) {
        return std::nullopt; // treat a torn or stale entry as a miss
    }
}

void ResultCache::put(const std::string& key, const nlohmann::json& value) const {
    if (!enabled_) return;
    thread_local std::mt19937_64 rng(std::random_device{}());
    std::filesystem::path final_path = dir_ / (key + ".json");
    std::filesystem::path tmp_path = dir_ / (key + ".tmp." + std::to_string(rng()));
    {
        std::ofstream out(tmp_path);
        if (!out) throw Error(errc::cache_io, "cannot write cache entry " + tmp_path.string());
        out << value.dump();
    }
    std::error_code ec;
    std::filesystem::rename(tmp_path, final_path, ec);
    if (ec) {
        std::filesystem::remove(tmp_path, ec);
        throw Error(errc::cache_io, "cannot publish cache entry " + final_path.string());
    }
}

} // namespace symstrat
