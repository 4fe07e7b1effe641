#pragma once

// Append-only on-disk memo for strip entropies, one JSON object per line,
// keyed by (geometry hash, width, cutoff, quadrature rule). A corrupt trailing
// line (torn write) is tolerated and truncated away on open; appends happen
// under an advisory flock so concurrent writers do not interleave.

#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "holo/measures.hpp"

namespace holo {

class ResultCache {
public:
    explicit ResultCache(std::string path) : path_(std::move(path)) { load(); }

    std::optional<CachedStrip> get(const EntropyKey& key) const {
        std::lock_guard lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void put(const EntropyKey& key, const CachedStrip& value) {
        {
            std::lock_guard lock(mutex_);
            if (!map_.emplace(key, value).second) return;  // already persisted
        }
        append(encode_line(key, value));
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return map_.size();
    }

    const std::string& path() const { return path_; }

    // geometry hash | op | width | cutoff | quadrature rule
    static std::string key_string(const EntropyKey& k) {
        char head[32];
        std::snprintf(head, sizeof head, "%016llx", static_cast<unsigned long long>(k.geometry));
        return std::string(head) + "|strip_entropy|" + format_sig17(k.width) + "|" +
               format_sig17(k.cutoff) + "|" + std::to_string(k.node_count) + "|" +
               format_sig17(k.rel_tol);
    }

private:
    static std::string encode_line(const EntropyKey& k, const CachedStrip& v) {
        std::string line = "{\"k\":\"" + key_string(k) + "\",\"z\":" + format_sig17(v.z_star) +
                           ",\"a\":" + format_sig17(v.area) + ",\"b\":\"" +
                           (v.branch == SurfaceBranch::ConnectedU ? "c" : "w") + "\"}\n";
        return line;
    }

    static std::optional<EntropyKey> parse_key(const std::string& s) {
        EntropyKey k;
        std::size_t pos = 0;
        auto next = [&](char sep) -> std::optional<std::string> {
            const std::size_t end = s.find(sep, pos);
            if (end == std::string::npos) return std::nullopt;
            std::string part = s.substr(pos, end - pos);
            pos = end + 1;
            return part;
        };
        try {
            auto geom = next('|');
            auto op = next('|');
            auto width = next('|');
            auto cutoff = next('|');
            auto nodes = next('|');
            if (!geom || !op || !width || !cutoff || !nodes || pos >= s.size())
                return std::nullopt;
            if (*op != "strip_entropy") return std::nullopt;
            k.geometry = std::stoull(*geom, nullptr, 16);
            k.width = std::stod(*width);
            k.cutoff = std::stod(*cutoff);
            k.node_count = std::stoi(*nodes);
            k.rel_tol = std::stod(s.substr(pos));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return k;
    }

    void load() {
        std::ifstream in(path_, std::ios::binary);
        if (!in) return;  // nothing cached yet
        std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        std::size_t line_start = 0;
        std::size_t good_end = 0;
        while (line_start < content.size()) {
            std::size_t nl = content.find('\n', line_start);
            const bool terminated = nl != std::string::npos;
            if (!terminated) nl = content.size();
            const std::string line = content.substr(line_start, nl - line_start);
            if (!terminated || !ingest_line(line)) break;
            good_end = nl + 1;
            line_start = good_end;
        }
        if (good_end < content.size()) truncate_file(good_end);
    }

    bool ingest_line(const std::string& line) {
        if (line.empty()) return true;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) return false;
        if (!j.contains("k") || !j.contains("z") || !j.contains("a") || !j.contains("b"))
            return false;
        const auto key = parse_key(j.at("k").get<std::string>());
        if (!key) return false;
        CachedStrip v;
        try {
            v.z_star = j.at("z").get<double>();
            v.area = j.at("a").get<double>();
            const std::string b = j.at("b").get<std::string>();
            if (b == "c")
                v.branch = SurfaceBranch::ConnectedU;
            else if (b == "w")
                v.branch = SurfaceBranch::WallDisconnected;
            else
                return false;
        } catch (const nlohmann::json::exception&) {
            return false;
        }
        map_.emplace(*key, v);
        return true;
    }

    void truncate_file(std::size_t size) {
        FILE* f = std::fopen(path_.c_str(), "r+b");
        if (!f) return;
        flock(fileno(f), LOCK_EX);
        if (ftruncate(fileno(f), static_cast<off_t>(size)) != 0) {
            // leave the tail in place; it will be skipped again next open
        }
        flock(fileno(f), LOCK_UN);
        std::fclose(f);
    }

    void append(const std::string& line) {
        FILE* f = std::fopen(path_.c_str(), "ab");
        if (!f) throw IoError("cannot append to cache file: " + path_);
        flock(fileno(f), LOCK_EX);
        std::fwrite(line.data(), 1, line.size(), f);
        std::fflush(f);
        flock(fileno(f), LOCK_UN);
        std::fclose(f);
    }

    std::string path_;
    mutable std::mutex mutex_;
    std::unordered_map<EntropyKey, CachedStrip, EntropyKeyHash> map_;
};

// Scoped wiring of a ResultCache behind the in-memory entropy memo:
// misses fall through to the disk cache, fresh results are written through.
class ScopedCacheBinding {
public:
    explicit ScopedCacheBinding(ResultCache& cache) {
        EntropyCache::global().set_store(
            [&cache](const EntropyKey& k) { return cache.get(k); },
            [&cache](const EntropyKey& k, const CachedStrip& v) { cache.put(k, v); });
    }
    ~ScopedCacheBinding() { EntropyCache::global().clear_store(); }
    ScopedCacheBinding(const ScopedCacheBinding&) = delete;
    ScopedCacheBinding& operator=(const ScopedCacheBinding&) = delete;
};

}  // namespace holo
