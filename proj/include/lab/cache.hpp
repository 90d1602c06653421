#ifndef LAB_CACHE_HPP
#define LAB_CACHE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "zetalab/types.hpp"

namespace lab {

/// Append-only binary memo of zeta evaluations, keyed by the exact (sigma, t)
/// bit patterns.
///
/// File layout: a 16-byte fingerprint of the evaluation parameters (two
/// 64-bit FNV-1a hashes over the parameter fields and a format version),
/// then little-endian records of four doubles: sigma, t, Re zeta, Im zeta.
/// A file whose fingerprint does not match the current parameters is left
/// untouched and the cache runs in bypass mode (every lookup misses, stores
/// are dropped).
class EvalCache {
public:
    EvalCache(std::string path, const zetalab::EvalParams& params);

    bool lookup(double sigma, double t, zetalab::Complex* value) const;

    /// Appends the record to memory and file (no-op in bypass mode).
    void store(double sigma, double t, zetalab::Complex value);

    bool active() const { return active_; }
    std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
    const std::string& path() const { return path_; }

    static std::array<std::uint8_t, 16> fingerprint(const zetalab::EvalParams& params);

    /// Directory resolution: LAB_CACHE_DIR when set, else the output dir.
    static std::string resolve_path(const std::string& out_dir);

private:
    struct Key {
        std::uint64_t sigma_bits;
        std::uint64_t t_bits;
        bool operator==(const Key& o) const {
            return sigma_bits == o.sigma_bits && t_bits == o.t_bits;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    std::string path_;
    bool active_ = false;
    std::unordered_map<Key, zetalab::Complex, KeyHash> entries_;
};

}  // namespace lab

#endif
