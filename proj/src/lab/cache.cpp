#include "lab/cache.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <utility>
#include <vector>

namespace lab {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes, std::uint64_t state) {
    for (std::uint8_t b : bytes) {
        state ^= b;
        state *= kFnvPrime;
    }
    return state;
}

void push_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t double_bits(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    return bits;
}

double bits_double(std::uint64_t bits) {
    double x;
    std::memcpy(&x, &bits, sizeof x);
    return x;
}

std::uint64_t read_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

}  // namespace

std::size_t EvalCache::KeyHash::operator()(const Key& k) const {
    // splitmix-style finalizer over the two words
    std::uint64_t x = k.sigma_bits + 0x9e3779b97f4a7c15ULL * (k.t_bits + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
}

std::array<std::uint8_t, 16> EvalCache::fingerprint(const zetalab::EvalParams& params) {
    std::vector<std::uint8_t> bytes;
    for (char ch : std::string("zeta-eval-cache-v1")) bytes.push_back(static_cast<std::uint8_t>(ch));
    push_u64(bytes, static_cast<std::uint64_t>(params.series_terms_n));
    push_u64(bytes, static_cast<std::uint64_t>(params.bernoulli_order));
    push_u64(bytes, double_bits(params.target_abs_err));

    const std::uint64_t h1 = fnv1a(bytes, kFnvOffset);
    const std::uint64_t h2 = fnv1a(bytes, kFnvOffset ^ 0x9e3779b97f4a7c15ULL);
    std::array<std::uint8_t, 16> out;
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(h1 >> (8 * i));
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(8 + i)] = static_cast<std::uint8_t>(h2 >> (8 * i));
    return out;
}

std::string EvalCache::resolve_path(const std::string& out_dir) {
    const char* env = std::getenv("LAB_CACHE_DIR");
    const std::string dir = (env && *env) ? std::string(env) : out_dir;
    return dir + "/zeta_eval_cache.bin";
}

EvalCache::EvalCache(std::string path, const zetalab::EvalParams& params) : path_(std::move(path)) {
    const auto want = fingerprint(params);

    std::ifstream in(path_, std::ios::binary);
    if (!in.good()) {
        // fresh cache: write the header now so later appends line up
        std::ofstream out(path_, std::ios::binary);
        if (!out.good()) return;  // unwritable location: stay in bypass mode
        out.write(reinterpret_cast<const char*>(want.data()),
                  static_cast<std::streamsize>(want.size()));
        active_ = out.good();
        return;
    }

    std::array<std::uint8_t, 16> have{};
    in.read(reinterpret_cast<char*>(have.data()), static_cast<std::streamsize>(have.size()));
    if (in.gcount() != static_cast<std::streamsize>(have.size()) || have != want)
        return;  // parameter mismatch: bypass, leave the file as it is

    active_ = true;
    std::uintmax_t records = 0;
    std::uint8_t record[32];
    while (in.read(reinterpret_cast<char*>(record), sizeof record) &&
           in.gcount() == static_cast<std::streamsize>(sizeof record)) {
        Key key{read_u64(record), read_u64(record + 8)};
        const zetalab::Complex value(bits_double(read_u64(record + 16)),
                                     bits_double(read_u64(record + 24)));
        entries_.emplace(key, value);
        ++records;
    }
    in.close();

    // Drop a torn trailing record (interrupted append) so that future
    // appends start on a record boundary again.
    const std::uintmax_t valid = 16 + 32 * records;
    std::error_code ec;
    const std::uintmax_t actual = std::filesystem::file_size(path_, ec);
    if (!ec && actual > valid) std::filesystem::resize_file(path_, valid, ec);
}

bool EvalCache::lookup(double sigma, double t, zetalab::Complex* value) const {
    if (!active_) return false;
    const auto it = entries_.find(Key{double_bits(sigma), double_bits(t)});
    if (it == entries_.end()) return false;
    if (value) *value = it->second;
    return true;
}

void EvalCache::store(double sigma, double t, zetalab::Complex value) {
    if (!active_) return;
    const Key key{double_bits(sigma), double_bits(t)};
    if (!entries_.emplace(key, value).second) return;  // already present

    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out.good()) return;
    std::uint8_t record[32];
    const std::uint64_t words[4] = {key.sigma_bits, key.t_bits, double_bits(value.real()),
                                    double_bits(value.imag())};
    for (int w = 0; w < 4; ++w)
        for (int i = 0; i < 8; ++i)
            record[8 * w + i] = static_cast<std::uint8_t>(words[w] >> (8 * i));
    out.write(reinterpret_cast<const char*>(record), sizeof record);
}

}  // namespace lab
