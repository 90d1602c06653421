#include "zetalab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab {

double dist_nearest_int(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("dist_nearest_int: x must be finite");
    return std::abs(x - std::round(x));
}

std::vector<std::int64_t> primes_upto(double z) {
    if (!(z >= 2.0)) throw std::invalid_argument("primes_upto: z must be >= 2");
    auto limit = static_cast<std::int64_t>(std::floor(z));
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::int64_t> primes;
    for (std::int64_t n = 2; n <= limit; ++n) {
        if (composite[static_cast<std::size_t>(n)]) continue;
        primes.push_back(n);
        for (std::int64_t m = n * n; m <= limit; m += n)
            composite[static_cast<std::size_t>(m)] = true;
    }
    return primes;
}

void KroneckerQuery::validate() const {
    if (shift.q() == 0)
        throw DegenerateShift("KroneckerQuery: a = b leaves no target to approximate");
    if (!(z >= 2.0)) throw std::invalid_argument("KroneckerQuery: z must be >= 2");
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("KroneckerQuery: delta must lie in (0, 1/2)");
    if (!(T > 0.0)) throw std::invalid_argument("KroneckerQuery: T must be positive");
    if (!(step > 0.0)) throw std::invalid_argument("KroneckerQuery: step must be positive");
    // The fastest frequency is log(p_max)/2pi; a delta-window for it spans
    // at least delta * 2pi/log(z) in tau, and four samples per window keep
    // the grid from stepping over an acceptance interval entirely.
    double max_step = delta * (2.0 * std::numbers::pi / std::log(z)) / 4.0;
    if (step > max_step)
        throw std::invalid_argument("KroneckerQuery: step " + std::to_string(step) +
                                    " too coarse; need <= " + std::to_string(max_step) +
                                    " for z=" + std::to_string(z) +
                                    ", delta=" + std::to_string(delta));
}

namespace {

// Targets m/(a-b) mod 1 for m = 1..#primes, as exact small rationals.
std::vector<double> reduced_targets(std::size_t prime_count, const RationalShift& shift) {
    const std::int64_t q = shift.q();
    const std::int64_t qa = q > 0 ? q : -q;
    std::vector<double> targets(prime_count);
    for (std::size_t i = 0; i < prime_count; ++i) {
        std::int64_t m = static_cast<std::int64_t>(i) + 1;
        std::int64_t r = m % qa;
        if (q < 0) r = (qa - r) % qa;
        targets[i] = static_cast<double>(r) / static_cast<double>(qa);
    }
    return targets;
}

bool accepts(double tau, const std::vector<double>& freqs, const std::vector<double>& targets,
             double delta) {
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (dist_nearest_int(tau * freqs[i] - targets[i]) >= delta) return false;
    }
    return true;
}

}  // namespace

TauHits kronecker_scan(const KroneckerQuery& query, int workers) {
    query.validate();

    const auto primes = primes_upto(query.z);
    std::vector<double> freqs(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
        freqs[i] = std::log(static_cast<double>(primes[i])) / (2.0 * std::numbers::pi);
    const auto targets = reduced_targets(primes.size(), query.shift);

    // tau_j = j*step for j = 0..J with J*step <= T (tolerating rounding at the top).
    const auto last = static_cast<std::int64_t>(std::floor(query.T / query.step + 1e-9));

    constexpr std::int64_t kChunk = 1 << 16;
    const std::int64_t n_chunks = (last + 1 + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> chunk_hits(static_cast<std::size_t>(n_chunks));

    parallel_blocks(n_chunks, workers, [&](std::int64_t chunk) {
        const std::int64_t j_begin = chunk * kChunk;
        const std::int64_t j_end = std::min(last + 1, j_begin + kChunk);
        auto& out = chunk_hits[static_cast<std::size_t>(chunk)];
        for (std::int64_t j = j_begin; j < j_end; ++j) {
            const double tau = static_cast<double>(j) * query.step;
            if (accepts(tau, freqs, targets, query.delta)) out.push_back(tau);
        }
    });

    TauHits hits;
    hits.query = query;
    hits.grid_size = last + 1;
    for (const auto& chunk : chunk_hits)
        hits.taus.insert(hits.taus.end(), chunk.begin(), chunk.end());
    return hits;
}

double hit_density(const TauHits& hits) {
    if (hits.grid_size <= 0) return 0.0;
    return static_cast<double>(hits.taus.size()) / static_cast<double>(hits.grid_size);
}

bool kronecker_verify(double tau, const KroneckerQuery& query) {
    query.validate();
    const auto primes = primes_upto(query.z);
    const auto targets = reduced_targets(primes.size(), query.shift);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const double freq = std::log(static_cast<double>(primes[i])) / (2.0 * std::numbers::pi);
        if (dist_nearest_int(tau * freq - targets[i]) >= query.delta) return false;
    }
    return true;
}

}  // namespace zetalab
