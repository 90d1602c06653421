#ifndef ZETALAB_DIOPHANTINE_HPP
#define ZETALAB_DIOPHANTINE_HPP

#include <cstdint>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {

/// Distance from x to the nearest integer, in [0, 1/2].
double dist_nearest_int(double x);

/// All primes <= z in increasing order (sieve of Eratosthenes). Requires z >= 2.
std::vector<std::int64_t> primes_upto(double z);

/// Parameters of the simultaneous-approximation scan: accept tau when
///   max_{p_m <= z} || tau*log(p_m)/(2pi) - m/(a-b) || < delta
/// over the grid tau = 0, step, 2*step, ..., T.
struct KroneckerQuery {
    double z = 10.0;
    RationalShift shift{3, 1};
    double delta = 0.2;
    double T = 1e4;
    double step = 0.01;

    void validate() const;
};

struct TauHits {
    std::vector<double> taus;   // accepted grid points, ascending
    KroneckerQuery query;
    std::int64_t grid_size = 0; // number of grid points scanned
};

/// Deterministic grid scan. Output is independent of the worker count.
TauHits kronecker_scan(const KroneckerQuery& query, int workers = 1);

/// Accepted fraction of the scan grid; empirical density of the hit set.
double hit_density(const TauHits& hits);

/// Re-check one tau against the max-condition with fresh arithmetic.
bool kronecker_verify(double tau, const KroneckerQuery& query);

}  // namespace zetalab

#endif
