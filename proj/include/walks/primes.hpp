#pragma once
#include <cstdint>
#include <vector>

namespace walks {

bool is_prime_u64(uint64_t n);

// The k largest primes below 2^62, in descending order.  Deterministic; can be
// overridden for reproducibility experiments by the WALKS_PRIME_SCHEDULE
// environment variable (comma-separated primes).
std::vector<uint64_t> prime_schedule(int k);

}  // namespace walks
