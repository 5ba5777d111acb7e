#include "walks/primes.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "walks/ring.hpp"

namespace walks {

// Deterministic Miller-Rabin; this base set is exact for all n < 3.3e24.
bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<uint64_t> prime_schedule(int k) {
  if (const char* env = std::getenv("WALKS_PRIME_SCHEDULE")) {
    std::vector<uint64_t> out;
    std::string s(env);
    size_t pos = 0;
    while (pos < s.size() && (int)out.size() < k) {
      size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      uint64_t p = std::stoull(s.substr(pos, comma - pos));
      if (!is_prime_u64(p) || p >= (1ull << 62))
        throw std::runtime_error("WALKS_PRIME_SCHEDULE: entry not a prime below 2^62");
      out.push_back(p);
      pos = comma + 1;
    }
    if ((int)out.size() < k) throw std::runtime_error("WALKS_PRIME_SCHEDULE: too few primes");
    return out;
  }
  std::vector<uint64_t> out;
  uint64_t n = (1ull << 62) - 1;
  while ((int)out.size() < k) {
    if (is_prime_u64(n)) out.push_back(n);
    n -= 2;
  }
  return out;
}

}  // namespace walks
