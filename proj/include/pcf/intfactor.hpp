#ifndef PCF_INTFACTOR_HPP
#define PCF_INTFACTOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace pcf {

using std::int64_t;
using std::uint64_t;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m);

/* Deterministic Miller-Rabin, valid for all 64-bit inputs. */
bool is_prime_u64(uint64_t n);

/* Prime factorization of n >= 1, (prime, exponent) pairs with primes
 * ascending.  Trial division for small primes, Brent's rho for the rest. */
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

/* Largest e with p^e | n (n != 0, p >= 2). */
int valuation(int64_t n, int64_t p);

bool is_squarefree(int64_t n);

} // namespace pcf

#endif
