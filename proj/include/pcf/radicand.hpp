#ifndef PCF_RADICAND_HPP
#define PCF_RADICAND_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "pcf/errors.hpp"

namespace pcf {

using std::int64_t;

/* Splitting behaviour of 3, read off d mod 9. */
enum class species_t { s1a, s1b, s2 };

const char* species_name(species_t s); // "1a", "1b", "2"

/* A normalized pure cubic radicand d = a b^2 with a > b >= 1, a and b
 * squarefree and coprime, plus the invariants that depend only on d. */
struct radicand {
    int64_t d = 0;
    int64_t a = 1;
    int64_t b = 1;
    int64_t dbar = 0; // a^2 b, the radicand of the conjugate generator
    species_t species = species_t::s2;
    int64_t f = 0; // conductor of the degree-3 relative extension over Q(zeta3)
    int64_t R = 0; // product of the ramified primes away from the 3-adic part
    std::vector<int64_t> ab_primes; // primes of a*b, ascending
};

/* Strip the cube part of m, split into a*b^2, swap to enforce a > b.
 * Throws not_a_cubic_field if m < 2 or m is a perfect cube. */
radicand normalize(int64_t m);

/* Slots of a principal factor norm n = 3^v d1 d2^2 d4 d5^2 relative to
 * d = a b^2: a = d1 d2 d3 and b = d4 d5 d6, the slot of each prime decided by
 * its exponent in n (1 -> d1/d4, 2 -> d2/d5, 0 -> d3/d6).  v is the exponent
 * of 3 when 3 does not divide ab; it is nonzero only for species 1b. */
struct norm_split {
    int64_t d1 = 1, d2 = 1, d3 = 1;
    int64_t d4 = 1, d5 = 1, d6 = 1;
    int v = 0;
    int64_t n = 1;
};

/* Throws not_a_principal_factor_norm if n is divisible by a prime outside
 * 3ab, by a cube, or by 3 in a species where that cannot happen. */
norm_split canonical_split(const radicand& r, int64_t n);

/* The three coset classes of ambiguous-element norms modulo rational cubes:
 * the class of 1 and the two classes containing n and n^2.  Entry order in
 * each row is (reduced class rep of c, of c*d, of c*dbar). */
struct norm_cosets {
    std::array<int64_t, 3> trivial;
    std::array<int64_t, 3> first;
    std::array<int64_t, 3> second;
    int64_t minimal_first = 0;  // least entry of first
    int64_t minimal_second = 0; // least entry of second
};

norm_cosets coset_norms(const norm_split& s);

/* u1 = d1 d3 d4 d5 mod 3 and u2 = d1 d2 d4 d6 mod 3, mapped into {+1,-1}.
 * Throws three_divides_invariant when 3 divides either product (species 1a
 * slots can contain 3). */
struct coset_units {
    int u1 = 1;
    int u2 = 1;
};

coset_units congruence_invariants(const norm_split& s);

} // namespace pcf

#endif
