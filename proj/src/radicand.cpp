#include "pcf/radicand.hpp"

#include <algorithm>
#include <string>

#include "pcf/intfactor.hpp"

namespace pcf {

const char* species_name(species_t s)
{
    switch (s) {
    case species_t::s1a:
        return "1a";
    case species_t::s1b:
        return "1b";
    default:
        return "2";
    }
}

radicand normalize(int64_t m)
{
    if (m < 2)
        throw not_a_cubic_field("radicand must be an integer >= 2, got " + std::to_string(m));
    int64_t a = 1, b = 1;
    for (auto& [p, e] : factorize(m)) {
        switch (e % 3) {
        case 1:
            a *= p;
            break;
        case 2:
            b *= p;
            break;
        default:
            break;
        }
    }
    if (a == 1 && b == 1)
        throw not_a_cubic_field(std::to_string(m) + " is a perfect cube");
    if (a < b)
        std::swap(a, b); /* pass to the conjugate generator */
    radicand r;
    r.a = a;
    r.b = b;
    r.d = a * b * b;
    r.dbar = a * a * b;
    if (r.d % 3 == 0)
        r.species = species_t::s1a;
    else if (r.d % 9 == 1 || r.d % 9 == 8)
        r.species = species_t::s2;
    else
        r.species = species_t::s1b;
    const int64_t ab = a * b;
    r.f = (r.species == species_t::s2) ? ab : 3 * ab;
    r.R = (r.species == species_t::s1b) ? 3 * ab : ab;
    for (auto& [p, e] : factorize(ab))
        r.ab_primes.push_back(p);
    return r;
}

norm_split canonical_split(const radicand& r, int64_t n)
{
    if (n < 1)
        throw not_a_principal_factor_norm("norm must be >= 1, got " + std::to_string(n));
    norm_split s;
    s.n = n;
    for (auto& [p, e] : factorize(n)) {
        if (e > 2)
            throw not_a_principal_factor_norm(std::to_string(n) + " has a cube factor " + std::to_string(p) + "^3");
        if (p == 3 && r.a % 3 != 0 && r.b % 3 != 0) {
            if (r.species != species_t::s1b)
                throw not_a_principal_factor_norm("3 divides " + std::to_string(n) + " but 3 is not a valid norm prime for species " + species_name(r.species));
            s.v = e;
            continue;
        }
        if (r.a % p == 0) {
            (e == 1 ? s.d1 : s.d2) *= p;
        } else if (r.b % p == 0) {
            (e == 1 ? s.d4 : s.d5) *= p;
        } else {
            throw not_a_principal_factor_norm(std::to_string(p) + " divides " + std::to_string(n) + " but is unramified in the field of " + std::to_string(r.d));
        }
    }
    s.d3 = r.a / (s.d1 * s.d2);
    s.d6 = r.b / (s.d4 * s.d5);
    return s;
}

namespace {

/* Product 3^e0 * prod slot_i^{e_i} with all exponents already reduced mod 3;
 * exactly the cube-free class representative of the corresponding coset
 * member, because the slots are pairwise coprime and squarefree. */
int64_t ent(const norm_split& s, int e0, int e1, int e2, int e3, int e4, int e5, int e6)
{
    static const auto ipow = [](int64_t x, int e) {
        int64_t r = 1;
        while (e--)
            r *= x;
        return r;
    };
    return ipow(3, e0) * ipow(s.d1, e1) * ipow(s.d2, e2) * ipow(s.d3, e3) * ipow(s.d4, e4) * ipow(s.d5, e5) * ipow(s.d6, e6);
}

} // namespace

norm_cosets coset_norms(const norm_split& s)
{
    const int v = s.v % 3;
    const int w = (2 * v) % 3;
    norm_cosets c;
    c.trivial = {ent(s, 0, 0, 0, 0, 0, 0, 0),
                 ent(s, 0, 1, 1, 1, 2, 2, 2),
                 ent(s, 0, 2, 2, 2, 1, 1, 1)};
    c.first = {ent(s, v, 1, 2, 0, 1, 2, 0),
               ent(s, v, 2, 0, 1, 0, 1, 2),
               ent(s, v, 0, 1, 2, 2, 0, 1)};
    c.second = {ent(s, w, 2, 1, 0, 2, 1, 0),
                ent(s, w, 0, 2, 1, 1, 0, 2),
                ent(s, w, 1, 0, 2, 0, 2, 1)};
    c.minimal_first = *std::min_element(c.first.begin(), c.first.end());
    c.minimal_second = *std::min_element(c.second.begin(), c.second.end());
    return c;
}

coset_units congruence_invariants(const norm_split& s)
{
    const auto m3 = [](int64_t x) { return static_cast<int>(x % 3); };
    const int p1 = m3(m3(s.d1) * m3(s.d3) * m3(s.d4) * m3(s.d5));
    const int p2 = m3(m3(s.d2) * m3(s.d1) * m3(s.d4) * m3(s.d6));
    if (p1 == 0 || p2 == 0)
        throw three_divides_invariant("mod-3 unit invariant undefined: 3 divides a slot product for norm " + std::to_string(s.n));
    return {p1 == 1 ? 1 : -1, p2 == 1 ? 1 : -1};
}

} // namespace pcf
