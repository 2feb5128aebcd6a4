#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "pcf/intfactor.hpp"
#include "pcf/radicand.hpp"

using namespace pcf;

namespace {

/* Independent oracle: cube-free class representative by full factorization. */
int64_t cube_free(int64_t x)
{
    int64_t r = 1;
    for (auto& [p, e] : factorize(x))
        for (int i = 0; i < e % 3; ++i)
            r *= p;
    return r;
}

} // namespace

TEST_CASE("factorization utilities")
{
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1000000007ull));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561)); /* Carmichael */
    auto f = factorize(1430);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == std::pair<int64_t, int>{2, 1});
    CHECK(f[3] == std::pair<int64_t, int>{13, 1});
    CHECK(factorize(1).empty());
    CHECK(valuation(63, 3) == 2);
    CHECK(is_squarefree(1430));
    CHECK_FALSE(is_squarefree(12));
    /* big semiprime exercises the rho path */
    auto g = factorize(1000003LL * 1000033LL);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == 1000003);
    CHECK(g[1].first == 1000033);
}

TEST_CASE("normalize: fixed examples")
{
    auto r = normalize(12);
    CHECK(r.d == 12);
    CHECK(r.a == 3);
    CHECK(r.b == 2);
    CHECK(r.dbar == 18);
    CHECK(r.species == species_t::s1a);
    CHECK(r.f == 18);
    CHECK(r.R == 6);

    /* 18 = 2*3^2 lands in the same field as 12 */
    CHECK(normalize(18).d == 12);

    auto t = normalize(1430);
    CHECK(t.a == 1430);
    CHECK(t.b == 1);
    CHECK(t.species == species_t::s2);
    CHECK(t.f == 1430);
    CHECK(t.R == 1430);
    CHECK(t.ab_primes == std::vector<int64_t>{2, 5, 11, 13});

    auto u = normalize(833); /* 7^2 * 17 */
    CHECK(u.a == 17);
    CHECK(u.b == 7);
    CHECK(u.species == species_t::s1b);
    CHECK(u.f == 3 * 119);
    CHECK(u.R == 3 * 119);

    CHECK(normalize(2).species == species_t::s1b);
    CHECK(normalize(10).species == species_t::s2);

    CHECK_THROWS_AS(normalize(1), not_a_cubic_field);
    CHECK_THROWS_AS(normalize(0), not_a_cubic_field);
    CHECK_THROWS_AS(normalize(-5), not_a_cubic_field);
    CHECK_THROWS_AS(normalize(27), not_a_cubic_field);
    CHECK_THROWS_AS(normalize(64), not_a_cubic_field);
}

TEST_CASE("normalize: invariance and shape over a range")
{
    for (int64_t m = 2; m <= 300; ++m) {
        bool cube = false;
        try {
            auto r = normalize(m);
            CHECK(r.d == r.a * r.b * r.b);
            CHECK(r.a > 0);
            CHECK(r.a > r.b - 1); /* a >= b and never equal unless 1 */
            CHECK(std::gcd(r.a, r.b) == 1);
            CHECK(is_squarefree(r.a));
            CHECK(is_squarefree(r.b));
            CHECK(normalize(r.d).d == r.d);
            CHECK(normalize(m * 8).d == r.d);
            CHECK(normalize(m * 27).d == r.d);
            /* species matches the residue of d mod 9 */
            int dm = static_cast<int>(r.d % 9);
            if (r.d % 3 == 0)
                CHECK(r.species == species_t::s1a);
            else if (dm == 1 || dm == 8)
                CHECK(r.species == species_t::s2);
            else
                CHECK(r.species == species_t::s1b);
        } catch (const not_a_cubic_field&) {
            cube = true;
        }
        int64_t c = static_cast<int64_t>(std::llround(std::cbrt(static_cast<double>(m))));
        CHECK(cube == (c * c * c == m));
    }
}

TEST_CASE("canonical_split: fixed examples")
{
    auto r = normalize(1430);
    auto s = canonical_split(r, 1100);
    CHECK(s.d1 == 11);
    CHECK(s.d2 == 10);
    CHECK(s.d3 == 13);
    CHECK(s.d4 == 1);
    CHECK(s.d5 == 1);
    CHECK(s.d6 == 1);
    CHECK(s.v == 0);

    auto u = normalize(833);
    auto t = canonical_split(u, 63);
    CHECK(t.v == 2);
    CHECK(t.d4 == 7);
    CHECK(t.d3 == 17);
    CHECK(t.d1 * t.d2 * t.d5 * t.d6 == 1);

    auto w = canonical_split(normalize(12), 1);
    CHECK(w.d3 == 3);
    CHECK(w.d6 == 2);
    CHECK(w.d1 * w.d2 * w.d4 * w.d5 == 1);

    /* 3 is an ordinary slot prime when it divides ab */
    auto x = canonical_split(normalize(12), 9);
    CHECK(x.v == 0);
    CHECK(x.d2 == 3);

    CHECK_THROWS_AS(canonical_split(r, 7), not_a_principal_factor_norm);
    CHECK_THROWS_AS(canonical_split(r, 8), not_a_principal_factor_norm);
    CHECK_THROWS_AS(canonical_split(r, 3), not_a_principal_factor_norm); /* species 2 */
    CHECK_THROWS_AS(canonical_split(r, 0), not_a_principal_factor_norm);
}

TEST_CASE("coset_norms: fixed examples")
{
    auto r = normalize(1430);
    auto c = coset_norms(canonical_split(r, 1100));
    CHECK(c.trivial == std::array<int64_t, 3>{1, 1430, 2044900});
    CHECK(c.first == std::array<int64_t, 3>{1100, 1573, 1690});
    CHECK(c.second == std::array<int64_t, 3>{1210, 1300, 1859});
    CHECK(c.minimal_first == 1100);
    CHECK(c.minimal_second == 1210);

    auto u = normalize(833);
    auto cu = coset_norms(canonical_split(u, 63));
    CHECK(cu.first == std::array<int64_t, 3>{63, 153, 127449});
    CHECK(cu.second == std::array<int64_t, 3>{147, 357, 867});
    CHECK(cu.minimal_first == 63);
    CHECK(cu.minimal_second == 147);

    /* degenerate split of the trivial norm */
    auto cd = coset_norms(canonical_split(normalize(12), 1));
    CHECK(cd.first[0] == 1);
    CHECK(cd.trivial == cd.first);
}

TEST_CASE("coset_norms: agrees with direct cube-free reduction")
{
    /* oracle: each entry is the cube-free part of n * {1, d, dbar} and
     * n^2 * {1, d, dbar}; checked across fields of all species and many
     * admissible norms */
    for (int64_t m : {2, 5, 12, 15, 60, 63, 350, 833, 1078, 1430, 1573, 6370}) {
        auto r = normalize(m);
        std::vector<int64_t> ns = {1};
        /* all norms n = 3^v * prod p^e with v, e in {0,1,2} over the primes
         * of ab, capped for the bigger fields */
        std::vector<int64_t> gens = r.ab_primes;
        bool three_free = (r.a % 3 != 0 && r.b % 3 != 0);
        if (three_free && r.species == species_t::s1b)
            gens.push_back(3);
        for (int64_t p : gens) {
            std::vector<int64_t> next;
            for (int64_t n : ns)
                for (int e = 0; e <= 2; ++e) {
                    int64_t v = n;
                    for (int i = 0; i < e; ++i)
                        v *= p;
                    next.push_back(v);
                }
            ns = next;
            if (ns.size() > 300)
                ns.resize(300);
        }
        for (int64_t n : ns) {
            auto s = canonical_split(r, n);
            CHECK(s.n == n);
            CHECK(s.d1 * s.d2 * s.d3 == r.a);
            CHECK(s.d4 * s.d5 * s.d6 == r.b);
            auto c = coset_norms(s);
            CHECK(c.trivial == std::array<int64_t, 3>{1, cube_free(r.d), cube_free(r.dbar)});
            int64_t rn = cube_free(n);
            CHECK(c.first == std::array<int64_t, 3>{rn, cube_free(n * r.d), cube_free(n * r.dbar)});
            CHECK(c.second == std::array<int64_t, 3>{cube_free(n * n), cube_free(n * n * r.d), cube_free(n * n * r.dbar)});
            CHECK(c.minimal_first == std::min({c.first[0], c.first[1], c.first[2]}));
            /* inverse class: the first coset of red(n^2) is the second coset of n */
            auto c2 = coset_norms(canonical_split(r, c.second[0]));
            CHECK(c2.first == c.second);
            CHECK(c2.second == c.first);
        }
    }
}

TEST_CASE("congruence_invariants")
{
    auto r = normalize(1430);
    auto u = congruence_invariants(canonical_split(r, 1100));
    CHECK(u.u1 == -1);
    CHECK(u.u2 == -1);

    auto v = congruence_invariants(canonical_split(normalize(2), 3));
    CHECK(v.u1 == -1);
    CHECK(v.u2 == 1);

    auto w = congruence_invariants(canonical_split(normalize(833), 63));
    /* d1 d3 d4 d5 = 17*7 = 119 = 2 mod 3, d1 d2 d4 d6 = 7 = 1 mod 3 */
    CHECK(w.u1 == -1);
    CHECK(w.u2 == 1);

    CHECK_THROWS_AS(congruence_invariants(canonical_split(normalize(12), 9)),
                    three_divides_invariant);

    /* trivial split gives (+1,+1) whenever defined */
    auto t = congruence_invariants(canonical_split(normalize(10), 1));
    CHECK(t.u1 == 1);
    CHECK(t.u2 == 1);
}
