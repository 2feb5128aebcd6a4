#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "pcf/intfactor.hpp"
#include "pcf/kummer.hpp"
#include "pcf/order.hpp"
#include "pcf/voronoi.hpp"

using namespace pcf;

namespace {

field_element el(const cubic_field& F, int64_t x, int64_t y, int64_t z)
{
    return field_element(F, x, y, z);
}

field_element chain_unit(const cubic_field& F, cubic_order::kind_t kind)
{
    cubic_order O = make_order(F, kind);
    chain_options opt;
    opt.stop = chain_stop::full_period;
    chain_result cr = run_chain(O, opt);
    REQUIRE(cr.fundamental_unit.has_value());
    return *cr.fundamental_unit;
}

cubic_order::kind_t home_order(const cubic_field& F)
{
    return F.r.species == species_t::s2 ? cubic_order::kind_t::suborder0
                                        : cubic_order::kind_t::maximal;
}

bool chain_has_hits(const cubic_field& F, cubic_order::kind_t kind)
{
    cubic_order O = make_order(F, kind);
    chain_options opt;
    opt.stop = chain_stop::full_period;
    return !run_chain(O, opt).pf_indices.empty();
}

int64_t mod_p(const mpq_class& q, int64_t p)
{
    int64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    REQUIRE(den != 0);
    int64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    return (int64_t)mulmod_u64(num, powmod_u64(den, p - 2, p), p);
}

/* re-verify a non-residue certificate from scratch: the published residues
 * really are a cube root of d and a primitive cube root of 1, and the reduced
 * element really lands on omega^chi under x -> x^((p-1)/3) */
void check_witness(const cubic_field& F, const field_element& w, const residue_witness& cert)
{
    int64_t p = cert.p;
    REQUIRE(p > 3);
    CHECK(is_prime_u64(p));
    int64_t c = p % 9;
    CHECK((c == 4 || c == 7));
    CHECK(powmod_u64(cert.r, 3, p) == (uint64_t)(F.r.d % p));
    CHECK(cert.omega != 1);
    CHECK(powmod_u64(cert.omega, 3, p) == 1);
    CHECK((cert.chi == 1 || cert.chi == 2));

    int64_t rbar = (int64_t)mulmod_u64(mulmod_u64(cert.r, cert.r, p),
                                       powmod_u64(F.r.b % p, p - 2, p), p);
    int64_t red = (mod_p(w.x, p) + mulmod_u64(mod_p(w.y, p), cert.r, p) +
                   mulmod_u64(mod_p(w.z, p), rbar, p)) % p;
    REQUIRE(red != 0);
    uint64_t expect = powmod_u64(cert.omega, cert.chi, p);
    CHECK(powmod_u64(red, (p - 1) / 3, p) == expect);
}

void check_witness_k(const cubic_field& F, const k_element& w, const residue_witness& cert)
{
    int64_t p = cert.p;
    int64_t rbar = (int64_t)mulmod_u64(mulmod_u64(cert.r, cert.r, p),
                                       powmod_u64(F.r.b % p, p - 2, p), p);
    auto red_f = [&](const field_element& e) {
        return (int64_t)((mod_p(e.x, p) + mulmod_u64(mod_p(e.y, p), cert.r, p) +
                          mulmod_u64(mod_p(e.z, p), rbar, p)) % p);
    };
    int64_t red = (red_f(w.p) + mulmod_u64(red_f(w.q), cert.omega, p)) % p;
    REQUIRE(red != 0);
    uint64_t expect = powmod_u64(cert.omega, cert.chi, p);
    CHECK(powmod_u64(red, (p - 1) / 3, p) == expect);
}

} // namespace

TEST_CASE("cubes of chain units reconstruct exactly")
{
    for (int64_t d : {2, 5, 1430}) {
        CAPTURE(d);
        cubic_field F(d);
        field_element eps = chain_unit(F, home_order(F));
        CHECK(abs(norm(eps)) == 1);

        auto cube = is_cube_in_L(pow_int(eps, 3));
        REQUIRE(cube.cube);
        /* the real cube root is unique, so the input comes back exactly */
        CHECK(cube.root == eps);

        auto non = is_cube_in_L(eps);
        REQUIRE_FALSE(non.cube);
        check_witness(F, eps, non.witness);
    }
}

TEST_CASE("the cyclotomic unit is never a cube")
{
    for (int64_t d : {2, 6, 10}) {
        CAPTURE(d);
        cubic_field F(d);
        k_element z = k_element::zeta(F);
        auto t = is_cube_in_k(z);
        REQUIRE_FALSE(t.cube);
        check_witness_k(F, z, t.witness);

        /* zeta^3 = 1 is of course a cube */
        auto one = is_cube_in_k(pow_int(z, 3));
        REQUIRE(one.cube);
        CHECK(pow_int(one.root, 3).is_one());
    }
}

TEST_CASE("cube roots in k verify by exact cubing")
{
    cubic_field F(2);
    k_element eta(el(F, 1, 1, 0), el(F, 1, 0, -1));
    k_element w = pow_int(eta, 3);
    auto t = is_cube_in_k(w);
    REQUIRE(t.cube);
    /* the root can differ from eta by a cube root of unity */
    CHECK(pow_int(t.root, 3) == w);

    /* a cube times zeta3 is not a cube */
    auto tz = is_cube_in_k(w * k_element::zeta(F));
    REQUIRE_FALSE(tz.cube);
}

TEST_CASE("unit subgroup index over the first six fields")
{
    int q1 = 0;
    for (int64_t d : {2, 3, 5, 6, 7, 10}) {
        CAPTURE(d);
        cubic_field F(d);
        field_element eps = chain_unit(F, home_order(F));
        auto r = subfield_unit_index(F, eps);
        if (r.Q == 1) {
            ++q1;
            CHECK(r.killed.size() == 13);
            for (const auto& [cls, wit] : r.killed) {
                CHECK((wit.chi == 1 || wit.chi == 2));
                CHECK((wit.p % 9 == 4 || wit.p % 9 == 7));
            }
        } else {
            CHECK(r.Q == 3);
            bool nonzero = r.cube_class[0] || r.cube_class[1] || r.cube_class[2];
            CHECK(nonzero);
        }
    }
    CHECK(q1 == 1);

    cubic_field F(1430);
    auto r = subfield_unit_index(F, chain_unit(F, home_order(F)));
    CHECK(r.Q == 3);
}

TEST_CASE("the index ignores unit replacements that respect cube classes")
{
    cubic_field F(5);
    field_element eps = chain_unit(F, home_order(F));
    int q = subfield_unit_index(F, eps).Q;
    CHECK(subfield_unit_index(F, pow_int(eps, 3)).Q == q);
    CHECK(subfield_unit_index(F, pow_int(eps, 4)).Q == q);

    /* orders of index prime to 3 in the unit group: same answer */
    cubic_field G(28);
    int qm = subfield_unit_index(G, chain_unit(G, cubic_order::kind_t::maximal)).Q;
    int qs = subfield_unit_index(G, chain_unit(G, cubic_order::kind_t::suborder0)).Q;
    CHECK(qm == qs);
}

TEST_CASE("principal factor discovery finds the worked factors")
{
    struct row {
        int64_t d;
        int64_t lo, hi; /* admissible norms: either member of the pair */
    };
    const row rows[] = {
        {2, 3, 3},
        {5, 3, 9},
        {833, 63, 147},
        {1430, 1100, 1210},
    };
    for (const row& r : rows) {
        CAPTURE(r.d);
        cubic_field F(r.d);
        field_element eps = chain_unit(F, home_order(F));
        auto found = discover_principal_factor(F, eps);
        REQUIRE(found.found);
        CHECK((found.norm == r.lo || found.norm == r.hi));
        CHECK(found.element.is_integral());
        CHECK(abs(norm(found.element)) == found.norm);
        int64_t R2 = F.r.R * F.r.R;
        CHECK(R2 % found.norm == 0);

        /* ambiguity: eta^3 / N(eta) is a unit of the maximal order */
        field_element u = pow_int(found.element, 3) / norm(found.element);
        CHECK(has_integral_char_poly(u));
        CHECK(abs(norm(u)) == 1);
    }
}

TEST_CASE("discovery and the unit index agree on the homogeneous split")
{
    /* fields with rational prime conductor behave one way: a principal factor
     * exists exactly when the index is 3 */
    for (int64_t d : {2, 3, 4, 5, 7, 11, 13, 20, 22, 23}) {
        cubic_field F(d);
        if (F.r.species != species_t::s1b)
            continue;
        CAPTURE(d);
        field_element eps = chain_unit(F, cubic_order::kind_t::maximal);
        bool pf = discover_principal_factor(F, eps).found;
        int Q = subfield_unit_index(F, eps).Q;
        CHECK(pf == (Q == 3));
        /* a chain hit is a principal factor, so it must be rediscovered */
        if (chain_has_hits(F, cubic_order::kind_t::maximal))
            CHECK(pf);
    }

    /* and where the rational conductor is composite in the other species, the
     * element search matches the chain of the smaller order */
    for (int64_t d : {10, 17, 26, 28, 35}) {
        cubic_field F(d);
        REQUIRE(F.r.species == species_t::s2);
        CAPTURE(d);
        field_element eps = chain_unit(F, cubic_order::kind_t::suborder0);
        bool pf = discover_principal_factor(F, eps).found;
        CHECK(pf == chain_has_hits(F, cubic_order::kind_t::suborder0));
    }
}

TEST_CASE("an exhausted budget raises undecided rather than guessing")
{
    cubic_field F(5);
    field_element eps = chain_unit(F, home_order(F));
    cube_budget none{0, 0};
    CHECK_THROWS_AS(is_cube_in_L(eps, none), undecided);
    CHECK_THROWS_AS(is_cube_in_k(k_element::zeta(F), none), undecided);
    CHECK_THROWS_AS(subfield_unit_index(F, eps, none), undecided);
    CHECK_THROWS_AS(discover_principal_factor(F, eps, none), undecided);
}
