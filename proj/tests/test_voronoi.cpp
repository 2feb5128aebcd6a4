#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "pcf/voronoi.hpp"

using namespace pcf;

namespace {

field_element el(const cubic_field& F, long x, long y, long z)
{
    return {F, mpq_class(x), mpq_class(y), mpq_class(z)};
}

field_element el3(const cubic_field& F, long x, long y, long z)
{
    return {F, mpq_class(x, 3), mpq_class(y, 3), mpq_class(z, 3)};
}

bool same_up_to_sign(const field_element& a, const field_element& b)
{
    return a == b || a == -b;
}

} // namespace

TEST_CASE("order construction and membership")
{
    cubic_field F(1430); /* species 2 */
    cubic_order sub = make_order(F, cubic_order::kind_t::suborder0);
    cubic_order max = make_order(F, cubic_order::kind_t::maximal);

    CHECK(sub.s1 == 0);
    CHECK(max.s1 == -1);
    CHECK(max.s2 == 1);
    field_element nu(F, mpq_class(1, 3), mpq_class(-1, 3), mpq_class(1, 3));
    CHECK(max.basis[2] == nu);

    CHECK(order_contains(max, nu));
    CHECK(!order_contains(sub, nu));
    CHECK(order_contains(sub, field_element::gen_delta(F)));
    CHECK(order_contains(max, field_element::gen_delta(F)));
    field_element bad(F, mpq_class(1, 3), mpq_class(1, 3), mpq_class(1, 3));
    CHECK(!order_contains(max, bad));
    CHECK(order_contains(max, el3(F, 56557, 28328, -2960)));
    CHECK(!order_contains(sub, el3(F, 56557, 28328, -2960)));

    cubic_field G(12); /* species 1a: both kinds share the integral basis */
    cubic_order gmax = make_order(G, cubic_order::kind_t::maximal);
    CHECK(gmax.s1 == 0);
    CHECK(gmax.basis[1] == field_element::gen_delta(G));
    CHECK(gmax.basis[2] == field_element::gen_deltabar(G));
}

TEST_CASE("lattice keys identify the spanned lattice")
{
    cubic_field F(1430);
    cubic_order sub = make_order(F, cubic_order::kind_t::suborder0);
    cubic_order max = make_order(F, cubic_order::kind_t::maximal);

    CHECK(!(canonical_lattice_key(sub.basis) == canonical_lattice_key(max.basis)));

    /* unimodular change of basis */
    std::array<field_element, 3> alt = {max.basis[0] + max.basis[1],
                                        max.basis[1],
                                        max.basis[2] + 2 * max.basis[0]};
    CHECK(canonical_lattice_key(alt) == canonical_lattice_key(max.basis));

    /* scaled copies are different lattices and must not collide */
    std::array<field_element, 3> twice = {2 * sub.basis[0], 2 * sub.basis[1], 2 * sub.basis[2]};
    CHECK(!(canonical_lattice_key(twice) == canonical_lattice_key(sub.basis)));

    std::array<field_element, 3> finer = {sub.basis[0], 2 * sub.basis[1], sub.basis[2]};
    CHECK(!(canonical_lattice_key(finer) == canonical_lattice_key(sub.basis)));
}

TEST_CASE("ambiguous norm filter")
{
    radicand r = normalize(1430);
    CHECK(is_pf_norm(r, 1100));
    CHECK(is_pf_norm(r, 1210));
    CHECK(!is_pf_norm(r, 1));
    CHECK(!is_pf_norm(r, 1430));              /* the radicand itself */
    CHECK(!is_pf_norm(r, mpz_class(1430) * 1430)); /* the conjugate radicand */
    CHECK(!is_pf_norm(r, 239));
    CHECK(!is_pf_norm(r, 183));
    CHECK(!is_pf_norm(r, 99));

    radicand s = normalize(12);
    CHECK(s.R == 6);
    CHECK(is_pf_norm(s, 4));
    CHECK(is_pf_norm(s, 9));
    CHECK(is_pf_norm(s, 36));
    CHECK(!is_pf_norm(s, 12));
    CHECK(!is_pf_norm(s, 18));
    CHECK(!is_pf_norm(s, 8));
}

TEST_CASE("chain of the smallest radicand closes in one step")
{
    cubic_field F(2);
    chain_result res = run_chain(make_order(F, cubic_order::kind_t::maximal));
    REQUIRE(res.period.has_value());
    CHECK(*res.period == 1);
    REQUIRE(res.records.size() == 2);
    CHECK(*res.records[1].element == el(F, -1, 1, 0));
    CHECK(res.records[1].norm == 1);
    CHECK(res.pf_indices.empty());
    REQUIRE(res.fundamental_unit.has_value());
    CHECK(*res.fundamental_unit == el(F, 1, 1, 1));
}

TEST_CASE("suborder chain of 1430 hits the published factorizations")
{
    cubic_field F(1430);
    chain_result res = run_chain(make_order(F, cubic_order::kind_t::suborder0));

    REQUIRE(res.period.has_value());
    CHECK(*res.period == 48);
    REQUIRE(res.records.size() == 49);

    CHECK(res.pf_indices == std::vector<int64_t>{16, 34});
    CHECK(res.records[16].norm == 1100);
    CHECK(*res.records[16].element == el(F, -28490, -13120, 1389));
    CHECK(res.records[34].norm == 1210);
    CHECK(*res.records[34].element == el(F, -5130804470, 350650663, 9298918));

    /* the closing unit power; the sign convention of the chain fixes the
     * positive real associate */
    field_element closing(F, mpq_class("-6074553925441"), mpq_class("-689057082849"),
                          mpq_class("109019548011"));
    CHECK(same_up_to_sign(*res.records[48].element, closing));
    CHECK(res.records[48].norm == 1);

    REQUIRE(res.fundamental_unit.has_value());
    CHECK(norm(*res.fundamental_unit) == 1);
    CHECK(*res.fundamental_unit * *res.records[48].element == field_element::one(F));

    /* the hits are exactly the minimal class representatives */
    norm_cosets nc = coset_norms(canonical_split(F.r, 1100));
    CHECK(nc.minimal_first == 1100);
    CHECK(nc.minimal_second == 1210);

    /* heights strictly decrease along the chain */
    for (size_t j = 1; j < res.records.size(); ++j)
        CHECK(compare_real(*res.records[j].element, *res.records[j - 1].element) < 0);
}

TEST_CASE("maximal chain of 1430 carries the shadows at the published depths")
{
    cubic_field F(1430);
    chain_result res = run_chain(make_order(F, cubic_order::kind_t::maximal));

    REQUIRE(res.period.has_value());
    CHECK(*res.period == 50);
    REQUIRE(res.records.size() == 51);

    /* no norm along this chain divides R^2: the factorizations live in the
     * suborder and only their shadows appear here */
    CHECK(res.pf_indices.empty());

    CHECK(res.records[17].norm == 239);
    CHECK(*res.records[17].element == el3(F, 56557, 28328, -2960));
    CHECK(res.records[35].norm == 183);
    CHECK(*res.records[35].element == el3(F, -8480403749, -236672041, 87819928));
    CHECK(res.records[28].norm == 183);

    /* both orders close on the same fundamental unit here */
    chain_result sub = run_chain(make_order(F, cubic_order::kind_t::suborder0));
    REQUIRE(res.fundamental_unit.has_value());
    CHECK(*res.fundamental_unit == *sub.fundamental_unit);
}

TEST_CASE("principal factors can be invisible to the maximal chain")
{
    /* 833 = 7^2 * 17 factors principally (63 = 3^2*7 is an ambiguous norm),
     * yet neither generator is a lattice minimum, so a full period of the
     * maximal chain passes without a single norm dividing R^2. */
    cubic_field F(833);
    chain_result res = run_chain(make_order(F, cubic_order::kind_t::maximal));
    REQUIRE(res.period.has_value());
    CHECK(*res.period == 46);
    CHECK(res.records.size() == 47);
    CHECK(res.pf_indices.empty());
}

TEST_CASE("species 1b chain hits stay inside the two nontrivial classes")
{
    cubic_field F(5);
    chain_result res = run_chain(make_order(F, cubic_order::kind_t::maximal));
    REQUIRE(res.period.has_value());
    CHECK(*res.period == 5);

    norm_cosets nc = coset_norms(canonical_split(F.r, 3));
    REQUIRE(nc.minimal_first == 3);
    REQUIRE(nc.minimal_second == 9);
    std::set<int64_t> allowed(nc.first.begin(), nc.first.end());
    allowed.insert(nc.second.begin(), nc.second.end());

    std::set<int64_t> seen;
    for (int64_t j : res.pf_indices) {
        const mpz_class& n = res.records[j].norm;
        REQUIRE(n.fits_slong_p());
        CHECK(allowed.count(n.get_si()) == 1);
        seen.insert(n.get_si());
    }
    /* exactly one class is realized here: the smaller representative 3 shows
     * up (at a third of the period), the other class never does */
    REQUIRE(res.pf_indices == std::vector<int64_t>{2});
    CHECK(seen.count(nc.minimal_first) == 1);
    CHECK(seen.count(nc.minimal_second) == 0);
    CHECK(res.records[2].element.has_value());
    CHECK(same_up_to_sign(*res.records[2].element, el(F, 2, -1, 0)));
}

TEST_CASE("chains repeat with exact periodicity")
{
    for (int64_t d : {3, 5, 7, 10, 12}) {
        CAPTURE(d);
        cubic_field F(d);
        chain_options opt;
        opt.periods = 2;
        chain_result res = run_chain(make_order(F, cubic_order::kind_t::maximal), opt);
        REQUIRE(res.period.has_value());
        int64_t L = *res.period;
        REQUIRE(res.records.size() == size_t(2 * L + 1));
        for (int64_t j = 1; j <= L; ++j) {
            CHECK(res.records[L + j].norm == res.records[j].norm);
            CHECK(*res.records[L + j].element ==
                  *res.records[L].element * *res.records[j].element);
        }
    }
}

TEST_CASE("recorded norms match the recorded elements")
{
    cubic_field F(63); /* species 1a */
    chain_result res = run_chain(make_order(F, cubic_order::kind_t::maximal));
    REQUIRE(res.period.has_value());
    for (const auto& rec : res.records) {
        mpq_class n = norm(*rec.element);
        CHECK(abs(n) == rec.norm);
    }
}

TEST_CASE("minimum certification")
{
    cubic_field F(1430);
    cubic_order sub = make_order(F, cubic_order::kind_t::suborder0);
    cubic_order max = make_order(F, cubic_order::kind_t::maximal);

    field_element phi16 = el(F, -28490, -13120, 1389);
    CHECK(is_lattice_minimum(sub, phi16));
    CHECK(!is_lattice_minimum(max, phi16)); /* its shadow beats it there */
    CHECK(is_lattice_minimum(max, el3(F, 56557, 28328, -2960)));
    CHECK(is_lattice_minimum(max, field_element::one(F)));
    CHECK(!is_lattice_minimum(max, field_element::gen_delta(F)));
    CHECK(!is_lattice_minimum(max, field_element::gen_deltabar(F)));

    CHECK_THROWS_AS(is_lattice_minimum(max, field_element(F, 0, 0, 0)), hypothesis_violated);
    CHECK_THROWS_AS(is_lattice_minimum(sub, el3(F, 1, 1, 0)), hypothesis_violated);

    /* units and their powers are minima of every order that contains them */
    cubic_field G(5);
    cubic_order gO = make_order(G, cubic_order::kind_t::maximal);
    chain_result res = run_chain(gO);
    field_element eps = *res.fundamental_unit;
    CHECK(is_lattice_minimum(gO, eps));
    CHECK(is_lattice_minimum(gO, pow_int(eps, 2)));
    CHECK(is_lattice_minimum(gO, pow_int(eps, -1)));
}

TEST_CASE("chain minima are consecutive") /* no minimum hides between steps */
{
    for (int64_t d : {2, 5, 6, 12, 28}) {
        CAPTURE(d);
        cubic_field F(d);
        for (auto kind : {cubic_order::kind_t::maximal, cubic_order::kind_t::suborder0}) {
            cubic_order O = make_order(F, kind);
            chain_options opt;
            opt.max_steps = 4;
            opt.stop = chain_stop::height_floor; /* floor unset: exactly 4 steps */
            chain_result res = run_chain(O, opt);
            REQUIRE(res.records.size() == 5);
            /* only window the steps the exhaustive search can still afford:
             * short periods (d=2, d=28) dive into unit powers whose
             * coordinates outgrow any fixed coefficient bound */
            size_t depth = 1;
            mpq_class cap(40);
            while (depth + 1 < res.records.size()) {
                const field_element& e = *res.records[depth + 1].element;
                if (abs(e.x) > cap || abs(e.y) > cap || abs(e.z) > cap)
                    break;
                ++depth;
            }
            auto mins = brute_force_minima(O, *res.records[depth].element, *res.records[0].element, 80);
            REQUIRE(mins.size() == depth + 1);
            for (size_t j = 0; j <= depth; ++j)
                CHECK(mins[j] == *res.records[j].element);
            if (kind == cubic_order::kind_t::maximal && F.r.species != species_t::s2)
                break; /* both kinds coincide outside species 2 */
        }
    }
}

TEST_CASE("deep golden minima against the brute force window")
{
    cubic_field F(1430);
    cubic_order max = make_order(F, cubic_order::kind_t::maximal);
    chain_options opt;
    opt.max_steps = 4;
    opt.stop = chain_stop::height_floor;
    chain_result res = run_chain(max, opt);
    auto mins = brute_force_minima(max, *res.records[4].element, *res.records[0].element, 60);
    REQUIRE(mins.size() == 5);
    CHECK(mins[3] == el3(F, -14, -10, 1)); /* the first fractional minimum */
    CHECK(mins[4] == el(F, -45, 4, 0));
}
