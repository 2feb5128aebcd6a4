#include "pcf/order.hpp"

#include <string>

namespace pcf {

cubic_order make_order(const cubic_field& F, cubic_order::kind_t kind)
{
    cubic_order O;
    O.F = &F;
    O.kind = kind;
    O.basis = {field_element::one(F), field_element::gen_delta(F), field_element::gen_deltabar(F)};
    if (kind == cubic_order::kind_t::maximal && F.r.species == species_t::s2) {
        int found = 0;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                field_element nu{F, mpq_class(1, 3), mpq_class(s1, 3), mpq_class(s2, 3)};
                if (has_integral_char_poly(nu)) {
                    ++found;
                    O.basis[2] = nu;
                    O.s1 = s1;
                    O.s2 = s2;
                }
            }
        if (found != 1)
            throw hypothesis_violated("species 2 field " + std::to_string(F.r.d) + ": " + std::to_string(found) + " integral sign patterns instead of 1");
    }
    return O;
}

bool order_contains(const cubic_order& O, const field_element& e)
{
    if (e.F != O.F && e.F->r.d != O.F->r.d)
        throw mixed_parents("element and order belong to different fields");
    /* basis[1] = delta and basis[2] is the only basis vector with a
     * deltabar component, so back substitution is immediate */
    const field_element& b2 = O.basis[2];
    mpq_class c3 = e.z / b2.z;
    mpq_class c2 = e.y - c3 * b2.y;
    mpq_class c1 = e.x - c3 * b2.x;
    return c1.get_den() == 1 && c2.get_den() == 1 && c3.get_den() == 1;
}

lattice_key canonical_lattice_key(const std::array<field_element, 3>& basis)
{
    mpz_class den = 1;
    for (const auto& b : basis) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b.x.get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b.y.get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b.z.get_den().get_mpz_t());
    }
    std::array<std::array<mpz_class, 3>, 3> a;
    mpq_class dq(den);
    for (int i = 0; i < 3; ++i) {
        a[i][0] = mpz_class(basis[i].x * dq);
        a[i][1] = mpz_class(basis[i].y * dq);
        a[i][2] = mpz_class(basis[i].z * dq);
    }
    /* row Hermite form */
    for (int j = 0; j < 3; ++j) {
        while (true) {
            int piv = -1;
            for (int i = j; i < 3; ++i)
                if (a[i][j] != 0 && (piv < 0 || abs(a[i][j]) < abs(a[piv][j])))
                    piv = i;
            if (piv < 0)
                throw hypothesis_violated("lattice basis is singular");
            std::swap(a[piv], a[j]);
            bool clean = true;
            for (int i = j + 1; i < 3; ++i) {
                if (a[i][j] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[j][j].get_mpz_t());
                for (int k = 0; k < 3; ++k)
                    a[i][k] -= q * a[j][k];
                if (a[i][j] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (a[j][j] < 0)
            for (int k = 0; k < 3; ++k)
                a[j][k] = -a[j][k];
        for (int i = 0; i < j; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[j][j].get_mpz_t());
            for (int k = 0; k < 3; ++k)
                a[i][k] -= q * a[j][k];
        }
    }
    lattice_key key;
    key.den = den;
    key.h = a;
    return key;
}

} // namespace pcf
