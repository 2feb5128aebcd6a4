#ifndef PCF_FIELD_HPP
#define PCF_FIELD_HPP

#include <gmpxx.h>

#include <array>
#include <string>

#include "pcf/interval.hpp"
#include "pcf/radicand.hpp"

namespace pcf {

/* Per-field context: the normalized radicand plus certified enclosures of the
 * two real cube roots delta = cbrt(a b^2) and deltabar = cbrt(a^2 b). */
struct cubic_field {
    radicand r;
    ivd delta;
    ivd deltabar;

    explicit cubic_field(const radicand& rr);
    explicit cubic_field(int64_t m) : cubic_field(normalize(m)) {}

    /* fresh mpfr enclosures at the requested precision */
    ivm delta_ivm(mpfr_prec_t prec) const;
    ivm deltabar_ivm(mpfr_prec_t prec) const;
};

/* x + y*delta + z*deltabar with rational coordinates. */
struct field_element {
    const cubic_field* F = nullptr;
    mpq_class x, y, z;

    field_element() = default;
    field_element(const cubic_field& f, mpq_class xx, mpq_class yy, mpq_class zz)
        : F(&f), x(std::move(xx)), y(std::move(yy)), z(std::move(zz))
    {
    }
    static field_element from_int(const cubic_field& f, int64_t v) { return {f, v, 0, 0}; }
    static field_element one(const cubic_field& f) { return {f, 1, 0, 0}; }
    static field_element gen_delta(const cubic_field& f) { return {f, 0, 1, 0}; }
    static field_element gen_deltabar(const cubic_field& f) { return {f, 0, 0, 1}; }

    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    bool is_rational() const { return y == 0 && z == 0; }
    bool is_integral() const { return x.get_den() == 1 && y.get_den() == 1 && z.get_den() == 1; }
};

const cubic_field& common_field(const field_element& a, const field_element& b);

field_element operator+(const field_element& a, const field_element& b);
field_element operator-(const field_element& a, const field_element& b);
field_element operator-(const field_element& a);
field_element operator*(const field_element& a, const field_element& b);
field_element operator*(const mpq_class& c, const field_element& a);
field_element operator*(int64_t c, const field_element& a);
field_element operator/(const field_element& a, const mpq_class& c);
field_element operator/(const field_element& a, const field_element& b);
bool operator==(const field_element& a, const field_element& b);
bool operator!=(const field_element& a, const field_element& b);

/* x^3 + a b^2 y^3 + a^2 b z^3 - 3 a b x y z: the product of the three
 * conjugates. */
mpq_class norm(const field_element& e);

/* The product of the two complex conjugates as a field element; satisfies
 * e * conjugate_product(e) == norm(e).  Its real value is the squared
 * distance of the conjugate pair from 0. */
field_element conjugate_product(const field_element& e);

/* Polarization: conjugate_product(u+v) - conjugate_product(u) -
 * conjugate_product(v), bilinear and symmetric. */
field_element conjugate_product_bilinear(const field_element& u, const field_element& v);

/* Coefficients (t, s, n) with char poly X^3 - t X^2 + s X - n. */
std::array<mpq_class, 3> char_poly(const field_element& e);
bool has_integral_char_poly(const field_element& e);

field_element inverse(const field_element& e);
field_element pow_int(const field_element& e, long k);

/* e scaled by the positive rational that makes the coordinates integral with
 * content 1. */
field_element primitive_scale(const field_element& e);

ivd value_iv(const field_element& e);
ivm value_ivm(const field_element& e, mpfr_prec_t prec);

/* Sign of the real value, exact.  Interval screen first; on a straddle the
 * sign equals the sign of the norm (e = 0 only when all coordinates vanish,
 * and otherwise norm(e) = e * |e'|^2 with |e'|^2 > 0). */
int exact_sign(const field_element& e);

/* -1, 0, 1 as a < b, a == b, a > b (real values, exact). */
int compare_real(const field_element& a, const field_element& b);

std::string coord_string(const field_element& e);

/* Element p + q*zeta3 of the degree-6 field obtained by adjoining a primitive
 * cube root of unity; p and q live in the cubic field. */
struct k_element {
    field_element p, q;

    k_element() = default;
    k_element(field_element pp, field_element qq) : p(std::move(pp)), q(std::move(qq)) {}
    static k_element from_field(const field_element& e)
    {
        return {e, field_element{*e.F, 0, 0, 0}};
    }
    static k_element zeta(const cubic_field& f)
    {
        return {field_element{f, 0, 0, 0}, field_element::one(f)};
    }
    bool is_one() const { return q.is_zero() && p.is_rational() && p.x == 1; }
};

k_element operator+(const k_element& a, const k_element& b);
k_element operator-(const k_element& a, const k_element& b);
k_element operator*(const k_element& a, const k_element& b);
bool operator==(const k_element& a, const k_element& b);

/* zeta3 -> zeta3^2 */
k_element conj_tau(const k_element& w);

/* The automorphism delta -> zeta3 * delta applied to a field element gives an
 * element of the bigger field; extended to the bigger field by fixing
 * zeta3. */
k_element sigma_embed(const field_element& e);
k_element sigma(const k_element& w);

k_element pow_int(const k_element& w, long k);

} // namespace pcf

#endif
