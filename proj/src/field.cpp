#include "pcf/field.hpp"

#include <mpfr.h>

#include <sstream>

namespace pcf {

namespace {

ivm cbrt_ivm(int64_t v, mpfr_prec_t prec)
{
    ivm r(prec);
    mpfr_set_sj(r.lo, v, MPFR_RNDD);
    mpfr_cbrt(r.lo, r.lo, MPFR_RNDD);
    mpfr_set_sj(r.hi, v, MPFR_RNDU);
    mpfr_cbrt(r.hi, r.hi, MPFR_RNDU);
    return r;
}

} // namespace

cubic_field::cubic_field(const radicand& rr) : r(rr)
{
    ivm d = cbrt_ivm(r.d, 53);
    delta = ivd::widen({mpfr_get_d(d.lo, MPFR_RNDD), mpfr_get_d(d.hi, MPFR_RNDU)});
    ivm db = cbrt_ivm(r.dbar, 53);
    deltabar = ivd::widen({mpfr_get_d(db.lo, MPFR_RNDD), mpfr_get_d(db.hi, MPFR_RNDU)});
}

ivm cubic_field::delta_ivm(mpfr_prec_t prec) const
{
    return cbrt_ivm(r.d, prec);
}

ivm cubic_field::deltabar_ivm(mpfr_prec_t prec) const
{
    return cbrt_ivm(r.dbar, prec);
}

const cubic_field& common_field(const field_element& a, const field_element& b)
{
    if (a.F == nullptr || b.F == nullptr)
        throw error("operation on a default-constructed field element");
    if (a.F != b.F && a.F->r.d != b.F->r.d)
        throw mixed_parents("elements of Q(cbrt " + std::to_string(a.F->r.d) + ") and Q(cbrt " + std::to_string(b.F->r.d) + ")");
    return *a.F;
}

field_element operator+(const field_element& a, const field_element& b)
{
    return {common_field(a, b), a.x + b.x, a.y + b.y, a.z + b.z};
}

field_element operator-(const field_element& a, const field_element& b)
{
    return {common_field(a, b), a.x - b.x, a.y - b.y, a.z - b.z};
}

field_element operator-(const field_element& a)
{
    return {*a.F, -a.x, -a.y, -a.z};
}

field_element operator*(const field_element& a, const field_element& b)
{
    const cubic_field& F = common_field(a, b);
    const int64_t A = F.r.a, B = F.r.b;
    const int64_t ab = A * B;
    mpq_class x = a.x * b.x + ab * (a.y * b.z + a.z * b.y);
    mpq_class y = a.x * b.y + a.y * b.x + A * (a.z * b.z);
    mpq_class z = a.x * b.z + a.z * b.x + B * (a.y * b.y);
    return {F, std::move(x), std::move(y), std::move(z)};
}

field_element operator*(const mpq_class& c, const field_element& a)
{
    return {*a.F, c * a.x, c * a.y, c * a.z};
}

field_element operator*(int64_t c, const field_element& a)
{
    return {*a.F, c * a.x, c * a.y, c * a.z};
}

field_element operator/(const field_element& a, const mpq_class& c)
{
    if (c == 0)
        throw error("division of a field element by zero");
    return {*a.F, a.x / c, a.y / c, a.z / c};
}

field_element operator/(const field_element& a, const field_element& b)
{
    return a * inverse(b);
}

bool operator==(const field_element& a, const field_element& b)
{
    common_field(a, b);
    return a.x == b.x && a.y == b.y && a.z == b.z;
}

bool operator!=(const field_element& a, const field_element& b)
{
    return !(a == b);
}

mpq_class norm(const field_element& e)
{
    const int64_t A = e.F->r.a, B = e.F->r.b;
    const int64_t ab = A * B;
    mpq_class x3 = e.x * e.x * e.x;
    mpq_class y3 = e.y * e.y * e.y;
    mpq_class z3 = e.z * e.z * e.z;
    return x3 + (ab * B) * y3 + (ab * A) * z3 - (3 * ab) * (e.x * e.y * e.z);
}

field_element conjugate_product(const field_element& e)
{
    const int64_t A = e.F->r.a, B = e.F->r.b;
    const int64_t ab = A * B;
    mpq_class X = e.x * e.x - ab * (e.y * e.z);
    mpq_class Y = A * (e.z * e.z) - e.x * e.y;
    mpq_class Z = B * (e.y * e.y) - e.x * e.z;
    return {*e.F, std::move(X), std::move(Y), std::move(Z)};
}

field_element conjugate_product_bilinear(const field_element& u, const field_element& v)
{
    const cubic_field& F = common_field(u, v);
    const int64_t A = F.r.a, B = F.r.b;
    const int64_t ab = A * B;
    mpq_class X = 2 * (u.x * v.x) - ab * (u.y * v.z + u.z * v.y);
    mpq_class Y = 2 * A * (u.z * v.z) - (u.x * v.y + u.y * v.x);
    mpq_class Z = 2 * B * (u.y * v.y) - (u.x * v.z + u.z * v.x);
    return {F, std::move(X), std::move(Y), std::move(Z)};
}

std::array<mpq_class, 3> char_poly(const field_element& e)
{
    const int64_t ab = e.F->r.a * e.F->r.b;
    mpq_class t = 3 * e.x;
    mpq_class s = 3 * (e.x * e.x - ab * (e.y * e.z));
    return {std::move(t), std::move(s), norm(e)};
}

bool has_integral_char_poly(const field_element& e)
{
    auto c = char_poly(e);
    return c[0].get_den() == 1 && c[1].get_den() == 1 && c[2].get_den() == 1;
}

field_element inverse(const field_element& e)
{
    mpq_class n = norm(e);
    if (n == 0)
        throw error("inverse of zero");
    field_element c = conjugate_product(e);
    return {*e.F, c.x / n, c.y / n, c.z / n};
}

field_element pow_int(const field_element& e, long k)
{
    if (k < 0)
        return pow_int(inverse(e), -k);
    field_element r = field_element::one(*e.F);
    field_element b = e;
    unsigned long n = static_cast<unsigned long>(k);
    while (n) {
        if (n & 1)
            r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

field_element primitive_scale(const field_element& e)
{
    if (e.is_zero())
        return e;
    mpz_class l = e.x.get_den();
    mpz_class t;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.y.get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.z.get_den().get_mpz_t());
    mpq_class lc(l);
    mpz_class nx = mpz_class(e.x * lc), ny = mpz_class(e.y * lc), nz = mpz_class(e.z * lc);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), nx.get_mpz_t(), ny.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nz.get_mpz_t());
    return {*e.F, mpq_class(nx / g), mpq_class(ny / g), mpq_class(nz / g)};
}

ivd value_iv(const field_element& e)
{
    return ivd::from_mpq(e.x) + ivd::from_mpq(e.y) * e.F->delta + ivd::from_mpq(e.z) * e.F->deltabar;
}

ivm value_ivm(const field_element& e, mpfr_prec_t prec)
{
    return ivm::from_mpq(e.x, prec) + ivm::from_mpq(e.y, prec) * e.F->delta_ivm(prec) +
           ivm::from_mpq(e.z, prec) * e.F->deltabar_ivm(prec);
}

int exact_sign(const field_element& e)
{
    if (e.is_zero())
        return 0;
    ivd v = value_iv(e);
    if (v.finite()) {
        if (v.pos())
            return 1;
        if (v.neg())
            return -1;
    }
    if (e.is_rational())
        return sgn(e.x);
    return sgn(norm(e));
}

int compare_real(const field_element& a, const field_element& b)
{
    return exact_sign(a - b);
}

std::string coord_string(const field_element& e)
{
    std::ostringstream os;
    os << "(" << e.x << ", " << e.y << ", " << e.z << ")";
    return os.str();
}

k_element operator+(const k_element& a, const k_element& b)
{
    return {a.p + b.p, a.q + b.q};
}

k_element operator-(const k_element& a, const k_element& b)
{
    return {a.p - b.p, a.q - b.q};
}

k_element operator*(const k_element& a, const k_element& b)
{
    /* zeta^2 = -1 - zeta */
    field_element qq = a.q * b.q;
    return {a.p * b.p - qq, a.p * b.q + a.q * b.p - qq};
}

bool operator==(const k_element& a, const k_element& b)
{
    return a.p == b.p && a.q == b.q;
}

k_element conj_tau(const k_element& w)
{
    return {w.p - w.q, -w.q};
}

k_element sigma_embed(const field_element& e)
{
    /* delta -> zeta delta, deltabar -> zeta^2 deltabar */
    const cubic_field& F = *e.F;
    field_element p{F, e.x, 0, -e.z};
    field_element q{F, 0, e.y, -e.z};
    return {std::move(p), std::move(q)};
}

k_element sigma(const k_element& w)
{
    k_element sp = sigma_embed(w.p);
    k_element sq = sigma_embed(w.q);
    /* (P + Q zeta) * zeta = -Q + (P - Q) zeta */
    k_element sqz{-sq.q, sq.p - sq.q};
    return sp + sqz;
}

k_element pow_int(const k_element& w, long k)
{
    if (k < 0)
        throw error("negative power of a k-element is not needed and not supported");
    const cubic_field& F = *w.p.F;
    k_element r = k_element::from_field(field_element::one(F));
    k_element b = w;
    unsigned long n = static_cast<unsigned long>(k);
    while (n) {
        if (n & 1)
            r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

} // namespace pcf
