#include "pcf/interval.hpp"

namespace pcf {

ivd ivd::from_mpq(const mpq_class& q)
{
    if (q.get_den() == 1) {
        const mpz_class& n = q.get_num();
        if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 53)
            return exact(mpz_get_d(n.get_mpz_t()));
    }
    /* mpq_get_d truncates toward zero: enclose one ulp either way */
    double d = mpq_get_d(q.get_mpq_t());
    return widen({d, d});
}

ivd ivd::from_mpz(const mpz_class& z)
{
    if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 53)
        return exact(mpz_get_d(z.get_mpz_t()));
    double d = mpz_get_d(z.get_mpz_t());
    return widen({d, d});
}

ivm operator+(const ivm& a, const ivm& b)
{
    ivm r(std::max(mpfr_get_prec(a.lo), mpfr_get_prec(b.lo)));
    mpfr_add(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_add(r.hi, a.hi, b.hi, MPFR_RNDU);
    return r;
}

ivm operator-(const ivm& a, const ivm& b)
{
    ivm r(std::max(mpfr_get_prec(a.lo), mpfr_get_prec(b.lo)));
    mpfr_sub(r.lo, a.lo, b.hi, MPFR_RNDD);
    mpfr_sub(r.hi, a.hi, b.lo, MPFR_RNDU);
    return r;
}

ivm operator-(const ivm& a)
{
    ivm r(mpfr_get_prec(a.lo));
    mpfr_neg(r.lo, a.hi, MPFR_RNDD);
    mpfr_neg(r.hi, a.lo, MPFR_RNDU);
    return r;
}

ivm operator*(const ivm& a, const ivm& b)
{
    mpfr_prec_t p = std::max(mpfr_get_prec(a.lo), mpfr_get_prec(b.lo));
    ivm r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    /* lower end: min of the four products rounded down */
    mpfr_mul(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_mul(t, a.lo, b.hi, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_mul(t, a.hi, b.lo, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_mul(t, a.hi, b.hi, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    /* upper end: max of the four products rounded up */
    mpfr_mul(r.hi, a.lo, b.lo, MPFR_RNDU);
    mpfr_mul(t, a.lo, b.hi, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_mul(t, a.hi, b.lo, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_mul(t, a.hi, b.hi, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

ivm sq(const ivm& a)
{
    mpfr_prec_t p = mpfr_get_prec(a.lo);
    ivm r(p);
    if (mpfr_sgn(a.lo) >= 0) {
        mpfr_sqr(r.lo, a.lo, MPFR_RNDD);
        mpfr_sqr(r.hi, a.hi, MPFR_RNDU);
    } else if (mpfr_sgn(a.hi) <= 0) {
        mpfr_sqr(r.lo, a.hi, MPFR_RNDD);
        mpfr_sqr(r.hi, a.lo, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo, 1);
        mpfr_t t;
        mpfr_init2(t, p);
        mpfr_sqr(r.hi, a.hi, MPFR_RNDU);
        mpfr_sqr(t, a.lo, MPFR_RNDU);
        mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
        mpfr_clear(t);
    }
    return r;
}

ivm div_pos(const ivm& a, const ivm& b)
{
    mpfr_prec_t p = std::max(mpfr_get_prec(a.lo), mpfr_get_prec(b.lo));
    ivm r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_div(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_div(t, a.lo, b.hi, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_div(t, a.hi, b.lo, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_div(t, a.hi, b.hi, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_div(r.hi, a.lo, b.lo, MPFR_RNDU);
    mpfr_div(t, a.lo, b.hi, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_div(t, a.hi, b.lo, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_div(t, a.hi, b.hi, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

ivm sqrt_pos(const ivm& a)
{
    ivm r(mpfr_get_prec(a.lo));
    if (mpfr_sgn(a.lo) > 0)
        mpfr_sqrt(r.lo, a.lo, MPFR_RNDD);
    else
        mpfr_set_zero(r.lo, 1);
    mpfr_sqrt(r.hi, a.hi, MPFR_RNDU);
    return r;
}

} // namespace pcf
