#ifndef PCF_INTERVAL_HPP
#define PCF_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace pcf {

using std::int64_t;

/* Closed interval with double endpoints.  Every inexact operation is widened
 * outward by one ulp, so a true value once enclosed stays enclosed.  Used for
 * screening only; decisions on a boundary fall back to exact arithmetic. */
struct ivd {
    double lo = 0.0;
    double hi = 0.0;

    ivd() = default;
    ivd(double l, double h) : lo(l), hi(h) {}

    static ivd exact(double v) { return {v, v}; }

    static ivd from_i64(int64_t v)
    {
        double d = static_cast<double>(v);
        if (v > (int64_t(1) << 53) || v < -(int64_t(1) << 53))
            return widen({d, d});
        return {d, d};
    }

    static ivd from_mpq(const mpq_class& q);
    static ivd from_mpz(const mpz_class& z);

    static ivd widen(ivd v)
    {
        v.lo = std::nextafter(v.lo, -INFINITY);
        v.hi = std::nextafter(v.hi, INFINITY);
        return v;
    }

    bool finite() const { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }
    bool pos() const { return lo > 0.0; }
    bool neg() const { return hi < 0.0; }
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }

    int64_t floor_hi() const
    {
        double f = std::floor(hi);
        if (!(f < 4.6e18))
            return int64_t(4) << 60;
        if (!(f > -4.6e18))
            return -(int64_t(4) << 60);
        return static_cast<int64_t>(f);
    }
    int64_t ceil_lo() const
    {
        double c = std::ceil(lo);
        if (!(c < 4.6e18))
            return int64_t(4) << 60;
        if (!(c > -4.6e18))
            return -(int64_t(4) << 60);
        return static_cast<int64_t>(c);
    }
};

inline ivd operator+(const ivd& a, const ivd& b)
{
    return ivd::widen({a.lo + b.lo, a.hi + b.hi});
}

inline ivd operator-(const ivd& a, const ivd& b)
{
    return ivd::widen({a.lo - b.hi, a.hi - b.lo});
}

inline ivd operator-(const ivd& a)
{
    return {-a.hi, -a.lo};
}

inline ivd operator*(const ivd& a, const ivd& b)
{
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return ivd::widen({std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})});
}

inline ivd sq(const ivd& a)
{
    if (a.lo >= 0.0)
        return ivd::widen({a.lo * a.lo, a.hi * a.hi});
    if (a.hi <= 0.0)
        return ivd::widen({a.hi * a.hi, a.lo * a.lo});
    double m = std::max(-a.lo, a.hi);
    return ivd::widen({0.0, m * m});
}

/* b must be strictly positive. */
inline ivd div_pos(const ivd& a, const ivd& b)
{
    double q1 = a.lo / b.lo, q2 = a.lo / b.hi, q3 = a.hi / b.lo, q4 = a.hi / b.hi;
    return ivd::widen({std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4})});
}

/* a is clamped below at 0. */
inline ivd sqrt_pos(const ivd& a)
{
    double l = a.lo > 0.0 ? std::sqrt(a.lo) : 0.0;
    return ivd::widen({std::nextafter(l, 0.0), std::sqrt(a.hi)});
}

/* Interval with mpfr endpoints and directed rounding.  Same contract as ivd
 * but with a huge exponent range: heights along a long Voronoi chain shrink
 * like exp(-j * regulator / period) and fall out of double range fast. */
class ivm {
  public:
    mpfr_t lo, hi;

    explicit ivm(mpfr_prec_t prec = 53)
    {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    ivm(const ivm& o)
    {
        mpfr_init2(lo, mpfr_get_prec(o.lo));
        mpfr_init2(hi, mpfr_get_prec(o.hi));
        mpfr_set(lo, o.lo, MPFR_RNDD);
        mpfr_set(hi, o.hi, MPFR_RNDU);
    }
    ivm(ivm&& o) noexcept
    {
        mpfr_init2(lo, 53);
        mpfr_init2(hi, 53);
        mpfr_swap(lo, o.lo);
        mpfr_swap(hi, o.hi);
    }
    ivm& operator=(ivm o)
    {
        mpfr_swap(lo, o.lo);
        mpfr_swap(hi, o.hi);
        return *this;
    }
    ~ivm()
    {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }

    static ivm from_i64(int64_t v, mpfr_prec_t prec = 64)
    {
        ivm r(prec);
        mpfr_set_sj(r.lo, v, MPFR_RNDD);
        mpfr_set_sj(r.hi, v, MPFR_RNDU);
        return r;
    }
    static ivm from_mpq(const mpq_class& q, mpfr_prec_t prec = 53)
    {
        ivm r(prec);
        mpfr_set_q(r.lo, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static ivm from_mpz(const mpz_class& z, mpfr_prec_t prec = 53)
    {
        ivm r(prec);
        mpfr_set_z(r.lo, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    bool finite() const { return mpfr_number_p(lo) && mpfr_number_p(hi) && mpfr_lessequal_p(lo, hi); }
    bool pos() const { return mpfr_sgn(lo) > 0; }
    bool neg() const { return mpfr_sgn(hi) < 0; }
    bool contains_zero() const { return mpfr_sgn(lo) <= 0 && mpfr_sgn(hi) >= 0; }
    double mid() const
    {
        double l = mpfr_get_d(lo, MPFR_RNDN), h = mpfr_get_d(hi, MPFR_RNDN);
        return 0.5 * (l + h);
    }

    int64_t floor_hi() const
    {
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(hi));
        mpfr_floor(t, hi);
        long long v;
        if (mpfr_fits_sint_p(t, MPFR_RNDZ) == 0 && mpfr_cmp_si(t, 1 << 30) >= 0)
            v = int64_t(4) << 60;
        else if (mpfr_fits_sint_p(t, MPFR_RNDZ) == 0 && mpfr_cmp_si(t, -(1 << 30)) <= 0)
            v = -(int64_t(4) << 60);
        else
            v = mpfr_get_sj(t, MPFR_RNDZ);
        mpfr_clear(t);
        return v;
    }
    int64_t ceil_lo() const
    {
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(lo));
        mpfr_ceil(t, lo);
        long long v;
        if (mpfr_fits_sint_p(t, MPFR_RNDZ) == 0 && mpfr_cmp_si(t, 1 << 30) >= 0)
            v = int64_t(4) << 60;
        else if (mpfr_fits_sint_p(t, MPFR_RNDZ) == 0 && mpfr_cmp_si(t, -(1 << 30)) <= 0)
            v = -(int64_t(4) << 60);
        else
            v = mpfr_get_sj(t, MPFR_RNDZ);
        mpfr_clear(t);
        return v;
    }
};

ivm operator+(const ivm& a, const ivm& b);
ivm operator-(const ivm& a, const ivm& b);
ivm operator-(const ivm& a);
ivm operator*(const ivm& a, const ivm& b);
ivm sq(const ivm& a);
ivm div_pos(const ivm& a, const ivm& b);
ivm sqrt_pos(const ivm& a);

} // namespace pcf

#endif
