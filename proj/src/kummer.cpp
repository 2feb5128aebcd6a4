#include "pcf/kummer.hpp"

#include <algorithm>
#include <cstdint>

#include "pcf/errors.hpp"
#include "pcf/intfactor.hpp"

namespace pcf {

namespace {

/* ------------------------------------------------------------------ */
/* residue side: explicit degree-one primes and cubic characters       */
/* ------------------------------------------------------------------ */

struct split_prime {
    int64_t p = 0;
    int64_t r = 0;     /* r^3 = d mod p */
    int64_t rbar = 0;  /* rbar^3 = dbar mod p */
    int64_t omega = 0; /* nontrivial cube root of 1 mod p */
    int64_t m = 0;     /* (p-1)/3 */
};

int64_t inverse_mod(int64_t a, int64_t m)
{
    int64_t r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return ((s0 % m) + m) % m;
}

/* Ascending primes p = 4, 7 (mod 9) at which d is a cubic residue.  The
 * congruence keeps 3 invertible mod (p-1)/3, so a cube root of d is a plain
 * power, and makes the reduction of zeta3 itself a non-cube. */
class prime_stream {
public:
    explicit prime_stream(const radicand& rad) : rad_(rad) {}

    split_prime take()
    {
        for (;; ++next_) {
            int64_t p = next_;
            int64_t c = p % 9;
            if ((c != 4 && c != 7) || rad_.d % p == 0 || !is_prime_u64(p))
                continue;
            int64_t m = (p - 1) / 3;
            int64_t dm = rad_.d % p;
            if (powmod_u64(dm, m, p) != 1)
                continue;
            split_prime sp;
            sp.p = p;
            sp.m = m;
            sp.r = (int64_t)powmod_u64(dm, inverse_mod(3, m), p);
            sp.rbar = (int64_t)mulmod_u64(mulmod_u64(sp.r, sp.r, p),
                                          inverse_mod(rad_.b % p, p), p);
            int64_t g = 2;
            while ((sp.omega = (int64_t)powmod_u64(g % p, m, p)) == 1)
                ++g;
            if (powmod_u64(sp.r, 3, p) != (uint64_t)dm ||
                powmod_u64(sp.rbar, 3, p) != (uint64_t)(rad_.dbar % p) ||
                powmod_u64(sp.omega, 3, p) != 1)
                continue; /* cannot happen; skip rather than trust */
            ++next_;
            return sp;
        }
    }

private:
    const radicand& rad_;
    int64_t next_ = 5;
};

/* coordinate mod p, or failure when p divides a denominator */
bool reduce_rational(const mpq_class& q, int64_t p, int64_t& out)
{
    int64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0)
        return false;
    int64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    out = (int64_t)mulmod_u64(num, inverse_mod(den, p), p);
    return true;
}

bool reduce_field(const field_element& e, const split_prime& sp, int64_t& out)
{
    int64_t x, y, z;
    if (!reduce_rational(e.x, sp.p, x) || !reduce_rational(e.y, sp.p, y) ||
        !reduce_rational(e.z, sp.p, z))
        return false;
    out = (x + mulmod_u64(y, sp.r, sp.p) + mulmod_u64(z, sp.rbar, sp.p)) % sp.p;
    return true;
}

bool reduce_k(const k_element& w, const split_prime& sp, int64_t& out)
{
    int64_t a, b;
    if (!reduce_field(w.p, sp, a) || !reduce_field(w.q, sp, b))
        return false;
    out = (a + mulmod_u64(b, sp.omega, sp.p)) % sp.p;
    return true;
}

/* discrete log of x^m in <omega>: 0, 1, 2; -1 on x = 0 mod p */
int character(int64_t x, const split_prime& sp)
{
    if (x == 0)
        return -1;
    int64_t t = (int64_t)powmod_u64(x, sp.m, sp.p);
    if (t == 1)
        return 0;
    if (t == sp.omega)
        return 1;
    return 2;
}

/* ------------------------------------------------------------------ */
/* floating reconstruction of cube roots                               */
/* ------------------------------------------------------------------ */

/* complex scratch value; plain mpfr pairs with explicit precision */
struct mreal {
    mpfr_t v;
    explicit mreal(mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_zero(v, 1); }
    ~mreal() { mpfr_clear(v); }
    mreal(const mreal&) = delete;
    mreal& operator=(const mreal&) = delete;
};

struct embed_ctx {
    mpfr_prec_t prec;
    mreal delta, dbar, s3h, pi;      /* cbrt d, cbrt dbar, sqrt(3)/2, pi */
    mreal djre[3], djim[3];          /* delta * omega^j */
    mreal dbre[3], dbim[3];          /* dbar * omega^(2j) */
    mreal t1, t2, t3, t4;            /* scratch */

    embed_ctx(const cubic_field& F, mpfr_prec_t pr)
        : prec(pr), delta(pr), dbar(pr), s3h(pr), pi(pr),
          djre{mreal(pr), mreal(pr), mreal(pr)}, djim{mreal(pr), mreal(pr), mreal(pr)},
          dbre{mreal(pr), mreal(pr), mreal(pr)}, dbim{mreal(pr), mreal(pr), mreal(pr)},
          t1(pr), t2(pr), t3(pr), t4(pr)
    {
        mpfr_set_si(t1.v, F.r.d, MPFR_RNDN);
        mpfr_cbrt(delta.v, t1.v, MPFR_RNDN);
        mpfr_set_si(t1.v, F.r.dbar, MPFR_RNDN);
        mpfr_cbrt(dbar.v, t1.v, MPFR_RNDN);
        mpfr_sqrt_ui(s3h.v, 3, MPFR_RNDN);
        mpfr_div_ui(s3h.v, s3h.v, 2, MPFR_RNDN);
        mpfr_const_pi(pi.v, MPFR_RNDN);

        for (int j = 0; j < 3; ++j) {
            /* omega^j and omega^(2j) applied to the two real radicals */
            auto rot = [&](const mreal& base, int k, mreal& re, mreal& im) {
                if (k == 0) {
                    mpfr_set(re.v, base.v, MPFR_RNDN);
                    mpfr_set_zero(im.v, 1);
                    return;
                }
                mpfr_div_si(re.v, base.v, -2, MPFR_RNDN);
                mpfr_mul(im.v, base.v, s3h.v, MPFR_RNDN);
                if (k == 2)
                    mpfr_neg(im.v, im.v, MPFR_RNDN);
            };
            rot(delta, j, djre[j], djim[j]);
            rot(dbar, (2 * j) % 3, dbre[j], dbim[j]);
        }
    }
};

void embed_field(embed_ctx& C, const field_element& e, int j, mreal& re, mreal& im)
{
    mpfr_mul_q(C.t1.v, C.djre[j].v, e.y.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(C.t2.v, C.dbre[j].v, e.z.get_mpq_t(), MPFR_RNDN);
    mpfr_add(re.v, C.t1.v, C.t2.v, MPFR_RNDN);
    mpfr_add_q(re.v, re.v, e.x.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(C.t1.v, C.djim[j].v, e.y.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(C.t2.v, C.dbim[j].v, e.z.get_mpq_t(), MPFR_RNDN);
    mpfr_add(im.v, C.t1.v, C.t2.v, MPFR_RNDN);
}

void embed_k(embed_ctx& C, const k_element& w, int j, mreal& re, mreal& im)
{
    mreal pre(C.prec), pim(C.prec), qre(C.prec), qim(C.prec);
    embed_field(C, w.p, j, pre, pim);
    embed_field(C, w.q, j, qre, qim);
    /* + (qre + i qim)(-1/2 + i s3h) */
    mpfr_div_si(C.t1.v, qre.v, -2, MPFR_RNDN);
    mpfr_mul(C.t2.v, qim.v, C.s3h.v, MPFR_RNDN);
    mpfr_sub(C.t1.v, C.t1.v, C.t2.v, MPFR_RNDN);
    mpfr_add(re.v, pre.v, C.t1.v, MPFR_RNDN);
    mpfr_div_si(C.t1.v, qim.v, -2, MPFR_RNDN);
    mpfr_mul(C.t2.v, qre.v, C.s3h.v, MPFR_RNDN);
    mpfr_add(C.t1.v, C.t1.v, C.t2.v, MPFR_RNDN);
    mpfr_add(im.v, pim.v, C.t1.v, MPFR_RNDN);
}

/* selected cube root of (re, im): branch t of 3 */
void complex_cbrt(embed_ctx& C, const mreal& re, const mreal& im, int t,
                  mreal& ore, mreal& oim)
{
    mpfr_hypot(C.t1.v, re.v, im.v, MPFR_RNDN);
    mpfr_cbrt(C.t1.v, C.t1.v, MPFR_RNDN); /* magnitude */
    mpfr_atan2(C.t2.v, im.v, re.v, MPFR_RNDN);
    if (t != 0) {
        mpfr_mul_si(C.t3.v, C.pi.v, 2 * t, MPFR_RNDN);
        mpfr_add(C.t2.v, C.t2.v, C.t3.v, MPFR_RNDN);
    }
    mpfr_div_ui(C.t2.v, C.t2.v, 3, MPFR_RNDN);
    mpfr_sin_cos(C.t3.v, C.t4.v, C.t2.v, MPFR_RNDN);
    mpfr_mul(ore.v, C.t1.v, C.t4.v, MPFR_RNDN);
    mpfr_mul(oim.v, C.t1.v, C.t3.v, MPFR_RNDN);
}

/* multiply (re, im) by omega^k in place */
void rotate(embed_ctx& C, mreal& re, mreal& im, int k)
{
    if (k == 0)
        return;
    mpfr_mul(C.t1.v, re.v, C.s3h.v, MPFR_RNDN);
    mpfr_mul(C.t2.v, im.v, C.s3h.v, MPFR_RNDN);
    mpfr_div_si(re.v, re.v, -2, MPFR_RNDN);
    mpfr_div_si(im.v, im.v, -2, MPFR_RNDN);
    if (k == 1) {
        mpfr_sub(re.v, re.v, C.t2.v, MPFR_RNDN);
        mpfr_add(im.v, im.v, C.t1.v, MPFR_RNDN);
    } else {
        mpfr_add(re.v, re.v, C.t2.v, MPFR_RNDN);
        mpfr_sub(im.v, im.v, C.t1.v, MPFR_RNDN);
    }
}

/* nearest rational with denominator 9; false when not close */
bool round_ninths(embed_ctx& C, const mreal& v, mpq_class& out)
{
    mpfr_mul_ui(C.t1.v, v.v, 9, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), C.t1.v, MPFR_RNDN);
    mpfr_sub_z(C.t1.v, C.t1.v, z.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(C.t1.v, C.t1.v, MPFR_RNDN);
    if (mpfr_cmp_d(C.t1.v, 1.0 / 16) > 0)
        return false;
    out = mpq_class(z, 9);
    out.canonicalize();
    return true;
}

bool reconstruct_in_L(const cubic_field& F, const field_element& w,
                      mpfr_prec_t prec, field_element& out)
{
    embed_ctx C(F, prec);
    mreal v0re(prec), v0im(prec), v1re(prec), v1im(prec);
    embed_field(C, w, 0, v0re, v0im);
    embed_field(C, w, 1, v1re, v1im);
    mreal e0(prec), e1re(prec), e1im(prec), c(prec);
    mpfr_cbrt(e0.v, v0re.v, MPFR_RNDN); /* the real root */
    for (int t = 0; t < 3; ++t) {
        complex_cbrt(C, v1re, v1im, t, e1re, e1im);
        mpq_class co[3];
        bool ok = true;
        for (int m = 0; m < 3 && ok; ++m) {
            /* c_m = (e0 + 2 Re(omega^(-m) e1)) / (3 radical_m) */
            mreal rre(prec), rim(prec);
            mpfr_set(rre.v, e1re.v, MPFR_RNDN);
            mpfr_set(rim.v, e1im.v, MPFR_RNDN);
            rotate(C, rre, rim, (3 - m) % 3);
            mpfr_mul_ui(c.v, rre.v, 2, MPFR_RNDN);
            mpfr_add(c.v, c.v, e0.v, MPFR_RNDN);
            mpfr_div_ui(c.v, c.v, 3, MPFR_RNDN);
            if (m == 1)
                mpfr_div(c.v, c.v, C.delta.v, MPFR_RNDN);
            else if (m == 2)
                mpfr_div(c.v, c.v, C.dbar.v, MPFR_RNDN);
            ok = round_ninths(C, c, co[m]);
        }
        if (!ok)
            continue;
        field_element cand(F, co[0], co[1], co[2]);
        if (pow_int(cand, 3) == w) {
            out = cand;
            return true;
        }
    }
    return false;
}

bool reconstruct_in_k(const cubic_field& F, const k_element& w,
                      mpfr_prec_t prec, k_element& out)
{
    embed_ctx C(F, prec);
    mreal vre[3] = {mreal(prec), mreal(prec), mreal(prec)};
    mreal vim[3] = {mreal(prec), mreal(prec), mreal(prec)};
    for (int j = 0; j < 3; ++j)
        embed_k(C, w, j, vre[j], vim[j]);
    mreal e0re(prec), e0im(prec), e1re(prec), e1im(prec), e2re(prec), e2im(prec);
    mreal sre(prec), sim(prec), xr(prec), yr(prec);
    complex_cbrt(C, vre[0], vim[0], 0, e0re, e0im);
    for (int t1 = 0; t1 < 3; ++t1) {
        complex_cbrt(C, vre[1], vim[1], t1, e1re, e1im);
        for (int t2 = 0; t2 < 3; ++t2) {
            complex_cbrt(C, vre[2], vim[2], t2, e2re, e2im);
            mpq_class xs[3], ys[3];
            bool ok = true;
            for (int m = 0; m < 3 && ok; ++m) {
                /* c_m = (e0 + w^-m e1 + w^-2m e2) / (3 radical_m) */
                mreal r1re(prec), r1im(prec), r2re(prec), r2im(prec);
                mpfr_set(r1re.v, e1re.v, MPFR_RNDN);
                mpfr_set(r1im.v, e1im.v, MPFR_RNDN);
                rotate(C, r1re, r1im, (3 - m) % 3);
                mpfr_set(r2re.v, e2re.v, MPFR_RNDN);
                mpfr_set(r2im.v, e2im.v, MPFR_RNDN);
                rotate(C, r2re, r2im, (3 - 2 * m % 3) % 3);
                mpfr_add(sre.v, e0re.v, r1re.v, MPFR_RNDN);
                mpfr_add(sre.v, sre.v, r2re.v, MPFR_RNDN);
                mpfr_add(sim.v, e0im.v, r1im.v, MPFR_RNDN);
                mpfr_add(sim.v, sim.v, r2im.v, MPFR_RNDN);
                mpfr_div_ui(sre.v, sre.v, 3, MPFR_RNDN);
                mpfr_div_ui(sim.v, sim.v, 3, MPFR_RNDN);
                if (m == 1) {
                    mpfr_div(sre.v, sre.v, C.delta.v, MPFR_RNDN);
                    mpfr_div(sim.v, sim.v, C.delta.v, MPFR_RNDN);
                } else if (m == 2) {
                    mpfr_div(sre.v, sre.v, C.dbar.v, MPFR_RNDN);
                    mpfr_div(sim.v, sim.v, C.dbar.v, MPFR_RNDN);
                }
                /* c = x + y zeta3: y = 2 im / sqrt 3, x = re + y/2 */
                mpfr_div(yr.v, sim.v, C.s3h.v, MPFR_RNDN);
                mpfr_div_ui(xr.v, yr.v, 2, MPFR_RNDN);
                mpfr_add(xr.v, xr.v, sre.v, MPFR_RNDN);
                ok = round_ninths(C, xr, xs[m]) && round_ninths(C, yr, ys[m]);
            }
            if (!ok)
                continue;
            k_element cand(field_element(F, xs[0], xs[1], xs[2]),
                           field_element(F, ys[0], ys[1], ys[2]));
            if (pow_int(cand, 3) == w) {
                out = cand;
                return true;
            }
        }
    }
    return false;
}

size_t rational_bits(const mpq_class& q)
{
    return std::max(mpz_sizeinbase(q.get_num().get_mpz_t(), 2),
                    mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
}

size_t field_bits(const field_element& e)
{
    return std::max({rational_bits(e.x), rational_bits(e.y), rational_bits(e.z)});
}

mpfr_prec_t starting_prec(size_t bits, const cube_budget& budget)
{
    mpfr_prec_t p = (mpfr_prec_t)(bits / 2 + 192);
    return std::min(p, budget.max_bits);
}

const cubic_field& field_of(const k_element& w) { return *w.p.F; }

} // namespace

/* ------------------------------------------------------------------ */
/* public operations                                                   */
/* ------------------------------------------------------------------ */

cube_test_k is_cube_in_k(const k_element& w, const cube_budget& budget)
{
    const cubic_field& F = field_of(w);
    prime_stream ps(F.r);
    int tried = 0;
    mpfr_prec_t prec = starting_prec(std::max(field_bits(w.p), field_bits(w.q)), budget);
    bool precision_left = budget.max_bits > 0;
    while (tried < budget.max_primes || precision_left) {
        for (int i = 0; i < 8 && tried < budget.max_primes; ++i, ++tried) {
            split_prime sp = ps.take();
            int64_t red;
            if (!reduce_k(w, sp, red) || red == 0)
                continue;
            int chi = character(red, sp);
            if (chi > 0) {
                cube_test_k res;
                res.cube = false;
                res.witness = {sp.p, sp.r, sp.omega, chi};
                return res;
            }
        }
        if (precision_left) {
            cube_test_k res;
            if (reconstruct_in_k(F, w, prec, res.root)) {
                res.cube = true;
                return res;
            }
            if (prec >= budget.max_bits)
                precision_left = false;
            else
                prec = std::min(prec * 2, budget.max_bits);
        }
    }
    throw undecided("cube test in k ran out of primes and precision");
}

cube_test_L is_cube_in_L(const field_element& w, const cube_budget& budget)
{
    const cubic_field& F = *w.F;
    prime_stream ps(F.r);
    int tried = 0;
    mpfr_prec_t prec = starting_prec(field_bits(w), budget);
    bool precision_left = budget.max_bits > 0;
    while (tried < budget.max_primes || precision_left) {
        for (int i = 0; i < 8 && tried < budget.max_primes; ++i, ++tried) {
            split_prime sp = ps.take();
            int64_t red;
            if (!reduce_field(w, sp, red) || red == 0)
                continue;
            int chi = character(red, sp);
            if (chi > 0) {
                cube_test_L res;
                res.cube = false;
                res.witness = {sp.p, sp.r, sp.omega, chi};
                return res;
            }
        }
        if (precision_left) {
            cube_test_L res;
            if (reconstruct_in_L(F, w, prec, res.root)) {
                res.cube = true;
                return res;
            }
            if (prec >= budget.max_bits)
                precision_left = false;
            else
                prec = std::min(prec * 2, budget.max_bits);
        }
    }
    throw undecided("cube test in L ran out of primes and precision");
}

namespace {

/* replace eps by its cube root while it is a cube in L, so that the classes
 * generated below match those of the fundamental unit */
field_element cube_reduce_unit(const field_element& eps, const cube_budget& budget)
{
    field_element u = eps;
    for (int i = 0; i < 8; ++i) {
        cube_test_L t = is_cube_in_L(u, budget);
        if (!t.cube)
            return u;
        u = t.root;
    }
    throw undecided("unit cube reduction did not stabilize");
}

} // namespace

unit_index_result subfield_unit_index(const cubic_field& F, const field_element& eps,
                                      const cube_budget& budget)
{
    field_element unit = cube_reduce_unit(eps, budget);
    k_element gen_eps = k_element::from_field(unit);
    k_element gen_sigma = sigma_embed(unit);

    /* the 13 classes modulo inversion: first nonzero exponent equal to 1 */
    std::vector<std::array<int, 3>> classes;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                std::array<int, 3> v{a, b, c};
                int lead = a ? a : b ? b : c;
                if (lead == 1)
                    classes.push_back(v);
            }

    unit_index_result res;
    std::vector<char> alive(classes.size(), 1);
    std::vector<residue_witness> why(classes.size());
    size_t alive_count = classes.size();

    prime_stream ps(F.r);
    int tried = 0;
    mpfr_prec_t prec = starting_prec(field_bits(unit) * 2 + 64, budget);
    bool precision_left = budget.max_bits > 0;

    while (tried < budget.max_primes || precision_left) {
        for (int i = 0; i < 4 && tried < budget.max_primes; ++i, ++tried) {
            split_prime sp = ps.take();
            int64_t re, rs;
            if (!reduce_field(unit, sp, re) || !reduce_k(gen_sigma, sp, rs) ||
                re == 0 || rs == 0)
                continue;
            int tz = (int)(sp.m % 3); /* character of zeta3 at this prime */
            int te = character(re, sp);
            int ts = character(rs, sp);
            for (size_t c = 0; c < classes.size(); ++c) {
                if (!alive[c])
                    continue;
                int val = (classes[c][0] * tz + classes[c][1] * te +
                           classes[c][2] * ts) % 3;
                if (val != 0) {
                    alive[c] = 0;
                    why[c] = {sp.p, sp.r, sp.omega, val};
                    --alive_count;
                }
            }
        }
        if (alive_count == 0) {
            res.Q = 1;
            for (size_t c = 0; c < classes.size(); ++c)
                res.killed.push_back({classes[c], why[c]});
            return res;
        }
        if (precision_left) {
            for (size_t c = 0; c < classes.size(); ++c) {
                if (!alive[c])
                    continue;
                k_element w = pow_int(k_element::zeta(F), classes[c][0]) *
                              pow_int(gen_eps, classes[c][1]) *
                              pow_int(gen_sigma, classes[c][2]);
                k_element root;
                if (reconstruct_in_k(F, w, prec, root)) {
                    res.Q = 3;
                    res.cube_class = classes[c];
                    res.root = root;
                    return res;
                }
            }
            if (prec >= budget.max_bits)
                precision_left = false;
            else
                prec = std::min(prec * 2, budget.max_bits);
        }
    }
    throw undecided("unit index sieve left classes unresolved at budget");
}

pf_search_result discover_principal_factor(const cubic_field& F, const field_element& eps,
                                           const cube_budget& budget)
{
    field_element unit = cube_reduce_unit(eps, budget);

    std::vector<int64_t> qs;
    for (auto [p, e] : factorize(F.r.R))
        qs.push_back(p);
    size_t nq = qs.size();
    std::vector<int> vd(nq);
    for (size_t i = 0; i < nq; ++i)
        vd[i] = valuation(F.r.d, qs[i]) % 3;

    auto shifted = [&](const std::vector<int>& e, int k) {
        std::vector<int> s(nq);
        for (size_t i = 0; i < nq; ++i)
            s[i] = (e[i] + k * vd[i]) % 3;
        return s;
    };
    auto canon = [&](const std::vector<int>& e) {
        std::vector<int> best = e;
        for (int k = 1; k < 3; ++k)
            best = std::min(best, shifted(e, k));
        return best;
    };
    auto norm_of = [&](const std::vector<int>& e) {
        int64_t n = 1;
        for (size_t i = 0; i < nq; ++i)
            for (int k = 0; k < e[i]; ++k)
                n *= qs[i];
        return n;
    };

    struct candidate {
        std::vector<int> exps; /* of the least norm in the class */
        int64_t n = 1;
        int j = 0;
        bool alive = true;
    };
    std::vector<candidate> cands;

    std::vector<int> zero(nq, 0);
    std::vector<int> e(nq, 0);
    std::vector<std::vector<int>> taken;
    for (;;) {
        if (e == canon(e) && canon(e) != canon(zero)) {
            std::vector<int> twice(nq);
            for (size_t i = 0; i < nq; ++i)
                twice[i] = (2 * e[i]) % 3;
            std::vector<int> inverse = canon(twice);
            if (std::find(taken.begin(), taken.end(), inverse) == taken.end()) {
                taken.push_back(e);
                std::vector<int> best = e;
                int64_t n = norm_of(e);
                for (int k = 1; k < 3; ++k) {
                    std::vector<int> s = shifted(e, k);
                    int64_t m = norm_of(s);
                    if (m < n) {
                        n = m;
                        best = s;
                    }
                }
                for (int j = 0; j < 3; ++j)
                    cands.push_back({best, n, j, true});
            }
        }
        size_t i = 0;
        while (i < nq && e[i] == 2)
            e[i++] = 0;
        if (i == nq)
            break;
        ++e[i];
    }
    if (cands.empty())
        return {};

    prime_stream ps(F.r);
    int tried = 0;
    size_t alive_count = cands.size();
    mpfr_prec_t prec = starting_prec(field_bits(unit) + 64, budget);
    bool precision_left = budget.max_bits > 0;

    while (tried < budget.max_primes || precision_left) {
        for (int i = 0; i < 4 && tried < budget.max_primes; ++i, ++tried) {
            split_prime sp = ps.take();
            int64_t re;
            if (!reduce_field(unit, sp, re) || re == 0)
                continue;
            int te = character(re, sp);
            std::vector<int> tq(nq);
            for (size_t q = 0; q < nq; ++q)
                tq[q] = character(qs[q] % sp.p, sp);
            for (auto& c : cands) {
                if (!c.alive)
                    continue;
                int val = c.j * te;
                for (size_t q = 0; q < nq; ++q)
                    val += c.exps[q] * tq[q];
                if (val % 3 != 0) {
                    c.alive = false;
                    --alive_count;
                }
            }
        }
        if (alive_count == 0)
            return {};
        if (precision_left) {
            for (auto& c : cands) {
                if (!c.alive)
                    continue;
                field_element w = mpq_class(c.n) * pow_int(unit, c.j);
                field_element root;
                if (reconstruct_in_L(F, w, prec, root)) {
                    pf_search_result res;
                    res.found = true;
                    res.element = root;
                    res.norm = c.n;
                    return res;
                }
            }
            if (prec >= budget.max_bits)
                precision_left = false;
            else
                prec = std::min(prec * 2, budget.max_bits);
        }
    }
    throw undecided("principal factor search exhausted its budget");
}

} // namespace pcf
