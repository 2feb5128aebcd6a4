#include "pcf/voronoi.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "pcf/interval.hpp"

namespace pcf {

namespace {

constexpr int64_t enum_budget_default = 4'000'000;

/* ---------- interval backends for the embedding ---------- */

struct bk_d {
    using iv = ivd;
    const cubic_field* F;
    bk_d(const cubic_field& f, mpfr_prec_t = 0) : F(&f) {}
    ivd val(const field_element& e) const
    {
        return ivd::from_mpq(e.x) + ivd::from_mpq(e.y) * F->delta + ivd::from_mpq(e.z) * F->deltabar;
    }
    static ivd from_i64(int64_t v) { return ivd::from_i64(v); }
    static ivd half(const ivd& a) { return {0.5 * a.lo, 0.5 * a.hi}; }
};

struct bk_m {
    using iv = ivm;
    const cubic_field* F;
    mpfr_prec_t prec;
    ivm del, dbar;
    bk_m(const cubic_field& f, mpfr_prec_t p) : F(&f), prec(p), del(f.delta_ivm(p)), dbar(f.deltabar_ivm(p)) {}
    ivm val(const field_element& e) const
    {
        return ivm::from_mpq(e.x, prec) + ivm::from_mpq(e.y, prec) * del + ivm::from_mpq(e.z, prec) * dbar;
    }
    static ivm from_i64(int64_t v) { return ivm::from_i64(v); }
    static ivm half(const ivm& a)
    {
        ivm r(mpfr_get_prec(a.lo));
        mpfr_div_2ui(r.lo, a.lo, 1, MPFR_RNDD);
        mpfr_div_2ui(r.hi, a.hi, 1, MPFR_RNDU);
        return r;
    }
};

template <class BK>
struct embed_rows {
    std::array<typename BK::iv, 3> h;                 /* real values */
    std::array<std::array<typename BK::iv, 3>, 3> s2; /* half cpB values: the r^2 Gram */
};

template <class BK>
embed_rows<BK> embed_basis(const BK& bk, const std::array<field_element, 3>& basis)
{
    embed_rows<BK> E;
    for (int i = 0; i < 3; ++i)
        E.h[i] = bk.val(basis[i]);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            E.s2[i][j] = BK::half(bk.val(conjugate_product_bilinear(basis[i], basis[j])));
            if (j != i)
                E.s2[j][i] = E.s2[i][j];
        }
    return E;
}

template <class BK>
typename BK::iv r2_of(const embed_rows<BK>& E, const std::array<int64_t, 3>& m)
{
    using IV = typename BK::iv;
    IV acc = sq(BK::from_i64(m[0])) * E.s2[0][0];
    acc = acc + sq(BK::from_i64(m[1])) * E.s2[1][1];
    acc = acc + sq(BK::from_i64(m[2])) * E.s2[2][2];
    IV two = BK::from_i64(2);
    acc = acc + two * BK::from_i64(m[0] * m[1]) * E.s2[0][1];
    acc = acc + two * BK::from_i64(m[0] * m[2]) * E.s2[0][2];
    acc = acc + two * BK::from_i64(m[1] * m[2]) * E.s2[1][2];
    return acc;
}

template <class BK>
typename BK::iv h_of(const embed_rows<BK>& E, const std::array<int64_t, 3>& m)
{
    return BK::from_i64(m[0]) * E.h[0] + BK::from_i64(m[1]) * E.h[1] + BK::from_i64(m[2]) * E.h[2];
}

/* All integer m != 0 with r2(m)/A + h(m)^2/B2 <= 2, an outer enclosure of
 * the cylinder {r2 <= A, h^2 <= B2}.  Returns false when the backend loses
 * certainty (caller escalates); throws enumeration_overflow when the budget
 * runs out. */
template <class BK>
bool enumerate_ellipsoid(const embed_rows<BK>& E, const typename BK::iv& A,
                         const typename BK::iv& B2, int64_t budget,
                         std::vector<std::array<int64_t, 3>>& out)
{
    using IV = typename BK::iv;
    if (!A.pos() || !B2.pos())
        return false;
    IV q[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            q[i][j] = div_pos(E.s2[i][j], A) + div_pos(E.h[i] * E.h[j], B2);
    IV l[3][3];
    for (int i = 0; i < 3; ++i) {
        if (!q[i][i].finite() || !q[i][i].pos())
            return false;
        for (int j = i + 1; j < 3; ++j)
            l[i][j] = div_pos(q[i][j], q[i][i]);
        for (int j = i + 1; j < 3; ++j)
            for (int k = j; k < 3; ++k)
                q[j][k] = q[j][k] - q[i][j] * l[i][k];
    }
    /* now Q(m) = sum_i q[i][i] (m_i + sum_{j>i} l[i][j] m_j)^2 */
    std::array<int64_t, 3> m{0, 0, 0};
    bool ok = true;
    int64_t used = 0;
    auto rec = [&](auto&& self, int i, const IV& T) -> void {
        if (!ok)
            return;
        if (!T.finite()) {
            ok = false;
            return;
        }
        IV U = BK::from_i64(0);
        for (int j = i + 1; j < 3; ++j)
            U = U + l[i][j] * BK::from_i64(m[j]);
        IV rad = sqrt_pos(div_pos(T, q[i][i]));
        int64_t lo = (-U - rad).ceil_lo();
        int64_t hi = (-U + rad).floor_hi();
        if (lo < -budget || hi > budget || hi - lo > budget)
            throw enumeration_overflow("level width exceeds the enumeration budget");
        for (int64_t v = lo; v <= hi; ++v) {
            if (++used > budget)
                throw enumeration_overflow("too many lattice points in the search region");
            m[i] = v;
            IV t = BK::from_i64(v) + U;
            IV T2 = T - q[i][i] * sq(t);
            if (!T2.finite()) {
                ok = false;
                return;
            }
            if (T2.neg())
                continue;
            if (i == 0) {
                if (m[0] != 0 || m[1] != 0 || m[2] != 0)
                    out.push_back(m);
            } else {
                self(self, i - 1, T2);
            }
            if (!ok)
                return;
        }
        m[i] = 0;
    };
    IV two = BK::from_i64(2);
    rec(rec, 2, two);
    return ok;
}

/* ---------- size reduction ---------- */

/* T2 Gram entry from exact data, double precision: h_i h_j + cpB value. */
double t2_entry_d(const cubic_field& F, const std::array<field_element, 3>& b, int i, int j)
{
    bk_d bk(F);
    double h = bk.val(b[i]).mid() * bk.val(b[j]).mid();
    return h + bk.val(conjugate_product_bilinear(b[i], b[j])).mid();
}

/* Plain LLL on the T2 form with the exact basis mirrored; used after every
 * chain rescale, where the basis is already nearly reduced. */
void lll_t2(const cubic_field& F, std::array<field_element, 3>& b)
{
    for (int iter = 0; iter < 200; ++iter) {
        double g[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                g[j][i] = g[i][j] = t2_entry_d(F, b, i, j);
        double B0 = g[0][0];
        if (!(B0 > 0))
            return;
        double mu10 = g[1][0] / B0;
        double B1 = g[1][1] - mu10 * g[1][0];
        if (!(B1 > 0))
            return;
        double mu20 = g[2][0] / B0;
        double mu21 = (g[2][1] - mu20 * g[1][0]) / B1;
        bool changed = false;
        auto reduce = [&](int k, int j, double mu) {
            if (changed || !(std::fabs(mu) > 0.5 + 1e-9))
                return;
            double qd = std::nearbyint(mu);
            if (std::fabs(qd) < 9e15) {
                b[k] = b[k] - mpq_class(static_cast<long>(qd)) * b[j];
                changed = true;
            }
        };
        reduce(1, 0, mu10);
        reduce(2, 1, mu21);
        reduce(2, 0, mu20);
        if (changed)
            continue;
        double B2 = g[2][2] - mu20 * g[2][0] - mu21 * (g[2][1] - mu20 * g[1][0]);
        if (B1 < (0.75 - mu10 * mu10) * B0) {
            std::swap(b[0], b[1]);
            continue;
        }
        if (B2 < (0.75 - mu21 * mu21) * B1) {
            std::swap(b[1], b[2]);
            continue;
        }
        return;
    }
}

/* mpfr real helper for the wide-range reduction */
struct mreal {
    mpfr_t v;
    explicit mreal(mpfr_prec_t p = 113)
    {
        mpfr_init2(v, p);
        mpfr_set_zero(v, 1);
    }
    mreal(const mreal& o)
    {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    mreal(mreal&& o) noexcept
    {
        mpfr_init2(v, 53);
        mpfr_swap(v, o.v);
    }
    mreal& operator=(mreal o)
    {
        mpfr_swap(v, o.v);
        return *this;
    }
    ~mreal() { mpfr_clear(v); }
};

mreal val_m(const field_element& e, const mreal& del, const mreal& dbar, mpfr_prec_t p)
{
    mreal r(p), t(p);
    mpfr_set_q(r.v, e.x.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(t.v, e.y.get_mpq_t(), MPFR_RNDN);
    mpfr_fma(r.v, t.v, del.v, r.v, MPFR_RNDN);
    mpfr_set_q(t.v, e.z.get_mpq_t(), MPFR_RNDN);
    mpfr_fma(r.v, t.v, dbar.v, r.v, MPFR_RNDN);
    return r;
}

/* LLL with mpfr scalars on the weighted form r2 * wr + h^2 * wh; the
 * unimodular operations are applied to the exact basis, with multipliers as
 * exact integers.  Needed before enumerating needle-shaped regions, where
 * the two weights differ by hundreds of orders of magnitude. */
void lll_weighted_m(const cubic_field& F, std::array<field_element, 3>& b, const mreal& wr,
                    const mreal& wh, mpfr_prec_t p)
{
    mreal del(p), dbar(p);
    mpfr_set_sj(del.v, F.r.d, MPFR_RNDN);
    mpfr_cbrt(del.v, del.v, MPFR_RNDN);
    mpfr_set_sj(dbar.v, F.r.dbar, MPFR_RNDN);
    mpfr_cbrt(dbar.v, dbar.v, MPFR_RNDN);

    auto gram = [&](int i, int j) {
        mreal g(p), t(p);
        /* r2 part: cpB/2 * wr */
        mreal c = val_m(conjugate_product_bilinear(b[i], b[j]), del, dbar, p);
        mpfr_mul(g.v, c.v, wr.v, MPFR_RNDN);
        mpfr_div_2ui(g.v, g.v, 1, MPFR_RNDN);
        /* height part */
        mreal hi = val_m(b[i], del, dbar, p), hj = val_m(b[j], del, dbar, p);
        mpfr_mul(t.v, hi.v, hj.v, MPFR_RNDN);
        mpfr_mul(t.v, t.v, wh.v, MPFR_RNDN);
        mpfr_add(g.v, g.v, t.v, MPFR_RNDN);
        return g;
    };

    for (int iter = 0; iter < 600; ++iter) {
        mreal g[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                g[i][j] = gram(i, j);
                if (j != i)
                    g[j][i] = g[i][j];
            }
        if (mpfr_sgn(g[0][0].v) <= 0)
            return;
        mreal B0 = g[0][0];
        mreal mu10(p);
        mpfr_div(mu10.v, g[1][0].v, B0.v, MPFR_RNDN);
        mreal B1(p), t(p);
        mpfr_mul(t.v, mu10.v, g[1][0].v, MPFR_RNDN);
        mpfr_sub(B1.v, g[1][1].v, t.v, MPFR_RNDN);
        if (mpfr_sgn(B1.v) <= 0)
            return;
        mreal mu20(p), mu21(p);
        mpfr_div(mu20.v, g[2][0].v, B0.v, MPFR_RNDN);
        mpfr_mul(t.v, mu20.v, g[1][0].v, MPFR_RNDN);
        mpfr_sub(mu21.v, g[2][1].v, t.v, MPFR_RNDN);
        mpfr_div(mu21.v, mu21.v, B1.v, MPFR_RNDN);

        bool changed = false;
        auto reduce = [&](int k, int j, const mreal& mu) {
            if (changed)
                return;
            mreal a(p);
            mpfr_abs(a.v, mu.v, MPFR_RNDN);
            if (mpfr_cmp_d(a.v, 0.50000001) <= 0)
                return;
            mpfr_round(a.v, mu.v);
            mpz_class q;
            mpfr_get_z(q.get_mpz_t(), a.v, MPFR_RNDN);
            if (q == 0)
                return;
            b[k] = b[k] - mpq_class(q) * b[j];
            changed = true;
        };
        reduce(1, 0, mu10);
        reduce(2, 1, mu21);
        reduce(2, 0, mu20);
        if (changed)
            continue;

        /* Lovasz */
        mreal B2(p);
        mpfr_mul(t.v, mu20.v, g[2][0].v, MPFR_RNDN);
        mpfr_sub(B2.v, g[2][2].v, t.v, MPFR_RNDN);
        mreal u(p);
        mpfr_mul(u.v, mu20.v, g[1][0].v, MPFR_RNDN);
        mpfr_sub(u.v, g[2][1].v, u.v, MPFR_RNDN);
        mpfr_mul(u.v, u.v, mu21.v, MPFR_RNDN);
        mpfr_sub(B2.v, B2.v, u.v, MPFR_RNDN);

        auto lovasz_fails = [&](const mreal& Bk, const mreal& Bk1, const mreal& mu) {
            mreal lhs(p);
            mpfr_mul(lhs.v, mu.v, mu.v, MPFR_RNDN);
            mpfr_d_sub(lhs.v, 0.75, lhs.v, MPFR_RNDN);
            mpfr_mul(lhs.v, lhs.v, Bk.v, MPFR_RNDN);
            return mpfr_cmp(Bk1.v, lhs.v) < 0;
        };
        if (lovasz_fails(B0, B1, mu10)) {
            std::swap(b[0], b[1]);
            continue;
        }
        if (lovasz_fails(B1, B2, mu21)) {
            std::swap(b[1], b[2]);
            continue;
        }
        return;
    }
}

field_element combo(const std::array<field_element, 3>& b, const std::array<int64_t, 3>& m)
{
    return m[0] * b[0] + m[1] * b[1] + m[2] * b[2];
}

/* exact comparison r2(u) ? r2(v): sign of value(cp(v) - cp(u)) */
int r2_compare(const field_element& u, const field_element& v)
{
    return exact_sign(conjugate_product(v) - conjugate_product(u)); /* >0 iff r2(u) < r2(v) */
}

} // namespace

/* hi_sign helpers so the template can ask for the sign of the upper end */
/* (member shims live here to keep the header lean) */

bool is_pf_norm(const radicand& r, const mpz_class& n)
{
    if (n <= 1)
        return false;
    mpz_class R2 = mpz_class(r.R) * r.R;
    if (!mpz_divisible_p(R2.get_mpz_t(), n.get_mpz_t()))
        return false;
    return n != r.d && n != r.dbar;
}

reduced_lattice start_lattice(const cubic_order& O)
{
    reduced_lattice lat;
    lat.O = &O;
    lat.basis = O.basis;
    lll_t2(*O.F, lat.basis);
    lat.theta = field_element::one(*O.F);
    lat.theta_norm = 1;
    lat.steps = 0;
    lat.log_height = 0.0;
    double det = std::max(1.0, std::fabs(static_cast<double>(O.F->r.d)));
    lat.rho2_hint = std::max(4.0, std::cbrt(det));
    return lat;
}

namespace {

struct step_candidate {
    std::array<int64_t, 3> m;
    field_element elem; /* oriented to positive height */
    ivd h, r2;
    bool r2_in_rho;
};

} // namespace

field_element adjacent_step(reduced_lattice& lat)
{
    const cubic_field& F = *lat.O->F;
    bk_d bk(F);

    std::vector<std::array<int64_t, 3>> raw;
    std::vector<step_candidate> cands;

    double rho2 = lat.rho2_hint;
    for (int grow = 0; grow < 120; ++grow, rho2 *= 2.0) {
        raw.clear();
        cands.clear();
        auto E = embed_basis(bk, lat.basis);
        ivd A{rho2, rho2};
        ivd B2 = ivd::exact(1.0);
        bool ok = false;
        try {
            ok = enumerate_ellipsoid(E, A, B2, enum_budget_default, raw);
        } catch (const enumeration_overflow&) {
            ok = false;
        }
        if (ok) {
            bool have_certain = false;
            for (const auto& m : raw) {
                ivd h = h_of(E, m);
                std::array<int64_t, 3> mm = m;
                field_element el = combo(lat.basis, m);
                int hs;
                if (h.pos())
                    hs = 1;
                else if (h.neg())
                    hs = -1;
                else
                    hs = exact_sign(el);
                if (hs == 0)
                    throw hypothesis_violated("zero lattice combination in the step search");
                if (hs < 0) {
                    for (auto& c : mm)
                        c = -c;
                    el = -el;
                    h = -h;
                }
                /* need value < 1, exact on straddle; value == 1 is the unit
                 * itself and is skipped */
                bool below_one;
                if (h.hi < 1.0)
                    below_one = true;
                else if (h.lo > 1.0)
                    below_one = false;
                else
                    below_one = exact_sign(el - field_element::one(F)) < 0;
                if (!below_one)
                    continue;
                step_candidate c;
                c.m = mm;
                c.elem = std::move(el);
                c.h = h;
                c.r2 = r2_of(E, mm);
                c.r2_in_rho = c.r2.hi <= rho2;
                if (c.r2_in_rho)
                    have_certain = true;
                cands.push_back(std::move(c));
            }
            if (have_certain)
                break;
        } else {
            /* double screen failed: retry this radius with the wide backend */
            for (mpfr_prec_t prec : {mpfr_prec_t(113), mpfr_prec_t(256)}) {
                bk_m bw(F, prec);
                auto Ew = embed_basis(bw, lat.basis);
                ivm Aw = ivm::from_i64(0);
                mpfr_set_d(Aw.lo, rho2, MPFR_RNDD);
                mpfr_set_d(Aw.hi, rho2, MPFR_RNDU);
                ivm B2w = ivm::from_i64(1);
                raw.clear();
                if (!enumerate_ellipsoid(Ew, Aw, B2w, enum_budget_default, raw))
                    continue;
                bool have_certain = false;
                cands.clear();
                for (const auto& m : raw) {
                    ivm h = h_of(Ew, m);
                    std::array<int64_t, 3> mm = m;
                    field_element el = combo(lat.basis, m);
                    int hs;
                    if (h.pos())
                        hs = 1;
                    else if (h.neg())
                        hs = -1;
                    else
                        hs = exact_sign(el);
                    if (hs == 0)
                        throw hypothesis_violated("zero lattice combination in the step search");
                    if (hs < 0) {
                        for (auto& c2 : mm)
                            c2 = -c2;
                        el = -el;
                    }
                    bool below_one = exact_sign(el - field_element::one(F)) < 0;
                    if (!below_one)
                        continue;
                    step_candidate c;
                    c.m = mm;
                    c.elem = std::move(el);
                    ivm r2w = r2_of(Ew, mm);
                    c.h = ivd{mpfr_get_d(h.lo, MPFR_RNDD), mpfr_get_d(h.hi, MPFR_RNDU)};
                    c.r2 = ivd{mpfr_get_d(r2w.lo, MPFR_RNDD), mpfr_get_d(r2w.hi, MPFR_RNDU)};
                    c.r2_in_rho = mpfr_cmp_d(r2w.hi, rho2) <= 0;
                    if (c.r2_in_rho)
                        have_certain = true;
                    cands.push_back(std::move(c));
                }
                if (have_certain)
                    goto found;
            }
        }
    }
found:
    if (cands.empty())
        throw enumeration_overflow("no step candidate found below height 1");

    const step_candidate* best = nullptr;
    for (const auto& c : cands) {
        if (!best) {
            best = &c;
            continue;
        }
        int verdict; /* 1: c better */
        if (c.r2.hi < best->r2.lo)
            verdict = 1;
        else if (c.r2.lo > best->r2.hi)
            verdict = 0;
        else {
            int s = r2_compare(c.elem, best->elem); /* >0 iff r2(c) < r2(best) */
            if (s > 0)
                verdict = 1;
            else if (s < 0)
                verdict = 0;
            else
                verdict = compare_real(c.elem, best->elem) > 0 ? 1 : 0; /* tie: keep taller */
        }
        if (verdict)
            best = &c;
    }

    field_element w = best->elem;
    mpq_class nw = norm(w);
    if (sgn(nw) <= 0)
        throw hypothesis_violated("step element with nonpositive norm " + coord_string(w));
    field_element cpw = conjugate_product(w);
    for (auto& b : lat.basis) {
        field_element t = b * cpw;
        b = {F, t.x / nw, t.y / nw, t.z / nw};
    }
    lat.theta = lat.theta * w;
    mpq_class tn = mpq_class(lat.theta_norm) * nw;
    if (tn.get_den() != 1)
        throw hypothesis_violated("chain norm is not an integer");
    lat.theta_norm = tn.get_num();
    lat.steps += 1;
    double hm = best->h.mid();
    lat.log_height += std::log(std::max(hm, 1e-300));
    lat.rho2_hint = std::max(4.0, 2.0 * std::max(best->r2.hi, 0.0));
    lll_t2(F, lat.basis);
    return w;
}

chain_result run_chain(const cubic_order& O, const chain_options& opt)
{
    const cubic_field& F = *O.F;
    chain_result res;
    res.kind = O.kind;
    lattice_key key0 = canonical_lattice_key(O.basis);

    reduced_lattice lat = start_lattice(O);
    chain_record r0;
    r0.index = 0;
    r0.norm = 1;
    r0.log_height = 0.0;
    if (opt.keep_elements)
        r0.element = field_element::one(F);
    res.records.push_back(std::move(r0));

    int closures = 0;
    while (lat.steps < opt.max_steps) {
        adjacent_step(lat);
        chain_record rec;
        rec.index = -lat.steps;
        rec.norm = lat.theta_norm;
        rec.log_height = lat.log_height;
        if (opt.keep_elements)
            rec.element = lat.theta;
        res.records.push_back(std::move(rec));

        if (lat.theta_norm == F.r.d || lat.theta_norm == F.r.dbar)
            throw hypothesis_violated("chain minimum with a trivial ambiguous norm " + lat.theta_norm.get_str());
        if (is_pf_norm(F.r, lat.theta_norm)) {
            res.pf_indices.push_back(lat.steps);
            if (opt.stop == chain_stop::first_pf)
                return res;
        }
        if (lat.theta_norm == 1) {
            ++closures;
            if (!res.period) {
                res.period = lat.steps;
                if (norm(lat.theta) != 1)
                    throw hypothesis_violated("unit with norm != 1 at the period");
                if (!(canonical_lattice_key(lat.basis) == key0))
                    throw hypothesis_violated("norm 1 reached but the lattice did not return to the order");
                field_element unit = conjugate_product(lat.theta); /* the inverse of theta */
                if (!order_contains(O, unit))
                    throw hypothesis_violated("fundamental unit not in the order");
                res.fundamental_unit = unit;
            } else if (lat.steps != *res.period * closures) {
                throw hypothesis_violated("period closures at inconsistent step counts");
            }
            /* a closed period means no further hit can appear, so the early
             * exit mode stops here as well */
            if (opt.stop != chain_stop::height_floor && closures >= opt.periods)
                return res;
        }
        if (opt.stop == chain_stop::height_floor && !opt.height_floor.is_zero()) {
            if (compare_real(lat.theta, opt.height_floor) < 0)
                return res;
        }
    }
    res.hit_cap = true;
    return res;
}

bool is_lattice_minimum(const cubic_order& O, const field_element& e)
{
    const cubic_field& F = *O.F;
    if (e.is_zero())
        throw hypothesis_violated("minimum test on zero");
    if (!order_contains(O, e))
        throw hypothesis_violated("minimum test on an element outside the order");
    field_element ep = exact_sign(e) < 0 ? -e : e;
    field_element cpe = conjugate_product(ep);

    for (mpfr_prec_t prec : {mpfr_prec_t(113), mpfr_prec_t(256), mpfr_prec_t(512),
                             mpfr_prec_t(1024), mpfr_prec_t(2048), mpfr_prec_t(4096)}) {
        /* reduce a basis copy against the (usually needle shaped) search form;
         * redone per precision, since a deep needle needs the extra bits in
         * the reduction itself, not only in the final enumeration */
        std::array<field_element, 3> b = O.basis;
        {
            mreal del(prec), dbar(prec);
            mpfr_set_sj(del.v, F.r.d, MPFR_RNDN);
            mpfr_cbrt(del.v, del.v, MPFR_RNDN);
            mpfr_set_sj(dbar.v, F.r.dbar, MPFR_RNDN);
            mpfr_cbrt(dbar.v, dbar.v, MPFR_RNDN);
            mreal A = val_m(cpe, del, dbar, prec);
            mreal H = val_m(ep, del, dbar, prec);
            mreal wr(prec), wh(prec);
            mpfr_ui_div(wr.v, 1, A.v, MPFR_RNDN);
            mpfr_mul(wh.v, H.v, H.v, MPFR_RNDN);
            mpfr_ui_div(wh.v, 1, wh.v, MPFR_RNDN);
            lll_weighted_m(F, b, wr, wh, prec);
        }
        bk_m bw(F, prec);
        ivm A = bw.val(cpe);
        ivm H = bw.val(ep);
        if (!A.pos() || !H.pos())
            continue;
        ivm B2 = sq(H);
        auto E = embed_basis(bw, b);
        std::vector<std::array<int64_t, 3>> raw;
        bool complete;
        try {
            complete = enumerate_ellipsoid(E, A, B2, 2 * enum_budget_default, raw);
        } catch (const enumeration_overflow&) {
            continue; /* basis not reduced enough at this precision */
        }
        if (!complete)
            continue;
        for (const auto& m : raw) {
            field_element u = combo(b, m);
            if (u == ep || u == -ep)
                continue;
            if (r2_compare(u, ep) <= 0)
                continue; /* r2(u) >= r2(e) */
            field_element ua = exact_sign(u) < 0 ? -u : u;
            if (compare_real(ua, ep) < 0)
                return false; /* strictly inside the cylinder */
        }
        return true;
    }
    throw enumeration_overflow("minimum test could not be certified");
}

std::vector<field_element> brute_force_minima(const cubic_order& O, const field_element& h_lo,
                                              const field_element& h_hi, int64_t bound)
{
    const cubic_field& F = *O.F;
    bk_d bk(F);
    ivd H1 = bk.val(O.basis[1]);
    ivd H2 = bk.val(O.basis[2]);
    ivd lo_iv = value_iv(h_lo);
    ivd hi_iv = value_iv(h_hi);

    /* Certified quick rejection: a candidate is out as soon as some small
     * lattice point u has both h(u) < h(e) and r2(u) < r2(e) with the strict
     * inequalities visible at interval precision.  Kept as (h_hi, prefix-min
     * of r2_hi) so one binary search answers the question. */
    int64_t K = std::min<int64_t>(bound, 12);
    std::vector<std::pair<double, double>> front; /* (h.hi, r2.hi) sorted by h.hi */
    for (int64_t u1 = -K; u1 <= K; ++u1)
        for (int64_t u2 = -K; u2 <= K; ++u2)
            for (int64_t u3 = -K; u3 <= K; ++u3) {
                if (u1 == 0 && u2 == 0 && u3 == 0)
                    continue;
                field_element u = combo(O.basis, {u1, u2, u3});
                ivd h = value_iv(u);
                if (!(h.lo > 0.0))
                    continue; /* the mirror image covers the other sign */
                ivd r2 = value_iv(conjugate_product(u));
                if (!h.finite() || !r2.finite())
                    continue;
                front.emplace_back(h.hi, r2.hi);
            }
    std::sort(front.begin(), front.end());
    double run = INFINITY;
    for (auto& p : front) {
        run = std::min(run, p.second);
        p.second = run;
    }
    auto surely_beaten = [&](const ivd& h, const ivd& r2) {
        auto it = std::lower_bound(front.begin(), front.end(), std::pair<double, double>{h.lo, -HUGE_VAL});
        if (it == front.begin())
            return false;
        return std::prev(it)->second < r2.lo;
    };

    std::vector<field_element> found;
    for (int64_t m2 = -bound; m2 <= bound; ++m2) {
        ivd c2 = ivd::from_i64(m2) * H1;
        for (int64_t m3 = -bound; m3 <= bound; ++m3) {
            ivd c = c2 + ivd::from_i64(m3) * H2;
            /* m1 * H0 + c in [lo, hi]; H0 is the value of 1 */
            int64_t m1lo = (lo_iv - c).ceil_lo() - 1;
            int64_t m1hi = (hi_iv - c).floor_hi() + 1;
            if (m1hi - m1lo > 16)
                continue; /* window wider than any sane call; bounds garbage */
            for (int64_t m1 = m1lo; m1 <= m1hi; ++m1) {
                if (m1 < -bound || m1 > bound)
                    continue;
                if (m1 == 0 && m2 == 0 && m3 == 0)
                    continue;
                field_element e = combo(O.basis, {m1, m2, m3});
                ivd h = value_iv(e);
                if (h.hi < lo_iv.lo || h.lo > hi_iv.hi)
                    continue;
                if (surely_beaten(h, value_iv(conjugate_product(e))))
                    continue;
                if (exact_sign(e - h_lo) < 0 || exact_sign(h_hi - e) < 0)
                    continue;
                if (is_lattice_minimum(O, e))
                    found.push_back(std::move(e));
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const field_element& a, const field_element& b2) { return compare_real(a, b2) > 0; });
    return found;
}

} // namespace pcf
