#include "pcf/criteria.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "pcf/errors.hpp"

namespace pcf {

field_element p2(const field_element& X, const field_element& Y)
{
    field_element one = field_element::from_int(common_field(X, Y), 1);
    return X * X + Y * Y - X * Y - X - Y + one;
}

field_element p4(const field_element& X, const field_element& Y)
{
    field_element X2 = X * X;
    return X2 * X2 - X2 * X + X2 * Y - 8 * X2 + X * Y + Y * Y;
}

field_element q4(const field_element& X)
{
    field_element X2 = X * X;
    return X2 * X2 + X2 * X + X - field_element::from_int(*X.F, 8);
}

double bound_B(int u)
{
    return u == 1 ? 2.0 : std::sqrt(6.0);
}

double bound_C(int u)
{
    return u == 1 ? (std::sqrt(33.0) - 1.0) / 2.0 : 2.0;
}

int compare_with_B(const mpq_class& t, int u)
{
    if (u == 1)
        return cmp(t, 2);
    /* t vs sqrt(6) */
    if (t < 0)
        return -1;
    return cmp(t * t, 6);
}

int compare_with_C_cubed(const mpq_class& t, int u)
{
    if (u == -1)
        return cmp(t, 8);
    /* C(1)^3 = (-25 + 9 sqrt(33)) / 2, so t > C^3 <=> 2t + 25 > 9 sqrt(33). */
    mpq_class s = 2 * t + 25;
    if (s <= 0)
        return -1;
    return cmp(s * s, 2673); // (9 sqrt 33)^2
}

double zplus()
{
    /* unique positive zero of X^4 + X^3 + X - 8, by bisection */
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 80; ++i) {
        double m = 0.5 * (lo + hi);
        double v = ((m + 1) * m * m + 1) * m - 8;
        (v < 0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

int compare_with_zplus_cubed(const mpq_class& t)
{
    /* s = Z+^3 is the unique positive root of
     *   g(s) = s^4 + 4 s^3 - 21 s^2 + 193 s - 512
     * (eliminate x from x^4 + x^3 + x - 8 = 0 via x (s + 1) = 8 - s), and g is
     * increasing for s >= 0, so the sign of g(t) is the answer. */
    if (t <= 0)
        return -1;
    mpq_class g = ((t + 4) * t - 21) * t * t + 193 * t - 512;
    return sgn(g);
}

criterion_input make_criterion_input(const cubic_field& F, const norm_split& s)
{
    criterion_input in;
    in.species = F.r.species;
    in.split = s;
    if (in.species != species_t::s1a)
        in.units = congruence_invariants(s);
    mpq_class cg(1, (int64_t)s.d2 * s.d4 * s.d5);
    cg.canonicalize();
    mpq_class cgb(1, (int64_t)s.d1 * s.d2 * s.d5);
    cgb.canonicalize();
    in.gamma = field_element(F, 0, cg, 0);
    in.gamma_bar = field_element(F, 0, 0, cgb);
    in.gamma3 = mpq_class(F.r.d) * cg * cg * cg;
    in.gamma_bar3 = mpq_class(F.r.dbar) * cgb * cgb * cgb;
    in.y = mpq_class((int64_t)s.d3 * s.d6, (int64_t)s.d2 * s.d5);
    in.y.canonicalize();
    return in;
}

namespace {

/* sign(t3^(1/3) - B(u)) for t3 > 0 */
int cube_compare_with_B(const mpq_class& t3, int u)
{
    if (u == 1)
        return cmp(t3, 8);
    return cmp(t3 * t3, 216); // (sqrt 6)^6
}

void require_hypothesis(const criterion_input& in)
{
    if (in.gamma3 <= 1 || in.gamma_bar3 <= 1)
        throw hypothesis_violated("norm is not minimal in its coset: a normalized "
                                  "radical does not exceed 1");
}

bool escalated_regime(species_t sp, int v)
{
    return (sp == species_t::s2 && v == 0) || (sp == species_t::s1b && v == 1);
}

} // namespace

minimum_prediction predict_minimum(const cubic_field& F, const criterion_input& in,
                                   cubic_order::kind_t kind)
{
    require_hypothesis(in);
    species_t sp = F.r.species;
    if (sp == species_t::s1a)
        return minimum_prediction::unconditionally_minimum;
    if (sp == species_t::s2 && kind == cubic_order::kind_t::suborder0)
        return minimum_prediction::unconditionally_minimum;
    if (sp == species_t::s1b && in.split.v == 0)
        return minimum_prediction::unconditionally_minimum;

    if (sp == species_t::s1b && in.split.v == 2) {
        /* escape from the minima <=> some radical falls inside its C-window */
        if (compare_with_C_cubed(in.gamma3, in.units.u1) < 0 ||
            compare_with_C_cubed(in.gamma_bar3, in.units.u2) < 0)
            return minimum_prediction::not_minimum;
        return minimum_prediction::is_minimum;
    }

    /* species 2 in the maximal order, or species 1b with norm 3-part 3 */
    if (in.units.u1 == 1 && in.units.u2 == 1)
        return minimum_prediction::is_minimum;
    field_element val =
        p2(in.units.u1 * in.gamma, in.units.u2 * in.gamma_bar) -
        field_element::from_int(F, 9);
    return exact_sign(val) < 0 ? minimum_prediction::not_minimum
                               : minimum_prediction::is_minimum;
}

coarse_verdict coarse_conditions(const criterion_input& in)
{
    require_hypothesis(in);
    if (!escalated_regime(in.species, in.split.v))
        throw hypothesis_violated("coarse windows apply only when the norm "
                                  "3-part is at most 3 and the congruence "
                                  "invariants are defined");
    if (in.units.u1 == 1 && in.units.u2 == 1)
        return coarse_verdict::forces_minimum;
    /* a radical at or beyond its window pins the generator to the minima;
     * note the bounds attach crosswise */
    if (cube_compare_with_B(in.gamma3, in.units.u2) >= 0 ||
        cube_compare_with_B(in.gamma_bar3, in.units.u1) >= 0)
        return coarse_verdict::forces_minimum;
    if (compare_with_B(in.y, -in.units.u1 * in.units.u2) <= 0)
        return coarse_verdict::forces_non_minimum;
    return coarse_verdict::indeterminate;
}

const char* m_class_name(m_class_t c)
{
    switch (c) {
    case m_class_t::m0: return "M0";
    case m_class_t::m1: return "M1";
    default: return "M2";
    }
}

namespace {

std::string fmt2(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

int sign3(int64_t n) { return n % 3 == 1 ? 1 : -1; } // n coprime to 3

/* Integer criterion for squarefree species 2 radicands d = d1 d2 d3 with
 * least class norm d1 d2^2.  Sufficient for M0 only; when the windows fail
 * nothing follows, and when all three slots agree mod 3 the generator itself
 * is a minimum, ruling M0 out. */
std::optional<bool> squarefree_m0(int64_t d1, int64_t d2, int64_t d3,
                                  std::vector<std::string>& trace)
{
    int r1 = sign3(d1), r2 = sign3(d2), r3 = sign3(d3);
    if (r1 == r2 && r2 == r3) {
        trace.push_back("d1, d2, d3 all congruent mod 3: the least norm itself "
                        "is a minimum");
        return false;
    }
    bool second_small = d1 * d1 < d2 * d3; // least conjugate-class norm d1^2 d2
    trace.push_back(second_small
                        ? "d1^2 = " + std::to_string(d1 * d1) + " < " +
                              std::to_string(d2 * d3) + " = d2 d3"
                        : "d2 d3 = " + std::to_string(d2 * d3) + " < " +
                              std::to_string(d1 * d1) + " = d1^2");
    auto within_2 = [&](int64_t x, int64_t m, const char* xn, const char* mn) {
        bool ok = x <= 2 * m;
        trace.push_back(std::string(xn) + " = " + std::to_string(x) +
                        (ok ? " < " : " > ") + std::to_string(2 * m) + " = 2 " + mn);
        return ok;
    };
    auto within_sqrt6 = [&](int64_t x, int64_t m, const char* xn, const char* mn) {
        bool ok = x * x <= 6 * m * m;
        trace.push_back(std::string(xn) + " = " + std::to_string(x) +
                        (ok ? " < " : " > ") + fmt2(std::sqrt(6.0) * (double)m) +
                        " ~ sqrt(6) " + mn);
        return ok;
    };
    bool m0;
    if (second_small) {
        if (r1 == r2) { // d1 = d2 = -d3
            trace.push_back("d1 = d2 = -d3 (mod 3)");
            m0 = within_2(d3, std::min(d1, d2), "d3", d1 < d2 ? "d1" : "d2");
        } else if (r1 == r3) { // d1 = -d2 = d3
            trace.push_back("d1 = -d2 = d3 (mod 3)");
            m0 = within_sqrt6(d3, d1, "d3", "d1") & within_2(d3, d2, "d3", "d2");
        } else { // -d1 = d2 = d3
            trace.push_back("-d1 = d2 = d3 (mod 3)");
            m0 = within_2(d3, d1, "d3", "d1") & within_sqrt6(d3, d2, "d3", "d2");
        }
    } else {
        if (r1 == r2) {
            trace.push_back("d1 = d2 = -d3 (mod 3)");
            m0 = within_sqrt6(d1, d2, "d1", "d2") & within_2(d3, d2, "d3", "d2");
        } else if (r1 == r3) {
            trace.push_back("d1 = -d2 = d3 (mod 3)");
            m0 = within_2(std::max(d1, d3), d2, d1 > d3 ? "d1" : "d3", "d2");
        } else {
            trace.push_back("-d1 = d2 = d3 (mod 3)");
            m0 = within_2(d1, d2, "d1", "d2") & within_sqrt6(d3, d2, "d3", "d2");
        }
    }
    if (!m0) {
        trace.push_back("window missed: no conclusion from the coarse test");
        return std::nullopt;
    }
    return true;
}

/* Full criterion for species 1b radicands whose class has least norm 9 d4,
 * where d = d3 d4^2 (d3 = squarefree part, d4 = square part). */
m_class_t square_part_class(int64_t d3, int64_t d4, std::vector<std::string>& trace)
{
    trace.push_back("d4 = " + std::to_string(d4) + " < " + std::to_string(d3) +
                    " = d3");
    mpq_class t(d3, d4);
    t.canonicalize();
    if (sign3(d3) != sign3(d4)) {
        trace.push_back("d3 = -d4 (mod 3)");
        if (compare_with_zplus_cubed(t) < 0) {
            trace.push_back("d3 = " + std::to_string(d3) + " < " +
                            fmt2(std::pow(zplus(), 3) * (double)d4) +
                            " ~ Z+^3 d4: no minima in either class");
            return m_class_t::m0;
        }
        if (t < 8) {
            trace.push_back("Z+^3 d4 < d3 = " + std::to_string(d3) + " < " +
                            std::to_string(8 * d4) + " = 8 d4: conjugate class "
                            "only");
            return m_class_t::m1;
        }
        trace.push_back("d3 = " + std::to_string(d3) + " > " +
                        std::to_string(8 * d4) + " = 8 d4: both classes");
        return m_class_t::m2;
    }
    trace.push_back("d3 = d4 (mod 3)");
    if (compare_with_C_cubed(t, 1) < 0) {
        trace.push_back("d3 = " + std::to_string(d3) + " < " +
                        fmt2(std::pow(bound_C(1), 3) * (double)d4) +
                        " ~ C^3 d4: conjugate class only");
        return m_class_t::m1;
    }
    trace.push_back("d3 = " + std::to_string(d3) + " > " +
                    fmt2(std::pow(bound_C(1), 3) * (double)d4) +
                    " ~ C^3 d4: both classes");
    return m_class_t::m2;
}

} // namespace

m_class_report m_class(const cubic_field& F, int64_t pf_norm)
{
    norm_split s0 = canonical_split(F.r, pf_norm);
    norm_cosets nc = coset_norms(s0);
    if (nc.minimal_first == 1)
        throw not_a_principal_factor_norm(
            "norm " + std::to_string(pf_norm) +
            " lies in the trivial coset and carries no class information");

    m_class_report rep;
    rep.first_norm = nc.minimal_first;
    rep.second_norm = nc.minimal_second;

    criterion_input in1 = make_criterion_input(F, canonical_split(F.r, nc.minimal_first));
    criterion_input in2 = make_criterion_input(F, canonical_split(F.r, nc.minimal_second));
    rep.first_minimum =
        predict_minimum(F, in1, cubic_order::kind_t::maximal) != minimum_prediction::not_minimum;
    rep.second_minimum =
        predict_minimum(F, in2, cubic_order::kind_t::maximal) != minimum_prediction::not_minimum;
    int hits = (int)rep.first_minimum + (int)rep.second_minimum;
    rep.cls = hits == 0 ? m_class_t::m0 : hits == 1 ? m_class_t::m1 : m_class_t::m2;

    /* A shaped radicand admits an all-integer rerun of the same decision;
     * compute it, record its inequalities, and insist the two routes agree. */
    if (F.r.species == species_t::s2 && F.r.b == 1) {
        const norm_split& s1 = in1.split;
        rep.fast_path = true;
        std::optional<bool> m0 = squarefree_m0(s1.d1, s1.d2, s1.d3, rep.trace);
        if (m0 && *m0 != (rep.cls == m_class_t::m0))
            throw hypothesis_violated("squarefree shortcut disagrees with the "
                                      "radical criteria");
    } else if (F.r.species == species_t::s1b && nc.minimal_first == 9 * F.r.b) {
        rep.fast_path = true;
        std::vector<std::string> tr;
        m_class_t fast = square_part_class(F.r.a, F.r.b, tr);
        rep.trace.insert(rep.trace.end(), tr.begin(), tr.end());
        if (fast != rep.cls)
            throw hypothesis_violated("square-part shortcut disagrees with the "
                                      "radical criteria");
    }
    return rep;
}

coset_justification justify_coset(const cubic_field& F, int64_t coset_norm)
{
    criterion_input in = make_criterion_input(F, canonical_split(F.r, coset_norm));
    if (!escalated_regime(F.r.species, in.split.v))
        throw hypothesis_violated("justification rows are defined for the "
                                  "P2 regime only");
    coset_justification j;
    j.norm = coset_norm;
    j.u1 = in.units.u1;
    j.u2 = in.units.u2;
    j.y = in.y;
    j.coarse_window = bound_B(-j.u1 * j.u2);
    if (j.u1 == 1 && j.u2 == 1)
        j.coarse_settles = true;
    else
        j.coarse_settles = compare_with_B(in.y, -j.u1 * j.u2) <= 0;
    field_element val = p2(j.u1 * in.gamma, j.u2 * in.gamma_bar);
    j.p2_value = value_iv(val).mid();
    return j;
}

} // namespace pcf
