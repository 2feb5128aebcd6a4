#ifndef PCF_CRITERIA_HPP
#define PCF_CRITERIA_HPP

#include <string>
#include <vector>

#include "pcf/field.hpp"
#include "pcf/order.hpp"
#include "pcf/radicand.hpp"

namespace pcf {

/* Closed-form tests deciding whether the generator of an ambiguous principal
 * ideal with a given norm shows up among the lattice minima, without running
 * a single chain step. */

/* P2 = X^2 + Y^2 - XY - X - Y + 1,
 * P4 = X^4 - X^3 + X^2 Y - 8 X^2 + XY + Y^2,
 * Q4 = X^4 + X^3 + X - 8, evaluated exactly in the cubic field. */
field_element p2(const field_element& X, const field_element& Y);
field_element p4(const field_element& X, const field_element& Y);
field_element q4(const field_element& X);

/* Window bounds for the conditional criteria.  B gates the norm-cylinder test
 * when the 3-part of the norm is at most 3, C when it is 9.  The bounds are
 * quadratic irrationals; comparisons against rationals are exact. */
double bound_B(int u); // sqrt(6) if u == -1, 2 if u == +1
double bound_C(int u); // (-1+sqrt(33))/2 if u == +1, 2 if u == -1

int compare_with_B(const mpq_class& t, int u);       // sign(t - B(u))
int compare_with_C_cubed(const mpq_class& t, int u); // sign(t - C(u)^3)

/* Z+ is the unique positive zero of Q4; its cube gates the square-part
 * criterion.  zplus_cubed_compare is exact: Z+^3 is the unique positive root
 * of s^4 + 4 s^3 - 21 s^2 + 193 s - 512 (resultant elimination), and that
 * quartic is increasing on s >= 0. */
double zplus();
int compare_with_zplus_cubed(const mpq_class& t); // sign(t - Z+^3)

/* Inputs to the conditional criteria, all derived from the canonical slots of
 * one ambiguous norm.  gamma = delta/(d2 d4 d5) and gammabar =
 * deltabar/(d1 d2 d5) are the normalized radicals; minimality of the norm in
 * its class is equivalent to gamma > 1 and gammabar > 1.  y = gamma * gammabar
 * = d3 d6 / (d2 d5) is rational. */
struct criterion_input {
    species_t species = species_t::s2;
    norm_split split;
    coset_units units; // (1, 1) when undefined (species 1a)
    field_element gamma, gamma_bar;
    mpq_class gamma3, gamma_bar3; // exact cubes
    mpq_class y;
};

criterion_input make_criterion_input(const cubic_field& F, const norm_split& s);

enum class minimum_prediction { is_minimum, not_minimum, unconditionally_minimum };

/* Decides membership of the ambiguous generator in the minima of the given
 * order kind.  Species 1a, species 1b with 3-free norm, and species 2 relative
 * to the (1, delta, deltabar) order are unconditional; species 2 relative to
 * the maximal order and species 1b with norm 3-part 3 use the P2 < 9 test
 * (boundary equality counts as a minimum); species 1b with 3-part 9 compares
 * the radicals against C.  Throws hypothesis_violated unless gamma > 1 and
 * gammabar > 1. */
minimum_prediction predict_minimum(const cubic_field& F, const criterion_input& in,
                                   cubic_order::kind_t kind);

enum class coarse_verdict { forces_minimum, forces_non_minimum, indeterminate };

/* One-sided shortcuts for the P2-regime (norm 3-part at most 3, not species
 * 1a): a radical at or beyond its B-window forces a minimum, y within the
 * mixed window B(-u1 u2) forces a non-minimum. */
coarse_verdict coarse_conditions(const criterion_input& in);

enum class m_class_t { m0, m1, m2 };

const char* m_class_name(m_class_t c); // "M0", "M1", "M2"

/* Which of the two nontrivial ambiguous classes contribute orbits to the
 * minima of the maximal order: both (M2), one (M1), none (M0).  Decided on
 * the least norm of each class.  When the radicand shape admits an all-integer
 * criterion (squarefree species 2, or species 1b with the 9b norm pattern),
 * that criterion is evaluated too, cross-checked against the general route,
 * and its inequalities are reported in trace. */
struct m_class_report {
    m_class_t cls = m_class_t::m0;
    bool first_minimum = false;
    bool second_minimum = false;
    int64_t first_norm = 0;
    int64_t second_norm = 0;
    bool fast_path = false;
    std::vector<std::string> trace;
};

m_class_report m_class(const cubic_field& F, int64_t pf_norm);

/* Data for one class of a species-2 report row: the rational product y with
 * its coarse window, whether the coarse shortcut already settles the class,
 * and the P2 value against its threshold 9. */
struct coset_justification {
    int64_t norm = 0;
    int u1 = 1, u2 = 1;
    mpq_class y;
    double coarse_window = 0; // B(-u1 u2)
    bool coarse_settles = false;
    double p2_value = 0;
};

coset_justification justify_coset(const cubic_field& F, int64_t coset_norm);

} // namespace pcf

#endif
