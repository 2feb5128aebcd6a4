#ifndef PCF_KUMMER_HPP
#define PCF_KUMMER_HPP

#include <array>
#include <utility>
#include <vector>

#include "pcf/field.hpp"

namespace pcf {

/* Two-sided cube tests in the cubic field and in its quadratic extension
 * k = L(zeta3): positive answers reconstruct the root numerically and verify
 * it by exact cubing, negative answers name a degree-one prime at which the
 * element is a cubic non-residue.  Both certificates are exact; running out
 * of primes and precision raises undecided, never a guess. */

struct cube_budget {
    int max_primes = 160;         /* split primes tried for a non-residue */
    mpfr_prec_t max_bits = 65536; /* reconstruction precision ceiling */
};

/* A degree-one prime above p described by explicit residues: r is a cube root
 * of d and omega a nontrivial cube root of 1 modulo p (p = 4, 7 mod 9, so
 * both exist and the cyclotomic residue is itself a non-cube).  chi in {1, 2}
 * is the discrete logarithm base omega of w^((p-1)/3). */
struct residue_witness {
    int64_t p = 0;
    int64_t r = 0;
    int64_t omega = 0;
    int chi = 0;
};

struct cube_test_k {
    bool cube = false;
    k_element root;          /* cube: root^3 == w, exact */
    residue_witness witness; /* non-cube */
};

struct cube_test_L {
    bool cube = false;
    field_element root;
    residue_witness witness;
};

cube_test_k is_cube_in_k(const k_element& w, const cube_budget& budget = {});
cube_test_L is_cube_in_L(const field_element& w, const cube_budget& budget = {});

/* Index of the subgroup generated by zeta3, eps and eps^sigma inside the full
 * unit group of k; 1 or 3.  Classes (a,b,c) run over F_3^3 \ 0 modulo
 * inversion, 13 in all; the index is 3 exactly when one of them is a cube in
 * k.  eps may be the unit of either order: it is first replaced by a cube
 * root as long as it is a cube in L, which aligns the generated classes with
 * those of the fundamental unit. */
struct unit_index_result {
    int Q = 1;
    std::array<int, 3> cube_class{}; /* Q == 3 */
    k_element root;                  /* Q == 3: root^3 == the class element */
    std::vector<std::pair<std::array<int, 3>, residue_witness>> killed; /* Q == 1 */
};

unit_index_result subfield_unit_index(const cubic_field& F, const field_element& eps,
                                      const cube_budget& budget = {});

/* Existence search for an ambiguous principal element: eta integral with
 * |N(eta)| = n dividing R^2 and n outside the trivial class.  One candidate
 * norm per conjugate pair of classes; eta exists for the pair iff n eps^j is
 * a cube in L for some j in {0,1,2}.  found == false is a proof of absence
 * (every candidate carries a non-residue witness). */
struct pf_search_result {
    bool found = false;
    field_element element;
    int64_t norm = 0;
};

pf_search_result discover_principal_factor(const cubic_field& F, const field_element& eps,
                                           const cube_budget& budget = {});

} // namespace pcf

#endif
