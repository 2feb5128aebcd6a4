#ifndef PCF_VORONOI_HPP
#define PCF_VORONOI_HPP

#include <optional>
#include <vector>

#include "pcf/order.hpp"

namespace pcf {

/* Moving frame of the chain walk: an exact basis of the scaled lattice
 * (1/theta) O, kept size-reduced, together with the accumulated chain
 * element theta.  theta always has positive real value; the basis
 * coordinates stay small because only theta absorbs the growth. */
struct reduced_lattice {
    const cubic_order* O = nullptr;
    std::array<field_element, 3> basis;
    field_element theta;
    mpz_class theta_norm; /* |N(theta)|, an integer */
    int64_t steps = 0;
    double log_height = 0.0; /* log of the real value of theta */
    double rho2_hint = 4.0;  /* last good radius^2 search bound */
};

reduced_lattice start_lattice(const cubic_order& O);

/* One Voronoi step: find the lattice point w with real value in (0,1)
 * of smallest squared conjugate radius (largest height on a tie), which is
 * the minimum adjacent to 1, then rescale the frame by 1/w.  Returns w in
 * the coordinates of the lattice before the step. */
field_element adjacent_step(reduced_lattice& lat);

enum class chain_stop { full_period, first_pf, height_floor };

struct chain_options {
    chain_stop stop = chain_stop::full_period;
    int periods = 1;                 /* for full_period */
    field_element height_floor;      /* for height_floor: stop once theta < floor */
    bool keep_elements = true;
    int64_t max_steps = 5'000'000;
};

struct chain_record {
    int64_t index = 0; /* 0, -1, -2, ... */
    std::optional<field_element> element;
    mpz_class norm; /* |N|, positive */
    double log_height = 0.0;
};

struct chain_result {
    cubic_order::kind_t kind = cubic_order::kind_t::maximal;
    std::vector<chain_record> records; /* records[j] is the element of index -j */
    std::optional<int64_t> period;
    std::optional<field_element> fundamental_unit;
    std::vector<int64_t> pf_indices; /* j > 0 with records[j].norm a nontrivial ambiguous norm */
    bool hit_cap = false;
};

chain_result run_chain(const cubic_order& O, const chain_options& opt = {});

/* Nontrivial ambiguous norm test used for chain hits: n > 1, n | R^2, and n
 * is not in the class of 1, d or dbar. */
bool is_pf_norm(const radicand& r, const mpz_class& n);

/* True iff no nonzero lattice point lies strictly inside the norm cylinder
 * of e: smaller squared radius and smaller absolute height, both strict.
 * e must be a nonzero element of O. */
bool is_lattice_minimum(const cubic_order& O, const field_element& e);

/* All minima of O with height in the closed window [h_lo, h_hi] and basis
 * coordinates bounded by `bound`, sorted by decreasing height. */
std::vector<field_element> brute_force_minima(const cubic_order& O, const field_element& h_lo,
                                              const field_element& h_hi, int64_t bound);

} // namespace pcf

#endif
