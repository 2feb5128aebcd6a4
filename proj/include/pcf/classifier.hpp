#ifndef PCF_CLASSIFIER_HPP
#define PCF_CLASSIFIER_HPP

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pcf/criteria.hpp"
#include "pcf/kummer.hpp"
#include "pcf/voronoi.hpp"

namespace pcf {

/* Principal factorization type: alpha (no ambiguous principal ideals beyond
 * the obvious ones and unit index 1), beta (a principal factor exists), gamma
 * (no principal factor, but the cyclotomic unit index is 3). */
enum class pf_type { alpha, beta, gamma };

const char* pf_type_name(pf_type t);

/* A principal factor taken off a chain: index is the chain position (0, -1,
 * -2, ...), element the content-reduced integral representative. */
struct pf_witness {
    int64_t index = 0;
    field_element element;
    int64_t norm = 0; /* |N(element)|: divides R^2, outside the trivial class */
};

/* The unit index decided the type without a chain witness. */
struct q_evidence {
    unit_index_result detail;
};

/* Species 1b: a single conductor prime in the classes +-2, +-4 mod 9 already
 * rules out type gamma. */
struct gamma_exclusion {
    int64_t prime = 0;
};

using type_evidence = std::variant<pf_witness, q_evidence, gamma_exclusion>;

/* One maximal-chain landmark in the side-by-side comparison: either the first
 * record below the height of a non-maximal hit (tracks_hit) or a record that
 * merely repeats such a norm elsewhere in the period. */
struct shadow_row {
    int64_t index = 0;
    int64_t norm = 0;
    bool tracks_hit = false;
};

struct verify_report {
    int64_t period_maximal = 0;
    int64_t period_suborder = 0; /* 0 for species 1: same lattice */
    std::vector<std::pair<int64_t, int64_t>> maximal_hits;  /* (index, norm) */
    std::vector<std::pair<int64_t, int64_t>> suborder_hits;
    std::vector<shadow_row> shadows;
    /* is_lattice_minimum agreed with the coset predictions on every
     * representative whose norm is the coset minimum */
    bool minimum_checks_agree = false;
    int minimum_checks = 0;
};

struct classification {
    int64_t d = 0;
    species_t species = species_t::s2;
    pf_type type = pf_type::alpha;
    type_evidence evidence;
    std::optional<int64_t> gamma_excluded_prime; /* species 1b */
    cubic_order::kind_t chain_used = cubic_order::kind_t::maximal;
    int64_t period_length = 0; /* primitive period when period_exact */
    bool period_exact = false;
    std::optional<int> Q;                  /* filled when the index was needed */
    std::optional<m_class_report> m_class; /* classify_with_mclass */
    std::optional<verify_report> verification;

    /* set by the radicand overloads so witness elements stay valid; the
     * cubic_field& overloads borrow the caller's field instead */
    std::shared_ptr<const cubic_field> field;
};

struct classify_options {
    chain_stop stop = chain_stop::first_pf; /* plain classification default */
    bool verify = false;                    /* with m-class: dual-chain check */
    cube_budget budget{};
};

/* Decision procedure: species 1 uses the maximal chain, species 2 the
 * non-maximal one; a chain hit settles beta, otherwise the unit index Q
 * separates alpha (Q=1) from gamma, with Q=3 meaning beta for species 1b
 * (which can never be gamma). */
classification classify(const cubic_field& F, const classify_options& opt = {});
classification classify(int64_t m, const classify_options& opt = {});

/* classification plus the M-class of the principal factors; the chain runs a
 * full period, and a missing chain witness is recovered by the cube search.
 * Throws not_type_beta unless classify gives beta. */
classification classify_with_mclass(const cubic_field& F, const classify_options& opt = {});
classification classify_with_mclass(int64_t m, const classify_options& opt = {});

} // namespace pcf

#endif
