#ifndef PCF_ORDER_HPP
#define PCF_ORDER_HPP

#include <array>

#include "pcf/field.hpp"

namespace pcf {

/* An order of the cubic field, given by a basis with basis[0] = 1.  For
 * species 2 the maximal order carries the extra generator
 * nu = (1 + s1 delta + s2 deltabar)/3 for the unique working sign pattern;
 * in every other case both kinds share the basis {1, delta, deltabar}. */
struct cubic_order {
    enum class kind_t { maximal, suborder0 };

    const cubic_field* F = nullptr;
    kind_t kind = kind_t::suborder0;
    std::array<field_element, 3> basis;
    int s1 = 0, s2 = 0;

    bool has_fractional_basis() const { return s1 != 0; }
};

cubic_order make_order(const cubic_field& F, cubic_order::kind_t kind);

bool order_contains(const cubic_order& O, const field_element& e);

/* Canonical invariant of the Z-lattice spanned by three independent
 * elements: the coordinate matrix over the least common denominator, put in
 * Hermite form.  Equal keys <=> equal lattices (distinguishes scaled
 * copies). */
struct lattice_key {
    mpz_class den;
    std::array<std::array<mpz_class, 3>, 3> h;
    bool operator==(const lattice_key&) const = default;
};

lattice_key canonical_lattice_key(const std::array<field_element, 3>& basis);

} // namespace pcf

#endif
