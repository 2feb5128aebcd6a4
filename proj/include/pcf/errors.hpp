#ifndef PCF_ERRORS_HPP
#define PCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcf {

/* Common base so callers can catch everything from this library at once. */
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* The input m is a perfect cube (or < 2), so Q(cbrt m) is not a cubic field. */
struct not_a_cubic_field : error {
    using error::error;
};

/* The given norm cannot arise from a primitive ambiguous element of the field:
 * it contains a prime not ramified in the field, or a cube factor. */
struct not_a_principal_factor_norm : error {
    using error::error;
};

/* Binary operation applied to elements of two different fields. */
struct mixed_parents : error {
    using error::error;
};

/* A mod-3 unit invariant was requested for a species where 3 divides it. */
struct three_divides_invariant : error {
    using error::error;
};

/* Lattice point enumeration exceeded its candidate budget or lost all
 * floating-point significance even at extended range. */
struct enumeration_overflow : error {
    using error::error;
};

/* A cube / non-cube decision could not be certified within the configured
 * precision budget.  Never silently defaulted. */
struct undecided : error {
    using error::error;
};

/* M-class data requested for a field with no principal factor. */
struct not_type_beta : error {
    using error::error;
};

/* An invariant the theory guarantees failed at runtime.  Any throw of this is
 * a bug (here or in the theory) and is meant to surface, not be caught. */
struct hypothesis_violated : error {
    using error::error;
};

} // namespace pcf

#endif
