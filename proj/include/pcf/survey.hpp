#ifndef PCF_SURVEY_HPP
#define PCF_SURVEY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcf/classifier.hpp"

namespace pcf {

/* Batch layer: one line of output per normalized radicand, stable enough to
 * diff across runs.  Everything but the timing field is a pure function of
 * (d, with_mclass), so two survey files over the same range agree byte for
 * byte once timings are masked out. */

struct survey_record {
    int64_t d = 0;
    int64_t a = 1;
    int64_t b = 1;
    species_t species = species_t::s2;
    int64_t f = 0;
    int64_t R = 0;
    pf_type type = pf_type::alpha;
    std::optional<int> Q;          // only when the unit index was consulted
    int64_t period_length = 0;     // home chain of the field
    std::vector<int64_t> pf_norms; // hits per period, in chain order
    std::optional<m_class_t> m_class; // only with the mclass pass, type beta
    double seconds = 0.0;          // wall time; never part of the canonical form
};

survey_record survey_field(int64_t d, bool with_mclass, const cube_budget& budget = {});

/* One JSON line, fixed key order d, a, b, species, f, R, type, Q,
 * period_length, pf_norms, m_class, timing.  Absent optionals serialize as
 * null. */
std::string to_jsonl(const survey_record& rec);

/* Inverse of to_jsonl; nullopt on malformed or truncated lines. */
std::optional<survey_record> from_jsonl(const std::string& line);

/* The line with the timing key dropped: the form runs are compared in.
 * Empty string when the line does not parse. */
std::string canonical_form(const std::string& jsonl_line);

struct survey_options {
    int64_t lo = 2;
    int64_t hi = 10; // inclusive
    bool with_mclass = false;
    int workers = 1;
    bool resume = false;       // reuse valid lines already in out_path
    std::string out_path;      // empty: nothing is written to disk
    cube_budget budget{};
};

struct survey_summary {
    int64_t total = 0; // records passing through the sink, resumed ones included
    int64_t alpha = 0;
    int64_t beta = 0;
    int64_t gamma = 0;
    std::vector<int64_t> m0; // ascending; filled only when with_mclass
    int64_t resumed = 0;     // records taken from the existing file
};

/* Walks the normalized radicands in [lo, hi] in ascending order, skipping any
 * m that is not its own normalization.  Records reach the sink and the output
 * file in ascending d regardless of worker count.  With resume set, valid
 * records already present in out_path are kept (the file is truncated after
 * the last parseable line) and only the gap is computed. */
survey_summary run_survey(const survey_options& opt,
                          const std::function<void(const survey_record&)>& sink = {});

/* CSV report for the conditional-criterion bookkeeping of type-beta fields:
 * one row per ambiguous class with its y product, coarse window, whether the
 * coarse shortcut already settles the class, and the P2 value against the
 * threshold 9.  Numeric columns carry four decimals, ties to even. */
std::string justify_csv(const std::vector<int64_t>& ds, const cube_budget& budget = {});

/* Sign samples of P4 = X^4 - X^3 + X^2 Y - 8 X^2 + XY + Y^2 on a grid, with
 * extra rows along the reference lines Y = 2 and Y = sqrt(6). */
std::string p4_locus_csv(double xmin = -8, double xmax = 8, double ymin = -17,
                         double ymax = 17, double step = 0.25);

/* Half-to-even rounding at four decimals, the rounding every report column
 * uses. */
std::string fixed4(double v);

} // namespace pcf

#endif
