#include "pcf/classifier.hpp"

#include <algorithm>
#include <set>

#include "pcf/errors.hpp"
#include "pcf/intfactor.hpp"

namespace pcf {

namespace {

int64_t to_small(const mpz_class& n)
{
    if (!n.fits_slong_p())
        throw hypothesis_violated("chain norm exceeds the word size");
    return n.get_si();
}

std::optional<int64_t> conductor_exclusion_prime(const radicand& r)
{
    if (r.species != species_t::s1b)
        return std::nullopt;
    for (auto [p, e] : factorize(r.f)) {
        int64_t c = p % 9;
        if (c == 2 || c == 4 || c == 5 || c == 7)
            return p;
    }
    return std::nullopt;
}

classification classify_core(const cubic_field& F, const classify_options& opt,
                             chain_result* keep)
{
    classification out;
    out.d = F.r.d;
    out.species = F.r.species;
    out.gamma_excluded_prime = conductor_exclusion_prime(F.r);
    out.chain_used = F.r.species == species_t::s2 ? cubic_order::kind_t::suborder0
                                                  : cubic_order::kind_t::maximal;
    cubic_order O = make_order(F, out.chain_used);
    chain_options copt;
    copt.stop = opt.stop;
    chain_result cr = run_chain(O, copt);
    if (cr.hit_cap)
        throw enumeration_overflow("chain hit its step cap before settling the type");
    out.period_exact = cr.period.has_value();
    out.period_length = cr.period ? *cr.period : (int64_t)cr.records.size() - 1;

    if (!cr.pf_indices.empty()) {
        const chain_record& rec = cr.records[cr.pf_indices.front()];
        pf_witness w;
        w.index = rec.index;
        w.element = primitive_scale(*rec.element);
        w.norm = to_small(rec.norm);
        out.type = pf_type::beta;
        out.evidence = std::move(w);
    } else {
        if (!cr.fundamental_unit)
            throw hypothesis_violated("full chain period without a fundamental unit");
        unit_index_result q = subfield_unit_index(F, *cr.fundamental_unit, opt.budget);
        out.Q = q.Q;
        if (q.Q == 1)
            out.type = pf_type::alpha;
        else
            out.type = F.r.species == species_t::s1b ? pf_type::beta : pf_type::gamma;
        out.evidence = q_evidence{std::move(q)};
    }
    if (keep)
        *keep = std::move(cr);
    return out;
}

int64_t coset_minimum_of(const radicand& r, int64_t n)
{
    return coset_norms(canonical_split(r, n)).minimal_first;
}

} // namespace

const char* pf_type_name(pf_type t)
{
    switch (t) {
    case pf_type::alpha: return "alpha";
    case pf_type::beta: return "beta";
    default: return "gamma";
    }
}

classification classify(const cubic_field& F, const classify_options& opt)
{
    return classify_core(F, opt, nullptr);
}

classification classify(int64_t m, const classify_options& opt)
{
    auto Fp = std::make_shared<cubic_field>(m);
    classification out = classify(*Fp, opt);
    out.field = Fp;
    return out;
}

classification classify_with_mclass(const cubic_field& F, const classify_options& opt)
{
    classify_options copt = opt;
    copt.stop = chain_stop::full_period;
    chain_result home;
    classification out = classify_core(F, copt, &home);
    if (out.type != pf_type::beta)
        throw not_type_beta("M-class data requested for a field of type " +
                            std::string(pf_type_name(out.type)));

    int64_t n;
    field_element first_el;
    if (auto* w = std::get_if<pf_witness>(&out.evidence)) {
        n = w->norm;
        first_el = w->element;
    } else {
        /* species 1b can be beta with an empty chain; the factor itself comes
         * from the cube search */
        pf_search_result found =
            discover_principal_factor(F, *home.fundamental_unit, opt.budget);
        if (!found.found)
            throw hypothesis_violated("beta field but the factor search came back empty");
        n = found.norm;
        first_el = found.element;
    }
    out.m_class = m_class(F, n);

    if (!opt.verify)
        return out;

    bool s2 = F.r.species == species_t::s2;
    chain_result max_chain;
    if (s2) {
        cubic_order OM = make_order(F, cubic_order::kind_t::maximal);
        chain_options mo;
        mo.stop = chain_stop::full_period;
        max_chain = run_chain(OM, mo);
    } else {
        max_chain = home;
    }

    verify_report vr;
    vr.period_maximal = max_chain.period.value_or(0);
    vr.period_suborder = s2 ? home.period.value_or(0) : 0;
    for (auto j : max_chain.pf_indices)
        vr.maximal_hits.push_back(
            {max_chain.records[j].index, to_small(max_chain.records[j].norm)});
    if (s2)
        for (auto j : home.pf_indices)
            vr.suborder_hits.push_back({home.records[j].index, to_small(home.records[j].norm)});

    if (s2) {
        /* landmarks of the maximal chain: the first record below each
         * non-maximal hit, then coincidental repeats of those norms */
        std::set<int64_t> picked;
        std::set<int64_t> genuine_norms;
        for (auto j : home.pf_indices) {
            double h = home.records[j].log_height;
            for (size_t i = 1; i < max_chain.records.size(); ++i) {
                if (max_chain.records[i].log_height < h) {
                    int64_t nm = to_small(max_chain.records[i].norm);
                    vr.shadows.push_back({max_chain.records[i].index, nm, true});
                    picked.insert(max_chain.records[i].index);
                    genuine_norms.insert(nm);
                    break;
                }
            }
        }
        for (size_t i = 1; i < max_chain.records.size(); ++i) {
            int64_t nm = to_small(max_chain.records[i].norm);
            if (nm != 1 && genuine_norms.count(nm) &&
                !picked.count(max_chain.records[i].index))
                vr.shadows.push_back({max_chain.records[i].index, nm, false});
        }
        std::sort(vr.shadows.begin(), vr.shadows.end(),
                  [](const shadow_row& x, const shadow_row& y) { return x.index > y.index; });
    }

    /* reality check: the minimal representative of each coset against the
     * minimum predictions */
    const m_class_report& rep = *out.m_class;
    cubic_order OM = make_order(F, cubic_order::kind_t::maximal);
    bool agree = true;
    int checks = 0;
    auto consider = [&](const field_element& el, int64_t nel) {
        if (nel != coset_minimum_of(F.r, nel))
            return; /* predictions speak about the least norm of the coset */
        bool pred;
        if (nel == rep.first_norm)
            pred = rep.first_minimum;
        else if (nel == rep.second_norm)
            pred = rep.second_minimum;
        else
            return;
        ++checks;
        if (is_lattice_minimum(OM, el) != pred)
            agree = false;
    };
    const chain_result& witness_chain = s2 ? home : max_chain;
    for (auto j : witness_chain.pf_indices)
        consider(primitive_scale(*witness_chain.records[j].element),
                 to_small(witness_chain.records[j].norm));
    if (witness_chain.pf_indices.empty()) {
        consider(first_el, n);
        /* the conjugate coset through the content-reduced square */
        field_element sq = primitive_scale(pow_int(first_el, 2));
        mpq_class nn = abs(norm(sq));
        if (nn.get_den() == 1 && nn.get_num().fits_slong_p())
            consider(sq, nn.get_num().get_si());
    }
    vr.minimum_checks_agree = agree && checks > 0;
    vr.minimum_checks = checks;
    out.verification = vr;
    return out;
}

classification classify_with_mclass(int64_t m, const classify_options& opt)
{
    auto Fp = std::make_shared<cubic_field>(m);
    classification out = classify_with_mclass(*Fp, opt);
    out.field = Fp;
    return out;
}

} // namespace pcf
