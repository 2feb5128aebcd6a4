#include <cstdint>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcf/classifier.hpp"
#include "pcf/criteria.hpp"
#include "pcf/errors.hpp"
#include "pcf/survey.hpp"

namespace {

using ojson = nlohmann::ordered_json;

const char* chain_name(pcf::cubic_order::kind_t k)
{
    return k == pcf::cubic_order::kind_t::maximal ? "maximal" : "nonmaximal";
}

ojson classification_json(const pcf::classification& c)
{
    const pcf::radicand& r = c.field->r;
    ojson j;
    j["d"] = r.d;
    j["a"] = r.a;
    j["b"] = r.b;
    j["species"] = pcf::species_name(r.species);
    j["f"] = r.f;
    j["R"] = r.R;
    j["type"] = pcf::pf_type_name(c.type);
    j["chain"] = chain_name(c.chain_used);
    j["period_length"] = c.period_length;
    j["period_exact"] = c.period_exact;
    if (c.Q)
        j["Q"] = *c.Q;
    else
        j["Q"] = nullptr;
    ojson ev;
    if (const auto* w = std::get_if<pcf::pf_witness>(&c.evidence)) {
        ev["kind"] = "principal_factor";
        ev["index"] = w->index;
        ev["element"] = pcf::coord_string(w->element);
        ev["norm"] = w->norm;
    } else if (const auto* q = std::get_if<pcf::q_evidence>(&c.evidence)) {
        ev["kind"] = "unit_index";
        ev["Q"] = q->detail.Q;
        ev["certificates"] = q->detail.killed.size();
    } else if (const auto* g = std::get_if<pcf::gamma_exclusion>(&c.evidence)) {
        ev["kind"] = "conductor_prime";
        ev["prime"] = g->prime;
    }
    j["evidence"] = ev;
    if (c.gamma_excluded_prime)
        j["gamma_excluded_prime"] = *c.gamma_excluded_prime;
    else
        j["gamma_excluded_prime"] = nullptr;
    if (c.m_class) {
        const pcf::m_class_report& m = *c.m_class;
        ojson mj;
        mj["class"] = pcf::m_class_name(m.cls);
        mj["first_norm"] = m.first_norm;
        mj["second_norm"] = m.second_norm;
        mj["first_minimum"] = m.first_minimum;
        mj["second_minimum"] = m.second_minimum;
        mj["fast_path"] = m.fast_path;
        mj["trace"] = m.trace;
        j["m_class"] = mj;
    } else {
        j["m_class"] = nullptr;
    }
    if (c.verification) {
        const pcf::verify_report& v = *c.verification;
        ojson vj;
        vj["period_maximal"] = v.period_maximal;
        vj["period_nonmaximal"] = v.period_suborder;
        ojson mh = ojson::array();
        for (auto [i, n] : v.maximal_hits)
            mh.push_back({{"index", i}, {"norm", n}});
        vj["maximal_hits"] = mh;
        ojson sh = ojson::array();
        for (auto [i, n] : v.suborder_hits)
            sh.push_back({{"index", i}, {"norm", n}});
        vj["nonmaximal_hits"] = sh;
        ojson sr = ojson::array();
        for (const auto& s : v.shadows)
            sr.push_back({{"index", s.index}, {"norm", s.norm}, {"tracks_hit", s.tracks_hit}});
        vj["shadows"] = sr;
        vj["minimum_checks"] = v.minimum_checks;
        vj["minimum_checks_agree"] = v.minimum_checks_agree;
        j["verification"] = vj;
    } else {
        j["verification"] = nullptr;
    }
    return j;
}

void print_classification(const pcf::classification& c)
{
    const pcf::radicand& r = c.field->r;
    std::cout << "radicand " << r.d << " = a b^2 with a = " << r.a << ", b = " << r.b << "\n";
    std::cout << "species " << pcf::species_name(r.species) << ", conductor " << r.f
              << ", ramified part " << r.R << "\n";
    std::cout << "chain: " << chain_name(c.chain_used) << " order, period " << c.period_length
              << (c.period_exact ? "" : "+") << "\n";
    std::cout << "type " << pcf::pf_type_name(c.type) << "\n";
    if (const auto* w = std::get_if<pcf::pf_witness>(&c.evidence)) {
        std::cout << "  principal factor at index " << w->index << ": "
                  << pcf::coord_string(w->element) << ", norm " << w->norm << "\n";
    } else if (const auto* q = std::get_if<pcf::q_evidence>(&c.evidence)) {
        std::cout << "  no chain witness; unit index Q = " << q->detail.Q << " ("
                  << q->detail.killed.size() << " residue certificates)\n";
        if (c.type == pcf::pf_type::beta)
            std::cout << "  index 3 plus species 1b forces an absolute principal factor\n";
    } else if (const auto* g = std::get_if<pcf::gamma_exclusion>(&c.evidence)) {
        std::cout << "  conductor prime " << g->prime << " rules out type gamma\n";
    }
    if (c.gamma_excluded_prime && c.type != pcf::pf_type::gamma)
        std::cout << "  type gamma impossible: conductor prime " << *c.gamma_excluded_prime
                  << " is a nonresidue class mod 9\n";
    if (c.m_class) {
        const pcf::m_class_report& m = *c.m_class;
        std::cout << "M class " << pcf::m_class_name(m.cls) << "\n";
        std::cout << "  least class norms " << m.first_norm << " and " << m.second_norm
                  << "; minima of the maximal order: " << (m.first_minimum ? "yes" : "no")
                  << " and " << (m.second_minimum ? "yes" : "no")
                  << (m.fast_path ? " (closed form)" : "") << "\n";
        for (const auto& line : m.trace)
            std::cout << "  " << line << "\n";
    }
    if (c.verification) {
        const pcf::verify_report& v = *c.verification;
        std::cout << "verification\n";
        std::cout << "  maximal period " << v.period_maximal;
        if (v.period_suborder)
            std::cout << ", nonmaximal period " << v.period_suborder;
        std::cout << "\n";
        auto hits = [](const std::vector<std::pair<int64_t, int64_t>>& h) {
            if (h.empty())
                return std::string("none");
            std::string s;
            for (const auto& [i, n] : h) {
                if (!s.empty())
                    s += ", ";
                s += std::to_string(i) + " (norm " + std::to_string(n) + ")";
            }
            return s;
        };
        std::cout << "  maximal hits: " << hits(v.maximal_hits) << "\n";
        if (v.period_suborder)
            std::cout << "  nonmaximal hits: " << hits(v.suborder_hits) << "\n";
        if (!v.shadows.empty()) {
            std::cout << "  shadows:";
            bool first = true;
            for (const auto& s : v.shadows) {
                std::cout << (first ? " " : ", ") << s.index << " (norm " << s.norm
                          << (s.tracks_hit ? ", tracks a factor)" : ", norm repeat)");
                first = false;
            }
            std::cout << "\n";
        }
        std::cout << "  minimum checks: " << v.minimum_checks << "/" << v.minimum_checks
                  << (v.minimum_checks_agree ? " agree" : " DISAGREE") << "\n";
    }
}

int cmd_classify(int64_t d, bool mclass, bool verify, bool full, bool json_out,
                 const pcf::cube_budget& budget)
{
    pcf::classify_options opt;
    opt.stop = full ? pcf::chain_stop::full_period : pcf::chain_stop::first_pf;
    opt.verify = verify;
    opt.budget = budget;
    pcf::classification c = pcf::classify(d, opt);
    if ((mclass || verify) && c.type == pcf::pf_type::beta)
        c = pcf::classify_with_mclass(d, opt);
    if (json_out)
        std::cout << classification_json(c).dump(2) << "\n";
    else
        print_classification(c);
    return 0;
}

int cmd_survey(const pcf::survey_options& opt, bool echo_records)
{
    pcf::survey_summary sum = pcf::run_survey(opt, [&](const pcf::survey_record& r) {
        if (echo_records)
            std::cout << pcf::to_jsonl(r) << "\n";
    });
    std::cout << "d in [" << opt.lo << ", " << opt.hi << "]: alpha " << sum.alpha << ", beta "
              << sum.beta << ", gamma " << sum.gamma << ", total " << sum.total << "\n";
    if (opt.with_mclass) {
        std::cout << "M0 fields (" << sum.m0.size() << "):";
        for (int64_t d : sum.m0)
            std::cout << " " << d;
        std::cout << "\n";
    }
    if (opt.resume && sum.resumed)
        std::cout << "resumed " << sum.resumed << " records\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"principal factorization types of pure cubic fields"};
    app.require_subcommand(1);
    int64_t budget_bits = 0;
    app.add_option("--precision-budget", budget_bits,
                   "precision cap in bits for the cube/unit tests");

    auto* c = app.add_subcommand("classify", "type of one field, with optional M class");
    int64_t cd = 0;
    bool c_mclass = false, c_verify = false, c_full = false, c_json = false;
    c->add_option("d", cd, "radicand")->required();
    c->add_flag("--mclass", c_mclass, "decide the M class when the type is beta");
    c->add_flag("--verify", c_verify, "re-derive the M class from the maximal chain");
    c->add_flag("--full-period", c_full, "walk the whole period even after a hit");
    c->add_flag("--json", c_json, "machine-readable output");

    auto* s = app.add_subcommand("survey", "classify a range, JSONL + summary");
    int64_t lo = 2, hi = 10;
    int workers = 1;
    bool s_resume = false, s_mclass = false, s_json = false;
    std::string out_path;
    s->add_option("lo", lo, "lower bound (>= 2)")->required();
    s->add_option("hi", hi, "upper bound, inclusive")->required();
    s->add_option("--workers", workers, "worker threads");
    s->add_flag("--resume", s_resume, "keep valid records already in the output file");
    s->add_option("--out", out_path, "JSONL output path");
    s->add_flag("--mclass", s_mclass, "also decide M classes of beta fields");
    s->add_flag("--json", s_json, "echo records to stdout");

    auto* jst = app.add_subcommand("justify", "criterion bookkeeping per class (CSV)");
    std::vector<int64_t> jd;
    jst->add_option("d", jd, "type-beta species-2 radicands")->required();

    auto* p4 = app.add_subcommand("p4-locus", "sign grid of the window quartic (CSV)");
    double xmin = -8, xmax = 8, ymin = -17, ymax = 17, step = 0.25;
    p4->add_option("--xmin", xmin, "grid minimum X");
    p4->add_option("--xmax", xmax, "grid maximum X");
    p4->add_option("--ymin", ymin, "grid minimum Y");
    p4->add_option("--ymax", ymax, "grid maximum Y");
    p4->add_option("--step", step, "grid step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    pcf::cube_budget budget;
    if (budget_bits > 0)
        budget.max_bits = mpfr_prec_t(budget_bits);

    try {
        if (c->parsed())
            return cmd_classify(cd, c_mclass, c_verify, c_full, c_json, budget);
        if (s->parsed()) {
            pcf::survey_options so;
            so.lo = lo;
            so.hi = hi;
            so.with_mclass = s_mclass;
            so.workers = workers;
            so.resume = s_resume;
            so.out_path = out_path;
            so.budget = budget;
            return cmd_survey(so, s_json);
        }
        if (jst->parsed()) {
            std::cout << pcf::justify_csv(jd, budget);
            return 0;
        }
        if (p4->parsed()) {
            std::cout << pcf::p4_locus_csv(xmin, xmax, ymin, ymax, step);
            return 0;
        }
    } catch (const pcf::undecided& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
