#include "pcf/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "pcf/criteria.hpp"
#include "pcf/kummer.hpp"
#include "pcf/voronoi.hpp"

namespace pcf {

namespace {

using ojson = nlohmann::ordered_json;

int64_t small_norm(const mpz_class& n)
{
    if (!n.fits_slong_p())
        throw hypothesis_violated("ambiguous norm exceeds the machine range");
    return n.get_si();
}

/* 0 when m is not its own normalization (cube multiples, perfect cubes) */
int64_t normal_or_zero(int64_t m)
{
    try {
        return normalize(m).d;
    } catch (const not_a_cubic_field&) {
        return 0;
    }
}

std::optional<species_t> species_from(const std::string& s)
{
    if (s == "1a") return species_t::s1a;
    if (s == "1b") return species_t::s1b;
    if (s == "2") return species_t::s2;
    return std::nullopt;
}

std::optional<pf_type> type_from(const std::string& s)
{
    if (s == "alpha") return pf_type::alpha;
    if (s == "beta") return pf_type::beta;
    if (s == "gamma") return pf_type::gamma;
    return std::nullopt;
}

std::optional<m_class_t> mclass_from(const std::string& s)
{
    if (s == "M0") return m_class_t::m0;
    if (s == "M1") return m_class_t::m1;
    if (s == "M2") return m_class_t::m2;
    return std::nullopt;
}

} // namespace

std::string fixed4(double v)
{
    double r = std::nearbyint(v * 10000.0) / 10000.0;
    if (r == 0)
        r = 0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", r);
    return buf;
}

survey_record survey_field(int64_t d, bool with_mclass, const cube_budget& budget)
{
    auto t0 = std::chrono::steady_clock::now();
    cubic_field F(d);
    survey_record rec;
    rec.d = F.r.d;
    rec.a = F.r.a;
    rec.b = F.r.b;
    rec.species = F.r.species;
    rec.f = F.r.f;
    rec.R = F.r.R;

    cubic_order home = make_order(F, F.r.species == species_t::s2
                                         ? cubic_order::kind_t::suborder0
                                         : cubic_order::kind_t::maximal);
    chain_options co;
    co.stop = chain_stop::full_period;
    co.keep_elements = false; /* only norms and the unit are consumed */
    chain_result cr = run_chain(home, co);
    if (cr.hit_cap || !cr.period)
        throw enumeration_overflow("chain did not close within the step budget");
    rec.period_length = *cr.period;
    for (int64_t j : cr.pf_indices)
        rec.pf_norms.push_back(small_norm(cr.records[size_t(j)].norm));

    if (rec.pf_norms.empty()) {
        if (!cr.fundamental_unit)
            throw hypothesis_violated("closed period without a unit");
        unit_index_result q = subfield_unit_index(F, *cr.fundamental_unit, budget);
        rec.Q = q.Q;
        rec.type = q.Q == 1 ? pf_type::alpha
                            : (F.r.species == species_t::s1b ? pf_type::beta : pf_type::gamma);
    } else {
        rec.type = pf_type::beta;
    }

    if (with_mclass && rec.type == pf_type::beta) {
        int64_t n = 0;
        if (!rec.pf_norms.empty()) {
            n = rec.pf_norms.front();
        } else {
            pf_search_result pf = discover_principal_factor(F, *cr.fundamental_unit, budget);
            if (!pf.found)
                throw hypothesis_violated("unit index 3 without a principal factor");
            n = pf.norm;
        }
        rec.m_class = m_class(F, n).cls;
    }

    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::string to_jsonl(const survey_record& rec)
{
    ojson j;
    j["d"] = rec.d;
    j["a"] = rec.a;
    j["b"] = rec.b;
    j["species"] = species_name(rec.species);
    j["f"] = rec.f;
    j["R"] = rec.R;
    j["type"] = pf_type_name(rec.type);
    if (rec.Q)
        j["Q"] = *rec.Q;
    else
        j["Q"] = nullptr;
    j["period_length"] = rec.period_length;
    j["pf_norms"] = rec.pf_norms;
    if (rec.m_class)
        j["m_class"] = m_class_name(*rec.m_class);
    else
        j["m_class"] = nullptr;
    j["timing"] = rec.seconds;
    return j.dump();
}

std::optional<survey_record> from_jsonl(const std::string& line)
{
    ojson j = ojson::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return std::nullopt;
    try {
        survey_record r;
        r.d = j.at("d").get<int64_t>();
        r.a = j.at("a").get<int64_t>();
        r.b = j.at("b").get<int64_t>();
        auto sp = species_from(j.at("species").get<std::string>());
        if (!sp)
            return std::nullopt;
        r.species = *sp;
        r.f = j.at("f").get<int64_t>();
        r.R = j.at("R").get<int64_t>();
        auto ty = type_from(j.at("type").get<std::string>());
        if (!ty)
            return std::nullopt;
        r.type = *ty;
        if (!j.at("Q").is_null())
            r.Q = j.at("Q").get<int>();
        r.period_length = j.at("period_length").get<int64_t>();
        r.pf_norms = j.at("pf_norms").get<std::vector<int64_t>>();
        if (!j.at("m_class").is_null()) {
            auto mc = mclass_from(j.at("m_class").get<std::string>());
            if (!mc)
                return std::nullopt;
            r.m_class = *mc;
        }
        r.seconds = j.at("timing").get<double>();
        return r;
    } catch (const ojson::exception&) {
        return std::nullopt;
    }
}

std::string canonical_form(const std::string& jsonl_line)
{
    ojson j = ojson::parse(jsonl_line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return {};
    j.erase("timing");
    return j.dump();
}

survey_summary run_survey(const survey_options& opt,
                          const std::function<void(const survey_record&)>& sink)
{
    if (opt.lo < 2)
        throw error("survey ranges start at 2");

    std::vector<int64_t> targets;
    for (int64_t m = opt.lo; m <= opt.hi; ++m)
        if (normal_or_zero(m) == m)
            targets.push_back(m);

    /* resume: keep every leading well-formed line, drop the crash tail */
    std::unordered_map<int64_t, survey_record> prior;
    if (opt.resume && !opt.out_path.empty() && std::filesystem::exists(opt.out_path)) {
        std::ifstream in(opt.out_path, std::ios::binary);
        std::string line;
        std::uintmax_t keep = 0;
        while (std::getline(in, line)) {
            bool terminated = !in.eof();
            auto rec = from_jsonl(line);
            if (!terminated || !rec)
                break;
            keep += line.size() + 1;
            prior[rec->d] = *rec;
        }
        in.close();
        std::error_code ec;
        auto sz = std::filesystem::file_size(opt.out_path, ec);
        if (!ec && sz > keep)
            std::filesystem::resize_file(opt.out_path, keep, ec);
    }

    std::vector<int64_t> todo;
    for (int64_t d : targets)
        if (!prior.count(d))
            todo.push_back(d);

    std::ofstream out;
    if (!opt.out_path.empty()) {
        out.open(opt.out_path, std::ios::binary | std::ios::app);
        if (!out)
            throw error("cannot open survey output: " + opt.out_path);
    }

    survey_summary sum;
    auto account = [&](const survey_record& r, bool resumed) {
        ++sum.total;
        if (resumed)
            ++sum.resumed;
        switch (r.type) {
        case pf_type::alpha: ++sum.alpha; break;
        case pf_type::beta: ++sum.beta; break;
        case pf_type::gamma: ++sum.gamma; break;
        }
        if (r.m_class && *r.m_class == m_class_t::m0)
            sum.m0.push_back(r.d);
        if (sink)
            sink(r);
    };

    /* pool computes in any order; this thread writes in ascending d */
    std::map<int64_t, survey_record> ready;
    std::exception_ptr bad;
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    int nw = std::max(1, opt.workers);

    auto work = [&]() {
        for (;;) {
            if (stop.load())
                return;
            size_t i = next.fetch_add(1);
            if (i >= todo.size())
                return;
            try {
                survey_record r = survey_field(todo[i], opt.with_mclass, opt.budget);
                std::lock_guard lk(mu);
                ready.emplace(todo[i], std::move(r));
            } catch (...) {
                std::lock_guard lk(mu);
                if (!bad)
                    bad = std::current_exception();
                stop.store(true);
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    if (nw > 1)
        for (int i = 0; i < nw; ++i)
            pool.emplace_back(work);

    for (int64_t d : targets) {
        auto pr = prior.find(d);
        if (pr != prior.end()) {
            account(pr->second, true);
            continue;
        }
        survey_record r;
        if (nw > 1) {
            std::unique_lock lk(mu);
            cv.wait(lk, [&] { return bad || ready.count(d); });
            auto it = ready.find(d);
            if (it == ready.end())
                break; // a worker failed before reaching d
            r = std::move(it->second);
            ready.erase(it);
        } else {
            try {
                r = survey_field(d, opt.with_mclass, opt.budget);
            } catch (...) {
                bad = std::current_exception();
                break;
            }
        }
        if (out.is_open()) {
            out << to_jsonl(r) << '\n';
            out.flush();
        }
        account(r, false);
    }

    stop.store(true);
    cv.notify_all();
    for (auto& t : pool)
        t.join();
    if (bad)
        std::rethrow_exception(bad);
    if (out.is_open() && !out)
        throw error("write failure on survey output: " + opt.out_path);
    return sum;
}

std::string justify_csv(const std::vector<int64_t>& ds, const cube_budget& budget)
{
    std::ostringstream os;
    os << "d,coset,norm,y,C,coarse,P2,B\n";
    for (int64_t m : ds) {
        cubic_field F(m);
        if (F.r.species != species_t::s2)
            throw not_type_beta("justification rows need type beta of species 2");
        cubic_order home = make_order(F, cubic_order::kind_t::suborder0);
        chain_options co;
        co.stop = chain_stop::first_pf;
        co.keep_elements = false;
        chain_result cr = run_chain(home, co);
        if (cr.hit_cap)
            throw enumeration_overflow("chain did not close within the step budget");
        int64_t n = 0;
        if (!cr.pf_indices.empty()) {
            n = small_norm(cr.records[size_t(cr.pf_indices.front())].norm);
        } else {
            if (!cr.fundamental_unit)
                throw hypothesis_violated("closed period without a unit");
            pf_search_result pf = discover_principal_factor(F, *cr.fundamental_unit, budget);
            if (!pf.found)
                throw not_type_beta("no principal factor exists for this radicand");
            n = pf.norm;
        }
        norm_cosets cs = coset_norms(canonical_split(F.r, n));
        const int64_t norms[2] = {cs.minimal_first, cs.minimal_second};
        const char* names[2] = {"first", "second"};
        for (int i = 0; i < 2; ++i) {
            coset_justification cj = justify_coset(F, norms[i]);
            os << F.r.d << ',' << names[i] << ',' << cj.norm << ',' << fixed4(cj.y.get_d())
               << ',' << fixed4(cj.coarse_window) << ',' << (cj.coarse_settles ? "yes" : "no")
               << ',' << fixed4(cj.p2_value) << ',' << fixed4(9.0) << '\n';
        }
    }
    return os.str();
}

std::string p4_locus_csv(double xmin, double xmax, double ymin, double ymax, double step)
{
    if (!(step > 0) || xmax < xmin || ymax < ymin)
        throw error("bad grid for the quartic locus");
    auto quartic = [](double x, double y) {
        return x * x * x * x - x * x * x + x * x * y - 8 * x * x + x * y + y * y;
    };
    auto sgn = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };

    std::vector<std::pair<double, const char*>> levels;
    auto ny = int64_t(std::floor((ymax - ymin) / step + 0.5));
    for (int64_t i = 0; i <= ny; ++i)
        levels.emplace_back(ymin + double(i) * step, "");
    for (auto [my, tag] : {std::pair<double, const char*>{2.0, "Y=2"},
                           {std::sqrt(6.0), "Y=sqrt6"}}) {
        if (my < ymin || my > ymax)
            continue;
        bool merged = false;
        for (auto& [y, mk] : levels)
            if (std::fabs(y - my) < 1e-9) {
                mk = tag;
                merged = true;
                break;
            }
        if (!merged)
            levels.emplace_back(my, tag);
    }
    std::sort(levels.begin(), levels.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });

    std::ostringstream os;
    os << "X,Y,P4,sign,marker\n";
    auto nx = int64_t(std::floor((xmax - xmin) / step + 0.5));
    for (int64_t i = 0; i <= nx; ++i) {
        double x = xmin + double(i) * step;
        for (const auto& [y, mk] : levels) {
            double v = quartic(x, y);
            os << fixed4(x) << ',' << fixed4(y) << ',' << fixed4(v) << ',' << sgn(v) << ','
               << mk << '\n';
        }
    }
    return os.str();
}

} // namespace pcf
