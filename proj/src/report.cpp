#include "ulat/report.hpp"

#include <algorithm>
#include <sstream>

namespace ulat {

using nlohmann::json;

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

std::string pair_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

json histogram_json(const StrataHistogram& h) {
    json out = json::array();
    for (const auto& [k, c] : h) out.push_back({{"b1", k.first}, {"b2", k.second}, {"count", c}});
    return out;
}

}  // namespace

std::string Table::str() const {
    std::vector<std::size_t> w;
    for (const auto& r : rows_)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream os;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const auto& r = rows_[k];
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) line += "  ";
            line += std::string(w[i] - r[i].size(), ' ') + r[i];
        }
        os << line << "\n";
        if (k == 0) {
            std::size_t total = 0;
            for (auto x : w) total += x + 2;
            os << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
        }
    }
    return os.str();
}

bool RunReport::asserted_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.asserted || c.passed; });
}

RunOptions options_from_spec(const InstanceSpec& spec) {
    RunOptions o;
    o.f = spec.run.f;
    o.e = spec.run.e;
    o.poly_e = spec.run.poly_e;
    o.strata = spec.run.strata;
    o.hom = spec.run.hom;
    o.poly = spec.run.poly;
    o.cap = spec.run.cap;
    o.seed = spec.run.seed;
    return o;
}

json invariants_json(const Instance& inst) {
    const Invariants& v = inst.inv();
    json j;
    j["q"] = inst.q();
    j["precision"] = v.precision;
    for (int i = 0; i < 2; ++i) {
        auto ii = static_cast<std::size_t>(i);
        j["E" + std::to_string(i + 1)] = {{"n", v.n[ii]},
                                          {"delta", v.delta[ii]},
                                          {"m_search", v.m[ii].by_search},
                                          {"m_formula", v.m[ii].by_formula},
                                          {"search_depth", v.m[ii].search_depth}};
    }
    j["r"] = {{"sylvester", v.r_all.sylvester}, {"via_gamma1", v.r_all.via_gamma1}, {"via_gamma2", v.r_all.via_gamma2}};
    TransferFactor t = transfer_factor(v.r);
    j["transfer_factor"] = {{"sign", t.sign}, {"q_exponent", t.q_exponent}};
    return j;
}

std::string invariants_table(const Instance& inst) {
    const Invariants& v = inst.inv();
    Table t({"i", "n_i", "delta_i", "m_i (search)", "m_i (formula)"});
    for (int i = 0; i < 2; ++i) {
        auto ii = static_cast<std::size_t>(i);
        t.add({str(i + 1), str(v.n[ii]), str(v.delta[ii]), str(v.m[ii].by_search), str(v.m[ii].by_formula)});
    }
    Table r({"r (Sylvester)", "r (v P2(gamma1))", "r (v P1(gamma2))", "transfer sign", "transfer q-exponent"});
    TransferFactor tf = transfer_factor(v.r);
    r.add({str(v.r_all.sylvester), str(v.r_all.via_gamma1), str(v.r_all.via_gamma2), tf.sign > 0 ? "+1" : "-1",
           str(tf.q_exponent)});
    return "q = " + std::to_string(inst.q()) + ", working precision " + std::to_string(v.precision) + "\n\n" + t.str() +
           "\n" + r.str();
}

std::vector<Check> invariant_formula_checks(const Instance& inst) {
    const Invariants& v = inst.inv();
    std::vector<Check> out;
    out.push_back({"r three ways", true, v.r_all.agree(),
                   str(v.r_all.sylvester) + " " + str(v.r_all.via_gamma1) + " " + str(v.r_all.via_gamma2)});
    for (int i = 0; i < 2; ++i) {
        auto ii = static_cast<std::size_t>(i);
        out.push_back({"m" + str(i + 1) + " search = formula", true, v.m[ii].agree(),
                       str(v.m[ii].by_search) + " " + str(v.m[ii].by_formula)});
        if (inst.spec().ext[ii].tame)
            out.push_back({"delta" + str(i + 1) + " = n - 1 (tame)", true, v.delta[ii] == v.n[ii] - 1,
                           str(v.delta[ii]) + " vs " + str(v.n[ii] - 1)});
    }
    return out;
}

RunReport run_verify(const Instance& inst, const RunOptions& opt) {
    RunReport rep;
    json& doc = rep.doc;
    std::ostringstream text;
    doc["instance"] = inst.spec().raw;
    doc["invariants"] = invariants_json(inst);
    doc["options"] = {{"f", opt.f},       {"e", opt.e},       {"poly_e", opt.poly_e}, {"strata", opt.strata},
                      {"hom", opt.hom},   {"poly", opt.poly}, {"cap", opt.cap},       {"seed", opt.seed}};
    text << "instance " << inst.spec().name << "\n\n" << invariants_table(inst) << "\n";
    for (auto& c : invariant_formula_checks(inst)) rep.checks.push_back(c);

    // counts over k'_e
    json counts = json::array();
    std::vector<std::pair<std::int64_t, std::int64_t>> poly_points;
    Table ct({"e", "Q", "|X|", "|X'|", "|Y1|", "|Y2|", "q^{2er}|Y1||Y2|", "residual"});
    for (unsigned e : opt.e) {
        std::string name = "even-f identity e=" + str(e);
        try {
            Theorem42Row row = verify_theorem_4_2(inst, e, opt.cap);
            std::int64_t Q = checked_pow(static_cast<std::int64_t>(inst.q()), 2 * e);
            counts.push_back({{"e", e},
                              {"Q", Q},
                              {"X", row.X},
                              {"Xp", row.Xp},
                              {"Y1", row.Y1},
                              {"Y2", row.Y2},
                              {"rhs", row.rhs},
                              {"residual", row.residual},
                              {"strata_X", histogram_json(row.strata_X)},
                              {"strata_Xp", histogram_json(row.strata_Xp)},
                              {"visited", row.visited}});
            ct.add({str(e), str(Q), str(row.X), str(row.Xp), str(row.Y1), str(row.Y2), str(row.rhs), str(row.residual)});
            rep.checks.push_back({name, true, row.residual == 0, "residual " + str(row.residual)});
            poly_points.emplace_back(Q, row.X);
            Table st({"model", "(b1,b2)", "count"});
            for (const auto& [k, c] : row.strata_X) st.add({"X", pair_str(k.first, k.second), str(static_cast<std::int64_t>(c))});
            for (const auto& [k, c] : row.strata_Xp) st.add({"X'", pair_str(k.first, k.second), str(static_cast<std::int64_t>(c))});
            text << "strata histogram, e = " << e << "\n" << st.str() << "\n";
        } catch (const CapExceeded& ex) {
            counts.push_back({{"e", e}, {"error", ex.what()}});
            rep.checks.push_back({name, true, false, ex.what()});
        }
    }
    doc["counts"] = counts;
    text << "point counts over k'_e\n" << ct.str() << "\n";

    // Frobenius-fixed lattices and the orbital integral identity
    json orb = json::array();
    json observations = json::array();
    Table ot({"f", "|X^F|", "|X'^F|", "O_kappa", "SO", "(-1)^r q^{fr} SO", "mode", "result"});
    for (unsigned f : opt.f) {
        bool asserted = f % 2 == 0 || (inst.inv().n[0] == 1 && inst.inv().n[1] == 1);
        std::string mode = asserted ? "asserted" : "conjecture";
        std::string name = "orbital identity f=" + str(f);
        try {
            OrbitalRow row = orbital_integrals(inst, f, opt.cap);
            json j = {{"f", f},          {"fixed_X", row.fixed_X}, {"fixed_Xp", row.fixed_Xp},
                      {"Y1", row.Y1},    {"Y2", row.Y2},           {"O_kappa", row.O_kappa},
                      {"SO", row.SO},    {"predicted", row.predicted}, {"residual", row.O_kappa - row.predicted},
                      {"out_of_domain", row.out_of_domain},        {"mode", mode}};
            orb.push_back(j);
            ot.add({str(f), str(row.fixed_X), str(row.fixed_Xp), str(row.O_kappa), str(row.SO), str(row.predicted), mode,
                    row.holds() ? "equal" : "differs by " + str(row.O_kappa - row.predicted)});
            rep.checks.push_back({name, asserted, row.holds(), "O_kappa " + str(row.O_kappa) + " vs " + str(row.predicted)});
            if (!asserted) observations.push_back(j);
        } catch (const CapExceeded& ex) {
            orb.push_back({{"f", f}, {"mode", mode}, {"error", ex.what()}});
            ot.add({str(f), "-", "-", "-", "-", "-", mode, "cap exceeded"});
            rep.checks.push_back({name, asserted, false, ex.what()});
            if (!asserted) observations.push_back({{"f", f}, {"error", ex.what()}});
        }
    }
    doc["orbital"] = orb;
    doc["conjecture_observations"] = observations;
    text << "orbital integrals over k_f (conjecture rows never affect the exit status)\n" << ot.str() << "\n";

    if (opt.strata) {
        json sj = json::array();
        for (unsigned e : opt.e) {
            std::string name = "stratum law e=" + str(e);
            try {
                StratumReport sr = verify_stratum_law(inst, e, opt.cap);
                Table t({"model", "i", "j", "in domain", "|U_ij|", "q'^{er}|Y1||Y2|", "fibers", "bad fibers", "missing", "ok"});
                json rows = json::array();
                for (const auto& r : sr.rows) {
                    rows.push_back({{"model", r.model},   {"i", r.i},
                                    {"j", r.j},           {"in_domain", r.in_domain},
                                    {"full", r.full},     {"expected", r.expected},
                                    {"fibers", r.fibers}, {"bad_fibers", r.bad_fibers},
                                    {"missing_pairs", r.missing_pairs}, {"off_target", r.off_target}});
                    t.add({r.model, str(r.i), str(r.j), str(static_cast<std::int64_t>(r.in_domain)), str(r.full),
                           str(r.expected), str(static_cast<std::int64_t>(r.fibers)),
                           str(static_cast<std::int64_t>(r.bad_fibers)), str(static_cast<std::int64_t>(r.missing_pairs)),
                           r.ok() ? "yes" : "NO"});
                }
                sj.push_back({{"e", e},
                              {"rows", rows},
                              {"partition_ok", sr.partition_ok},
                              {"complement_ok", sr.complement_ok},
                              {"notes", sr.notes}});
                text << "strata U_ij, e = " << e << " (partition " << (sr.partition_ok ? "ok" : "FAILS")
                     << ", embedding complement " << (sr.complement_ok ? "ok" : "FAILS") << ")\n"
                     << t.str() << "\n";
                rep.checks.push_back({name, true, sr.ok(), str(static_cast<std::int64_t>(sr.rows.size())) + " strata"});
            } catch (const CapExceeded& ex) {
                sj.push_back({{"e", e}, {"error", ex.what()}});
                rep.checks.push_back({name, true, false, ex.what()});
            }
        }
        doc["strata"] = sj;
    }

    if (opt.hom) {
        try {
            HomReport hr = verify_hom_dimension(inst, opt.hom_samples, opt.seed, opt.cap);
            json samples = json::array();
            std::map<int, int> dims;
            for (const auto& s : hr.samples) {
                samples.push_back({{"y1", s.y1}, {"y2", s.y2}, {"s1", s.s1}, {"s2", s.s2}, {"dim", s.dim}});
                ++dims[s.dim];
            }
            doc["hom"] = {{"r", hr.r}, {"seed", opt.seed}, {"samples", samples}};
            std::string d;
            for (const auto& [k, c] : dims) d += (d.empty() ? "" : ", ") + str(c) + " x dim " + str(k);
            text << "hom dimension over " << hr.samples.size() << " sampled pairs: " << d << " (r = " << hr.r << ")\n\n";
            rep.checks.push_back({"hom dimension = r", true, hr.ok(), d});
        } catch (const CapExceeded& ex) {
            doc["hom"] = {{"error", ex.what()}};
            rep.checks.push_back({"hom dimension = r", true, false, ex.what()});
        }
    }

    if (opt.poly) {
        try {
            if (!opt.poly_e.empty()) {
                Models M = theorem_models(inst.inv());
                std::map<std::int64_t, std::int64_t> known(poly_points.begin(), poly_points.end());
                poly_points.clear();
                for (unsigned e : opt.poly_e) {
                    std::int64_t Q = checked_pow(static_cast<std::int64_t>(inst.q()), 2 * e);
                    if (!known.count(Q))
                        known[Q] = static_cast<std::int64_t>(model_points(inst, M.X, 2 * e, opt.cap).points.size());
                    poly_points.emplace_back(Q, known[Q]);
                }
            }
            PolyFit fit = polynomiality_probe(poly_points);
            doc["poly"] = {{"points", poly_points},
                           {"coeffs", fit.coeffs},
                           {"text", fit.text},
                           {"nonneg_integer", fit.nonneg_integer},
                           {"overdetermined", fit.overdetermined}};
            text << "|X(k'_e)| interpolated in Q: " << fit.text << (fit.nonneg_integer ? "" : " (not integral)")
                 << (fit.overdetermined ? "" : " (exactly determined)") << "\n\n";
            rep.checks.push_back({"polynomial count", false, fit.nonneg_integer, fit.text});
        } catch (const std::exception& ex) {
            doc["poly"] = {{"error", ex.what()}};
            rep.checks.push_back({"polynomial count", false, false, ex.what()});
        }
    }

    if (opt.invariants) {
        json ij;
        try {
            InvariantReport ir = check_invariants(inst, 2, opt.cap);
            Table t({"property", "checked", "violations"});
            for (const auto& [k, tally] : ir) {
                ij[k] = {{"checked", tally.checked}, {"violations", tally.violations}, {"examples", tally.examples}};
                t.add({k, str(static_cast<std::int64_t>(tally.checked)), str(static_cast<std::int64_t>(tally.violations))});
                rep.checks.push_back({"invariant " + k, true, tally.violations == 0,
                                      str(static_cast<std::int64_t>(tally.checked)) + " checked"});
            }
            text << "invariant suites over k' points\n" << t.str() << "\n";
        } catch (const CapExceeded& ex) {
            ij["error"] = ex.what();
            rep.checks.push_back({"invariant suites", true, false, ex.what()});
        }
        doc["invariant_suites"] = ij;
    }

    json cj = json::array();
    Table chk({"check", "mode", "result", "detail"});
    for (const auto& c : rep.checks) {
        cj.push_back({{"name", c.name}, {"asserted", c.asserted}, {"passed", c.passed}, {"detail", c.detail}});
        chk.add({c.name, c.asserted ? "asserted" : "observed", c.passed ? "pass" : (c.asserted ? "FAIL" : "differs"), c.detail});
    }
    doc["checks"] = cj;
    doc["asserted_ok"] = rep.asserted_ok();
    text << chk.str();
    rep.text = text.str();
    return rep;
}

std::string dump_lattices(const Instance& inst, unsigned e, std::uint64_t cap) {
    Models M = theorem_models(inst.inv());
    PointSet X = model_points(inst, M.X, 2 * e, cap);
    std::string out;
    for (const auto& p : X.points) out += dump_line(X.window, p) + "\n";
    return out;
}

}  // namespace ulat
