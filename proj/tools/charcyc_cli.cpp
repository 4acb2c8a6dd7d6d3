/**
 * Command-line front end: loads named objects from JSON files, dispatches
 * one operation or verification suite per invocation, prints a short human
 * report, and (with --out) writes a machine-readable JSON document that is
 * byte-identical for identical inputs and seed.
 *
 * Exit codes: 0 success / verified, 1 verification failure, 2 usage or
 * load error.
 */
#include "charcyc/cosheaf.hpp"
#include "charcyc/io.hpp"
#include "charcyc/orbifold.hpp"
#include "charcyc/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace charcyc;

struct Options {
    std::vector<std::string> load_paths;
    std::uint64_t seed = 7;
    std::size_t trials = 100;
    std::string out_path;
};

void write_out(const Options& opt, const Json& doc) {
    if (opt.out_path.empty()) return;
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw LoadError(opt.out_path + ": cannot open for writing");
    out << doc.dump(2) << "\n";
}

// "0 1;2" -> star({0,1}) union star({2})
OpenSet parse_star_union(const Workspace& ws, const std::string& complex_name,
                         const std::string& text) {
    const ComplexPtr& complex = ws.complex(complex_name);
    std::vector<Simplex> seeds;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::replace(group.begin(), group.end(), ',', ' ');
        std::vector<Vertex> verts;
        std::stringstream ss(group);
        Vertex v;
        while (ss >> v) verts.push_back(v);
        if (!verts.empty()) seeds.push_back(make_simplex(verts));
    }
    if (seeds.empty()) throw LoadError("empty open-set description: \"" + text + "\"");
    return star_open_union(complex, seeds);
}

Vec parse_covector(const std::string& text) {
    Vec xi;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) xi.push_back(rational_from_string(token));
    return xi;
}

Json function_report(const ConstructibleFunction& f, const std::string& complex_name) {
    Json j = function_to_json(f, complex_name);
    j["euler_integral"] = rational_to_json(euler_integral(f));
    return j;
}

void print_function(const ConstructibleFunction& f) {
    for (const auto& [s, v] : f.values())
        std::cout << "  " << simplex_to_string(s) << " -> " << to_string(v) << "\n";
    if (f.values().empty()) std::cout << "  (zero function)\n";
}

int cmd_info(const Options& opt, const Workspace& ws, const std::string& name) {
    Json j;
    if (ws.complexes().count(name)) {
        const ComplexPtr& k = ws.complex(name);
        std::cout << name << ": complex, dim " << k->dim() << ", " << k->size() << " simplices, chi_c "
                  << to_string(euler_char_cc(*k)) << "\n";
        j = {{"kind", "complex"}, {"dim", k->dim()}, {"simplices", k->size()},
             {"euler_char", rational_to_json(euler_char_cc(*k))}};
    } else if (ws.functions().count(name)) {
        const ConstructibleFunction& f = ws.function(name);
        std::cout << name << ": function, support " << f.values().size() << ", integral "
                  << to_string(euler_integral(f)) << "\n";
        j = {{"kind", "function"}, {"support", f.values().size()},
             {"euler_integral", rational_to_json(euler_integral(f))}};
    } else if (ws.actions().count(name)) {
        const ActionPtr& a = ws.action(name);
        RegularityReport reg = check_regularity(*a);
        std::cout << name << ": action, order " << a->order() << ", regular "
                  << (reg.pass() ? "yes" : "no") << ", free " << (a->is_free() ? "yes" : "no") << "\n";
        j = {{"kind", "action"}, {"order", a->order()}, {"regular", reg.pass()},
             {"free", a->is_free()}};
    } else if (ws.charts().count(name)) {
        const LoadedChart& c = ws.chart(name);
        std::size_t chambers = 0;
        for (const Simplex& s : c.chart->complex()->simplices()) chambers += c.chart->chambers(s).size();
        std::cout << name << ": chart, ambient dim " << c.chart->ambient_dim() << ", " << chambers
                  << " chambers\n";
        j = {{"kind", "chart"}, {"ambient_dim", c.chart->ambient_dim()}, {"chambers", chambers}};
    } else {
        throw LoadError("unknown object \"" + name + "\"");
    }
    write_out(opt, j);
    return 0;
}

int cmd_integrate(const Options& opt, const Workspace& ws, const std::string& complex_name,
                  const std::string& fn_name) {
    const ConstructibleFunction& f = ws.function(fn_name);
    if (!same_complex(f.complex(), ws.complex(complex_name)))
        throw LoadError("function \"" + fn_name + "\" does not live on \"" + complex_name + "\"");
    const Rational by_simplices = euler_integral(f);
    const Rational by_levels = euler_integral_level_sets(f);
    if (by_simplices != by_levels) {
        std::cout << "INTERNAL DISAGREEMENT: " << to_string(by_simplices) << " vs "
                  << to_string(by_levels) << "\n";
        return 1;
    }
    std::cout << to_string(by_simplices) << "\n";
    write_out(opt, Json{{"euler_integral", rational_to_json(by_simplices)}});
    return 0;
}

int cmd_morse_eval(const Options& opt, const Workspace& ws, const std::string& complex_name,
                   const std::string& fn_name) {
    const ComplexPtr& k = ws.complex(complex_name);
    const ConstructibleFunction& f = ws.function(fn_name);
    if (!same_complex(f.complex(), k))
        throw LoadError("function \"" + fn_name + "\" does not live on \"" + complex_name + "\"");
    Rng rng(opt.seed);
    std::optional<Rational> common;
    bool independent = true;
    for (std::size_t t = 0; t < std::max<std::size_t>(opt.trials, 1); ++t) {
        Rational val = morse_evaluate(f, random_order(rng, k));
        if (!common) common = val;
        else if (val != *common) independent = false;
    }
    std::cout << to_string(*common) << (independent ? "" : "  (ORDER DEPENDENT!)") << "\n";
    write_out(opt, Json{{"morse_value", rational_to_json(*common)},
                        {"order_independent", independent},
                        {"orders_tried", std::max<std::size_t>(opt.trials, 1)}});
    return independent ? 0 : 1;
}

int cmd_cc(const Options& opt, const Workspace& ws, const std::string& fn_name,
           const std::string& chart_name) {
    const LoadedChart& chart = ws.chart(chart_name);
    LagrangianCycleTable table = cc(ws.function(fn_name), chart.chart);
    std::size_t entries = 0;
    for (const auto& [s, row] : table.rows())
        for (const Rational& m : row)
            if (m != 0) ++entries;
    std::cout << "characteristic cycle: " << table.rows().size() << " simplices, " << entries
              << " nonzero chamber multiplicities\n";
    write_out(opt, table_to_json(table, chart_name));
    return 0;
}

int cmd_cc_inverse(const Options& opt, const Workspace& ws, const std::string& chart_name,
                   const std::string& table_path) {
    const LoadedChart& chart = ws.chart(chart_name);
    std::ifstream in(table_path);
    if (!in) throw LoadError(table_path + ": cannot open");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw LoadError(table_path + ": " + std::string(e.what()));
    }
    LagrangianCycleTable table = table_from_json(j, chart.chart, table_path);
    ConstructibleFunction f = cc_inverse(table);
    print_function(f);
    write_out(opt, function_report(f, ws.name_of_complex(f.complex())));
    return 0;
}

int cmd_intersect(const Options& opt, const Workspace& ws, const std::string& chart_name,
                  const std::string& table_path, const std::string& covector_text) {
    const LoadedChart& chart = ws.chart(chart_name);
    std::ifstream in(table_path);
    if (!in) throw LoadError(table_path + ": cannot open");
    Json j = Json::parse(in);
    LagrangianCycleTable table = table_from_json(j, chart.chart, table_path);
    std::optional<Vec> xi;
    if (!covector_text.empty()) xi = parse_covector(covector_text);
    const Rational val = intersect_zero_section(table, xi);
    std::cout << to_string(val) << "\n";
    write_out(opt, Json{{"intersection", rational_to_json(val)}});
    return 0;
}

int cmd_mv_split(const Options& opt, const Workspace& ws, const std::string& complex_name,
                 const std::string& fn_name, const std::string& u_text, const std::string& v_text) {
    const ConstructibleFunction& f = ws.function(fn_name);
    OpenSet u = parse_star_union(ws, complex_name, u_text);
    OpenSet v = parse_star_union(ws, complex_name, v_text);
    MvSplit split = mv_split(f, u, v);
    std::cout << "split after " << split.rounds << " subdivision(s)\n";
    std::cout << "piece in U (integral " << to_string(euler_integral(split.f_u)) << "):\n";
    print_function(split.f_u);
    std::cout << "piece in V (integral " << to_string(euler_integral(split.f_v)) << "):\n";
    print_function(split.f_v);
    Json j;
    j["rounds"] = split.rounds;
    j["piece_u"] = function_report(split.f_u, complex_name + "~subdivided");
    j["piece_v"] = function_report(split.f_v, complex_name + "~subdivided");
    j["integral_sum"] =
        rational_to_json(euler_integral(split.f_u) + euler_integral(split.f_v));
    write_out(opt, j);
    return 0;
}

int cmd_quotient(const Options& opt, const Workspace& ws, const std::string& complex_name,
                 const std::string& action_name) {
    (void)ws.complex(complex_name);
    QuotientData qd(ws.action(action_name));
    std::cout << "coarse complex: " << qd.coarse()->size() << " simplices, dim "
              << qd.coarse()->dim() << "\n";
    for (const Simplex& s : qd.coarse()->simplices())
        std::cout << "  " << simplex_to_string(s) << "  |fiber| " << qd.fiber(s).size()
                  << "  |stab| " << qd.coarse_stabilizer_order(s) << "\n";
    Json j = complex_to_json(*qd.coarse());
    Json stabs;
    for (const Simplex& s : qd.coarse()->simplices())
        stabs[simplex_to_string(s)] = qd.coarse_stabilizer_order(s);
    j["stabilizer_orders"] = stabs;
    write_out(opt, j);
    return 0;
}

int cmd_pushforward(const Options& opt, const Workspace& ws, const std::string& complex_name,
                    const std::string& action_name, const std::string& fn_name) {
    (void)ws.complex(complex_name);
    const ActionPtr& action = ws.action(action_name);
    QuotientData qd(action);
    ConstructibleFunction pushed = pushforward_p(class_of(ws.function(fn_name), action), qd);
    print_function(pushed);
    write_out(opt, function_report(pushed, complex_name + "~coarse"));
    return 0;
}

int cmd_iota(const Options& opt, const Workspace& ws, const std::string& complex_name,
             const std::string& action_name) {
    (void)ws.complex(complex_name);
    QuotientData qd(ws.action(action_name));
    ConstructibleFunction weights = iota(qd);
    print_function(weights);
    write_out(opt, function_report(weights, complex_name + "~coarse"));
    return 0;
}

// --- verify ---------------------------------------------------------------

Json index_suite_json(const IndexSuiteResult& r) {
    return Json{{"trials", r.trials},
                {"orders_per_trial", r.orders_per_trial},
                {"zeta_failures", r.zeta_failures},
                {"morse_failures", r.morse_failures},
                {"covector_independence_failures", r.covector_independence_failures},
                {"pass", r.pass()}};
}

Json cc_iso_json(const CcIsoSuiteResult& r) {
    return Json{{"trials", r.trials},
                {"roundtrip_failures", r.roundtrip_failures},
                {"injectivity_failures", r.injectivity_failures},
                {"pass", r.pass()}};
}

Json chamber_json(const ChamberSuiteResult& r) {
    return Json{{"simplices", r.simplices},
                {"chambers", r.chambers},
                {"witness_failures", r.witness_failures},
                {"conormality_failures", r.conormality_failures},
                {"duplicate_failures", r.duplicate_failures},
                {"antipodal_failures", r.antipodal_failures},
                {"sample_misses", r.sample_misses},
                {"pass", r.pass()}};
}

Json mv_json(const MvExactnessReport& r) {
    return Json{{"trials", r.trials},
                {"reassembly_ok", r.reassembly_ok},
                {"integral_additivity_ok", r.integral_additivity_ok},
                {"middle_pairs", r.middle_pairs},
                {"middle_witnessed", r.middle_witnessed},
                {"adversarial_pairs", r.adversarial_pairs},
                {"adversarial_rejected", r.adversarial_rejected},
                {"pass", r.pass()}};
}

Json localized_json(const LocalizedIndexReport& r) {
    return Json{{"trials", r.trials},
                {"index_ok", r.index_ok},
                {"additivity_checked", r.additivity_checked},
                {"additivity_ok", r.additivity_ok},
                {"pass", r.pass()}};
}

Json norm_json(const NormSuiteResult& r) {
    Json diag = Json::array();
    for (const Rational& d : r.transfer_norm.diagonal) diag.push_back(rational_to_json(d));
    return Json{{"iso_dimension", r.iso.coarse_basis.size()},
                {"iso_invertible", r.iso.invertible},
                {"transfer_diagonal", diag},
                {"transfer_is_diagonal", r.transfer_norm.is_diagonal},
                {"free_action", r.free_action},
                {"transfer_is_order_times_identity", r.transfer_is_order_times_identity},
                {"pass", r.pass()}};
}

Json orbifold_integral_json(const OrbifoldIntegralSuiteResult& r) {
    return Json{{"trials", r.trials},
                {"failures", r.failures},
                {"class_welldef_failures", r.class_welldef_failures},
                {"pass", r.pass()}};
}

Json orbifold_index_json(const OrbifoldIndexSuiteResult& r) {
    return Json{{"trials", r.trials}, {"failures", r.failures}, {"pass", r.pass()}};
}

int report_outcome(const Options& opt, const std::string& what, bool pass, Json j) {
    std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
    write_out(opt, j);
    return pass ? 0 : 1;
}

int cmd_verify_index(const Options& opt, const Workspace& ws, const std::string& chart_name,
                     std::size_t orders) {
    const LoadedChart& chart = ws.chart(chart_name);
    IndexSuiteResult idx = run_index_suite(chart.chart, opt.trials, orders, opt.seed);
    CcIsoSuiteResult iso = run_cc_iso_suite(chart.chart, opt.trials, opt.seed + 1);
    Json j{{"suite", "index"}, {"chart", chart_name}, {"seed", opt.seed},
           {"index", index_suite_json(idx)}, {"cc_iso", cc_iso_json(iso)}};
    return report_outcome(opt, "verify index (chart " + chart_name + ")", idx.pass() && iso.pass(),
                          std::move(j));
}

int cmd_verify_chambers(const Options& opt, const Workspace& ws, const std::string& chart_name,
                        std::size_t samples) {
    const LoadedChart& chart = ws.chart(chart_name);
    ChamberSuiteResult r = run_chamber_suite(chart.chart, samples, opt.seed);
    Json j{{"suite", "chambers"}, {"chart", chart_name}, {"seed", opt.seed},
           {"chambers", chamber_json(r)}};
    return report_outcome(opt, "verify chambers (chart " + chart_name + ")", r.pass(), std::move(j));
}

int cmd_verify_cosheaf(const Options& opt, const Workspace& ws, const std::string& complex_name,
                       const std::string& u_text, const std::string& v_text,
                       const std::string& chart_name) {
    const ComplexPtr& complex = ws.complex(complex_name);
    OpenSet u = parse_star_union(ws, complex_name, u_text);
    OpenSet v = parse_star_union(ws, complex_name, v_text);
    if (u.set_union(v).members().size() != complex->size())
        throw NotACover("the two open sets do not cover the complex");
    MvExactnessReport mv = verify_mv_exactness(complex, u, v, opt.trials, opt.seed);
    Json j{{"suite", "cosheaf"}, {"complex", complex_name}, {"seed", opt.seed}, {"mv", mv_json(mv)}};
    bool pass = mv.pass();
    if (!chart_name.empty()) {
        const LoadedChart& chart = ws.chart(chart_name);
        LocalizedIndexReport loc =
            localized_index_verify(chart.chart, u, opt.trials, opt.seed + 1, &v);
        j["localized"] = localized_json(loc);
        pass = pass && loc.pass();
    }
    return report_outcome(opt, "verify cosheaf (complex " + complex_name + ")", pass, std::move(j));
}

int cmd_verify_norm(const Options& opt, const Workspace& ws, const std::string& complex_name,
                    const std::string& action_name) {
    (void)ws.complex(complex_name);
    Regularized reg = regularize(ws.action(action_name));
    QuotientData qd(reg.action);
    NormSuiteResult r = run_norm_suite(qd);
    Json j{{"suite", "norm"}, {"action", action_name}, {"regularization_rounds", reg.rounds},
           {"norm", norm_json(r)}};
    return report_outcome(opt, "verify norm (action " + action_name + ")", r.pass(), std::move(j));
}

int cmd_verify_orbifold_index(const Options& opt, const Workspace& ws,
                              const std::string& complex_name, const std::string& action_name,
                              const std::string& chart_name) {
    (void)ws.complex(complex_name);
    const ActionPtr& action = ws.action(action_name);
    Regularized reg = regularize(action);
    QuotientData qd(reg.action);
    OrbifoldIntegralSuiteResult integral = run_orbifold_integral_suite(qd, opt.trials, opt.seed);
    Json j{{"suite", "orbifold-index"}, {"action", action_name},
           {"regularization_rounds", reg.rounds}, {"seed", opt.seed},
           {"weighted_integral", orbifold_integral_json(integral)}};
    bool pass = integral.pass();
    if (!chart_name.empty()) {
        EquivariantChart eq = ws.equivariant(chart_name, action_name);
        OrbifoldIndexSuiteResult idx = run_orbifold_index_suite(eq, opt.trials, opt.seed + 1);
        j["equivariant_index"] = orbifold_index_json(idx);
        pass = pass && idx.pass();
        if (reg.rounds == 0) {
            // action already regular on the chart: report the per-trial
            // triple (class integral, weighted coarse integral, intersection)
            OrbifoldTripleSuiteResult triples =
                run_orbifold_triple_suite(eq, qd, opt.trials, opt.seed + 2);
            Json rows = Json::array();
            for (const auto& t : triples.triples)
                rows.push_back(Json{{"integral", rational_to_json(t[0])},
                                    {"weighted", rational_to_json(t[1])},
                                    {"intersection", rational_to_json(t[2])}});
            j["trial_triples"] = rows;
            j["triples_pass"] = triples.pass();
            pass = pass && triples.pass();
            std::cout << "per-trial triples (integral, weighted, intersection): "
                      << triples.trials - triples.failures << "/" << triples.trials
                      << " agree\n";
        }
    }
    return report_outcome(opt, "verify orbifold-index (action " + action_name + ")", pass,
                          std::move(j));
}

struct BatteryItem {
    std::string name;
    Json report;
    bool pass;
};

/// The standard battery over the stock fixtures: every verify suite, fixed
/// derived seeds, one combined document.
int cmd_verify_battery(const Options& opt, const Workspace& ws) {
    std::vector<BatteryItem> items;
    auto push = [&items](const std::string& name, bool pass, Json j) {
        items.push_back(BatteryItem{name, std::move(j), pass});
    };
    const std::vector<std::string> chart_names{"triangle_chart", "square_chart", "disk_chart",
                                               "tetrahedron_chart", "octahedron_chart"};
    for (const std::string& name : chart_names) {
        IndexSuiteResult idx = run_index_suite(ws.chart(name).chart, opt.trials, 10, opt.seed);
        CcIsoSuiteResult iso = run_cc_iso_suite(ws.chart(name).chart, opt.trials, opt.seed + 1);
        push("index:" + name, idx.pass() && iso.pass(),
             Json{{"index", index_suite_json(idx)}, {"cc_iso", cc_iso_json(iso)}});
        ChamberSuiteResult ch = run_chamber_suite(ws.chart(name).chart, 20, opt.seed + 2);
        push("chambers:" + name, ch.pass(), chamber_json(ch));
    }
    struct CoverSpec {
        const char* complex;
        const char* u;
        const char* v;
        const char* chart;  // empty when the complex has no stock chart
    };
    const std::vector<CoverSpec> covers{
        {"triangle_boundary_complex", "0;1", "2", ""},
        {"interval_complex", "0", "1", ""},
        {"disk_complex", "0", "1;2;3;4;5;6", "disk_chart"},
    };
    for (const CoverSpec& cover : covers) {
        OpenSet u = parse_star_union(ws, cover.complex, cover.u);
        OpenSet v = parse_star_union(ws, cover.complex, cover.v);
        MvExactnessReport mv =
            verify_mv_exactness(ws.complex(cover.complex), u, v, opt.trials, opt.seed);
        Json j{{"mv", mv_json(mv)}};
        bool pass = mv.pass();
        if (cover.chart[0] != '\0') {
            LocalizedIndexReport loc = localized_index_verify(ws.chart(cover.chart).chart, u,
                                                              opt.trials, opt.seed + 1, &v);
            j["localized"] = localized_json(loc);
            pass = pass && loc.pass();
        }
        push(std::string("cosheaf:") + cover.complex, pass, std::move(j));
    }
    const std::vector<std::string> action_names{"swap_action", "hexagon_action", "d4_action"};
    for (const std::string& name : action_names) {
        Regularized reg = regularize(ws.action(name));
        QuotientData qd(reg.action);
        NormSuiteResult norm = run_norm_suite(qd);
        push("norm:" + name, norm.pass(),
             Json{{"regularization_rounds", reg.rounds}, {"norm", norm_json(norm)}});
        OrbifoldIntegralSuiteResult oi = run_orbifold_integral_suite(qd, opt.trials, opt.seed + 3);
        push("orbifold-integral:" + name, oi.pass(), orbifold_integral_json(oi));
    }
    struct EqSpec {
        const char* chart;
        const char* action;
    };
    const std::vector<EqSpec> equivariant{{"path_chart", "swap_action"},
                                          {"square_d4_chart", "d4_action"},
                                          {"hexagon_chart", "hexagon_action"}};
    for (const EqSpec& eq_spec : equivariant) {
        EquivariantChart eq = ws.equivariant(eq_spec.chart, eq_spec.action);
        OrbifoldIndexSuiteResult idx = run_orbifold_index_suite(eq, 50, opt.seed + 4);
        push(std::string("orbifold-index:") + eq_spec.chart, idx.pass(), orbifold_index_json(idx));
    }

    bool all_pass = true;
    Json doc;
    doc["seed"] = opt.seed;
    doc["trials"] = opt.trials;
    Json results = Json::array();
    for (const BatteryItem& item : items) {
        std::cout << (item.pass ? "PASS " : "FAIL ") << item.name << "\n";
        results.push_back(Json{{"name", item.name}, {"pass", item.pass}, {"report", item.report}});
        all_pass = all_pass && item.pass;
    }
    doc["results"] = results;
    doc["pass"] = all_pass;
    write_out(opt, doc);
    std::cout << (all_pass ? "PASS" : "FAIL") << " verify battery (" << items.size()
              << " suites)\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler calculus, characteristic cycles, and orbifold quotients on simplicial complexes"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--load", opt.load_paths, "JSON object files; names are file stems")
        ->expected(-1);
    app.add_option("--seed", opt.seed, "seed for the deterministic suites");
    app.add_option("--trials", opt.trials, "trial count for the seeded suites");
    app.add_option("--out", opt.out_path, "write the structured JSON report here");

    std::string name_a, name_b, name_c, u_text, v_text, covector_text, chart_name;
    std::size_t orders = 10, samples = 20;

    CLI::App* info = app.add_subcommand("info", "summarize a loaded object");
    info->add_option("name", name_a)->required();

    CLI::App* integrate = app.add_subcommand("integrate", "Euler integral of a function");
    integrate->add_option("complex", name_a)->required();
    integrate->add_option("function", name_b)->required();

    CLI::App* morse = app.add_subcommand("morse-eval", "Morse sum over random injective orders");
    morse->add_option("complex", name_a)->required();
    morse->add_option("function", name_b)->required();

    CLI::App* cc_cmd = app.add_subcommand("cc", "characteristic cycle of a function");
    cc_cmd->add_option("function", name_a)->required();
    cc_cmd->add_option("chart", name_b)->required();

    CLI::App* cc_inv = app.add_subcommand("cc-inverse", "function with the given cycle table");
    cc_inv->add_option("chart", name_a)->required();
    cc_inv->add_option("table", name_b)->required();

    CLI::App* intersect = app.add_subcommand("intersect", "zero-section intersection of a table");
    intersect->add_option("chart", name_a)->required();
    intersect->add_option("table", name_b)->required();
    intersect->add_option("--covector", covector_text, "comma-separated rationals (else sampled)");

    CLI::App* mv = app.add_subcommand("mv-split", "Mayer-Vietoris splitting of a function");
    mv->add_option("complex", name_a)->required();
    mv->add_option("function", name_b)->required();
    mv->add_option("--u", u_text, "open set: star seeds \"v1 v2;v3\"")->required();
    mv->add_option("--v", v_text, "open set: star seeds")->required();

    CLI::App* quot = app.add_subcommand("quotient", "coarse complex of a regular action");
    quot->add_option("complex", name_a)->required();
    quot->add_option("action", name_b)->required();

    CLI::App* push = app.add_subcommand("pushforward", "norm pushforward of a function's class");
    push->add_option("complex", name_a)->required();
    push->add_option("action", name_b)->required();
    push->add_option("function", name_c)->required();

    CLI::App* iota_cmd = app.add_subcommand("iota", "stabilizer weighting on the coarse complex");
    iota_cmd->add_option("complex", name_a)->required();
    iota_cmd->add_option("action", name_b)->required();

    CLI::App* verify = app.add_subcommand("verify", "seeded verification suites");
    verify->require_subcommand(1);
    CLI::App* v_index = verify->add_subcommand("index", "integral = Morse = CC-intersection");
    v_index->add_option("--chart", chart_name)->required();
    v_index->add_option("--orders", orders, "covectors/orders per trial");
    CLI::App* v_chambers = verify->add_subcommand("chambers", "chamber atlas sanity");
    v_chambers->add_option("--chart", chart_name)->required();
    v_chambers->add_option("--samples", samples);
    CLI::App* v_cosheaf = verify->add_subcommand("cosheaf", "Mayer-Vietoris exactness");
    v_cosheaf->add_option("--complex", name_a)->required();
    v_cosheaf->add_option("--u", u_text)->required();
    v_cosheaf->add_option("--v", v_text)->required();
    v_cosheaf->add_option("--chart", chart_name, "also run the localized index checks");
    CLI::App* v_norm = verify->add_subcommand("norm", "norm-map isomorphism and transfer");
    v_norm->add_option("--complex", name_a)->required();
    v_norm->add_option("--action", name_b)->required();
    CLI::App* v_orb = verify->add_subcommand("orbifold-index", "orbifold index identities");
    v_orb->add_option("--complex", name_a)->required();
    v_orb->add_option("--action", name_b)->required();
    v_orb->add_option("--chart", chart_name, "equivariant chart (with matrices)");
    CLI::App* v_battery = verify->add_subcommand("battery", "standard battery over the stock fixtures");

    // Global flags remain usable after the subcommand name.
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Workspace ws;
        for (const std::string& path : opt.load_paths) ws.load_file(path);

        if (info->parsed()) return cmd_info(opt, ws, name_a);
        if (integrate->parsed()) return cmd_integrate(opt, ws, name_a, name_b);
        if (morse->parsed()) return cmd_morse_eval(opt, ws, name_a, name_b);
        if (cc_cmd->parsed()) return cmd_cc(opt, ws, name_a, name_b);
        if (cc_inv->parsed()) return cmd_cc_inverse(opt, ws, name_a, name_b);
        if (intersect->parsed()) return cmd_intersect(opt, ws, name_a, name_b, covector_text);
        if (mv->parsed()) return cmd_mv_split(opt, ws, name_a, name_b, u_text, v_text);
        if (quot->parsed()) return cmd_quotient(opt, ws, name_a, name_b);
        if (push->parsed()) return cmd_pushforward(opt, ws, name_a, name_b, name_c);
        if (iota_cmd->parsed()) return cmd_iota(opt, ws, name_a, name_b);
        if (verify->parsed()) {
            if (v_index->parsed()) return cmd_verify_index(opt, ws, chart_name, orders);
            if (v_chambers->parsed()) return cmd_verify_chambers(opt, ws, chart_name, samples);
            if (v_cosheaf->parsed())
                return cmd_verify_cosheaf(opt, ws, name_a, u_text, v_text, chart_name);
            if (v_norm->parsed()) return cmd_verify_norm(opt, ws, name_a, name_b);
            if (v_orb->parsed())
                return cmd_verify_orbifold_index(opt, ws, name_a, name_b, chart_name);
            if (v_battery->parsed()) return cmd_verify_battery(opt, ws);
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
