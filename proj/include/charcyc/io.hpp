/**
 * File formats and the named-object workspace behind the CLI.
 *
 * One JSON document per object; the object's name is the file stem.
 *   complex   {"vertices":[...], "simplices":[[...], ...]}   (maximal lists suffice)
 *   function  {"complex":"K", "values":[{"simplex":[...], "value":"p/q"}, ...]}
 *   action    {"complex":"K", "generators":[{"0":1, "1":0}, ...]}
 *   chart     {"complex":"K", "dim":2, "coords":{"0":["p/q", ...], ...},
 *              "matrices":{"0":[[...], ...], ...}}           (matrices optional)
 *
 * Rationals are rendered as reduced "p/q" with positive q (plain "p" when
 * q = 1) and never as decimals.  Cycle tables round-trip through their own
 * schema keyed by chamber sign strings.
 */
#pragma once

#include "charcyc/charts.hpp"
#include "charcyc/constructible.hpp"
#include "charcyc/errors.hpp"
#include "charcyc/orbifold.hpp"
#include "charcyc/rational.hpp"
#include "charcyc/simplicial_complex.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace charcyc {

using Json = nlohmann::json;

inline Rational rational_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_string()) return rational_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw LoadError(where + ": " + e.what());
    }
    throw LoadError(where + ": expected a rational as \"p/q\" or an integer");
}

inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Simplex simplex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw LoadError(where + ": expected a nonempty vertex array");
    std::vector<Vertex> verts;
    for (const Json& v : j) {
        if (!v.is_number_integer()) throw LoadError(where + ": vertex ids must be integers");
        verts.push_back(v.get<Vertex>());
    }
    try {
        return make_simplex(std::move(verts));
    } catch (const InvalidComplex& e) {
        throw LoadError(where + ": " + e.what());
    }
}

inline Json simplex_to_json(const Simplex& s) { return Json(s); }

// ---------------------------------------------------------------------------
// complexes

inline ComplexPtr complex_from_json(const Json& j, const std::string& where) {
    if (!j.contains("vertices") || !j.contains("simplices"))
        throw LoadError(where + ": complex needs \"vertices\" and \"simplices\"");
    std::vector<Simplex> maximal;
    std::set<Vertex> declared;
    for (const Json& v : j.at("vertices")) {
        if (!v.is_number_integer()) throw LoadError(where + ": vertex ids must be integers");
        declared.insert(v.get<Vertex>());
        maximal.push_back(Simplex{v.get<Vertex>()});
    }
    for (const Json& s : j.at("simplices")) {
        Simplex simplex = simplex_from_json(s, where);
        for (Vertex v : simplex)
            if (!declared.count(v))
                throw LoadError(where + ": simplex " + simplex_to_string(simplex) +
                                " uses undeclared vertex " + std::to_string(v));
        maximal.push_back(std::move(simplex));
    }
    if (maximal.empty()) throw LoadError(where + ": complex is empty");
    return make_complex(maximal);
}

inline Json complex_to_json(const SimplicialComplex& complex) {
    Json j;
    j["vertices"] = complex.vertices();
    Json simplices = Json::array();
    for (const Simplex& s : complex.simplices())
        if (complex.cofaces(s).size() == 1) simplices.push_back(simplex_to_json(s));
    j["simplices"] = simplices;
    return j;
}

// ---------------------------------------------------------------------------
// functions

inline ConstructibleFunction function_from_json(const Json& j, const ComplexPtr& complex,
                                                const std::string& where) {
    if (!j.contains("values")) throw LoadError(where + ": function needs \"values\"");
    std::map<Simplex, Rational> values;
    for (const Json& entry : j.at("values")) {
        Simplex s = simplex_from_json(entry.at("simplex"), where);
        if (!complex->contains(s))
            throw LoadError(where + ": simplex " + simplex_to_string(s) + " not in the complex");
        values[s] += rational_from_json(entry.at("value"), where);
    }
    return ConstructibleFunction(complex, std::move(values));
}

inline Json function_to_json(const ConstructibleFunction& f, const std::string& complex_name) {
    Json j;
    j["complex"] = complex_name;
    Json values = Json::array();
    for (const auto& [s, v] : f.values()) {
        Json entry;
        entry["simplex"] = simplex_to_json(s);
        entry["value"] = rational_to_json(v);
        values.push_back(entry);
    }
    j["values"] = values;
    return j;
}

// ---------------------------------------------------------------------------
// actions

inline ActionPtr action_from_json(const Json& j, const ComplexPtr& complex,
                                  const std::string& where) {
    if (!j.contains("generators")) throw LoadError(where + ": action needs \"generators\"");
    std::vector<Permutation> generators;
    for (const Json& g : j.at("generators")) {
        if (!g.is_object()) throw LoadError(where + ": generator must map vertices to vertices");
        Permutation perm;
        for (const auto& [key, value] : g.items()) {
            Vertex from;
            try {
                from = std::stoi(key);
            } catch (const std::exception&) {
                throw LoadError(where + ": generator key \"" + key + "\" is not a vertex id");
            }
            if (!value.is_number_integer())
                throw LoadError(where + ": generator image must be an integer");
            perm.emplace(from, value.get<Vertex>());
        }
        generators.push_back(std::move(perm));
    }
    try {
        return make_action(complex, std::move(generators));
    } catch (const InvalidAction& e) {
        throw LoadError(where + ": " + e.what());
    }
}

inline Json action_to_json(const GroupAction& action, const std::string& complex_name) {
    Json j;
    j["complex"] = complex_name;
    Json generators = Json::array();
    for (const Permutation& g : action.generators()) {
        Json perm;
        for (const auto& [v, w] : g)
            if (v != w) perm[std::to_string(v)] = w;
        if (perm.is_null()) perm = Json::object();
        generators.push_back(perm);
    }
    j["generators"] = generators;
    return j;
}

// ---------------------------------------------------------------------------
// charts

struct LoadedChart {
    ChartPtr chart;
    std::map<int, Mat> generator_matrices;  // keyed by generator index of an action
};

inline Mat matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw LoadError(where + ": matrix must be an array of rows");
    Mat m;
    for (const Json& row : j) {
        Vec r;
        for (const Json& x : row) r.push_back(rational_from_json(x, where));
        m.push_back(std::move(r));
    }
    return m;
}

inline LoadedChart chart_from_json(const Json& j, const ComplexPtr& complex,
                                   const std::string& where) {
    if (!j.contains("dim") || !j.contains("coords"))
        throw LoadError(where + ": chart needs \"dim\" and \"coords\"");
    const int dim = j.at("dim").get<int>();
    std::map<Vertex, Vec> coords;
    for (const auto& [key, value] : j.at("coords").items()) {
        Vertex v;
        try {
            v = std::stoi(key);
        } catch (const std::exception&) {
            throw LoadError(where + ": coords key \"" + key + "\" is not a vertex id");
        }
        Vec p;
        for (const Json& x : value) p.push_back(rational_from_json(x, where));
        coords.emplace(v, std::move(p));
    }
    LoadedChart loaded;
    try {
        loaded.chart = make_chart(complex, dim, std::move(coords));
    } catch (const InvalidChart& e) {
        throw LoadError(where + ": " + e.what());
    }
    if (j.contains("matrices")) {
        for (const auto& [key, value] : j.at("matrices").items()) {
            int gi;
            try {
                gi = std::stoi(key);
            } catch (const std::exception&) {
                throw LoadError(where + ": matrices key \"" + key + "\" is not a generator index");
            }
            loaded.generator_matrices.emplace(gi, matrix_from_json(value, where));
        }
    }
    return loaded;
}

inline Json chart_to_json(const EmbeddedChart& chart, const std::string& complex_name,
                          const std::map<int, Mat>& matrices = {}) {
    Json j;
    j["complex"] = complex_name;
    j["dim"] = chart.ambient_dim();
    Json coords;
    for (const auto& [v, p] : chart.coords()) {
        Json point = Json::array();
        for (const Rational& x : p) point.push_back(rational_to_json(x));
        coords[std::to_string(v)] = point;
    }
    j["coords"] = coords;
    if (!matrices.empty()) {
        Json ms;
        for (const auto& [gi, m] : matrices) {
            Json rows = Json::array();
            for (const Vec& row : m) {
                Json r = Json::array();
                for (const Rational& x : row) r.push_back(rational_to_json(x));
                rows.push_back(r);
            }
            ms[std::to_string(gi)] = rows;
        }
        j["matrices"] = ms;
    }
    return j;
}

// ---------------------------------------------------------------------------
// cycle tables (the CLI's own interchange format for cc / cc-inverse)

inline Json table_to_json(const LagrangianCycleTable& table, const std::string& chart_name) {
    Json j;
    j["chart"] = chart_name;
    Json rows = Json::array();
    for (const auto& [s, mults] : table.rows()) {
        Json row;
        row["simplex"] = simplex_to_json(s);
        Json entries = Json::array();
        const auto& chambers = table.chart()->chambers(s);
        for (std::size_t i = 0; i < mults.size(); ++i) {
            if (mults[i] == 0) continue;
            Json entry;
            entry["signs"] = signs_to_string(chambers[i].signs);
            entry["value"] = rational_to_json(mults[i]);
            entries.push_back(entry);
        }
        row["entries"] = entries;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

inline LagrangianCycleTable table_from_json(const Json& j, const ChartPtr& chart,
                                            const std::string& where) {
    if (!j.contains("rows")) throw LoadError(where + ": table needs \"rows\"");
    std::map<Simplex, std::vector<Rational>> mult;
    for (const Json& row : j.at("rows")) {
        Simplex s = simplex_from_json(row.at("simplex"), where);
        if (!chart->complex()->contains(s))
            throw LoadError(where + ": simplex " + simplex_to_string(s) + " not in the chart");
        const auto& chambers = chart->chambers(s);
        std::vector<Rational> mults(chambers.size(), 0);
        for (const Json& entry : row.at("entries")) {
            const std::string text = entry.at("signs").get<std::string>();
            std::vector<signed char> signs;
            if (text != "()")
                for (char c : text) signs.push_back(c == '+' ? 1 : -1);
            const int idx = chart->chamber_index(s, signs);
            if (idx < 0)
                throw LoadError(where + ": no chamber " + text + " at " + simplex_to_string(s));
            mults[static_cast<std::size_t>(idx)] += rational_from_json(entry.at("value"), where);
        }
        mult.emplace(std::move(s), std::move(mults));
    }
    return LagrangianCycleTable(chart, std::move(mult));
}

// ---------------------------------------------------------------------------
// workspace

/// Named objects loaded from files; each passes its module invariants at
/// load time, and cross-references resolve against earlier loads.
class Workspace {
  public:
    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw LoadError(path + ": cannot open");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw LoadError(path + ": " + e.what());
        }
        const std::string name = stem(path);
        if (j.contains("simplices")) {
            complexes_[name] = complex_from_json(j, path);
        } else if (j.contains("values")) {
            functions_.emplace(name, function_from_json(j, complex_ref(j, path), path));
        } else if (j.contains("generators")) {
            actions_[name] = action_from_json(j, complex_ref(j, path), path);
        } else if (j.contains("coords")) {
            charts_[name] = chart_from_json(j, complex_ref(j, path), path);
        } else {
            throw LoadError(path + ": unrecognized object kind");
        }
    }

    const ComplexPtr& complex(const std::string& name) const {
        auto it = complexes_.find(name);
        if (it == complexes_.end()) throw LoadError("unknown complex \"" + name + "\"");
        return it->second;
    }
    const ConstructibleFunction& function(const std::string& name) const {
        auto it = functions_.find(name);
        if (it == functions_.end()) throw LoadError("unknown function \"" + name + "\"");
        return it->second;
    }
    const ActionPtr& action(const std::string& name) const {
        auto it = actions_.find(name);
        if (it == actions_.end()) throw LoadError("unknown action \"" + name + "\"");
        return it->second;
    }
    const LoadedChart& chart(const std::string& name) const {
        auto it = charts_.find(name);
        if (it == charts_.end()) throw LoadError("unknown chart \"" + name + "\"");
        return it->second;
    }

    /// Assembles the equivariant chart for a loaded chart/action pair.
    EquivariantChart equivariant(const std::string& chart_name,
                                 const std::string& action_name) const {
        const LoadedChart& loaded = chart(chart_name);
        const ActionPtr& act = action(action_name);
        std::vector<Mat> mats;
        for (std::size_t gi = 0; gi < act->generators().size(); ++gi) {
            auto it = loaded.generator_matrices.find(static_cast<int>(gi));
            if (it == loaded.generator_matrices.end())
                throw LoadError("chart \"" + chart_name + "\" has no matrix for generator " +
                                std::to_string(gi) + " of action \"" + action_name + "\"");
            mats.push_back(it->second);
        }
        return EquivariantChart(loaded.chart, act, std::move(mats));
    }

    /// Name lookup for a complex handle (used when writing outputs).
    std::string name_of_complex(const ComplexPtr& complex) const {
        for (const auto& [name, k] : complexes_)
            if (same_complex(k, complex)) return name;
        return "(anonymous)";
    }

    const std::map<std::string, ComplexPtr>& complexes() const { return complexes_; }
    const std::map<std::string, ConstructibleFunction>& functions() const { return functions_; }
    const std::map<std::string, ActionPtr>& actions() const { return actions_; }
    const std::map<std::string, LoadedChart>& charts() const { return charts_; }

    static std::string stem(const std::string& path) {
        const std::size_t slash = path.find_last_of("/\\");
        std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
        const std::size_t dot = base.find('.');
        return (dot == std::string::npos) ? base : base.substr(0, dot);
    }

  private:
    ComplexPtr complex_ref(const Json& j, const std::string& path) const {
        if (!j.contains("complex") || !j.at("complex").is_string())
            throw LoadError(path + ": missing \"complex\" reference");
        return complex(j.at("complex").get<std::string>());
    }

    std::map<std::string, ComplexPtr> complexes_;
    std::map<std::string, ConstructibleFunction> functions_;
    std::map<std::string, ActionPtr> actions_;
    std::map<std::string, LoadedChart> charts_;
};

}  // namespace charcyc
