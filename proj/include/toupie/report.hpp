#pragma once

#include <functional>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ambiguity.hpp"
#include "bar_oracle.hpp"
#include "io.hpp"
#include "lie_structure.hpp"

namespace toupie {

using Json = nlohmann::ordered_json;

// label -> exact rational string, in basis order.
using Coordinates = std::vector<std::pair<std::string, std::string>>;

struct InputBlock {
    std::vector<int> branches;
    std::vector<std::vector<int>> monomial_relations;  // {branch (1-based), start, length}
    std::vector<Coordinates> linear_relations;         // branch (1-based) -> coefficient
    bool operator==(const InputBlock&) const = default;
};

struct InvariantsBlock {
    int a = 0, l = 0, m = 0, n = 0, r = 0, D = 0, d = 0;
    int rank = 0, vertices = 0, arrows = 0;
    int max_ambiguity_degree = 0;
    bool operator==(const InvariantsBlock&) const = default;
};

struct ClassBlock {
    std::string label;
    Coordinates cochain;
    bool operator==(const ClassBlock&) const = default;
};

struct DegreeBlock {
    int degree = 0;
    std::size_t dimension = 0;
    std::vector<ClassBlock> classes;
    bool operator==(const DegreeBlock&) const = default;
};

struct ProductBlock {
    std::string left, right;
    int degree = 0;  // degree of the result
    Coordinates result;
    std::string pretty;
    bool operator==(const ProductBlock&) const = default;
};

struct SlBlock {
    std::string label;
    int row = 0, col = 0;
    bool diagonal = false;
    bool operator==(const SlBlock&) const = default;
};

struct LieBlock {
    bool abelian = false;
    std::string reason;
    std::string note;
    std::vector<std::string> center, radical, center_part, s1, l2;
    std::vector<SlBlock> sl_part;
    std::string decomposition;
    std::optional<bool> semisimple;
    bool operator==(const LieBlock&) const = default;
};

struct ComponentBlock {
    std::string generator;
    std::vector<std::string> classes;
    bool indecomposable = true, irreducible = false, invariant = true, orbit_spans = true;
    bool operator==(const ComponentBlock&) const = default;
};

struct ModuleBlock {
    int degree = 0;
    std::vector<ComponentBlock> components;
    std::size_t standard_multiplicity = 0, trivial_multiplicity = 0;
    std::vector<std::string> notes;
    bool operator==(const ModuleBlock&) const = default;
};

struct OracleDegree {
    int degree = 0;
    std::size_t minimal = 0;
    std::optional<std::size_t> bar;
    bool agree = false;
    bool operator==(const OracleDegree&) const = default;
};

struct ComparisonBlock {
    int degree = 0;
    bool identity = false;
    bool operator==(const ComparisonBlock&) const = default;
};

struct VanishingBlock {
    std::string operation;
    int left_degree = 0, right_degree = 0;
    std::size_t pairs = 0;
    bool certified = false;
    std::string counterexample;
    bool operator==(const VanishingBlock&) const = default;
};

struct OracleBlock {
    int max_degree = 0;
    std::size_t budget = 0;
    std::vector<OracleDegree> dimensions;
    // bracket_agreement[i][j] is '1' when the bar bracket of HH^1 basis
    // classes i, j agrees with the substitution bracket, '0' otherwise.
    std::vector<std::string> bracket_agreement;
    std::vector<ComparisonBlock> comparison;
    std::vector<VanishingBlock> vanishing;
    std::optional<int> budget_exceeded_degree;
    std::string budget_message;
    bool all_agree = true;
    bool operator==(const OracleBlock&) const = default;
};

struct ReportDocument {
    InputBlock input;
    InvariantsBlock invariants;
    int max_degree = 0;
    int vanishing_from = 0;  // HH^i = 0 for every i >= vanishing_from
    std::vector<DegreeBlock> degrees;
    std::vector<ProductBlock> brackets;  // nonzero [b_i, b_j] on HH^1, i < j
    std::vector<ProductBlock> actions;   // nonzero [x, v], x in HH^1, v in HH^n, n >= 2
    LieBlock lie;
    std::vector<ModuleBlock> modules;
    std::optional<OracleBlock> oracle;
    bool operator==(const ReportDocument&) const = default;
};

struct ReportOptions {
    std::optional<int> max_degree;
    bool oracle = false;
    int oracle_degree = 4;
    std::size_t budget = kDefaultBarBudget;
};

// ---------------------------------------------------------------------------
// JSON

inline void to_json(Json& j, const Coordinates& c) {
    j = Json::object();
    for (const auto& [k, v] : c) j[k] = v;
}
inline void from_json(const Json& j, Coordinates& c) {
    c.clear();
    for (const auto& [k, v] : j.items()) c.emplace_back(k, v.get<std::string>());
}

inline void to_json(Json& j, const InputBlock& b) {
    j = Json{{"branches", b.branches}, {"monomial_relations", b.monomial_relations}};
    Json lin = Json::array();
    for (const auto& c : b.linear_relations) {
        Json x;
        to_json(x, c);
        lin.push_back(x);
    }
    j["linear_relations"] = lin;
}
inline void from_json(const Json& j, InputBlock& b) {
    j.at("branches").get_to(b.branches);
    j.at("monomial_relations").get_to(b.monomial_relations);
    b.linear_relations.clear();
    for (const auto& x : j.at("linear_relations")) {
        Coordinates c;
        from_json(x, c);
        b.linear_relations.push_back(c);
    }
}

inline void to_json(Json& j, const InvariantsBlock& v) {
    j = Json{{"a", v.a},       {"l", v.l},       {"m", v.m},
             {"n", v.n},       {"r", v.r},       {"D", v.D},
             {"d", v.d},       {"rank", v.rank}, {"vertices", v.vertices},
             {"arrows", v.arrows}, {"max_ambiguity_degree", v.max_ambiguity_degree}};
}
inline void from_json(const Json& j, InvariantsBlock& v) {
    j.at("a").get_to(v.a);
    j.at("l").get_to(v.l);
    j.at("m").get_to(v.m);
    j.at("n").get_to(v.n);
    j.at("r").get_to(v.r);
    j.at("D").get_to(v.D);
    j.at("d").get_to(v.d);
    j.at("rank").get_to(v.rank);
    j.at("vertices").get_to(v.vertices);
    j.at("arrows").get_to(v.arrows);
    j.at("max_ambiguity_degree").get_to(v.max_ambiguity_degree);
}

inline void to_json(Json& j, const ClassBlock& c) {
    j = Json{{"label", c.label}};
    to_json(j["cochain"], c.cochain);
}
inline void from_json(const Json& j, ClassBlock& c) {
    j.at("label").get_to(c.label);
    from_json(j.at("cochain"), c.cochain);
}

inline void to_json(Json& j, const DegreeBlock& d) {
    j = Json{{"degree", d.degree}, {"dimension", d.dimension}, {"classes", d.classes}};
}
inline void from_json(const Json& j, DegreeBlock& d) {
    j.at("degree").get_to(d.degree);
    j.at("dimension").get_to(d.dimension);
    j.at("classes").get_to(d.classes);
}

inline void to_json(Json& j, const ProductBlock& p) {
    j = Json{{"left", p.left}, {"right", p.right}, {"degree", p.degree}};
    to_json(j["result"], p.result);
    j["pretty"] = p.pretty;
}
inline void from_json(const Json& j, ProductBlock& p) {
    j.at("left").get_to(p.left);
    j.at("right").get_to(p.right);
    j.at("degree").get_to(p.degree);
    from_json(j.at("result"), p.result);
    j.at("pretty").get_to(p.pretty);
}

inline void to_json(Json& j, const SlBlock& s) {
    j = Json{{"label", s.label}, {"row", s.row}, {"col", s.col}, {"diagonal", s.diagonal}};
}
inline void from_json(const Json& j, SlBlock& s) {
    j.at("label").get_to(s.label);
    j.at("row").get_to(s.row);
    j.at("col").get_to(s.col);
    j.at("diagonal").get_to(s.diagonal);
}

inline void to_json(Json& j, const LieBlock& l) {
    j = Json{{"abelian", l.abelian},         {"reason", l.reason},   {"note", l.note},
             {"center", l.center},           {"radical", l.radical}, {"center_part", l.center_part},
             {"sl_part", l.sl_part},         {"s1", l.s1},           {"l2", l.l2},
             {"decomposition", l.decomposition}};
    j["semisimple"] = l.semisimple ? Json(*l.semisimple) : Json(nullptr);
}
inline void from_json(const Json& j, LieBlock& l) {
    j.at("abelian").get_to(l.abelian);
    j.at("reason").get_to(l.reason);
    j.at("note").get_to(l.note);
    j.at("center").get_to(l.center);
    j.at("radical").get_to(l.radical);
    j.at("center_part").get_to(l.center_part);
    j.at("sl_part").get_to(l.sl_part);
    j.at("s1").get_to(l.s1);
    j.at("l2").get_to(l.l2);
    j.at("decomposition").get_to(l.decomposition);
    const auto& s = j.at("semisimple");
    l.semisimple = s.is_null() ? std::nullopt : std::optional<bool>(s.get<bool>());
}

inline void to_json(Json& j, const ComponentBlock& c) {
    j = Json{{"generator", c.generator},     {"classes", c.classes},     {"indecomposable", c.indecomposable},
             {"irreducible", c.irreducible}, {"invariant", c.invariant}, {"orbit_spans", c.orbit_spans}};
}
inline void from_json(const Json& j, ComponentBlock& c) {
    j.at("generator").get_to(c.generator);
    j.at("classes").get_to(c.classes);
    j.at("indecomposable").get_to(c.indecomposable);
    j.at("irreducible").get_to(c.irreducible);
    j.at("invariant").get_to(c.invariant);
    j.at("orbit_spans").get_to(c.orbit_spans);
}

inline void to_json(Json& j, const ModuleBlock& m) {
    j = Json{{"degree", m.degree},
             {"components", m.components},
             {"standard_multiplicity", m.standard_multiplicity},
             {"trivial_multiplicity", m.trivial_multiplicity},
             {"notes", m.notes}};
}
inline void from_json(const Json& j, ModuleBlock& m) {
    j.at("degree").get_to(m.degree);
    j.at("components").get_to(m.components);
    j.at("standard_multiplicity").get_to(m.standard_multiplicity);
    j.at("trivial_multiplicity").get_to(m.trivial_multiplicity);
    j.at("notes").get_to(m.notes);
}

inline void to_json(Json& j, const OracleDegree& d) {
    j = Json{{"degree", d.degree}, {"minimal", d.minimal}};
    j["bar"] = d.bar ? Json(*d.bar) : Json(nullptr);
    j["agree"] = d.agree;
}
inline void from_json(const Json& j, OracleDegree& d) {
    j.at("degree").get_to(d.degree);
    j.at("minimal").get_to(d.minimal);
    const auto& b = j.at("bar");
    d.bar = b.is_null() ? std::nullopt : std::optional<std::size_t>(b.get<std::size_t>());
    j.at("agree").get_to(d.agree);
}

inline void to_json(Json& j, const ComparisonBlock& c) { j = Json{{"degree", c.degree}, {"identity", c.identity}}; }
inline void from_json(const Json& j, ComparisonBlock& c) {
    j.at("degree").get_to(c.degree);
    j.at("identity").get_to(c.identity);
}

inline void to_json(Json& j, const VanishingBlock& v) {
    j = Json{{"operation", v.operation}, {"left_degree", v.left_degree}, {"right_degree", v.right_degree},
             {"pairs", v.pairs},         {"certified", v.certified},     {"counterexample", v.counterexample}};
}
inline void from_json(const Json& j, VanishingBlock& v) {
    j.at("operation").get_to(v.operation);
    j.at("left_degree").get_to(v.left_degree);
    j.at("right_degree").get_to(v.right_degree);
    j.at("pairs").get_to(v.pairs);
    j.at("certified").get_to(v.certified);
    j.at("counterexample").get_to(v.counterexample);
}

inline void to_json(Json& j, const OracleBlock& o) {
    j = Json{{"max_degree", o.max_degree},
             {"budget", o.budget},
             {"dimensions", o.dimensions},
             {"bracket_agreement", o.bracket_agreement},
             {"comparison", o.comparison},
             {"vanishing", o.vanishing}};
    j["budget_exceeded_degree"] = o.budget_exceeded_degree ? Json(*o.budget_exceeded_degree) : Json(nullptr);
    j["budget_message"] = o.budget_message;
    j["all_agree"] = o.all_agree;
}
inline void from_json(const Json& j, OracleBlock& o) {
    j.at("max_degree").get_to(o.max_degree);
    j.at("budget").get_to(o.budget);
    j.at("dimensions").get_to(o.dimensions);
    j.at("bracket_agreement").get_to(o.bracket_agreement);
    j.at("comparison").get_to(o.comparison);
    j.at("vanishing").get_to(o.vanishing);
    const auto& b = j.at("budget_exceeded_degree");
    o.budget_exceeded_degree = b.is_null() ? std::nullopt : std::optional<int>(b.get<int>());
    j.at("budget_message").get_to(o.budget_message);
    j.at("all_agree").get_to(o.all_agree);
}

inline void to_json(Json& j, const ReportDocument& r) {
    j = Json::object();
    to_json(j["input"], r.input);
    to_json(j["invariants"], r.invariants);
    j["max_degree"] = r.max_degree;
    j["vanishing_from"] = r.vanishing_from;
    j["degrees"] = r.degrees;
    j["brackets"] = r.brackets;
    j["actions"] = r.actions;
    to_json(j["lie"], r.lie);
    j["modules"] = r.modules;
    if (r.oracle) to_json(j["oracle"], *r.oracle);
}
inline void from_json(const Json& j, ReportDocument& r) {
    from_json(j.at("input"), r.input);
    from_json(j.at("invariants"), r.invariants);
    j.at("max_degree").get_to(r.max_degree);
    j.at("vanishing_from").get_to(r.vanishing_from);
    j.at("degrees").get_to(r.degrees);
    j.at("brackets").get_to(r.brackets);
    j.at("actions").get_to(r.actions);
    from_json(j.at("lie"), r.lie);
    j.at("modules").get_to(r.modules);
    if (j.contains("oracle")) {
        OracleBlock o;
        from_json(j.at("oracle"), o);
        r.oracle = o;
    } else {
        r.oracle.reset();
    }
}

inline std::string emit_json(const ReportDocument& r) { return Json(r).dump(2) + "\n"; }

inline ReportDocument parse_report(const std::string& text) {
    try {
        return Json::parse(text).get<ReportDocument>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("ParseError", std::string("report JSON: ") + e.what());
    }
}

// Input document described by a report, so the algebra can be rebuilt from it.
inline InputDocument input_of(const InputBlock& b) {
    InputDocument doc;
    doc.spec.branch_lengths = b.branches;
    for (const auto& m : b.monomial_relations) {
        if (m.size() != 3) throw ValidationError("ParseError", "monomial relation needs three entries");
        doc.spec.monomial_relations.push_back({m[0] - 1, m[1], m[2]});
    }
    for (const auto& c : b.linear_relations) {
        LinearRelation r;
        for (const auto& [k, v] : c) r.coefficients[std::stoi(k) - 1] = parse_rational(v);
        doc.spec.linear_relations.push_back(r);
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Building

inline Coordinates coordinates_of(const SparseVector& v, const std::function<std::string(std::size_t)>& name) {
    Coordinates out;
    for (const auto& [i, c] : v) out.emplace_back(name(i), c.get_str());
    return out;
}

inline InputBlock input_block(const QuiverSpec& s) {
    InputBlock b;
    b.branches = s.branch_lengths;
    for (const auto& m : s.monomial_relations) b.monomial_relations.push_back({m.branch + 1, m.start, m.length});
    for (const auto& r : s.linear_relations) {
        Coordinates c;
        for (const auto& [k, v] : r.coefficients) c.emplace_back(std::to_string(k + 1), v.get_str());
        b.linear_relations.push_back(c);
    }
    return b;
}

inline LieBlock lie_block(const LieStructure& lie, const CohomologyBasis& b1) {
    LieBlock out;
    auto [ab, reason] = lie.is_abelian();
    out.abelian = ab;
    out.reason = reason;
    if (ab) {
        out.note = kEnvelopingNote;
        for (const auto& c : b1.classes()) out.center.push_back(c.label);
        out.radical = out.center;
        return out;
    }
    LieReport r = lie.levi_decomposition();
    out.center = r.center_basis;
    out.radical = r.radical_basis;
    out.center_part = r.center_part;
    for (const auto& s : r.sl_part) out.sl_part.push_back({s.label, s.row, s.col, s.diagonal});
    out.s1 = r.s1;
    out.l2 = r.l2;
    out.decomposition = r.decomposition;
    out.semisimple = r.semisimple;
    return out;
}

inline OracleBlock oracle_block(const Cohomology& co, const Gerstenhaber& g, int max_degree, std::size_t budget) {
    const auto& alg = co.algebra();
    OracleBlock out;
    out.max_degree = max_degree;
    out.budget = budget;
    verify_finite_algebra(alg);
    BarComplex bar(alg, budget);
    ComparisonMorphisms cmp(co.complex(), bar, std::max(max_degree, 1));
    auto exceeded = [&](const BudgetExceeded& e) {
        out.budget_exceeded_degree = e.degree();
        out.budget_message = e.what();
    };
    try {
        for (int n = 0; n <= max_degree; ++n) {
            OracleDegree d{n, co.dimension(n), bar.dimension(n), false};
            d.agree = *d.bar == d.minimal;
            if (!d.agree) out.all_agree = false;
            out.dimensions.push_back(d);
        }
        if (max_degree >= 2) {
            const auto& b1 = co.basis(1);
            for (std::size_t i = 0; i < b1.size(); ++i) {
                std::string row;
                for (std::size_t j = 0; j < b1.size(); ++j) {
                    bool ok = oracle_bracket_deg1(co, cmp, bar, b1.unit(i), b1.unit(j)) ==
                              g.bracket_deg1(b1.unit(i), b1.unit(j));
                    row += ok ? '1' : '0';
                    if (!ok) out.all_agree = false;
                }
                out.bracket_agreement.push_back(row);
            }
        }
        for (int n = 0; n <= std::min(max_degree, 3); ++n) {
            RationalMatrix m = cmp.phi_star(n).compose(cmp.eta_star(n));
            bool id = true;
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.column(j) != SparseVector{{j, Rational(1)}}) id = false;
            out.comparison.push_back({n, id});
            if (!id) out.all_agree = false;
        }
        // Cups of degrees >= 1 and brackets of degrees > 1 whose targets fit in
        // one degree above the oracle cap.
        for (const std::string op : {"cup", "bracket"}) {
            int lo = op == "cup" ? 1 : 2;
            for (int m = lo; m <= max_degree; ++m)
                for (int n = m; n <= max_degree; ++n) {
                    int target = op == "cup" ? m + n : m + n - 1;
                    if (target > max_degree + 1) continue;
                    if (co.dimension(m) == 0 || co.dimension(n) == 0) continue;
                    auto v = oracle_vanishing_check(co, cmp, bar, op, m, n);
                    out.vanishing.push_back({v.operation, v.left_degree, v.right_degree, v.pairs, v.certified,
                                             v.counterexample});
                    if (!v.certified) out.all_agree = false;
                }
        }
    } catch (const BudgetExceeded& e) {
        exceeded(e);
    }
    return out;
}

inline ReportDocument build_report(const InputDocument& doc, const ReportOptions& opt = {}) {
    ToupieAlgebra alg = ToupieAlgebra::build(doc.spec);
    Cohomology co(alg);
    Gerstenhaber g(co);
    LieStructure lie(g);
    ReportDocument r;
    r.input = input_block(doc.spec);
    const auto& inv = alg.invariants();
    int amb = max_ambiguity_degree(alg);
    r.invariants = {inv.a, inv.l, inv.m, inv.n, inv.r, inv.D, inv.d, inv.rank, inv.num_vertices, inv.num_arrows, amb};
    r.vanishing_from = amb + 1;
    int N = opt.max_degree.value_or(doc.options.max_degree.value_or(amb + 1));
    if (N < 0) throw ValidationError("InvalidDegree", "max degree must be >= 0");
    r.max_degree = N;

    for (int n = 0; n <= N; ++n) {
        const auto& basis = co.basis(n);
        const auto& space = co.complex().space(n);
        DegreeBlock d{n, co.dimension(n), {}};
        if (d.dimension != basis.size())
            throw ConsistencyError("DimensionMismatch", "basis size differs from dimension in degree " +
                                                            std::to_string(n));
        for (const auto& c : basis.classes())
            d.classes.push_back({c.label, coordinates_of(c.cochain, [&](std::size_t i) { return space.label(i); })});
        r.degrees.push_back(std::move(d));
    }

    if (N >= 1) {
        const auto& b1 = co.basis(1);
        auto name1 = [&](std::size_t i) { return b1.at(i).label; };
        for (std::size_t i = 0; i < b1.size(); ++i)
            for (std::size_t j = i + 1; j < b1.size(); ++j) {
                CohomologyClass c = g.bracket_deg1(b1.unit(i), b1.unit(j));
                if (c.coordinates.empty()) continue;
                r.brackets.push_back({b1.at(i).label, b1.at(j).label, 1, coordinates_of(c.coordinates, name1),
                                      b1.pretty(c)});
            }
        for (int n = 2; n <= N; ++n) {
            const auto& bn = co.basis(n);
            auto name = [&](std::size_t i) { return bn.at(i).label; };
            for (std::size_t i = 0; i < b1.size(); ++i)
                for (std::size_t j = 0; j < bn.size(); ++j) {
                    CohomologyClass c = g.action(b1.unit(i), bn.unit(j));
                    if (c.coordinates.empty()) continue;
                    r.actions.push_back({b1.at(i).label, bn.at(j).label, n, coordinates_of(c.coordinates, name),
                                         bn.pretty(c)});
                }
        }
        r.lie = lie_block(lie, b1);
    }
    for (int n = 2; n <= N; ++n) {
        ModuleDecomposition m = lie.module_decomposition(n);
        ModuleBlock b{n, {}, m.standard_multiplicity, m.trivial_multiplicity, m.notes};
        for (const auto& c : m.components)
            b.components.push_back(
                {c.generator, c.class_basis, c.indecomposable, c.irreducible, c.invariant, c.orbit_spans});
        r.modules.push_back(std::move(b));
    }
    if (opt.oracle)
        r.oracle = oracle_block(co, g, opt.oracle_degree,
                                doc.options.oracle_budget && opt.budget == kDefaultBarBudget ? *doc.options.oracle_budget
                                                                                             : opt.budget);
    return r;
}

// ---------------------------------------------------------------------------
// Labels

// Class named by `label` in degrees 0..max_degree. Besides the printed labels,
// "||" may stand for "‖" and "a<b>‖<path>" names the class on the generator
// that spans all of branch b.
inline CohomologyClass resolve_label(const Cohomology& co, std::string label, int max_degree) {
    for (std::size_t p; (p = label.find("||")) != std::string::npos;) label.replace(p, 2, "‖");
    for (int n = 0; n <= max_degree; ++n)
        if (auto i = co.basis(n).find(label)) return co.basis(n).unit(*i);
    static const std::regex alias(R"(^a([0-9]+)(‖.+)$)");
    std::smatch m;
    if (std::regex_match(label, m, alias)) {
        const auto& alg = co.algebra();
        int b = std::stoi(m[1]) - 1;
        for (int n = 2; n <= max_degree; ++n) {
            const auto& bn = co.basis(n);
            const auto& gens = co.complex().resolution().generators(n);
            for (std::size_t i = 0; i < bn.size(); ++i) {
                const auto& gen = gens.at(bn.at(i).generator);
                if (gen.kind != GeneratorKind::Chain || gen.chain.branch != b || gen.chain.start != 0 ||
                    gen.chain.length != alg.branch_length(b))
                    continue;
                const std::string& l = bn.at(i).label;
                if (const std::string suffix = m[2]; l.size() >= suffix.size() && l.ends_with(suffix))
                    return bn.unit(i);
            }
        }
    }
    throw ValidationError("UnknownLabel", "no class labeled '" + label + "' in degrees 0.." +
                                              std::to_string(max_degree));
}

// Gerstenhaber bracket of two basis classes of any degrees.
inline CohomologyClass bracket_classes(const Gerstenhaber& g, const CohomologyClass& x, const CohomologyClass& y) {
    if (x.degree == 0 || y.degree == 0) return {std::max(x.degree + y.degree - 1, 0), {}};
    if (x.degree == 1 && y.degree == 1) return g.bracket_deg1(x, y);
    if (x.degree == 1) return g.action(x, y);
    if (y.degree == 1) {
        CohomologyClass c = g.action(y, x);
        for (auto& [k, v] : c.coordinates) v = -v;
        return c;
    }
    return g.bracket_high(x, y);
}

// ---------------------------------------------------------------------------
// Text

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

inline std::string render_oracle(const OracleBlock& o) {
    std::ostringstream out;
    out << "oracle (bar complex, degrees <= " << o.max_degree << ", budget " << o.budget << ")\n";
    for (const auto& d : o.dimensions) {
        out << "  HH^" << d.degree << "  minimal " << d.minimal << "  bar ";
        out << (d.bar ? std::to_string(*d.bar) : std::string("-")) << "  " << (d.agree ? "agree" : "DISAGREE")
            << "\n";
    }
    if (!o.bracket_agreement.empty()) {
        std::size_t ok = 0, total = 0;
        for (const auto& row : o.bracket_agreement)
            for (char c : row) {
                ++total;
                ok += c == '1';
            }
        out << "  degree-1 brackets: " << ok << "/" << total << " pairs agree\n";
        for (const auto& row : o.bracket_agreement) out << "    " << row << "\n";
    }
    for (const auto& c : o.comparison)
        out << "  phi*eta* in degree " << c.degree << ": " << (c.identity ? "identity" : "NOT identity") << "\n";
    for (const auto& v : o.vanishing) {
        out << "  " << v.operation << " HH^" << v.left_degree << " x HH^" << v.right_degree << ": " << v.pairs
            << " pairs " << (v.certified ? "certified coboundaries" : "NOT coboundaries");
        if (!v.counterexample.empty()) out << " (first: " << v.counterexample << ")";
        out << "\n";
    }
    if (o.budget_exceeded_degree)
        out << "  BudgetExceeded at degree " << *o.budget_exceeded_degree << ": " << o.budget_message
            << " (results above are partial)\n";
    out << "  " << (o.all_agree ? "all computed checks agree" : "DISAGREEMENT") << "\n";
    return out.str();
}

inline std::string render_text(const ReportDocument& r) {
    std::ostringstream out;
    const auto& v = r.invariants;
    out << "branches: " << join([&] {
        std::vector<std::string> s;
        for (int b : r.input.branches) s.push_back(std::to_string(b));
        return s;
    }()) << "\n";
    out << "invariants: a=" << v.a << " l=" << v.l << " m=" << v.m << " n=" << v.n << " D=" << v.D << " r=" << v.r
        << " d=" << v.d << " rank=" << v.rank << " vertices=" << v.vertices << " arrows=" << v.arrows << "\n";
    out << "max ambiguity degree: " << v.max_ambiguity_degree << "\n";
    std::vector<std::string> dims;
    for (const auto& d : r.degrees) dims.push_back(std::to_string(d.dimension));
    out << "dims HH^0..HH^" << r.max_degree << ": " << join(dims, ",") << "\n";
    for (const auto& d : r.degrees) {
        std::vector<std::string> labels;
        for (const auto& c : d.classes) labels.push_back(c.label);
        out << "HH^" << d.degree << " (dim " << d.dimension << "): " << (labels.empty() ? "0" : join(labels)) << "\n";
    }
    if (r.max_degree >= r.vanishing_from - 1)
        out << "HH^i = 0 for all i > " << r.vanishing_from - 1 << "\n";
    else
        out << "degrees above " << r.max_degree << " not computed (HH^i = 0 for all i > " << r.vanishing_from - 1
            << ")\n";
    if (!r.brackets.empty()) {
        out << "brackets on HH^1 (nonzero, i < j):\n";
        for (const auto& b : r.brackets) out << "  [" << b.left << ", " << b.right << "] = " << b.pretty << "\n";
    }
    if (!r.actions.empty()) {
        out << "action of HH^1 (nonzero):\n";
        for (const auto& b : r.actions) out << "  [" << b.left << ", " << b.right << "] = " << b.pretty << "\n";
    }
    if (r.max_degree >= 1) {
        const auto& l = r.lie;
        out << "Lie structure of HH^1:\n";
        if (l.abelian) {
            out << "  abelian (" << l.reason << "). " << l.note << "\n";
        } else {
            out << "  center: " << join(l.center) << "\n";
            out << "  radical: " << join(l.radical) << "\n";
            out << "  decomposition: " << l.decomposition << "\n";
            out << "  semisimple: " << (l.semisimple && *l.semisimple ? "yes" : "no") << "\n";
        }
    }
    for (const auto& m : r.modules) {
        out << "HH^" << m.degree << " as HH^1-module: standard " << m.standard_multiplicity << ", trivial "
            << m.trivial_multiplicity << "\n";
        for (const auto& c : m.components)
            out << "  " << c.generator << ": " << join(c.classes) << (c.irreducible ? " (irreducible)" : "")
                << (c.invariant ? "" : " (not invariant)") << "\n";
        for (const auto& n : m.notes) out << "  note: " << n << "\n";
    }
    if (r.oracle) out << render_oracle(*r.oracle);
    return out.str();
}

}  // namespace toupie
