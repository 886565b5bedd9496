#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toupie/report.hpp"

using namespace toupie;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kDisagree = 3 };

struct Common {
    std::string path;
    bool json = false;
    bool text = false;
    int max_degree = -1;
    std::string out;
};

void emit(const Common& c, const std::string& body) {
    if (c.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw Error("IoError", "cannot write " + c.out);
    f << body;
}

std::string located(const std::string& path, int line, const std::string& what) {
    return path + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what;
}

int cmd_validate(const Common& c) {
    InputDocument doc;
    try {
        doc = read_input_file(c.path);
    } catch (const ParseError& e) {
        std::cerr << c.path << ": " << e.what() << "\n";
        return kInvalid;
    }
    auto errors = validation_errors(doc.spec);
    if (errors.empty()) {
        try {
            ToupieAlgebra::build(doc.spec);
        } catch (const ValidationError& e) {
            errors.push_back(e);
        }
    }
    for (const auto& e : errors) {
        std::string where = e.field().empty() ? "" : " [" + e.field() + "]";
        std::cerr << located(c.path, doc.line_of(e.field()), e.what() + where) << "\n";
    }
    if (!errors.empty()) return kInvalid;
    std::cout << c.path << ": ok (" << doc.spec.branch_lengths.size() << " branches, "
              << doc.spec.monomial_relations.size() << " monomial and " << doc.spec.linear_relations.size()
              << " linear relations)\n";
    return kOk;
}

int cmd_report(const Common& c) {
    InputDocument doc = read_input_file(c.path);
    ReportOptions opt;
    if (c.max_degree >= 0) opt.max_degree = c.max_degree;
    ReportDocument r = build_report(doc, opt);
    emit(c, c.json ? emit_json(r) : render_text(r));
    return kOk;
}

int cmd_oracle(const Common& c, std::size_t budget) {
    InputDocument doc = read_input_file(c.path);
    ToupieAlgebra alg = ToupieAlgebra::build(doc.spec);
    Cohomology co(alg);
    Gerstenhaber g(co);
    if (budget == 0) budget = doc.options.oracle_budget.value_or(kDefaultBarBudget);
    int degree = c.max_degree >= 0 ? c.max_degree : 4;
    if (degree > 4) throw ValidationError("InvalidDegree", "the oracle is capped at degree 4");
    OracleBlock o = oracle_block(co, g, degree, budget);
    emit(c, c.json ? Json(o).dump(2) + "\n" : render_oracle(o));
    return o.all_agree ? kOk : kDisagree;
}

int cmd_bracket(const Common& c, const std::string& left, const std::string& right) {
    InputDocument doc = read_input_file(c.path);
    ToupieAlgebra alg = ToupieAlgebra::build(doc.spec);
    Cohomology co(alg);
    Gerstenhaber g(co);
    int top = c.max_degree >= 0 ? c.max_degree : max_ambiguity_degree(alg) + 1;
    CohomologyClass x = resolve_label(co, left, top);
    CohomologyClass y = resolve_label(co, right, top);
    CohomologyClass z = bracket_classes(g, x, y);
    const auto& basis = co.basis(z.degree);
    Coordinates coords = coordinates_of(z.coordinates, [&](std::size_t i) { return basis.at(i).label; });
    std::string pretty = basis.pretty(z);
    if (c.json) {
        Json j{{"left", left}, {"right", right}, {"degree", z.degree}};
        to_json(j["result"], coords);
        j["pretty"] = pretty;
        emit(c, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << pretty << "\n";
        out << "degree " << z.degree << ":";
        for (const auto& [l, v] : coords) out << " " << l << "=" << v;
        if (coords.empty()) out << " zero";
        out << "\n";
        emit(c, out.str());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology reports for toupie quiver algebras"};
    app.require_subcommand(1);
    Common common;
    std::size_t budget = 0;
    std::string left, right;

    auto add_common = [&](CLI::App* sub, bool degree) {
        sub->add_option("input", common.path, "algebra description file")->required();
        auto* j = sub->add_flag("--json", common.json, "JSON output");
        auto* t = sub->add_flag("--text", common.text, "human-readable output (default)");
        j->excludes(t);
        if (degree) sub->add_option("--max-degree", common.max_degree, "highest degree computed")->check(
                        CLI::NonNegativeNumber);
        sub->add_option("--out", common.out, "write output to this file");
    };
    auto* validate = app.add_subcommand("validate", "check an input file");
    validate->add_option("input", common.path, "algebra description file")->required();
    auto* report = app.add_subcommand("report", "full cohomology report");
    add_common(report, true);
    auto* oracle = app.add_subcommand("oracle", "cross-check against the bar complex");
    add_common(oracle, true);
    oracle->add_option("--budget", budget, "maximum bar tuples per degree")->check(CLI::PositiveNumber);
    auto* bracket = app.add_subcommand("bracket", "bracket of two labeled classes");
    add_common(bracket, true);
    bracket->add_option("left", left, "first class label")->required();
    bracket->add_option("right", right, "second class label")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*validate) return cmd_validate(common);
        if (*report) return cmd_report(common);
        if (*oracle) return cmd_oracle(common, budget);
        if (*bracket) return cmd_bracket(common, left, right);
    } catch (const ValidationError& e) {
        std::cerr << common.path << ": " << e.what() << "\n";
        return kInvalid;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return e.code() == "IoError" ? kInvalid : kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
