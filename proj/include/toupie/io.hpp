#pragma once

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace toupie {

class ParseError : public ValidationError {
public:
    ParseError(int line, const std::string& message)
        : ValidationError("ParseError", "line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct InputOptions {
    std::optional<int> max_degree;
    std::optional<std::size_t> oracle_budget;
    bool operator==(const InputOptions&) const = default;
};

// Text description of a toupie algebra. Branch numbers are 1-based, monomial
// relation starts are 0-based arrow offsets along the branch.
//
//   [branches]
//   1 1 2 8 2 2
//   [monomial_relations]
//   4 0 4            # branch start length
//   [linear_relations]
//   5:1 6:-1         # branch:coefficient, exact integers or p/q
//   [options]
//   max_degree = 5
//   oracle_budget = 200000
struct InputDocument {
    QuiverSpec spec;
    InputOptions options;
    // Source lines of every item, for diagnostics (0 when built in code).
    std::vector<int> branch_lines, monomial_lines, linear_lines;

    // Line of a "section:index" field address.
    int line_of(const std::string& field) const {
        auto colon = field.find(':');
        if (colon == std::string::npos) return 0;
        std::string section = field.substr(0, colon);
        std::size_t idx = std::stoul(field.substr(colon + 1)) - 1;
        const std::vector<int>* lines = section == "branches"             ? &branch_lines
                                        : section == "monomial_relations" ? &monomial_lines
                                        : section == "linear_relations"   ? &linear_lines
                                                                          : nullptr;
        return lines && idx < lines->size() ? (*lines)[idx] : 0;
    }
};

inline bool same_spec(const QuiverSpec& x, const QuiverSpec& y) {
    if (x.branch_lengths != y.branch_lengths) return false;
    if (x.monomial_relations.size() != y.monomial_relations.size()) return false;
    for (std::size_t i = 0; i < x.monomial_relations.size(); ++i) {
        const auto &p = x.monomial_relations[i], &q = y.monomial_relations[i];
        if (p.branch != q.branch || p.start != q.start || p.length != q.length) return false;
    }
    if (x.linear_relations.size() != y.linear_relations.size()) return false;
    for (std::size_t i = 0; i < x.linear_relations.size(); ++i)
        if (x.linear_relations[i].coefficients != y.linear_relations[i].coefficients) return false;
    return true;
}

// Exact rational "p" or "p/q"; decimals and exponents are rejected.
inline Rational parse_rational(const std::string& text, int line = 0) {
    static const std::regex re(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
    if (!std::regex_match(text, re))
        throw ParseError(line, "'" + text + "' is not an exact rational (use p or p/q, no decimals)");
    std::string t = text[0] == '+' ? text.substr(1) : text;
    auto slash = t.find('/');
    if (slash != std::string::npos && mpz_class(t.substr(slash + 1)) == 0)
        throw ParseError(line, "'" + text + "' has a zero denominator");
    Rational q(t);
    q.canonicalize();
    return q;
}

inline int parse_int(const std::string& text, int line, const std::string& what) {
    static const std::regex re(R"(^[+-]?[0-9]{1,9}$)");
    if (!std::regex_match(text, re)) throw ParseError(line, what + " '" + text + "' is not an integer");
    return std::stoi(text);
}

inline InputDocument parse_input(std::istream& in) {
    InputDocument doc;
    std::string raw, section;
    int line = 0;
    bool seen_branches = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw.substr(0, raw.find('#'));
        std::istringstream words(text);
        std::vector<std::string> tok;
        for (std::string w; words >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok.size() == 1 && tok[0].front() == '[' && tok[0].back() == ']') {
            section = tok[0].substr(1, tok[0].size() - 2);
            if (section != "branches" && section != "monomial_relations" && section != "linear_relations" &&
                section != "options")
                throw ParseError(line, "unknown section [" + section + "]");
            if (section == "branches") seen_branches = true;
            continue;
        }
        if (section.empty()) throw ParseError(line, "content before the first section header");
        if (section == "branches") {
            for (const auto& w : tok) {
                doc.spec.branch_lengths.push_back(parse_int(w, line, "branch length"));
                doc.branch_lines.push_back(line);
            }
        } else if (section == "monomial_relations") {
            if (tok.size() != 3) throw ParseError(line, "a monomial relation is 'branch start length'");
            MonomialRelation r;
            r.branch = parse_int(tok[0], line, "branch") - 1;
            r.start = parse_int(tok[1], line, "start");
            r.length = parse_int(tok[2], line, "length");
            doc.spec.monomial_relations.push_back(r);
            doc.monomial_lines.push_back(line);
        } else if (section == "linear_relations") {
            LinearRelation r;
            for (const auto& w : tok) {
                auto colon = w.find(':');
                if (colon == std::string::npos) throw ParseError(line, "expected branch:coefficient, got '" + w + "'");
                int b = parse_int(w.substr(0, colon), line, "branch") - 1;
                if (r.coefficients.count(b)) throw ParseError(line, "branch " + std::to_string(b + 1) + " repeated");
                r.coefficients[b] = parse_rational(w.substr(colon + 1), line);
            }
            doc.spec.linear_relations.push_back(std::move(r));
            doc.linear_lines.push_back(line);
        } else {
            std::string joined;
            for (const auto& w : tok) joined += w;
            auto eq = joined.find('=');
            if (eq == std::string::npos) throw ParseError(line, "options are 'key = value'");
            std::string key = joined.substr(0, eq), value = joined.substr(eq + 1);
            if (key == "max_degree") {
                doc.options.max_degree = parse_int(value, line, "max_degree");
            } else if (key == "oracle_budget") {
                int b = parse_int(value, line, "oracle_budget");
                if (b <= 0) throw ParseError(line, "oracle_budget must be positive");
                doc.options.oracle_budget = static_cast<std::size_t>(b);
            } else {
                throw ParseError(line, "unknown option '" + key + "'");
            }
        }
    }
    if (!seen_branches) throw ParseError(line, "missing [branches] section");
    return doc;
}

inline InputDocument parse_input_string(const std::string& text) {
    std::istringstream in(text);
    return parse_input(in);
}

inline InputDocument read_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot read " + path);
    return parse_input(in);
}

inline std::string emit_input(const InputDocument& doc) {
    std::ostringstream out;
    out << "[branches]\n";
    for (std::size_t i = 0; i < doc.spec.branch_lengths.size(); ++i)
        out << (i ? " " : "") << doc.spec.branch_lengths[i];
    out << "\n";
    if (!doc.spec.monomial_relations.empty()) {
        out << "[monomial_relations]\n";
        for (const auto& r : doc.spec.monomial_relations)
            out << r.branch + 1 << " " << r.start << " " << r.length << "\n";
    }
    if (!doc.spec.linear_relations.empty()) {
        out << "[linear_relations]\n";
        for (const auto& r : doc.spec.linear_relations) {
            bool first = true;
            for (const auto& [b, c] : r.coefficients) {
                out << (first ? "" : " ") << b + 1 << ":" << c.get_str();
                first = false;
            }
            out << "\n";
        }
    }
    if (doc.options.max_degree || doc.options.oracle_budget) {
        out << "[options]\n";
        if (doc.options.max_degree) out << "max_degree = " << *doc.options.max_degree << "\n";
        if (doc.options.oracle_budget) out << "oracle_budget = " << *doc.options.oracle_budget << "\n";
    }
    return out.str();
}

}  // namespace toupie
