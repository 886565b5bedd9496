#pragma once

#include <string>
#include <vector>

#include "cohomology.hpp"

namespace toupie {

// Replace the arrow `arrow_id` inside `p` by `h` and reduce in A.
inline Element substitute(const ToupieAlgebra& alg, const Path& p, int arrow_id, const Element& h) {
    const auto& arr = alg.arrow(arrow_id);
    Path ap = Path::run(arr.branch, arr.offset, 1);
    for (const auto& [id, c] : h) {
        const Path& q = alg.basis_path(id);
        if (alg.source(q) != alg.source(ap) || alg.target(q) != alg.target(ap))
            throw ValidationError("EndpointMismatch", "substituted value " + alg.path_name(q) +
                                                          " does not share the endpoints of " + alg.path_name(ap));
    }
    if (p.is_trivial() || p.branch != arr.branch || arr.offset < p.start || arr.offset >= p.end()) return {};
    Element pre = alg.reduce_run(p.branch, p.start, arr.offset - p.start);
    Element suf = alg.reduce_run(p.branch, arr.offset + 1, p.end() - arr.offset - 1);
    return alg.multiply(alg.multiply(pre, h), suf);
}

struct BracketTable {
    std::vector<std::string> labels;
    std::vector<std::vector<CohomologyClass>> entries;  // entries[i][j] = [b_i, b_j]
};

class Gerstenhaber {
public:
    explicit Gerstenhaber(const Cohomology& co) : co_(&co) {}

    const Cohomology& cohomology() const { return *co_; }

    // [f, g] on degree-1 cochains, before projection.
    SparseVector bracket_cochains(const SparseVector& f, const SparseVector& g) const {
        const auto& alg = co_->algebra();
        const auto& sp = co_->complex().space(1);
        SparseVector out;
        for (const auto& [i, fc] : f) {
            const auto& fe = sp.element(i);
            Element h{{fe.value, Rational(1)}};
            for (const auto& [j, gc] : g) {
                const auto& ge = sp.element(j);
                Element b{{ge.value, Rational(1)}};
                Rational c = fc * gc;
                add_scaled(out, c, sp.from_value(ge.generator, substitute(alg, alg.basis_path(ge.value),
                                                                          fe.generator, h)));
                add_scaled(out, -c, sp.from_value(fe.generator, substitute(alg, alg.basis_path(fe.value),
                                                                           ge.generator, b)));
            }
        }
        return out;
    }

    CohomologyClass bracket_deg1(const CohomologyClass& x, const CohomologyClass& y) const {
        check_degree(x, 1);
        check_degree(y, 1);
        const auto& b1 = co_->basis(1);
        SparseVector v = bracket_cochains(b1.representative(x), b1.representative(y));
        if (!co_->complex().differential(1).apply(v).empty())
            throw ConsistencyError("NotACocycle", "degree-1 bracket is not a cocycle");
        return b1.project(v);
    }

    // Table 1 closed forms on the labeled basis.
    CohomologyClass closed_form(std::size_t i, std::size_t j) const {
        const auto& b1 = co_->basis(1);
        const H1Label& l = *b1.at(i).h1;
        const H1Label& r = *b1.at(j).h1;
        if (rank_of(l.kind) > rank_of(r.kind)) {
            CohomologyClass c = closed_form(j, i);
            for (auto& [k, v] : c.coordinates) v = -v;
            return c;
        }
        using K = H1Label::Kind;
        SparseVector out;
        auto add = [&](H1Label lab, const Rational& c) {
            if (c == 0) return;
            if (lab.kind == K::X && lab.first == 1) return;  // x_1 := 0
            auto idx = b1.find(lab);
            if (!idx) throw ConsistencyError("TableMismatch", "closed form refers to missing class " + to_string(lab));
            add_entry(out, *idx, c);
        };
        auto delta = [](int a, int b) { return a == b ? Rational(1) : Rational(0); };
        if (l.kind == K::X && r.kind == K::W) {  // A
            int j0 = l.first, p = r.first, q = r.second;
            add({K::W, p, q}, delta(j0, q) - delta(j0, p));
            add({K::W, p, 1}, -delta(q, 1));
            add({K::W, 1, q}, delta(1, p));
        } else if (l.kind == K::X && r.kind == K::Z) {  // B
            int j0 = l.first, u = r.first, s = r.second;
            add({K::Z, u, s}, -delta(j0, u));
            add({K::Z, 1, s}, delta(u, 1));
        } else if (l.kind == K::Z && r.kind == K::T) {  // -C
            int s = l.second;
            if (co_->algebra().q_rho_component(s - 1) + 1 == r.first) add(l, Rational(-1));
        } else if (l.kind == K::W && r.kind == K::Z) {  // D
            add({K::Z, l.first, r.second}, -delta(l.second, r.first));
        } else if (l.kind == K::W && r.kind == K::W) {  // E
            int p = l.first, q = l.second, pp = r.first, qq = r.second;
            if (p == qq && q == pp) {
                add({K::X, pp, 0}, Rational(1));
                add({K::X, p, 0}, Rational(-1));
            } else {
                add({K::W, pp, q}, delta(p, qq));
                add({K::W, p, qq}, -delta(q, pp));
            }
        }
        return {1, out};
    }

    BracketTable bracket_table() const {
        const auto& b1 = co_->basis(1);
        BracketTable t;
        for (const auto& c : b1.classes()) t.labels.push_back(c.label);
        t.entries.assign(b1.size(), std::vector<CohomologyClass>(b1.size()));
        for (std::size_t i = 0; i < b1.size(); ++i)
            for (std::size_t j = 0; j < b1.size(); ++j) {
                CohomologyClass sub = bracket_deg1(b1.unit(i), b1.unit(j));
                CohomologyClass closed = closed_form(i, j);
                if (!(sub == closed))
                    throw ConsistencyError("TableMismatch", "[" + t.labels[i] + ", " + t.labels[j] + "]: formula " +
                                                                b1.pretty(closed) + " vs substitution " +
                                                                b1.pretty(sub));
                t.entries[i][j] = sub;
            }
        return t;
    }

    // Action of a degree-1 class on a degree-n class, n >= 2.
    CohomologyClass action(const CohomologyClass& x, const CohomologyClass& v) const {
        check_degree(x, 1);
        int n = v.degree;
        if (n < 2) throw ValidationError("DegreeMismatch", "the action is defined on degrees >= 2");
        const auto& alg = co_->algebra();
        const auto& b1 = co_->basis(1);
        const auto& bn = co_->basis(n);
        const auto& s1 = co_->complex().space(1);
        const auto& sn = co_->complex().space(n);
        const auto& gens = co_->complex().resolution().generators(n);
        SparseVector f = b1.representative(x);
        SparseVector g = bn.representative(v);
        SparseVector out;
        for (const auto& [i, fc] : f) {
            const auto& fe = s1.element(i);
            const auto& arr = alg.arrow(fe.generator);
            if (arr.offset != 0)
                throw ConsistencyError("UnsupportedCochain", "the action formula needs first-arrow cochains");
            Element b{{fe.value, Rational(1)}};
            for (const auto& [j, gc] : g) {
                const auto& ge = sn.element(j);
                const Path& c = alg.basis_path(ge.value);
                Rational k = fc * gc;
                if (c.branch == arr.branch && c.start == 0)
                    add_scaled(out, k, sn.from_value(ge.generator, substitute(alg, c, fe.generator, b)));
                if (first_arrow_branch(gens[ge.generator]) == arr.branch) add_entry(out, j, -k);
            }
        }
        if (!co_->complex().differential(n).apply(out).empty())
            throw ConsistencyError("NotACocycle", "degree-" + std::to_string(n) + " action is not a cocycle");
        return bn.project(out);
    }

    // Positive-degree cup products vanish in cohomology; degree 0 acts by its scalar.
    CohomologyClass cup(const CohomologyClass& x, const CohomologyClass& y) const {
        if (x.degree == 0) return scale(y, coefficient(x, 0));
        if (y.degree == 0) return scale(x, coefficient(y, 0));
        return {x.degree + y.degree, {}};
    }

    // Brackets of classes of degrees m, n > 1 vanish in HH^{m+n-1}.
    CohomologyClass bracket_high(const CohomologyClass& x, const CohomologyClass& y) const {
        if (x.degree < 2 || y.degree < 2)
            throw ValidationError("DegreeMismatch", "bracket_high needs degrees > 1");
        return {x.degree + y.degree - 1, {}};
    }

    // Branch whose first arrow starts the word W of a 0 -> w generator.
    int first_arrow_branch(const Generator& gen) const {
        if (gen.kind == GeneratorKind::LinearRelation) return co_->algebra().relations()[gen.index].pivot;
        return gen.chain.start == 0 ? gen.chain.branch : -1;
    }

private:
    static int rank_of(H1Label::Kind k) {
        using K = H1Label::Kind;
        switch (k) {
            case K::Y: return 0;
            case K::X: return 1;
            case K::W: return 2;
            case K::Z: return 3;
            case K::T: return 4;
        }
        return 5;
    }
    static void check_degree(const CohomologyClass& x, int d) {
        if (x.degree != d)
            throw ValidationError("DegreeMismatch", "expected degree " + std::to_string(d) + ", got " +
                                                        std::to_string(x.degree));
    }
    static Rational coefficient(const CohomologyClass& x, std::size_t i) {
        auto it = x.coordinates.find(i);
        return it == x.coordinates.end() ? Rational(0) : it->second;
    }
    static CohomologyClass scale(const CohomologyClass& x, const Rational& c) {
        return {x.degree, toupie::scaled(x.coordinates, c)};
    }

    const Cohomology* co_;
};

}  // namespace toupie
