#pragma once

#include <string>
#include <vector>

#include "gerstenhaber.hpp"

namespace toupie {

struct SlImage {
    std::string label;
    int row = 0, col = 0;  // 1-based entry of E_{row,col}
    bool diagonal = false;  // x_j -> E_jj - E_11
};

struct LieReport {
    bool abelian = false;
    std::string reason;
    std::vector<std::string> center_basis;
    std::vector<std::string> radical_basis;
    std::vector<std::string> center_part;  // y_i
    std::vector<SlImage> sl_part;          // x_j and w_pq
    std::vector<std::string> s1;           // t_k
    std::vector<std::string> l2;           // z_us
    std::string decomposition;
    bool semisimple = false;
};

struct ModuleComponent {
    std::string generator;
    std::vector<std::string> class_basis;
    bool indecomposable = true;
    bool irreducible = false;
    bool invariant = true;     // the span is closed under the HH^1 action
    bool orbit_spans = true;   // the orbit of the first class spans the component
};

struct ModuleDecomposition {
    int degree = 0;
    std::vector<ModuleComponent> components;
    std::size_t standard_multiplicity = 0;
    std::size_t trivial_multiplicity = 0;
    std::vector<std::string> notes;
};

inline const std::string kEnvelopingNote =
    "HH^1(A) is abelian, so its universal enveloping algebra is a polynomial algebra.";

class LieStructure {
public:
    explicit LieStructure(const Gerstenhaber& g) : g_(&g) {}

    std::pair<bool, std::string> is_abelian() const {
        const auto& inv = alg().invariants();
        if (inv.a == 0) return {true, "a=0"};
        if (inv.D <= 1) return {true, "D≤1"};
        return {false, ""};
    }

    // Labels spanning the center; the adjoint kernel must equal span{y_i}.
    std::vector<std::string> center() const {
        const auto& b1 = basis1();
        if (alg().invariants().a == 0 || b1.size() == 0) return all_labels();
        std::size_t dim = b1.size();
        RationalMatrix ad(dim * dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                for (const auto& [k, c] : bracket(i, j).coordinates) ad.add(j * dim + k, i, c);
        auto kernel = ad.kernel();
        auto ys = of_kind(H1Label::Kind::Y);
        Echelon ky;
        std::size_t tag = 0;
        for (const auto& v : kernel) ky.insert(v, tag++);
        for (std::size_t i : ys)
            if (!ky.contains(SparseVector{{i, Rational(1)}}))
                throw ConsistencyError("CenterMismatch", b1.at(i).label + " is not central");
        if (kernel.size() != ys.size())
            throw ConsistencyError("CenterMismatch", "the adjoint kernel is larger than span{y_i}");
        return labels(ys);
    }

    // {t_k} u {z_us} u {y_i}, checked to be a solvable ideal with quotient sl_a.
    std::vector<std::string> radical() const {
        if (alg().invariants().a == 0) return all_labels();
        std::vector<std::size_t> idx = of_kind(H1Label::Kind::T);
        for (std::size_t i : of_kind(H1Label::Kind::Z)) idx.push_back(i);
        for (std::size_t i : of_kind(H1Label::Kind::Y)) idx.push_back(i);
        std::vector<SparseVector> span;
        for (std::size_t i : idx) span.push_back(SparseVector{{i, Rational(1)}});
        if (!is_ideal(span)) throw ConsistencyError("RadicalMismatch", "the radical candidate is not an ideal");
        if (!derived_series_terminates(span))
            throw ConsistencyError("RadicalMismatch", "the radical candidate is not solvable");
        check_sl();
        return labels(idx);
    }

    LieReport levi_decomposition() const {
        auto [ab, reason] = is_abelian();
        if (ab) throw Error("NotApplicable", "HH^1 is abelian (" + reason + ")");
        using K = H1Label::Kind;
        LieReport r;
        r.reason = reason;
        r.center_basis = center();
        r.radical_basis = radical();
        r.center_part = labels(of_kind(K::Y));
        for (std::size_t i : sl_indices()) {
            const H1Label& l = *basis1().at(i).h1;
            if (l.kind == K::W) r.sl_part.push_back({basis1().at(i).label, l.second, l.first, false});
            else r.sl_part.push_back({basis1().at(i).label, l.first, l.first, true});
        }
        r.s1 = labels(of_kind(K::T));
        r.l2 = labels(of_kind(K::Z));

        auto span_of = [](const std::vector<std::size_t>& ids) {
            std::vector<SparseVector> out;
            for (std::size_t i : ids) out.push_back(SparseVector{{i, Rational(1)}});
            return out;
        };
        auto s1 = of_kind(K::T), l2 = of_kind(K::Z);
        std::vector<std::size_t> l = s1;
        l.insert(l.end(), l2.begin(), l2.end());
        if (!brackets_within(s1, s1, {})) throw ConsistencyError("LeviMismatch", "[S1,S1] != 0");
        if (!brackets_within(l2, l2, {})) throw ConsistencyError("LeviMismatch", "[L2,L2] != 0");
        if (!brackets_within(l, l, l2)) throw ConsistencyError("LeviMismatch", "[L,L] is not inside L2");
        if (!is_ideal(span_of(l))) throw ConsistencyError("LeviMismatch", "L is not an ideal");
        check_sl();

        r.decomposition = decomposition_string(r);
        r.semisimple = is_semisimple();
        return r;
    }

    bool is_semisimple() const {
        auto [ab, reason] = is_abelian();
        if (ab) throw Error("AbelianInput", "the semisimplicity criterion needs a nonabelian HH^1 (" + reason + ")");
        const auto& inv = alg().invariants();
        bool formula = inv.a == inv.D && inv.m == 0;
        if (formula != radical().empty())
            throw ConsistencyError("SemisimpleMismatch", "a=D, m=0 criterion disagrees with the radical");
        return formula;
    }

    ModuleDecomposition module_decomposition(int n) const {
        if (n < 2) throw ValidationError("DegreeMismatch", "module decomposition needs n >= 2");
        const auto& co = g_->cohomology();
        const auto& res = co.complex().resolution();
        const auto& bn = co.basis(n);
        const auto& inv = alg().invariants();
        ModuleDecomposition out;
        out.degree = n;
        const auto& gens = res.generators(n);
        bool monomial_zero_omega = false;
        std::size_t total = 0;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            if (gens[gi].source != kSource || gens[gi].target != kSink) continue;
            if (gens[gi].kind == GeneratorKind::Chain) monomial_zero_omega = true;
            ModuleComponent comp;
            comp.generator = res.generator_name(n, static_cast<int>(gi));
            std::vector<std::size_t> members;
            for (std::size_t k = 0; k < bn.size(); ++k)
                if (bn.at(k).generator == static_cast<int>(gi)) members.push_back(k);
            if (members.empty()) continue;
            for (std::size_t k : members) comp.class_basis.push_back(bn.at(k).label);
            comp.irreducible = inv.D == inv.a;
            comp.invariant = action_closed(n, members);
            comp.orbit_spans = orbit_dimension(n, members.front()) == members.size();
            total += members.size();
            out.components.push_back(std::move(comp));
        }
        if (total != bn.size()) throw ConsistencyError("DecompositionMismatch", "components do not sum to HH^n");
        std::size_t k = out.components.size();
        out.standard_multiplicity = k;
        std::size_t a = static_cast<std::size_t>(inv.a);
        if (total < a * k) throw ConsistencyError("DecompositionMismatch", "fewer classes than standard modules");
        out.trivial_multiplicity = total - a * k;
        if (inv.a >= 2) check_weights(n, k);
        if (n >= 3 && k > 0)
            out.notes.push_back("trivial multiplicity counted as (D-a) per ambiguity generator");
        if (n == 2 && !monomial_zero_omega && inv.D != inv.a)
            out.notes.push_back("no monomial relation from 0 to w: irreducibility converse not asserted");
        return out;
    }

    // sl_a image of a labeled basis element as a dense a x a matrix.
    std::vector<std::vector<Rational>> sl_matrix(std::size_t i) const {
        int a = alg().invariants().a;
        std::vector<std::vector<Rational>> m(a, std::vector<Rational>(a, 0));
        const H1Label& l = *basis1().at(i).h1;
        if (l.kind == H1Label::Kind::W) {
            m[l.second - 1][l.first - 1] = 1;
        } else if (l.kind == H1Label::Kind::X) {
            m[l.first - 1][l.first - 1] += 1;
            m[0][0] -= 1;
        }
        return m;
    }

private:
    const ToupieAlgebra& alg() const { return g_->cohomology().algebra(); }
    const CohomologyBasis& basis1() const { return g_->cohomology().basis(1); }

    const CohomologyClass& bracket(std::size_t i, std::size_t j) const {
        if (table_.empty()) {
            const auto& b1 = basis1();
            table_.assign(b1.size(), std::vector<CohomologyClass>(b1.size()));
            for (std::size_t x = 0; x < b1.size(); ++x)
                for (std::size_t y = 0; y < b1.size(); ++y) table_[x][y] = g_->bracket_deg1(b1.unit(x), b1.unit(y));
        }
        return table_[i][j];
    }

    SparseVector bracket_vec(const SparseVector& u, const SparseVector& v) const {
        SparseVector out;
        for (const auto& [i, a] : u)
            for (const auto& [j, b] : v) add_scaled(out, a * b, bracket(i, j).coordinates);
        return out;
    }

    std::vector<std::size_t> of_kind(H1Label::Kind k) const {
        std::vector<std::size_t> out;
        const auto& b1 = basis1();
        for (std::size_t i = 0; i < b1.size(); ++i)
            if (b1.at(i).h1 && b1.at(i).h1->kind == k) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> sl_indices() const {
        std::vector<std::size_t> out;
        const auto& b1 = basis1();
        for (std::size_t i = 0; i < b1.size(); ++i) {
            auto k = b1.at(i).h1->kind;
            if (k == H1Label::Kind::X || k == H1Label::Kind::W) out.push_back(i);
        }
        return out;
    }

    std::vector<std::string> labels(const std::vector<std::size_t>& idx) const {
        std::vector<std::string> out;
        for (std::size_t i : idx) out.push_back(basis1().at(i).label);
        return out;
    }
    std::vector<std::string> all_labels() const {
        std::vector<std::string> out;
        for (const auto& c : basis1().classes()) out.push_back(c.label);
        return out;
    }

    bool is_ideal(const std::vector<SparseVector>& span) const {
        Echelon e;
        for (std::size_t i = 0; i < span.size(); ++i) e.insert(span[i], i);
        for (std::size_t j = 0; j < basis1().size(); ++j)
            for (const auto& v : span)
                if (!e.contains(bracket_vec(SparseVector{{j, Rational(1)}}, v))) return false;
        return true;
    }

    bool derived_series_terminates(std::vector<SparseVector> span) const {
        for (std::size_t step = 0; step <= basis1().size() + 1; ++step) {
            Echelon e;
            std::vector<SparseVector> next;
            for (const auto& u : span)
                for (const auto& v : span) {
                    SparseVector w = bracket_vec(u, v);
                    if (!w.empty() && e.insert(w, next.size())) next.push_back(w);
                }
            if (next.empty()) return true;
            if (next.size() >= span.size()) return false;
            span = std::move(next);
        }
        return false;
    }

    // Every [u, v] with u in `us`, v in `vs` lies in span(`within`).
    bool brackets_within(const std::vector<std::size_t>& us, const std::vector<std::size_t>& vs,
                         const std::vector<std::size_t>& within) const {
        std::set<std::size_t> allowed(within.begin(), within.end());
        for (std::size_t u : us)
            for (std::size_t v : vs)
                for (const auto& [k, c] : bracket(u, v).coordinates)
                    if (!allowed.count(k)) return false;
        return true;
    }

    // Structure constants of the x/w part equal elementary-matrix commutators.
    void check_sl() const {
        int a = alg().invariants().a;
        auto sl = sl_indices();
        for (std::size_t u : sl)
            for (std::size_t v : sl) {
                auto mu = sl_matrix(u), mv = sl_matrix(v);
                std::vector<std::vector<Rational>> c(a, std::vector<Rational>(a, 0));
                for (int i = 0; i < a; ++i)
                    for (int j = 0; j < a; ++j)
                        for (int k = 0; k < a; ++k) c[i][j] += mu[i][k] * mv[k][j] - mv[i][k] * mu[k][j];
                auto back = from_matrix(c);
                if (!(back == bracket(u, v).coordinates))
                    throw ConsistencyError("SlMismatch", "[" + basis1().at(u).label + ", " + basis1().at(v).label +
                                                             "] differs from the matrix commutator");
            }
    }

    // Preimage of a traceless matrix under w_pq -> E_qp, x_j -> E_jj - E_11.
    SparseVector from_matrix(const std::vector<std::vector<Rational>>& m) const {
        using K = H1Label::Kind;
        int a = static_cast<int>(m.size());
        SparseVector out;
        Rational trace = 0;
        for (int i = 0; i < a; ++i) trace += m[i][i];
        if (trace != 0) throw ConsistencyError("SlMismatch", "commutator is not traceless");
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) {
                if (m[i][j] == 0) continue;
                H1Label l = i == j ? H1Label{K::X, i + 1, 0} : H1Label{K::W, j + 1, i + 1};
                if (i == j && i == 0) continue;  // determined by the trace
                auto idx = basis1().find(l);
                if (!idx) throw ConsistencyError("SlMismatch", "missing class " + to_string(l));
                add_entry(out, *idx, m[i][j]);
            }
        return out;
    }

    SparseVector act(std::size_t x, int n, const SparseVector& v) const {
        return g_->action(basis1().unit(x), CohomologyClass{n, v}).coordinates;
    }

    bool action_closed(int n, const std::vector<std::size_t>& members) const {
        std::set<std::size_t> in(members.begin(), members.end());
        for (std::size_t x = 0; x < basis1().size(); ++x)
            for (std::size_t k : members)
                for (const auto& [j, c] : act(x, n, SparseVector{{k, Rational(1)}}))
                    if (!in.count(j)) return false;
        return true;
    }

    std::size_t orbit_dimension(int n, std::size_t start) const {
        Echelon e;
        std::vector<SparseVector> frontier{SparseVector{{start, Rational(1)}}};
        std::size_t tag = 0;
        e.insert(frontier.front(), tag++);
        while (!frontier.empty()) {
            std::vector<SparseVector> next;
            for (const auto& v : frontier)
                for (std::size_t x = 0; x < basis1().size(); ++x) {
                    SparseVector w = act(x, n, v);
                    if (!w.empty() && e.insert(w, tag++)) next.push_back(w);
                }
            frontier = std::move(next);
        }
        return e.rank();
    }

    // x_j acts diagonally with eigenvalues in {-1, 0, 1}; sl-trivial classes
    // number dim - a * (#components).
    void check_weights(int n, std::size_t components) const {
        const auto& bn = g_->cohomology().basis(n);
        auto sl = sl_indices();
        std::size_t trivial = 0;
        for (std::size_t k = 0; k < bn.size(); ++k) {
            bool killed = true;
            for (std::size_t x : sl) {
                SparseVector r = act(x, n, SparseVector{{k, Rational(1)}});
                if (!r.empty()) killed = false;
                if (basis1().at(x).h1->kind != H1Label::Kind::X) continue;
                if (r.size() > 1 || (r.size() == 1 && r.begin()->first != k))
                    throw ConsistencyError("WeightMismatch", "x acts non-diagonally on " + bn.at(k).label);
                if (r.size() == 1 && abs(r.begin()->second) != 1)
                    throw ConsistencyError("WeightMismatch", "weight outside {-1,0,1} on " + bn.at(k).label);
            }
            if (killed) ++trivial;
        }
        std::size_t a = static_cast<std::size_t>(alg().invariants().a);
        if (trivial + a * components != bn.size())
            throw ConsistencyError("WeightMismatch", "sl-trivial classes do not match the standard count");
    }

    static std::string span_string(const std::vector<std::string>& ls) {
        std::string s = "⟨";
        for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + ls[i];
        return s + "⟩";
    }

    std::string decomposition_string(const LieReport& r) const {
        int a = alg().invariants().a;
        std::string solv;
        if (!r.s1.empty() && !r.l2.empty()) solv = span_string(r.s1) + " ⋉ " + span_string(r.l2);
        else if (!r.s1.empty()) solv = span_string(r.s1);
        else if (!r.l2.empty()) solv = span_string(r.l2);
        std::string core;
        if (a >= 2) {
            core = "sl_" + std::to_string(a);
            if (!solv.empty()) core += " ⋉ (" + solv + ")";
        } else {
            core = solv.empty() ? "" : "(" + solv + ")";
        }
        if (r.center_part.empty()) return core;
        return core.empty() ? span_string(r.center_part) : span_string(r.center_part) + " ⊕ " + core;
    }

    const Gerstenhaber* g_;
    mutable std::vector<std::vector<CohomologyClass>> table_;
};

}  // namespace toupie
