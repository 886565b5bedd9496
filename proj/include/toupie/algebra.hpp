#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace toupie {

enum class BranchClass { Arrow, Free, Monomial, Linear };

inline const char* to_string(BranchClass c) {
    switch (c) {
        case BranchClass::Arrow: return "arrow";
        case BranchClass::Free: return "free";
        case BranchClass::Monomial: return "monomial";
        case BranchClass::Linear: return "linear";
    }
    return "?";
}

// Branch indices are 0-based positions in `branch_lengths`.
struct MonomialRelation {
    int branch = 0;
    int start = 0;
    int length = 0;
};

struct LinearRelation {
    std::map<int, Rational> coefficients;
};

struct QuiverSpec {
    std::vector<int> branch_lengths;
    std::vector<MonomialRelation> monomial_relations;
    std::vector<LinearRelation> linear_relations;
};

constexpr int kSource = 0;
constexpr int kSink = 1;

// Trivial path at `vertex` when length == 0, otherwise `length` consecutive
// arrows of `branch` starting with arrow number `start`.
struct Path {
    int branch = -1;
    int start = 0;
    int length = 0;
    int vertex = -1;

    static Path trivial(int v) { return Path{-1, 0, 0, v}; }
    static Path run(int b, int s, int len) { return Path{b, s, len, -1}; }
    bool is_trivial() const { return length == 0; }
    int end() const { return start + length; }  // one past the last arrow
    auto operator<=>(const Path&) const = default;
};

// Basis-indexed linear combination of irreducible paths.
using Element = SparseVector;

// Reduced linear relation: pivot branch plus tail b_ij on later branches.
struct ReducedRelation {
    int pivot = 0;
    std::vector<std::pair<int, Rational>> tail;

    Rational coefficient(int branch) const {
        if (branch == pivot) return 1;
        for (const auto& [b, c] : tail)
            if (b == branch) return c;
        return 0;
    }
    std::vector<int> branches() const {
        std::vector<int> out{pivot};
        for (const auto& [b, c] : tail) out.push_back(b);
        return out;
    }
};

struct Invariants {
    int a = 0, l = 0, m = 0, n = 0, r = 0, D = 0, d = 0;
    int rank = 0;
    int num_vertices = 0;
    int num_arrows = 0;
    bool operator==(const Invariants&) const = default;
};

struct QRhoGraph {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> components;  // each sorted, ordered by smallest branch
};

struct Window {
    int start = 0;
    int length = 0;
    int end() const { return start + length; }
};

class ToupieAlgebra {
public:
    static ToupieAlgebra build(const QuiverSpec& spec) {
        ToupieAlgebra alg;
        alg.spec_ = spec;
        alg.init();
        return alg;
    }

    const QuiverSpec& spec() const { return spec_; }
    int num_branches() const { return static_cast<int>(lengths_.size()); }
    int branch_length(int b) const { return lengths_.at(b); }
    BranchClass branch_class(int b) const { return classes_.at(b); }
    int original_index(int b) const { return original_.at(b); }
    int canonical_index(int input_branch) const { return canonical_.at(input_branch); }
    const std::vector<Window>& windows(int b) const { return windows_.at(b); }
    const std::vector<ReducedRelation>& relations() const { return relations_; }
    int pivot_relation(int b) const { return pivot_row_.at(b); }
    const Invariants& invariants() const { return inv_; }
    const QRhoGraph& q_rho() const { return qrho_; }
    int q_rho_component(int b) const { return component_of_.at(b); }

    int num_vertices() const { return inv_.num_vertices; }
    int vertex(int b, int offset) const { return vertex_ids_.at(b).at(offset); }

    struct Arrow {
        int branch;
        int offset;
    };
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int id) const { return arrows_.at(id); }
    int arrow_id(int b, int offset) const { return arrow_ids_.at(b).at(offset); }

    int source(const Path& p) const { return p.is_trivial() ? p.vertex : vertex(p.branch, p.start); }
    int target(const Path& p) const { return p.is_trivial() ? p.vertex : vertex(p.branch, p.end()); }

    const std::vector<Path>& basis() const { return basis_; }
    const Path& basis_path(std::size_t id) const { return basis_.at(id); }
    std::size_t basis_size() const { return basis_.size(); }
    std::optional<std::size_t> basis_id(const Path& p) const {
        auto it = basis_index_.find(p);
        if (it == basis_index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t trivial_id(int v) const { return basis_index_.at(Path::trivial(v)); }
    // Full branches that survive in A, in branch order.
    const std::vector<std::size_t>& zero_omega_basis() const { return zero_omega_; }
    // Irreducible paths from `s` to `t`.
    const std::vector<std::size_t>& parallel_paths(int s, int t) const {
        static const std::vector<std::size_t> empty;
        auto it = parallel_.find({s, t});
        return it == parallel_.end() ? empty : it->second;
    }

    bool contains_window(int b, int start, int length) const {
        for (const auto& w : windows_.at(b))
            if (w.start >= start && w.end() <= start + length) return true;
        return false;
    }

    // The reduced form of the path of `length` arrows on branch `b` from `start`.
    Element reduce_run(int b, int start, int length) const {
        if (length == 0) return Element{{trivial_id(vertex(b, start)), Rational(1)}};
        if (contains_window(b, start, length)) return {};
        if (length == lengths_[b] && pivot_row_[b] >= 0) return pivot_replacement_[b];
        return Element{{basis_index_.at(Path::run(b, start, length)), Rational(1)}};
    }
    Element reduce(const Path& p) const {
        if (p.is_trivial()) return Element{{trivial_id(p.vertex), Rational(1)}};
        return reduce_run(p.branch, p.start, p.length);
    }

    Element multiply(std::size_t x, std::size_t y) const {
        const Path& p = basis_[x];
        const Path& q = basis_[y];
        if (target(p) != source(q)) return {};
        if (p.is_trivial()) return Element{{y, Rational(1)}};
        if (q.is_trivial()) return Element{{x, Rational(1)}};
        // Composable runs share a branch since every inner vertex has one in and one out arrow.
        return reduce_run(p.branch, p.start, p.length + q.length);
    }

    Element multiply(const Element& x, const Element& y) const {
        Element out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) add_scaled(out, a * b, multiply(i, j));
        return out;
    }

    Element unit() const {
        Element out;
        for (int v = 0; v < num_vertices(); ++v) out[trivial_id(v)] = 1;
        return out;
    }

    std::string vertex_name(int v) const {
        if (v == kSource) return "e0";
        if (v == kSink) return "ew";
        const auto& [b, o] = vertex_owner_.at(v);
        return "e" + std::to_string(b + 1) + "_" + std::to_string(o);
    }

    std::string path_name(const Path& p) const {
        if (p.is_trivial()) return vertex_name(p.vertex);
        std::string base = "a" + std::to_string(p.branch + 1);
        if (p.length == lengths_[p.branch]) return base;
        if (p.length == 1) return base + "_" + std::to_string(p.start);
        return base + "_" + std::to_string(p.start) + ".." + std::to_string(p.end() - 1);
    }

    std::string element_name(const Element& e) const {
        std::vector<std::pair<std::string, Rational>> terms;
        for (const auto& [id, c] : e) terms.emplace_back(path_name(basis_[id]), c);
        return format_combination(terms);
    }

private:
    void init();
    void validate() const;
    void order_branches();
    void reduce_relations();
    void build_quiver();
    void build_basis();
    void build_q_rho();

    QuiverSpec spec_;
    std::vector<int> lengths_;
    std::vector<BranchClass> classes_;
    std::vector<int> original_;
    std::vector<int> canonical_;
    std::vector<std::vector<Window>> windows_;
    std::vector<ReducedRelation> relations_;
    std::vector<int> pivot_row_;
    std::vector<Element> pivot_replacement_;
    std::vector<std::vector<int>> vertex_ids_;
    std::vector<std::pair<int, int>> vertex_owner_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> arrow_ids_;
    std::vector<Path> basis_;
    std::map<Path, std::size_t> basis_index_;
    std::vector<std::size_t> zero_omega_;
    std::map<std::pair<int, int>, std::vector<std::size_t>> parallel_;
    QRhoGraph qrho_;
    std::vector<int> component_of_;
    Invariants inv_;
};

// Every admissibility violation of the input, in input order.
inline std::vector<ValidationError> validation_errors(const QuiverSpec& s) {
    std::vector<ValidationError> errs;
    if (s.branch_lengths.empty()) {
        errs.emplace_back("EmptyQuiver", "at least one branch is required");
        return errs;
    }
    int nb = static_cast<int>(s.branch_lengths.size());
    auto where = [](int b) { return "branch " + std::to_string(b + 1); };
    std::vector<bool> usable(nb, true);
    for (int b = 0; b < nb; ++b)
        if (s.branch_lengths[b] < 1) {
            errs.emplace_back("NonPositiveLength", where(b) + " has length " + std::to_string(s.branch_lengths[b]),
                              "branches:" + std::to_string(b + 1));
            usable[b] = false;
        }
    std::vector<std::vector<Window>> wins(nb);
    for (std::size_t i = 0; i < s.monomial_relations.size(); ++i) {
        const auto& r = s.monomial_relations[i];
        std::string rel = "monomial relation " + std::to_string(i + 1);
        std::string field = "monomial_relations:" + std::to_string(i + 1);
        if (r.branch < 0 || r.branch >= nb) {
            errs.emplace_back("UnknownBranch", rel + " references " + where(r.branch), field);
            continue;
        }
        if (!usable[r.branch]) continue;
        if (s.branch_lengths[r.branch] == 1) {
            errs.emplace_back("RelationOnArrow", rel + " lies on " + where(r.branch) + ", a single arrow", field);
            continue;
        }
        if (r.length < 2) {
            errs.emplace_back("ShortMonomialRelation", rel + " has length " + std::to_string(r.length), field);
            continue;
        }
        if (r.start < 0 || r.start + r.length > s.branch_lengths[r.branch]) {
            errs.emplace_back("WindowOutOfRange", rel + " (" + std::to_string(r.start) + ", " +
                                                      std::to_string(r.length) + ") leaves " + where(r.branch), field);
            continue;
        }
        bool nested = false;
        for (const auto& w : wins[r.branch])
            if ((w.start <= r.start && r.start + r.length <= w.end()) ||
                (r.start <= w.start && w.end() <= r.start + r.length))
                nested = true;
        if (nested) {
            errs.emplace_back("NestedMonomialRelation", rel + " contains or repeats another relation on " +
                                                            where(r.branch), field);
            continue;
        }
        wins[r.branch].push_back({r.start, r.length});
    }
    for (std::size_t i = 0; i < s.linear_relations.size(); ++i) {
        const auto& row = s.linear_relations[i];
        std::string rel = "linear relation " + std::to_string(i + 1);
        std::string field = "linear_relations:" + std::to_string(i + 1);
        if (row.coefficients.empty()) errs.emplace_back("ZeroRow", rel + " is empty", field);
        for (const auto& [b, c] : row.coefficients) {
            if (b < 0 || b >= nb) {
                errs.emplace_back("UnknownBranch", rel + " references " + where(b), field);
                continue;
            }
            if (c == 0) errs.emplace_back("ZeroCoefficient", rel + " has a zero coefficient on " + where(b), field);
            if (!usable[b]) continue;
            if (s.branch_lengths[b] == 1) errs.emplace_back("RelationOnArrow", rel + " uses " + where(b), field);
            if (!wins[b].empty())
                errs.emplace_back("MixedBranchClass", where(b) + " carries both monomial and linear relations", field);
        }
    }
    return errs;
}

inline void ToupieAlgebra::validate() const {
    auto errs = validation_errors(spec_);
    if (!errs.empty()) throw errs.front();
}

inline void ToupieAlgebra::init() {
    validate();
    order_branches();
    reduce_relations();
    build_quiver();
    build_basis();
    build_q_rho();
}

inline void ToupieAlgebra::order_branches() {
    int nb = static_cast<int>(spec_.branch_lengths.size());
    std::vector<BranchClass> input_class(nb, BranchClass::Free);
    for (int b = 0; b < nb; ++b)
        if (spec_.branch_lengths[b] == 1) input_class[b] = BranchClass::Arrow;
    for (const auto& r : spec_.monomial_relations) input_class[r.branch] = BranchClass::Monomial;
    for (const auto& row : spec_.linear_relations)
        for (const auto& [b, c] : row.coefficients) input_class[b] = BranchClass::Linear;
    for (auto cls : {BranchClass::Arrow, BranchClass::Free, BranchClass::Monomial, BranchClass::Linear})
        for (int b = 0; b < nb; ++b)
            if (input_class[b] == cls) original_.push_back(b);
    canonical_.assign(nb, 0);
    for (int c = 0; c < nb; ++c) {
        canonical_[original_[c]] = c;
        lengths_.push_back(spec_.branch_lengths[original_[c]]);
        classes_.push_back(input_class[original_[c]]);
    }
    windows_.assign(nb, {});
    for (const auto& r : spec_.monomial_relations) windows_[canonical_[r.branch]].push_back({r.start, r.length});
    for (auto& w : windows_)
        std::sort(w.begin(), w.end(), [](const Window& x, const Window& y) { return x.start < y.start; });
    for (int b = 0; b < nb; ++b) {
        switch (classes_[b]) {
            case BranchClass::Arrow: ++inv_.a; break;
            case BranchClass::Free: ++inv_.l; break;
            case BranchClass::Monomial: ++inv_.m; break;
            case BranchClass::Linear: ++inv_.n; break;
        }
    }
}

inline void ToupieAlgebra::reduce_relations() {
    int nb = num_branches();
    pivot_row_.assign(nb, -1);
    pivot_replacement_.assign(nb, {});
    if (spec_.linear_relations.empty()) return;
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : spec_.linear_relations) {
        std::vector<Rational> dense(nb, 0);
        for (const auto& [b, c] : row.coefficients) dense[canonical_[b]] = c;
        rows.push_back(std::move(dense));
    }
    RrefResult res = rref(rows);
    if (res.dropped > 0)
        throw ValidationError("ZeroRow", std::to_string(res.dropped) +
                                             " linear relation(s) are linear combinations of the others");
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        ReducedRelation rel;
        rel.pivot = static_cast<int>(res.pivots[i]);
        for (int j = rel.pivot + 1; j < nb; ++j)
            if (res.rows[i][j] != 0) rel.tail.emplace_back(j, res.rows[i][j]);
        if (rel.tail.empty())
            throw ValidationError("SingleBranchLinearRelation",
                                  "the relations force branch " + std::to_string(original_[rel.pivot] + 1) +
                                      " to vanish on its own; give it as a monomial relation instead");
        relations_.push_back(std::move(rel));
    }
    inv_.rank = static_cast<int>(relations_.size());
}

inline void ToupieAlgebra::build_quiver() {
    int nb = num_branches();
    int next = 2;
    vertex_ids_.assign(nb, {});
    arrow_ids_.assign(nb, {});
    vertex_owner_.assign(2, {-1, -1});
    for (int b = 0; b < nb; ++b) {
        auto& ids = vertex_ids_[b];
        ids.push_back(kSource);
        for (int o = 1; o < lengths_[b]; ++o) {
            ids.push_back(next++);
            vertex_owner_.emplace_back(b, o);
        }
        ids.push_back(kSink);
        for (int o = 0; o < lengths_[b]; ++o) {
            arrow_ids_[b].push_back(static_cast<int>(arrows_.size()));
            arrows_.push_back({b, o});
        }
    }
    inv_.num_vertices = next;
    inv_.num_arrows = static_cast<int>(arrows_.size());
}

inline void ToupieAlgebra::build_basis() {
    int nb = num_branches();
    for (int v = 0; v < inv_.num_vertices; ++v) basis_.push_back(Path::trivial(v));
    for (int b = 0; b < nb; ++b)
        for (int s = 0; s < lengths_[b]; ++s)
            for (int len = 1; s + len <= lengths_[b]; ++len) {
                if (contains_window(b, s, len)) continue;
                if (len == lengths_[b] && classes_[b] == BranchClass::Linear) {
                    bool is_pivot = std::any_of(relations_.begin(), relations_.end(),
                                                [b](const ReducedRelation& r) { return r.pivot == b; });
                    if (is_pivot) continue;
                }
                basis_.push_back(Path::run(b, s, len));
            }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        basis_index_[basis_[i]] = i;
        parallel_[{source(basis_[i]), target(basis_[i])}].push_back(i);
        const Path& p = basis_[i];
        if (!p.is_trivial() && p.length == lengths_[p.branch]) zero_omega_.push_back(i);
    }
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        const auto& rel = relations_[i];
        pivot_row_[rel.pivot] = static_cast<int>(i);
        Element f;
        for (const auto& [j, c] : rel.tail)
            add_entry(f, basis_index_.at(Path::run(j, 0, lengths_[j])), -c);
        pivot_replacement_[rel.pivot] = std::move(f);
    }
    inv_.D = static_cast<int>(zero_omega_.size());
    inv_.d = inv_.n - inv_.rank;
}

inline void ToupieAlgebra::build_q_rho() {
    int nb = num_branches();
    component_of_.assign(nb, -1);
    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int b = 0; b < nb; ++b)
        if (classes_[b] == BranchClass::Free || classes_[b] == BranchClass::Linear) qrho_.vertices.push_back(b);
    std::set<std::pair<int, int>> edges;
    for (const auto& rel : relations_) {
        auto bs = rel.branches();
        for (std::size_t i = 0; i < bs.size(); ++i)
            for (std::size_t j = i + 1; j < bs.size(); ++j) {
                edges.insert({std::min(bs[i], bs[j]), std::max(bs[i], bs[j])});
                parent[find(bs[i])] = find(bs[j]);
            }
    }
    qrho_.edges.assign(edges.begin(), edges.end());
    std::map<int, std::vector<int>> groups;
    for (int b : qrho_.vertices) groups[find(b)].push_back(b);
    for (auto& [root, members] : groups) qrho_.components.push_back(members);
    std::sort(qrho_.components.begin(), qrho_.components.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (std::size_t k = 0; k < qrho_.components.size(); ++k)
        for (int b : qrho_.components[k]) component_of_[b] = static_cast<int>(k);
    inv_.r = static_cast<int>(qrho_.components.size());
}

inline ToupieAlgebra validate_and_build(const QuiverSpec& spec) { return ToupieAlgebra::build(spec); }

}  // namespace toupie
