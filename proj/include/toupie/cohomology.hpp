#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cochain.hpp"

namespace toupie {

// Semantic tag of a degree-1 basis class.
struct H1Label {
    enum class Kind { Y, W, X, Z, T };
    Kind kind = Kind::Y;
    int first = 0;   // y: branch, w: p, x: j, z: u, t: component (all 1-based)
    int second = 0;  // w: q, z: branch s
    bool operator==(const H1Label&) const = default;
};

inline std::string index_pair(int i, int j) {
    if (i >= 10 || j >= 10) return std::to_string(i) + "_" + std::to_string(j);
    return std::to_string(i) + std::to_string(j);
}

inline std::string to_string(const H1Label& l) {
    switch (l.kind) {
        case H1Label::Kind::Y: return "y" + std::to_string(l.first);
        case H1Label::Kind::W: return "w" + index_pair(l.first, l.second);
        case H1Label::Kind::X: return "x" + std::to_string(l.first);
        case H1Label::Kind::Z: return "z" + index_pair(l.first, l.second);
        case H1Label::Kind::T: return "t" + std::to_string(l.first);
    }
    return "?";
}

struct LabeledClass {
    std::string label;
    SparseVector cochain;  // representative in the cochain space of its degree
    std::optional<H1Label> h1;
    int generator = -1;       // degree >= 2: generator of the basis cochain
    std::size_t value = 0;    // degree >= 2: branch path of the basis cochain
};

// A class in HH^degree given by coordinates over the labeled basis.
struct CohomologyClass {
    int degree = 0;
    SparseVector coordinates;
    bool operator==(const CohomologyClass&) const = default;
};

// Labeled basis of HH^degree together with the image it is taken modulo.
class CohomologyBasis {
public:
    CohomologyBasis() = default;
    CohomologyBasis(int degree, std::vector<LabeledClass> classes, const RationalMatrix* image)
        : degree_(degree), classes_(std::move(classes)) {
        for (std::size_t i = 0; i < classes_.size(); ++i) solver_.insert(classes_[i].cochain, i);
        if (solver_.rank() != classes_.size())
            throw ConsistencyError("DependentBasis", "degree " + std::to_string(degree) + " basis is dependent");
        if (image) {
            for (std::size_t j = 0; j < image->cols(); ++j) solver_.insert(image->column(j), classes_.size() + j);
            if (solver_.rank() != classes_.size() + image->rank())
                throw ConsistencyError("DependentBasis", "degree " + std::to_string(degree) +
                                                             " basis is dependent modulo the image");
        }
    }

    int degree() const { return degree_; }
    std::size_t size() const { return classes_.size(); }
    const std::vector<LabeledClass>& classes() const { return classes_; }
    const LabeledClass& at(std::size_t i) const { return classes_.at(i); }

    std::optional<std::size_t> find(const std::string& label) const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (classes_[i].label == label) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> find(const H1Label& l) const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (classes_[i].h1 && *classes_[i].h1 == l) return i;
        return std::nullopt;
    }

    // Coordinates of a cocycle modulo the image; throws when the cocycle is
    // outside span(basis) + image.
    CohomologyClass project(const SparseVector& cocycle) const {
        auto c = solver_.express(cocycle);
        if (!c) throw ConsistencyError("NotACocycle", "cochain is not in the span of the degree-" +
                                                          std::to_string(degree_) + " cocycles");
        CohomologyClass out{degree_, {}};
        for (const auto& [tag, v] : *c)
            if (tag < classes_.size()) out.coordinates[tag] = v;
        return out;
    }

    CohomologyClass unit(std::size_t i) const { return {degree_, SparseVector{{i, Rational(1)}}}; }

    SparseVector representative(const CohomologyClass& x) const {
        SparseVector out;
        for (const auto& [i, c] : x.coordinates) add_scaled(out, c, classes_.at(i).cochain);
        return out;
    }

    std::string pretty(const CohomologyClass& x) const {
        std::vector<std::pair<std::string, Rational>> terms;
        for (const auto& [i, c] : x.coordinates) terms.emplace_back(classes_.at(i).label, c);
        return format_combination(terms);
    }

private:
    int degree_ = 0;
    std::vector<LabeledClass> classes_;
    Echelon solver_;
};

class Cohomology {
public:
    explicit Cohomology(const ToupieAlgebra& alg) : complex_(alg) {}

    const ToupieAlgebra& algebra() const { return complex_.algebra(); }
    const MinimalComplex& complex() const { return complex_; }

    // dim HH^i; degrees >= 3 use #(0->w ambiguities) * D and are checked against the ranks.
    std::size_t dimension(int i) const {
        std::size_t computed = complex_.cohomology_dimension(i);
        if (i >= 3) {
            std::size_t formula = count_zero_omega(i) * algebra().invariants().D;
            if (formula != computed)
                throw ConsistencyError("DimensionMismatch", "HH^" + std::to_string(i) + " formula " +
                                                                std::to_string(formula) + " vs rank " +
                                                                std::to_string(computed));
            return formula;
        }
        return computed;
    }

    const CohomologyBasis& basis(int i) const {
        auto it = bases_.find(i);
        if (it != bases_.end()) return it->second;
        CohomologyBasis b = i == 0 ? build_h0() : i == 1 ? build_h1() : i == 2 ? build_h2() : build_hi(i);
        return bases_.emplace(i, std::move(b)).first->second;
    }

    // Cochains of arrows alpha‖alpha etc. in C^1 coordinates.
    SparseVector arrow_cochain(int branch, int offset, std::size_t value) const {
        int g = algebra().arrow_id(branch, offset);
        return SparseVector{{complex_.space(1).at(g, value), Rational(1)}};
    }
    SparseVector arrow_identity(int branch, int offset) const {
        const auto& alg = algebra();
        return arrow_cochain(branch, offset, *alg.basis_id(Path::run(branch, offset, 1)));
    }

    // Number of degree-(i) generators running from 0 to w.
    std::size_t count_zero_omega(int i) const {
        std::size_t n = 0;
        for (const auto& g : complex_.resolution().generators(i))
            if (g.source == kSource && g.target == kSink) ++n;
        return n;
    }

    // Intermediate sets of the degree-2 construction, kept for inspection.
    struct H2Construction {
        std::vector<SparseVector> b1, b2, b2_prime, b2_second;
        std::vector<std::size_t> b1_positions, b2_positions;
    };
    const H2Construction& h2_construction() const {
        basis(2);
        return h2_;
    }

private:
    CohomologyBasis build_h0() const {
        const auto& sp = complex_.space(0);
        SparseVector one;
        for (std::size_t i = 0; i < sp.size(); ++i) one[i] = 1;
        return CohomologyBasis(0, {LabeledClass{"1", one, std::nullopt}}, nullptr);
    }

    CohomologyBasis build_h1() const;
    CohomologyBasis build_h2() const;

    CohomologyBasis build_hi(int i) const {
        const auto& sp = complex_.space(i);
        std::vector<LabeledClass> classes;
        for (std::size_t k = 0; k < sp.size(); ++k) {
            LabeledClass c{sp.label(k), SparseVector{{k, Rational(1)}}, std::nullopt};
            c.generator = sp.element(k).generator;
            c.value = sp.element(k).value;
            classes.push_back(std::move(c));
        }
        const RationalMatrix* image = &complex_.differential(i - 1);
        return CohomologyBasis(i, std::move(classes), image);
    }

    MinimalComplex complex_;
    mutable std::map<int, CohomologyBasis> bases_;
    mutable H2Construction h2_;
};

inline CohomologyBasis Cohomology::build_h1() const {
    const auto& alg = algebra();
    const auto& inv = alg.invariants();
    const auto& sp = complex_.space(1);
    const auto& d0 = complex_.differential(0);
    const auto& d1 = complex_.differential(1);
    const auto& omega = alg.zero_omega_basis();
    int nb = alg.num_branches();

    auto first = [&](int b) { return arrow_identity(b, 0); };
    auto full = [&](int b) { return *alg.basis_id(Path::run(b, 0, alg.branch_length(b))); };

    // U = C1 u C2 u C3 u C4
    std::vector<SparseVector> u;
    std::vector<std::pair<int, SparseVector>> c1_second;  // branch, y_i
    std::vector<SparseVector> c1_prime, c3, c4;
    for (int b = 0; b < nb; ++b) {
        if (alg.branch_class(b) == BranchClass::Monomial) {
            c1_second.emplace_back(b, first(b));
            u.push_back(first(b));
            for (int j = 1; j < alg.branch_length(b); ++j) {
                u.push_back(arrow_identity(b, j));
                SparseVector v = arrow_identity(b, j);
                add_scaled(v, Rational(-1), first(b));
                c1_prime.push_back(std::move(v));
            }
        }
        if (alg.branch_class(b) == BranchClass::Free || alg.branch_class(b) == BranchClass::Linear)
            for (int j = 1; j < alg.branch_length(b); ++j) {
                SparseVector v = arrow_identity(b, j);
                add_scaled(v, Rational(-1), first(b));
                c3.push_back(v);
                u.push_back(std::move(v));
            }
    }
    std::vector<int> z_branches;
    for (int b = 0; b < nb; ++b)
        if (alg.branch_class(b) == BranchClass::Arrow) z_branches.push_back(b);
    for (int h : z_branches)
        for (std::size_t c : omega) u.push_back(arrow_cochain(h, 0, c));
    for (const auto& comp : alg.q_rho().components) {
        SparseVector t;
        for (int b : comp) add_scaled(t, Rational(1), first(b));
        c4.push_back(t);
        u.push_back(std::move(t));
    }

    std::size_t expected_kernel = inv.r + inv.m + inv.D * inv.a + inv.num_vertices - 2;
    {
        Echelon e;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!d1.apply(u[i]).empty())
                throw ConsistencyError("NotACocycle", "an element of U is not in Ker D1");
            e.insert(u[i], i);
        }
        std::size_t kernel_dim = sp.size() - complex_.differential_rank(1);
        if (e.rank() != u.size() || u.size() != expected_kernel || kernel_dim != expected_kernel)
            throw ConsistencyError("KernelMismatch", "U is not a basis of Ker D1");
    }

    SparseVector s;
    for (int b = 0; b < nb; ++b) add_scaled(s, Rational(1), first(b));

    std::vector<LabeledClass> classes;
    using K = H1Label::Kind;
    std::optional<std::size_t> dropped_y, dropped_t;
    if (inv.a == 0) {
        int last = nb - 1;
        if (alg.branch_class(last) == BranchClass::Monomial) {
            for (std::size_t i = 0; i < c1_second.size(); ++i)
                if (c1_second[i].first == last) dropped_y = i;
        } else {
            dropped_t = alg.q_rho_component(last);
        }
    }
    for (std::size_t i = 0; i < c1_second.size(); ++i)
        if (dropped_y != i)
            classes.push_back({to_string(H1Label{K::Y, c1_second[i].first + 1, 0}), c1_second[i].second,
                               H1Label{K::Y, c1_second[i].first + 1, 0}});
    int a = inv.a;
    for (int p = 1; p <= a; ++p)
        for (int q = 1; q <= a; ++q) {
            if (p == q) continue;
            H1Label l{K::W, p, q};
            classes.push_back({to_string(l), arrow_cochain(z_branches[p - 1], 0, full(z_branches[q - 1])), l});
        }
    for (int j = 2; j <= a; ++j) {
        H1Label l{K::X, j, 0};
        SparseVector v = first(z_branches[j - 1]);
        add_scaled(v, Rational(-1), first(z_branches[0]));
        classes.push_back({to_string(l), v, l});
    }
    for (std::size_t c : omega) {
        int sb = alg.basis_path(c).branch;
        if (alg.branch_class(sb) == BranchClass::Arrow) continue;
        for (int uu = 1; uu <= a; ++uu) {
            H1Label l{K::Z, uu, sb + 1};
            classes.push_back({to_string(l), arrow_cochain(z_branches[uu - 1], 0, c), l});
        }
    }
    for (std::size_t k = 0; k < c4.size(); ++k)
        if (dropped_t != k) {
            H1Label l{K::T, static_cast<int>(k) + 1, 0};
            classes.push_back({to_string(l), c4[k], l});
        }

    // K = {s} u C1' u C3 must be a basis of Im D0, and K plus the labels must span Ker D1.
    std::vector<SparseVector> kset{s};
    kset.insert(kset.end(), c1_prime.begin(), c1_prime.end());
    kset.insert(kset.end(), c3.begin(), c3.end());
    Echelon image = d0.image();
    Echelon all;
    std::size_t tag = 0;
    for (const auto& v : kset) {
        if (!image.contains(v)) throw ConsistencyError("ImageMismatch", "an element of K is not in Im D0");
        all.insert(v, tag++);
    }
    if (all.rank() != kset.size() || kset.size() != complex_.differential_rank(0) ||
        kset.size() != static_cast<std::size_t>(inv.num_vertices - 1))
        throw ConsistencyError("ImageMismatch", "K is not a basis of Im D0");
    for (const auto& c : classes) {
        if (!d1.apply(c.cochain).empty()) throw ConsistencyError("NotACocycle", c.label + " is not a cocycle");
        all.insert(c.cochain, tag++);
    }
    if (all.rank() != expected_kernel ||
        classes.size() != static_cast<std::size_t>(inv.r + inv.m + inv.D * inv.a - 1))
        throw ConsistencyError("BasisMismatch", "the labeled degree-1 classes are not a basis of HH^1");
    return CohomologyBasis(1, std::move(classes), &d0);
}

inline CohomologyBasis Cohomology::build_h2() const {
    const auto& alg = algebra();
    const auto& sp = complex_.space(2);
    const auto& d1 = complex_.differential(1);
    const auto& rels = alg.relations();
    auto full = [&](int b) { return *alg.basis_id(Path::run(b, 0, alg.branch_length(b))); };
    auto pos = [&](int rel, int branch) { return sp.at(rel, full(branch)); };

    // last relation (largest pivot) of every component of Q_rho
    std::map<int, int> last_of_component;
    for (std::size_t i = 0; i < rels.size(); ++i) {
        int comp = alg.q_rho_component(rels[i].pivot);
        auto it = last_of_component.find(comp);
        if (it == last_of_component.end() || rels[it->second].pivot < rels[i].pivot)
            last_of_component[comp] = static_cast<int>(i);
    }
    auto is_last = [&](int i) { return last_of_component.at(alg.q_rho_component(rels[i].pivot)) == i; };
    auto f_cochain = [&](int i) {
        SparseVector v;
        for (const auto& [j, b] : rels[i].tail) add_entry(v, pos(i, j), -b);
        return v;
    };

    H2Construction h2;
    std::vector<int> b1_rel;
    for (std::size_t i = 0; i < rels.size(); ++i)
        if (!is_last(static_cast<int>(i))) {
            h2.b1.push_back(f_cochain(static_cast<int>(i)));
            h2.b1_positions.push_back(pos(static_cast<int>(i), rels[i].tail.front().first));
            b1_rel.push_back(static_cast<int>(i));
        }
    std::set<int> x_set;
    for (const auto& r : rels)
        for (const auto& [j, b] : r.tail) x_set.insert(j);
    for (int h : x_set) {
        SparseVector w;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            Rational c = rels[i].coefficient(h);
            if (c != 0) add_entry(w, pos(static_cast<int>(i), h), c);
        }
        h2.b2.push_back(w);
    }
    // Clear the entries of B2 sitting on a B1 pivot position by adding the
    // multiple of rho_j‖f_j that cancels them.
    for (auto w : h2.b2) {
        for (std::size_t k = 0; k < b1_rel.size(); ++k) {
            std::size_t p = h2.b1_positions[k];
            auto it = w.find(p);
            if (it == w.end()) continue;
            Rational c = -it->second / h2.b1[k].at(p);
            add_scaled(w, c, h2.b1[k]);
        }
        h2.b2_prime.push_back(std::move(w));
    }
    // Echelon form of B2' in the order of the cochain basis (relation, then branch).
    if (!h2.b2_prime.empty()) {
        std::vector<std::vector<Rational>> dense;
        for (const auto& w : h2.b2_prime) {
            std::vector<Rational> row(sp.size(), 0);
            for (const auto& [i, c] : w) row[i] = c;
            dense.push_back(std::move(row));
        }
        RrefResult red = rref(dense);
        for (std::size_t r = 0; r < red.rows.size(); ++r) {
            SparseVector v;
            for (std::size_t i = 0; i < red.rows[r].size(); ++i)
                if (red.rows[r][i] != 0) v[i] = red.rows[r][i];
            h2.b2_second.push_back(std::move(v));
            h2.b2_positions.push_back(red.pivots[r]);
        }
    }

    // B1 u B2'' must be a basis of Im D1.
    Echelon image = d1.image();
    Echelon check;
    std::size_t tag = 0;
    for (const auto* set : {&h2.b1, &h2.b2_second})
        for (const auto& v : *set) {
            if (!image.contains(v)) throw ConsistencyError("ImageMismatch", "B1/B2'' element not in Im D1");
            check.insert(v, tag++);
        }
    const auto& inv = alg.invariants();
    if (check.rank() != tag || tag != complex_.differential_rank(1) ||
        tag != static_cast<std::size_t>(inv.l + inv.n - inv.r))
        throw ConsistencyError("ImageMismatch", "B1 u B2'' is not a basis of Im D1");

    std::set<std::size_t> replaced(h2.b1_positions.begin(), h2.b1_positions.end());
    for (std::size_t p : h2.b2_positions)
        if (!replaced.insert(p).second)
            throw ConsistencyError("ImageMismatch", "B1 and B2'' pivots collide");
    std::vector<LabeledClass> classes;
    for (std::size_t k = 0; k < sp.size(); ++k) {
        if (replaced.count(k)) continue;
        LabeledClass c{sp.label(k), SparseVector{{k, Rational(1)}}, std::nullopt};
        c.generator = sp.element(k).generator;
        c.value = sp.element(k).value;
        classes.push_back(std::move(c));
    }
    if (classes.size() != complex_.cohomology_dimension(2))
        throw ConsistencyError("BasisMismatch", "the degree-2 classes do not match dim HH^2");
    h2_ = std::move(h2);
    return CohomologyBasis(2, std::move(classes), &d1);
}

}  // namespace toupie
