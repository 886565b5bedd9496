#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomology.hpp"

namespace toupie {

// A composable tuple of nontrivial basis paths; the empty tuple lives in degree 0.
using BarTuple = std::vector<std::size_t>;
using BarTensor = Tensor<BarTuple>;

inline constexpr std::size_t kDefaultBarBudget = 200000;

// Associativity on every basis triple, orthogonal idempotents summing to 1.
inline void verify_finite_algebra(const ToupieAlgebra& alg) {
    std::size_t n = alg.basis_size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Element xy = alg.multiply(x, y);
            if (xy.empty()) continue;
            for (std::size_t z = 0; z < n; ++z) {
                Element lhs = alg.multiply(xy, Element{{z, Rational(1)}});
                Element rhs = alg.multiply(Element{{x, Rational(1)}}, alg.multiply(y, z));
                if (lhs != rhs) throw ConsistencyError("NotAssociative", "basis triple fails associativity");
            }
        }
    Element sum;
    for (int v = 0; v < alg.num_vertices(); ++v) {
        std::size_t e = alg.trivial_id(v);
        for (int u = 0; u < alg.num_vertices(); ++u) {
            Element p = alg.multiply(e, alg.trivial_id(u));
            Element want = u == v ? Element{{e, Rational(1)}} : Element{};
            if (p != want) throw ConsistencyError("NotOrthogonal", "idempotents are not orthogonal");
        }
        add_entry(sum, e, Rational(1));
    }
    for (std::size_t x = 0; x < n; ++x) {
        Element one{{x, Rational(1)}};
        if (alg.multiply(sum, one) != one || alg.multiply(one, sum) != one)
            throw ConsistencyError("NotUnital", "idempotents do not sum to the unit");
    }
}

// Hom_{E^e}(Abar^{(x)n}, A) with the basis tuple‖c, c parallel to the tuple.
class BarSpace {
public:
    BarSpace(const ToupieAlgebra& alg, int degree, std::size_t budget) : degree_(degree) {
        if (degree == 0) {
            for (int v = 0; v < alg.num_vertices(); ++v) push(alg, {}, v, v);
            return;
        }
        std::vector<std::vector<std::size_t>> from(alg.num_vertices());
        for (std::size_t id = 0; id < alg.basis_size(); ++id)
            if (!alg.basis_path(id).is_trivial()) from[alg.source(alg.basis_path(id))].push_back(id);
        BarTuple cur;
        std::size_t count = 0;
        auto grow = [&](auto&& self, int at) -> void {
            if (static_cast<int>(cur.size()) == degree) {
                if (++count > budget) throw BudgetExceeded(degree, count, budget);
                push(alg, cur, alg.source(alg.basis_path(cur.front())), at);
                return;
            }
            for (std::size_t id : from[at]) {
                cur.push_back(id);
                self(self, alg.target(alg.basis_path(id)));
                cur.pop_back();
            }
        };
        for (int v = 0; v < alg.num_vertices(); ++v) grow(grow, v);
    }

    int degree() const { return degree_; }
    std::size_t num_tuples() const { return tuples_.size(); }
    const BarTuple& tuple(std::size_t t) const { return tuples_.at(t); }
    int tuple_source(std::size_t t) const { return ends_.at(t).first; }
    int tuple_target(std::size_t t) const { return ends_.at(t).second; }
    std::optional<std::size_t> find(const BarTuple& t) const {
        auto it = tuple_index_.find(t);
        if (it == tuple_index_.end()) return std::nullopt;
        return it->second;
    }
    // Degree-0 tuples are listed by vertex.
    std::size_t vertex_tuple(int v) const { return static_cast<std::size_t>(v); }

    std::size_t size() const { return elements_.size(); }
    std::pair<std::size_t, std::size_t> element(std::size_t i) const { return elements_.at(i); }
    std::size_t at(std::size_t t, std::size_t value) const { return element_index_.at({t, value}); }
    const std::vector<std::pair<std::size_t, std::size_t>>& values_of(std::size_t t) const { return by_tuple_.at(t); }

    std::string label(const ToupieAlgebra& alg, std::size_t i) const {
        const auto& [t, c] = elements_.at(i);
        std::string s = "(";
        for (std::size_t k = 0; k < tuples_[t].size(); ++k)
            s += (k ? "," : "") + alg.path_name(alg.basis_path(tuples_[t][k]));
        return s + ")" + kParallel + alg.path_name(alg.basis_path(c));
    }

private:
    void push(const ToupieAlgebra& alg, const BarTuple& t, int s, int e) {
        std::size_t ti = tuples_.size();
        tuples_.push_back(t);
        ends_.emplace_back(s, e);
        if (degree_ > 0) tuple_index_[t] = ti;
        by_tuple_.emplace_back();
        for (std::size_t c : alg.parallel_paths(s, e)) {
            std::size_t idx = elements_.size();
            elements_.emplace_back(ti, c);
            element_index_[{ti, c}] = idx;
            by_tuple_.back().emplace_back(c, idx);
        }
    }

    int degree_;
    std::vector<BarTuple> tuples_;
    std::vector<std::pair<int, int>> ends_;
    std::map<BarTuple, std::size_t> tuple_index_;
    std::vector<std::pair<std::size_t, std::size_t>> elements_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> element_index_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_tuple_;
};

// The cochain complex Hom_{E^e}(Abar^{(x)*}, A) and its cup and bracket.
class BarComplex {
public:
    explicit BarComplex(const ToupieAlgebra& alg, std::size_t budget = kDefaultBarBudget)
        : alg_(&alg), budget_(budget) {}
    BarComplex(const BarComplex&) = delete;
    BarComplex& operator=(const BarComplex&) = delete;

    const ToupieAlgebra& algebra() const { return *alg_; }
    std::size_t budget() const { return budget_; }

    const BarSpace& space(int n) const {
        auto it = spaces_.find(n);
        if (it == spaces_.end()) it = spaces_.emplace(n, std::make_unique<BarSpace>(*alg_, n, budget_)).first;
        return *it->second;
    }

    // Tuple index of `t` in degree t.size(); degree 0 needs the vertex.
    std::size_t tuple_of(const BarTuple& t, int vertex = -1) const {
        if (t.empty()) return space(0).vertex_tuple(vertex);
        auto i = space(static_cast<int>(t.size())).find(t);
        if (!i) throw ConsistencyError("UnknownTuple", "tuple is not composable");
        return *i;
    }

    Element value(int n, const SparseVector& f, std::size_t t) const {
        Element out;
        for (const auto& [c, idx] : space(n).values_of(t)) {
            auto it = f.find(idx);
            if (it != f.end()) add_entry(out, c, it->second);
        }
        return out;
    }

    // f evaluated on a tuple of nontrivial basis elements; empty tuples use `vertex`.
    Element evaluate(const SparseVector& f, const BarTuple& t, int vertex = -1) const {
        return value(static_cast<int>(t.size()), f, tuple_of(t, vertex));
    }

    // Cochain with value e on tuple t of degree n.
    SparseVector from_value(int n, std::size_t t, const Element& e) const {
        SparseVector out;
        for (const auto& [c, v] : e) add_entry(out, space(n).at(t, c), v);
        return out;
    }

    // epsilon_n : C^n -> C^{n+1}.
    const RationalMatrix& differential(int n) const {
        auto it = diffs_.find(n);
        if (it != diffs_.end()) return it->second;
        const auto& src = space(n);
        const auto& dst = space(n + 1);
        const auto& alg = *alg_;
        RationalMatrix m(dst.size(), src.size());
        for (std::size_t ti = 0; ti < dst.num_tuples(); ++ti) {
            const BarTuple& T = dst.tuple(ti);
            std::size_t first = T.front(), last = T.back();
            auto contribute = [&](std::size_t si, std::size_t left, std::size_t right, const Rational& coef) {
                for (const auto& [c, col] : src.values_of(si)) {
                    Element v = alg.multiply(alg.multiply(Element{{left, Rational(1)}}, Element{{c, Rational(1)}}),
                                             Element{{right, Rational(1)}});
                    for (const auto& [p, x] : v) m.add(dst.at(ti, p), col, coef * x);
                }
            };
            int s = alg.source(alg.basis_path(first));
            int t = alg.target(alg.basis_path(last));
            BarTuple tail(T.begin() + 1, T.end());
            BarTuple head(T.begin(), T.end() - 1);
            int mid_tail = alg.target(alg.basis_path(first));
            int mid_head = alg.source(alg.basis_path(last));
            contribute(tuple_of(tail, mid_tail), first, alg.trivial_id(t), Rational(1));
            for (int i = 1; i <= n; ++i) {
                Element prod = alg.multiply(T[i - 1], T[i]);
                for (const auto& [p, x] : prod) {
                    BarTuple merged(T.begin(), T.begin() + i - 1);
                    merged.push_back(p);
                    merged.insert(merged.end(), T.begin() + i + 1, T.end());
                    contribute(tuple_of(merged), alg.trivial_id(s), alg.trivial_id(t),
                               (i % 2 ? Rational(-1) : Rational(1)) * x);
                }
            }
            contribute(tuple_of(head, mid_head), alg.trivial_id(s), last,
                       (n + 1) % 2 ? Rational(-1) : Rational(1));
        }
        return diffs_.emplace(n, std::move(m)).first->second;
    }

    std::size_t rank(int n) const {
        auto it = ranks_.find(n);
        if (it != ranks_.end()) return it->second;
        return ranks_[n] = differential(n).rank();
    }

    std::size_t dimension(int n) const {
        std::size_t d = space(n).size() - rank(n);
        if (n > 0) d -= rank(n - 1);
        return d;
    }

    bool is_cocycle(int n, const SparseVector& x) const { return differential(n).apply(x).empty(); }

    // Exact membership in Im epsilon_{n-1}.
    bool is_coboundary(int n, const SparseVector& x) const {
        if (x.empty()) return true;
        if (n == 0) return false;
        return image(n - 1).contains(x);
    }

    // (f o g)(a_1..a_{m+n-1}) = sum_i (-1)^{(i-1)(n-1)} f(.., g(a_i..), ..)
    SparseVector circle(int m, const SparseVector& f, int n, const SparseVector& g) const {
        int d = m + n - 1;
        if (m < 1 || d < 0) return {};
        const auto& dst = space(d);
        SparseVector out;
        for (std::size_t ti = 0; ti < dst.num_tuples(); ++ti) {
            const BarTuple& T = dst.tuple(ti);
            Element acc;
            for (int i = 1; i <= m; ++i) {
                BarTuple inner(T.begin() + i - 1, T.begin() + i - 1 + n);
                int vertex = n == 0 ? inner_vertex(T, i - 1, dst.tuple_source(ti)) : -1;
                Element gv = evaluate(g, inner, vertex);
                Rational sign = ((i - 1) * (n - 1)) % 2 ? Rational(-1) : Rational(1);
                for (const auto& [c, x] : gv) {
                    if (alg_->basis_path(c).is_trivial()) continue;  // Abar kills idempotents
                    BarTuple outer(T.begin(), T.begin() + i - 1);
                    outer.push_back(c);
                    outer.insert(outer.end(), T.begin() + i - 1 + n, T.end());
                    add_scaled(acc, sign * x, evaluate(f, outer));
                }
            }
            add_scaled(out, Rational(1), from_value(d, ti, acc));
        }
        return out;
    }

    SparseVector bracket(int m, const SparseVector& f, int n, const SparseVector& g) const {
        SparseVector out = circle(m, f, n, g);
        Rational sign = ((m - 1) * (n - 1)) % 2 ? Rational(-1) : Rational(1);
        add_scaled(out, -sign, circle(n, g, m, f));
        return out;
    }

    SparseVector cup(int m, const SparseVector& f, int n, const SparseVector& g) const {
        const auto& dst = space(m + n);
        SparseVector out;
        for (std::size_t ti = 0; ti < dst.num_tuples(); ++ti) {
            const BarTuple& T = dst.tuple(ti);
            BarTuple left(T.begin(), T.begin() + m), right(T.begin() + m, T.end());
            int mid = m == 0 ? dst.tuple_source(ti) : alg_->target(alg_->basis_path(T[m - 1]));
            Element v = alg_->multiply(evaluate(f, left, mid), evaluate(g, right, mid));
            add_scaled(out, Rational(1), from_value(m + n, ti, v));
        }
        return out;
    }

private:
    // Vertex between positions k-1 and k of T.
    int inner_vertex(const BarTuple& T, std::size_t k, int source) const {
        if (k == 0) return source;
        return alg_->target(alg_->basis_path(T[k - 1]));
    }

    const Echelon& image(int n) const {
        auto it = images_.find(n);
        if (it != images_.end()) return it->second;
        return images_.emplace(n, differential(n).image()).first->second;
    }

    const ToupieAlgebra* alg_;
    std::size_t budget_;
    mutable std::map<int, std::unique_ptr<BarSpace>> spaces_;
    mutable std::map<int, RationalMatrix> diffs_;
    mutable std::map<int, std::size_t> ranks_;
    mutable std::map<int, Echelon> images_;
};

// dim HH^n from the bar complex for n = 0..max_degree; throws BudgetExceeded.
inline std::vector<std::size_t> oracle_dimensions(const BarComplex& bar, int max_degree) {
    std::vector<std::size_t> out;
    for (int n = 0; n <= max_degree; ++n) out.push_back(bar.dimension(n));
    return out;
}

// Comparison morphisms phi : P -> Bar and eta : Bar -> P built from the two
// contracting homotopies, with the closed forms of the low degrees alongside.
class ComparisonMorphisms {
public:
    ComparisonMorphisms(const MinimalComplex& min, const BarComplex& bar, int cap = 4)
        : min_(&min), bar_(&bar), cap_(cap) {}

    int cap() const { return cap_; }

    // phi_h(1 (x) g (x) 1) = t(phi_{h-1}(d_h g)).
    const BarTensor& phi(int h, int g) const {
        check_cap(h);
        auto key = std::make_pair(h, g);
        auto it = phi_cache_.find(key);
        if (it != phi_cache_.end()) return it->second;
        const auto& alg = algebra();
        BarTensor out;
        if (h == 0) {
            std::size_t e = alg.trivial_id(res().generators(0).at(g).index);
            add_term(out, e, BarTuple{}, e, Rational(1));
        } else {
            BarTensor lower;
            for (const auto& [k, v] : res().boundary_of(h, g))
                add_tensor(lower, v, sandwich(alg, std::get<0>(k), phi(h - 1, std::get<1>(k)), std::get<2>(k)));
            out = bar_contract(lower);
        }
        return phi_cache_.emplace(key, std::move(out)).first->second;
    }

    // eta_h(1 (x) T (x) 1) = s(eta_{h-1}(delta T)); degree 0 needs the vertex.
    const Tensor<int>& eta(const BarTuple& T, int vertex = -1) const {
        int h = static_cast<int>(T.size());
        check_cap(h);
        auto key = std::make_pair(T, h == 0 ? vertex : -1);
        auto it = eta_cache_.find(key);
        if (it != eta_cache_.end()) return it->second;
        const auto& alg = algebra();
        Tensor<int> out;
        if (h == 0) {
            add_term(out, alg.trivial_id(vertex), vertex, alg.trivial_id(vertex), Rational(1));
        } else {
            Tensor<int> lower;
            for (const auto& [k, v] : bar_boundary(T)) {
                const BarTuple& t2 = std::get<1>(k);
                int vtx = t2.empty() ? alg.target(alg.basis_path(std::get<0>(k))) : -1;
                add_tensor(lower, v, sandwich(alg, std::get<0>(k), eta(t2, vtx), std::get<2>(k)));
            }
            out = res().contract(h - 1, lower);
        }
        return eta_cache_.emplace(key, std::move(out)).first->second;
    }

    // delta(1 (x) a_1..a_h (x) 1) in the bar resolution.
    BarTensor bar_boundary(const BarTuple& T) const {
        const auto& alg = algebra();
        BarTensor out;
        int h = static_cast<int>(T.size());
        std::size_t es = alg.trivial_id(alg.source(alg.basis_path(T.front())));
        std::size_t et = alg.trivial_id(alg.target(alg.basis_path(T.back())));
        add_term(out, T.front(), BarTuple(T.begin() + 1, T.end()), et, Rational(1));
        for (int i = 1; i < h; ++i)
            for (const auto& [p, x] : alg.multiply(T[i - 1], T[i])) {
                BarTuple merged(T.begin(), T.begin() + i - 1);
                merged.push_back(p);
                merged.insert(merged.end(), T.begin() + i + 1, T.end());
                add_term(out, es, merged, et, (i % 2 ? Rational(-1) : Rational(1)) * x);
            }
        add_term(out, es, BarTuple(T.begin(), T.end() - 1), T.back(), h % 2 ? Rational(-1) : Rational(1));
        return out;
    }

    // t(a0 (x) T (x) a) = 1 (x) [a0, T] (x) a, zero on idempotent a0.
    BarTensor bar_contract(const BarTensor& x) const {
        const auto& alg = algebra();
        BarTensor out;
        for (const auto& [k, v] : x) {
            const auto& [a0, T, a] = k;
            const Path& p = alg.basis_path(a0);
            if (p.is_trivial()) continue;
            BarTuple t2{a0};
            t2.insert(t2.end(), T.begin(), T.end());
            add_term(out, alg.trivial_id(alg.source(p)), t2, a, v);
        }
        return out;
    }

    // Closed forms of phi in degrees 1..3.
    BarTensor phi_closed(int h, int g) const {
        const auto& alg = algebra();
        const auto& gen = res().generators(h).at(g);
        BarTensor out;
        if (h == 1) {
            std::size_t a = *alg.basis_id(gen.chain.path());
            add_term(out, alg.trivial_id(gen.source), BarTuple{a}, alg.trivial_id(gen.target), Rational(1));
        } else if (h == 2) {
            // sum over r = r1 arrow r3 with r1 nontrivial of 1 (x) r1 (x) arrow (x) r3
            if (gen.kind == GeneratorKind::LinearRelation) {
                const auto& rel = alg.relations()[gen.index];
                for (int b : rel.branches())
                    add_prefix_splits(out, BarTuple{}, b, 0, alg.branch_length(b), rel.coefficient(b));
            } else {
                add_prefix_splits(out, BarTuple{}, gen.chain.branch, gen.chain.start, gen.chain.length, Rational(1));
            }
        } else if (h == 3) {
            // u = w2 (w1 w0): 1 (x) w2 (x) (w1w0)^(1) (x) arrow (x) (w1w0)^(3)
            auto right = right_factorization(alg, gen.chain);
            const Path& w2 = right.front();
            std::size_t w2id = *alg.basis_id(w2);
            add_prefix_splits(out, BarTuple{w2id}, gen.chain.branch, w2.end(), gen.chain.end() - w2.end(),
                              Rational(1));
        } else {
            throw Error("DegreeUnsupported", "closed form of phi is available up to degree 3");
        }
        return out;
    }

    // Closed forms of eta in degrees 1..3.
    Tensor<int> eta_closed(const BarTuple& T) const {
        const auto& alg = algebra();
        int h = static_cast<int>(T.size());
        Tensor<int> out;
        if (h == 1) {
            const Path& p = alg.basis_path(T[0]);
            for (int j = p.start; j < p.end(); ++j)
                add_terms(out, alg.reduce_run(p.branch, p.start, j - p.start), alg.arrow_id(p.branch, j),
                          alg.reduce_run(p.branch, j + 1, p.end() - j - 1), Rational(1));
            return out;
        }
        if (h != 2 && h != 3) throw Error("DegreeUnsupported", "closed form of eta is available in degrees 1..3");
        const Path& first = alg.basis_path(T.front());
        int b = first.branch, s = first.start;
        int len12 = first.length + alg.basis_path(T[1]).length;
        if (h == 2) {
            if (alg.contains_window(b, s, len12)) {
                const Window& w = last_window(b, s, len12);
                add_terms(out, alg.reduce_run(b, s, w.start - s), *res().chain_generator(1, b, w.start),
                          alg.reduce_run(b, w.end(), s + len12 - w.end()), Rational(1));
            } else if (s == 0 && len12 == alg.branch_length(b) && alg.pivot_relation(b) >= 0) {
                add_term(out, alg.trivial_id(kSource), alg.pivot_relation(b), alg.trivial_id(kSink), Rational(1));
            }
            return out;
        }
        int len = len12 + alg.basis_path(T[2]).length;
        if (!alg.contains_window(b, s, len12)) return out;
        const Window& sigma = last_window(b, s, len12);
        const Window& delta = last_window(b, s, len);
        if (delta.start >= sigma.end()) return out;  // disjoint
        const auto& chains = res().chains();
        const auto& all = chains.of_order(2);
        for (std::size_t i : chains.contained(2, b, s, len)) {
            const auto& c = all[i];
            if (c.start < sigma.start) continue;
            add_terms(out, alg.reduce_run(b, s, c.start - s), *res().chain_generator(2, b, c.start),
                      alg.reduce_run(b, c.end(), s + len - c.end()), Rational(1));
        }
        return out;
    }

    // phi*_h : bar C^h -> minimal C^h.
    RationalMatrix phi_star(int h) const {
        check_cap(h);
        const auto& alg = algebra();
        const auto& dst = min_->space(h);
        const auto& src = bar_->space(h);
        RationalMatrix m(dst.size(), src.size());
        const auto& gens = res().generators(h);
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (const auto& [k, v] : phi(h, static_cast<int>(g))) {
                const auto& [lambda, T, mu] = k;
                std::size_t ti = bar_->tuple_of(T, gens[g].source);
                for (const auto& [c, col] : src.values_of(ti))
                    for (const auto& [p, x] : alg.multiply(alg.multiply(Element{{lambda, Rational(1)}},
                                                                        Element{{c, Rational(1)}}),
                                                           Element{{mu, Rational(1)}}))
                        m.add(dst.at(static_cast<int>(g), p), col, v * x);
            }
        return m;
    }

    // eta*_h : minimal C^h -> bar C^h.
    RationalMatrix eta_star(int h) const {
        check_cap(h);
        const auto& alg = algebra();
        const auto& src = min_->space(h);
        const auto& dst = bar_->space(h);
        RationalMatrix m(dst.size(), src.size());
        for (std::size_t ti = 0; ti < dst.num_tuples(); ++ti)
            for (const auto& [k, v] : eta(dst.tuple(ti), dst.tuple_source(ti))) {
                const auto& [lambda, g, mu] = k;
                for (const auto& [c, col] : src.values_of(g))
                    for (const auto& [p, x] : alg.multiply(alg.multiply(Element{{lambda, Rational(1)}},
                                                                        Element{{c, Rational(1)}}),
                                                           Element{{mu, Rational(1)}}))
                        m.add(dst.at(ti, p), col, v * x);
            }
        return m;
    }

    // Lift a minimal cochain to the bar complex and back.
    SparseVector lift(int h, const SparseVector& f) const { return eta_star_cached(h).apply(f); }
    SparseVector restrict(int h, const SparseVector& F) const { return phi_star_cached(h).apply(F); }

private:
    const MinimalResolution& res() const { return min_->resolution(); }
    const ToupieAlgebra& algebra() const { return min_->algebra(); }

    void check_cap(int h) const {
        if (h > cap_)
            throw Error("DegreeUnsupported", "comparison morphisms are capped at degree " + std::to_string(cap_));
    }

    const Window& last_window(int b, int s, int len) const {
        const Window* last = nullptr;
        for (const auto& w : algebra().windows(b))
            if (w.start >= s && w.end() <= s + len) last = &w;
        return *last;
    }

    // prefix (x) r1 (x) arrow (x) r3 for every split of the run with r1 nontrivial.
    void add_prefix_splits(BarTensor& out, const BarTuple& prefix, int b, int start, int length,
                           const Rational& c) const {
        const auto& alg = algebra();
        std::size_t es = prefix.empty() ? alg.trivial_id(alg.vertex(b, start))
                                        : alg.trivial_id(alg.source(alg.basis_path(prefix.front())));
        for (int j = start + 1; j < start + length; ++j) {
            BarTuple t = prefix;
            t.push_back(*alg.basis_id(Path::run(b, start, j - start)));
            t.push_back(*alg.basis_id(Path::run(b, j, 1)));
            for (const auto& [r3, x] : alg.reduce_run(b, j + 1, start + length - j - 1)) add_term(out, es, t, r3, c * x);
        }
    }

    const RationalMatrix& eta_star_cached(int h) const {
        auto it = eta_star_.find(h);
        if (it == eta_star_.end()) it = eta_star_.emplace(h, eta_star(h)).first;
        return it->second;
    }
    const RationalMatrix& phi_star_cached(int h) const {
        auto it = phi_star_.find(h);
        if (it == phi_star_.end()) it = phi_star_.emplace(h, phi_star(h)).first;
        return it->second;
    }

    const MinimalComplex* min_;
    const BarComplex* bar_;
    int cap_;
    mutable std::map<std::pair<int, int>, BarTensor> phi_cache_;
    mutable std::map<std::pair<BarTuple, int>, Tensor<int>> eta_cache_;
    mutable std::map<int, RationalMatrix> eta_star_;
    mutable std::map<int, RationalMatrix> phi_star_;
};

// Degree-1 bracket computed in the bar complex: lift, bracket, restrict, project.
inline CohomologyClass oracle_bracket_deg1(const Cohomology& co, const ComparisonMorphisms& cmp,
                                           const BarComplex& bar, const CohomologyClass& x,
                                           const CohomologyClass& y) {
    const auto& b1 = co.basis(1);
    SparseVector F = cmp.lift(1, b1.representative(x));
    SparseVector G = cmp.lift(1, b1.representative(y));
    return b1.project(cmp.restrict(1, bar.bracket(1, F, 1, G)));
}

struct VanishingCheck {
    std::string operation;  // "cup" or "bracket"
    int left_degree = 0;
    int right_degree = 0;
    std::size_t pairs = 0;
    bool certified = true;
    std::string counterexample;  // first offending pair, when any
};

// Lift basis cocycles of HH^m and HH^n, form cup or bracket in the bar complex
// and certify each result is a coboundary by an exact solve.
inline VanishingCheck oracle_vanishing_check(const Cohomology& co, const ComparisonMorphisms& cmp,
                                             const BarComplex& bar, const std::string& operation, int m, int n,
                                             std::size_t sample = 0) {
    bool is_cup = operation == "cup";
    if (!is_cup && operation != "bracket") throw ValidationError("UnknownOperation", operation);
    if (is_cup ? (m < 1 || n < 1) : (m < 2 || n < 2))
        throw ValidationError("DegreeMismatch", operation + " vanishing needs degrees " + (is_cup ? ">= 1" : "> 1"));
    VanishingCheck out{operation, m, n, 0, true, ""};
    const auto& bm = co.basis(m);
    const auto& bn = co.basis(n);
    int target = is_cup ? m + n : m + n - 1;
    for (std::size_t i = 0; i < bm.size(); ++i) {
        SparseVector F = cmp.lift(m, bm.at(i).cochain);
        for (std::size_t j = 0; j < bn.size(); ++j) {
            if (sample && out.pairs >= sample) return out;
            SparseVector G = cmp.lift(n, bn.at(j).cochain);
            SparseVector r = is_cup ? bar.cup(m, F, n, G) : bar.bracket(m, F, n, G);
            ++out.pairs;
            if (!bar.is_cocycle(target, r) || !bar.is_coboundary(target, r)) {
                out.certified = false;
                if (out.counterexample.empty()) out.counterexample = bm.at(i).label + ", " + bn.at(j).label;
            }
        }
    }
    return out;
}

}  // namespace toupie
