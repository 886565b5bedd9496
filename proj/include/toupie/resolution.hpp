#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "ambiguity.hpp"

namespace toupie {

enum class GeneratorKind { Vertex, Arrow, LinearRelation, Chain };

// Free generator of the minimal resolution in a fixed homological degree:
// vertices (degree 0), arrows (1), relations (2), ambiguities (>= 3).
struct Generator {
    GeneratorKind kind = GeneratorKind::Vertex;
    int index = 0;  // vertex id, arrow id, relation index or chain index
    Chain chain;    // arrows and chains only
    int source = 0;
    int target = 0;
};

// Element of a free bimodule A (x) kG (x) A, stored over (left, generator, right)
// with left/right basis paths of A.
template <class G>
using Tensor = std::map<std::tuple<std::size_t, G, std::size_t>, Rational>;

template <class G>
void add_term(Tensor<G>& t, std::size_t left, const G& g, std::size_t right, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_tuple(left, g, right);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

template <class G>
void add_terms(Tensor<G>& t, const Element& left, const G& g, const Element& right, const Rational& c) {
    for (const auto& [l, x] : left)
        for (const auto& [r, y] : right) add_term(t, l, g, r, c * x * y);
}

template <class G>
void add_tensor(Tensor<G>& t, const Rational& c, const Tensor<G>& x) {
    for (const auto& [k, v] : x) add_term(t, std::get<0>(k), std::get<1>(k), std::get<2>(k), c * v);
}

// lambda * x * mu for basis paths lambda, mu.
template <class G>
Tensor<G> sandwich(const ToupieAlgebra& alg, std::size_t lambda, const Tensor<G>& x, std::size_t mu) {
    Tensor<G> out;
    for (const auto& [k, v] : x) {
        Element l = alg.multiply(lambda, std::get<0>(k));
        if (l.empty()) continue;
        Element r = alg.multiply(std::get<2>(k), mu);
        add_terms(out, l, std::get<1>(k), r, v);
    }
    return out;
}

class MinimalResolution {
public:
    explicit MinimalResolution(const ToupieAlgebra& alg) : alg_(&alg), chains_(alg) {}

    const ToupieAlgebra& algebra() const { return *alg_; }
    const ChainIndex& chains() const { return chains_; }

    const std::vector<Generator>& generators(int h) const {
        auto it = gens_.find(h);
        if (it != gens_.end()) return it->second;
        std::vector<Generator> out;
        const auto& alg = *alg_;
        if (h == 0) {
            for (int v = 0; v < alg.num_vertices(); ++v) out.push_back({GeneratorKind::Vertex, v, {}, v, v});
        } else if (h == 1) {
            for (int id = 0; id < alg.num_arrows(); ++id) {
                const auto& a = alg.arrow(id);
                Chain c{a.branch, a.offset, 1, 0};
                out.push_back({GeneratorKind::Arrow, id, c, alg.source(c.path()), alg.target(c.path())});
            }
        } else {
            if (h == 2)
                for (std::size_t i = 0; i < alg.relations().size(); ++i)
                    out.push_back({GeneratorKind::LinearRelation, static_cast<int>(i), {}, kSource, kSink});
            const auto& cs = chains_.of_order(h - 1);
            for (std::size_t i = 0; i < cs.size(); ++i)
                out.push_back({GeneratorKind::Chain, static_cast<int>(i), cs[i], alg.source(cs[i].path()),
                               alg.target(cs[i].path())});
        }
        return gens_.emplace(h, std::move(out)).first->second;
    }

    // Generator position (in degree order+1) of the order-`order` chain starting at `start`.
    std::optional<int> chain_generator(int order, int branch, int start) const {
        auto i = chains_.find(order, branch, start);
        if (!i) return std::nullopt;
        int offset = order == 1 ? static_cast<int>(alg_->relations().size()) : 0;
        return offset + static_cast<int>(*i);
    }

    std::string generator_name(int h, int g) const {
        const auto& gen = generators(h).at(g);
        switch (gen.kind) {
            case GeneratorKind::Vertex: return alg_->vertex_name(gen.index);
            case GeneratorKind::Arrow: return alg_->path_name(gen.chain.path());
            case GeneratorKind::LinearRelation: return "rho" + std::to_string(gen.index + 1);
            case GeneratorKind::Chain: {
                const auto& c = gen.chain;
                std::string args = std::to_string(c.branch + 1) + "," + std::to_string(c.start) + "," +
                                   std::to_string(c.length);
                return (h == 2 ? "sigma(" : "amb(") + args + ")";
            }
        }
        return "?";
    }

    // Differential out of degree h on the generator 1 (x) g (x) 1.
    const Tensor<int>& boundary_of(int h, int g) const {
        auto key = std::make_pair(h, g);
        auto it = boundary_cache_.find(key);
        if (it != boundary_cache_.end()) return it->second;
        Tensor<int> out = compute_boundary(h, g);
        return boundary_cache_.emplace(key, std::move(out)).first->second;
    }

    Tensor<int> boundary(int h, const Tensor<int>& x) const {
        Tensor<int> out;
        for (const auto& [k, v] : x)
            add_tensor(out, v, sandwich(*alg_, std::get<0>(k), boundary_of(h, std::get<1>(k)), std::get<2>(k)));
        return out;
    }

    // Multiplication map out of degree 0.
    Element augment(const Tensor<int>& x) const {
        Element out;
        for (const auto& [k, v] : x) add_scaled(out, v, alg_->multiply(std::get<0>(k), std::get<2>(k)));
        return out;
    }

    // Contracting homotopy, degree -1 (from A) into degree 0.
    Tensor<int> contract_unit(const Element& a) const {
        Tensor<int> out;
        for (const auto& [id, c] : a) {
            int t = alg_->target(alg_->basis_path(id));
            add_term(out, id, t, alg_->trivial_id(t), c);
        }
        return out;
    }

    // Contracting homotopy from degree h into degree h+1 (a left module map).
    Tensor<int> contract(int h, const Tensor<int>& x) const {
        Tensor<int> out;
        for (const auto& [k, v] : x) {
            const auto& [lambda, g, a] = k;
            const Tensor<int>& base = contract_of(h, g, a);
            for (const auto& [k2, v2] : base) {
                Element l = alg_->multiply(lambda, std::get<0>(k2));
                for (const auto& [l3, c3] : l) add_term(out, l3, std::get<1>(k2), std::get<2>(k2), v * v2 * c3);
            }
        }
        return out;
    }

    const Tensor<int>& contract_of(int h, int g, std::size_t a) const {
        auto key = std::make_tuple(h, g, a);
        auto it = contract_cache_.find(key);
        if (it != contract_cache_.end()) return it->second;
        Tensor<int> out = compute_contract(h, g, a);
        return contract_cache_.emplace(key, std::move(out)).first->second;
    }

private:
    // (prefix, generator, suffix) terms for every arrow inside the run.
    void add_arrow_splits(Tensor<int>& out, int b, int start, int length, const Rational& c) const {
        const auto& alg = *alg_;
        for (int j = start; j < start + length; ++j) {
            Element pre = alg.reduce_run(b, start, j - start);
            Element suf = alg.reduce_run(b, j + 1, start + length - j - 1);
            add_terms(out, pre, alg.arrow_id(b, j), suf, c);
        }
    }

    void add_chain_splits(Tensor<int>& out, int order, int b, int start, int length, const Rational& c) const {
        const auto& alg = *alg_;
        const auto& all = chains_.of_order(order);
        for (std::size_t i : chains_.contained(order, b, start, length)) {
            const auto& ch = all[i];
            Element pre = alg.reduce_run(b, start, ch.start - start);
            Element suf = alg.reduce_run(b, ch.end(), start + length - ch.end());
            add_terms(out, pre, *chain_generator(order, b, ch.start), suf, c);
        }
    }

    Tensor<int> compute_boundary(int h, int g) const {
        const auto& alg = *alg_;
        const auto& gen = generators(h).at(g);
        Tensor<int> out;
        if (h == 1) {
            Path p = gen.chain.path();
            std::size_t id = *alg.basis_id(p);
            add_term(out, id, gen.target, alg.trivial_id(gen.target), Rational(1));
            add_term(out, alg.trivial_id(gen.source), gen.source, id, Rational(-1));
            return out;
        }
        if (gen.kind == GeneratorKind::LinearRelation) {
            const auto& rel = alg.relations()[gen.index];
            for (int b : rel.branches()) add_arrow_splits(out, b, 0, alg.branch_length(b), rel.coefficient(b));
            return out;
        }
        const Chain& v = gen.chain;
        int n = v.order;
        if (n == 1) {
            add_arrow_splits(out, v.branch, v.start, v.length, Rational(1));
        } else if (n % 2 == 1) {
            add_chain_splits(out, n - 1, v.branch, v.start, v.length, Rational(1));
        } else {
            auto right = right_factorization(alg, v);
            auto left = left_factorization(alg, v);
            const Path& wn = right.front();
            auto tail_gen = chain_generator(n - 1, v.branch, wn.end());
            const Path& un = left.back();
            auto head_gen = chain_generator(n - 1, v.branch, v.start);
            if (!tail_gen || !head_gen)
                throw ConsistencyError("AmbiguityFactorization", "chain " + generator_name(h, g) +
                                                                     " does not split into smaller chains");
            const auto& tail = chains_.of_order(n - 1)[*chains_.find(n - 1, v.branch, wn.end())];
            const auto& head = chains_.of_order(n - 1)[*chains_.find(n - 1, v.branch, v.start)];
            if (tail.end() != v.end() || head.end() != un.start)
                throw ConsistencyError("AmbiguityFactorization", "left and right factorizations of " +
                                                                     generator_name(h, g) + " disagree");
            add_terms(out, alg.reduce(wn), *tail_gen, Element{{alg.trivial_id(gen.target), Rational(1)}},
                      Rational(1));
            add_terms(out, Element{{alg.trivial_id(gen.source), Rational(1)}}, *head_gen, alg.reduce(un),
                      Rational(-1));
        }
        return out;
    }

    Tensor<int> compute_contract(int h, int g, std::size_t a) const {
        const auto& alg = *alg_;
        const Path& ap = alg.basis_path(a);
        Tensor<int> out;
        if (h == 0) {
            if (!ap.is_trivial()) add_arrow_splits(out, ap.branch, ap.start, ap.length, Rational(-1));
            return out;
        }
        const auto& gen = generators(h).at(g);
        if (gen.kind == GeneratorKind::LinearRelation) return out;
        const Chain& w = gen.chain;
        int total = w.length + ap.length;  // w a is a run on w's branch
        if (h == 1) {
            int b = w.branch, j = w.start;
            int rel = alg.pivot_relation(b);
            if (j == 0 && total == alg.branch_length(b) && rel >= 0) {
                // relations come first among the degree-2 generators
                add_term(out, alg.trivial_id(kSource), rel, alg.trivial_id(kSink), Rational(1));
                return out;
            }
            for (const auto& win : alg.windows(b)) {
                if (win.start != j || win.length > total) continue;
                Element rest = alg.reduce_run(b, win.end(), total - win.length);
                add_terms(out, Element{{alg.trivial_id(gen.source), Rational(1)}}, *chain_generator(1, b, j), rest,
                          Rational(1));
            }
            return out;
        }
        Rational sign = (h % 2 == 1) ? Rational(1) : Rational(-1);  // (-1)^(h+1)
        add_chain_splits(out, h, w.branch, w.start, total, sign);
        return out;
    }

    const ToupieAlgebra* alg_;
    ChainIndex chains_;
    mutable std::map<int, std::vector<Generator>> gens_;
    mutable std::map<std::pair<int, int>, Tensor<int>> boundary_cache_;
    mutable std::map<std::tuple<int, int, std::size_t>, Tensor<int>> contract_cache_;
};

}  // namespace toupie
