#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resolution.hpp"

namespace toupie {

inline const std::string kParallel = "‖";  // the w‖g separator

// The cochain w‖g: generator w sent to the irreducible path g.
struct CochainBasisElement {
    int generator = 0;
    std::size_t value = 0;
    auto operator<=>(const CochainBasisElement&) const = default;
};

// Hom_{E^e}(kG_h, A) with the basis of pairs w‖g sharing endpoints.
class CochainSpace {
public:
    CochainSpace(const MinimalResolution& res, int degree) : degree_(degree) {
        const auto& alg = res.algebra();
        const auto& gens = res.generators(degree);
        by_generator_.resize(gens.size());
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t c : alg.parallel_paths(gens[g].source, gens[g].target)) {
                // arrows only take nontrivial values; vertices only take their idempotent
                std::size_t idx = elements_.size();
                elements_.push_back({static_cast<int>(g), c});
                index_[{static_cast<int>(g), c}] = idx;
                by_generator_[g].emplace_back(c, idx);
                labels_.push_back(res.generator_name(degree, static_cast<int>(g)) + kParallel +
                                  alg.path_name(alg.basis_path(c)));
            }
    }

    int degree() const { return degree_; }
    std::size_t size() const { return elements_.size(); }
    const CochainBasisElement& element(std::size_t i) const { return elements_.at(i); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::optional<std::size_t> index(int generator, std::size_t value) const {
        auto it = index_.find({generator, value});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t at(int generator, std::size_t value) const { return index_.at({generator, value}); }
    const std::vector<std::pair<std::size_t, std::size_t>>& values_of(int generator) const {
        return by_generator_.at(generator);
    }

    // Value of the cochain on generator g.
    Element value(const SparseVector& cochain, int g) const {
        Element out;
        for (const auto& [c, idx] : by_generator_.at(g)) {
            auto it = cochain.find(idx);
            if (it != cochain.end()) add_entry(out, c, it->second);
        }
        return out;
    }

    // Cochain with value `e` on generator g (e must be parallel to g).
    SparseVector from_value(int g, const Element& e) const {
        SparseVector out;
        for (const auto& [c, coef] : e) {
            auto idx = index(g, c);
            if (!idx) throw ConsistencyError("EndpointMismatch", "value is not parallel to its generator");
            add_entry(out, *idx, coef);
        }
        return out;
    }

    std::string pretty(const SparseVector& v) const {
        std::vector<std::pair<std::string, Rational>> terms;
        for (const auto& [i, c] : v) terms.emplace_back(labels_[i], c);
        return format_combination(terms);
    }

private:
    int degree_;
    std::vector<CochainBasisElement> elements_;
    std::vector<std::string> labels_;
    std::map<std::pair<int, std::size_t>, std::size_t> index_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_generator_;
};

// The complex Hom_{A^e}(P_*, A) of the minimal resolution.
class MinimalComplex {
public:
    explicit MinimalComplex(const ToupieAlgebra& alg) : alg_(&alg), res_(alg) {}
    MinimalComplex(const MinimalComplex&) = delete;
    MinimalComplex& operator=(const MinimalComplex&) = delete;

    const ToupieAlgebra& algebra() const { return *alg_; }
    const MinimalResolution& resolution() const { return res_; }

    const CochainSpace& space(int h) const {
        auto it = spaces_.find(h);
        if (it == spaces_.end()) it = spaces_.emplace(h, std::make_unique<CochainSpace>(res_, h)).first;
        return *it->second;
    }

    // Evaluate a degree-h cochain on an element of P_h.
    Element evaluate(int h, const SparseVector& cochain, const Tensor<int>& x) const {
        const auto& sp = space(h);
        Element out;
        for (const auto& [k, v] : x) {
            Element val = sp.value(cochain, std::get<1>(k));
            if (val.empty()) continue;
            Element l = alg_->multiply(Element{{std::get<0>(k), v}}, val);
            add_scaled(out, Rational(1), alg_->multiply(l, Element{{std::get<2>(k), Rational(1)}}));
        }
        return out;
    }

    // D_h : C^h -> C^{h+1}, i.e. precomposition with the differential out of P_{h+1}.
    const RationalMatrix& differential(int h) const {
        auto it = diffs_.find(h);
        if (it != diffs_.end()) return it->second;
        const auto& src = space(h);
        const auto& dst = space(h + 1);
        RationalMatrix m(dst.size(), src.size());
        const auto& gens = res_.generators(h + 1);
        for (std::size_t g2 = 0; g2 < gens.size(); ++g2) {
            if (dst.values_of(static_cast<int>(g2)).empty()) continue;
            for (const auto& [k, v] : res_.boundary_of(h + 1, static_cast<int>(g2))) {
                const auto& [lambda, g, mu] = k;
                for (const auto& [c, col] : src.values_of(g)) {
                    Element val = alg_->multiply(alg_->multiply(lambda, c), Element{{mu, Rational(1)}});
                    for (const auto& [p, coef] : val) m.add(dst.at(static_cast<int>(g2), p), col, v * coef);
                }
            }
        }
        return diffs_.emplace(h, std::move(m)).first->second;
    }

    std::size_t differential_rank(int h) const {
        auto it = ranks_.find(h);
        if (it != ranks_.end()) return it->second;
        std::size_t r = differential(h).rank();
        ranks_[h] = r;
        return r;
    }

    // dim ker D_h - rank D_{h-1}, computed from the matrices.
    std::size_t cohomology_dimension(int h) const {
        std::size_t dim = space(h).size() - differential_rank(h);
        if (h > 0) dim -= differential_rank(h - 1);
        return dim;
    }

private:
    const ToupieAlgebra* alg_;
    MinimalResolution res_;
    mutable std::map<int, std::unique_ptr<CochainSpace>> spaces_;
    mutable std::map<int, RationalMatrix> diffs_;
    mutable std::map<int, std::size_t> ranks_;
};

}  // namespace toupie
