#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "algebra.hpp"

namespace toupie {

// A chain of overlapping monomial tips on one branch. Order 0 chains are
// arrows, order 1 chains are monomial relations and order n >= 2 chains are
// the n-ambiguities.
struct Chain {
    int branch = 0;
    int start = 0;
    int length = 0;
    int order = 0;
    Path path() const { return Path::run(branch, start, length); }
    int end() const { return start + length; }
    auto operator<=>(const Chain&) const = default;
};

struct Ambiguity {
    Path path;
    int degree = 0;
    std::vector<Path> left;   // u_0, u_1, ..., u_n
    std::vector<Path> right;  // v_n, ..., v_1, v_0 read left to right
};

struct ReductionRule {
    Path tip;
    Element replacement;
};

// Last arrow index (inclusive) of the order-n chain starting at arrow p.
inline std::optional<int> chain_last_arrow(const ToupieAlgebra& alg, int b, int p, int n) {
    const auto& ws = alg.windows(b);
    int before = p - 1;  // e_{i-2}
    int current = p;     // e_{i-1}
    for (int i = 1; i <= n; ++i) {
        const Window* next = nullptr;
        for (const auto& w : ws)
            if (w.start >= before + 1) {
                next = &w;
                break;
            }
        if (!next || next->start > current) return std::nullopt;
        before = current;
        current = next->end() - 1;
    }
    return current;
}

// First arrow index of the order-n chain ending at arrow q, built from the right.
inline std::optional<int> right_chain_first_arrow(const ToupieAlgebra& alg, int b, int q, int n) {
    const auto& ws = alg.windows(b);
    int after = q + 1;
    int current = q;
    for (int i = 1; i <= n; ++i) {
        const Window* next = nullptr;
        for (auto it = ws.rbegin(); it != ws.rend(); ++it)
            if (it->end() - 1 <= after - 1) {
                next = &*it;
                break;
            }
        if (!next || next->end() - 1 < current) return std::nullopt;
        after = current;
        current = next->start;
    }
    return current;
}

inline std::vector<Path> left_factorization(const ToupieAlgebra& alg, const Chain& c) {
    const auto& ws = alg.windows(c.branch);
    std::vector<Path> out{Path::run(c.branch, c.start, 1)};
    int before = c.start - 1, current = c.start;
    for (int i = 1; i <= c.order; ++i) {
        const Window* next = nullptr;
        for (const auto& w : ws)
            if (w.start >= before + 1) {
                next = &w;
                break;
            }
        int last = next->end() - 1;
        out.push_back(Path::run(c.branch, current + 1, last - current));
        before = current;
        current = last;
    }
    return out;
}

inline std::vector<Path> right_factorization(const ToupieAlgebra& alg, const Chain& c) {
    const auto& ws = alg.windows(c.branch);
    int q = c.end() - 1;
    std::vector<Path> rev{Path::run(c.branch, q, 1)};
    int after = q + 1, current = q;
    for (int i = 1; i <= c.order; ++i) {
        const Window* next = nullptr;
        for (auto it = ws.rbegin(); it != ws.rend(); ++it)
            if (it->end() - 1 <= after - 1) {
                next = &*it;
                break;
            }
        int first = next->start;
        rev.push_back(Path::run(c.branch, first, current - first));
        after = current;
        current = first;
    }
    return {rev.rbegin(), rev.rend()};
}

// All chains of each order, grouped per order, sorted by (branch, start).
class ChainIndex {
public:
    explicit ChainIndex(const ToupieAlgebra& alg) : alg_(&alg) {}

    const std::vector<Chain>& of_order(int n) const {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        std::vector<Chain> out;
        for (int b = 0; b < alg_->num_branches(); ++b) {
            if (n == 0) {
                for (int p = 0; p < alg_->branch_length(b); ++p) out.push_back({b, p, 1, 0});
                continue;
            }
            for (const auto& w : alg_->windows(b)) {
                auto last = chain_last_arrow(*alg_, b, w.start, n);
                if (last) out.push_back({b, w.start, *last - w.start + 1, n});
            }
        }
        for (std::size_t i = 0; i < out.size(); ++i) positions_[n][{out[i].branch, out[i].start}] = i;
        return cache_.emplace(n, std::move(out)).first->second;
    }

    std::optional<std::size_t> find(int order, int branch, int start) const {
        of_order(order);
        const auto& m = positions_[order];
        auto it = m.find({branch, start});
        if (it == m.end()) return std::nullopt;
        return it->second;
    }

    // Chains of the given order lying inside [start, start+length) on `branch`.
    std::vector<std::size_t> contained(int order, int branch, int start, int length) const {
        std::vector<std::size_t> out;
        const auto& all = of_order(order);
        for (std::size_t i = 0; i < all.size(); ++i) {
            const auto& c = all[i];
            if (c.branch == branch && c.start >= start && c.end() <= start + length) out.push_back(i);
        }
        return out;
    }

    const ToupieAlgebra& algebra() const { return *alg_; }

private:
    const ToupieAlgebra* alg_;
    mutable std::map<int, std::vector<Chain>> cache_;
    mutable std::map<int, std::map<std::pair<int, int>, std::size_t>> positions_;
};

inline std::vector<ReductionRule> reduction_system(const ToupieAlgebra& alg) {
    std::vector<ReductionRule> out;
    for (int b = 0; b < alg.num_branches(); ++b)
        for (const auto& w : alg.windows(b)) out.push_back({Path::run(b, w.start, w.length), {}});
    for (const auto& rel : alg.relations()) {
        Path tip = Path::run(rel.pivot, 0, alg.branch_length(rel.pivot));
        out.push_back({tip, alg.reduce(tip)});
    }
    return out;
}

inline std::vector<Ambiguity> n_ambiguities(const ToupieAlgebra& alg, int n) {
    std::vector<Ambiguity> out;
    ChainIndex idx(alg);
    for (const auto& c : idx.of_order(n))
        out.push_back({c.path(), n, left_factorization(alg, c), right_factorization(alg, c)});
    return out;
}

inline int max_ambiguity_degree(const ToupieAlgebra& alg) {
    ChainIndex idx(alg);
    int n = 2;
    while (!idx.of_order(n).empty()) ++n;
    return n;
}

}  // namespace toupie
