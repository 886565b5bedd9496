#pragma once

// Instances and independent reference computations shared by the unit tests
// and the acceptance binary. Nothing here calls into the library's invariant
// or ambiguity code: the references work from the raw QuiverSpec.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "toupie/report.hpp"

namespace toupie::testing {

inline LinearRelation linear(std::initializer_list<std::pair<int, int>> coefficients) {
    LinearRelation r;
    for (const auto& [b, c] : coefficients) r.coefficients[b] = Rational(c);
    return r;
}

inline QuiverSpec example_spec() {
    QuiverSpec s;
    s.branch_lengths = {1, 1, 2, 8, 2, 2};
    for (int i = 0; i < 5; ++i) s.monomial_relations.push_back({3, i, 4});
    s.linear_relations.push_back(linear({{4, 1}, {5, -1}}));
    return s;
}

inline QuiverSpec kronecker(int a) {
    QuiverSpec s;
    s.branch_lengths.assign(a, 1);
    return s;
}

inline QuiverSpec commutative_square() {
    QuiverSpec s;
    s.branch_lengths = {2, 2};
    s.linear_relations.push_back(linear({{0, 1}, {1, -1}}));
    return s;
}

inline QuiverSpec canonical_like() {
    QuiverSpec s;
    s.branch_lengths = {2, 3, 4};
    s.linear_relations.push_back(linear({{0, 1}, {1, -1}, {2, 1}}));
    return s;
}

inline QuiverSpec coupled() {
    QuiverSpec s;
    s.branch_lengths = {1, 1, 2, 2, 2, 2};
    s.linear_relations.push_back(linear({{2, 1}, {4, -1}, {5, -1}}));
    s.linear_relations.push_back(linear({{3, 1}, {4, -1}, {5, 1}}));
    return s;
}

// Two overlapping relations covering a whole branch: a 2-ambiguity from 0 to w.
inline QuiverSpec overlap() {
    QuiverSpec s;
    s.branch_lengths = {1, 1, 3};
    s.monomial_relations = {{2, 0, 2}, {2, 1, 2}};
    return s;
}

// One arrow, a free branch and a monomial branch whose relation is the whole branch.
inline QuiverSpec single_arrow_mixed() {
    QuiverSpec s;
    s.branch_lengths = {1, 2, 3};
    s.monomial_relations = {{2, 0, 3}};
    return s;
}

// Three arrows plus a free branch: a = 3 but D = 4.
inline QuiverSpec three_arrows_free() {
    QuiverSpec s;
    s.branch_lengths = {1, 1, 1, 2};
    return s;
}

struct Named {
    std::string name;
    QuiverSpec spec;
};

// Small instances cheap enough for the bar complex through degree 4.
inline std::vector<Named> oracle_instances() {
    return {{"example", example_spec()},
            {"kronecker2", kronecker(2)},
            {"kronecker3", kronecker(3)},
            {"commutative_square", commutative_square()},
            {"canonical_like", canonical_like()},
            {"coupled", coupled()},
            {"overlap", overlap()},
            {"single_arrow_mixed", single_arrow_mixed()},
            {"three_arrows_free", three_arrows_free()}};
}

// ---------------------------------------------------------------------------
// Random toupie instances: at most 8 branches of length at most 10.

inline QuiverSpec random_spec(std::mt19937& rng) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (;;) {
        QuiverSpec s;
        int nb = uniform(1, 8);
        for (int b = 0; b < nb; ++b) s.branch_lengths.push_back(uniform(1, 3) == 1 ? 1 : uniform(2, 10));
        std::vector<int> linear_pool;
        for (int b = 0; b < nb; ++b) {
            int len = s.branch_lengths[b];
            if (len == 1) continue;
            int kind = uniform(0, 2);  // 0 free, 1 monomial, 2 linear candidate
            if (kind == 1) {
                // Non-nested windows: strictly increasing starts and ends.
                int start = uniform(0, len - 2), last_end = 0;
                while (start <= len - 2) {
                    int lo = std::max(2, last_end - start + 1);
                    int hi = len - start;
                    if (lo > hi) break;
                    int length = uniform(lo, std::min(hi, lo + 3));
                    s.monomial_relations.push_back({b, start, length});
                    last_end = start + length;
                    start += uniform(1, 3);
                }
            } else if (kind == 2) {
                linear_pool.push_back(b);
            }
        }
        if (linear_pool.size() >= 2) {
            int rows = uniform(1, static_cast<int>(linear_pool.size()) - 1);
            for (int i = 0; i < rows; ++i) {
                LinearRelation r;
                for (int b : linear_pool)
                    if (uniform(0, 2) > 0) {
                        int c = uniform(-3, 3);
                        r.coefficients[b] = Rational(c == 0 ? 1 : c);
                    }
                s.linear_relations.push_back(r);
            }
        }
        if (!validation_errors(s).empty()) continue;
        try {
            ToupieAlgebra::build(s);
        } catch (const ValidationError&) {
            continue;
        }
        return s;
    }
}

inline std::vector<QuiverSpec> random_specs(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<QuiverSpec> out;
    for (int i = 0; i < count; ++i) out.push_back(random_spec(rng));
    return out;
}

// ---------------------------------------------------------------------------
// Reference invariants computed directly from the raw branch data.

struct RawInvariants {
    int a = 0, l = 0, m = 0, n = 0, rank = 0, D = 0, r = 0, vertices = 0;
};

inline std::vector<std::vector<Rational>> reference_rref(std::vector<std::vector<Rational>> rows) {
    std::size_t next = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
        std::size_t p = next;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[next]);
        Rational inv = 1 / rows[next][c];
        for (auto& x : rows[next]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != next && rows[i][c] != 0) {
                Rational f = rows[i][c];
                for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= f * rows[next][k];
            }
        ++next;
    }
    rows.resize(next);
    return rows;
}

inline RawInvariants raw_invariants(const QuiverSpec& s) {
    RawInvariants v;
    int nb = static_cast<int>(s.branch_lengths.size());
    std::set<int> monomial, linear_set;
    for (const auto& r : s.monomial_relations) monomial.insert(r.branch);
    for (const auto& r : s.linear_relations)
        for (const auto& [b, c] : r.coefficients) linear_set.insert(b);
    v.vertices = 2;
    for (int b = 0; b < nb; ++b) {
        v.vertices += s.branch_lengths[b] - 1;
        if (s.branch_lengths[b] == 1) ++v.a;
        else if (monomial.count(b)) ++v.m;
        else if (linear_set.count(b)) ++v.n;
        else ++v.l;
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : s.linear_relations) {
        std::vector<Rational> row(nb, Rational(0));
        for (const auto& [b, c] : r.coefficients) row[b] = c;
        rows.push_back(row);
    }
    auto reduced = reference_rref(rows);
    v.rank = static_cast<int>(reduced.size());
    v.D = v.a + v.l + v.n - v.rank;
    // Components among free and linear branches, joined by reduced rows.
    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& row : reduced) {
        int first = -1;
        for (int b = 0; b < nb; ++b)
            if (row[b] != 0) {
                if (first < 0) first = b;
                else parent[find(b)] = find(first);
            }
    }
    std::set<int> roots;
    for (int b = 0; b < nb; ++b)
        if (s.branch_lengths[b] > 1 && !monomial.count(b)) roots.insert(find(b));
    v.r = static_cast<int>(roots.size());
    return v;
}

// Chains u_0 u_1 ... u_n on one branch, enumerated from the definition: u_0 is
// an arrow, u_i u_{i+1} contains a relation window ending exactly at the end of
// u_{i+1} and starting inside u_i, and no shorter prefix of u_{i+1} already
// completes a window with u_i. Returns (start, end) pairs in arrow offsets.
inline std::vector<std::pair<int, int>> reference_chains(int length, const std::vector<std::pair<int, int>>& windows,
                                                         int n) {
    auto completes = [&](int from, int to) {  // some window inside [from, to) ending at `to`
        for (const auto& [s, len] : windows)
            if (s >= from && s + len == to) return true;
        return false;
    };
    auto contains = [&](int from, int to) {
        for (const auto& [s, len] : windows)
            if (s >= from && s + len <= to) return true;
        return false;
    };
    std::vector<std::pair<int, int>> out;
    std::function<void(int, int, int, int)> extend = [&](int origin, int us, int ue, int k) {
        if (k == n) {
            out.emplace_back(origin, ue);
            return;
        }
        for (int e = ue + 1; e <= length; ++e) {
            if (!completes(us, e)) continue;
            bool window_starts_inside = false;
            for (const auto& [s, len] : windows)
                if (s >= us && s < ue && s + len == e) window_starts_inside = true;
            if (!window_starts_inside) continue;
            bool minimal = true;
            for (int d = ue + 1; d < e; ++d)
                if (contains(us, d)) minimal = false;
            if (minimal) extend(origin, ue, e, k + 1);
            break;  // longer u_{i+1} would not be minimal
        }
    };
    for (int p = 0; p < length; ++p) extend(p, p, p + 1, 0);
    return out;
}

inline std::size_t reference_chain_count(const QuiverSpec& s, int n, bool zero_omega_only) {
    std::size_t count = 0;
    for (int b = 0; b < static_cast<int>(s.branch_lengths.size()); ++b) {
        std::vector<std::pair<int, int>> w;
        for (const auto& r : s.monomial_relations)
            if (r.branch == b) w.emplace_back(r.start, r.length);
        for (const auto& [st, en] : reference_chains(s.branch_lengths[b], w, n))
            if (!zero_omega_only || (st == 0 && en == s.branch_lengths[b])) ++count;
    }
    return count;
}

inline bool is_identity(const RationalMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.column(j) != SparseVector{{j, Rational(1)}}) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Expected values for the worked example.

struct GoldenBracket {
    std::string left, right, result;  // result is a signed basis label
};

inline const std::vector<std::string> kExampleH1 = {"y4",  "w12", "w21", "x2", "z13",
                                                    "z23", "z16", "z26", "t1", "t2"};
inline const std::vector<std::string> kExampleH2 = {"rho1‖a1", "rho1‖a2", "rho1‖a3"};
inline const std::vector<std::string> kExampleH4 = {"amb(4,0,8)‖a1", "amb(4,0,8)‖a2", "amb(4,0,8)‖a3",
                                                    "amb(4,0,8)‖a6"};

inline const std::vector<GoldenBracket> kExampleBrackets = {
    {"w12", "rho1‖a1", "rho1‖a2"},
    {"x2", "rho1‖a1", "-rho1‖a1"},
    {"z13", "rho1‖a1", "rho1‖a3"},
    {"t2", "rho1‖a1", "-rho1‖a1"},
    {"w21", "rho1‖a2", "rho1‖a1"},
    {"x2", "rho1‖a2", "rho1‖a2"},
    {"z23", "rho1‖a2", "rho1‖a3"},
    {"t2", "rho1‖a2", "-rho1‖a2"},
    {"t1", "rho1‖a3", "rho1‖a3"},
    {"t2", "rho1‖a3", "-rho1‖a3"},
    {"y4", "amb(4,0,8)‖a1", "-amb(4,0,8)‖a1"},
    {"w12", "amb(4,0,8)‖a1", "amb(4,0,8)‖a2"},
    {"x2", "amb(4,0,8)‖a1", "-amb(4,0,8)‖a1"},
    {"z13", "amb(4,0,8)‖a1", "amb(4,0,8)‖a3"},
    {"z16", "amb(4,0,8)‖a1", "amb(4,0,8)‖a6"},
    {"y4", "amb(4,0,8)‖a2", "-amb(4,0,8)‖a2"},
    {"w21", "amb(4,0,8)‖a2", "amb(4,0,8)‖a1"},
    {"x2", "amb(4,0,8)‖a2", "amb(4,0,8)‖a2"},
    {"z23", "amb(4,0,8)‖a2", "amb(4,0,8)‖a3"},
    {"z26", "amb(4,0,8)‖a2", "amb(4,0,8)‖a6"},
    {"y4", "amb(4,0,8)‖a3", "-amb(4,0,8)‖a3"},
    {"t1", "amb(4,0,8)‖a3", "amb(4,0,8)‖a3"},
    {"y4", "amb(4,0,8)‖a6", "-amb(4,0,8)‖a6"},
    {"t2", "amb(4,0,8)‖a6", "amb(4,0,8)‖a6"},
};

}  // namespace toupie::testing
