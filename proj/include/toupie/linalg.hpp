#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toupie {

using Rational = mpq_class;
using SparseVector = std::map<std::size_t, Rational>;

inline void add_scaled(SparseVector& y, const Rational& a, const SparseVector& x) {
    if (a == 0) return;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            y.emplace(k, a * v);
        } else {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

inline void add_entry(SparseVector& y, std::size_t k, const Rational& a) {
    if (a == 0) return;
    auto it = y.find(k);
    if (it == y.end()) {
        y.emplace(k, a);
    } else {
        it->second += a;
        if (it->second == 0) y.erase(it);
    }
}

inline SparseVector scaled(const SparseVector& x, const Rational& a) {
    SparseVector out;
    add_scaled(out, a, x);
    return out;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// "a - 2*b + c/3"-style rendering of a labeled linear combination.
inline std::string format_combination(const std::vector<std::pair<std::string, Rational>>& terms) {
    std::string out;
    for (const auto& [label, c] : terms) {
        if (c == 0) continue;
        Rational mag = abs(c);
        std::string t = mag == 1 ? label : mag.get_str() + "*" + label;
        if (out.empty()) out = (c < 0 ? "-" : "") + t;
        else out += (c < 0 ? " - " : " + ") + t;
    }
    return out.empty() ? "0" : out;
}

// Incremental echelon basis over Q. Every inserted vector keeps a record of the
// combination of original inputs it came from, so the same structure answers
// rank, span membership, solving and kernel questions.
class Echelon {
public:
    // Returns true when v was independent of the vectors inserted so far.
    // When v is dependent and `kernel_out` is given, it receives the relation
    // among originals (tag_of_v - combination) that sums to zero.
    bool insert(const SparseVector& v, std::size_t tag, SparseVector* kernel_out = nullptr) {
        SparseVector combo{{tag, Rational(1)}};
        SparseVector r = v;
        reduce(r, &combo);
        if (r.empty()) {
            if (kernel_out) *kernel_out = std::move(combo);
            return false;
        }
        Rational lead = r.begin()->second;
        std::size_t pivot = r.begin()->first;
        Rational inv = 1 / lead;
        for (auto& [k, c] : r) c *= inv;
        for (auto& [k, c] : combo) c *= inv;
        rows_.emplace(pivot, Row{std::move(r), std::move(combo)});
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

    bool contains(const SparseVector& v) const {
        SparseVector r = v;
        reduce(r, nullptr);
        return r.empty();
    }

    // Coefficients c over inserted tags with v = sum c_tag * original_tag.
    std::optional<SparseVector> express(const SparseVector& v) const {
        SparseVector combo;
        SparseVector r = v;
        reduce(r, &combo);
        if (!r.empty()) return std::nullopt;
        SparseVector out;
        add_scaled(out, Rational(-1), combo);
        return out;
    }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (const auto& [p, row] : rows_) out.push_back(p);
        return out;
    }

private:
    struct Row {
        SparseVector vec;
        SparseVector combo;
    };

    // r <- r - sum coef*row; combo tracks the same operation on tags.
    void reduce(SparseVector& r, SparseVector* combo) const {
        auto it = r.begin();
        while (it != r.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            std::size_t key = it->first;
            Rational coef = it->second;
            add_scaled(r, -coef, row->second.vec);
            if (combo) add_scaled(*combo, -coef, row->second.combo);
            it = r.lower_bound(key);
        }
    }

    std::map<std::size_t, Row> rows_;
};

// Sparse exact matrix stored by columns.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }

    void set_column(std::size_t j, SparseVector v) { cols_.at(j) = std::move(v); }
    const SparseVector& column(std::size_t j) const { return cols_.at(j); }
    void add(std::size_t i, std::size_t j, const Rational& v) { add_entry(cols_.at(j), i, v); }

    Rational at(std::size_t i, std::size_t j) const {
        const auto& c = cols_.at(j);
        auto it = c.find(i);
        return it == c.end() ? Rational(0) : it->second;
    }

    bool is_zero() const {
        for (const auto& c : cols_)
            if (!c.empty()) return false;
        return true;
    }

    SparseVector apply(const SparseVector& x) const {
        SparseVector y;
        for (const auto& [j, v] : x) add_scaled(y, v, cols_.at(j));
        return y;
    }

    // this * other
    RationalMatrix compose(const RationalMatrix& other) const {
        RationalMatrix out(rows_, other.cols());
        for (std::size_t j = 0; j < other.cols(); ++j) out.set_column(j, apply(other.column(j)));
        return out;
    }

    std::size_t rank() const {
        Echelon e;
        for (std::size_t j = 0; j < cols_.size(); ++j) e.insert(cols_[j], j);
        return e.rank();
    }

    std::vector<SparseVector> kernel() const {
        Echelon e;
        std::vector<SparseVector> out;
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            SparseVector k;
            if (!e.insert(cols_[j], j, &k)) out.push_back(std::move(k));
        }
        return out;
    }

    // Column echelon of the image, tagged by column index.
    Echelon image() const {
        Echelon e;
        for (std::size_t j = 0; j < cols_.size(); ++j) e.insert(cols_[j], j);
        return e;
    }

    std::optional<SparseVector> solve(const SparseVector& b) const { return image().express(b); }

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> cols_;
};

struct RrefResult {
    std::vector<std::vector<Rational>> rows;  // nonzero rows only
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    std::size_t dropped = 0;  // input rows that eliminated to zero
};

// Standard reduced row echelon form of a dense row list.
inline RrefResult rref(std::vector<std::vector<Rational>> rows) {
    RrefResult res;
    if (rows.empty()) return res;
    std::size_t width = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t k = 0; k < width; ++k) rows[i][k] -= f * rows[r][k];
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.dropped = rows.size() - r;
    rows.resize(r);
    res.rows = std::move(rows);
    return res;
}

}  // namespace toupie
