#ifndef GRADEDPI_SPARSE_HPP
#define GRADEDPI_SPARSE_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gradedpi/errors.hpp"
#include "gradedpi/scalars.hpp"

namespace gradedpi {

// sparse vector: entries sorted by index, all values nonzero
using SparseVec = std::vector<std::pair<int, Scalar>>;

inline bool sv_is_zero(const SparseVec& v) { return v.empty(); }

inline Scalar sv_get(const SparseVec& v, int idx, const FieldSpec& spec) {
    for (const auto& [i, x] : v) {
        if (i == idx) return x;
        if (i > idx) break;
    }
    return Scalar::zero(spec);
}

inline SparseVec sv_scale(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return {};
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) {
        Scalar y = Scalar::mul(x, c);
        if (!y.is_zero()) out.emplace_back(i, std::move(y));
    }
    return out;
}

// a + c*b
inline SparseVec sv_add_scaled(const SparseVec& a, const SparseVec& b, const Scalar& c) {
    if (c.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || b[j].first < a[i].first) {
            Scalar y = Scalar::mul(b[j].second, c);
            if (!y.is_zero()) out.emplace_back(b[j].first, std::move(y));
            ++j;
        } else {
            Scalar y = Scalar::add(a[i].second, Scalar::mul(b[j].second, c));
            if (!y.is_zero()) out.emplace_back(a[i].first, std::move(y));
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec sv_from_dense(const std::vector<Scalar>& d) {
    SparseVec out;
    for (size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) out.emplace_back(static_cast<int>(i), d[i]);
    return out;
}

inline std::vector<Scalar> sv_to_dense(const SparseVec& v, size_t n, const FieldSpec& spec) {
    std::vector<Scalar> out(n, Scalar::zero(spec));
    for (const auto& [i, x] : v) out[static_cast<size_t>(i)] = x;
    return out;
}

// ---------------------------------------------------------------------------
// Echelon: incremental row echelon basis of a span of sparse vectors.
// Rows are keyed by pivot column and kept pivot-normalized; insertion order
// is deterministic, the fully reduced form (rref) is canonical.
// ---------------------------------------------------------------------------

class Echelon {
public:
    explicit Echelon(const FieldSpec& spec) : spec_(spec) {}

    const FieldSpec& spec() const { return spec_; }
    size_t dim() const { return rows_.size(); }

    // residual of v after reduction against the current rows
    SparseVec reduce(SparseVec v) const {
        while (!sv_is_zero(v)) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) break;
            v = sv_add_scaled(v, it->second, Scalar::neg(v.front().second));
        }
        return v;
    }

    bool contains(const SparseVec& v) const { return sv_is_zero(reduce(v)); }

    // returns true when v enlarged the span
    bool insert(SparseVec v) {
        v = reduce(std::move(v));
        if (sv_is_zero(v)) return false;
        const Scalar pivot = v.front().second;
        v = sv_scale(v, Scalar::inv(pivot));
        const int lead = v.front().first;
        rows_.emplace(lead, std::move(v));
        return true;
    }

    std::vector<int> pivots() const {
        std::vector<int> out;
        out.reserve(rows_.size());
        for (const auto& [p, _] : rows_) out.push_back(p);
        return out;
    }

    // canonical reduced row echelon rows, sorted by pivot
    std::vector<SparseVec> rref() const {
        std::vector<SparseVec> rows;
        rows.reserve(rows_.size());
        for (const auto& [_, r] : rows_) rows.push_back(r);
        for (size_t i = rows.size(); i-- > 0;) {
            const int pivot = rows[i].front().first;
            for (size_t j = 0; j < i; ++j) {
                const Scalar c = sv_get(rows[j], pivot, spec_);
                if (!c.is_zero()) rows[j] = sv_add_scaled(rows[j], rows[i], Scalar::neg(c));
            }
        }
        return rows;
    }

    // canonical basis of { x in F^ncols : r . x = 0 for every row r }
    std::vector<SparseVec> nullspace(int ncols) const {
        const std::vector<SparseVec> rows = rref();
        std::vector<bool> is_pivot(ncols, false);
        for (const auto& r : rows) is_pivot[r.front().first] = true;
        std::vector<SparseVec> out;
        for (int f = 0; f < ncols; ++f) {
            if (is_pivot[f]) continue;
            SparseVec x;
            for (const auto& r : rows) {
                const Scalar c = sv_get(r, f, spec_);
                if (!c.is_zero()) x.emplace_back(r.front().first, Scalar::neg(c));
            }
            x.emplace_back(f, Scalar::one(spec_));
            std::sort(x.begin(), x.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            // normalize the leading coefficient to one
            x = sv_scale(x, Scalar::inv(x.front().second));
            out.push_back(std::move(x));
        }
        return out;
    }

private:
    FieldSpec spec_;
    std::map<int, SparseVec> rows_;
};

// ---------------------------------------------------------------------------
// SpanSolver: echelon basis that can express members as exact combinations
// of the originally inserted (independent) vectors.
// ---------------------------------------------------------------------------

class SpanSolver {
public:
    explicit SpanSolver(const FieldSpec& spec) : spec_(spec) {}

    size_t dim() const { return count_; }

    bool insert(const SparseVec& v) {
        std::vector<Scalar> expr(count_ + 1, Scalar::zero(spec_));
        expr[count_] = Scalar::one(spec_);
        SparseVec red = reduce_tracked(v, expr);
        if (sv_is_zero(red)) return false;
        const Scalar pivot_inv = Scalar::inv(red.front().second);
        red = sv_scale(red, pivot_inv);
        for (auto& x : expr) x = Scalar::mul(x, pivot_inv);
        const int lead = red.front().first;
        rows_.emplace(lead, Row{std::move(red), std::move(expr)});
        ++count_;
        return true;
    }

    // coefficients over the inserted independent vectors, if v lies in the span
    std::optional<std::vector<Scalar>> express(const SparseVec& v) const {
        std::vector<Scalar> expr(count_, Scalar::zero(spec_));
        SparseVec red = v;
        while (!sv_is_zero(red)) {
            auto it = rows_.find(red.front().first);
            if (it == rows_.end()) return std::nullopt;
            const Scalar c = red.front().second;
            red = sv_add_scaled(red, it->second.vec, Scalar::neg(c));
            for (size_t k = 0; k < it->second.expr.size(); ++k)
                expr[k] = Scalar::add(expr[k], Scalar::mul(c, it->second.expr[k]));
        }
        return expr;
    }

private:
    struct Row {
        SparseVec vec;
        std::vector<Scalar> expr; // over inserted vectors, padded with zeros
    };

    SparseVec reduce_tracked(SparseVec v, std::vector<Scalar>& expr) const {
        while (!sv_is_zero(v)) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) break;
            const Scalar c = Scalar::neg(v.front().second);
            v = sv_add_scaled(v, it->second.vec, c);
            for (size_t k = 0; k < it->second.expr.size(); ++k)
                expr[k] = Scalar::add(expr[k], Scalar::mul(c, it->second.expr[k]));
        }
        return v;
    }

    FieldSpec spec_;
    std::map<int, Row> rows_;
    size_t count_ = 0;
};

} // namespace gradedpi

#endif
