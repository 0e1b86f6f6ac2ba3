#ifndef GRADEDPI_MATRIX_HPP
#define GRADEDPI_MATRIX_HPP

#include <optional>
#include <vector>

#include "gradedpi/errors.hpp"
#include "gradedpi/scalars.hpp"

namespace gradedpi {

// dense matrix over an exact field; used for small blocks (iso witnesses,
// centroid solves, field tests) where sparsity buys nothing
class Mat {
public:
    Mat() = default;
    Mat(const FieldSpec& spec, size_t rows, size_t cols)
        : spec_(spec), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(spec)) {}

    static Mat identity(const FieldSpec& spec, size_t n) {
        Mat m(spec, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(spec);
        return m;
    }

    const FieldSpec& spec() const { return spec_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat mul(const Mat& o) const {
        if (cols_ != o.rows_) fail(ErrorCode::ShapeMismatch, "matrix product shape");
        Mat r(spec_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Scalar& x = at(i, k);
                if (x.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) {
                    const Scalar& y = o.at(k, j);
                    if (y.is_zero()) continue;
                    r.at(i, j) = Scalar::add(r.at(i, j), Scalar::mul(x, y));
                }
            }
        return r;
    }

    Mat add(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::ShapeMismatch, "matrix sum shape");
        Mat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = Scalar::add(r.a_[i], o.a_[i]);
        return r;
    }

    Mat scale(const Scalar& c) const {
        Mat r = *this;
        for (auto& x : r.a_) x = Scalar::mul(x, c);
        return r;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (v.size() != cols_) fail(ErrorCode::ShapeMismatch, "matrix-vector shape");
        std::vector<Scalar> out(rows_, Scalar::zero(spec_));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero())
                    out[i] = Scalar::add(out[i], Scalar::mul(at(i, j), v[j]));
        return out;
    }

    size_t rank() const {
        Mat m = *this;
        return m.row_reduce();
    }

    std::optional<Mat> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        Mat aug(spec_, rows_, 2 * cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = Scalar::one(spec_);
        }
        aug.row_reduce();
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (i == j ? !aug.at(i, j).is_one() : !aug.at(i, j).is_zero())
                    return std::nullopt;
        Mat inv(spec_, rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    // in-place Gauss-Jordan; returns rank
    size_t row_reduce() {
        size_t pivot_row = 0;
        for (size_t col = 0; col < cols_ && pivot_row < rows_; ++col) {
            size_t sel = pivot_row;
            while (sel < rows_ && at(sel, col).is_zero()) ++sel;
            if (sel == rows_) continue;
            if (sel != pivot_row)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(pivot_row, j));
            const Scalar inv_p = Scalar::inv(at(pivot_row, col));
            for (size_t j = 0; j < cols_; ++j) at(pivot_row, j) = Scalar::mul(at(pivot_row, j), inv_p);
            for (size_t r = 0; r < rows_; ++r) {
                if (r == pivot_row || at(r, col).is_zero()) continue;
                const Scalar c = at(r, col);
                for (size_t j = 0; j < cols_; ++j)
                    at(r, j) = Scalar::sub(at(r, j), Scalar::mul(c, at(pivot_row, j)));
            }
            ++pivot_row;
        }
        return pivot_row;
    }

    // solution of (this) x = b, if any
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const {
        if (b.size() != rows_) fail(ErrorCode::ShapeMismatch, "solve rhs shape");
        Mat aug(spec_, rows_, cols_ + 1);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        aug.row_reduce();
        std::vector<Scalar> x(cols_, Scalar::zero(spec_));
        for (size_t i = 0; i < rows_; ++i) {
            size_t lead = 0;
            while (lead <= cols_ && aug.at(i, lead).is_zero()) {
                ++lead;
                if (lead > cols_) break;
            }
            if (lead > cols_) continue;       // zero row
            if (lead == cols_) return std::nullopt; // 0 = nonzero
            x[lead] = aug.at(i, cols_);
        }
        return x;
    }

private:
    FieldSpec spec_ = FieldSpec::rational();
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

} // namespace gradedpi

#endif
