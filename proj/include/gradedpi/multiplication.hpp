#ifndef GRADEDPI_MULTIPLICATION_HPP
#define GRADEDPI_MULTIPLICATION_HPP

#include <deque>
#include <string>
#include <vector>

#include "gradedpi/algebra.hpp"
#include "gradedpi/errors.hpp"
#include "gradedpi/sparse.hpp"

namespace gradedpi {

// homogeneous linear map on the underlying space of an algebra, stored by
// columns: cols[j] = image of the j-th basis vector
struct Operator {
    Degree degree;
    std::vector<SparseVec> cols;

    SparseVec apply(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [j, c] : v) out = sv_add_scaled(out, cols[j], c);
        return out;
    }
};

inline Operator op_identity(const FieldSpec& spec, const GradeGroup& group, size_t n) {
    Operator id;
    id.degree = group.identity();
    id.cols.resize(n);
    for (size_t j = 0; j < n; ++j) id.cols[j] = {{static_cast<int>(j), Scalar::one(spec)}};
    return id;
}

inline Operator op_compose(const GradeGroup& group, const Operator& a, const Operator& b) {
    Operator r;
    r.degree = group.op(a.degree, b.degree);
    r.cols.reserve(b.cols.size());
    for (const SparseVec& col : b.cols) r.cols.push_back(a.apply(col));
    return r;
}

// column-major flattening: index = col * n + row, already sorted
inline SparseVec op_flatten(const Operator& op, size_t n) {
    SparseVec out;
    for (size_t j = 0; j < op.cols.size(); ++j)
        for (const auto& [r, c] : op.cols[j])
            out.emplace_back(static_cast<int>(j * n) + r, c);
    return out;
}

inline Operator op_unflatten(const SparseVec& v, size_t n, const Degree& degree) {
    Operator op;
    op.degree = degree;
    op.cols.assign(n, {});
    for (const auto& [idx, c] : v)
        op.cols[static_cast<size_t>(idx) / n].emplace_back(static_cast<int>(idx % n), c);
    return op;
}

inline bool op_is_zero(const Operator& op) {
    for (const auto& col : op.cols)
        if (!sv_is_zero(col)) return false;
    return true;
}

// an operator tagged g is homogeneous when it maps A_h into A_{gh}
inline bool op_is_homogeneous(const GradedAlgebra& a, const Operator& op) {
    for (size_t j = 0; j < op.cols.size(); ++j) {
        const Degree target = a.group().op(op.degree, a.degree_of(j));
        for (const auto& [r, _] : op.cols[j])
            if (a.degree_of(r) != target) return false;
    }
    return true;
}

// left and right multiplication operators of a basis vector
inline Operator left_mult_op(const GradedAlgebra& a, size_t i) {
    Operator op;
    op.degree = a.degree_of(i);
    op.cols.reserve(a.dim());
    for (size_t j = 0; j < a.dim(); ++j) op.cols.push_back(a.multiply_basis(i, j));
    return op;
}

inline Operator right_mult_op(const GradedAlgebra& a, size_t i) {
    Operator op;
    op.degree = a.degree_of(i);
    op.cols.reserve(a.dim());
    for (size_t j = 0; j < a.dim(); ++j) op.cols.push_back(a.multiply_basis(j, i));
    return op;
}

// ---------------------------------------------------------------------------
// MatrixSubalgebra: a graded subalgebra of operators on the underlying space,
// closed under composition, with a homogeneous operator basis
// ---------------------------------------------------------------------------

struct MatrixSubalgebra {
    FieldSpec field;
    GradeGroup group;
    size_t ambient_dim = 0;
    std::vector<Operator> ops; // deterministic construction order

    size_t dim() const { return ops.size(); }
};

// closure of {L_b, R_b : b basis} under composition; deterministic order:
// generators in basis order with all L before all R, then a FIFO worklist
inline MatrixSubalgebra mult_algebra(const GradedAlgebra& a) {
    MatrixSubalgebra m;
    m.field = a.field();
    m.group = a.group();
    m.ambient_dim = a.dim();
    Echelon span(a.field());
    auto try_insert = [&](Operator op) -> bool {
        if (op_is_zero(op)) return false;
        if (!span.insert(op_flatten(op, a.dim()))) return false;
        m.ops.push_back(std::move(op));
        return true;
    };
    for (size_t i = 0; i < a.dim(); ++i) try_insert(left_mult_op(a, i));
    for (size_t i = 0; i < a.dim(); ++i) try_insert(right_mult_op(a, i));
    // worklist over pairs of basis operators; new entries extend the queue
    for (size_t t = 0; t < m.ops.size(); ++t) {
        for (size_t s = 0; s <= t; ++s) {
            try_insert(op_compose(a.group(), m.ops[t], m.ops[s]));
            if (s != t) try_insert(op_compose(a.group(), m.ops[s], m.ops[t]));
        }
    }
    return m;
}

inline bool contains_identity(const MatrixSubalgebra& m) {
    Echelon span(m.field);
    for (const Operator& op : m.ops) span.insert(op_flatten(op, m.ambient_dim));
    return span.contains(op_flatten(op_identity(m.field, m.group, m.ambient_dim), m.ambient_dim));
}

// adjoin the identity operator when absent (degree e)
inline MatrixSubalgebra unital_closure(const MatrixSubalgebra& m) {
    if (m.dim() > 0 && contains_identity(m)) return m;
    MatrixSubalgebra out;
    out.field = m.field;
    out.group = m.group;
    out.ambient_dim = m.ambient_dim;
    out.ops.push_back(op_identity(m.field, m.group, m.ambient_dim));
    for (const Operator& op : m.ops) out.ops.push_back(op);
    return out;
}

// the multiplication algebra as a graded algebra in its own right: basis
// operators become basis vectors, structure constants come from composition
inline GradedAlgebra to_graded_algebra(const MatrixSubalgebra& m) {
    const size_t n = m.dim();
    if (n == 0) fail(ErrorCode::Internal, "zero multiplication algebra has no basis");
    SpanSolver solver(m.field);
    for (const Operator& op : m.ops)
        if (!solver.insert(op_flatten(op, m.ambient_dim)))
            fail(ErrorCode::Internal, "operator basis is dependent");
    std::vector<BasisVector> basis;
    basis.reserve(n);
    for (size_t i = 0; i < n; ++i)
        basis.push_back({"m" + std::to_string(i), m.ops[i].degree});
    std::vector<std::vector<SparseVec>> structure(n, std::vector<SparseVec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Operator prod = op_compose(m.group, m.ops[i], m.ops[j]);
            const auto expr = solver.express(op_flatten(prod, m.ambient_dim));
            if (!expr) fail(ErrorCode::Internal, "operator algebra is not closed");
            structure[i][j] = sv_from_dense(*expr);
        }
    return GradedAlgebra(m.field, m.group, std::move(basis), std::move(structure));
}

// ---------------------------------------------------------------------------
// spin: smallest homogeneous subspace containing v and invariant under all
// left and right multiplications (the homogeneous ideal generated by v)
// ---------------------------------------------------------------------------

inline std::vector<SparseVec> spin(const GradedAlgebra& a, const SparseVec& v) {
    if (sv_is_zero(v)) fail(ErrorCode::NotHomogeneous, "spin of the zero vector");
    if (!a.homogeneous_degree(v)) fail(ErrorCode::NotHomogeneous, "spin seed is not homogeneous");
    Echelon span(a.field());
    std::deque<SparseVec> queue;
    span.insert(v);
    queue.push_back(v);
    while (!queue.empty()) {
        const SparseVec w = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < a.dim(); ++i) {
            for (const SparseVec& img :
                 {a.multiply_sparse({{static_cast<int>(i), Scalar::one(a.field())}}, w),
                  a.multiply_sparse(w, {{static_cast<int>(i), Scalar::one(a.field())}})}) {
                if (sv_is_zero(img)) continue;
                SparseVec reduced = span.reduce(img);
                if (sv_is_zero(reduced)) continue;
                span.insert(reduced);
                queue.push_back(std::move(reduced));
            }
        }
    }
    return span.rref();
}

// span of all products xy; always an ideal
inline std::vector<SparseVec> square_span(const GradedAlgebra& a) {
    Echelon span(a.field());
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) span.insert(a.multiply_basis(i, j));
    return span.rref();
}

// ---------------------------------------------------------------------------
// homogeneous ideal certificates
// ---------------------------------------------------------------------------

struct IdealCertificate {
    std::vector<SparseVec> basis; // canonical rref rows
};

// re-verifiable: 0 < dim < dim A, homogeneous, and invariant on both sides
inline bool verify_ideal(const GradedAlgebra& a, const IdealCertificate& cert) {
    if (cert.basis.empty() || cert.basis.size() >= a.dim()) return false;
    Echelon span(a.field());
    for (const SparseVec& row : cert.basis) span.insert(row);
    if (span.dim() != cert.basis.size() || span.dim() >= a.dim()) return false;
    // homogeneous: closed under projection to every degree
    for (const SparseVec& row : cert.basis) {
        std::map<Degree, SparseVec> parts;
        for (const auto& [i, c] : row) parts[a.degree_of(i)].emplace_back(i, c);
        for (const auto& [g, part] : parts)
            if (!span.contains(part)) return false;
    }
    // two-sided invariance under basis multiplications
    for (const SparseVec& row : cert.basis)
        for (size_t i = 0; i < a.dim(); ++i) {
            const SparseVec e{{static_cast<int>(i), Scalar::one(a.field())}};
            if (!span.contains(a.multiply_sparse(e, row))) return false;
            if (!span.contains(a.multiply_sparse(row, e))) return false;
        }
    return true;
}

} // namespace gradedpi

#endif
