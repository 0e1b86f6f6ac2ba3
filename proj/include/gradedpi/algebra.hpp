#ifndef GRADEDPI_ALGEBRA_HPP
#define GRADEDPI_ALGEBRA_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradedpi/errors.hpp"
#include "gradedpi/groups.hpp"
#include "gradedpi/scalars.hpp"
#include "gradedpi/sparse.hpp"

namespace gradedpi {

struct BasisVector {
    std::string label;
    Degree degree;
};

class GradedAlgebra;

struct Element {
    const GradedAlgebra* owner = nullptr;
    std::vector<Scalar> coords;
};

// finite-dimensional G-graded algebra given by a homogeneous basis with
// degree labels and the structure-constants tensor; associativity is a
// computed property, never an assumption
class GradedAlgebra {
public:
    GradedAlgebra(FieldSpec field, GradeGroup group, std::vector<BasisVector> basis,
                  std::vector<std::vector<SparseVec>> structure)
        : field_(field), group_(std::move(group)), basis_(std::move(basis)),
          structure_(std::move(structure)) {
        if (basis_.empty()) fail(ErrorCode::ParseError, "algebra needs at least one basis vector");
        if (structure_.size() != basis_.size())
            fail(ErrorCode::ShapeMismatch, "structure tensor has wrong shape");
        for (auto& row : structure_)
            if (row.size() != basis_.size())
                fail(ErrorCode::ShapeMismatch, "structure tensor has wrong shape");
        for (auto& b : basis_) b.degree = group_.reduce(b.degree);
        for (const auto& b : basis_)
            if (std::find(support_.begin(), support_.end(), b.degree) == support_.end())
                support_.push_back(b.degree);
        std::sort(support_.begin(), support_.end());
    }

    const FieldSpec& field() const { return field_; }
    const GradeGroup& group() const { return group_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<BasisVector>& basis() const { return basis_; }
    const Degree& degree_of(size_t i) const { return basis_[i].degree; }
    const std::string& label_of(size_t i) const { return basis_[i].label; }

    const SparseVec& multiply_basis(size_t i, size_t j) const { return structure_[i][j]; }

    const std::vector<Degree>& support() const { return support_; }

    std::vector<size_t> indices_of_degree(const Degree& g) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree == g) out.push_back(i);
        return out;
    }

    size_t dim_of_degree(const Degree& g) const { return indices_of_degree(g).size(); }

    Element element(std::vector<Scalar> coords) const {
        if (coords.size() != dim()) fail(ErrorCode::ShapeMismatch, "coordinate vector length");
        for (const auto& c : coords)
            if (c.spec() != field_) fail(ErrorCode::SpecMismatch, "element coordinates in wrong field");
        return Element{this, std::move(coords)};
    }

    Element basis_element(size_t i) const {
        std::vector<Scalar> c(dim(), Scalar::zero(field_));
        c[i] = Scalar::one(field_);
        return Element{this, std::move(c)};
    }

    Element zero_element() const {
        return Element{this, std::vector<Scalar>(dim(), Scalar::zero(field_))};
    }

    // sparse coordinate product via the structure tensor
    SparseVec multiply_sparse(const SparseVec& x, const SparseVec& y) const {
        SparseVec acc;
        for (const auto& [i, xi] : x)
            for (const auto& [j, yj] : y)
                acc = sv_add_scaled(acc, structure_[i][j], Scalar::mul(xi, yj));
        return acc;
    }

    Element multiply(const Element& x, const Element& y) const {
        if (x.owner != this || y.owner != this)
            fail(ErrorCode::AlgebraMismatch, "elements belong to a different algebra");
        SparseVec prod = multiply_sparse(sv_from_dense(x.coords), sv_from_dense(y.coords));
        return Element{this, sv_to_dense(prod, dim(), field_)};
    }

    // degree of a nonzero homogeneous vector, nullopt when mixed or zero
    std::optional<Degree> homogeneous_degree(const SparseVec& v) const {
        std::optional<Degree> deg;
        for (const auto& [i, _] : v) {
            if (!deg) deg = basis_[i].degree;
            else if (*deg != basis_[i].degree) return std::nullopt;
        }
        return deg;
    }

    bool is_associative() const {
        if (!associative_) {
            bool ok = true;
            for (size_t i = 0; i < dim() && ok; ++i)
                for (size_t j = 0; j < dim() && ok; ++j) {
                    const SparseVec& ij = structure_[i][j];
                    for (size_t k = 0; k < dim() && ok; ++k) {
                        SparseVec left;
                        for (const auto& [t, c] : ij) left = sv_add_scaled(left, structure_[t][k], c);
                        SparseVec right;
                        for (const auto& [t, c] : structure_[j][k])
                            right = sv_add_scaled(right, structure_[i][t], c);
                        if (left != right) ok = false;
                    }
                }
            associative_ = ok;
        }
        return *associative_;
    }

    bool square_is_nonzero() const {
        for (const auto& row : structure_)
            for (const auto& v : row)
                if (!sv_is_zero(v)) return true;
        return false;
    }

    // two-sided identity element, if the algebra has one
    std::optional<std::vector<Scalar>> unit() const {
        if (!unit_computed_) {
            unit_computed_ = true;
            unit_ = solve_unit();
        }
        return unit_;
    }

    bool is_unital() const { return unit().has_value(); }

private:
    std::optional<std::vector<Scalar>> solve_unit() const {
        const size_t n = dim();
        const int rhs_col = static_cast<int>(n);
        // x b_j = b_j and b_j x = b_j as an affine sparse system in x
        Echelon ech(field_);
        bool inconsistent = false;
        auto add_equation = [&](SparseVec row) {
            row = ech.reduce(std::move(row));
            if (sv_is_zero(row)) return;
            if (row.front().first == rhs_col) {
                inconsistent = true;
                return;
            }
            ech.insert(std::move(row));
        };
        for (size_t j = 0; j < n && !inconsistent; ++j) {
            for (size_t k = 0; k < n; ++k) {
                SparseVec left_row, right_row;
                for (size_t i = 0; i < n; ++i) {
                    const Scalar cl = sv_get(structure_[i][j], static_cast<int>(k), field_);
                    if (!cl.is_zero()) left_row.emplace_back(static_cast<int>(i), cl);
                    const Scalar cr = sv_get(structure_[j][i], static_cast<int>(k), field_);
                    if (!cr.is_zero()) right_row.emplace_back(static_cast<int>(i), cr);
                }
                const Scalar rhs = (j == k) ? Scalar::one(field_) : Scalar::zero(field_);
                if (!rhs.is_zero()) {
                    left_row.emplace_back(rhs_col, Scalar::neg(rhs));
                    right_row.emplace_back(rhs_col, Scalar::neg(rhs));
                }
                add_equation(std::move(left_row));
                if (inconsistent) break;
                add_equation(std::move(right_row));
                if (inconsistent) break;
            }
        }
        if (inconsistent) return std::nullopt;
        std::vector<Scalar> x(n, Scalar::zero(field_));
        for (const SparseVec& row : ech.rref()) {
            if (row.front().first == rhs_col) return std::nullopt;
            // rows read  x_p + sum c_f x_f + c_rhs = 0  with free vars set to 0
            const Scalar rhs = sv_get(row, rhs_col, field_);
            x[static_cast<size_t>(row.front().first)] = Scalar::neg(rhs);
        }
        // a two-sided unit is unique; re-check to guard against free variables
        for (size_t j = 0; j < n; ++j) {
            SparseVec xb = multiply_sparse(sv_from_dense(x), basis_row(j));
            SparseVec bx = multiply_sparse(basis_row(j), sv_from_dense(x));
            if (xb != basis_row(j) || bx != basis_row(j)) return std::nullopt;
        }
        return x;
    }

    SparseVec basis_row(size_t j) const { return SparseVec{{static_cast<int>(j), Scalar::one(field_)}}; }

    FieldSpec field_;
    GradeGroup group_;
    std::vector<BasisVector> basis_;
    std::vector<std::vector<SparseVec>> structure_;
    std::vector<Degree> support_;
    mutable std::optional<bool> associative_;
    mutable bool unit_computed_ = false;
    mutable std::optional<std::vector<Scalar>> unit_;
};

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

struct ValidationReport {
    std::vector<Degree> support;
    std::vector<std::pair<Degree, size_t>> component_dims;
    bool square_nonzero = false;
    bool associative = false;
    bool unital = false;
};

// checks the grading axiom on all basis pairs; throws GradingViolation when a
// structure constant crosses components
inline ValidationReport validate(const GradedAlgebra& a) {
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = 0; j < a.dim(); ++j) {
            const Degree expected = a.group().op(a.degree_of(i), a.degree_of(j));
            for (const auto& [k, c] : a.multiply_basis(i, j)) {
                if (a.degree_of(k) != expected)
                    fail(ErrorCode::GradingViolation,
                         "product " + a.label_of(i) + " * " + a.label_of(j) +
                             " has a component of degree " + a.degree_of(k).to_string() +
                             ", expected " + expected.to_string());
            }
        }
    }
    ValidationReport r;
    r.support = a.support();
    for (const Degree& g : r.support) r.component_dims.emplace_back(g, a.dim_of_degree(g));
    r.square_nonzero = a.square_is_nonzero();
    r.associative = a.is_associative();
    r.unital = a.is_unital();
    return r;
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

struct StructureTriple {
    size_t i, j, k;
    Scalar c;
};

inline GradedAlgebra make_algebra(const FieldSpec& field, const GradeGroup& group,
                                  std::vector<BasisVector> basis,
                                  const std::vector<StructureTriple>& triples) {
    const size_t n = basis.size();
    std::vector<std::vector<std::vector<Scalar>>> dense(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(field))));
    for (const auto& t : triples) {
        if (t.i >= n || t.j >= n || t.k >= n)
            fail(ErrorCode::ParseError, "structure triple index out of range");
        if (t.c.spec() != field) fail(ErrorCode::SpecMismatch, "structure constant in wrong field");
        dense[t.i][t.j][t.k] = Scalar::add(dense[t.i][t.j][t.k], t.c);
    }
    std::vector<std::vector<SparseVec>> structure(n, std::vector<SparseVec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) structure[i][j] = sv_from_dense(dense[i][j]);
    return GradedAlgebra(field, group, std::move(basis), std::move(structure));
}

// M_n(F) with the elementary grading deg E_ij = degs_i^{-1} degs_j
inline GradedAlgebra make_elementary_matrix(const FieldSpec& field, const GradeGroup& group,
                                            size_t n, const std::vector<Degree>& degs) {
    if (n < 1) fail(ErrorCode::ParseError, "matrix size must be >= 1");
    if (degs.size() != n) fail(ErrorCode::ParseError, "need one degree per row");
    auto idx = [n](size_t i, size_t j) { return i * n + j; };
    std::vector<BasisVector> basis(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::string label = "E" + std::to_string(i + 1) +
                                (n > 9 ? "_" : "") + std::to_string(j + 1);
            basis[idx(i, j)] = BasisVector{label, group.sub(degs[j], degs[i])};
        }
    std::vector<StructureTriple> triples;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                triples.push_back({idx(i, j), idx(j, k), idx(i, k), Scalar::one(field)});
    return make_algebra(field, group, std::move(basis), triples);
}

// 2-cocycle table on a finite group, indexed by the sorted element list
struct CocycleTable {
    std::vector<Degree> elements;             // sorted
    std::vector<std::vector<Scalar>> values;  // values[i][j] = sigma(g_i, g_j)
};

inline size_t cocycle_index(const CocycleTable& t, const Degree& g) {
    auto it = std::lower_bound(t.elements.begin(), t.elements.end(), g);
    if (it == t.elements.end() || *it != g) fail(ErrorCode::ParseError, "degree not in cocycle table");
    return static_cast<size_t>(it - t.elements.begin());
}

// sigma(g,h) = omega^(sum_ij M_ij g_i h_j) for an exponent matrix over the
// torsion coordinates and omega a primitive root of the given order
inline CocycleTable make_bicharacter_cocycle(const FieldSpec& field, const GradeGroup& group,
                                             const std::vector<std::vector<long long>>& exponents,
                                             long long root_order) {
    if (!group.is_finite()) fail(ErrorCode::ParseError, "cocycle needs a finite group");
    const size_t k = group.torsion_orders.size();
    if (exponents.size() != k) fail(ErrorCode::ParseError, "exponent matrix has wrong shape");
    for (const auto& row : exponents)
        if (row.size() != k) fail(ErrorCode::ParseError, "exponent matrix has wrong shape");
    const Scalar omega = Scalar::primitive_root_of_unity(field, root_order);
    CocycleTable t;
    t.elements = group.elements();
    const size_t n = t.elements.size();
    t.values.assign(n, std::vector<Scalar>(n, Scalar::one(field)));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            long long e = 0;
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j)
                    e += exponents[i][j] * t.elements[a].coords[i] * t.elements[b].coords[j];
            t.values[a][b] = Scalar::pow(omega, e);
        }
    return t;
}

// group algebra F[G] of a finite G, optionally twisted by a 2-cocycle
inline GradedAlgebra make_group_algebra(const FieldSpec& field, const GradeGroup& group,
                                        const std::optional<CocycleTable>& twist = std::nullopt) {
    if (!group.is_finite()) fail(ErrorCode::ParseError, "group algebra needs a finite group");
    const std::vector<Degree> elems = group.elements();
    const size_t n = elems.size();
    auto sigma = [&](const Degree& g, const Degree& h) -> Scalar {
        if (!twist) return Scalar::one(field);
        const Scalar v = twist->values[cocycle_index(*twist, g)][cocycle_index(*twist, h)];
        if (v.spec() != field) fail(ErrorCode::SpecMismatch, "cocycle value in wrong field");
        return v;
    };
    if (twist) {
        for (const Degree& g : elems)
            for (const Degree& h : elems) {
                if (sigma(g, h).is_zero())
                    fail(ErrorCode::NotACocycle, "cocycle value sigma(" + g.to_string() + "," +
                                                     h.to_string() + ") is zero");
                for (const Degree& k : elems) {
                    // sigma(g,h) sigma(gh,k) = sigma(h,k) sigma(g,hk)
                    const Scalar lhs = Scalar::mul(sigma(g, h), sigma(group.op(g, h), k));
                    const Scalar rhs = Scalar::mul(sigma(h, k), sigma(g, group.op(h, k)));
                    if (lhs != rhs)
                        fail(ErrorCode::NotACocycle,
                             "cocycle identity fails at (" + g.to_string() + "," + h.to_string() +
                                 "," + k.to_string() + ")");
                }
            }
    }
    auto index_of = [&](const Degree& g) {
        return static_cast<size_t>(
            std::lower_bound(elems.begin(), elems.end(), g) - elems.begin());
    };
    std::vector<BasisVector> basis;
    basis.reserve(n);
    for (const Degree& g : elems) basis.push_back({"u" + g.to_string(), g});
    std::vector<StructureTriple> triples;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            triples.push_back({i, j, index_of(group.op(elems[i], elems[j])),
                               sigma(elems[i], elems[j])});
    return make_algebra(field, group, std::move(basis), triples);
}

// orthogonal direct sum with componentwise grading; never graded simple
inline GradedAlgebra make_direct_sum(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (a.field() != b.field()) fail(ErrorCode::FieldMismatch, "direct sum needs one field");
    if (a.group() != b.group()) fail(ErrorCode::GroupMismatch, "direct sum needs one group");
    std::vector<BasisVector> basis;
    for (size_t i = 0; i < a.dim(); ++i) basis.push_back({"s0." + a.label_of(i), a.degree_of(i)});
    for (size_t i = 0; i < b.dim(); ++i) basis.push_back({"s1." + b.label_of(i), b.degree_of(i)});
    std::vector<StructureTriple> triples;
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j)
            for (const auto& [k, c] : a.multiply_basis(i, j))
                triples.push_back({i, j, static_cast<size_t>(k), c});
    const size_t off = a.dim();
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < b.dim(); ++j)
            for (const auto& [k, c] : b.multiply_basis(i, j))
                triples.push_back({off + i, off + j, off + static_cast<size_t>(k), c});
    return make_algebra(a.field(), a.group(), std::move(basis), triples);
}

// sl_2 with the Z/2-grading by the Cartan involution: h in degree 0, e and f
// in degree 1
inline GradedAlgebra make_sl2_cartan(const FieldSpec& field) {
    const GradeGroup group = GradeGroup::cyclic(2);
    std::vector<BasisVector> basis = {
        {"h", Degree{{0}}}, {"e", Degree{{1}}}, {"f", Degree{{1}}}};
    const Scalar one = Scalar::one(field);
    const Scalar two = Scalar::from_int(field, 2);
    std::vector<StructureTriple> triples = {
        {0, 1, 1, two},              // [h,e] = 2e
        {1, 0, 1, Scalar::neg(two)}, // [e,h] = -2e
        {0, 2, 2, Scalar::neg(two)}, // [h,f] = -2f
        {2, 0, 2, two},              // [f,h] = 2f
        {1, 2, 0, one},              // [e,f] = h
        {2, 1, 0, Scalar::neg(one)}, // [f,e] = -h
    };
    return make_algebra(field, group, std::move(basis), triples);
}

// same basis and degrees over a larger coefficient field
inline GradedAlgebra scalar_extend(const GradedAlgebra& a, const FieldSpec& target) {
    std::vector<std::vector<SparseVec>> structure(a.dim(), std::vector<SparseVec>(a.dim()));
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            SparseVec v;
            for (const auto& [k, c] : a.multiply_basis(i, j)) v.emplace_back(k, embed(c, target));
            structure[i][j] = std::move(v);
        }
    return GradedAlgebra(target, a.group(), a.basis(), std::move(structure));
}

// forget the grading: same algebra over the trivial group
inline GradedAlgebra regrade_trivial(const GradedAlgebra& a) {
    std::vector<BasisVector> basis = a.basis();
    const GradeGroup trivial = GradeGroup::trivial();
    for (auto& b : basis) b.degree = trivial.identity();
    std::vector<std::vector<SparseVec>> structure(a.dim(), std::vector<SparseVec>(a.dim()));
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) structure[i][j] = a.multiply_basis(i, j);
    return GradedAlgebra(a.field(), trivial, std::move(basis), std::move(structure));
}

} // namespace gradedpi

#endif
