#ifndef GRADEDPI_IDENTITIES_HPP
#define GRADEDPI_IDENTITIES_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gradedpi/algebra.hpp"
#include "gradedpi/errors.hpp"
#include "gradedpi/sparse.hpp"

namespace gradedpi {

constexpr size_t kDefaultCap = 4;

struct DegreeSignature {
    std::vector<Degree> degrees;
    bool associative_mode = false;

    size_t size() const { return degrees.size(); }
    bool operator==(const DegreeSignature& o) const {
        return degrees == o.degrees && associative_mode == o.associative_mode;
    }
};

namespace detail {

// full binary trees with a given number of leaves; leaf when left_size == 0
struct BracketTree {
    int left_size = 0;
    int left_id = -1;
    int right_id = -1;
};

inline const std::vector<BracketTree>& bracket_trees(size_t leaves) {
    static std::map<size_t, std::vector<BracketTree>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(leaves);
    if (it != cache.end()) return it->second;
    for (size_t n = 1; n <= leaves; ++n) {
        if (cache.count(n)) continue;
        std::vector<BracketTree> trees;
        if (n == 1) {
            trees.push_back({});
        } else {
            for (size_t left = 1; left < n; ++left)
                for (size_t lt = 0; lt < cache.at(left).size(); ++lt)
                    for (size_t rt = 0; rt < cache.at(n - left).size(); ++rt)
                        trees.push_back({static_cast<int>(left), static_cast<int>(lt),
                                         static_cast<int>(rt)});
        }
        cache.emplace(n, std::move(trees));
    }
    return cache.at(leaves);
}

inline size_t catalan(size_t n) {
    size_t c = 1;
    for (size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

} // namespace detail

// one multilinear monomial: a permutation of the variables labeling the
// leaves left to right, plus a bracketing (ignored in associative mode)
struct MultilinearMonomial {
    std::vector<int> perm; // perm[leaf] = 0-based variable index
    int tree = 0;          // index into bracket_trees(n)
};

inline std::vector<MultilinearMonomial> monomial_basis(const DegreeSignature& sig,
                                                       size_t cap = kDefaultCap) {
    const size_t n = sig.size();
    if (n == 0) fail(ErrorCode::EmptySignature, "signature has no degrees");
    if (n > cap)
        fail(ErrorCode::CapExceeded,
             "signature size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    const size_t ntrees = sig.associative_mode ? 1 : detail::bracket_trees(n).size();
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::vector<MultilinearMonomial> out;
    do {
        for (size_t t = 0; t < ntrees; ++t)
            out.push_back({perm, static_cast<int>(t)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace detail {

inline SparseVec eval_tree(const GradedAlgebra& a, const std::vector<BracketTree>& trees,
                           const MultilinearMonomial& mono, int tree_id, size_t offset,
                           size_t size, const std::vector<SparseVec>& args) {
    if (size == 1) return args[mono.perm[offset]];
    const BracketTree& t = trees[tree_id];
    const size_t lsize = static_cast<size_t>(t.left_size);
    const SparseVec l = eval_tree(a, bracket_trees(lsize), mono, t.left_id, offset, lsize, args);
    const SparseVec r = eval_tree(a, bracket_trees(size - lsize), mono, t.right_id,
                                  offset + lsize, size - lsize, args);
    return a.multiply_sparse(l, r);
}

} // namespace detail

// value of a monomial on a tuple of elements (given as sparse coordinate
// vectors, one per variable)
inline SparseVec eval_monomial(const GradedAlgebra& a, const DegreeSignature& sig,
                               const MultilinearMonomial& mono,
                               const std::vector<SparseVec>& args) {
    const size_t n = sig.size();
    if (sig.associative_mode) {
        SparseVec acc = args[mono.perm[0]];
        for (size_t i = 1; i < n; ++i) acc = a.multiply_sparse(acc, args[mono.perm[i]]);
        return acc;
    }
    return detail::eval_tree(a, detail::bracket_trees(n), mono, mono.tree, 0, n, args);
}

// value of a polynomial (coefficients over the monomial basis) on a tuple
inline SparseVec eval_polynomial(const GradedAlgebra& a, const DegreeSignature& sig,
                                 const std::vector<MultilinearMonomial>& monomials,
                                 const SparseVec& coeffs, const std::vector<SparseVec>& args) {
    SparseVec acc;
    for (const auto& [j, c] : coeffs)
        acc = sv_add_scaled(acc, eval_monomial(a, sig, monomials[j], args), c);
    return acc;
}

struct MultilinearSpace {
    DegreeSignature sig;
    std::vector<MultilinearMonomial> monomials;
    std::vector<SparseVec> kernel; // canonical rref rows over monomial indices
    size_t rank = 0;               // of the evaluation row space
};

namespace detail {

// iterate all tuples of basis indices of the signature's components,
// feeding the evaluation rows into the visitor until it returns false
template <typename Visitor>
inline void for_each_signature_tuple(const GradedAlgebra& a, const DegreeSignature& sig,
                                     Visitor&& visit) {
    const size_t n = sig.size();
    std::vector<std::vector<size_t>> slots(n);
    for (size_t i = 0; i < n; ++i) {
        slots[i] = a.indices_of_degree(sig.degrees[i]);
        if (slots[i].empty()) return; // no tuples at all
    }
    std::vector<size_t> pos(n, 0);
    std::vector<size_t> tuple(n);
    while (true) {
        for (size_t i = 0; i < n; ++i) tuple[i] = slots[i][pos[i]];
        if (!visit(tuple)) return;
        size_t i = n;
        while (i > 0) {
            --i;
            if (++pos[i] < slots[i].size()) break;
            pos[i] = 0;
            if (i == 0) return;
        }
    }
}

// row space of the evaluation matrix; stops early once full column rank is
// reached (the kernel is then zero)
inline Echelon evaluation_rowspace(const GradedAlgebra& a, const DegreeSignature& sig,
                                   const std::vector<MultilinearMonomial>& monomials) {
    Echelon rows(a.field());
    const size_t ncols = monomials.size();
    for_each_signature_tuple(a, sig, [&](const std::vector<size_t>& tuple) {
        std::vector<SparseVec> args(sig.size());
        for (size_t i = 0; i < sig.size(); ++i)
            args[i] = {{static_cast<int>(tuple[i]), Scalar::one(a.field())}};
        // rows indexed by output coordinate; columns by monomial
        std::vector<SparseVec> coord_rows(a.dim());
        for (size_t j = 0; j < monomials.size(); ++j) {
            const SparseVec val = eval_monomial(a, sig, monomials[j], args);
            for (const auto& [k, c] : val)
                coord_rows[static_cast<size_t>(k)].emplace_back(static_cast<int>(j), c);
        }
        for (auto& row : coord_rows) rows.insert(std::move(row));
        return rows.dim() < ncols;
    });
    return rows;
}

} // namespace detail

// kernel of the exact evaluation matrix on all homogeneous basis tuples;
// multilinearity makes basis tuples sufficient
inline MultilinearSpace identity_space(const GradedAlgebra& a, const DegreeSignature& sig,
                                       size_t cap = kDefaultCap) {
    if (sig.associative_mode && !a.is_associative())
        fail(ErrorCode::ModeMismatch, "associative mode on a non-associative algebra");
    MultilinearSpace out;
    out.sig = sig;
    out.monomials = monomial_basis(sig, cap);
    const Echelon rows = detail::evaluation_rowspace(a, sig, out.monomials);
    out.rank = rows.dim();
    out.kernel = rows.nullspace(static_cast<int>(out.monomials.size()));
    return out;
}

// identities with the grading forgotten
inline MultilinearSpace ordinary_identity_space(const GradedAlgebra& a, size_t n,
                                                size_t cap = kDefaultCap,
                                                std::optional<bool> associative = std::nullopt) {
    const GradedAlgebra trivial = regrade_trivial(a);
    DegreeSignature sig;
    sig.degrees.assign(n, trivial.group().identity());
    sig.associative_mode = associative.value_or(a.is_associative());
    return identity_space(trivial, sig, cap);
}

// s_n = sum over permutations with sign, in the associative monomial basis
inline std::vector<Scalar> standard_polynomial(const FieldSpec& spec, size_t n) {
    if (n < 1) fail(ErrorCode::EmptySignature, "standard polynomial needs n >= 1");
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::vector<Scalar> out;
    do {
        int inversions = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        out.push_back(Scalar::from_int(spec, inversions % 2 == 0 ? 1 : -1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// ---------------------------------------------------------------------------
// identity-space comparison with separating certificates
// ---------------------------------------------------------------------------

struct SeparatingIdentity {
    DegreeSignature sig;
    SparseVec coeffs; // an identity of the side it separates
    enum class Side { AOnly, BOnly } side = Side::AOnly;
    std::vector<size_t> witness_tuple;  // basis indices in the other algebra
    std::vector<Scalar> witness_value;  // nonzero evaluation there
};

struct CompareResult {
    bool equal = false;
    bool associative_mode = false;
    size_t cap = 0;
    size_t signatures_checked = 0;
    std::optional<SeparatingIdentity> separating;
};

namespace detail {

// non-decreasing sequences over the sorted support, lexicographic
inline std::vector<std::vector<Degree>> sorted_signatures(const std::vector<Degree>& support,
                                                          size_t size) {
    std::vector<std::vector<Degree>> out;
    std::vector<size_t> idx(size, 0);
    if (support.empty()) return out;
    while (true) {
        std::vector<Degree> sig;
        for (size_t i : idx) sig.push_back(support[i]);
        out.push_back(std::move(sig));
        size_t i = size;
        bool done = true;
        while (i > 0) {
            --i;
            if (idx[i] + 1 < support.size()) {
                ++idx[i];
                for (size_t j = i + 1; j < size; ++j) idx[j] = idx[i];
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return out;
}

// search a tuple of the algebra where the polynomial evaluates nonzero
inline bool find_nonzero_tuple(const GradedAlgebra& a, const DegreeSignature& sig,
                               const std::vector<MultilinearMonomial>& monomials,
                               const SparseVec& coeffs, std::vector<size_t>& tuple_out,
                               std::vector<Scalar>& value_out) {
    bool found = false;
    for_each_signature_tuple(a, sig, [&](const std::vector<size_t>& tuple) {
        std::vector<SparseVec> args(sig.size());
        for (size_t i = 0; i < sig.size(); ++i)
            args[i] = {{static_cast<int>(tuple[i]), Scalar::one(a.field())}};
        const SparseVec val = eval_polynomial(a, sig, monomials, coeffs, args);
        if (sv_is_zero(val)) return true;
        tuple_out = tuple;
        value_out = sv_to_dense(val, a.dim(), a.field());
        found = true;
        return false;
    });
    return found;
}

} // namespace detail

// kernels compared by exact stacked rank; certificates extracted only when
// the verdict is Separating
inline CompareResult compare_identities(const GradedAlgebra& a, const GradedAlgebra& b,
                                        size_t cap,
                                        std::optional<bool> associative = std::nullopt) {
    if (a.field() != b.field()) fail(ErrorCode::FieldMismatch, "different coefficient fields");
    if (a.group() != b.group()) fail(ErrorCode::GroupMismatch, "different grading groups");
    CompareResult out;
    out.cap = cap;
    out.associative_mode = associative.value_or(a.is_associative() && b.is_associative());
    if (out.associative_mode && (!a.is_associative() || !b.is_associative()))
        fail(ErrorCode::ModeMismatch, "associative mode on a non-associative algebra");

    // supports first: a degree present on one side only separates via x = 0
    std::vector<Degree> all_degrees;
    for (const Degree& g : a.support()) all_degrees.push_back(g);
    for (const Degree& g : b.support()) all_degrees.push_back(g);
    std::sort(all_degrees.begin(), all_degrees.end());
    all_degrees.erase(std::unique(all_degrees.begin(), all_degrees.end()), all_degrees.end());
    for (const Degree& g : all_degrees) {
        const bool in_a = a.dim_of_degree(g) > 0;
        const bool in_b = b.dim_of_degree(g) > 0;
        if (in_a == in_b) continue;
        SeparatingIdentity cert;
        cert.sig.degrees = {g};
        cert.sig.associative_mode = out.associative_mode;
        cert.coeffs = {{0, Scalar::one(a.field())}}; // the polynomial x1
        cert.side = in_a ? SeparatingIdentity::Side::BOnly : SeparatingIdentity::Side::AOnly;
        const GradedAlgebra& witness_side = in_a ? a : b;
        cert.witness_tuple = {witness_side.indices_of_degree(g).front()};
        cert.witness_value = sv_to_dense(
            {{static_cast<int>(cert.witness_tuple[0]), Scalar::one(a.field())}},
            witness_side.dim(), a.field());
        out.separating = std::move(cert);
        return out;
    }

    for (size_t size = 1; size <= cap; ++size) {
        for (const std::vector<Degree>& degrees : detail::sorted_signatures(a.support(), size)) {
            DegreeSignature sig{degrees, out.associative_mode};
            const std::vector<MultilinearMonomial> monomials = monomial_basis(sig, cap);
            const Echelon rows_a = detail::evaluation_rowspace(a, sig, monomials);
            const Echelon rows_b = detail::evaluation_rowspace(b, sig, monomials);
            ++out.signatures_checked;
            if (rows_a.dim() == rows_b.dim()) {
                Echelon stacked = rows_a;
                bool grew = false;
                for (const SparseVec& row : rows_b.rref())
                    if (stacked.insert(row)) grew = true;
                if (!grew) continue; // equal row spaces, equal kernels
            }
            // kernels differ; extract the first certificate in canonical order
            const auto kernel_a = rows_a.nullspace(static_cast<int>(monomials.size()));
            const auto kernel_b = rows_b.nullspace(static_cast<int>(monomials.size()));
            auto in_kernel = [&](const Echelon& rows, const SparseVec& v) {
                for (const SparseVec& r : rows.rref()) {
                    Scalar dot = Scalar::zero(a.field());
                    for (const auto& [j, c] : r)
                        dot = Scalar::add(dot, Scalar::mul(c, sv_get(v, j, a.field())));
                    if (!dot.is_zero()) return false;
                }
                return true;
            };
            SeparatingIdentity cert;
            cert.sig = sig;
            bool have = false;
            for (const SparseVec& v : kernel_a) {
                if (in_kernel(rows_b, v)) continue;
                cert.coeffs = v;
                cert.side = SeparatingIdentity::Side::AOnly;
                if (!detail::find_nonzero_tuple(b, sig, monomials, v, cert.witness_tuple,
                                                cert.witness_value))
                    fail(ErrorCode::Internal, "separating identity vanished on all tuples");
                have = true;
                break;
            }
            if (!have) {
                for (const SparseVec& v : kernel_b) {
                    if (in_kernel(rows_a, v)) continue;
                    cert.coeffs = v;
                    cert.side = SeparatingIdentity::Side::BOnly;
                    if (!detail::find_nonzero_tuple(a, sig, monomials, v, cert.witness_tuple,
                                                    cert.witness_value))
                        fail(ErrorCode::Internal, "separating identity vanished on all tuples");
                    have = true;
                    break;
                }
            }
            if (!have) fail(ErrorCode::Internal, "rank mismatch without a separating kernel vector");
            out.separating = std::move(cert);
            return out;
        }
    }
    out.equal = true;
    return out;
}

// ---------------------------------------------------------------------------
// textual rendering: `(x1*x2)*x3 - x3*(x1*x2)`
// ---------------------------------------------------------------------------

namespace detail {

inline std::string monomial_tree_string(const MultilinearMonomial& mono, int tree_id,
                                        size_t offset, size_t size) {
    if (size == 1) return "x" + std::to_string(mono.perm[offset] + 1);
    const BracketTree& t = bracket_trees(size)[tree_id];
    const std::string l = monomial_tree_string(mono, t.left_id, offset,
                                               static_cast<size_t>(t.left_size));
    const std::string r =
        monomial_tree_string(mono, t.right_id, offset + static_cast<size_t>(t.left_size),
                             size - static_cast<size_t>(t.left_size));
    auto wrap = [](const std::string& s, size_t n) { return n == 1 ? s : "(" + s + ")"; };
    return wrap(l, static_cast<size_t>(t.left_size)) + "*" +
           wrap(r, size - static_cast<size_t>(t.left_size));
}

} // namespace detail

inline std::string monomial_to_string(const DegreeSignature& sig,
                                      const MultilinearMonomial& mono) {
    const size_t n = sig.size();
    if (sig.associative_mode) {
        std::string out;
        for (size_t i = 0; i < n; ++i) {
            if (i) out += "*";
            out += "x" + std::to_string(mono.perm[i] + 1);
        }
        return out;
    }
    return detail::monomial_tree_string(mono, mono.tree, 0, n);
}

inline std::string polynomial_to_string(const DegreeSignature& sig,
                                        const std::vector<MultilinearMonomial>& monomials,
                                        const SparseVec& coeffs) {
    if (sv_is_zero(coeffs)) return "0";
    std::string out;
    for (const auto& [j, c] : coeffs) {
        const std::string mono = monomial_to_string(sig, monomials[j]);
        std::string cs = c.to_string();
        bool negative = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
            negative = true;
            cs = cs.substr(1);
        }
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (cs == "1") {
            out += mono;
        } else if (cs.find(' ') != std::string::npos) {
            out += "(" + cs + ")*" + mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out;
}

} // namespace gradedpi

#endif
