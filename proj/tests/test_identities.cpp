#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "gradedpi/identities.hpp"
#include "gradedpi/simple.hpp"

using namespace gradedpi;

namespace {

const FieldSpec kQ = FieldSpec::rational();
const GradeGroup kZ2 = GradeGroup::cyclic(2);

GradedAlgebra m2_trivial() {
    return make_elementary_matrix(kQ, GradeGroup::trivial(), 2, {Degree{{}}, Degree{{}}});
}

GradedAlgebra m2_eg() {
    return make_elementary_matrix(kQ, kZ2, 2, {Degree{{0}}, Degree{{1}}});
}

DegreeSignature sig_of(const GradedAlgebra& a, std::vector<Degree> degs, bool assoc) {
    DegreeSignature s;
    s.degrees = std::move(degs);
    s.associative_mode = assoc;
    (void)a;
    return s;
}

bool kernel_contains(const MultilinearSpace& sp, const SparseVec& v, const FieldSpec& spec) {
    Echelon e(spec);
    for (const SparseVec& row : sp.kernel) e.insert(row);
    return e.contains(v);
}

} // namespace

TEST_CASE("monomial counts match the closed forms") {
    DegreeSignature s2{{Degree{{}}, Degree{{}}}, true};
    REQUIRE(monomial_basis(s2).size() == 2);
    DegreeSignature s3{{Degree{{}}, Degree{{}}, Degree{{}}}, false};
    REQUIRE(monomial_basis(s3).size() == 12); // 6 permutations x Catalan(2)=2
    DegreeSignature s4{{Degree{{}}, Degree{{}}, Degree{{}}, Degree{{}}}, false};
    REQUIRE(monomial_basis(s4).size() == 120); // 24 x Catalan(3)=5
    DegreeSignature s4a = s4;
    s4a.associative_mode = true;
    REQUIRE(monomial_basis(s4a).size() == 24);
    REQUIRE_THROWS_AS(monomial_basis(DegreeSignature{{}, false}), Error);
    DegreeSignature s5{{Degree{{}}, Degree{{}}, Degree{{}}, Degree{{}}, Degree{{}}}, false};
    REQUIRE_THROWS_AS(monomial_basis(s5, 4), Error);
    REQUIRE(monomial_basis(s5, 5).size() == 120 * 14); // 5! x Catalan(4)
}

TEST_CASE("matrix algebras have no low-degree multilinear identities") {
    const GradedAlgebra a = m2_trivial();
    const Degree e = a.group().identity();
    REQUIRE(identity_space(a, sig_of(a, {e, e}, true)).kernel.empty());
    REQUIRE(identity_space(a, sig_of(a, {e, e, e}, true)).kernel.empty());
}

TEST_CASE("commutativity shows up in the kernel") {
    const GradedAlgebra f2 = make_group_algebra(kQ, kZ2);
    const MultilinearSpace sp = identity_space(f2, sig_of(f2, {Degree{{1}}, Degree{{1}}}, true));
    REQUIRE(sp.kernel.size() == 1);
    const SparseVec commutator{{0, Scalar::one(kQ)}, {1, Scalar::from_int(kQ, -1)}};
    REQUIRE(kernel_contains(sp, commutator, kQ));
}

TEST_CASE("one-dimensional idempotent algebra at size two") {
    const GradeGroup t = GradeGroup::trivial();
    const GradedAlgebra a =
        make_algebra(kQ, t, {{"u", t.identity()}}, {{0, 0, 0, Scalar::one(kQ)}});
    const MultilinearSpace sp = identity_space(a, sig_of(a, {t.identity(), t.identity()}, false));
    REQUIRE(sp.monomials.size() == 2);
    REQUIRE(sp.kernel.size() == 1);
    const SparseVec commutator{{0, Scalar::one(kQ)}, {1, Scalar::from_int(kQ, -1)}};
    REQUIRE(kernel_contains(sp, commutator, kQ));
}

TEST_CASE("empty components make every polynomial an identity") {
    const GradeGroup z22(0, {2, 2});
    const GradedAlgebra a =
        make_elementary_matrix(kQ, z22, 2, {Degree{{0, 0}}, Degree{{1, 0}}});
    const MultilinearSpace sp = identity_space(a, sig_of(a, {Degree{{0, 1}}}, true));
    REQUIRE(sp.rank == 0);
    REQUIRE(sp.kernel.size() == 1); // x1 = 0 is an identity
}

TEST_CASE("mode mismatch is rejected") {
    const GradedAlgebra sl2 = make_sl2_cartan(kQ);
    REQUIRE_THROWS_AS(identity_space(sl2, sig_of(sl2, {Degree{{0}}, Degree{{0}}}, true)), Error);
}

TEST_CASE("ordinary identity spaces") {
    REQUIRE(ordinary_identity_space(m2_trivial(), 2).kernel.empty());
    const GradedAlgebra f2 = make_group_algebra(kQ, kZ2);
    const MultilinearSpace sp = ordinary_identity_space(f2, 2);
    REQUIRE(sp.kernel.size() == 1);
    REQUIRE(ordinary_identity_space(f2, 1).kernel.empty());
    REQUIRE_THROWS_AS(ordinary_identity_space(f2, 5, 4), Error);
}

TEST_CASE("standard polynomial and Amitsur-Levitzki at n = 4") {
    const auto s2 = standard_polynomial(kQ, 2);
    REQUIRE(s2 == std::vector<Scalar>{Scalar::one(kQ), Scalar::from_int(kQ, -1)});

    const GradedAlgebra a = m2_trivial();
    const Degree e = a.group().identity();
    const DegreeSignature sig4 = sig_of(a, {e, e, e, e}, true);
    const MultilinearSpace sp4 = identity_space(a, sig4);
    REQUIRE(kernel_contains(sp4, sv_from_dense(standard_polynomial(kQ, 4)), kQ));

    // s3 is not an identity of M_2: (E11, E12, E21) evaluates nonzero
    const DegreeSignature sig3 = sig_of(a, {e, e, e}, true);
    const auto monos3 = monomial_basis(sig3);
    const SparseVec s3 = sv_from_dense(standard_polynomial(kQ, 3));
    std::vector<SparseVec> args = {{{0, Scalar::one(kQ)}},  // E11
                                   {{1, Scalar::one(kQ)}},  // E12
                                   {{2, Scalar::one(kQ)}}}; // E21
    REQUIRE(!sv_is_zero(eval_polynomial(a, sig3, monos3, s3, args)));
    REQUIRE(!kernel_contains(identity_space(a, sig3), s3, kQ));
}

TEST_CASE("kernel soundness on random homogeneous tuples") {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<long long> coef(-3, 3);
    const std::vector<GradedAlgebra> algebras = {make_group_algebra(kQ, kZ2),
                                                 make_sl2_cartan(kQ), m2_eg()};
    for (const GradedAlgebra& a : algebras) {
        for (const Degree& g : a.support())
            for (const Degree& h : a.support()) {
                const DegreeSignature sig = sig_of(a, {g, h}, false);
                const MultilinearSpace sp = identity_space(a, sig);
                for (int iter = 0; iter < 20; ++iter) {
                    std::vector<SparseVec> args;
                    for (const Degree& d : sig.degrees) {
                        SparseVec v;
                        for (size_t i : a.indices_of_degree(d)) {
                            const long long c = coef(rng);
                            if (c != 0)
                                v.emplace_back(static_cast<int>(i), Scalar::from_int(kQ, c));
                        }
                        args.push_back(std::move(v));
                    }
                    for (const SparseVec& row : sp.kernel)
                        REQUIRE(sv_is_zero(eval_polynomial(a, sig, sp.monomials, row, args)));
                }
            }
    }
}

TEST_CASE("relabeling variables maps kernels to kernels") {
    const GradedAlgebra a = m2_eg();
    const DegreeSignature sig = sig_of(a, {Degree{{0}}, Degree{{0}}, Degree{{1}}}, false);
    const DegreeSignature sig_perm = sig_of(a, {Degree{{1}}, Degree{{0}}, Degree{{0}}}, false);
    // pi maps new variable index -> old variable index: y_j = x_{pi(j)},
    // so sig_perm[j] = sig[pi[j]]
    const std::vector<int> pi = {2, 0, 1};
    std::vector<int> pi_inv(pi.size());
    for (size_t i = 0; i < pi.size(); ++i) pi_inv[pi[i]] = static_cast<int>(i);

    const auto monos = monomial_basis(sig);
    const auto monos_perm = monomial_basis(sig_perm);
    std::map<std::pair<std::vector<int>, int>, size_t> rank_perm;
    for (size_t j = 0; j < monos_perm.size(); ++j)
        rank_perm[{monos_perm[j].perm, monos_perm[j].tree}] = j;

    const MultilinearSpace sp = identity_space(a, sig);
    const MultilinearSpace sp_perm = identity_space(a, sig_perm);
    REQUIRE(sp.kernel.size() == sp_perm.kernel.size());
    Echelon perm_kernel(kQ);
    for (const SparseVec& row : sp_perm.kernel) perm_kernel.insert(row);

    for (const SparseVec& row : sp.kernel) {
        // substitute x_i = y_{pi_inv[i]} leafwise, keeping the bracketing
        SparseVec mapped;
        for (const auto& [j, c] : row) {
            const MultilinearMonomial& m = monos[j];
            std::vector<int> new_perm(m.perm.size());
            for (size_t leaf = 0; leaf < m.perm.size(); ++leaf)
                new_perm[leaf] = pi_inv[m.perm[leaf]];
            mapped.emplace_back(static_cast<int>(rank_perm.at({new_perm, m.tree})), c);
        }
        std::sort(mapped.begin(), mapped.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        REQUIRE(perm_kernel.contains(mapped));
    }
}

TEST_CASE("comparison of an algebra with itself is Equal") {
    const GradedAlgebra a = m2_eg();
    const CompareResult r = compare_identities(a, a, 4);
    REQUIRE(r.equal);
    REQUIRE(r.associative_mode);
}

TEST_CASE("support mismatch separates with x = 0") {
    const GradeGroup z22(0, {2, 2});
    const GradedAlgebra m2 =
        make_elementary_matrix(kQ, z22, 2, {Degree{{0, 0}}, Degree{{1, 0}}});
    const FieldSpec q4 = FieldSpec::cyclotomic(4);
    const GradedAlgebra m2x = scalar_extend(m2, q4);
    const GradedAlgebra pauli =
        make_group_algebra(q4, z22, make_bicharacter_cocycle(q4, z22, {{0, 0}, {1, 0}}, 2));
    const CompareResult r = compare_identities(m2x, pauli, 4);
    REQUIRE(!r.equal);
    REQUIRE(r.separating->sig.degrees.size() == 1);
    REQUIRE(r.separating->side == SeparatingIdentity::Side::AOnly); // holds in m2 only
    REQUIRE(r.separating->sig.degrees[0] == Degree{{0, 1}});
}

TEST_CASE("group algebra vs matrix algebra separate at a mixed signature") {
    const GradedAlgebra f2 = make_group_algebra(kQ, kZ2);
    const GradedAlgebra m2 = m2_eg();
    const CompareResult r = compare_identities(f2, m2, 4);
    REQUIRE(!r.equal);
    REQUIRE(r.separating->side == SeparatingIdentity::Side::AOnly);
    // first separating signature in canonical order is (e, g)
    REQUIRE(r.separating->sig.degrees == std::vector<Degree>{Degree{{0}}, Degree{{1}}});
    // and the certificate is the commutator
    const auto monos = monomial_basis(r.separating->sig);
    REQUIRE(polynomial_to_string(r.separating->sig, monos, r.separating->coeffs) ==
            "x1*x2 - x2*x1");
    // the witness tuple really is nonzero on the other side
    std::vector<SparseVec> args;
    for (size_t idx : r.separating->witness_tuple)
        args.push_back({{static_cast<int>(idx), Scalar::one(kQ)}});
    REQUIRE(!sv_is_zero(eval_polynomial(m2, r.separating->sig, monos, r.separating->coeffs, args)));
}

TEST_CASE("field and group mismatches are rejected") {
    const GradedAlgebra f2 = make_group_algebra(kQ, kZ2);
    const GradedAlgebra f3 = make_group_algebra(kQ, GradeGroup::cyclic(3));
    REQUIRE_THROWS_AS(compare_identities(f2, f3, 3), Error);
    const GradedAlgebra f2x = scalar_extend(f2, FieldSpec::cyclotomic(4));
    REQUIRE_THROWS_AS(compare_identities(f2, f2x, 3), Error);
}

TEST_CASE("polynomial rendering") {
    DegreeSignature s3{{Degree{{}}, Degree{{}}, Degree{{}}}, false};
    const auto monos = monomial_basis(s3);
    REQUIRE(monomial_to_string(s3, monos[0]) == "x1*(x2*x3)");
    REQUIRE(monomial_to_string(s3, monos[1]) == "(x1*x2)*x3");
    DegreeSignature s2{{Degree{{}}, Degree{{}}}, true};
    const auto monos2 = monomial_basis(s2);
    const SparseVec comm{{0, Scalar::one(kQ)}, {1, Scalar::from_int(kQ, -1)}};
    REQUIRE(polynomial_to_string(s2, monos2, comm) == "x1*x2 - x2*x1");
    const SparseVec scaled{{0, Scalar::from_int(kQ, 3)}, {1, Scalar::from_mpq(kQ, mpq_class(-1, 2))}};
    REQUIRE(polynomial_to_string(s2, monos2, scaled) == "3*x1*x2 - 1/2*x2*x1");
}
