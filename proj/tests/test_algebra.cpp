#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gradedpi/algebra.hpp"
#include "gradedpi/matrix.hpp"

using namespace gradedpi;

namespace {

const FieldSpec kQ = FieldSpec::rational();
const GradeGroup kZ2 = GradeGroup::cyclic(2);

GradedAlgebra m2_elementary_eg(const FieldSpec& field = kQ) {
    return make_elementary_matrix(field, kZ2, 2, {Degree{{0}}, Degree{{1}}});
}

} // namespace

TEST_CASE("elementary matrix algebra validates with the expected shape") {
    const GradedAlgebra a = m2_elementary_eg();
    const ValidationReport r = validate(a);
    REQUIRE(r.support == std::vector<Degree>{Degree{{0}}, Degree{{1}}});
    REQUIRE(r.component_dims[0].second == 2);
    REQUIRE(r.component_dims[1].second == 2);
    REQUIRE(r.square_nonzero);
    REQUIRE(r.associative);
    REQUIRE(r.unital);
}

TEST_CASE("matrix units multiply as expected") {
    const GradedAlgebra a = m2_elementary_eg();
    // basis order: E11 E12 E21 E22
    const Element p = a.multiply(a.basis_element(1), a.basis_element(2));
    REQUIRE(p.coords[0] == Scalar::one(kQ)); // E12 E21 = E11
    for (size_t i = 1; i < 4; ++i) REQUIRE(p.coords[i].is_zero());

    // E_ij E_kl = delta_jk E_il on all quadruples
    const size_t n = 2;
    auto idx = [&](size_t i, size_t j) { return i * n + j; };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    const SparseVec& v = a.multiply_basis(idx(i, j), idx(k, l));
                    if (j == k) {
                        REQUIRE(v.size() == 1);
                        REQUIRE(v[0].first == static_cast<int>(idx(i, l)));
                        REQUIRE(v[0].second.is_one());
                    } else {
                        REQUIRE(sv_is_zero(v));
                    }
                }
}

TEST_CASE("corrupted structure tables fail validation") {
    std::vector<BasisVector> basis = {{"E11", Degree{{0}}},
                                      {"E12", Degree{{1}}},
                                      {"E21", Degree{{1}}},
                                      {"E22", Degree{{0}}}};
    std::vector<StructureTriple> triples;
    const GradedAlgebra good = m2_elementary_eg();
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            for (const auto& [k, c] : good.multiply_basis(i, j))
                triples.push_back({i, j, static_cast<size_t>(k), c});
    // E11 * E12 must land in degree 1; send it to E11 instead
    for (auto& t : triples)
        if (t.i == 0 && t.j == 1) t.k = 0;
    const GradedAlgebra bad = make_algebra(kQ, kZ2, basis, triples);
    REQUIRE_THROWS_AS(validate(bad), Error);
}

TEST_CASE("one-dimensional zero-multiplication algebra is valid but has zero square") {
    const GradedAlgebra a =
        make_algebra(kQ, GradeGroup::trivial(), {{"u", Degree{{}}}}, {});
    const ValidationReport r = validate(a);
    REQUIRE(!r.square_nonzero);
    REQUIRE(r.associative);
    REQUIRE(!r.unital);
}

TEST_CASE("group algebra of Z/2") {
    const GradedAlgebra a = make_group_algebra(kQ, kZ2);
    REQUIRE(a.dim() == 2);
    const Element p = a.multiply(a.basis_element(1), a.basis_element(1));
    REQUIRE(p.coords[0].is_one()); // u1 u1 = u0
    REQUIRE(validate(a).unital);
    REQUIRE(a.is_associative());

    // not simple ungraded: span{u0 + u1} is an ideal (closure check)
    const SparseVec ideal_gen{{0, Scalar::one(kQ)}, {1, Scalar::one(kQ)}};
    for (size_t j = 0; j < 2; ++j) {
        SparseVec left = a.multiply_sparse(ideal_gen, SparseVec{{(int)j, Scalar::one(kQ)}});
        SparseVec right = a.multiply_sparse(SparseVec{{(int)j, Scalar::one(kQ)}}, ideal_gen);
        Echelon span(kQ);
        span.insert(ideal_gen);
        REQUIRE(span.contains(left));
        REQUIRE(span.contains(right));
    }
}

TEST_CASE("Pauli algebra matches the 2x2 matrix oracle") {
    const FieldSpec q4 = FieldSpec::cyclotomic(4);
    const GradeGroup z22(0, {2, 2});
    const CocycleTable sigma = make_bicharacter_cocycle(q4, z22, {{0, 0}, {1, 0}}, 2);
    const GradedAlgebra a = make_group_algebra(q4, z22, sigma);
    REQUIRE(a.dim() == 4);
    for (const Degree& g : a.support()) REQUIRE(a.dim_of_degree(g) == 1);

    // representation u_(a,b) -> X^a Z^b
    Mat x(q4, 2, 2), z(q4, 2, 2);
    x.at(0, 1) = Scalar::one(q4);
    x.at(1, 0) = Scalar::one(q4);
    z.at(0, 0) = Scalar::one(q4);
    z.at(1, 1) = Scalar::from_int(q4, -1);
    auto rep = [&](const Degree& g) {
        Mat m = Mat::identity(q4, 2);
        for (long long k = 0; k < g.coords[0]; ++k) m = m.mul(x);
        for (long long k = 0; k < g.coords[1]; ++k) m = m.mul(z);
        return m;
    };
    const std::vector<Degree> elems = z22.elements();
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            const SparseVec& prod = a.multiply_basis(i, j);
            REQUIRE(prod.size() == 1);
            const Mat expected = rep(elems[i]).mul(rep(elems[j]));
            const Mat got = rep(a.degree_of(prod[0].first)).scale(prod[0].second);
            REQUIRE(expected == got);
        }

    // u_(1,0) u_(0,1) = sigma((1,0),(0,1)) u_(1,1), per the spec'd example
    const size_t i10 = a.indices_of_degree(Degree{{1, 0}})[0];
    const size_t i01 = a.indices_of_degree(Degree{{0, 1}})[0];
    const size_t i11 = a.indices_of_degree(Degree{{1, 1}})[0];
    const SparseVec& prod = a.multiply_basis(i10, i01);
    REQUIRE(prod[0].first == static_cast<int>(i11));
    REQUIRE(prod[0].second == sigma.values[cocycle_index(sigma, Degree{{1, 0}})]
                                          [cocycle_index(sigma, Degree{{0, 1}})]);

    REQUIRE(a.is_associative());
    REQUIRE(a.is_unital());
}

TEST_CASE("perturbed cocycle tables are rejected") {
    const FieldSpec q4 = FieldSpec::cyclotomic(4);
    const GradeGroup z22(0, {2, 2});
    CocycleTable sigma = make_bicharacter_cocycle(q4, z22, {{0, 0}, {1, 0}}, 2);
    sigma.values[1][2] = Scalar::from_int(q4, 5);
    REQUIRE_THROWS_AS(make_group_algebra(q4, z22, sigma), Error);
}

TEST_CASE("direct sums") {
    const GradedAlgebra f2 = make_group_algebra(kQ, kZ2);
    const GradedAlgebra s = make_direct_sum(f2, f2);
    REQUIRE(s.dim() == 4);
    REQUIRE(s.dim_of_degree(Degree{{0}}) == 2);
    validate(s);
    // first summand is an orthogonal ideal
    REQUIRE(sv_is_zero(s.multiply_sparse(SparseVec{{0, Scalar::one(kQ)}},
                                         SparseVec{{2, Scalar::one(kQ)}})));

    const GradedAlgebra m = make_direct_sum(m2_elementary_eg(), f2);
    REQUIRE(m.dim() == 6);
    validate(m);

    REQUIRE_THROWS_AS(make_direct_sum(f2, make_group_algebra(kQ, GradeGroup::cyclic(3))), Error);
}

TEST_CASE("elementary gradings come out with the right component dimensions") {
    const GradedAlgebra trivial = make_elementary_matrix(kQ, kZ2, 2, {Degree{{0}}, Degree{{0}}});
    REQUIRE(trivial.dim_of_degree(Degree{{0}}) == 4);

    const GradeGroup z3 = GradeGroup::cyclic(3);
    const GradedAlgebra m3 =
        make_elementary_matrix(kQ, z3, 3, {Degree{{0}}, Degree{{1}}, Degree{{2}}});
    for (const Degree& g : m3.support()) REQUIRE(m3.dim_of_degree(g) == 3);
    validate(m3);
}

TEST_CASE("scalar extension preserves the structure") {
    const FieldSpec q4 = FieldSpec::cyclotomic(4);
    const FieldSpec q12 = FieldSpec::cyclotomic(12);
    const GradedAlgebra f2 = make_group_algebra(kQ, kZ2);
    const GradedAlgebra f2x = scalar_extend(f2, q4);
    REQUIRE(f2x.field() == q4);
    validate(f2x);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            REQUIRE(f2x.multiply_basis(i, j).size() == f2.multiply_basis(i, j).size());

    // genuinely cyclotomic constants get re-expressed through the embedding
    const GradeGroup z4 = GradeGroup::cyclic(4);
    const GradedAlgebra tw =
        make_group_algebra(q4, z4, make_bicharacter_cocycle(q4, z4, {{1}}, 4));
    const GradedAlgebra twx = scalar_extend(tw, q12);
    validate(twx);
    for (size_t i = 0; i < tw.dim(); ++i)
        for (size_t j = 0; j < tw.dim(); ++j) {
            const SparseVec& a = tw.multiply_basis(i, j);
            const SparseVec& b = twx.multiply_basis(i, j);
            REQUIRE(a.size() == b.size());
            for (size_t t = 0; t < a.size(); ++t) {
                REQUIRE(a[t].first == b[t].first);
                REQUIRE(embed(a[t].second, q12) == b[t].second); // embed oracle
            }
        }
    REQUIRE_THROWS_AS(scalar_extend(tw, kQ), Error);
}

TEST_CASE("extension commutes with multiplication") {
    std::mt19937_64 rng(1729);
    const FieldSpec q12 = FieldSpec::cyclotomic(12);
    const GradedAlgebra a = m2_elementary_eg();
    const GradedAlgebra ax = scalar_extend(a, q12);
    std::uniform_int_distribution<long long> coef(-4, 4);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<Scalar> xc, yc, xe, ye;
        for (size_t i = 0; i < a.dim(); ++i) {
            const long long cx = coef(rng), cy = coef(rng);
            xc.push_back(Scalar::from_int(kQ, cx));
            yc.push_back(Scalar::from_int(kQ, cy));
            xe.push_back(Scalar::from_int(q12, cx));
            ye.push_back(Scalar::from_int(q12, cy));
        }
        const Element p = a.multiply(a.element(xc), a.element(yc));
        const Element px = ax.multiply(ax.element(xe), ax.element(ye));
        for (size_t i = 0; i < a.dim(); ++i) REQUIRE(embed(p.coords[i], q12) == px.coords[i]);
    }
}

TEST_CASE("sl2 with the Cartan grading") {
    const GradedAlgebra a = make_sl2_cartan(kQ);
    const ValidationReport r = validate(a);
    REQUIRE(r.support.size() == 2);
    REQUIRE(a.dim_of_degree(Degree{{0}}) == 1);
    REQUIRE(a.dim_of_degree(Degree{{1}}) == 2);
    REQUIRE(!r.associative);
    REQUIRE(!r.unital);
    // [e,f] = h
    const Element p = a.multiply(a.basis_element(1), a.basis_element(2));
    REQUIRE(p.coords[0].is_one());
}

TEST_CASE("elements from different algebras do not multiply") {
    const GradedAlgebra a = make_group_algebra(kQ, kZ2);
    const GradedAlgebra b = make_group_algebra(kQ, kZ2);
    REQUIRE_THROWS_AS(a.multiply(a.basis_element(0), b.basis_element(0)), Error);
}

TEST_CASE("regrading to the trivial group") {
    const GradedAlgebra a = regrade_trivial(m2_elementary_eg());
    REQUIRE(a.group() == GradeGroup::trivial());
    REQUIRE(a.support().size() == 1);
    REQUIRE(a.dim_of_degree(Degree{{}}) == 4);
    validate(a);
}
