#include <catch2/catch_amalgamated.hpp>

#include "gradedpi/matrix.hpp"
#include "gradedpi/sparse.hpp"

using namespace gradedpi;

namespace {

const FieldSpec kQ = FieldSpec::rational();

SparseVec row(std::initializer_list<long long> dense) {
    std::vector<Scalar> v;
    for (long long x : dense) v.push_back(Scalar::from_int(kQ, x));
    return sv_from_dense(v);
}

} // namespace

TEST_CASE("echelon insertion, membership, rank") {
    Echelon e(kQ);
    REQUIRE(e.insert(row({1, 0, 1})));
    REQUIRE(e.insert(row({0, 1, 1})));
    REQUIRE(!e.insert(row({1, 1, 2})));
    REQUIRE(e.dim() == 2);
    REQUIRE(e.contains(row({2, -1, 1})));
    REQUIRE(!e.contains(row({0, 0, 1})));
}

TEST_CASE("rref is canonical regardless of insertion order") {
    Echelon a(kQ), b(kQ);
    a.insert(row({2, 2, 4}));
    a.insert(row({0, 3, 3}));
    b.insert(row({2, 5, 7}));
    b.insert(row({4, 1, 5}));
    REQUIRE(a.rref() == b.rref());
}

TEST_CASE("nullspace of a row space") {
    Echelon e(kQ);
    e.insert(row({1, 0, 1}));
    e.insert(row({0, 1, 1}));
    const auto ns = e.nullspace(3);
    REQUIRE(ns.size() == 1);
    REQUIRE(ns[0] == row({1, 1, -1})); // leading coefficient normalized to one
    // kernel vectors annihilate members of the row space
    const SparseVec member = row({2, -3, -1});
    REQUIRE(e.contains(member));
    Scalar dot = Scalar::zero(kQ);
    for (const auto& [i, x] : member)
        dot = Scalar::add(dot, Scalar::mul(x, sv_get(ns[0], i, kQ)));
    REQUIRE(dot.is_zero());
    Echelon empty(kQ);
    REQUIRE(empty.nullspace(2).size() == 2);
}

TEST_CASE("span solver expresses members exactly") {
    SpanSolver s(kQ);
    REQUIRE(s.insert(row({1, 2, 0})));
    REQUIRE(s.insert(row({0, 1, 1})));
    const auto expr = s.express(row({2, 7, 3}));
    REQUIRE(expr.has_value());
    REQUIRE((*expr)[0] == Scalar::from_int(kQ, 2));
    REQUIRE((*expr)[1] == Scalar::from_int(kQ, 3));
    REQUIRE(!s.express(row({0, 0, 5})).has_value());
}

TEST_CASE("sparse arithmetic over a cyclotomic field") {
    const FieldSpec q4 = FieldSpec::cyclotomic(4);
    const Scalar i = Scalar::zeta_power(q4, 1);
    SparseVec v{{0, i}, {2, Scalar::one(q4)}};
    SparseVec w = sv_add_scaled(v, v, i); // v + i*v = (1+i) v
    REQUIRE(sv_get(w, 0, q4) == Scalar::mul(i, Scalar::add(Scalar::one(q4), i)));
    Echelon e(q4);
    REQUIRE(e.insert(v));
    REQUIRE(!e.insert(sv_scale(v, i)));
}

TEST_CASE("dense matrix operations") {
    Mat m(kQ, 2, 2);
    m.at(0, 0) = Scalar::from_int(kQ, 1);
    m.at(0, 1) = Scalar::from_int(kQ, 2);
    m.at(1, 1) = Scalar::from_int(kQ, 1);
    const auto inv = m.inverse();
    REQUIRE(inv.has_value());
    REQUIRE(m.mul(*inv) == Mat::identity(kQ, 2));
    REQUIRE(m.rank() == 2);

    Mat s(kQ, 2, 2);
    s.at(0, 0) = Scalar::from_int(kQ, 1);
    s.at(1, 0) = Scalar::from_int(kQ, 2);
    REQUIRE(s.rank() == 1);
    REQUIRE(!s.inverse().has_value());

    const auto x = m.solve({Scalar::from_int(kQ, 5), Scalar::from_int(kQ, 1)});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == Scalar::from_int(kQ, 3));
    REQUIRE((*x)[1] == Scalar::from_int(kQ, 1));

    Mat bad(kQ, 2, 1);
    bad.at(0, 0) = Scalar::from_int(kQ, 1);
    REQUIRE(!bad.solve({Scalar::from_int(kQ, 0), Scalar::from_int(kQ, 3)}).has_value());
}
