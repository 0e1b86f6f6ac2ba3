#include <catch2/catch_amalgamated.hpp>

#include "gradedpi/polynomials.hpp"

using namespace gradedpi;

namespace {

const FieldSpec kQ = FieldSpec::rational();

SPoly poly(const FieldSpec& spec, std::initializer_list<long long> low_to_high) {
    SPoly p;
    for (long long c : low_to_high) p.push_back(Scalar::from_int(spec, c));
    return p;
}

} // namespace

TEST_CASE("polynomial division and gcd") {
    // (x^2 - 1) = (x - 1)(x + 1)
    SPoly q, r;
    sp_divmod(poly(kQ, {-1, 0, 1}), poly(kQ, {-1, 1}), kQ, q, r);
    REQUIRE(r.empty());
    REQUIRE(q == poly(kQ, {1, 1}));
    REQUIRE(sp_gcd(poly(kQ, {-1, 0, 1}), poly(kQ, {1, 1}), kQ) == poly(kQ, {1, 1}));
    REQUIRE(sp_eval(poly(kQ, {-1, 0, 1}), Scalar::from_int(kQ, 3)) == Scalar::from_int(kQ, 8));
}

TEST_CASE("rational roots") {
    // 6x^2 - 5x + 1 = (2x-1)(3x-1)
    const auto roots = detail::rational_roots({mpq_class(1), mpq_class(-5), mpq_class(6)});
    REQUIRE(roots.size() == 2);
    REQUIRE(roots[0] == mpq_class(1, 3));
    REQUIRE(roots[1] == mpq_class(1, 2));
}

TEST_CASE("factorization over Q") {
    REQUIRE(factor_small(poly(kQ, {0, -1, 1}), kQ).kind == FactorResult::Kind::Reducible); // x^2-x
    REQUIRE(factor_small(poly(kQ, {1, 0, 1}), kQ).kind == FactorResult::Kind::Irreducible); // x^2+1
    REQUIRE(factor_small(poly(kQ, {-2, 0, 1}), kQ).kind == FactorResult::Kind::Irreducible); // x^2-2
    REQUIRE(factor_small(poly(kQ, {-1, 0, 0, 1}), kQ).kind == FactorResult::Kind::Reducible); // x^3-1
    REQUIRE(factor_small(poly(kQ, {-2, 0, 0, 1}), kQ).kind == FactorResult::Kind::Irreducible); // x^3-2
    // x^4+4 = (x^2+2x+2)(x^2-2x+2): no rational roots, quadratic split
    const FactorResult f = factor_small(poly(kQ, {4, 0, 0, 0, 1}), kQ);
    REQUIRE(f.kind == FactorResult::Kind::Reducible);
    SPoly q, r;
    sp_divmod(poly(kQ, {4, 0, 0, 0, 1}), f.factor, kQ, q, r);
    REQUIRE(r.empty());
    // x^4+1 is irreducible over Q
    REQUIRE(factor_small(poly(kQ, {1, 0, 0, 0, 1}), kQ).kind == FactorResult::Kind::Irreducible);
    // x^4 - 5x^2 + 6 biquadratic split
    REQUIRE(factor_small(poly(kQ, {6, 0, -5, 0, 1}), kQ).kind == FactorResult::Kind::Reducible);
    // x^4 + x^3 + x^2 + x + 1 (5th cyclotomic) irreducible
    REQUIRE(factor_small(poly(kQ, {1, 1, 1, 1, 1}), kQ).kind == FactorResult::Kind::Irreducible);
}

TEST_CASE("factorization over cyclotomic fields via conductors") {
    const FieldSpec q4 = FieldSpec::cyclotomic(4);
    const FieldSpec q8 = FieldSpec::cyclotomic(8);
    const FieldSpec q12 = FieldSpec::cyclotomic(12);
    const FieldSpec q3 = FieldSpec::cyclotomic(3);
    const FieldSpec q5 = FieldSpec::cyclotomic(5);

    // x^2+1 has the root i in Q(z4)
    const FactorResult f = factor_small(poly(q4, {1, 0, 1}), q4);
    REQUIRE(f.kind == FactorResult::Kind::Reducible);
    REQUIRE((sp_eval(f.factor, Scalar::zeta_power(q4, 1)).is_zero() ||
             sp_eval(f.factor, Scalar::zeta_power(q4, 3)).is_zero()));

    // sqrt(3) lives in Q(z12) but not in Q(z8)
    REQUIRE(factor_small(poly(q12, {-3, 0, 1}), q12).kind == FactorResult::Kind::Reducible);
    REQUIRE(factor_small(poly(q8, {-3, 0, 1}), q8).kind == FactorResult::Kind::Irreducible);
    // sqrt(-3) in Q(z3); sqrt(2) in Q(z8); sqrt(5) in Q(z5)
    REQUIRE(factor_small(poly(q3, {3, 0, 1}), q3).kind == FactorResult::Kind::Reducible);
    REQUIRE(factor_small(poly(q8, {-2, 0, 1}), q8).kind == FactorResult::Kind::Reducible);
    REQUIRE(factor_small(poly(q5, {-5, 0, 1}), q5).kind == FactorResult::Kind::Reducible);
    REQUIRE(factor_small(poly(q4, {-3, 0, 1}), q4).kind == FactorResult::Kind::Irreducible);

    // returned factors genuinely divide
    for (const auto& [spec, coeffs] :
         std::vector<std::pair<FieldSpec, std::initializer_list<long long>>>{
             {q12, {-3, 0, 1}}, {q8, {-2, 0, 1}}, {q3, {3, 0, 1}}}) {
        const FactorResult fr = factor_small(poly(spec, coeffs), spec);
        REQUIRE(fr.kind == FactorResult::Kind::Reducible);
        SPoly q, r;
        sp_divmod(poly(spec, coeffs), fr.factor, spec, q, r);
        REQUIRE(r.empty());
    }

    // x^3 - 2: non-abelian splitting field, irreducible over any Q(z_m)
    REQUIRE(factor_small(poly(q12, {-2, 0, 0, 1}), q12).kind == FactorResult::Kind::Irreducible);
    // cyclic cubic (disc is a square): honestly undecided
    REQUIRE(factor_small(poly(q12, {1, -3, 0, 1}), q12).kind == FactorResult::Kind::Unknown);
}

TEST_CASE("factorization over prime fields") {
    const FieldSpec f5 = FieldSpec::prime(5);
    REQUIRE(factor_small(poly(f5, {1, 0, 1}), f5).kind == FactorResult::Kind::Reducible); // 2^2=-1
    REQUIRE(factor_small(poly(f5, {-2, 0, 1}), f5).kind == FactorResult::Kind::Irreducible);
    const FactorResult f = factor_small(poly(f5, {2, 0, 0, 0, 1}), f5); // x^4+2
    SPoly q, r;
    if (f.kind == FactorResult::Kind::Reducible) {
        sp_divmod(poly(f5, {2, 0, 0, 0, 1}), f.factor, f5, q, r);
        REQUIRE(r.empty());
    }
}
