#ifndef GRADEDPI_POLYNOMIALS_HPP
#define GRADEDPI_POLYNOMIALS_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "gradedpi/errors.hpp"
#include "gradedpi/scalars.hpp"

namespace gradedpi {

// dense univariate polynomials over a Scalar field, low-to-high coefficients
using SPoly = std::vector<Scalar>;

inline void sp_trim(SPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int sp_deg(const SPoly& p) { return static_cast<int>(p.size()) - 1; }

inline SPoly sp_mul(const SPoly& a, const SPoly& b, const FieldSpec& spec) {
    if (a.empty() || b.empty()) return {};
    SPoly r(a.size() + b.size() - 1, Scalar::zero(spec));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = Scalar::add(r[i + j], Scalar::mul(a[i], b[j]));
        }
    }
    sp_trim(r);
    return r;
}

inline void sp_divmod(SPoly a, const SPoly& b, const FieldSpec& spec, SPoly& q, SPoly& r) {
    sp_trim(a);
    if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Scalar::zero(spec));
    const Scalar lead_inv = Scalar::inv(b.back());
    while (sp_deg(a) >= sp_deg(b)) {
        const int shift = sp_deg(a) - sp_deg(b);
        const Scalar c = Scalar::mul(a.back(), lead_inv);
        q[shift] = Scalar::add(q[shift], c);
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = Scalar::sub(a[shift + i], Scalar::mul(c, b[i]));
        sp_trim(a);
    }
    sp_trim(q);
    r = std::move(a);
}

inline SPoly sp_monic(SPoly p) {
    sp_trim(p);
    if (p.empty()) return p;
    const Scalar inv = Scalar::inv(p.back());
    for (auto& c : p) c = Scalar::mul(c, inv);
    return p;
}

inline SPoly sp_gcd(SPoly a, SPoly b, const FieldSpec& spec) {
    sp_trim(a);
    sp_trim(b);
    while (!b.empty()) {
        SPoly q, r;
        sp_divmod(a, b, spec, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return sp_monic(std::move(a));
}

inline SPoly sp_derivative(const SPoly& p, const FieldSpec& spec) {
    SPoly d;
    for (size_t i = 1; i < p.size(); ++i)
        d.push_back(Scalar::mul(p[i], Scalar::from_int(spec, static_cast<long long>(i))));
    sp_trim(d);
    return d;
}

inline Scalar sp_eval(const SPoly& p, const Scalar& x) {
    Scalar acc = Scalar::zero(x.spec());
    for (size_t i = p.size(); i-- > 0;) acc = Scalar::add(Scalar::mul(acc, x), p[i]);
    return acc;
}

inline std::optional<std::vector<mpq_class>> sp_rational_coeffs(const SPoly& p) {
    std::vector<mpq_class> out;
    for (const auto& c : p) {
        const auto q = c.as_rational();
        if (!q) return std::nullopt;
        out.push_back(*q);
    }
    return out;
}

namespace detail {

inline std::vector<mpz_class> small_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// rational roots of a nonzero polynomial with rational coefficients
inline std::vector<mpq_class> rational_roots(const std::vector<mpq_class>& coeffs) {
    // clear denominators
    mpz_class den_lcm = 1;
    for (const auto& c : coeffs) den_lcm = lcm(den_lcm, c.get_den());
    std::vector<mpz_class> zc;
    for (const auto& c : coeffs) {
        mpq_class scaled = c * den_lcm;
        zc.push_back(scaled.get_num());
    }
    while (!zc.empty() && zc.back() == 0) zc.pop_back();
    std::vector<mpq_class> roots;
    if (zc.empty()) return roots;
    size_t low = 0;
    while (low < zc.size() && zc[low] == 0) ++low;
    if (low > 0) roots.push_back(mpq_class(0)); // x | f
    if (low >= zc.size() - 1) return roots;
    const std::vector<mpz_class> ps = small_divisors(zc[low]);
    const std::vector<mpz_class> qs = small_divisors(zc.back());
    for (const mpz_class& p : ps)
        for (const mpz_class& q : qs)
            for (int sign : {1, -1}) {
                mpq_class cand(sign * p, q);
                cand.canonicalize();
                mpq_class acc = 0;
                for (size_t i = zc.size(); i-- > 0;) acc = acc * cand + zc[i];
                if (acc == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// r = d * s^2 with d a squarefree integer (handles negative r)
inline void squarefree_decomposition(const mpq_class& r, mpz_class& d, mpq_class& s) {
    mpz_class n = r.get_num() * r.get_den(); // r = n / den^2
    d = n < 0 ? -1 : 1;
    n = abs(n);
    mpz_class sq = 1;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int mult = 0;
        while (n % p == 0) {
            n /= p;
            ++mult;
        }
        for (int i = 0; i < mult / 2; ++i) sq *= p;
        if (mult % 2) d *= p;
    }
    d *= n;
    s = mpq_class(sq, r.get_den());
    s.canonicalize();
}

// quadratic Gauss sum: an element of Q(zeta_m) squaring to +-p
inline std::optional<Scalar> gauss_sum_sqrt_prime(const FieldSpec& spec, long long p) {
    // needs zeta_p, i.e. p | m
    if (spec.kind != FieldSpec::Kind::Cyclotomic || spec.order % p != 0) return std::nullopt;
    Scalar g = Scalar::zero(spec);
    for (long long k = 1; k < p; ++k) {
        // Legendre symbol by brute force
        bool residue = false;
        for (long long t = 1; t < p && !residue; ++t)
            if ((t * t) % p == k) residue = true;
        const Scalar term = Scalar::zeta_power(spec, (spec.order / p) * k);
        g = residue ? Scalar::add(g, term) : Scalar::sub(g, term);
    }
    return g; // g^2 = p for p = 1 mod 4, g^2 = -p for p = 3 mod 4
}

// square root of a rational number inside the given field, when one exists
inline std::optional<Scalar> rational_sqrt_in_field(const FieldSpec& spec, const mpq_class& r) {
    if (r == 0) return Scalar::zero(spec);
    if (spec.kind == FieldSpec::Kind::Prime) {
        const Scalar target = Scalar::from_mpq(spec, r);
        for (long long y = 0; y < spec.order; ++y) {
            const Scalar cand = Scalar::from_int(spec, y);
            if (Scalar::mul(cand, cand) == target) return cand;
        }
        return std::nullopt;
    }
    mpz_class d;
    mpq_class s;
    squarefree_decomposition(r, d, s);
    if (d == 1) return Scalar::from_mpq(spec, s);
    if (spec.kind == FieldSpec::Kind::Rational) return std::nullopt;

    // assemble sqrt(d) from quadratic Gauss sums; verify at the end
    Scalar acc = Scalar::from_mpq(spec, s);
    mpz_class rest = abs(d);
    bool need_i = d < 0;
    if (rest % 2 == 0) {
        if (spec.order % 8 != 0) return std::nullopt;
        // zeta_8 + zeta_8^7 squares to 2
        const Scalar r8 = Scalar::add(Scalar::zeta_power(spec, spec.order / 8),
                                      Scalar::zeta_power(spec, 7 * (spec.order / 8)));
        acc = Scalar::mul(acc, r8);
        rest /= 2;
    }
    std::vector<long long> odd_primes; // rest is odd and squarefree
    for (mpz_class p = 3; p * p <= rest; p += 2)
        if (rest % p == 0) {
            odd_primes.push_back(p.get_si());
            rest /= p;
        }
    if (rest > 1) odd_primes.push_back(rest.get_si());
    for (long long pl : odd_primes) {
        const auto g = gauss_sum_sqrt_prime(spec, pl);
        if (!g) return std::nullopt;
        acc = Scalar::mul(acc, *g);
        if (pl % 4 == 3) need_i = !need_i; // g^2 = -p
    }
    if (need_i) {
        if (spec.order % 4 != 0) return std::nullopt;
        acc = Scalar::mul(acc, Scalar::zeta_power(spec, spec.order / 4));
    }
    const Scalar target = Scalar::from_mpq(spec, mpq_class(d) * s * s);
    if (Scalar::mul(acc, acc) != target) fail(ErrorCode::Internal, "gauss sum square root");
    return acc;
}

} // namespace detail

// ---------------------------------------------------------------------------
// small-degree factorization, exact; Unknown is an honest third answer for
// the cases outside the implemented range
// ---------------------------------------------------------------------------

struct FactorResult {
    enum class Kind { Irreducible, Reducible, Unknown } kind = Kind::Unknown;
    SPoly factor; // a nontrivial monic divisor, when Reducible
};

namespace detail {

inline std::optional<SPoly> find_linear_factor(const SPoly& f, const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::Prime) {
        for (long long v = 0; v < spec.order; ++v) {
            const Scalar x = Scalar::from_int(spec, v);
            if (sp_eval(f, x).is_zero()) return SPoly{Scalar::neg(x), Scalar::one(spec)};
        }
        return std::nullopt;
    }
    const auto qc = sp_rational_coeffs(f);
    if (!qc) return std::nullopt;
    const auto roots = rational_roots(*qc);
    if (roots.empty()) return std::nullopt;
    return SPoly{Scalar::from_mpq(spec, -roots.front()), Scalar::one(spec)};
}

// monic quadratic: factor via the discriminant
inline FactorResult factor_quadratic(const SPoly& f, const FieldSpec& spec) {
    const Scalar b = f[1], c = f[0];
    const Scalar disc = Scalar::sub(Scalar::mul(b, b),
                                    Scalar::mul(Scalar::from_int(spec, 4), c));
    std::optional<Scalar> root;
    if (spec.kind == FieldSpec::Kind::Prime) {
        // roots were already ruled out by the exhaustive scan
        return {FactorResult::Kind::Irreducible, {}};
    }
    const auto dq = disc.as_rational();
    if (!dq) return {FactorResult::Kind::Unknown, {}};
    root = rational_sqrt_in_field(spec, *dq);
    if (!root) return {FactorResult::Kind::Irreducible, {}};
    // x - (-b + sqrt(disc)) / 2
    const Scalar r = Scalar::div(Scalar::add(Scalar::neg(b), *root), Scalar::from_int(spec, 2));
    return {FactorResult::Kind::Reducible, SPoly{Scalar::neg(r), Scalar::one(spec)}};
}

// monic quartic over Q with no rational roots: rational quadratic splits via
// the Descartes resolvent of the depressed form
inline FactorResult factor_quartic_rational(const SPoly& f, const FieldSpec& spec) {
    const auto qc = sp_rational_coeffs(f);
    if (!qc) return {FactorResult::Kind::Unknown, {}};
    const mpq_class a = (*qc)[3], b = (*qc)[2], c = (*qc)[1], d = (*qc)[0];
    // x = y - a/4: y^4 + p y^2 + q y + r
    const mpq_class a4 = a / 4;
    const mpq_class p = b - 6 * a4 * a4;
    const mpq_class q = c - 2 * b * a4 + 8 * a4 * a4 * a4;
    const mpq_class r = d - c * a4 + b * a4 * a4 - 3 * a4 * a4 * a4 * a4;
    auto lift = [&](const mpq_class& u, const mpq_class& v) {
        // (y^2 + u y + v) with y = x + a/4
        SPoly g(3, Scalar::zero(spec));
        g[2] = Scalar::one(spec);
        g[1] = Scalar::from_mpq(spec, u + 2 * a4);
        g[0] = Scalar::from_mpq(spec, v + u * a4 + a4 * a4);
        return g;
    };
    if (q == 0) {
        // the u = 0 split (y^2 + v)(y^2 + w) needs p^2 - 4r to be a square
        const mpq_class disc = p * p - 4 * r;
        mpz_class sd;
        mpq_class ss;
        squarefree_decomposition(disc, sd, ss);
        if (disc == 0 || sd == 1) {
            const mpq_class v = (p + (disc == 0 ? mpq_class(0) : ss)) / 2;
            return {FactorResult::Kind::Reducible, lift(0, v)};
        }
    }
    // any other split is (y^2 + uy + v)(y^2 - uy + w) with u^2 = U a rational
    // square root of the Descartes resolvent U^3 + 2p U^2 + (p^2-4r) U - q^2
    const std::vector<mpq_class> resolvent = {-q * q, p * p - 4 * r, 2 * p, 1};
    for (const mpq_class& U : rational_roots(resolvent)) {
        if (U <= 0) continue;
        mpz_class sd;
        mpq_class ss;
        squarefree_decomposition(U, sd, ss);
        if (sd != 1) continue; // u irrational
        const mpq_class u = ss;
        // v + w = p + u^2, w - v = q/u
        const mpq_class v = (p + u * u + q / u) / 2;
        const mpq_class w = (p + u * u - q / u) / 2;
        if (v * w != r) continue;
        for (const mpq_class& cv : {v, w}) {
            const SPoly cand = lift(u, cv);
            SPoly quot, rem;
            sp_divmod(f, cand, spec, quot, rem);
            if (rem.empty()) return {FactorResult::Kind::Reducible, cand};
        }
    }
    return {FactorResult::Kind::Irreducible, {}};
}

} // namespace detail

// decide irreducibility of a monic polynomial of small degree, or produce a
// nontrivial monic factor
inline FactorResult factor_small(SPoly f, const FieldSpec& spec) {
    f = sp_monic(std::move(f));
    const int deg = sp_deg(f);
    if (deg <= 0) fail(ErrorCode::Internal, "factoring a constant");
    if (deg == 1) return {FactorResult::Kind::Irreducible, {}};

    const SPoly g = sp_gcd(f, sp_derivative(f, spec), spec);
    if (sp_deg(g) >= 1) return {FactorResult::Kind::Reducible, g};

    if (const auto lin = detail::find_linear_factor(f, spec))
        return {FactorResult::Kind::Reducible, *lin};

    if (deg == 2) return detail::factor_quadratic(f, spec);

    if (deg == 3) {
        // no root means irreducible; over a cyclotomic field a rational cubic
        // with square discriminant could still split (cyclic cubic subfield)
        if (spec.kind != FieldSpec::Kind::Cyclotomic) return {FactorResult::Kind::Irreducible, {}};
        const auto qc = sp_rational_coeffs(f);
        if (!qc) return {FactorResult::Kind::Unknown, {}};
        const mpq_class a = (*qc)[2], b = (*qc)[1], c = (*qc)[0];
        const mpq_class disc =
            18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
        mpz_class sd;
        mpq_class ss;
        detail::squarefree_decomposition(disc, sd, ss);
        if (sd != 1) return {FactorResult::Kind::Irreducible, {}}; // non-abelian splitting field
        return {FactorResult::Kind::Unknown, {}};
    }

    if (deg == 4 && spec.kind == FieldSpec::Kind::Rational)
        return detail::factor_quartic_rational(f, spec);

    if (deg == 4 && spec.kind == FieldSpec::Kind::Prime) {
        // brute-force monic quadratic factors
        for (long long u = 0; u < spec.order; ++u)
            for (long long v = 0; v < spec.order; ++v) {
                SPoly cand = {Scalar::from_int(spec, v), Scalar::from_int(spec, u),
                              Scalar::one(spec)};
                SPoly q, r;
                sp_divmod(f, cand, spec, q, r);
                if (r.empty()) return {FactorResult::Kind::Reducible, cand};
            }
        return {FactorResult::Kind::Irreducible, {}};
    }

    return {FactorResult::Kind::Unknown, {}};
}

} // namespace gradedpi

#endif
