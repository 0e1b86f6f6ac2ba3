#ifndef GRADEDPI_SCALARS_HPP
#define GRADEDPI_SCALARS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gradedpi/errors.hpp"

namespace gradedpi {

namespace detail {

inline bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long euler_phi(long long m) {
    long long result = m, n = m;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// --- polynomials over Q, dense low-to-high coefficient vectors ---

using QPoly = std::vector<mpq_class>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    qp_trim(r);
    return r;
}

// division with remainder; q, r such that a = q*b + r, deg r < deg b
inline void qp_divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    qp_trim(a);
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, mpq_class(0));
    const mpq_class lead = b.back();
    while (qp_deg(a) >= qp_deg(b)) {
        const int shift = qp_deg(a) - qp_deg(b);
        mpq_class c = a.back() / lead;
        q[shift] += c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qp_trim(a);
    }
    qp_trim(q);
    r = std::move(a);
}

inline QPoly qp_mod(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    qp_divmod(a, b, q, r);
    return r;
}

// extended gcd: returns monic g plus u with u*a + v*b = g (v not needed by callers)
inline void qp_ext_gcd(QPoly a, QPoly b, QPoly& g, QPoly& u) {
    QPoly u0 = {mpq_class(1)}, u1 = {};
    qp_trim(a);
    qp_trim(b);
    while (!b.empty()) {
        QPoly q, r;
        qp_divmod(a, b, q, r);
        QPoly u2_sub = qp_mul(q, u1);
        QPoly u2 = u0;
        if (u2.size() < u2_sub.size()) u2.resize(u2_sub.size(), mpq_class(0));
        for (size_t i = 0; i < u2_sub.size(); ++i) u2[i] -= u2_sub[i];
        qp_trim(u2);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (a.empty()) fail(ErrorCode::Internal, "gcd of zero polynomials");
    const mpq_class lead = a.back();
    g = std::move(a);
    u = std::move(u0);
    for (auto& c : g) c /= lead;
    for (auto& c : u) c /= lead;
}

// m-th cyclotomic polynomial, memoized
inline const QPoly& cyclotomic_poly(long long m) {
    static std::map<long long, QPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // compute bottom-up over divisors so recursion never re-locks
    std::vector<long long> divs;
    for (long long d = 1; d <= m; ++d)
        if (m % d == 0) divs.push_back(d);
    for (long long d : divs) {
        if (cache.count(d)) continue;
        QPoly num(d + 1, mpq_class(0));
        num[0] = -1;
        num[d] = 1; // x^d - 1
        QPoly acc = {mpq_class(1)};
        for (long long dd : divs) {
            if (dd >= d || d % dd != 0) continue;
            acc = qp_mul(acc, cache.at(dd));
        }
        QPoly q, r;
        qp_divmod(num, acc, q, r);
        if (!r.empty()) fail(ErrorCode::Internal, "cyclotomic polynomial division not exact");
        cache.emplace(d, std::move(q));
    }
    return cache.at(m);
}

} // namespace detail

// ---------------------------------------------------------------------------
// FieldSpec: Q, Q(zeta_m), or F_p
// ---------------------------------------------------------------------------

struct FieldSpec {
    enum class Kind { Rational, Cyclotomic, Prime };

    Kind kind = Kind::Rational;
    long long order = 0; // m for Cyclotomic, p for Prime

    static FieldSpec rational() { return {Kind::Rational, 0}; }

    static FieldSpec cyclotomic(long long m) {
        if (m < 1) fail(ErrorCode::ParseError, "cyclotomic order must be >= 1");
        if (m == 1) return rational(); // Q(zeta_1) = Q, canonical form
        return {Kind::Cyclotomic, m};
    }

    static FieldSpec prime(long long p) {
        if (!detail::is_prime_ll(p)) fail(ErrorCode::ParseError, "modulus is not prime");
        return {Kind::Prime, p};
    }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && order == o.order; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    long long characteristic() const { return kind == Kind::Prime ? order : 0; }

    // extension degree over the prime field (phi(m) for cyclotomics)
    long long degree() const {
        return kind == Kind::Cyclotomic ? detail::euler_phi(order) : 1;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Rational: return "Q";
            case Kind::Cyclotomic: return "Q(z" + std::to_string(order) + ")";
            case Kind::Prime: return "F" + std::to_string(order);
        }
        return "?";
    }
};

inline FieldSpec parse_field_spec(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s == "Q") return FieldSpec::rational();
    if (s.rfind("Q(z", 0) == 0 && s.back() == ')') {
        const std::string digits = s.substr(3, s.size() - 4);
        if (digits.empty()) fail(ErrorCode::ParseError, "bad field spec: " + text);
        return FieldSpec::cyclotomic(std::stoll(digits));
    }
    if (s.size() > 1 && s[0] == 'F') {
        std::string digits = s.substr(1);
        if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
        if (digits.empty()) fail(ErrorCode::ParseError, "bad field spec: " + text);
        return FieldSpec::prime(std::stoll(digits));
    }
    fail(ErrorCode::ParseError, "bad field spec: " + text);
}

// ---------------------------------------------------------------------------
// Scalar: exact element of the field named by its spec.
// Cyclotomic elements are kept reduced modulo Phi_m in the power basis
// 1, z, ..., z^(phi(m)-1), so equality is coordinate-wise.
// ---------------------------------------------------------------------------

class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const FieldSpec& spec) { return from_int(spec, 0); }
    static Scalar one(const FieldSpec& spec) { return from_int(spec, 1); }

    static Scalar from_int(const FieldSpec& spec, long long v) {
        return from_mpq(spec, mpq_class(static_cast<long>(v)));
    }

    static Scalar from_mpq(const FieldSpec& spec, mpq_class v) {
        v.canonicalize();
        Scalar s;
        s.spec_ = spec;
        switch (spec.kind) {
            case FieldSpec::Kind::Rational: s.q_ = v; break;
            case FieldSpec::Kind::Cyclotomic:
                s.c_.assign(spec.degree(), mpq_class(0));
                s.c_[0] = v;
                break;
            case FieldSpec::Kind::Prime: {
                if (mpz_fdiv_ui(v.get_den().get_mpz_t(), spec.order) == 0)
                    fail(ErrorCode::DivisionByZero, "denominator divisible by p");
                const long long num = mpz_fdiv_ui(v.get_num().get_mpz_t(), spec.order);
                const long long den = mpz_fdiv_ui(v.get_den().get_mpz_t(), spec.order);
                s.r_ = mod_mul(num, mod_inv(den, spec.order), spec.order);
                break;
            }
        }
        return s;
    }

    // z^k in Q(zeta_m); k may be any integer
    static Scalar zeta_power(const FieldSpec& spec, long long k) {
        if (spec.kind != FieldSpec::Kind::Cyclotomic)
            fail(ErrorCode::SpecMismatch, "zeta_power needs a cyclotomic field");
        const long long m = spec.order;
        k %= m;
        if (k < 0) k += m;
        detail::QPoly raw(k + 1, mpq_class(0));
        raw[k] = 1;
        Scalar s;
        s.spec_ = spec;
        s.c_ = reduce(spec, raw);
        return s;
    }

    // element of multiplicative order n, when the field has one
    static Scalar primitive_root_of_unity(const FieldSpec& spec, long long n) {
        if (n == 1) return one(spec);
        switch (spec.kind) {
            case FieldSpec::Kind::Rational:
                if (n == 2) return from_int(spec, -1);
                fail(ErrorCode::NoEmbedding, "Q has no primitive root of order " + std::to_string(n));
            case FieldSpec::Kind::Cyclotomic:
                if (spec.order % n != 0)
                    fail(ErrorCode::NoEmbedding,
                         "Q(z" + std::to_string(spec.order) + ") has no root of order " + std::to_string(n));
                return zeta_power(spec, spec.order / n);
            case FieldSpec::Kind::Prime: {
                if ((spec.order - 1) % n != 0)
                    fail(ErrorCode::NoEmbedding, "F_p has no root of order " + std::to_string(n));
                for (long long g = 2; g < spec.order; ++g) {
                    const Scalar cand = pow(from_int(spec, g), (spec.order - 1) / n);
                    bool primitive = !cand.is_one();
                    Scalar acc = cand;
                    for (long long j = 2; j < n && primitive; ++j) {
                        acc = mul(acc, cand);
                        if (acc.is_one()) primitive = false;
                    }
                    if (primitive) return cand;
                }
                fail(ErrorCode::Internal, "no root found in F_p");
            }
        }
        fail(ErrorCode::Internal, "unreachable");
    }

    const FieldSpec& spec() const { return spec_; }

    bool is_zero() const {
        switch (spec_.kind) {
            case FieldSpec::Kind::Rational: return q_ == 0;
            case FieldSpec::Kind::Cyclotomic:
                for (const auto& x : c_)
                    if (x != 0) return false;
                return true;
            case FieldSpec::Kind::Prime: return r_ == 0;
        }
        return false;
    }

    bool is_one() const {
        switch (spec_.kind) {
            case FieldSpec::Kind::Rational: return q_ == 1;
            case FieldSpec::Kind::Cyclotomic:
                if (c_.empty() || c_[0] != 1) return false;
                for (size_t i = 1; i < c_.size(); ++i)
                    if (c_[i] != 0) return false;
                return true;
            case FieldSpec::Kind::Prime: return r_ == 1;
        }
        return false;
    }

    bool operator==(const Scalar& o) const {
        return spec_ == o.spec_ && q_ == o.q_ && c_ == o.c_ && r_ == o.r_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // the value as a rational number, when it is one
    std::optional<mpq_class> as_rational() const {
        switch (spec_.kind) {
            case FieldSpec::Kind::Rational: return q_;
            case FieldSpec::Kind::Cyclotomic:
                for (size_t i = 1; i < c_.size(); ++i)
                    if (c_[i] != 0) return std::nullopt;
                return c_[0];
            case FieldSpec::Kind::Prime: return std::nullopt;
        }
        return std::nullopt;
    }

    const std::vector<mpq_class>& cyclotomic_coords() const { return c_; }
    long long prime_residue() const { return r_; }

    static Scalar add(const Scalar& a, const Scalar& b) {
        check_specs(a, b);
        Scalar s = a;
        switch (a.spec_.kind) {
            case FieldSpec::Kind::Rational: s.q_ += b.q_; break;
            case FieldSpec::Kind::Cyclotomic:
                for (size_t i = 0; i < s.c_.size(); ++i) s.c_[i] += b.c_[i];
                break;
            case FieldSpec::Kind::Prime: s.r_ = (s.r_ + b.r_) % a.spec_.order; break;
        }
        return s;
    }

    static Scalar neg(const Scalar& a) {
        Scalar s = a;
        switch (a.spec_.kind) {
            case FieldSpec::Kind::Rational: s.q_ = -s.q_; break;
            case FieldSpec::Kind::Cyclotomic:
                for (auto& x : s.c_) x = -x;
                break;
            case FieldSpec::Kind::Prime:
                s.r_ = s.r_ == 0 ? 0 : a.spec_.order - s.r_;
                break;
        }
        return s;
    }

    static Scalar sub(const Scalar& a, const Scalar& b) { return add(a, neg(b)); }

    static Scalar mul(const Scalar& a, const Scalar& b) {
        check_specs(a, b);
        Scalar s;
        s.spec_ = a.spec_;
        switch (a.spec_.kind) {
            case FieldSpec::Kind::Rational: s.q_ = a.q_ * b.q_; break;
            case FieldSpec::Kind::Cyclotomic: {
                // constant-times-anything avoids polynomial multiplication
                if (is_constant(b.c_)) {
                    s.c_ = a.c_;
                    for (auto& x : s.c_) x *= b.c_[0];
                } else if (is_constant(a.c_)) {
                    s.c_ = b.c_;
                    for (auto& x : s.c_) x *= a.c_[0];
                } else {
                    detail::QPoly prod = detail::qp_mul(a.c_, b.c_);
                    s.c_ = reduce(a.spec_, prod);
                }
                break;
            }
            case FieldSpec::Kind::Prime: s.r_ = mod_mul(a.r_, b.r_, a.spec_.order); break;
        }
        return s;
    }

    static Scalar inv(const Scalar& a) {
        if (a.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
        Scalar s;
        s.spec_ = a.spec_;
        switch (a.spec_.kind) {
            case FieldSpec::Kind::Rational: s.q_ = 1 / a.q_; break;
            case FieldSpec::Kind::Cyclotomic: {
                if (is_constant(a.c_)) {
                    s.c_.assign(a.c_.size(), mpq_class(0));
                    s.c_[0] = 1 / a.c_[0];
                    break;
                }
                detail::QPoly f = a.c_;
                detail::qp_trim(f);
                detail::QPoly g, u;
                detail::qp_ext_gcd(f, detail::cyclotomic_poly(a.spec_.order), g, u);
                if (detail::qp_deg(g) != 0)
                    fail(ErrorCode::Internal, "non-invertible element in a field");
                for (auto& x : u) x /= g[0];
                s.c_ = reduce(a.spec_, u);
                break;
            }
            case FieldSpec::Kind::Prime: s.r_ = mod_inv(a.r_, a.spec_.order); break;
        }
        return s;
    }

    static Scalar div(const Scalar& a, const Scalar& b) { return mul(a, inv(b)); }

    static Scalar pow(const Scalar& a, long long e) {
        if (e < 0) return pow(inv(a), -e);
        Scalar acc = one(a.spec_), base = a;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    Scalar operator+(const Scalar& o) const { return add(*this, o); }
    Scalar operator-(const Scalar& o) const { return sub(*this, o); }
    Scalar operator*(const Scalar& o) const { return mul(*this, o); }
    Scalar operator-() const { return neg(*this); }

    std::string to_string() const {
        switch (spec_.kind) {
            case FieldSpec::Kind::Rational: return q_.get_str();
            case FieldSpec::Kind::Prime: return std::to_string(r_);
            case FieldSpec::Kind::Cyclotomic: break;
        }
        std::string out;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            mpq_class coef = c_[k];
            const bool negative = coef < 0;
            if (negative) coef = -coef;
            if (out.empty()) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            const bool unit_coef = (coef == 1) && k > 0;
            if (!unit_coef) out += coef.get_str();
            if (k > 0) {
                if (!unit_coef) out += " ";
                out += "z";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    static void check_specs(const Scalar& a, const Scalar& b) {
        if (a.spec_ != b.spec_)
            fail(ErrorCode::SpecMismatch,
                 "operands in " + a.spec_.to_string() + " and " + b.spec_.to_string());
    }

    static bool is_constant(const std::vector<mpq_class>& c) {
        for (size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0) return false;
        return true;
    }

    static std::vector<mpq_class> reduce(const FieldSpec& spec, const detail::QPoly& raw) {
        detail::QPoly rem = detail::qp_mod(raw, detail::cyclotomic_poly(spec.order));
        rem.resize(spec.degree(), mpq_class(0));
        return rem;
    }

    static long long mod_mul(long long a, long long b, long long p) {
        return static_cast<long long>((static_cast<unsigned __int128>(a) * b) % p);
    }

    static long long mod_inv(long long a, long long p) {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero mod p");
        long long t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            const long long quot = r / new_r;
            t -= quot * new_t;
            std::swap(t, new_t);
            r -= quot * new_r;
            std::swap(r, new_r);
        }
        if (t < 0) t += p;
        return t;
    }

    FieldSpec spec_ = FieldSpec::rational();
    mpq_class q_ = 0;
    std::vector<mpq_class> c_;
    long long r_ = 0;
};

// canonical embedding into a larger coefficient field
inline Scalar embed(const Scalar& a, const FieldSpec& target) {
    const FieldSpec& src = a.spec();
    if (src == target) return a;
    if (src.kind == FieldSpec::Kind::Rational &&
        (target.kind == FieldSpec::Kind::Rational || target.kind == FieldSpec::Kind::Cyclotomic)) {
        return Scalar::from_mpq(target, *a.as_rational());
    }
    if (src.kind == FieldSpec::Kind::Cyclotomic && target.kind == FieldSpec::Kind::Cyclotomic &&
        target.order % src.order == 0) {
        const long long stride = target.order / src.order;
        Scalar out = Scalar::zero(target);
        const auto& coords = a.cyclotomic_coords();
        for (size_t k = 0; k < coords.size(); ++k) {
            if (coords[k] == 0) continue;
            Scalar term = Scalar::mul(Scalar::from_mpq(target, coords[k]),
                                      Scalar::zeta_power(target, static_cast<long long>(k) * stride));
            out = Scalar::add(out, term);
        }
        return out;
    }
    fail(ErrorCode::NoEmbedding,
         "no canonical embedding of " + src.to_string() + " into " + target.to_string());
}

// ---------------------------------------------------------------------------
// scalar text syntax: `a/b`, `z^k`, sums like `1/2 + 3 z^2`
// ---------------------------------------------------------------------------

namespace detail {

class ScalarParser {
public:
    ScalarParser(const FieldSpec& spec, const std::string& text) : spec_(spec), s_(text) {}

    Scalar parse() {
        Scalar acc = Scalar::zero(spec_);
        skip_ws();
        bool first = true;
        while (true) {
            int sign = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = (get() == '-') ? -1 : 1;
            } else if (!first) {
                break;
            }
            skip_ws();
            Scalar term = parse_term();
            if (sign < 0) term = Scalar::neg(term);
            acc = Scalar::add(acc, term);
            first = false;
            skip_ws();
            if (pos_ >= s_.size()) break;
            if (peek() != '+' && peek() != '-')
                fail(ErrorCode::ParseError, "unexpected character in scalar: " + s_);
        }
        skip_ws();
        if (pos_ != s_.size()) fail(ErrorCode::ParseError, "trailing characters in scalar: " + s_);
        return acc;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    void skip_ws() {
        while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Scalar parse_term() {
        mpq_class coef = 1;
        bool have_coef = false;
        if (isdigit(static_cast<unsigned char>(peek()))) {
            coef = parse_rational();
            have_coef = true;
        }
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
        }
        if (peek() == 'z') {
            ++pos_;
            long long k = 1;
            if (peek() == '^') {
                ++pos_;
                k = parse_uint();
            }
            if (spec_.kind != FieldSpec::Kind::Cyclotomic)
                fail(ErrorCode::ParseError, "root of unity in non-cyclotomic field: " + s_);
            return Scalar::mul(Scalar::from_mpq(spec_, coef), Scalar::zeta_power(spec_, k));
        }
        if (!have_coef) fail(ErrorCode::ParseError, "expected term in scalar: " + s_);
        return Scalar::from_mpq(spec_, coef);
    }

    mpq_class parse_rational() {
        const long num = static_cast<long>(parse_uint());
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            const long den = static_cast<long>(parse_uint());
            if (den == 0) fail(ErrorCode::ParseError, "zero denominator: " + s_);
            mpq_class v(num, den);
            v.canonicalize();
            return v;
        }
        return mpq_class(num);
    }

    long long parse_uint() {
        if (!isdigit(static_cast<unsigned char>(peek())))
            fail(ErrorCode::ParseError, "expected number in scalar: " + s_);
        long long v = 0;
        while (isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
        return v;
    }

    FieldSpec spec_;
    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace detail

inline Scalar parse_scalar(const FieldSpec& spec, const std::string& text) {
    return detail::ScalarParser(spec, text).parse();
}

} // namespace gradedpi

#endif
