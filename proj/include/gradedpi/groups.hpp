#ifndef GRADEDPI_GROUPS_HPP
#define GRADEDPI_GROUPS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gradedpi/errors.hpp"

namespace gradedpi {

// degree of a homogeneous element: integer vector, free coordinates first,
// torsion coordinates reduced into [0, d_i)
struct Degree {
    std::vector<long long> coords;

    bool operator==(const Degree& o) const { return coords == o.coords; }
    bool operator!=(const Degree& o) const { return coords != o.coords; }
    bool operator<(const Degree& o) const { return coords < o.coords; }

    std::string to_string() const {
        std::string out = "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(coords[i]);
        }
        return out + ")";
    }
};

// finitely generated abelian group Z^r x Z/d_1 x ... x Z/d_k
struct GradeGroup {
    long long free_rank = 0;
    std::vector<long long> torsion_orders; // each >= 2

    GradeGroup() = default;
    GradeGroup(long long rank, std::vector<long long> torsion)
        : free_rank(rank), torsion_orders(std::move(torsion)) {
        if (free_rank < 0) fail(ErrorCode::ParseError, "negative free rank");
        for (long long d : torsion_orders)
            if (d < 2) fail(ErrorCode::ParseError, "torsion order must be >= 2");
    }

    static GradeGroup trivial() { return GradeGroup(0, {}); }
    static GradeGroup cyclic(long long d) { return GradeGroup(0, {d}); }

    size_t word_length() const { return static_cast<size_t>(free_rank) + torsion_orders.size(); }

    bool operator==(const GradeGroup& o) const {
        return free_rank == o.free_rank && torsion_orders == o.torsion_orders;
    }
    bool operator!=(const GradeGroup& o) const { return !(*this == o); }

    bool is_finite() const { return free_rank == 0; }

    long long size() const {
        if (!is_finite()) fail(ErrorCode::GroupMismatch, "group is infinite");
        long long n = 1;
        for (long long d : torsion_orders) n *= d;
        return n;
    }

    void check_member(const Degree& g) const {
        if (g.coords.size() != word_length())
            fail(ErrorCode::GroupMismatch, "degree has wrong length for group " + to_string());
    }

    Degree reduce(Degree g) const {
        check_member(g);
        for (size_t i = 0; i < torsion_orders.size(); ++i) {
            long long& c = g.coords[free_rank + i];
            c %= torsion_orders[i];
            if (c < 0) c += torsion_orders[i];
        }
        return g;
    }

    Degree identity() const { return Degree{std::vector<long long>(word_length(), 0)}; }

    Degree op(const Degree& g, const Degree& h) const {
        check_member(g);
        check_member(h);
        Degree r = g;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += h.coords[i];
        return reduce(r);
    }

    Degree inv(const Degree& g) const {
        check_member(g);
        Degree r = g;
        for (auto& c : r.coords) c = -c;
        return reduce(r);
    }

    Degree sub(const Degree& g, const Degree& h) const { return op(g, inv(h)); }

    Degree signature_product(const std::vector<Degree>& sig) const {
        if (sig.empty()) fail(ErrorCode::EmptySignature, "signature has no degrees");
        Degree acc = identity();
        for (const Degree& g : sig) acc = op(acc, g);
        return acc;
    }

    // all elements of a finite group, sorted
    std::vector<Degree> elements() const {
        const long long n = size();
        std::vector<Degree> out;
        out.reserve(n);
        Degree cur = identity();
        for (long long idx = 0; idx < n; ++idx) {
            long long rest = idx;
            for (size_t i = 0; i < torsion_orders.size(); ++i) {
                cur.coords[free_rank + i] = rest % torsion_orders[i];
                rest /= torsion_orders[i];
            }
            out.push_back(cur);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string to_string() const {
        if (free_rank == 0 && torsion_orders.empty()) return "1";
        std::string out;
        if (free_rank == 1) out = "Z";
        else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
        for (long long d : torsion_orders) {
            if (!out.empty()) out += " x ";
            out += "Z/" + std::to_string(d);
        }
        return out;
    }
};

// group syntax: `Z^r x Z/d1 x ... x Z/dk`, `Z`, `Z/d`, or `1` for the trivial group
inline GradeGroup parse_group(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (size_t i = 0; i <= text.size(); ++i) {
        const char ch = i < text.size() ? text[i] : 'x'; // flush on terminator
        if (ch == 'x' || ch == 'X' || ch == '*') {
            std::string t;
            for (char c : cur)
                if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
            if (!t.empty()) tokens.push_back(t);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (tokens.size() == 1 && (tokens[0] == "1" || tokens[0] == "e" || tokens[0] == "trivial"))
        return GradeGroup::trivial();
    long long rank = 0;
    std::vector<long long> torsion;
    for (const auto& t : tokens) {
        if (t == "Z") {
            if (!torsion.empty()) fail(ErrorCode::ParseError, "free factors must precede torsion: " + text);
            rank += 1;
        } else if (t.rfind("Z^", 0) == 0) {
            if (!torsion.empty()) fail(ErrorCode::ParseError, "free factors must precede torsion: " + text);
            rank += std::stoll(t.substr(2));
        } else if (t.rfind("Z/", 0) == 0) {
            torsion.push_back(std::stoll(t.substr(2)));
        } else {
            fail(ErrorCode::ParseError, "bad group factor '" + t + "' in: " + text);
        }
    }
    return GradeGroup(rank, std::move(torsion));
}

// degree syntax: `e`, `g` (first generator), a bare integer for 1-generator
// groups, or a tuple `(a,b,...)`
inline Degree parse_degree(const GradeGroup& group, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) fail(ErrorCode::ParseError, "empty degree");
    if (s == "e") return group.identity();
    if (s == "g") {
        Degree d = group.identity();
        if (d.coords.empty()) fail(ErrorCode::ParseError, "trivial group has no generator");
        d.coords[0] = 1;
        return group.reduce(d);
    }
    std::vector<long long> coords;
    if (s.front() == '(') {
        if (s.back() != ')') fail(ErrorCode::ParseError, "unbalanced degree tuple: " + text);
        s = s.substr(1, s.size() - 2);
        if (!s.empty()) {
            size_t start = 0;
            while (true) {
                const size_t comma = s.find(',', start);
                coords.push_back(std::stoll(s.substr(start, comma - start)));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
    } else {
        coords.push_back(std::stoll(s));
    }
    if (coords.size() != group.word_length())
        fail(ErrorCode::ParseError, "degree " + text + " has wrong length for " + group.to_string());
    return group.reduce(Degree{std::move(coords)});
}

} // namespace gradedpi

#endif
